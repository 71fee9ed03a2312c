"""SVG rendering: element counts, encodings, determinism."""

import json
import re
import xml.etree.ElementTree as ET

import pytest

from cegraph.ceg import build_ceg
from cegraph.embed import CorrelationTable, correlation_table
from cegraph.features import ALL_FEATURE_NAMES, featurize_dataset
from cegraph.ingest import load_jsonl, validate
from cegraph.report import FigureSpec, render_ceg, render_heatmap, render_tsne
from cegraph.synth import write_synthetic_log


def make_graphs(tmp_path, objs, **ceg_kwargs):
    path = tmp_path / "log.jsonl"
    path.write_text(
        "\n".join(json.dumps(o) for o in objs) + "\n", encoding="utf-8"
    )
    ds, _ = validate(load_jsonl(path))
    table, failures = featurize_dataset(ds)
    assert not failures
    return build_ceg(ds, table, **ceg_kwargs)


def chain_objs(n, run_id="chain", **common):
    objs = []
    for i in range(n):
        obj = {
            "id": f"{run_id}-{i}",
            "run_id": run_id,
            "evaluation_index": i,
            "code": f"x = {i}\n" + "y = x + 1\n" * (i + 1),
            "fitness_raw": 0.1 * (i + 1),
        }
        if i > 0:
            obj["parent_ids"] = [f"{run_id}-{i - 1}"]
        obj.update(common)
        objs.append(obj)
    return objs


def elements(svg, cls):
    root = ET.fromstring(svg)
    return [el for el in root.iter() if el.get("class") == cls]


def tag(el):
    return el.tag.rsplit("}", 1)[-1]


@pytest.fixture(scope="module")
def synth_graphs(tmp_path_factory):
    path = tmp_path_factory.mktemp("synth") / "run.jsonl"
    write_synthetic_log(path)
    ds, _ = validate(load_jsonl(path))
    table, failures = featurize_dataset(ds)
    assert not failures
    return build_ceg(ds, table)


# ------------------------------------------------------------- render_ceg


def test_ceg_chain_has_five_glyphs_four_edges(tmp_path):
    graphs = make_graphs(tmp_path, chain_objs(5))
    fig = render_ceg(graphs)
    assert len(elements(fig.svg, "node")) == 5
    assert len(elements(fig.svg, "edge")) == 4


def test_ceg_parentless_run_has_no_edges(tmp_path):
    objs = chain_objs(6)
    for o in objs:
        o.pop("parent_ids", None)
    fig = render_ceg(make_graphs(tmp_path, objs))
    assert len(elements(fig.svg, "node")) == 6
    assert len(elements(fig.svg, "edge")) == 0


def test_ceg_radius_is_base_times_one_plus_parent_frequency(tmp_path):
    # star: one node parents 3 children
    objs = [
        {"id": "p", "run_id": "r", "evaluation_index": 0,
         "code": "x = 1\n", "fitness_raw": 0.5},
    ]
    for i in range(3):
        objs.append(
            {"id": f"c{i}", "run_id": "r", "evaluation_index": i + 1,
             "code": f"x = {i}\ny = 2\n", "fitness_raw": 0.6,
             "parent_ids": ["p"]}
        )
    for base in (2.0, 1.5):
        fig = render_ceg(
            make_graphs(tmp_path, objs), FigureSpec(base_radius=base)
        )
        radii = sorted(float(c.get("r")) for c in elements(fig.svg, "node"))
        assert radii == [base, base, base, 4.0 * base]


def test_ceg_pc1_annotation_fraction(synth_graphs):
    fig = render_ceg(synth_graphs)
    m = re.fullmatch(r"PC1 \((\d\.\d\d)\)", fig.annotation)
    assert m, fig.annotation
    frac = float(m.group(1))
    assert 0.0 < frac <= 1.0
    assert fig.annotation in fig.svg


def test_ceg_feature_y_axis_orders_nodes_by_raw_value(tmp_path):
    graphs = make_graphs(tmp_path, chain_objs(4))
    fig = render_ceg(graphs, FigureSpec(y_axis="token_total"))
    assert fig.annotation == ""
    circles = elements(fig.svg, "node")
    # document order follows node order; token_total grows with i, and
    # larger y-values sit higher on the canvas (smaller cy)
    cys = [float(c.get("cy")) for c in circles]
    assert cys == sorted(cys, reverse=True)


def test_ceg_missing_fitness_rendered_hollow(synth_graphs):
    fig = render_ceg(synth_graphs)
    hollow = [c for c in elements(fig.svg, "node") if c.get("fill") == "none"]
    assert len(hollow) == 1


def test_ceg_one_row_label_per_group_one_col_label_per_run(synth_graphs):
    fig = render_ceg(synth_graphs)
    assert len(elements(fig.svg, "row-label")) == 3
    assert len(elements(fig.svg, "col-label")) == 3
    assert len(fig.legend) == 3


def test_ceg_byte_deterministic(synth_graphs):
    a = render_ceg(synth_graphs)
    b = render_ceg(synth_graphs)
    assert a.svg == b.svg


def test_ceg_errors(tmp_path, synth_graphs):
    with pytest.raises(ValueError):
        render_ceg([])
    with pytest.raises(ValueError, match="unknown"):
        render_ceg(synth_graphs, FigureSpec(y_axis="no_such_feature"))
    with pytest.raises(ValueError, match="unknown"):
        render_ceg(
            synth_graphs,
            FigureSpec(y_axis="pc1", feature_set=("bogus",)),
        )


def test_ceg_svg_well_formed(synth_graphs):
    fig = render_ceg(synth_graphs)
    root = ET.fromstring(fig.svg)
    assert tag(root) == "svg"
    assert float(root.get("width")) == pytest.approx(fig.width)
    assert float(root.get("height")) == pytest.approx(fig.height)


# ------------------------------------------------------------ render_tsne


def two_method_objs():
    objs = []
    for run, method in (("ra", "m1"), ("rb", "m2")):
        for i in range(5):
            objs.append(
                {
                    "id": f"{run}-{i}",
                    "run_id": run,
                    "method": method,
                    "llm": "llm-x",
                    "benchmark": "bench",
                    "evaluation_index": i,
                    "code": f"a = {i}\n" + f"b = a * {i}\n" * (i + 1),
                    "fitness_raw": 0.2 + 0.1 * i,
                }
            )
    return objs


def tsne_spec(**kw):
    kw.setdefault("kind", "tsne-scatter")
    kw.setdefault("perplexity", 2.5)
    kw.setdefault("iterations", 260)
    return FigureSpec(**kw)


def test_tsne_two_methods_two_runs_two_colors_two_shapes(tmp_path):
    graphs = make_graphs(tmp_path, two_method_objs())
    fig = render_tsne(graphs, tsne_spec())
    points = elements(fig.svg, "point")
    # 10 data markers, 2 pair swatches, 2 run swatches
    assert len(points) == 14
    strokes = {p.get("stroke") for p in points}
    data_colors = strokes - {"#555555"}
    assert len(data_colors) == 2
    shapes = {tag(p) for p in points[:10]}
    assert shapes == {"circle", "rect"}
    assert "m1/llm-x" in fig.legend and "m2/llm-x" in fig.legend
    assert "run ra" in fig.legend and "run rb" in fig.legend


def test_tsne_equal_fitness_equal_sizes(tmp_path):
    objs = two_method_objs()
    for o in objs:
        o["fitness_raw"] = 0.7
    graphs = make_graphs(tmp_path, objs)
    fig = render_tsne(graphs, tsne_spec())
    points = elements(fig.svg, "point")[:10]
    radii = {
        float(p.get("r")) if tag(p) == "circle" else float(p.get("width")) / 2
        for p in points
    }
    assert len(radii) == 1
    # all-equal fitness normalizes to 1.0, the maximum size
    assert radii == {9.0}


def test_tsne_missing_fitness_hollow_minimum_size(tmp_path):
    objs = chain_objs(6, run_id="solo")
    objs[2]["fitness_raw"] = None
    graphs = make_graphs(tmp_path, objs)
    fig = render_tsne(graphs, tsne_spec(perplexity=1.5))
    data = elements(fig.svg, "point")[:6]
    hollow = [p for p in data if p.get("fill") == "none"]
    assert len(hollow) == 1
    assert float(hollow[0].get("r")) == 3.0


def test_tsne_fixed_seed_identical_bytes(tmp_path):
    graphs = make_graphs(tmp_path, two_method_objs())
    a = render_tsne(graphs, tsne_spec(seed=4))
    b = render_tsne(graphs, tsne_spec(seed=4))
    assert a.svg == b.svg


def test_tsne_errors(tmp_path):
    with pytest.raises(ValueError):
        render_tsne([])
    graphs = make_graphs(tmp_path, chain_objs(3))
    with pytest.raises(ValueError):
        render_tsne(graphs, tsne_spec(perplexity=1.0))  # n=3 too small
    big = make_graphs(tmp_path, chain_objs(6))
    with pytest.raises(ValueError, match="unknown"):
        render_tsne(big, tsne_spec(feature_set=("nope",), perplexity=1.5))


# --------------------------------------------------------- render_heatmap


def small_table():
    return CorrelationTable(
        groups=(("b", "m", "l"), ("b2", "m2", "l2")),
        feature_names=("f1", "f2", "f3"),
        values=((1.0, -1.0, 0.0), (0.25, None, -0.62)),
    )


def test_heatmap_cell_and_label_counts():
    fig = render_heatmap(small_table())
    cells = elements(fig.svg, "cell")
    missing = elements(fig.svg, "cell cell-missing")
    labels = elements(fig.svg, "cell-label")
    assert len(cells) + len(missing) == 6
    assert len(missing) == 1
    assert len(labels) == 5  # one blank cell stays unlabeled


def test_heatmap_extreme_and_neutral_colors():
    fig = render_heatmap(small_table())
    cells = elements(fig.svg, "cell")
    labels = elements(fig.svg, "cell-label")
    by_text = {lab.text: i for i, lab in enumerate(labels)}
    assert {"1.00", "-1.00", "0.00", "0.25", "-0.62"} == set(by_text)
    fills = [c.get("fill") for c in cells]
    assert fills[0] == "#b2182b"  # rho 1.0, darkest positive
    assert fills[1] == "#2166ac"  # rho -1.0, darkest negative
    assert fills[2] == "#f7f7f7"  # rho 0, neutral midpoint


def test_heatmap_missing_cell_is_gray_and_unlabeled():
    fig = render_heatmap(small_table())
    (missing,) = elements(fig.svg, "cell cell-missing")
    assert missing.get("fill") == "#e0e0e0"
    # no label text sits inside the missing cell's horizontal span
    x0 = float(missing.get("x"))
    x1 = x0 + float(missing.get("width"))
    y0 = float(missing.get("y"))
    y1 = y0 + float(missing.get("height"))
    for lab in elements(fig.svg, "cell-label"):
        lx, ly = float(lab.get("x")), float(lab.get("y"))
        assert not (x0 <= lx <= x1 and y0 <= ly <= y1)


def test_heatmap_one_row_28_columns():
    values = tuple((i % 21 - 10) / 10.0 for i in range(28))
    table = CorrelationTable(
        groups=(("b", "m", "l"),),
        feature_names=ALL_FEATURE_NAMES,
        values=(values,),
    )
    fig = render_heatmap(table)
    assert len(elements(fig.svg, "cell")) == 28
    assert len(elements(fig.svg, "col-label")) == 28


def test_heatmap_scale_bar():
    fig = render_heatmap(small_table())
    assert len(elements(fig.svg, "scale")) == 32
    texts = [t.text for t in elements(fig.svg, "scale-label")]
    assert texts == ["-1", "0", "+1"]


def test_heatmap_determinism_and_wellformed(synth_graphs):
    table = correlation_table(synth_graphs)
    a = render_heatmap(table)
    b = render_heatmap(table)
    assert a.svg == b.svg
    root = ET.fromstring(a.svg)
    assert tag(root) == "svg"


def test_heatmap_empty_table_error():
    empty = CorrelationTable(groups=(), feature_names=("f",), values=())
    with pytest.raises(ValueError):
        render_heatmap(empty)


def test_coordinates_have_two_decimals(synth_graphs):
    fig = render_ceg(synth_graphs)
    for c in elements(fig.svg, "node"):
        for attr in ("cx", "cy", "r"):
            assert re.fullmatch(r"-?\d+\.\d\d", c.get(attr))
    assert "-0.00" not in fig.svg
