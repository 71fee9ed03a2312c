# Project the feature matrix two ways and render both figures.
#
# PCA gives the y axis for the per-run lineage plots (PC1 of the
# standardized features, annotated with its explained variance share).
# t-SNE places every sample from every run on a shared 2-d map.

from pathlib import Path

import numpy as np

from cegraph import (
    FigureSpec,
    build_ceg,
    featurize_dataset,
    load_jsonl,
    pca,
    render_ceg,
    render_tsne,
    tsne,
    validate,
)

HERE = Path(__file__).resolve().parent
LOG = HERE.parent / "data" / "synthetic_run.jsonl"
OUT = HERE / "out"


def main():
    dataset, _ = validate(load_jsonl(LOG))
    features, _ = featurize_dataset(dataset)
    graphs = build_ceg(dataset, features)

    X = np.array([n.features_std for g in graphs for n in g.nodes])
    print(f"feature matrix: {X.shape[0]} samples x {X.shape[1]} features")

    res = pca(X, k=3)
    ratios = res.explained_variance_ratio
    print("PCA explained variance: "
          + "  ".join(f"PC{i + 1}={r:.3f}" for i, r in enumerate(ratios)))

    emb = tsne(X, perplexity=12.0, seed=0, iterations=500)
    spread = emb.coords.std(axis=0)
    print(f"t-SNE spread after {emb.iterations} iterations: "
          f"sx={spread[0]:.1f} sy={spread[1]:.1f}")

    OUT.mkdir(exist_ok=True)
    fig = render_ceg(graphs, FigureSpec(kind="ceg", y_axis="pc1"))
    (OUT / "ceg_pc1.svg").write_text(fig.svg, encoding="utf-8")
    print(f"wrote {OUT / 'ceg_pc1.svg'} ({fig.width}x{fig.height}, "
          f"annotation {fig.annotation!r})")

    fig = render_tsne(graphs, FigureSpec(kind="tsne-scatter",
                                         perplexity=12.0, iterations=500))
    (OUT / "tsne.svg").write_text(fig.svg, encoding="utf-8")
    print(f"wrote {OUT / 'tsne.svg'} ({len(fig.legend)} legend entries)")


if __name__ == "__main__":
    main()
