"""Assemble code evolution graphs from a validated dataset and its features.

One EvolutionGraph per run. Each node carries the normalized fitness, the
raw and standardized feature vectors, and its parent frequency (number of
children it produced within the run). Edges point parent -> child.

Fitness normalization is min-max within a configurable scope: "group"
pools runs sharing (benchmark, method), "run" normalizes each run alone,
"global" pools everything. Direction "minimize" maps the smallest raw
score to 1. Feature standardization is z-scoring with population variance,
either over the whole dataset (default) or per (benchmark, method, llm)
group; zero-variance columns become 0.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass

import numpy as np

from .ingest import CodeSample, Dataset

log = logging.getLogger(__name__)

NORM_SCOPES = ("group", "run", "global")
STD_SCOPES = ("dataset", "group")


@dataclass(frozen=True, eq=False)
class CegNode:
    sample_id: str
    name: str
    evaluation_index: int
    fitness_norm: float | None
    parent_frequency: int
    features_raw: np.ndarray
    features_std: np.ndarray


@dataclass(frozen=True, eq=False)
class EvolutionGraph:
    group_key: tuple[str, str, str]
    run_id: str
    feature_names: tuple[str, ...]
    nodes: tuple[CegNode, ...]
    edges: tuple[tuple[str, str], ...]

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def node_by_id(self) -> dict[str, CegNode]:
        return {n.sample_id: n for n in self.nodes}

    def to_dict(self) -> dict:
        return {
            "group_key": list(self.group_key),
            "run_id": self.run_id,
            "feature_names": list(self.feature_names),
            "nodes": [
                {
                    "sample_id": n.sample_id,
                    "evaluation_index": n.evaluation_index,
                    "fitness_norm": n.fitness_norm,
                    "parent_frequency": n.parent_frequency,
                    "features_raw": [float(v) for v in n.features_raw],
                    "features_std": [float(v) for v in n.features_std],
                }
                for n in self.nodes
            ],
            "edges": [[p, c] for p, c in self.edges],
        }


def graphs_to_json(graphs: list[EvolutionGraph]) -> str:
    """Serialize a list of evolution graphs, stable ordering."""
    return json.dumps({"graphs": [g.to_dict() for g in graphs]}, indent=2)


def _minmax(value: float, lo: float, hi: float, direction: str) -> float:
    if hi == lo:
        return 1.0
    if direction == "minimize":
        return (hi - value) / (hi - lo)
    return (value - lo) / (hi - lo)


def _norm_key(sample: CodeSample, scope: str):
    if scope == "group":
        return (sample.benchmark, sample.method)
    if scope == "run":
        return sample.run_id
    return None  # global


def build_ceg(
    dataset: Dataset,
    features: dict[str, dict[str, float]],
    *,
    normalize: str = "minmax",
    direction: str = "maximize",
    norm_scope: str = "group",
    std_scope: str = "dataset",
) -> list[EvolutionGraph]:
    """Build one evolution graph per run.

    `features` maps sample id to its feature row (see featurize_dataset);
    samples without a row are skipped, and edges touching them dropped.
    All rows must share the same feature names. Returns graphs sorted by
    (group_key, run_id).
    """
    if normalize not in ("minmax", "none"):
        raise ValueError(f"unknown normalize mode {normalize!r}")
    if direction not in ("maximize", "minimize"):
        raise ValueError(f"unknown direction {direction!r}")
    if norm_scope not in NORM_SCOPES:
        raise ValueError(f"unknown norm_scope {norm_scope!r}")
    if std_scope not in STD_SCOPES:
        raise ValueError(f"unknown std_scope {std_scope!r}")

    eligible = [s for s in dataset.samples if s.id in features]
    skipped = len(dataset.samples) - len(eligible)
    if skipped:
        log.warning("skipping %d samples without feature vectors", skipped)
    if not eligible:
        return []

    feature_names = tuple(features[eligible[0].id].keys())
    for s in eligible:
        if tuple(features[s.id].keys()) != feature_names:
            raise ValueError(f"sample {s.id!r} has mismatched feature names")

    raw = np.array(
        [[features[s.id][name] for name in feature_names] for s in eligible],
        dtype=float,
    )

    # z-standardize features within the chosen scope
    std = np.zeros_like(raw)
    if std_scope == "dataset":
        scopes = {None: list(range(len(eligible)))}
    else:
        scopes = {}
        for i, s in enumerate(eligible):
            scopes.setdefault(s.group_key, []).append(i)
    for rows in scopes.values():
        block = raw[rows]
        mean = block.mean(axis=0)
        var = block.var(axis=0)
        sd = np.sqrt(var)
        safe = np.where(sd > 0.0, sd, 1.0)
        z = (block - mean) / safe
        z[:, sd == 0.0] = 0.0
        std[rows] = z

    # fitness normalization statistics are pooled over the whole dataset
    # (also samples without features: their scores are still real results)
    fitness_norm: dict[str, float | None] = {}
    if normalize == "none":
        for s in dataset.samples:
            fitness_norm[s.id] = s.fitness_raw
    else:
        pools: dict[object, list[float]] = {}
        for s in dataset.samples:
            if s.fitness_raw is not None:
                pools.setdefault(_norm_key(s, norm_scope), []).append(s.fitness_raw)
        for s in dataset.samples:
            if s.fitness_raw is None:
                fitness_norm[s.id] = None
            else:
                pool = pools[_norm_key(s, norm_scope)]
                fitness_norm[s.id] = _minmax(
                    s.fitness_raw, min(pool), max(pool), direction
                )

    # partition by run, build nodes and edges
    eligible_ids = {s.id for s in eligible}
    row_of = {s.id: i for i, s in enumerate(eligible)}
    runs: dict[str, list[CodeSample]] = {}
    for s in eligible:
        runs.setdefault(s.run_id, []).append(s)

    graphs: list[EvolutionGraph] = []
    for run_id, samples in runs.items():
        group_keys = {s.group_key for s in samples}
        if len(group_keys) > 1:
            raise ValueError(
                f"run {run_id!r} mixes group keys {sorted(group_keys)}"
            )
        edges: list[tuple[str, str]] = []
        out_degree: dict[str, int] = {s.id: 0 for s in samples}
        for s in samples:
            for pid in s.parent_ids:
                if pid in eligible_ids and pid in out_degree:
                    edges.append((pid, s.id))
                    out_degree[pid] += 1
        nodes = tuple(
            CegNode(
                sample_id=s.id,
                name=s.name,
                evaluation_index=s.evaluation_index,
                fitness_norm=fitness_norm[s.id],
                parent_frequency=out_degree[s.id],
                features_raw=raw[row_of[s.id]].copy(),
                features_std=std[row_of[s.id]].copy(),
            )
            for s in samples
        )
        graphs.append(
            EvolutionGraph(
                group_key=group_keys.pop(),
                run_id=run_id,
                feature_names=feature_names,
                nodes=nodes,
                edges=tuple(edges),
            )
        )

    graphs.sort(key=lambda g: (g.group_key, g.run_id))
    return graphs
