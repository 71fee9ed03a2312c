"""Load the bundled synthetic run log, featurize every sample and build
one evolution graph per run.

Each node carries the raw feature vector, a population-standardized copy
and a fitness value normalized per (benchmark, method) group. Edges follow
parent references recorded by the generator.
"""

import json
from pathlib import Path

from cegraph import build_ceg, featurize_dataset, graphs_to_json, load_jsonl, validate

HERE = Path(__file__).resolve().parent
LOG = HERE.parent / "data" / "synthetic_run.jsonl"
OUT = HERE / "out"


def main():
    dataset = load_jsonl(LOG)
    dataset, violations = validate(dataset)
    print(f"loaded {len(dataset)} samples, {len(violations)} lineage violations")

    features, failures = featurize_dataset(dataset)
    if failures:
        print(f"skipped {len(failures)} unparsable samples")

    graphs = build_ceg(dataset, features)
    for g in graphs:
        fits = [n.fitness_norm for n in g.nodes]
        missing = sum(1 for f in fits if f is None)
        best = max(f for f in fits if f is not None)
        print(f"run {g.run_id:<10} group={'/'.join(g.group_key):<38} "
              f"nodes={g.node_count:<3} edges={g.edge_count:<3} "
              f"best_norm={best:.2f} missing={missing}")

    OUT.mkdir(exist_ok=True)
    path = OUT / "ceg.json"
    path.write_text(graphs_to_json(graphs), encoding="utf-8")
    payload = json.loads(path.read_text(encoding="utf-8"))
    print(f"\nwrote {path} ({len(payload['graphs'])} runs)")


if __name__ == "__main__":
    main()
