# End-to-end: drive the CLI entry point programmatically on the bundled
# log. Same as running
#
#   cegraph pipeline --input data/synthetic_run.jsonl --out demos/out/pipeline
#
# and produces features.csv, ceg.json, ceg_pc1.svg, tsne.svg,
# correlations.csv and heatmap.svg in one pass.

import sys
from pathlib import Path

from cegraph.cli import main as cli_main

HERE = Path(__file__).resolve().parent
LOG = HERE.parent / "data" / "synthetic_run.jsonl"
OUT = HERE / "out" / "pipeline"


def main() -> int:
    code = cli_main([
        "pipeline",
        "--input", str(LOG),
        "--out", str(OUT),
        "--perplexity", "12",
        "--seed", "0",
    ])
    if code != 0:
        return code
    for p in sorted(OUT.iterdir()):
        print(f"  {p.name:<18} {p.stat().st_size:>7} bytes")
    return 0


if __name__ == "__main__":
    sys.exit(main())
