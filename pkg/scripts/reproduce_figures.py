"""Write one CSV per figure preset into an output directory.

    python scripts/reproduce_figures.py --outdir figures --jobs 4
"""

import argparse
import dataclasses
from pathlib import Path

from xyzdm.sweep import FIGURE_IDS, emit_csv, figure_preset, run_sweep


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--outdir", type=Path, default=Path("figures"))
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--points", type=int, default=None, help="override the 200-point default")
    args = parser.parse_args()

    args.outdir.mkdir(parents=True, exist_ok=True)
    for fig_id in FIGURE_IDS:
        spec = figure_preset(fig_id)
        if args.points:
            spec = dataclasses.replace(spec, points=args.points)
        rows = run_sweep(spec, workers=args.jobs)
        path = args.outdir / f"{fig_id}.csv"
        with path.open("w", newline="") as fh:
            emit_csv(rows, fh)
        print(f"{fig_id}: {len(rows)} rows, sweep {spec.swept}, curves {spec.curve_field}={spec.curve_values}, "
              f"headline {spec.headline} -> {path}")


if __name__ == "__main__":
    main()
