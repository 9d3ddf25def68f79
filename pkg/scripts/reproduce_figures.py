"""Write every figure preset to CSV, plus a comparison report per preset."""

import argparse
import pathlib
import time

from lsmimo_secrecy.cli import PRESETS, compare_report, format_report, rows_to_csv, run_figure_preset


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", type=pathlib.Path, default=pathlib.Path("results"))
    ap.add_argument("--trials", type=int, default=200_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("presets", nargs="*", default=sorted(PRESETS))
    args = ap.parse_args()

    args.out_dir.mkdir(parents=True, exist_ok=True)
    for name in args.presets:
        t0 = time.perf_counter()
        rows = run_figure_preset(name, trials=args.trials, seed=args.seed, workers=args.workers)
        (args.out_dir / f"{name}.csv").write_text(rows_to_csv(rows))
        report = format_report(rows, compare_report(rows))
        (args.out_dir / f"{name}_compare.txt").write_text(report)
        print(f"{name}: {len(rows)} rows in {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
