"""Manual experiment: the quality-first configuration over the whole
benchmark set.

This is the long version of the benchmark: the `best` profile runs each
instance for 30 minutes, best of 10 seeds, so the full protocol needs
14 instances x 10 runs x 30 min = 70 machine-hours. It is NOT part of the
test suite; run it (ideally spread over workers) when you want the
quality-first numbers:

    BEESVRP_WORKERS=8 python demos/best_profile_experiment.py --out best.json

Expected outcome on commodity hardware: mean best-of-10 gap >= 0.97
(the fast profile's nightly aggregate target is 0.95).

Pass --time-limit to rehearse the pipeline with a shorter budget first.
"""

import argparse

from beesvrp.bench import (
    data_path,
    emit_report,
    load_best_known,
    load_instance_dir,
    mean_best_gap,
    run_benchmark,
)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--runs", type=int, default=10)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--time-limit", type=float, default=None,
                        help="override the 1800 s budget (rehearsals)")
    parser.add_argument("--out", default=None)
    parser.add_argument("--format", choices=["csv", "markdown", "json"],
                        default="markdown")
    args = parser.parse_args()

    instances = load_instance_dir(data_path())
    table = load_best_known()
    missing = sorted(set(table) - {i.name for i in instances})
    if missing:
        print(f"note: {len(missing)} instances not bundled ({', '.join(missing)}); "
              f"convert the published files and point --instance-dir at them")

    records = run_benchmark(
        instances, "enhanced", "best", args.runs, args.seed, table,
        time_limit=args.time_limit,
    )
    text = emit_report(records, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        print(text)

    mean = mean_best_gap(records)
    verdict = "OK" if mean >= 0.97 else "BELOW TARGET"
    print(f"mean best-of-{args.runs} gap: {mean:.4f} ({verdict}, target >= 0.97)")


if __name__ == "__main__":
    main()
