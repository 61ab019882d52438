"""Command-line entry points: `ocfsim run` and `ocfsim topics`."""

import argparse

from .backend import BACKEND
from .harness import ExperimentConfig, run_experiment, run_topic_dump


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="ocfsim",
        description="Seeded repeated overlapping-coalition-formation experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run an experiment batch and write metrics")
    run_p.add_argument("--config", required=True, help="experiment config (JSON)")
    run_p.add_argument("--out", required=True, help="output directory")
    run_p.add_argument("--jobs", type=int, default=1, help="parallel games")
    run_p.add_argument(
        "--seed-offset", type=int, default=0, help="added to every run seed"
    )

    topics_p = sub.add_parser("topics", help="dump per-agent topic matrices")
    topics_p.add_argument("--config", required=True, help="experiment config (JSON)")
    topics_p.add_argument(
        "--checkpoints", required=True, help="comma-separated iterations, e.g. 100,500"
    )
    topics_p.add_argument("--out", required=True, help="output directory")

    args = parser.parse_args(argv)
    if args.command == "run":
        config = ExperimentConfig.from_json(args.config)
        rows = run_experiment(config, args.out, jobs=args.jobs, seed_offset=args.seed_offset)
        print(f"backend={BACKEND} runs={len(rows)} -> {args.out}/metrics.csv")
        return 0
    if args.command == "topics":
        config = ExperimentConfig.from_json(args.config)
        checkpoints = [int(part) for part in args.checkpoints.split(",") if part]
        written = run_topic_dump(config, checkpoints, args.out)
        print(f"backend={BACKEND} wrote {len(written)} topic dumps -> {args.out}")
        return 0
    return 1


if __name__ == "__main__":
    raise SystemExit(main())
