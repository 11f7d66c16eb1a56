"""Command-line interface.

Subcommands::

    topicgcn run            --config cfg.ini [--set section.key=value ...]
    topicgcn sweep-clusters --config cfg.ini --combinations "2;2,4;2,4,8"
    topicgcn sweep-topk     --config cfg.ini --k-values "1,2,5,10,20"
    topicgcn gradcheck      [--seed N]
    topicgcn dump-topics    --config cfg.ini [--top-m 10]
    topicgcn dump-graph     --config cfg.ini

Exit status: 0 on success (for sweeps: every row completed), 1 on
pipeline failure, 2 on configuration or usage errors.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .errors import ConfigError, InputError, StageError
from .experiment import (
    ExperimentConfig,
    apply_overrides,
    config_from_ini,
    dump_graph_tsv,
    dump_topics_csv,
    run_experiment,
    sweep_clusters,
    sweep_topk,
)
from .gcn import gradient_check

_GRADCHECK_TOLERANCE = 1e-4

log = logging.getLogger("topicgcn")


def _load_config(args) -> ExperimentConfig:
    cfg = config_from_ini(args.config)
    overrides = list(args.set or [])
    if args.seed is not None:
        overrides.append(f"run.seed={args.seed}")
    if args.out_dir is not None:
        overrides.append(f"run.out_dir={args.out_dir}")
    return apply_overrides(cfg, overrides) if overrides else cfg


def _add_config_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", required=True, help="INI config file")
    sub.add_argument("--seed", type=int, default=None, help="override run.seed")
    sub.add_argument("--out-dir", default=None, help="override run.out_dir")
    sub.add_argument(
        "--set",
        action="append",
        metavar="SECTION.KEY=VALUE",
        help="override any config value; repeatable",
    )


def _parse_combinations(text: str) -> list[list[int]]:
    combos = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        combos.append([int(p) for p in chunk.split(",") if p.strip()])
    if not combos:
        raise ConfigError(f"no cluster combinations in {text!r}")
    return combos


def _parse_k_values(text: str) -> list[int]:
    values = [int(p) for p in text.split(",") if p.strip()]
    if not values:
        raise ConfigError(f"no k values in {text!r}")
    return values


def _cmd_run(args) -> int:
    cfg = _load_config(args)
    result = run_experiment(cfg)
    m = result.metrics
    print(f"test accuracy = {m.accuracy:.4f}")
    print(f"test f1 = {m.f1:.4f}")
    print(f"test auc = {'none' if m.auc is None else f'{m.auc:.4f}'}")
    print(f"outputs: {result.out_dir}")
    return 0


def _cmd_sweep_clusters(args) -> int:
    cfg = _load_config(args)
    combos = _parse_combinations(args.combinations)
    result = sweep_clusters(cfg, combos)
    for row in result.rows:
        if row.error is None:
            print(f"H={row.label}  f1={row.metrics.f1:.4f}  "
                  f"train_seconds={row.train_seconds:.2f}")
        else:
            print(f"H={row.label}  error: {row.error}")
    print(f"outputs: {result.csv_path}")
    return 0 if result.ok else 1


def _cmd_sweep_topk(args) -> int:
    cfg = _load_config(args)
    k_values = _parse_k_values(args.k_values)
    result = sweep_topk(cfg, k_values)
    for row in result.rows:
        if row.error is None:
            print(f"K={row.label}  f1={row.metrics.f1:.4f}  "
                  f"mean_degree={row.mean_degree:.2f}")
        else:
            print(f"K={row.label}  error: {row.error}")
    print(f"outputs: {result.csv_path}")
    return 0 if result.ok else 1


def _cmd_gradcheck(args) -> int:
    max_rel, n_params = gradient_check(seed=args.seed)
    if max_rel < _GRADCHECK_TOLERANCE:
        print(f"PASS, max rel err {max_rel:.3e} over {n_params} parameters"
              f" (tolerance {_GRADCHECK_TOLERANCE:.0e})")
        return 0
    print(f"FAIL, max rel err {max_rel:.3e} over {n_params} parameters"
          f" (tolerance {_GRADCHECK_TOLERANCE:.0e})")
    return 1


def _cmd_dump_topics(args) -> int:
    cfg = _load_config(args)
    path = dump_topics_csv(cfg, args.top_m)
    print(f"outputs: {path}")
    return 0


def _cmd_dump_graph(args) -> int:
    cfg = _load_config(args)
    path = dump_graph_tsv(cfg)
    print(f"outputs: {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="topicgcn",
        description="Topic-conditioned document graphs + multi-graph GCN",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="full pipeline: ingest to report")
    _add_config_options(p_run)
    p_run.set_defaults(func=_cmd_run)

    p_sc = sub.add_parser("sweep-clusters", help="rerun over cluster combinations")
    _add_config_options(p_sc)
    p_sc.add_argument(
        "--combinations",
        default="2;2,4;2,4,8",
        help='semicolon-separated combinations, e.g. "2;2,4;2,4,8"',
    )
    p_sc.set_defaults(func=_cmd_sweep_clusters)

    p_sk = sub.add_parser("sweep-topk", help="rerun over neighbour counts K")
    _add_config_options(p_sk)
    p_sk.add_argument(
        "--k-values", default="1,2,5,10,20", help='comma-separated, e.g. "1,2,5,10,20"'
    )
    p_sk.set_defaults(func=_cmd_sweep_topk)

    p_gc = sub.add_parser("gradcheck", help="finite-difference gradient check")
    p_gc.add_argument("--seed", type=int, default=0)
    p_gc.set_defaults(func=_cmd_gradcheck)

    p_dt = sub.add_parser("dump-topics", help="top words per topic, no training")
    _add_config_options(p_dt)
    p_dt.add_argument("--top-m", type=int, default=10)
    p_dt.set_defaults(func=_cmd_dump_topics)

    p_dg = sub.add_parser("dump-graph", help="edge lists of every topic graph")
    _add_config_options(p_dg)
    p_dg.set_defaults(func=_cmd_dump_graph)

    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (InputError, StageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
