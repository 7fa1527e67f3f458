"""Command line driver: serve the HTTP API or run the full analysis headless.

Exit codes: 0 ok, 1 usage error, 2 data/selection error, 3 internal error.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
import traceback
from dataclasses import dataclass
from pathlib import Path

from .clustering import ClusteringError, ClusteringParams
from .dataset import DatasetError, load_csv
from .importance import ImportanceError, compute_importance
from .jsonio import canonical_dumps
from .pairgrid import GridCache, GridError
from .report import SCHEMA_VERSION, build_analysis_report
from .sampledata import default_dataset_path
from .seriation import SeriationError
from .similarity import SimilarityError

DEFAULT_PORT = 8080

_DATA_ERRORS = (
    DatasetError,
    ClusteringError,
    GridError,
    SimilarityError,
    SeriationError,
    ImportanceError,
    FileNotFoundError,
    IsADirectoryError,
)


class CliUsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliUsageError(f"{self.prog}: error: {message}")


@dataclass(frozen=True)
class ServeConfig:
    host: str
    port: int
    cache_dir: str | None
    dataset_path: str
    threads: int


def resolve_serve_config(args, env: dict) -> ServeConfig:
    """Flag > environment > default, for every serve setting."""
    if args.port is not None:
        port = args.port
    elif "CIF_PORT" in env:
        try:
            port = int(env["CIF_PORT"])
        except ValueError:
            raise CliUsageError(f"CIF_PORT must be an integer, got {env['CIF_PORT']!r}")
    else:
        port = DEFAULT_PORT
    cache_dir = args.cache if args.cache is not None else env.get("CIF_CACHE")
    dataset = (
        args.default_dataset
        if args.default_dataset is not None
        else env.get("CIF_DEFAULT_DATASET", str(default_dataset_path()))
    )
    return ServeConfig(
        host=args.host,
        port=port,
        cache_dir=cache_dir,
        dataset_path=dataset,
        threads=args.threads,
    )


def build_parser() -> _Parser:
    parser = _Parser(prog="cif", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    serve = sub.add_parser("serve", help="start the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=None, help="default: $CIF_PORT or 8080")
    serve.add_argument("--cache", default=None, help="grid cache directory (default: $CIF_CACHE)")
    serve.add_argument(
        "--default-dataset",
        default=None,
        help="CSV preloaded at startup (default: $CIF_DEFAULT_DATASET or the bundled sample)",
    )
    serve.add_argument("--threads", type=int, default=8, help="grid worker pool size")
    serve.set_defaults(func=cmd_serve)

    analyze = sub.add_parser(
        "analyze", help="run the full cluster-similarity analysis"
    )
    analyze.add_argument("--input", required=True, help="CSV file to analyze")
    analyze.add_argument("--algorithm", choices=("kmeans", "dbscan"), default="kmeans")
    analyze.add_argument("--k", type=int, default=5)
    analyze.add_argument("--eps", type=float, default=0.5)
    analyze.add_argument("--min-samples", type=int, default=5)
    analyze.add_argument("--seed", type=int, default=42)
    analyze.add_argument("--max-iter", type=int, default=300)
    analyze.add_argument("--tol", type=float, default=1e-4)
    analyze.add_argument(
        "--source-pair", required=True, metavar='"FX,FY"', help="the two source feature names"
    )
    source = analyze.add_mutually_exclusive_group(required=True)
    source.add_argument("--source-row", type=int, default=None)
    source.add_argument("--source-cluster", type=int, default=None)
    analyze.add_argument("--aggregation", choices=("max", "mean"), default="max")
    analyze.add_argument("--ordering", choices=("original", "olo"), default="original")
    analyze.add_argument(
        "--exclude", action="append", default=[], metavar="COL",
        help="numeric column to exclude from pairing (repeatable)",
    )
    analyze.add_argument("--threads", type=int, default=8)
    analyze.add_argument(
        "--timings", action="store_true",
        help="add wall-clock timings to the report (makes it non-reproducible)",
    )
    analyze.add_argument("--out", required=True, help="report path")
    analyze.set_defaults(func=cmd_analyze)

    importance = sub.add_parser(
        "importance", help="rank features against a target column"
    )
    importance.add_argument("--input", required=True)
    importance.add_argument("--target", required=True)
    importance.add_argument("--lambda", dest="lam", type=float, default=1.0)
    importance.add_argument("--out", required=True)
    importance.set_defaults(func=cmd_importance)

    return parser


def cmd_serve(args) -> int:
    import uvicorn

    from .service import bootstrap_state, create_app

    config = resolve_serve_config(args, dict(os.environ))
    state = bootstrap_state(config.cache_dir, config.dataset_path, parallelism=config.threads)
    app = create_app(state)
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")
    return 0


def _params_from_args(args) -> ClusteringParams:
    return ClusteringParams(
        algorithm=args.algorithm,
        k=args.k,
        eps=args.eps,
        min_samples=args.min_samples,
        seed=args.seed,
        max_iter=args.max_iter,
        tol=args.tol,
    )


def cmd_analyze(args) -> int:
    started = time.perf_counter()
    data = Path(args.input).read_bytes()
    dataset = load_csv(data)
    loaded = time.perf_counter()

    pair = args.source_pair.split(",")
    if len(pair) != 2:
        raise SimilarityError(
            f'--source-pair expects "FX,FY" with exactly one comma, got {args.source_pair!r}'
        )
    feature_x, feature_y = (p.strip() for p in pair)

    report = build_analysis_report(
        dataset,
        _params_from_args(args),
        feature_x,
        feature_y,
        row_index=args.source_row,
        cluster_id=args.source_cluster,
        aggregation=args.aggregation,
        ordering_method=args.ordering,
        exclude=tuple(args.exclude),
        cache=GridCache(),
        parallelism=args.threads,
    )
    finished = time.perf_counter()
    if args.timings:
        report["timings"] = {
            "load_s": loaded - started,
            "analysis_s": finished - loaded,
            "total_s": finished - started,
        }
    Path(args.out).write_text(canonical_dumps(report))
    return 0


def cmd_importance(args) -> int:
    data = Path(args.input).read_bytes()
    dataset = load_csv(data)
    ranking = compute_importance(dataset, args.target, args.lam)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "target": ranking.target,
        "features": list(ranking.features),
        "scores": ranking.scores,
        "ranks": list(ranking.ranks),
    }
    Path(args.out).write_text(canonical_dumps(payload))
    return 0


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except CliUsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except CliUsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except _DATA_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception:
        traceback.print_exc()
        return 3


if __name__ == "__main__":
    sys.exit(main())
