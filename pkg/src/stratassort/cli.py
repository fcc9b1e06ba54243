"""Command-line front end.

Every subcommand is a pure function of its flags, input files and seed.
Options may also come from a JSON ``--config`` file whose keys are the long
flag names (dashes or underscores); flags on the command line win.

Exit status: 0 success, 2 usage error, 3 data error, 4 numeric degeneracy.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import analysis, ingest, io, metrics, synthetic
from .errors import DataError, DegenerateError, StratError
from .graph import ClassPartition
from .maxstrat import maxstrat as find_boundaries

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_DEGENERATE = 0, 2, 3, 4
DEFAULT_TIERS = "0,1,3,7"


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- option groups

def _out(p, formats=("csv", "json"), default="json"):
    p.add_argument("--out", "-o", help="output file (default: stdout)")
    p.add_argument("--format", choices=formats, help=f"output format (default: {default})")


def _graph(p):
    p.add_argument("--graph", help="edge list: one whitespace-separated label pair per line")
    p.add_argument("--scores", help="node scores: label<TAB>score per line")


def _corpus(p):
    p.add_argument("--papers", help="papers, JSON lines {id, year, authors}")
    p.add_argument("--citations", help="citations CSV with header citing,cited")


def _series(p):
    _corpus(p)
    p.add_argument("--window", type=int, help="window length in years (default: 5)")
    p.add_argument("--stride", type=int, help="years between window starts (default: 1)")
    p.add_argument("--start-year", type=int, help="first window start (default: first corpus year)")
    p.add_argument("--end-year", type=int, help="last year covered (default: last corpus year)")
    p.add_argument("--author-cap", type=int, help="papers with more authors add no edges")


def _tiers(p, help_text="class lower bounds, e.g. 0,1,3,7"):
    p.add_argument("--tiers", help=help_text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stratassort",
        description="Stratification assortativity of scored networks and temporal "
                    "co-authorship analyses.")
    parser.add_argument("--config", help="JSON file of default option values")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("ingest", help="build rolling snapshots and write them with a manifest")
    _series(p)
    p.add_argument("--out-dir", help="directory for <start>-<end>.edges/.scores and manifest.json")

    p = sub.add_parser("snapshot", help="build one co-authorship snapshot")
    _corpus(p)
    p.add_argument("--start", type=int, help="first year of the window")
    p.add_argument("--end", type=int, help="last year of the window")
    p.add_argument("--cutoff", type=int, help="h-index citation cutoff year (default: --end)")
    p.add_argument("--author-cap", type=int, help="papers with more authors add no edges")
    p.add_argument("--out-prefix", help="writes PREFIX.edges and PREFIX.scores")

    p = sub.add_parser("metric", help="compute StA, modularity, DAC or SAC")
    _graph(p)
    _tiers(p)
    p.add_argument("--metric", choices=metrics.METRICS, help="metric name (default: sta)")
    _out(p, ("text", "csv", "json"), "text")

    p = sub.add_parser("boundaries", help="MaxStrat tier boundaries")
    _graph(p)
    p.add_argument("--k", type=int, help="number of classes")
    p.add_argument("--moves", choices=("line", "step"),
                   help="boundary moves in the local search (default: line)")
    _out(p, ("text", "csv", "json"), "text")

    p = sub.add_parser("heatmap", help="class-pair collaboration matrix")
    _graph(p)
    _tiers(p)
    _out(p, default="csv")

    p = sub.add_parser("mobility", help="entrance collaboration score vs later h-index")
    _series(p)
    p.add_argument("--horizon", type=int, help="years between entry and outcome (default: 10)")
    _tiers(p, "h-index tiers for outcomes (default: 0,1,3,7)")
    p.add_argument("--collab-tiers", help="tiers for entrance scores (default: --tiers)")
    p.add_argument("--entry-range", help="FIRST,LAST: keep entry windows starting in this range")
    p.add_argument("--include-initial", action="store_true", default=None,
                   help="count authors already present in the first snapshot")
    p.add_argument("--absent", choices=("skip", "corpus"),
                   help="authors missing from the horizon snapshot (default: skip)")
    _out(p, default="csv")

    p = sub.add_parser("components", help="component collaboration-score dispersion")
    _graph(p)
    _series(p)
    _out(p, default="csv")

    p = sub.add_parser("timeseries", help="StA per snapshot")
    _series(p)
    p.add_argument("--k", type=int, help="number of classes")
    _tiers(p, "fixed tiers; without it each snapshot uses MaxStrat with --k classes")
    p.add_argument("--mode", choices=("fixed", "maxstrat"),
                   help="fixed tiers or per-snapshot MaxStrat (default: fixed if --tiers given)")
    _out(p, default="csv")

    p = sub.add_parser("generate", help="write a synthetic papers/citations corpus")
    p.add_argument("--out-dir", help="writes papers.jsonl and citations.csv here")
    p.add_argument("--seed", type=int, help="random seed (default: 0)")
    p.add_argument("--eras", type=int, help="number of eras")
    p.add_argument("--years-per-era", type=int, help="years per era")
    p.add_argument("--entrants-per-era", type=int, help="new researchers per era")
    p.add_argument("--beta", type=float, help="same-tier co-author bias")
    p.add_argument("--triadic-closure", type=float, help="chance of re-using a past co-author")
    p.add_argument("--start-year", type=int, help="first simulated year")
    return parser


# ---------------------------------------------------------------- config merge

def _merge_config(args: argparse.Namespace, parser: argparse.ArgumentParser) -> argparse.Namespace:
    if not args.config:
        return args
    try:
        with open(args.config, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise DataError(f"{args.config}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise DataError(f"{args.config}:{exc.lineno}: invalid JSON ({exc.msg})") from None
    if not isinstance(cfg, dict):
        raise DataError(f"{args.config}: expected a JSON object")
    known = set(vars(args)) - {"command", "config"}
    for key, value in cfg.items():
        name = key.replace("-", "_")
        if name not in known:
            raise UsageError(f"unknown option {key!r} in {args.config}")
        if getattr(args, name) is None:
            setattr(args, name, value)
    return args


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command} requires {', '.join(missing)}")


def _opt(args, name, default):
    value = getattr(args, name, None)
    return default if value is None else value


def _partition(text) -> ClassPartition:
    return ClassPartition.from_string(str(text))


def _pair(text, flag) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in str(text).split(","))
    except ValueError:
        raise UsageError(f"{flag} expects FIRST,LAST") from None
    return a, b


# ---------------------------------------------------------------- loading

def _load_graph(args):
    _need(args, "graph", "scores")
    return io.read_graph(args.graph, args.scores)


def _load_corpus(args) -> ingest.Corpus:
    _need(args, "papers", "citations")
    return ingest.Corpus(ingest.read_papers(args.papers), ingest.read_citations(args.citations))


def _load_series(args) -> ingest.SnapshotSeries:
    corpus = _load_corpus(args)
    first, last = corpus.year_range
    spec = ingest.SnapshotSpec(_opt(args, "start_year", first), _opt(args, "end_year", last),
                               _opt(args, "window", 5), _opt(args, "stride", 1))
    return ingest.rolling_snapshots(corpus, None, spec, author_cap=args.author_cap)


def _emit(args, text: str) -> None:
    io.write_text(args.out, text)


# ---------------------------------------------------------------- commands

def cmd_ingest(args):
    _need(args, "out_dir")
    series = _load_series(args)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    manifest = series.manifest()
    for snap, entry in zip(series, manifest["snapshots"]):
        stem = f"{snap.window[0]}-{snap.window[1]}"
        io.write_graph(snap.graph, out / f"{stem}.edges", out / f"{stem}.scores")
        entry["edges_file"], entry["scores_file"] = f"{stem}.edges", f"{stem}.scores"
    io.write_text(out / "manifest.json", io.json_text(manifest))
    sys.stdout.write(f"snapshots={len(series)}\n")


def cmd_snapshot(args):
    _need(args, "start", "end", "out_prefix")
    corpus = _load_corpus(args)
    snap = ingest.build_snapshot(corpus, None, (args.start, args.end), cutoff_year=args.cutoff,
                                 author_cap=args.author_cap)
    io.write_graph(snap.graph, f"{args.out_prefix}.edges", f"{args.out_prefix}.scores")
    if snap.empty:
        sys.stderr.write(f"stratassort: warning: no papers in {args.start}-{args.end}\n")
    sys.stdout.write(f"nodes={snap.graph.n} edges={snap.graph.m}\n")


def cmd_metric(args):
    name = _opt(args, "metric", "sta")
    g = _load_graph(args)
    if name == "sac":
        report = metrics.sac(g)
    else:
        _need(args, "tiers")
        report = getattr(metrics, name)(g, _partition(args.tiers))
    fmt = _opt(args, "format", "text")
    value = report.sta if name == "sta" else report.value
    if fmt == "text":
        _emit(args, f"{name}={value:.6f}\n")
    elif fmt == "json":
        _emit(args, io.json_text({"metric": name, **report.to_dict()}))
    elif name == "sta":
        _emit(args, report.to_csv())
    else:
        _emit(args, io.csv_text(["metric", "observed", "expected", "maximum", "value"],
                                [[name, report.observed, report.expected, report.maximum, report.value]]))


def cmd_boundaries(args):
    _need(args, "k")
    g = _load_graph(args)
    b = find_boundaries(g, args.k, moves=_opt(args, "moves", "line"))
    fmt = _opt(args, "format", "text")
    if fmt == "text":
        _emit(args, f"boundaries={b.to_string()}\nsta={b.sta_value:.6f}\nsta_prime={b.sta_prime:.6f}\n")
    elif fmt == "json":
        _emit(args, io.json_text(b.to_dict()))
    else:
        rows = [[i + 1, lo, hi] for i, (lo, hi) in enumerate(b.partition.intervals)]
        _emit(args, io.csv_text(["class", "lo", "hi"], rows))


def _matrix_out(args, m):
    if _opt(args, "format", "csv") == "json":
        _emit(args, io.json_text(m.to_dict()))
    else:
        _emit(args, m.to_csv())


def cmd_heatmap(args):
    _need(args, "tiers")
    _matrix_out(args, analysis.collaboration_heatmap(_load_graph(args), _partition(args.tiers)))


def cmd_mobility(args):
    series = _load_series(args)
    tiers = _partition(_opt(args, "tiers", DEFAULT_TIERS))
    collab = _partition(args.collab_tiers) if args.collab_tiers else tiers
    entry = _pair(args.entry_range, "--entry-range") if args.entry_range else None
    m = analysis.entrance_mobility(series, _opt(args, "horizon", 10), tiers, collab,
                                   entry_range=entry,
                                   include_initial=bool(args.include_initial),
                                   absent=_opt(args, "absent", "skip"))
    if m.empty:
        sys.stderr.write("stratassort: warning: no eligible authors\n")
    _matrix_out(args, m)


def cmd_components(args):
    fmt = _opt(args, "format", "csv")
    if args.graph is not None or args.papers is None:
        r = analysis.component_dispersion(_load_graph(args))
        if fmt == "json":
            _emit(args, io.json_text(r.to_dict()))
        else:
            _emit(args, io.csv_text(["component_count", "score_stddev"],
                                    [[r.component_count, r.score_stddev]]))
        return
    series = _load_series(args)
    reports = [(s.window, analysis.component_dispersion(s.graph)) for s in series
               if s.graph.n > 0]
    if fmt == "json":
        _emit(args, io.json_text([{"window_start": w[0], "window_end": w[1], **r.to_dict()}
                                  for w, r in reports]))
    else:
        _emit(args, io.csv_text(["window_start", "window_end", "component_count", "score_stddev"],
                                [[w[0], w[1], r.component_count, r.score_stddev]
                                 for w, r in reports]))


def cmd_timeseries(args):
    mode = args.mode or ("fixed" if args.tiers is not None else "maxstrat")
    if mode == "fixed":
        _need(args, "tiers")
        tiers = _partition(args.tiers)
        if args.k is not None and args.k != tiers.k:
            raise UsageError(f"--k {args.k} disagrees with the {tiers.k} classes of --tiers")
        kw = {"tiers": tiers}
    else:
        _need(args, "k")
        kw = {"k": args.k}
    series = _load_series(args)
    ts = analysis.sta_timeseries(series, **kw)
    if _opt(args, "format", "csv") == "json":
        _emit(args, io.json_text(ts.to_dict()))
    else:
        _emit(args, ts.to_csv())


def cmd_generate(args):
    _need(args, "out_dir")
    fields = ("seed", "eras", "years_per_era", "entrants_per_era", "beta", "triadic_closure",
              "start_year")
    cfg = synthetic.SyntheticConfig(**{f: getattr(args, f) for f in fields
                                       if getattr(args, f) is not None})
    papers, citations = synthetic.generate_synthetic(cfg)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    ingest.write_papers(out / "papers.jsonl", papers)
    ingest.write_citations(out / "citations.csv", citations)
    sys.stdout.write(f"papers={len(papers)} citations={len(citations)}\n")


COMMANDS = {
    "ingest": cmd_ingest, "snapshot": cmd_snapshot, "metric": cmd_metric,
    "boundaries": cmd_boundaries, "heatmap": cmd_heatmap, "mobility": cmd_mobility,
    "components": cmd_components, "timeseries": cmd_timeseries, "generate": cmd_generate,
}


def _fail(code: int, message: str) -> int:
    sys.stderr.write(f"stratassort: error: {' '.join(str(message).split())}\n")
    return code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:        # argparse already printed its message
        return int(exc.code or 0)
    try:
        args = _merge_config(args, parser)
        COMMANDS[args.command](args)
    except UsageError as exc:
        return _fail(EXIT_USAGE, exc)
    except DegenerateError as exc:
        return _fail(EXIT_DEGENERATE, exc)
    except (DataError, StratError) as exc:
        return _fail(EXIT_DATA, exc)
    except OSError as exc:
        name = exc.filename if exc.filename is not None else ""
        return _fail(EXIT_DATA, f"{name}: {exc.strerror or exc}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
