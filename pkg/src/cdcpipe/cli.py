"""Command-line front end.

Machine documents (JSON, or the corpus TSV) go to stdout or ``--output``;
human-readable messages go to stderr. Exit codes: 0 verified, 1 usage or
input error (including bridges), 2 failure certificate or failed check.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .cover import Cover, cover_from_dict, cover_to_dict, verify_cdc, verify_ncdc
from .decompose import bridges, is_surrounding
from .errors import CDCError
from .graph import FreeEdge, FreeEdgeSet, MultiGraph
from .io import Names, parse_cycles, parse_free_edges, read_graph
from .pipeline import (
    FailureCertificate,
    cdc_with_trace,
    construct,
    goddyn_cover,
    recheck_certificate,
    trace_to_dict,
)

OK, INPUT_ERROR, FAILED = 0, 1, 2
GRAPH_SUFFIXES = (".edgelist", ".el", ".txt", ".g6", ".graph6")


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: str
    format: str | None = None
    output: str | None = None
    seed: int = 0
    jobs: int = 1


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def _emit(doc: dict | str, output: str | None) -> None:
    text = doc if isinstance(doc, str) else json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _load(path: str, fmt: str | None) -> tuple[MultiGraph, Names]:
    if path == "-":
        return read_graph(sys.stdin, fmt)
    return read_graph(path, fmt)


def _certificate_doc(cert: FailureCertificate, names: Names) -> dict:
    doc = cert.to_dict()
    doc["rechecked"] = recheck_certificate(cert)
    doc["names"] = {str(v): n for v, n in sorted(names.items())}
    return doc


def _bridged(g: MultiGraph, names: Names) -> bool:
    cut = bridges(g)
    if cut:
        listed = ", ".join(
            f"{e} ({names.get(g.endpoints(e)[0])}-{names.get(g.endpoints(e)[1])})" for e in sorted(cut)
        )
        _say(f"graph has bridges: {listed}")
    return bool(cut)


def cmd_cdc(cfg: RunConfig, with_trace: bool = False) -> int:
    g, names = _load(cfg.input, cfg.format)
    if _bridged(g, names):
        return INPUT_ERROR
    outcome, trace = cdc_with_trace(g, cfg.seed)
    if isinstance(outcome, FailureCertificate):
        _emit(_certificate_doc(outcome, names), cfg.output)
        _say(f"certificate: {outcome.tag} at step {outcome.step}: {outcome.detail}")
        return FAILED
    if not verify_cdc(g, outcome):
        _say("internal error: unverified cover")
        return FAILED
    doc = cover_to_dict(outcome, names)
    doc["mu"] = trace.mu
    if with_trace:
        doc["trace"] = trace_to_dict(trace)
    _emit(doc, cfg.output)
    _say(f"verified cycle double cover with {len(outcome)} cycles (mu = {trace.mu})")
    return OK


def cmd_ncdc(cfg: RunConfig, free_path: str) -> int:
    g, names = _load(cfg.input, cfg.format)
    specs = parse_free_edges(Path(free_path).read_text(), names)
    names = dict(names)
    free_edges = []
    for k, (v, label) in enumerate(specs):
        outer = g.next_vertex + k
        names[outer] = label
        free_edges.append(FreeEdge(g.next_edge + k, v, outer))
    free = FreeEdgeSet(g, tuple(free_edges))
    sur = is_surrounding(g, free)
    if not sur:
        _say(
            f"free edges are not surrounding: {sur.label} component "
            f"{sorted(names[v] for v in sur.component)} is touched {sur.touches} times"
        )
        return INPUT_ERROR
    outcome, trace = construct(g, free, cfg.seed)
    if isinstance(outcome, FailureCertificate):
        _emit(_certificate_doc(outcome, names), cfg.output)
        _say(f"certificate: {outcome.tag} at step {outcome.step}: {outcome.detail}")
        return FAILED
    if not verify_ncdc(g, free, outcome):
        _say("internal error: unverified cover")
        return FAILED
    doc = cover_to_dict(outcome, names)
    doc["free_edges"] = [[f.eid, names[f.inner], names[f.outer]] for f in free]
    doc["mu"] = trace.mu
    _emit(doc, cfg.output)
    _say(f"verified naive cycle double cover with {len(outcome)} elements")
    return OK


def cmd_verify(cfg: RunConfig, cover_path: str) -> int:
    g, names = _load(cfg.input, cfg.format)
    try:
        data = json.loads(Path(cover_path).read_text())
    except json.JSONDecodeError as exc:
        raise CDCError(f"cover file is not JSON: {exc}") from None
    cover = cover_from_dict(data, dict(g.edges))
    report = verify_cdc(g, cover)
    _emit(report.to_dict(), cfg.output)
    if report:
        _say("cover verified")
        return OK
    for v in report.violations:
        _say(f"{v.scope} {v.ident}: {v.reason}")
    return FAILED


def cmd_goddyn(cfg: RunConfig, cycles_path: str) -> int:
    g, names = _load(cfg.input, cfg.format)
    if _bridged(g, names):
        return INPUT_ERROR
    cycles = parse_cycles(Path(cycles_path).read_text(), g)
    outcome = goddyn_cover(g, cycles, cfg.seed)
    if isinstance(outcome, FailureCertificate):
        _emit(_certificate_doc(outcome, names), cfg.output)
        _say(f"certificate: {outcome.tag}: {outcome.detail}")
        return FAILED
    # containment is checked again here, independently of the construction
    wanted = [sorted(c.edges) for c in cycles]
    have = [sorted(el.edges) for el in outcome if el.kind == "cycle"]
    missing = [w for w in wanted if w not in have]
    if not verify_cdc(g, outcome) or missing:
        _say(f"internal error: cover misses cycles {missing}")
        return FAILED
    doc = cover_to_dict(outcome, names)
    doc["contains"] = wanted
    _emit(doc, cfg.output)
    _say(f"verified cycle double cover containing {len(cycles)} given cycles")
    return OK


# -- corpus ---------------------------------------------------------------

COLUMNS = ("graph", "vertices", "edges", "mu", "mu_bound", "outcome", "claim", "rechecked")


def run_corpus_item(path: str, fmt: str | None, seed: int) -> dict:
    """One corpus row; never raises."""
    row = {c: "" for c in COLUMNS}
    row["graph"] = Path(path).name
    try:
        g, _ = read_graph(path, fmt)
    except (OSError, CDCError) as exc:
        row.update(outcome="error", claim=str(exc).replace("\t", " "))
        return row
    row.update(vertices=g.num_vertices(), edges=g.num_edges())
    if bridges(g):
        row.update(outcome="bridges")
        return row
    outcome, trace = cdc_with_trace(g, seed)
    if trace is not None:
        row.update(mu=trace.mu, mu_bound=trace.mu_bound)
    if isinstance(outcome, FailureCertificate):
        row.update(outcome="certificate", claim=outcome.tag, rechecked=recheck_certificate(outcome))
    else:
        row.update(outcome="cover" if verify_cdc(g, outcome) else "unverified")
    return row


def corpus_paths(directory: str) -> list[str]:
    root = Path(directory)
    if not root.is_dir():
        raise CDCError(f"{directory} is not a directory")
    return [str(p) for p in sorted(root.iterdir()) if p.suffix in GRAPH_SUFFIXES]


def format_summary(rows: Sequence[dict]) -> str:
    lines = ["\t".join(COLUMNS)]
    for row in rows:
        lines.append("\t".join(str(row[c]) for c in COLUMNS))
    return "\n".join(lines) + "\n"


def cmd_corpus(cfg: RunConfig) -> int:
    paths = corpus_paths(cfg.input)
    if not paths:
        _say(f"no graph files in {cfg.input}")
        return INPUT_ERROR
    args = [(p, cfg.format, cfg.seed) for p in paths]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            rows = list(pool.map(run_corpus_item, *zip(*args)))
    else:
        rows = [run_corpus_item(*a) for a in args]
    _emit(format_summary(rows), cfg.output)
    for row in rows:
        extra = f" ({row['claim']})" if row["claim"] else ""
        _say(f"{row['graph']}: {row['outcome']}{extra}")
    outcomes = {row["outcome"] for row in rows}
    if outcomes & {"certificate", "unverified"}:
        return FAILED
    if outcomes != {"cover"}:
        return INPUT_ERROR
    return OK


# -- entry point ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("edgelist", "graph6"), help="input graph format")
    common.add_argument("--output", "-o", help="write the machine document here")
    common.add_argument("--seed", type=int, default=0, help="witness-search seed (default 0)")

    parser = argparse.ArgumentParser(prog="cdcpipe", description="Cycle double covers with certificates.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("cdc", parents=[common], help="cycle double cover of a bridgeless graph")
    p.add_argument("graph", help="graph file, or - for stdin")
    p.add_argument("--trace", action="store_true", help="include the peeling trace")
    p = sub.add_parser("ncdc", parents=[common], help="naive cover with free edges")
    p.add_argument("graph")
    p.add_argument("--free-edges", required=True, help="file of 'vertex outerLabel' lines")
    p = sub.add_parser("verify", parents=[common], help="check a cover document")
    p.add_argument("graph")
    p.add_argument("cover")
    p = sub.add_parser("goddyn", parents=[common], help="cover containing given cycles")
    p.add_argument("graph")
    p.add_argument("cycles", help="edge-id lines or JSON list of edge-id lists")
    p = sub.add_parser("corpus", parents=[common], help="run cdc over a directory")
    p.add_argument("directory")
    p.add_argument("--jobs", "-j", type=int, default=1)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code == 0 else INPUT_ERROR
    cfg = RunConfig(
        command=args.command,
        input=getattr(args, "graph", None) or getattr(args, "directory", None),
        format=args.format,
        output=args.output,
        seed=args.seed,
        jobs=max(1, getattr(args, "jobs", 1)),
    )
    try:
        if args.command == "cdc":
            return cmd_cdc(cfg, args.trace)
        if args.command == "ncdc":
            return cmd_ncdc(cfg, args.free_edges)
        if args.command == "verify":
            return cmd_verify(cfg, args.cover)
        if args.command == "goddyn":
            return cmd_goddyn(cfg, args.cycles)
        return cmd_corpus(cfg)
    except (OSError, CDCError) as exc:
        _say(f"error: {exc}")
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
