"""Text formats for graphs and tabular results.

Edge list: one whitespace-separated pair of labels per line.
Scores: ``label<TAB>score`` per line.
Both are UTF-8; blank lines and lines starting with ``#`` are skipped.
"""
from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

from .errors import ParseError
from .graph import ScoredGraph, build_graph

CSV_DIGITS = 6


def _lines(path):
    with open(path, encoding="utf-8", newline="\n") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\r\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            yield lineno, line


def read_edge_list(path) -> list[tuple[str, str]]:
    edges = []
    for lineno, line in _lines(path):
        toks = line.split()
        if len(toks) != 2:
            raise ParseError(path, lineno, f"expected 2 labels, got {len(toks)}")
        edges.append((toks[0], toks[1]))
    return edges


def read_scores(path) -> dict[str, float]:
    scores = {}
    for lineno, line in _lines(path):
        parts = line.split("\t")
        if len(parts) != 2:
            raise ParseError(path, lineno, "expected label<TAB>score")
        label, raw = parts[0].strip(), parts[1].strip()
        try:
            val = float(raw)
        except ValueError:
            raise ParseError(path, lineno, f"bad score {raw!r}") from None
        if not math.isfinite(val):
            raise ParseError(path, lineno, f"non-finite score {raw!r}")
        if label in scores:
            raise ParseError(path, lineno, f"duplicate label {label!r}")
        scores[label] = val
    return scores


def read_graph(edges_path, scores_path) -> ScoredGraph:
    return build_graph(read_edge_list(edges_path), read_scores(scores_path))


def write_graph(g: ScoredGraph, edges_path, scores_path) -> None:
    with open(edges_path, "w", encoding="utf-8", newline="\n") as fh:
        for u, v in g.edges:
            fh.write(f"{g.labels[u]} {g.labels[v]}\n")
    with open(scores_path, "w", encoding="utf-8", newline="\n") as fh:
        for lab, s in zip(g.labels, g.scores):
            fh.write(f"{lab}\t{fmt_score(s)}\n")


def fmt_score(s: float) -> str:
    return str(int(s)) if float(s).is_integer() else repr(float(s))


def fmt_csv(x) -> str:
    if isinstance(x, float):
        return f"{x:.{CSV_DIGITS}f}"
    return str(x)


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if header:
        w.writerow(header)
    for row in rows:
        w.writerow([fmt_csv(x) for x in row])
    return buf.getvalue()


def json_text(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def write_text(path, text: str) -> None:
    if path is None or str(path) == "-":
        import sys
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8", newline="\n")
