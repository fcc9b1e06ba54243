"""Temporal co-authorship graphs from publication records.

Papers are JSON lines ``{"id": str, "year": int, "authors": [str, ...]}``;
citations are a CSV file with header ``citing,cited``. A snapshot over the
window ``[y1, y2]`` links every pair of authors who share a paper published in
the window and scores each author by their h-index computed from in-corpus
citations made up to the cutoff year (``y2`` unless overridden).
"""
from __future__ import annotations

import bisect
import csv
import json
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import DataError, ParseError
from .graph import ScoredGraph


@dataclass(frozen=True)
class PaperRecord:
    paper_id: str
    year: int
    authors: tuple

    def __post_init__(self):
        authors = tuple(dict.fromkeys(self.authors))
        if not authors:
            raise DataError(f"paper {self.paper_id!r} has no authors")
        object.__setattr__(self, "authors", authors)


@dataclass(frozen=True)
class CitationRecord:
    citing: str
    cited: str


@dataclass(frozen=True)
class SnapshotSpec:
    start_year: int
    end_year: int
    window_years: int = 5
    stride: int = 1

    def __post_init__(self):
        if self.window_years < 1:
            raise DataError("window_years must be at least 1")
        if self.stride < 1:
            raise DataError("stride must be at least 1")
        if self.end_year < self.start_year:
            raise DataError("end_year precedes start_year")

    def windows(self) -> list[tuple[int, int]]:
        """Inclusive ``(first, last)`` year pairs of every full window."""
        return [(y, y + self.window_years - 1)
                for y in range(self.start_year, self.end_year - self.window_years + 2, self.stride)]


# ---------------------------------------------------------------- file formats

def read_papers(path) -> list[PaperRecord]:
    papers, seen = [], set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(path, lineno, f"invalid JSON ({exc.msg})") from None
            if not isinstance(obj, dict):
                raise ParseError(path, lineno, "expected a JSON object")
            pid, year, authors = obj.get("id"), obj.get("year"), obj.get("authors")
            if not isinstance(pid, str):
                raise ParseError(path, lineno, "'id' must be a string")
            if not isinstance(year, int) or isinstance(year, bool):
                raise ParseError(path, lineno, "'year' must be an integer")
            if (not isinstance(authors, list) or not authors
                    or not all(isinstance(a, str) for a in authors)):
                raise ParseError(path, lineno, "'authors' must be a non-empty list of strings")
            if pid in seen:
                raise ParseError(path, lineno, f"duplicate paper id {pid!r}")
            seen.add(pid)
            papers.append(PaperRecord(pid, year, tuple(authors)))
    return papers


def read_citations(path) -> list[CitationRecord]:
    out = []
    with open(path, encoding="utf-8", newline="") as fh:
        rows = csv.reader(fh)
        header = next(rows, None)
        if header is None or [h.strip() for h in header] != ["citing", "cited"]:
            raise ParseError(path, 1, "expected header 'citing,cited'")
        for row in rows:
            if not row or not any(c.strip() for c in row):
                continue
            if len(row) != 2:
                raise ParseError(path, rows.line_num, f"expected 2 fields, got {len(row)}")
            out.append(CitationRecord(row[0].strip(), row[1].strip()))
    return out


def write_papers(path, papers: Iterable[PaperRecord]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for p in papers:
            fh.write(json.dumps({"id": p.paper_id, "year": p.year, "authors": list(p.authors)}) + "\n")


def write_citations(path, citations: Iterable[CitationRecord]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["citing", "cited"])
        for c in citations:
            w.writerow([c.citing, c.cited])


# ---------------------------------------------------------------- h-index

def h_index(citation_counts: Sequence[int]) -> int:
    counts = sorted(citation_counts, reverse=True)
    h = 0
    for i, c in enumerate(counts, 1):
        if c < i:
            break
        h = i
    return h


class Corpus:
    """Indexed, immutable view of papers and in-field citations.

    Citations are kept only when both papers are in the corpus and differ;
    repeated records count once.
    """

    def __init__(self, papers: Iterable[PaperRecord], citations: Iterable[CitationRecord] = (),
                 years: tuple[int, int] | None = None):
        self.papers = tuple(papers)
        ids = {}
        for p in self.papers:
            if p.paper_id in ids:
                raise DataError(f"duplicate paper id {p.paper_id!r}")
            if years is not None and not years[0] <= p.year <= years[1]:
                raise DataError(f"paper {p.paper_id!r} year {p.year} outside {years[0]}-{years[1]}")
            ids[p.paper_id] = p
        self._by_id = ids
        pairs = {(c.citing, c.cited) for c in citations
                 if c.citing != c.cited and c.citing in ids and c.cited in ids}
        self.citations = tuple(CitationRecord(a, b) for a, b in sorted(pairs))
        cite_years = defaultdict(list)
        for a, b in pairs:
            cite_years[b].append(ids[a].year)
        self._cite_years = {pid: sorted(ys) for pid, ys in cite_years.items()}
        by_author = defaultdict(list)
        for p in self.papers:
            for a in p.authors:
                by_author[a].append(p)
        self._by_author = dict(by_author)
        self._by_year = defaultdict(list)
        for p in self.papers:
            self._by_year[p.year].append(p)

    @classmethod
    def of(cls, papers, citations=()) -> "Corpus":
        return papers if isinstance(papers, Corpus) else cls(papers, citations)

    @property
    def year_range(self) -> tuple[int, int]:
        if not self.papers:
            raise DataError("empty corpus")
        years = [p.year for p in self.papers]
        return min(years), max(years)

    def citation_count(self, paper_id: str, cutoff_year: int) -> int:
        return bisect.bisect_right(self._cite_years.get(paper_id, []), cutoff_year)

    def author_h_index(self, author: str, cutoff_year: int) -> int:
        counts = [self.citation_count(p.paper_id, cutoff_year)
                  for p in self._by_author.get(author, ()) if p.year <= cutoff_year]
        return h_index(counts)

    def papers_in(self, y1: int, y2: int) -> list[PaperRecord]:
        return [p for y in range(y1, y2 + 1) for p in self._by_year.get(y, ())]


def author_h_index(papers, citations, author: str, cutoff_year: int) -> int:
    return Corpus.of(papers, citations).author_h_index(author, cutoff_year)


# ---------------------------------------------------------------- snapshots

@dataclass(frozen=True)
class Snapshot:
    window: tuple[int, int]
    graph: ScoredGraph
    cutoff_year: int
    empty: bool = False

    def to_dict(self) -> dict:
        return {"start": self.window[0], "end": self.window[1], "cutoff_year": self.cutoff_year,
                "nodes": self.graph.n, "edges": self.graph.m, "empty": self.empty}


def build_snapshot(papers, citations, window: tuple[int, int], *, cutoff_year: int | None = None,
                   author_cap: int | None = None) -> Snapshot:
    """Co-authorship graph of the papers published in ``window`` (inclusive).

    Papers with more than ``author_cap`` authors add their authors as nodes
    but no edges. The snapshot is flagged ``empty`` when the window holds no
    papers.
    """
    y1, y2 = window
    if y1 > y2:
        raise DataError(f"window start {y1} after end {y2}")
    corpus = Corpus.of(papers, citations)
    cutoff = y2 if cutoff_year is None else cutoff_year
    in_window = corpus.papers_in(y1, y2)
    authors = sorted({a for p in in_window for a in p.authors})
    index = {a: i for i, a in enumerate(authors)}
    pairs = []
    for p in in_window:
        if author_cap is not None and len(p.authors) > author_cap:
            continue
        ids = sorted(index[a] for a in p.authors)
        pairs.extend(combinations(ids, 2))
    scores = np.array([corpus.author_h_index(a, cutoff) for a in authors], dtype=np.float64)
    edges = np.array(pairs, dtype=np.int64).reshape(-1, 2)
    g = ScoredGraph.from_arrays(scores, edges, tuple(authors))
    return Snapshot((y1, y2), g, cutoff, empty=not in_window)


@dataclass(frozen=True)
class SnapshotSeries:
    spec: SnapshotSpec
    snapshots: tuple
    corpus: Corpus | None = field(default=None, repr=False, compare=False)

    def __len__(self):
        return len(self.snapshots)

    def __iter__(self):
        return iter(self.snapshots)

    def __getitem__(self, i):
        return self.snapshots[i]

    def manifest(self) -> dict:
        s = self.spec
        return {"start_year": s.start_year, "end_year": s.end_year,
                "window_years": s.window_years, "stride": s.stride,
                "snapshots": [snap.to_dict() for snap in self.snapshots]}


def rolling_snapshots(papers, citations, spec: SnapshotSpec, *, cutoff_year: int | None = None,
                      author_cap: int | None = None) -> SnapshotSeries:
    corpus = Corpus.of(papers, citations)
    snaps = tuple(build_snapshot(corpus, None, w, cutoff_year=cutoff_year, author_cap=author_cap)
                  for w in spec.windows())
    return SnapshotSeries(spec, snaps, corpus)
