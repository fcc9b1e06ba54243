import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from stratassort import (CitationRecord, Corpus, PaperRecord, SnapshotSpec, author_h_index,
                         build_snapshot, h_index, rolling_snapshots)
from stratassort.errors import DataError, ParseError
from stratassort.ingest import read_citations, read_papers, write_citations, write_papers


def P(pid, year, *authors):
    return PaperRecord(pid, year, tuple(authors))


def C(a, b):
    return CitationRecord(a, b)


# ---------------------------------------------------------------- h-index

@pytest.mark.parametrize("counts,h", [([], 0), ([0, 0], 0), ([1], 1), ([3, 0, 6, 1, 5], 3),
                                      ([10, 10, 10], 3), ([4, 4, 4, 4], 4), ([2, 2, 2, 2], 2)])
def test_h_index_examples(counts, h):
    assert h_index(counts) == h


@given(st.lists(st.integers(0, 50), max_size=40))
def test_h_index_matches_direct_search(counts):
    assert h_index(counts) == oracle.h_index(counts)


@given(st.lists(st.integers(0, 50), max_size=30), st.integers(0, 29), st.integers(1, 5))
def test_h_index_monotone_in_citations(counts, i, extra):
    if not counts:
        return
    more = list(counts)
    more[i % len(more)] += extra
    assert h_index(more) >= h_index(counts)


@given(st.lists(st.integers(0, 50), max_size=30), st.integers(0, 50))
def test_h_index_monotone_in_papers(counts, new):
    assert h_index(counts + [new]) >= h_index(counts)


def test_h_index_uses_citations_up_to_cutoff():
    papers = [P("p", 2000, "x"), P("q", 2001, "y"), P("r", 2003, "y"), P("s", 2005, "z")]
    cites = [C("q", "p"), C("r", "p"), C("s", "p"), C("s", "q")]
    assert author_h_index(papers, cites, "x", 2000) == 0
    assert author_h_index(papers, cites, "x", 2001) == 1
    assert author_h_index(papers, cites, "x", 2005) == 1
    # papers published after the cutoff do not count either
    assert author_h_index(papers, cites, "y", 2004) == 0
    assert author_h_index(papers, cites, "y", 2005) == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_h_index_monotone_in_cutoff(seed):
    rng = np.random.default_rng(seed)
    papers = [P(f"p{i}", int(rng.integers(2000, 2010)), f"a{rng.integers(4)}") for i in range(15)]
    cites = [C(f"p{rng.integers(15)}", f"p{rng.integers(15)}") for _ in range(40)]
    corpus = Corpus(papers, cites)
    for a in ("a0", "a1", "a2", "a3"):
        hs = [corpus.author_h_index(a, y) for y in range(1999, 2012)]
        assert hs == sorted(hs)


def test_self_duplicate_and_dangling_citations_are_dropped():
    corpus = Corpus([P("a", 2000, "x"), P("b", 2001, "y")],
                    [C("b", "a"), C("b", "a"), C("a", "a"), C("b", "zzz")])
    assert corpus.citations == (C("b", "a"),)
    assert corpus.citation_count("a", 2001) == 1


# ---------------------------------------------------------------- windows

def test_rolling_window_arithmetic():
    windows = SnapshotSpec(1966, 2015, 5, 1).windows()
    assert len(windows) == 46
    assert windows[0] == (1966, 1970) and windows[-1] == (2011, 2015)


@given(st.integers(1900, 2000), st.integers(0, 60), st.integers(1, 10), st.integers(1, 5))
def test_window_count_formula(start, span, width, stride):
    spec = SnapshotSpec(start, start + span, width, stride)
    windows = spec.windows()
    full = max(0, span + 1 - width)
    assert len(windows) == (0 if span + 1 < width else full // stride + 1)
    assert all(b - a + 1 == width and b <= start + span for a, b in windows)


@pytest.mark.parametrize("kw", [dict(window_years=0), dict(stride=0), dict(end_year=1900)])
def test_invalid_snapshot_spec(kw):
    args = dict(start_year=1966, end_year=2015, window_years=5, stride=1) | kw
    with pytest.raises(DataError):
        SnapshotSpec(**args)


# ---------------------------------------------------------------- snapshots

def test_snapshot_links_coauthors_in_window():
    papers = [P("a", 2000, "x", "y", "z"), P("b", 2003, "x", "w"), P("c", 2006, "v", "x")]
    snap = build_snapshot(papers, [], (2000, 2004))
    g = snap.graph
    assert g.labels == ("w", "x", "y", "z")
    assert g.m == 4
    assert not snap.empty and snap.cutoff_year == 2004


def test_snapshot_scores_are_h_indices_at_cutoff():
    papers = [P("a", 2000, "x", "y"), P("b", 2001, "z"), P("c", 2002, "z"), P("d", 2010, "q")]
    cites = [C("b", "a"), C("c", "a"), C("d", "a")]
    snap = build_snapshot(papers, cites, (2000, 2002))
    assert dict(zip(snap.graph.labels, snap.graph.scores.tolist())) == {"x": 1, "y": 1, "z": 0}
    late = build_snapshot(papers, cites, (2000, 2002), cutoff_year=2010)
    assert late.cutoff_year == 2010


def test_author_cap_keeps_nodes_but_drops_edges():
    papers = [P("a", 2000, "x", "y", "z"), P("b", 2000, "x", "y")]
    snap = build_snapshot(papers, [], (2000, 2000), author_cap=2)
    assert snap.graph.n == 3 and snap.graph.m == 1


def test_empty_window_is_flagged():
    snap = build_snapshot([P("a", 2000, "x")], [], (1990, 1994))
    assert snap.empty and snap.graph.n == 0


def test_series_manifest(tmp_path):
    papers = [P(f"p{y}", y, "x", f"a{y}") for y in range(2000, 2010)]
    series = rolling_snapshots(papers, [], SnapshotSpec(2000, 2009, 5, 2))
    man = series.manifest()
    assert [(s["start"], s["end"]) for s in man["snapshots"]] == [(2000, 2004), (2002, 2006),
                                                                   (2004, 2008)]
    json.dumps(man)


# ---------------------------------------------------------------- files

def test_corpus_round_trip(tmp_path):
    papers = [P("a", 2000, "x", "y"), P("b", 2001, "y")]
    cites = [C("b", "a")]
    write_papers(tmp_path / "p.jsonl", papers)
    write_citations(tmp_path / "c.csv", cites)
    assert read_papers(tmp_path / "p.jsonl") == papers
    assert read_citations(tmp_path / "c.csv") == cites


@pytest.mark.parametrize("line", ['{"id": 1, "year": 2000, "authors": ["x"]}',
                                  '{"id": "a", "year": "2000", "authors": ["x"]}',
                                  '{"id": "a", "year": true, "authors": ["x"]}',
                                  '{"id": "a", "year": 2000, "authors": []}',
                                  '{"id": "a", "year": 2000}',
                                  'not json', '[1, 2]'])
def test_bad_paper_lines_are_rejected_with_line_number(tmp_path, line):
    path = tmp_path / "p.jsonl"
    path.write_text('{"id": "ok", "year": 1999, "authors": ["q"]}\n' + line + "\n")
    with pytest.raises(ParseError, match=":2"):
        read_papers(path)


def test_duplicate_paper_id_rejected(tmp_path):
    path = tmp_path / "p.jsonl"
    path.write_text('{"id": "a", "year": 1999, "authors": ["q"]}\n' * 2)
    with pytest.raises(ParseError):
        read_papers(path)


@pytest.mark.parametrize("text", ["from,to\na,b\n", "citing,cited\na,b,c\n", ""])
def test_bad_citation_files(tmp_path, text):
    path = tmp_path / "c.csv"
    path.write_text(text)
    with pytest.raises(ParseError):
        read_citations(path)


def test_paper_record_dedups_authors_and_requires_one():
    assert P("a", 2000, "x", "x", "y").authors == ("x", "y")
    with pytest.raises(DataError):
        P("a", 2000)
