"""Synthetic publication corpora and random scored graphs.

The corpus generator simulates a field year by year:

* researchers enter at a steady rate and stay active for an exponential
  career length; a ``transient_rate`` share leaves within three years
* each year the active population leads about ``papers_per_author`` papers
  per head, with leads drawn by weight ``(1 + h)**lead_status_bias``; a
  ``solo_rate`` share of papers are single-authored
* co-authors come from the lead's earlier collaborators (``triadic_closure``)
  or from the active population with weight
  ``exp(-beta * |tier gap|) * (1 + h)**status_bias``, tiers being taken from
  current h-indices
* newcomers write their first paper with a mentor drawn by weight
  ``(1 + h)**mentor_status_bias`` and, for ``apprenticeship_years``, join each
  paper the mentor leads with probability ``student_inclusion``
* every paper cites papers from the last ``citation_memory`` years with weight
  ``fitness * (1 + status)**citation_status_bias``, where ``status`` is the
  highest h-index on the cited team and ``fitness`` a lognormal draw; the
  reference count ramps up as ``citations_per_paper * C / (C + reference_saturation)``
  with ``C`` citable papers, so a young field has little to cite

``beta = 0`` makes co-author choice blind to tiers. Status-biased citation on
its own still pulls co-author h-indices together (co-authors share the
citations of their joint papers), so a fully tier-blind null model also needs
``citation_status_bias = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError
from .graph import ClassPartition, ScoredGraph
from .ingest import CitationRecord, PaperRecord, h_index

DEFAULT_TIERS = "0,1,3,7"


@dataclass(frozen=True)
class SyntheticConfig:
    eras: int = 5
    years_per_era: int = 10
    entrants_per_era: int = 300
    initial_authors: int = 40
    beta: float = 3.0
    triadic_closure: float = 0.5
    status_bias: float = 0.3
    lead_status_bias: float = 0.5
    mentor_status_bias: float = 0.5
    papers_per_author: float = 0.6
    max_team: int = 4
    apprenticeship_years: int = 5
    student_inclusion: float = 0.8
    solo_rate: float = 0.2
    citations_per_paper: int = 40
    citation_memory: int = 10
    reference_saturation: float = 10000.0
    citation_status_bias: float = 1.5
    fitness_sigma: float = 1.0
    career_years: float = 20.0
    transient_rate: float = 0.3
    start_year: int = 1966
    tiers: str = DEFAULT_TIERS
    seed: int = 0

    def __post_init__(self):
        if self.beta < 0:
            raise DataError("beta must be non-negative")
        for name in ("triadic_closure", "solo_rate", "student_inclusion", "transient_rate"):
            if not 0 <= getattr(self, name) <= 1:
                raise DataError(f"{name} must lie in [0, 1]")
        for name in ("status_bias", "lead_status_bias", "mentor_status_bias", "citation_status_bias", "fitness_sigma", "reference_saturation"):
            if getattr(self, name) < 0:
                raise DataError(f"{name} must be non-negative")
        for name in ("eras", "years_per_era", "max_team", "citation_memory"):
            if getattr(self, name) < 1:
                raise DataError(f"{name} must be at least 1")
        for name in ("entrants_per_era", "initial_authors", "citations_per_paper"):
            if getattr(self, name) < 0:
                raise DataError(f"{name} must be non-negative")
        if self.initial_authors + self.entrants_per_era < 2:
            raise DataError("need at least two researchers")
        if self.papers_per_author <= 0 or self.career_years <= 0:
            raise DataError("papers_per_author and career_years must be positive")

    @property
    def years(self) -> int:
        return self.eras * self.years_per_era

    @property
    def end_year(self) -> int:
        return self.start_year + self.years - 1


class _Field:
    """Mutable simulation state."""

    def __init__(self, cfg: SyntheticConfig, rng: np.random.Generator):
        self.cfg = cfg
        self.rng = rng
        self.tiers = ClassPartition.from_string(cfg.tiers)
        self.end = []            # last active year per author
        self.papers_of = []      # paper indices per author
        self.collab = []         # set of co-author ids per author
        self.h = np.zeros(0, dtype=np.int64)
        self.paper_year = []
        self.paper_team = []
        self.paper_status = []
        self.paper_fitness = []
        self.cites = []          # citations received per paper
        self.citations = []      # (citing, cited) paper index pairs
        self.students = {}       # mentor -> [(student, last apprentice year)]

    def add_authors(self, count: int, year: int) -> list[int]:
        first = len(self.end)
        length = self.rng.exponential(self.cfg.career_years, size=count)
        transient = self.rng.random(count) < self.cfg.transient_rate
        length[transient] = self.rng.integers(0, 3, size=int(transient.sum()))
        self.end.extend(int(year + x) for x in length)
        for _ in range(count):
            self.papers_of.append([])
            self.collab.append(set())
        self.h = np.concatenate([self.h, np.zeros(count, dtype=np.int64)])
        return list(range(first, first + count))

    def refresh_h(self) -> None:
        cites = self.cites
        self.h = np.array([h_index([cites[p] for p in ps]) for ps in self.papers_of],
                          dtype=np.int64)

    def apprentices(self, mentor: int, year: int, room: int) -> list[int]:
        """Current students joining a paper led by their mentor."""
        current = [s for s, until in self.students.get(mentor, ()) if until >= year]
        self.students[mentor] = [(s, u) for s, u in self.students.get(mentor, ()) if u >= year]
        joined = [s for s in current if self.rng.random() < self.cfg.student_inclusion]
        return joined[:room]

    def pick_coauthors(self, team: list[int], pool: np.ndarray, n: int) -> list[int]:
        cfg, rng = self.cfg, self.rng
        lead = team[0]
        team = list(team)
        tier = self.tiers.assign(self.h[pool])
        base = np.exp(-cfg.beta * np.abs(tier - tier[np.searchsorted(pool, lead)]))
        base = base * (1.0 + self.h[pool]) ** cfg.status_bias
        active = set(pool.tolist())
        while len(team) < n:
            known = [c for c in sorted(self.collab[lead]) if c in active and c not in team]
            if known and rng.random() < cfg.triadic_closure:
                team.append(int(known[rng.integers(len(known))]))
                continue
            w = base.copy()
            w[np.isin(pool, team)] = 0.0
            if w.sum() <= 0:
                break
            team.append(int(pool[rng.choice(pool.size, p=w / w.sum())]))
        return team

    def citable(self, year: int) -> tuple[np.ndarray, np.ndarray]:
        """Papers from the citation memory window and their citation weights,
        fixed at the start of ``year``."""
        lo = year - self.cfg.citation_memory
        years = np.asarray(self.paper_year, dtype=np.int64)
        cand = np.flatnonzero((years >= lo) & (years < year))
        if cand.size == 0:
            return cand, np.zeros(0)
        fitness = np.asarray(self.paper_fitness)[cand]
        status = np.asarray(self.paper_status, dtype=np.float64)[cand]
        w = fitness * (1.0 + status) ** self.cfg.citation_status_bias
        return cand, w / w.sum()

    def references(self, citable: int) -> int:
        """In-field reference count; young fields have little to cite."""
        cfg = self.cfg
        return int(round(cfg.citations_per_paper * citable / (citable + cfg.reference_saturation)))

    def write_paper(self, team: list[int], year: int, citable) -> None:
        cand, p = citable
        idx = len(self.paper_year)
        take = min(self.references(cand.size), cand.size)
        if take:
            for c in self.rng.choice(cand, size=take, replace=False, p=p):
                self.citations.append((idx, int(c)))
                self.cites[int(c)] += 1
        self.paper_year.append(year)
        self.paper_team.append(tuple(team))
        self.paper_status.append(int(max(self.h[a] for a in team)))
        self.paper_fitness.append(float(self.rng.lognormal(0.0, self.cfg.fitness_sigma)))
        self.cites.append(0)
        for a in team:
            self.papers_of[a].append(idx)
            self.collab[a].update(b for b in team if b != a)


def _simulate(cfg: SyntheticConfig) -> _Field:
    rng = np.random.default_rng(cfg.seed)
    f = _Field(cfg, rng)
    f.add_authors(cfg.initial_authors, cfg.start_year)
    per_year = cfg.entrants_per_era / cfg.years_per_era
    carry = 0.0
    for year in range(cfg.start_year, cfg.end_year + 1):
        f.refresh_h()
        citable = f.citable(year)
        carry += per_year
        n_new, carry = int(carry), carry - int(carry)
        pool = np.array([a for a in range(len(f.end)) if f.end[a] >= year], dtype=np.int64)
        newcomers = f.add_authors(n_new, year) if year > cfg.start_year else []
        # newcomers publish first with a mentor picked by status
        for a in newcomers:
            if pool.size == 0:
                continue
            w = (1.0 + f.h[pool]) ** cfg.mentor_status_bias
            mentor = int(pool[rng.choice(pool.size, p=w / w.sum())])
            f.write_paper([mentor, a], year, citable)
            f.students.setdefault(mentor, []).append((a, year + cfg.apprenticeship_years))
        pool = np.array([a for a in range(len(f.end)) if f.end[a] >= year], dtype=np.int64)
        if pool.size < 2:
            continue
        n_papers = rng.poisson(cfg.papers_per_author * pool.size)
        w = (1.0 + f.h[pool]) ** cfg.lead_status_bias
        leads = pool[rng.choice(pool.size, size=n_papers, p=w / w.sum())]
        for lead in leads:
            if rng.random() < cfg.solo_rate:
                f.write_paper([int(lead)], year, citable)
                continue
            size = int(rng.integers(2, cfg.max_team + 1))
            team = [int(lead)] + f.apprentices(int(lead), year, size - 1)
            team = f.pick_coauthors(team, pool, min(size, pool.size))
            f.write_paper(team, year, citable)
    return f


def generate_synthetic(cfg: SyntheticConfig) -> tuple[list[PaperRecord], list[CitationRecord]]:
    """Reproducible corpus in the ingestion record types."""
    f = _simulate(cfg)
    papers = [PaperRecord(f"P{i}", year, tuple(f"A{a}" for a in team))
              for i, (year, team) in enumerate(zip(f.paper_year, f.paper_team))]
    citations = [CitationRecord(f"P{a}", f"P{b}") for a, b in f.citations]
    return papers, citations


def random_scored_graph(n: int, m: int, h: int, seed: int = 0) -> ScoredGraph:
    """``n`` nodes with integer scores in ``0..h-1`` and about ``m`` random edges."""
    rng = np.random.default_rng(seed)
    scores = rng.integers(0, h, size=n).astype(np.float64)
    e = rng.integers(0, n, size=(int(m * 1.02) + 16, 2))
    e = e[e[:, 0] != e[:, 1]]
    e = np.unique(np.sort(e, axis=1), axis=0)
    if e.shape[0] > m:
        e = e[np.sort(rng.choice(e.shape[0], size=m, replace=False))]
    return ScoredGraph(scores, e)
