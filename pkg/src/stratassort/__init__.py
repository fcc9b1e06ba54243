"""Stratification assortativity (StA) for scored networks."""
from .errors import (DataError, DegenerateError, InfeasibleSplitError, OutOfRangeError,
                     ParseError, StratError)
from .graph import ClassPartition, ScoredGraph, build_graph, similarity_weight, weighted_degree
from .metrics import (ComparisonReport, StratificationReport, class_stratification_score, dac,
                      expected_class_score, modularity, sac, sta)
from .maxstrat import BoundarySet, base_table, boundary_scan, dp_split, maxstrat
from .ingest import (CitationRecord, Corpus, PaperRecord, Snapshot, SnapshotSeries, SnapshotSpec,
                     author_h_index, build_snapshot, h_index, rolling_snapshots)
from .analysis import (ClassPairMatrix, ComponentReport, MobilityRecord, Timeseries,
                       collaboration_heatmap, collaboration_score, component_dispersion,
                       entrance_mobility, mobility_matrix, mobility_records, sta_timeseries)
from .synthetic import SyntheticConfig, generate_synthetic, random_scored_graph

__version__ = "0.1.0"
