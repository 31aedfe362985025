"""Powers of tight Hamilton cycles in random uniform hypergraphs.

Exact overlap enumeration, closed-form bounds, exact moments, an exact
containment search, and seeded Monte Carlo threshold scans.
"""

from .bounds import LogValue, paper_constant_C, threshold_exponent
from .cycles import (
    CyclicPermutation,
    PowerCycleParams,
    build_power_cycle,
    build_power_path,
    enumerate_qn,
)
from .enumeration import GuardError, OverlapHistogram, overlap_histogram
from .hypergraph import EdgeSubset, Hypergraph, HypergraphError, read_file, write_file
from .lab import ScanConfig, ScanPoint, run_scan, sample
from .moments import exact_containment_probability, expected_count, second_moment_exact
from .search import SearchOutcome, brute_force_contains, contains_power_cycle

__version__ = "0.1.0"

__all__ = [
    "CyclicPermutation",
    "EdgeSubset",
    "GuardError",
    "Hypergraph",
    "HypergraphError",
    "LogValue",
    "OverlapHistogram",
    "PowerCycleParams",
    "ScanConfig",
    "ScanPoint",
    "SearchOutcome",
    "brute_force_contains",
    "build_power_cycle",
    "build_power_path",
    "contains_power_cycle",
    "enumerate_qn",
    "exact_containment_probability",
    "expected_count",
    "overlap_histogram",
    "paper_constant_C",
    "read_file",
    "run_scan",
    "sample",
    "second_moment_exact",
    "threshold_exponent",
    "write_file",
]
