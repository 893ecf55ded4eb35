"""resmap: residue-class behavior of monomial permutations of prime fields."""

from .classmap import (
    ClassificationResult,
    ClassPartition,
    PowerMap,
    apply,
    classify,
    intersection_count,
    partition,
    symmetry_orbit,
)
from .search import SearchHit, SearchSpec, enumerate_maps, largest_hits, run_search

__version__ = "0.1.0"

__all__ = [
    "ClassPartition",
    "ClassificationResult",
    "PowerMap",
    "SearchHit",
    "SearchSpec",
    "apply",
    "classify",
    "enumerate_maps",
    "intersection_count",
    "largest_hits",
    "partition",
    "run_search",
    "symmetry_orbit",
    "__version__",
]
