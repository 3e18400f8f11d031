"""Task graph scheduling with a hybrid GA + learning-automata search."""

__version__ = "0.1.0"

from ._core import BACKEND
from .ga import GAConfig
from .graph import CommAugmentSpec, TaskGraph, augment_comm, parse_native, parse_stg
from .hybrid import Comparison, HybridConfig, RunReport, compare, run
from .oracle import OracleResult, brute_force_optimum
from .schedule import Schedule, decode, evaluate_makespan, gene_range, processor_of

__all__ = [
    "__version__",
    "BACKEND",
    "GAConfig",
    "CommAugmentSpec",
    "TaskGraph",
    "augment_comm",
    "parse_native",
    "parse_stg",
    "Comparison",
    "HybridConfig",
    "RunReport",
    "compare",
    "run",
    "OracleResult",
    "brute_force_optimum",
    "Schedule",
    "decode",
    "evaluate_makespan",
    "gene_range",
    "processor_of",
]
