"""Graph minors, forcing thresholds and bounded falsification."""

from .errors import MinorLabError
from .graph import Graph, MinorModel, verify_model
from .minors import SearchBudget, Verdict, brute_force_minor_oracle, find_minor

__version__ = "0.1.0"
INTERFACE_REVISION = 1

__all__ = [
    "Graph",
    "MinorLabError",
    "MinorModel",
    "SearchBudget",
    "Verdict",
    "brute_force_minor_oracle",
    "find_minor",
    "verify_model",
]
