"""Exact computer algebra for Jacobi diagrams, the framed Kontsevich integral
of tangle words and the LMO invariant of surgery presentations."""

from .diagrams import Diagram, DiagramError, Support, theta
from .gradedsum import GradedSum
from .kontsevich import TangleError, TangleWord, fixture, parse_word, zhat
from .lmo import FormalCombination, iota_n, omega_n

__version__ = "0.1.0"

__all__ = [
    "Diagram", "DiagramError", "FormalCombination", "GradedSum", "Support", "TangleError",
    "TangleWord", "fixture", "iota_n", "omega_n", "parse_word", "theta", "zhat",
]
