"""Verification workbench for generalized n-qubit Hardy paradoxes."""
from .combinatorics import Scenario, binom, coefficient_f, coefficient_f_closed_qq
from .errors import PostconditionError, ResourceLimitError, ScenarioError
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "PostconditionError",
    "ResourceLimitError",
    "Scenario",
    "ScenarioError",
    "binom",
    "coefficient_f",
    "coefficient_f_closed_qq",
]
