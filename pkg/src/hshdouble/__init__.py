"""Simulation and exact checks for the H-S-H amplitude-doubling circuit."""

from .bitmath import BitString, GaussianInt
from .circuit import CircuitResult, run_fast, run_full
from .kernels import BACKEND
from .partition import PartitionInstance, RejectedInstanceError

__version__ = "0.1.0"

__all__ = ["BACKEND", "BitString", "CircuitResult", "GaussianInt",
           "PartitionInstance", "RejectedInstanceError", "run_fast", "run_full"]
