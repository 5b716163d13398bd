"""Symbolic and numeric toolkit for a length-deformed kinematical algebra."""

__version__ = "0.1.0"

__all__ = [
    "scalars", "liealg", "envelope", "diffop", "forms",
    "specfun", "experiments", "reps", "qsc", "cli", "plotting",
]
