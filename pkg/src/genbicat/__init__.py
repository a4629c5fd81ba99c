"""Generic bicategories at finite scale: spans, polynomials, oplax functors, convolution."""

from .bicategory import Aug, Bicategory, CoherentClass, Gen, validate_coherent_class
from .finset import FinFunction
from .report import Check, LawViolation, Report

__version__ = "0.1.0"

__all__ = [
    "Aug",
    "Bicategory",
    "Check",
    "CoherentClass",
    "FinFunction",
    "Gen",
    "LawViolation",
    "Report",
    "validate_coherent_class",
]
