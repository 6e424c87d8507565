"""Ideal lattices, K-theory and classification verdicts for crossed products
of finite partial dynamical systems."""

from .classify import AlgebraFlags, Verdict, full_report
from .dynsys import PartialDynSys, validate
from .extension import PathPoint, build_extension
from .ktheory import (FinAbGroup, IntMatrix, KZeroField, k_groups,
                      smith_normal_form)
from .ypairs import YPair, enumerate_Y_pairs

__all__ = [
    "AlgebraFlags", "FinAbGroup", "IntMatrix", "KZeroField", "PartialDynSys",
    "PathPoint", "Verdict", "YPair", "build_extension", "enumerate_Y_pairs",
    "full_report", "k_groups", "smith_normal_form", "validate",
]
