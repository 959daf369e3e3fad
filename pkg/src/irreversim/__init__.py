"""Seeded simulations of urn models and the Kac ring, with randomness diagnostics."""

from . import ehrenfest, ergodic, kac, largedev, modified_ehrenfest, randomness, seqcore
from .seqcore import BernoulliPrior, BitString, Curve, Cylinder, SeededBitSource

__version__ = "0.1.0"

__all__ = [
    "BernoulliPrior",
    "BitString",
    "Curve",
    "Cylinder",
    "SeededBitSource",
    "ehrenfest",
    "ergodic",
    "kac",
    "largedev",
    "modified_ehrenfest",
    "randomness",
    "seqcore",
]
