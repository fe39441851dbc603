"""Exact Fourier coefficients of paramodular Siegel Eisenstein series with character."""

from .dirichlet import DirichletCharacter, kronecker_character, primitive_characters, primitivize
from .eisenstein import Coefficient, HalfIntMatrix, enumerate_T, fourier_coefficient
from .exactnum import CycloNumber, PiScaled

__all__ = [
    "Coefficient",
    "CycloNumber",
    "DirichletCharacter",
    "HalfIntMatrix",
    "PiScaled",
    "enumerate_T",
    "fourier_coefficient",
    "kronecker_character",
    "primitive_characters",
    "primitivize",
]
