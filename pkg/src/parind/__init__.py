"""Simplicity certificates for parabolically induced modules of restricted Lie algebras.

Modules build on each other: ``gfield`` (finite fields) -> ``rootsys``
(root data) -> ``chevalley`` (Lie algebra over F_q) -> ``pbw`` (reduced
enveloping algebra) -> ``repmod`` (matrix modules, Norton test) ->
``induce`` (Z_I^chi(lambda), R and certificates).
"""

from __future__ import annotations

__version__ = "0.1.0"

from .chevalley import ChevalleyBasis, build_chevalley
from .errors import ParindError
from .gfield import Field, FieldElement, make_field
from .induce import Certificate, build_induced, build_levi_simple, certify, compatible_weights, compute_R_direct, fit_c
from .pbw import PBWAlgebra, PChar, algebra, normal_form
from .repmod import MatrixModule, norton_test, spin_up
from .rootsys import RootSystem, Weight, build_root_system, parabolic

__all__ = [
    "Certificate",
    "ChevalleyBasis",
    "Field",
    "FieldElement",
    "MatrixModule",
    "PBWAlgebra",
    "PChar",
    "ParindError",
    "RootSystem",
    "Weight",
    "algebra",
    "build_chevalley",
    "build_induced",
    "build_levi_simple",
    "build_root_system",
    "certify",
    "compatible_weights",
    "compute_R_direct",
    "fit_c",
    "make_field",
    "normal_form",
    "norton_test",
    "parabolic",
    "spin_up",
]
