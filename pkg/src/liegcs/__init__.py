"""Exact computations with generalized complex structures and Lie algebras.

Modules: ``scalars`` (exact arithmetic), ``rootsys`` (root systems),
``liealg`` (Weyl bases, real forms), ``gcslin`` (linear structures),
``leftinv`` (left-invariant data on Lie groups), ``admissible`` (triples).
"""

from .admissible import (
    AdmissibleTriple,
    EpsilonParams,
    build_epsilon,
    check_admissible,
    check_mainapplic,
    gdelta_lemma,
    inner_admissible,
    nu_from_heights,
    outer_epsilon0,
)
from .certificate import Certificate
from .gcslin import SKEW, SYMMETRIC, GCStructure, HoloData, bfield_decompose, holo_space_of, reconstruct_gcs
from .leftinv import Connection, d0_connection, dc_connection, involutivity_oracle, mainthm_check
from .liealg import VoganDiagram, build_real_form, build_weyl_algebra, regular_subalgebra
from .rootsys import build_root_system
from .scalars import Scalar

__version__ = "0.1.0"

__all__ = [
    "AdmissibleTriple",
    "Certificate",
    "Connection",
    "EpsilonParams",
    "GCStructure",
    "HoloData",
    "SKEW",
    "SYMMETRIC",
    "Scalar",
    "VoganDiagram",
    "bfield_decompose",
    "build_epsilon",
    "build_real_form",
    "build_root_system",
    "build_weyl_algebra",
    "check_admissible",
    "check_mainapplic",
    "d0_connection",
    "dc_connection",
    "gdelta_lemma",
    "holo_space_of",
    "inner_admissible",
    "involutivity_oracle",
    "mainthm_check",
    "nu_from_heights",
    "outer_epsilon0",
    "reconstruct_gcs",
    "regular_subalgebra",
]
