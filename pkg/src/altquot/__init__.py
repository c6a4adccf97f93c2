"""Alternating quotients of triangle groups, built and certified from coset diagrams."""
from __future__ import annotations

from .cases import CaseTriple, build_case, detect_case, remediate
from .certify import AltCertificate, certify_alternating, order_oracle, recheck
from .diagram import TriangleDiagram, compose, validate
from .perm import Permutation
from .pipeline import check_proposition, realize_degree
from .signatures import FuchsianSignature, mu, reduce

__version__ = "0.1.0"

__all__ = [
    "AltCertificate",
    "CaseTriple",
    "FuchsianSignature",
    "Permutation",
    "TriangleDiagram",
    "build_case",
    "certify_alternating",
    "check_proposition",
    "compose",
    "detect_case",
    "mu",
    "order_oracle",
    "realize_degree",
    "recheck",
    "reduce",
    "remediate",
    "validate",
]
