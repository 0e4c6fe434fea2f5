"""Validated-numerics proof that the positive fixed point of the delayed
Ricker map ``F(x, y) = (y, y exp(alpha - x))`` is globally attracting for
``alpha`` in ``(0, 1]``.
"""

from .dynamics import RickerParams, construct_region, trapping_sequences
from .graph import BoxGraph, Cell, SccLabeling, enclose_nonwandering, basin_inner_enclosure, tarjan_scc
from .interval import Box2, ComplexInterval, Interval
from .neighborhood import certify_constants, find_attraction_domain
from .prover import ParameterSlice, ProofCertificate, prove_range, prove_slice

__all__ = [
    "Box2",
    "BoxGraph",
    "Cell",
    "ComplexInterval",
    "Interval",
    "ParameterSlice",
    "ProofCertificate",
    "RickerParams",
    "SccLabeling",
    "basin_inner_enclosure",
    "certify_constants",
    "construct_region",
    "enclose_nonwandering",
    "find_attraction_domain",
    "prove_range",
    "prove_slice",
    "tarjan_scc",
    "trapping_sequences",
]
