"""Exact constructions and cover/matching verification for intersecting
partitioned hypergraphs."""

from tcover.hypercore import (
    CrossFamily,
    DocumentError,
    Hypergraph,
    PartitionedHypergraph,
    VacuousHypergraphError,
    brute_force_nu,
    brute_force_tau,
    check_partition,
    is_cross_intersecting,
    is_intersecting,
)
from tcover.solver import (
    CoverCertificate,
    EvasivenessReport,
    MatchingCertificate,
    SolveBudget,
    check_evasive,
    nu_exact,
    tau_exact,
    verify_cover,
)

__version__ = "0.1.0"

__all__ = [
    "CoverCertificate",
    "CrossFamily",
    "DocumentError",
    "EvasivenessReport",
    "Hypergraph",
    "MatchingCertificate",
    "PartitionedHypergraph",
    "SolveBudget",
    "VacuousHypergraphError",
    "brute_force_nu",
    "brute_force_tau",
    "check_evasive",
    "check_partition",
    "is_cross_intersecting",
    "is_intersecting",
    "nu_exact",
    "tau_exact",
    "verify_cover",
]
