"""Exact classification of two-dimensional toric log germs by minimal log discrepancy.

Everything is computed in exact rational arithmetic. The package has
three layers: a lattice core (subgroups of the rational plane in a
canonical basis), a classification engine that produces machine-checkable
certificates for threshold questions, and an independent brute-force
oracle used to re-check every produced certificate.
"""

from .certify import (
    CaseA,
    CaseB,
    ClassifiedGerm,
    Contained,
    EqualsIntersection,
    Hit,
    NotTLC,
    Verification,
    box_maximal,
    candidate_germs,
    classify_germ_record,
    classify_tlc,
    classify_tlc_lattice,
    classify_tlc_subgroup,
    cyclic_lattices,
    enumerate_germs,
    lawrence,
    series_certificate_log,
    series_membership,
    series_membership_lattice,
    verify_certificate,
    verify_certificate_lattice,
)
from .errors import VerificationFailure
from .geometry import (
    Complement,
    DoubleH,
    HyperplaneSection,
    NotApplicable,
    ProductCase,
    QuotientCase,
    SingleH,
    bounded_complement,
    classify_mld_ge_one,
    complement_standard,
    half_mld_section,
    hyperplane_dichotomy,
    hyperplane_section,
    is_standard_coefficient,
    lct_invariant,
)
from .germs import (
    CaseData,
    CaseTag,
    Germ,
    canonical_germ,
    case_analysis,
    case_analysis_lattice,
    case_analysis_ray,
    gamma_max,
    gamma_max_lattice,
    gamma_of,
    germ_from_quotient_type,
    log_discrepancy,
    make_germ,
    mld,
    mld_argmin,
    mld_argmin_lattice,
    mld_lattice,
    psi_of,
    swapped_germ,
)
from .lattices import (
    CovectorSplit,
    CoWitness,
    GapEmpty,
    GapHit,
    InteriorPoint,
    Lattice,
    Rational,
    STANDARD_LATTICE,
    Vec2,
    contains,
    cyclic_type,
    dot,
    dual,
    dual_parts,
    format_rational,
    gap_witness_1d,
    in_cone,
    in_cone_interior,
    index,
    interior_witness,
    is_primitive,
    lattice_from_generators,
    lattice_from_quotient_type,
    on_cone_boundary,
    parse_rational,
    points_in_box,
    residues,
    split_along_covector,
    standardize_cone,
    sublattices_of_standard,
    superlattices,
    swapped_lattice,
    vec,
)
from .oracle import lawrence_oracle, mld_oracle, mld_oracle_lattice, tlc_oracle

__version__ = "0.1.0"

__all__ = [
    "CaseA",
    "CaseB",
    "CaseData",
    "CaseTag",
    "ClassifiedGerm",
    "Complement",
    "Contained",
    "CovectorSplit",
    "CoWitness",
    "DoubleH",
    "EqualsIntersection",
    "GapEmpty",
    "GapHit",
    "Germ",
    "Hit",
    "HyperplaneSection",
    "InteriorPoint",
    "Lattice",
    "NotApplicable",
    "NotTLC",
    "ProductCase",
    "QuotientCase",
    "Rational",
    "SingleH",
    "STANDARD_LATTICE",
    "Vec2",
    "Verification",
    "VerificationFailure",
    "bounded_complement",
    "box_maximal",
    "candidate_germs",
    "canonical_germ",
    "case_analysis",
    "case_analysis_lattice",
    "case_analysis_ray",
    "classify_germ_record",
    "classify_mld_ge_one",
    "classify_tlc",
    "classify_tlc_lattice",
    "classify_tlc_subgroup",
    "complement_standard",
    "contains",
    "cyclic_lattices",
    "cyclic_type",
    "dot",
    "dual",
    "dual_parts",
    "enumerate_germs",
    "format_rational",
    "gamma_max",
    "gamma_max_lattice",
    "gamma_of",
    "gap_witness_1d",
    "germ_from_quotient_type",
    "half_mld_section",
    "hyperplane_dichotomy",
    "hyperplane_section",
    "in_cone",
    "in_cone_interior",
    "index",
    "interior_witness",
    "is_primitive",
    "is_standard_coefficient",
    "lattice_from_generators",
    "lattice_from_quotient_type",
    "lawrence",
    "lawrence_oracle",
    "lct_invariant",
    "log_discrepancy",
    "make_germ",
    "mld",
    "mld_argmin",
    "mld_argmin_lattice",
    "mld_lattice",
    "mld_oracle",
    "mld_oracle_lattice",
    "on_cone_boundary",
    "parse_rational",
    "points_in_box",
    "psi_of",
    "residues",
    "series_certificate_log",
    "series_membership",
    "series_membership_lattice",
    "split_along_covector",
    "standardize_cone",
    "sublattices_of_standard",
    "superlattices",
    "swapped_germ",
    "swapped_lattice",
    "tlc_oracle",
    "vec",
    "verify_certificate",
    "verify_certificate_lattice",
]
