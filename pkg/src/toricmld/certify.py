"""Threshold certificates: classification, verification, enumeration.

A threshold certificate proves one side of the question "does the
subgroup meet the open region of discrepancy below t". The positive
side is witnessed by covectors (one covector whose scaled copy stays
under psi, or a weighted pair that decomposes psi exactly); the
negative side by an explicit interior point pairing below t. Verifiers
here recompute everything from raw pairings and membership tests, so
they share no conclusions with the classifier.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator, NamedTuple, Optional, Sequence, Union

from .errors import VerificationFailure
from .germs import (
    CaseTag,
    Germ,
    canonical_germ,
    case_analysis_lattice,
    case_analysis_ray,
    mld_argmin_lattice,
    mld_lattice,
    psi_of,
)
from .lattices import (
    E1,
    E2,
    InteriorPoint,
    Lattice,
    Rational,
    STANDARD_LATTICE,
    Vec2,
    contains,
    cyclic_type,
    dot,
    dual,
    in_cone,
    in_cone_interior,
    interior_witness,
    lattice_from_generators,
    lattice_from_quotient_type,
    residues,
    superlattices,
    vec,
)
from .oracle import mld_oracle_lattice


class CaseA(NamedTuple):
    """Single covector witness: psi - t*m stays in the dual quadrant."""

    m: Vec2


class CaseB(NamedTuple):
    """Weighted pair witness: t1*m1 + t2*m2 = psi with t1 + t2 >= t."""

    m1: Vec2
    m2: Vec2
    t1: Rational
    t2: Rational


class NotTLC(NamedTuple):
    """Interior subgroup point whose pairing with psi is below t."""

    e: Vec2
    value: Rational


Certificate = Union[CaseA, CaseB, NotTLC]


class Verification(NamedTuple):
    ok: bool
    reason: str

    def __bool__(self) -> bool:
        return self.ok


def classify_tlc_lattice(lat: Lattice, psi: Vec2, t: Rational) -> Certificate:
    """Certificate for a full-rank superlattice of the integer plane."""
    t = Fraction(t)
    if t <= 0:
        raise ValueError("threshold must be positive")
    if psi.is_zero():
        raise ValueError("threshold classification needs a nonzero psi")
    lam, argmin = mld_argmin_lattice(lat, psi)
    if lam < t:
        return NotTLC(argmin[0], lam)
    data = case_analysis_lattice(lat, psi)
    if data.gamma >= t:
        return CaseA(data.v1)
    # gamma < t <= lam only happens in the split case with positive
    # kernel component; the exact decomposition of psi gives the pair.
    assert data.tag is CaseTag.SPLIT and data.psi_prime > 0
    t2 = (data.mld - data.gamma) / (1 - data.alpha)
    t1 = data.mld - t2
    assert t1 > 0 and t2 > 0
    assert data.v1.scaled(t1) + data.v2.scaled(t2) == psi
    return CaseB(data.v1, data.v2, t1, t2)


def classify_tlc(germ: Germ, t: Rational) -> Certificate:
    """Certificate for a germ at threshold t; rejects zero psi."""
    return classify_tlc_lattice(germ.lattice, psi_of(germ), t)


def classify_tlc_subgroup(lat: Lattice, psi: Vec2, t: Rational) -> Certificate:
    """Certificate for a subgroup of any rank.

    Rank-2 subgroups must contain the integer plane. A subgroup that
    misses the open quadrant entirely is certified through a scaled
    orthogonal covector, which needs psi interior to the dual quadrant.
    """
    t = Fraction(t)
    if t <= 0:
        raise ValueError("threshold must be positive")
    if psi.is_zero():
        raise ValueError("threshold classification needs a nonzero psi")
    if lat.rank == 2:
        if not (contains(lat, E1) and contains(lat, E2)):
            raise ValueError("rank-2 subgroups must contain the integer plane")
        return classify_tlc_lattice(lat, psi, t)
    wit = interior_witness(lat)
    if isinstance(wit, InteriorPoint):
        data = case_analysis_ray(lat, psi)
        if data.mld < t:
            return NotTLC(wit.point, data.mld)
        return CaseA(data.v1)
    if not in_cone_interior(psi):
        raise ValueError(
            "subgroup misses the open quadrant and psi is on the dual boundary"
        )
    m0 = wit.covector
    k = 1
    for mi, pi in ((m0.x1, psi.x1), (m0.x2, psi.x2)):
        if mi > 0:
            k = max(k, math.ceil(mi / pi))
    return CaseA(Vec2(m0.x1 / (k * t), m0.x2 / (k * t)))


def verify_certificate_lattice(
    lat: Lattice, psi: Vec2, t: Rational, cert: Certificate
) -> Verification:
    """Re-check a certificate from its definition only.

    Raw pairings and membership tests; nothing is taken from the
    classifier, so a classifier bug cannot vouch for itself.
    """
    t = Fraction(t)
    if t <= 0:
        return Verification(False, "threshold must be positive")
    if isinstance(cert, CaseA):
        m = cert.m
        if m.is_zero():
            return Verification(False, "witness covector is zero")
        if not in_cone(m):
            return Verification(False, "witness covector outside the dual quadrant")
        for row in lat.basis:
            if dot(m, row).denominator != 1:
                return Verification(False, "witness pairs non-integrally with the subgroup")
        if not in_cone(psi - m.scaled(t)):
            return Verification(False, "threshold multiple of the witness overshoots psi")
        return Verification(True, "single-witness certificate holds")
    if isinstance(cert, CaseB):
        m1, m2, t1, t2 = cert
        if lat.rank != 2:
            return Verification(False, "dual-pair certificate needs a full-rank subgroup")
        if not (in_cone(m1) and in_cone(m2)):
            return Verification(False, "pair covectors outside the dual quadrant")
        if m1.x1 * m2.x2 - m1.x2 * m2.x1 == 0:
            return Verification(False, "pair covectors are linearly dependent")
        if not (t1 > 0 and t2 > 0):
            return Verification(False, "pair weights must be positive")
        if t1 + t2 < t:
            return Verification(False, "pair weights sum below the threshold")
        if m1.scaled(t1) + m2.scaled(t2) != psi:
            return Verification(False, "weighted pair does not decompose psi")
        span = lattice_from_generators([m1, m2])
        if dual(span) != lat:
            return Verification(False, "subgroup differs from the pair's joint integrality locus")
        return Verification(True, "dual-pair certificate holds")
    if isinstance(cert, NotTLC):
        e, value = cert.e, cert.value
        if not contains(lat, e):
            return Verification(False, "violating point lies outside the subgroup")
        if not in_cone_interior(e):
            return Verification(False, "violating point is not interior to the quadrant")
        if dot(psi, e) != value:
            return Verification(False, "recorded pairing value is wrong")
        if value >= t:
            return Verification(False, "recorded value does not beat the threshold")
        return Verification(True, "violating point confirmed")
    return Verification(False, "unrecognized certificate")


def verify_certificate(germ: Germ, t: Rational, cert: Certificate) -> Verification:
    return verify_certificate_lattice(germ.lattice, psi_of(germ), t, cert)


def box_maximal(m: Vec2, bound: Rational) -> Vec2:
    """Largest integer multiple of m inside the box [0, bound]^2."""
    if not in_cone(m) or m.is_zero():
        raise ValueError("needs a nonzero covector in the closed dual quadrant")
    k: Optional[int] = None
    for mi in (m.x1, m.x2):
        if mi > 0:
            ki = math.floor(bound / mi)
            k = ki if k is None else min(k, ki)
    assert k is not None and k >= 1
    return m.scaled(Fraction(k))


class Contained(NamedTuple):
    """The subgroup pairs integrally with m, whose multiple fills the box."""

    m: Vec2


class EqualsIntersection(NamedTuple):
    """The subgroup is exactly the joint integrality locus of a pair."""

    m1: Vec2
    m2: Vec2
    k1: int
    k2: int


class Hit(NamedTuple):
    """Interior subgroup point inside the open simplex."""

    e: Vec2


LawrenceResult = Union[Contained, EqualsIntersection, Hit]


def lawrence(lat: Lattice, p: int, q: int) -> LawrenceResult:
    """Decide whether the subgroup avoids the open simplex x+y < p/q, x,y > 0.

    Avoidance is certified either by a single integer covector (the
    subgroup is contained in its integrality locus, with the box-maximal
    multiple reported) or by an exact presentation of the subgroup as a
    joint integrality locus with small weights: k1 + k2 <= 2q and the
    weighted average of the pair lies in [0, q/p]^2.

    The ratio p/q is reduced internally before any use.
    """
    if p < 1 or q < 1:
        raise ValueError("simplex size must be a positive ratio of integers")
    if lat.rank != 2 or not (contains(lat, E1) and contains(lat, E2)):
        raise ValueError("needs a full-rank superlattice of the integer plane")
    t = Fraction(p, q)
    p, q = t.numerator, t.denominator
    psi = vec(1, 1)

    lam, argmin = mld_argmin_lattice(lat, psi)
    if lam < t:
        return Hit(argmin[0])
    data = case_analysis_lattice(lat, psi)
    if data.gamma >= t:
        m = box_maximal(data.v1, Fraction(q, p))
        assert m.x1.denominator == 1 and m.x2.denominator == 1
        return Contained(m)

    scale = 1 / data.gamma
    assert scale.denominator == 1, "inverse of the best scale must be an integer here"
    scale = int(scale)
    offset = scale * data.alpha
    assert offset.denominator == 1, "scaled slice offset must be an integer here"
    offset = int(offset)
    k1 = q - p * offset
    k2 = scale * p - q
    assert k1 >= 1 and k2 >= 1
    if p == 1 and q > 1 and k1 + k2 == 2 * q:
        # Saturated weights only happen with offset 0 and scale 2q,
        # where the plain average of the pair already lands in the box.
        k1 = k2 = 1
    assert k1 + k2 <= 2 * q
    avg = (data.v1.scaled(Fraction(k1)) + data.v2.scaled(Fraction(k2))).scaled(
        Fraction(1, k1 + k2)
    )
    assert 0 <= avg.x1 <= Fraction(q, p) and 0 <= avg.x2 <= Fraction(q, p)
    assert dual(lattice_from_generators([data.v1, data.v2])) == lat
    return EqualsIntersection(data.v1, data.v2, k1, k2)


def series_membership_lattice(lat: Lattice, t: Rational) -> list[tuple[int, int]]:
    """Integer covectors in [0, floor(1/t)]^2 pairing integrally with lat.

    The zero covector is excluded; each surviving covector identifies
    one series relation. Depends on the lattice only, never on the
    boundary, and is sorted lexicographically.
    """
    t = Fraction(t)
    if t <= 0:
        raise ValueError("threshold must be positive")
    bound = math.floor(1 / t)
    m_lat = dual(lat)
    out: list[tuple[int, int]] = []
    for i in range(bound + 1):
        for j in range(bound + 1):
            if i == 0 and j == 0:
                continue
            if contains(m_lat, vec(i, j)):
                out.append((i, j))
    return out


def series_membership(germ: Germ, t: Rational) -> list[tuple[int, int]]:
    return series_membership_lattice(germ.lattice, t)


def series_certificate_log(
    germ: Germ, m: Vec2, t: Rational
) -> Optional[tuple[int, tuple[Rational, Rational]]]:
    """Periodic boundary certificate induced by a series covector.

    The level n is minimal with n*(1 - b_i) >= m_i; the induced
    boundary is 1 - m/n componentwise. Accepted when n fits under 1/t
    directly, or at the rounded level when the induced boundary clears
    the interpolation between the full boundary and the given one.
    Returns None when no level works; the accepted boundary is checked
    against the oracle to keep discrepancies at or above 1/n.
    """
    t = Fraction(t)
    if t <= 0:
        raise ValueError("threshold must be positive")
    if m.is_zero() or not in_cone(m) or m.x1.denominator != 1 or m.x2.denominator != 1:
        raise ValueError("witness must be a nonzero integer covector in the dual quadrant")
    if not contains(dual(germ.lattice), m):
        raise ValueError("witness does not pair integrally with the germ lattice")
    psi = psi_of(germ)
    n = 1
    for mi, ai in ((m.x1, psi.x1), (m.x2, psi.x2)):
        if mi > 0:
            if ai == 0:
                return None
            n = max(n, math.ceil(mi / ai))
    bn = (1 - m.x1 / Fraction(n), 1 - m.x2 / Fraction(n))
    limit = 1 / t
    if n > limit:
        if n > math.ceil(limit):
            return None
        w = 1 / (n * t)
        if not (bn[0] >= (1 - w) + w * germ.b1 and bn[1] >= (1 - w) + w * germ.b2):
            return None
    check = mld_oracle_lattice(germ.lattice, Vec2(m.x1 / n, m.x2 / n))[0]
    if check < Fraction(1, n):
        raise VerificationFailure("accepted series certificate violates its own level")
    return n, bn


class ClassifiedGerm(NamedTuple):
    """One enumeration record: germ, threshold, value, proof, series."""

    germ: Germ
    t: Rational
    mld: Rational
    certificate: Certificate
    series: list[tuple[int, int]]


def cyclic_lattices(r_max: int) -> Iterator[tuple[Lattice, tuple[int, int, int]]]:
    """Cyclic-quotient germ lattices of order up to r_max, with types.

    Unit normalization fixes the first weight to 1 for orders above 1,
    so each subgroup appears exactly once before swap deduplication.
    """
    if r_max < 1:
        raise ValueError("order bound must be a positive integer")
    yield STANDARD_LATTICE, (1, 0, 0)
    for r in range(2, r_max + 1):
        for w in range(1, r):
            if math.gcd(w, r) == 1:
                yield lattice_from_quotient_type(r, 1, w), (r, 1, w)


def classify_germ_record(germ: Germ, t: Rational) -> ClassifiedGerm:
    """Classify one germ, verify the certificate, attach series data.

    Returns the record, with a NotTLC certificate when the value is
    below the threshold (callers decide whether to stream those).
    Raises VerificationFailure if the certificate fails its own check.
    """
    t = Fraction(t)
    lat = germ.lattice
    psi = psi_of(germ)
    if psi.is_zero():
        value = Fraction(0)
        cert: Certificate = NotTLC(residues(lat)[0], Fraction(0))
    else:
        value = mld_lattice(lat, psi)
        cert = classify_tlc_lattice(lat, psi, t)
    outcome = verify_certificate_lattice(lat, psi, t, cert)
    if not outcome:
        raise VerificationFailure(
            f"certificate rejected for {lat!r}, boundary ({germ.b1},{germ.b2}): {outcome.reason}"
        )
    return ClassifiedGerm(germ, t, value, cert, series_membership_lattice(lat, t))


def candidate_germs(
    mode: str,
    bound: int,
    boundaries: Sequence[tuple[Rational, Rational]] = ((Fraction(0), Fraction(0)),),
) -> Iterator[Germ]:
    """Deterministic stream of canonical germ representatives.

    mode "cyclic" walks cyclic quotient lattices of order up to the
    bound; mode "all" walks every superlattice of index up to the bound
    (including ones whose unit points are imprimitive). Germs equal up
    to the coordinate swap appear once, in first-seen order.
    """
    if mode == "cyclic":
        lattices: Iterator[Lattice] = (lat for lat, _ in cyclic_lattices(bound))
    elif mode == "all":
        lattices = superlattices(bound)
    else:
        raise ValueError(f"unknown enumeration mode: {mode!r}")

    seen: set[tuple] = set()
    for lat in lattices:
        for b1, b2 in boundaries:
            germ = canonical_germ(Germ(lat, Fraction(b1), Fraction(b2)))
            key = (germ.lattice.basis, germ.b1, germ.b2)
            if key in seen:
                continue
            seen.add(key)
            yield germ


def enumerate_germs(
    mode: str,
    bound: int,
    t: Rational,
    boundaries: Sequence[tuple[Rational, Rational]] = ((Fraction(0), Fraction(0)),),
    include_not_tlc: bool = False,
) -> Iterator[ClassifiedGerm]:
    """Classified canonical germs, each with a verified certificate.

    Records with value below t are withheld unless include_not_tlc is
    set (those carry a NotTLC certificate).
    """
    t = Fraction(t)
    if t <= 0:
        raise ValueError("threshold must be positive")
    for germ in candidate_germs(mode, bound, boundaries):
        record = classify_germ_record(germ, t)
        if record.mld < t and not include_not_tlc:
            continue
        yield record


def quotient_type_of(germ: Germ) -> Optional[tuple[int, int, int]]:
    """Canonical cyclic quotient type of the germ lattice, if cyclic."""
    return cyclic_type(germ.lattice)
