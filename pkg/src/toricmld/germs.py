"""Toric log germs and the exact minimal log discrepancy engine.

A germ is a full-rank superlattice of the integer plane (the ambient
cone is the positive quadrant, its two unit points primitive in the
lattice) together with two boundary coefficients in [0, 1]. The log
discrepancy of a lattice point in the open quadrant is its pairing with
psi, the componentwise complement of the boundary; the minimal log
discrepancy (mld) is the infimum of those pairings.

The case analysis below reduces that infimum to closed-form data: the
best single covector v1, the scale gamma it supports, and, when psi is
interior, an adapted lattice basis whose slice interval (alpha, beta)
controls everything else. Every derived identity is asserted on the
spot against independent residue scans.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence, Union

from .lattices import (
    E1,
    E2,
    Lattice,
    Rational,
    Vec2,
    contains,
    dot,
    dual,
    in_cone,
    in_cone_interior,
    interior_witness,
    InteriorPoint,
    is_primitive,
    lattice_from_quotient_type,
    on_cone_boundary,
    points_in_box,
    residues,
    split_along_covector,
    swapped_lattice,
    vec,
)


@dataclass(frozen=True)
class Germ:
    """Superlattice of the integer plane plus two boundary coefficients.

    Construct through `make_germ`, which validates. Direct construction
    skips the primitivity checks; the enumerator uses that deliberately
    for quotient records whose unit points are imprimitive.
    """

    lattice: Lattice
    b1: Rational
    b2: Rational


def make_germ(lattice: Lattice, b1, b2) -> Germ:
    """Validated germ constructor."""
    b1, b2 = Fraction(b1), Fraction(b2)
    if lattice.rank != 2 or not (contains(lattice, E1) and contains(lattice, E2)):
        raise ValueError("germ lattice must be a full-rank superlattice of the integer plane")
    for name, e in (("e1", E1), ("e2", E2)):
        if not is_primitive(lattice, e):
            raise ValueError(f"unit point {name} is not primitive in the germ lattice")
    for name, b in (("b1", b1), ("b2", b2)):
        if not 0 <= b <= 1:
            raise ValueError(f"boundary coefficient {name} must lie in [0, 1]")
    return Germ(lattice, b1, b2)


def germ_from_quotient_type(r: int, w1: int, w2: int, b1=0, b2=0) -> Germ:
    """Germ of the cyclic quotient with the given order and weights."""
    return make_germ(lattice_from_quotient_type(r, w1, w2), b1, b2)


def psi_of(germ: Germ) -> Vec2:
    """Componentwise complement of the boundary: (1 - b1, 1 - b2)."""
    return Vec2(1 - germ.b1, 1 - germ.b2)


def swapped_germ(germ: Germ) -> Germ:
    """Image of the germ under the coordinate swap."""
    return Germ(swapped_lattice(germ.lattice), germ.b2, germ.b1)


def canonical_germ(germ: Germ) -> Germ:
    """Least of the germ and its coordinate swap, for deduplication."""
    other = swapped_germ(germ)

    def key(g: Germ):
        return (g.lattice.basis, g.b1, g.b2)

    return germ if key(germ) <= key(other) else other


def log_discrepancy(germ: Germ, e: Sequence) -> Rational:
    """Pairing of psi with a nonzero lattice point of the closed quadrant."""
    e = vec(e[0], e[1])
    if e.is_zero():
        raise ValueError("log discrepancy needs a nonzero point")
    if not contains(germ.lattice, e):
        raise ValueError("point lies outside the germ lattice")
    if not in_cone(e):
        raise ValueError("point lies outside the quadrant")
    return dot(psi_of(germ), e)


def mld_lattice(lat: Lattice, psi: Vec2) -> Rational:
    """Minimum pairing over the open quadrant, via (0,1]^2 representatives.

    Valid whenever psi is componentwise nonnegative: shifting any
    interior point down into the representative box only lowers the
    pairing, so the minimum is attained among representatives.
    """
    return min(dot(psi, v) for v in residues(lat))


def mld_argmin_lattice(lat: Lattice, psi: Vec2) -> tuple[Rational, list[Vec2]]:
    """Minimum pairing and the sorted list of minimizing representatives."""
    vals = [(dot(psi, v), v) for v in residues(lat)]
    best = min(v for v, _ in vals)
    return best, sorted(p for v, p in vals if v == best)


def mld(germ: Germ) -> Rational:
    """Minimal log discrepancy of the germ."""
    return mld_lattice(germ.lattice, psi_of(germ))


def mld_argmin(germ: Germ) -> tuple[Rational, list[Vec2]]:
    """Minimal log discrepancy plus all minimizing representatives."""
    return mld_argmin_lattice(germ.lattice, psi_of(germ))


def gamma_of(m: Vec2, psi: Vec2) -> Optional[Rational]:
    """Largest scale s keeping psi - s*m inside the closed dual quadrant.

    None encodes plus infinity, which happens only for the zero
    covector; any other quadrant covector has a positive coordinate and
    therefore a finite scale.
    """
    if not in_cone(m):
        raise ValueError("covector must lie in the closed dual quadrant")
    if not in_cone(psi):
        raise ValueError("psi must lie in the closed dual quadrant")
    best: Optional[Rational] = None
    for mi, pi in ((m.x1, psi.x1), (m.x2, psi.x2)):
        if mi > 0:
            ratio = pi / mi
            if best is None or ratio < best:
                best = ratio
    return best


def gamma_max_lattice(m_lat: Lattice, psi: Vec2, lam: Rational) -> tuple[Rational, Vec2]:
    """Maximum scale over nonzero dual-lattice quadrant covectors.

    `lam` must be the minimum pairing for the same data; the maximum is
    at least lam/2, so every maximizer m satisfies psi - (lam/2)m >= 0
    and lies in the box [0, 2*psi1/lam] x [0, 2*psi2/lam]. Returns the
    value and the lexicographically least maximizer.
    """
    assert lam > 0
    best: Optional[tuple[Rational, Vec2]] = None
    for m in points_in_box(m_lat, 2 * psi.x1 / lam, 2 * psi.x2 / lam):
        if m.is_zero():
            continue
        gm = gamma_of(m, psi)
        assert gm is not None
        if best is None or gm > best[0]:
            best = (gm, m)
    assert best is not None and 2 * best[0] >= lam
    return best


def gamma_max(germ: Germ) -> tuple[Rational, Vec2]:
    """Best single covector bound for a germ: (value, least maximizer)."""
    psi = psi_of(germ)
    if psi.is_zero():
        raise ValueError("the covector bound needs a nonzero psi")
    lam = mld(germ)
    return gamma_max_lattice(dual(germ.lattice), psi, lam)


class CaseTag(Enum):
    """Shape of the case analysis output.

    BOUNDARY_PSI: psi sits on the dual quadrant boundary, where the
    best covector already tells the whole story. RAY: rank-1 subgroup
    through the open quadrant. SPLIT: interior psi over a full-rank
    lattice, analyzed through an adapted basis.
    """

    BOUNDARY_PSI = "boundary_psi"
    RAY = "ray"
    SPLIT = "split"


@dataclass(frozen=True)
class CaseData:
    """Complete output of the case analysis.

    `mld` is the exact minimum of the discrepancy pairing. The split
    fields: (e1p, e2p) is the adapted lattice basis, (alpha, beta) the
    slice interval with beta None meaning unbounded, psi_prime the
    kernel component of the rescaled residual, v2 the covector dual to
    e2p, q_min the denominator of alpha, lambda_prime the second-order
    minimum, and c the pivot bound 1 + psi_prime*(beta - alpha) for
    bounded slices.
    """

    tag: CaseTag
    gamma: Rational
    v1: Vec2
    mld: Rational
    e1p: Optional[Vec2] = None
    e2p: Optional[Vec2] = None
    alpha: Optional[Rational] = None
    beta: Optional[Rational] = None
    psi_prime: Optional[Rational] = None
    v2: Optional[Vec2] = None
    lambda_prime: Optional[Rational] = None
    q_min: Optional[int] = None
    c: Optional[Rational] = None


def _slice_interval(e1p: Vec2, e2p: Vec2) -> tuple[Rational, Optional[Rational]]:
    """Parameter interval where e1p + t*e2p lies in the open quadrant.

    Nonempty because the unit-pairing slice always meets the open
    quadrant; None for the upper end means unbounded above.
    """
    lower: list[Rational] = []
    upper: list[Rational] = []
    for base, step in ((e1p.x1, e2p.x1), (e1p.x2, e2p.x2)):
        if step > 0:
            lower.append(-base / step)
        elif step < 0:
            upper.append(-base / step)
        else:
            assert base > 0
    assert lower
    a0 = max(lower)
    b0 = min(upper) if upper else None
    assert b0 is None or a0 < b0
    return a0, b0


def case_analysis_lattice(lat: Lattice, psi: Vec2) -> CaseData:
    """Closed-form discrepancy data for a full-rank superlattice.

    Asserts every derived identity against independent residue scans;
    an assertion here means the closed forms and the brute force
    disagree, which is a bug, not bad input.
    """
    if not in_cone(psi):
        raise ValueError("psi must lie in the closed dual quadrant")
    if psi.is_zero():
        raise ValueError("case analysis needs a nonzero psi")
    lam, minimizers = mld_argmin_lattice(lat, psi)
    gamma, v1 = gamma_max_lattice(dual(lat), psi, lam)
    assert gamma <= lam <= 2 * gamma

    if psi.x1 == 0 or psi.x2 == 0:
        # Boundary psi: the best covector realizes psi exactly.
        assert lam == gamma and v1.scaled(gamma) == psi
        return CaseData(tag=CaseTag.BOUNDARY_PSI, gamma=gamma, v1=v1, mld=lam)

    e1p, e2p = split_along_covector(lat, v1)
    resid = Vec2(psi.x1 / gamma - v1.x1, psi.x2 / gamma - v1.x2)
    pp = dot(resid, e2p)
    if pp < 0:
        e2p = -e2p
        pp = -pp
    elif pp == 0:
        e2p = max(e2p, -e2p)
    psi_prime = pp

    a0, b0 = _slice_interval(e1p, e2p)
    shift = math.floor(a0)
    e1p = e1p + e2p.scaled(Fraction(shift))
    alpha = a0 - shift
    beta = None if b0 is None else b0 - shift
    assert 0 <= alpha < 1
    assert dot(v1, e1p) == 1 and dot(v1, e2p) == 0

    det = e1p.x1 * e2p.x2 - e1p.x2 * e2p.x1
    v2 = Vec2(-e1p.x2 / det, e1p.x1 / det)
    assert dot(v2, e1p) == 0 and dot(v2, e2p) == 1

    # Residual vanishes along the slice's lower endpoint direction.
    gamma_resid = Vec2(psi.x1 - gamma * v1.x1, psi.x2 - gamma * v1.x2)
    assert dot(gamma_resid, e1p + e2p.scaled(alpha)) == 0

    if beta is None:
        # v1 on the dual boundary: the slice escapes to infinity.
        assert on_cone_boundary(v1)
        assert 0 < psi_prime <= 1
        c = None
    else:
        assert in_cone_interior(v1)
        assert 0 <= psi_prime < 1
        c = 1 + psi_prime * (beta - alpha)
        assert beta >= c and beta > 1

    value = gamma * (1 + psi_prime * (1 - alpha))
    assert value == lam

    # Positive kernel component forces a unique minimizer (the converse
    # can fail, e.g. on the index-2 diagonal superlattice).
    if psi_prime > 0:
        assert minimizers == [e1p + e2p]

    q_min = alpha.denominator
    lambda_prime = gamma * psi_prime / q_min
    assert lambda_prime == min(dot(gamma_resid, v) for v in residues(lat))
    if alpha > 0:
        assert lam == gamma + (q_min - q_min * alpha) * lambda_prime

    return CaseData(
        tag=CaseTag.SPLIT,
        gamma=gamma,
        v1=v1,
        mld=lam,
        e1p=e1p,
        e2p=e2p,
        alpha=alpha,
        beta=beta,
        psi_prime=psi_prime,
        v2=v2,
        lambda_prime=lambda_prime,
        q_min=q_min,
        c=c,
    )


def case_analysis(germ: Germ) -> CaseData:
    """Case analysis of a germ; rejects zero psi."""
    return case_analysis_lattice(germ.lattice, psi_of(germ))


def case_analysis_ray(lat: Lattice, psi: Vec2) -> CaseData:
    """Discrepancy data for a rank-1 subgroup meeting the open quadrant.

    The generator inside the quadrant is the unique minimizer and the
    best covector is psi rescaled to pair to one with it.
    """
    if not in_cone(psi):
        raise ValueError("psi must lie in the closed dual quadrant")
    if psi.is_zero():
        raise ValueError("case analysis needs a nonzero psi")
    if lat.rank != 1:
        raise ValueError("ray analysis needs a rank-1 subgroup")
    wit = interior_witness(lat)
    if not isinstance(wit, InteriorPoint):
        raise ValueError("ray analysis needs a generator inside the open quadrant")
    e = wit.point
    lam = dot(psi, e)
    assert lam > 0
    v1 = Vec2(psi.x1 / lam, psi.x2 / lam)
    assert dot(v1, e) == 1
    return CaseData(tag=CaseTag.RAY, gamma=lam, v1=v1, mld=lam)
