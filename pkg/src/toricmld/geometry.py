"""Derived constructions on top of the case analysis.

Invariant hyperplane sections (covectors of the dual lattice inside the
dual quadrant), the threshold up to which a section can be added to the
boundary, the two-section dichotomy realizing the discrepancy minimum,
and periodic complement boundaries with controlled level. Oracle checks
guard every construction.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple, Union

from .errors import VerificationFailure
from .germs import (
    CaseTag,
    Germ,
    case_analysis,
    gamma_of,
    make_germ,
    mld,
    psi_of,
)
from .lattices import (
    Rational,
    STANDARD_LATTICE,
    Vec2,
    contains,
    cyclic_type,
    dual,
    in_cone,
    points_in_box,
)
from .oracle import mld_oracle_lattice


class HyperplaneSection(NamedTuple):
    """Invariant hyperplane section, identified by its covector."""

    m: Vec2


def hyperplane_section(germ: Germ, m: Vec2) -> HyperplaneSection:
    """Validated section constructor: m in the dual lattice and quadrant."""
    if m.is_zero():
        raise ValueError("a section needs a nonzero covector")
    if not in_cone(m):
        raise ValueError("section covector outside the dual quadrant")
    if not contains(dual(germ.lattice), m):
        raise ValueError("section covector does not pair integrally with the lattice")
    return HyperplaneSection(m)


def lct_invariant(germ: Germ, section: HyperplaneSection) -> Rational:
    """Largest c with the boundary plus c times the section still at most one.

    Componentwise binding constraint, so this is exactly the largest
    scale of the section covector under psi.
    """
    value = gamma_of(section.m, psi_of(germ))
    assert value is not None
    return value


class ProductCase(NamedTuple):
    """Standard lattice with light boundary; the value is 2 - b1 - b2."""

    a: Rational


class QuotientCase(NamedTuple):
    """Boundary-free chain quotient of order l + 1; the value is 1."""

    l: int


class NotApplicable(NamedTuple):
    """The germ's value is below one."""


def classify_mld_ge_one(germ: Germ) -> Union[ProductCase, QuotientCase, NotApplicable]:
    """Match a germ of value at least one to its family.

    The two families are exhaustive for valid germs; reaching the end
    with value >= 1 is a theorem violation, reported as such. Invalid
    germs (imprimitive unit points) are rejected up front.
    """
    make_germ(germ.lattice, germ.b1, germ.b2)  # reject relaxed germs
    a = mld(germ)
    if a < 1:
        return NotApplicable()
    if germ.lattice == STANDARD_LATTICE:
        assert a == 2 - germ.b1 - germ.b2 and germ.b1 + germ.b2 <= 1
        return ProductCase(a)
    if germ.b1 == 0 and germ.b2 == 0:
        ty = cyclic_type(germ.lattice)
        if ty is not None and ty[1] == 1 and ty[2] == ty[0] - 1:
            assert a == 1
            return QuotientCase(ty[0] - 1)
    raise VerificationFailure("value-one families are not exhaustive for this germ")


class SingleH(NamedTuple):
    """One section realizes the whole discrepancy minimum."""

    h: HyperplaneSection
    a: Rational


class DoubleH(NamedTuple):
    """Two sections with weights g1, g2 sum to the discrepancy minimum."""

    h1: HyperplaneSection
    h2: HyperplaneSection
    g1: Rational
    g2: Rational


def hyperplane_dichotomy(germ: Germ) -> Union[SingleH, DoubleH]:
    """Realize the discrepancy minimum through one or two sections.

    Single section when the best covector scale reaches the minimum
    (then psi is a multiple of that covector and adding the scaled
    section exhausts the boundary); otherwise the adapted pair carries
    exact weights summing to the minimum.
    """
    psi = psi_of(germ)
    if psi.is_zero():
        raise ValueError("dichotomy needs a nonzero psi")
    data = case_analysis(germ)
    a = data.mld
    if data.gamma == a:
        section = HyperplaneSection(data.v1)
        # psi = a * v1 here, so the pushed boundary is the full one.
        residual = psi - data.v1.scaled(a)
        assert residual.is_zero()
        assert mld_oracle_lattice(germ.lattice, residual)[0] == 0
        return SingleH(section, a)
    assert data.tag is CaseTag.SPLIT
    g2 = (a - data.gamma) / (1 - data.alpha)
    g1 = a - g2
    assert g1 > 0 and g2 > 0
    assert data.v1.scaled(g1) + data.v2.scaled(g2) == psi
    return DoubleH(HyperplaneSection(data.v1), HyperplaneSection(data.v2), g1, g2)


def half_mld_section(germ: Germ) -> HyperplaneSection:
    """A section that can absorb half the discrepancy minimum.

    From the dichotomy: the single section, or the heavier of the pair
    (ties broken toward the lexicographically least covector). The
    half-scaled section keeps the boundary at or below the full one,
    checked against the oracle.
    """
    outcome = hyperplane_dichotomy(germ)
    if isinstance(outcome, SingleH):
        section, a = outcome.h, outcome.a
    else:
        a = outcome.g1 + outcome.g2
        if outcome.g1 > outcome.g2:
            section = outcome.h1
        elif outcome.g2 > outcome.g1:
            section = outcome.h2
        else:
            section = min(outcome.h1, outcome.h2)
    pushed = psi_of(germ) - section.m.scaled(a / 2)
    assert in_cone(pushed)
    assert mld_oracle_lattice(germ.lattice, pushed)[0] >= 0
    return section


class Complement(NamedTuple):
    """Periodic boundary of level n with its principality witness."""

    n: int
    boundary: tuple[Rational, Rational]
    witness_m: Vec2


def is_standard_coefficient(b: Rational) -> bool:
    """True for 0, 1, and the tower (m-1)/m with m a positive integer."""
    b = Fraction(b)
    if b == 0 or b == 1:
        return True
    if not 0 < b < 1:
        return False
    return (1 / (1 - b)).denominator == 1


def complement_standard(germ: Germ, p: int, q: int) -> Complement:
    """Level-controlled complement for standard boundary coefficients.

    Requires the germ's value to reach p/q. When the best covector
    scale already reaches p/q, level q works directly. Otherwise the
    adapted pair is recombined with integer weights; standardness of
    the coefficients makes the needed quantities integral, and the
    level is q*s with s at most 2q/p.
    """
    if p < 1 or q < 1:
        raise ValueError("target ratio must be positive")
    if not (is_standard_coefficient(germ.b1) and is_standard_coefficient(germ.b2)):
        raise ValueError("boundary coefficients must be standard")
    t = Fraction(p, q)
    a = mld(germ)
    if a < t:
        raise ValueError("the germ's value is below the target ratio")
    psi = psi_of(germ)
    data = case_analysis(germ)

    if data.gamma >= t:
        n = q
        witness = data.v1.scaled(Fraction(p))
        s = 1
    else:
        scale = 1 / data.gamma
        assert scale.denominator == 1, "inverse best scale must be integral for standard coefficients"
        scale = int(scale)
        offset = scale * data.alpha
        assert offset.denominator == 1, "scaled slice offset must be integral for standard coefficients"
        offset = int(offset)
        s = scale - offset
        z1 = q - p * offset
        z2 = scale * p - q
        assert z1 >= 1 and z2 >= 1
        assert z1 + z2 == p * s
        n = s * q
        witness = data.v1.scaled(Fraction(z1)) + data.v2.scaled(Fraction(z2))
    assert 1 <= s and s * p <= 2 * q
    bn = (1 - witness.x1 / n, 1 - witness.x2 / n)
    assert witness.x1.denominator == 1 and witness.x2.denominator == 1
    assert contains(dual(germ.lattice), witness)
    assert germ.b1 <= bn[0] <= 1 and germ.b2 <= bn[1] <= 1
    check = mld_oracle_lattice(germ.lattice, Vec2(witness.x1 / n, witness.x2 / n))[0]
    if check < t:
        raise VerificationFailure("complement boundary drops below the target ratio")
    return Complement(n, bn, witness)


def bounded_complement(germ: Germ, strict_floor: bool = False) -> Complement:
    """Smallest complement with level bounded by twice the inverse value.

    Scans levels n = 1, 2, ... up to ceil(2/a) and, inside each level,
    dual covectors in the box m <= n*psi in lexicographic order; the
    first candidate whose induced boundary keeps the value positive
    wins. Exhaustion would contradict the level bound and raises.

    strict_floor additionally requires the stronger rounding bound
    (boundary at least floor(B) + floor((n+1)*frac(B))/n) and caps the
    level at floor(2/a).
    """
    a = mld(germ)
    if a == 0:
        raise ValueError("bounded complements need a positive value")
    psi = psi_of(germ)
    m_lat = dual(germ.lattice)
    n_max = math.floor(2 / a) if strict_floor else math.ceil(2 / a)
    for n in range(1, n_max + 1):
        for m in points_in_box(m_lat, n * psi.x1, n * psi.x2):
            if m.is_zero():
                continue
            bn = (1 - m.x1 / Fraction(n), 1 - m.x2 / Fraction(n))
            if strict_floor and not _floor_bound_ok(germ, n, bn):
                continue
            if mld_oracle_lattice(germ.lattice, Vec2(m.x1 / n, m.x2 / n))[0] > 0:
                return Complement(n, bn, m)
    raise VerificationFailure("bounded complement search exhausted below the level bound")


def _floor_bound_ok(germ: Germ, n: int, bn: tuple[Rational, Rational]) -> bool:
    for b, c in ((germ.b1, bn[0]), (germ.b2, bn[1])):
        whole = math.floor(b)
        lower = whole + Fraction(math.floor((n + 1) * (b - whole)), n)
        if c < lower:
            return False
    return True
