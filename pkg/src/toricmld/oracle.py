"""Brute-force ground truth for the discrepancy computations.

Everything here is recomputed from first principles: quotient
representatives by direct enumeration, pairings written out inline,
minima by exhaustive scan. Only the plane vector type is shared with
the rest of the package, so an engine bug cannot vouch for itself.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import TYPE_CHECKING

from .lattices import Lattice, Rational, Vec2

if TYPE_CHECKING:  # type-only; keeps the oracle import-independent
    from .germs import Germ


def _wrap(x: Fraction) -> Fraction:
    """Integer shift of x into (0, 1]."""
    n, d = x.numerator, x.denominator
    rem = n % d
    return Fraction(rem if rem else d, d)


def _cyclic_data(lat: Lattice) -> tuple[int, int] | None:
    """Read (r, w) off a basis of the shape ((1/r, w/r), (0, 1))."""
    if lat.rank != 2:
        return None
    r1, r2 = lat.basis
    if r2 != Vec2(Fraction(0), Fraction(1)):
        return None
    if r1.x1.numerator != 1:
        return None
    r = r1.x1.denominator
    w = r1.x2 * r
    if w.denominator != 1:
        return None
    return r, int(w)


def _box_representatives(lat: Lattice) -> list[Vec2]:
    """Quotient representatives in (0, 1]^2 by direct enumeration."""
    if lat.rank != 2:
        raise ValueError("representatives need a rank-2 lattice")
    cyc = _cyclic_data(lat)
    if cyc is not None:
        r, w = cyc
        pts = []
        for k in range(r):
            u = k % r
            v = (k * w) % r
            pts.append(Vec2(Fraction(u if u else r, r), Fraction(v if v else r, r)))
        reps = sorted(set(pts))
    else:
        r1, r2 = lat.basis
        n1 = math.lcm(r1.x1.denominator, r1.x2.denominator)
        n2 = math.lcm(r2.x1.denominator, r2.x2.denominator)
        seen: set[Vec2] = set()
        for i in range(n1):
            for j in range(n2):
                p1 = i * r1.x1 + j * r2.x1
                p2 = i * r1.x2 + j * r2.x2
                seen.add(Vec2(_wrap(p1), _wrap(p2)))
        reps = sorted(seen)
    det = lat.basis[0].x1 * lat.basis[1].x2 - lat.basis[0].x2 * lat.basis[1].x1
    order = 1 / abs(det)
    assert order.denominator == 1 and len(reps) == int(order)
    return reps


def mld_oracle_lattice(lat: Lattice, psi: Vec2) -> tuple[Rational, list[Vec2]]:
    """Minimum of the pairing over open-quadrant points, with all minimizers.

    The minimum over the whole open quadrant equals the minimum over the
    (0,1]^2 representatives whenever psi has no negative coordinate;
    that assumption is checked here.
    """
    if psi.x1 < 0 or psi.x2 < 0:
        raise ValueError("oracle needs a componentwise nonnegative psi")
    reps = _box_representatives(lat)
    vals = [(m.x1 * psi.x1 + m.x2 * psi.x2, m) for m in reps]
    best = min(v for v, _ in vals)
    return best, sorted(p for v, p in vals if v == best)


def mld_oracle(germ: "Germ") -> tuple[Rational, list[Vec2]]:
    """Exhaustive minimal log discrepancy of a germ."""
    psi = Vec2(1 - germ.b1, 1 - germ.b2)
    return mld_oracle_lattice(germ.lattice, psi)


def tlc_oracle(lat: Lattice, psi: Vec2, t: Rational) -> bool:
    """True iff no open-quadrant subgroup point pairs below t with psi."""
    if t <= 0:
        raise ValueError("threshold must be positive")
    value, _ = mld_oracle_lattice(lat, psi)
    return value >= t


def lawrence_oracle(lat: Lattice, p: int, q: int) -> bool:
    """True iff the subgroup avoids the open simplex x,y > 0, x+y < p/q."""
    if p < 1 or q < 1:
        raise ValueError("simplex size must be a positive ratio of integers")
    return tlc_oracle(lat, Vec2(Fraction(1), Fraction(1)), Fraction(p, q))
