"""Newton polygons of polynomials at a prime.

The polygon of ``f = sum b_i x^i`` at a prime is the lower convex hull of the
points ``(i, v(b_i))``.  A segment of slope λ and horizontal length ℓ accounts
for ℓ roots of valuation -λ.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence


@dataclass(frozen=True)
class NewtonPolygon:
    segments: tuple[tuple[Fraction, int], ...]  # (slope, horizontal length)
    vertices: tuple[tuple[int, Fraction], ...]

    @property
    def slopes(self) -> list[Fraction]:
        return [s for s, _ in self.segments]

    def root_valuations(self) -> list[Fraction]:
        """Multiset of root valuations, sorted ascending."""
        out = []
        for slope, length in self.segments:
            out.extend([-slope] * length)
        return sorted(out)

    def has_positive_slope(self) -> bool:
        return any(s > 0 for s, _ in self.segments)

    @property
    def length(self) -> int:
        return sum(l for _, l in self.segments)


def lower_hull(points: Sequence[tuple[int, Fraction]]) -> list[tuple[int, Fraction]]:
    pts = sorted(points)
    hull: list[tuple[int, Fraction]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] if it lies on or above the segment hull[-2] -> pt
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def newton_polygon_from_valuations(vals: Sequence[Fraction | int | None]) -> NewtonPolygon:
    """Polygon from ``vals[i] = v(b_i)``; ``None`` marks a zero coefficient."""
    if not vals or vals[-1] is None:
        raise ValueError("leading coefficient must be nonzero")
    if vals[0] is None:
        raise ValueError("constant coefficient is zero: 0 is a root")
    pts = [(i, Fraction(v)) for i, v in enumerate(vals) if v is not None]
    hull = lower_hull(pts)
    segs = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        segs.append((Fraction(y2 - y1) / (x2 - x1), x2 - x1))
    return NewtonPolygon(tuple(segs), tuple(hull))


def newton_polygon(coeffs: Sequence, valuation: Callable) -> NewtonPolygon:
    """Polygon of a polynomial with the given coefficients under ``valuation``.

    ``valuation`` is applied to each nonzero coefficient, so it can be a
    p-adic valuation on Q or a prime-ideal valuation on a number field.

    >>> from algden.arith import vp
    >>> newton_polygon([1, -4, 5], lambda c: vp(c, 5)).root_valuations()
    [Fraction(-1, 1), Fraction(0, 1)]
    """
    vals = []
    for c in coeffs:
        zero = c.is_zero() if hasattr(c, "is_zero") else c == 0
        vals.append(None if zero else valuation(c))
    return newton_polygon_from_valuations(vals)
