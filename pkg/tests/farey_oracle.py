"""Slopes on the once-punctured torus and distances in the Farey graph.

An arc with slope p/q crosses the edge of slope r/s of an ideal
triangulation |ps - qr| - 1 times, so the three crossing counts against the
base frame pin the slope down. Farey distances come from continued
fractions, independently of any arc enumeration.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import ceil, floor, gcd

Slope = tuple[int, int]  # (p, q) with q >= 0, primitive; (1, 0) is infinity

EDGE_SLOPES: tuple[Slope, ...] = ((1, 0), (0, 1), (1, 1))


def det(u: Slope, v: Slope) -> int:
    return u[0] * v[1] - u[1] * v[0]


def coords(v: Slope, edges=EDGE_SLOPES) -> tuple[int, ...]:
    return tuple(max(0, abs(det(v, e)) - 1) for e in edges)


def slopes_up_to(weight: int, edges=EDGE_SLOPES, box: int | None = None) -> dict[tuple[int, ...], Slope]:
    """Every slope other than the edges whose crossing counts sum to at most ``weight``."""
    box = box or weight + 2
    out = {}
    for p in range(-box, box + 1):
        for q in range(0, box + 1):
            if gcd(p, q) != 1 or (q == 0 and p != 1) or (p, q) in edges:
                continue
            c = coords((p, q), edges)
            if sum(c) <= weight:
                out.setdefault(c, (p, q))
                if out[c] != (p, q):
                    raise ValueError(f"crossing counts {c} do not determine a slope")
    return out


def farey_adjacent(u: Slope, v: Slope) -> bool:
    return abs(det(u, v)) == 1


def _to_infinity(u: Slope, v: Slope) -> Fraction | None:
    """Image of v under an element of SL(2,Z) sending u to infinity; None if v = u."""
    a, b = u
    # s*a + t*b = 1
    s, t = _bezout(a, b)
    # M = [[s, t], [-b, a]] sends (a, b) to (1, 0)
    p, q = s * v[0] + t * v[1], -b * v[0] + a * v[1]
    if q == 0:
        return None
    return Fraction(p, q)


def _bezout(a: int, b: int) -> tuple[int, int]:
    old_r, r, old_s, s, old_t, t = a, b, 1, 0, 0, 1
    while r:
        k = old_r // r
        old_r, r = r, old_r - k * r
        old_s, s = s, old_s - k * s
        old_t, t = t, old_t - k * t
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    return old_s, old_t


@lru_cache(maxsize=None)
def _from_infinity(x: Fraction) -> int:
    if x.denominator == 1:
        return 1
    # a geodesic from infinity leaves through one of the two integers around x
    lo, hi = floor(x), ceil(x)
    return 1 + min(_from_infinity(1 / (lo - x)), _from_infinity(1 / (hi - x)))


def farey_distance(u: Slope, v: Slope) -> int:
    x = _to_infinity(u, v)
    return 0 if x is None else _from_infinity(x)
