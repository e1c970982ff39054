"""Complete smooth fans in the plane and their semifree circle subgroups."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterator, Sequence

Ray = tuple[int, int]

E1: Ray = (1, 0)
E2: Ray = (0, 1)

# (lambda_3, lambda_4) of the semifree four-ray fans once nu = (1, 1)
NORMAL_PAIRS = (
    ((-1, 0), (0, -1)),
    ((-1, 0), (-2, -1)),
    ((-1, -2), (0, -1)),
)


def det2(a: Ray, b: Ray) -> int:
    return a[0] * b[1] - a[1] * b[0]


@dataclass(frozen=True)
class Fan2D:
    rays: tuple

    def __init__(self, rays: Sequence[Sequence[int]]):
        object.__setattr__(self, "rays", tuple((int(r[0]), int(r[1])) for r in rays))

    def __len__(self) -> int:
        return len(self.rays)

    def cones(self) -> Iterator[tuple[Ray, Ray]]:
        m = len(self.rays)
        for i in range(m):
            yield self.rays[i], self.rays[(i + 1) % m]

    def to_json(self) -> dict:
        return {"rays": [list(r) for r in self.rays]}

    @classmethod
    def from_json(cls, obj: dict) -> "Fan2D":
        return cls(obj["rays"])


def _in_half_open_cone(d: Ray, a: Ray, b: Ray) -> bool:
    # for det(a, b) > 0: d lies in the sector from a (inclusive) to b (exclusive)
    return det2(a, d) >= 0 and det2(d, b) > 0


def winding_number(f: Fan2D) -> int:
    """Number of cones whose half-open sector contains the direction (1, 0).

    Valid when every consecutive determinant is positive.
    """
    return sum(_in_half_open_cone(E1, a, b) for a, b in f.cones())


def is_complete_smooth(f: Fan2D) -> bool:
    if len(f.rays) < 3:
        return False
    if len(set(f.rays)) != len(f.rays):
        return False
    if any(gcd(*r) != 1 for r in f.rays):
        return False
    if any(det2(a, b) != 1 for a, b in f.cones()):
        return False
    return winding_number(f) == 1


def cone_weights(nu: Ray, a: Ray, b: Ray) -> tuple[int, int]:
    """(k1, k2) with nu = k1 a + k2 b for a unimodular cone."""
    d = det2(a, b)
    k1 = det2(nu, b) * d
    k2 = det2(a, nu) * d
    return k1, k2


def semifree_vectors(f: Fan2D) -> list[Ray]:
    """Circle vectors with weights +-1 in every cone; candidates are +-l1 +-l2."""
    if not is_complete_smooth(f):
        raise ValueError("fan is not complete and smooth")
    l1, l2 = f.rays[0], f.rays[1]
    out = []
    for s1 in (1, -1):
        for s2 in (1, -1):
            nu = (s1 * l1[0] + s2 * l2[0], s1 * l1[1] + s2 * l2[1])
            if all(all(abs(k) == 1 for k in cone_weights(nu, a, b)) for a, b in f.cones()):
                out.append(nu)
    return sorted(out)


def _angle_key(v: Ray):
    """Sort key for the counterclockwise angle of v in [0, 2*pi) from (1, 0)."""
    x, y = v
    half = 0 if (y > 0 or (y == 0 and x > 0)) else 1
    return half, v


def _ccw_before(a: Ray, b: Ray) -> bool:
    """Angle of a is strictly smaller than angle of b (both in [0, 2*pi))."""
    ha, hb = _angle_key(a)[0], _angle_key(b)[0]
    if ha != hb:
        return ha < hb
    return det2(a, b) > 0


def _next_rays(a: Ray, bound: int) -> list[Ray]:
    """All r with det(a, r) = 1 and coordinates within bound, counterclockwise after a."""
    x, y = a
    # particular solution of x*r1 - y*r0 = 1 via extended Euclid
    g, s, t = _ext_gcd(x, -y)
    assert g == 1
    r0 = (t, s)  # x*s + (-y)*t = 1 -> det(a, (t, s)) = x*s - y*t = 1
    out = []
    for k in range(-4 * bound - 4, 4 * bound + 5):
        r = (r0[0] + k * x, r0[1] + k * y)
        if abs(r[0]) <= bound and abs(r[1]) <= bound:
            out.append(r)
    return out


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), (1 if a >= 0 else -1), 0)
    g, s, t = _ext_gcd(b, a % b)
    return g, t, s - (a // b) * t


def enumerate_fans(max_rays: int, coord_bound: int) -> Iterator[Fan2D]:
    """All complete smooth fans with lambda_1 = (1, 0), lambda_2 = (0, 1),
    at most ``max_rays`` rays and coordinates within ``coord_bound``.

    Rays are added in strictly increasing counterclockwise angle, so the
    winding number is one exactly when the last cone closes back to (1, 0).
    Output order is depth-first with candidate rays sorted by angle.
    """
    if max_rays < 3 or coord_bound < 1:
        raise ValueError("need max_rays >= 3 and coord_bound >= 1")

    def extend(rays: list[Ray]) -> Iterator[Fan2D]:
        last = rays[-1]
        cands = [r for r in _next_rays(last, coord_bound) if _ccw_before(last, r)]
        cands.sort(key=_angle_key)
        for r in cands:
            new = rays + [r]
            if det2(r, E1) == 1 and len(new) >= 3:
                f = Fan2D(new)
                if is_complete_smooth(f):
                    yield f
            if len(new) < max_rays:
                yield from extend(new)

    yield from extend([E1, E2])


def normalize_at(f: Fan2D, nu: Ray) -> tuple[Fan2D, Ray] | None:
    """Re-index so nu lies in the first cone and apply the lattice map sending
    that cone to ((1, 0), (0, 1)). Returns the normalized fan and image of nu."""
    m = len(f.rays)
    for i in range(m):
        a, b = f.rays[i], f.rays[(i + 1) % m]
        k1, k2 = cone_weights(nu, a, b)
        if k1 > 0 and k2 > 0:
            # g maps a -> e1, b -> e2; g is the inverse of the matrix (a | b)
            def g(v: Ray) -> Ray:
                return cone_weights(v, a, b)
            rays = [g(f.rays[(i + j) % m]) for j in range(m)]
            return Fan2D(rays), g(nu)
    return None
