"""Semifree circle subgroups with isolated fixed points.

The weight criterion works vertex by vertex on a characteristic matrix; the
factorization criteria work on D = (E - A)/2 for a Bott matrix A.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .intmat import Matrix, identity, is_unipotent_upper, matmul, matvec, unimodular_inverse
from .quasitoric import BottMatrix, CharMatrixCube, vertex_matrix, vertices


def is_primitive(nu: Sequence[int]) -> bool:
    g = 0
    for x in nu:
        g = gcd(g, x)
    return g == 1


def weights_at_vertex(c: CharMatrixCube, nu: Sequence[int], eps: Sequence[int]) -> tuple[int, ...]:
    """Coefficients k with nu = sum_i k_i * (facet vector i at the vertex)."""
    if len(nu) != c.n:
        raise ValueError(f"circle vector has length {len(nu)}, expected {c.n}")
    return matvec(unimodular_inverse(vertex_matrix(c, eps)), nu)


def _vertex_inverses(c: CharMatrixCube) -> list[Matrix]:
    return [unimodular_inverse(vertex_matrix(c, eps)) for eps in vertices(c.n)]


def _semifree_under(invs: list[Matrix], nu: Sequence[int]) -> bool:
    for inv in invs:
        for row in inv:
            if abs(sum(x * y for x, y in zip(row, nu))) != 1:
                return False
    return True


def is_semifree(c: CharMatrixCube, nu: Sequence[int]) -> bool:
    """All weights at all 2^n vertices are +-1."""
    if not is_primitive(nu):
        raise ValueError(f"circle vector {tuple(nu)} is not primitive")
    return _semifree_under(_vertex_inverses(c), nu)


def enumerate_semifree_vectors(c: CharMatrixCube) -> list[tuple[int, ...]]:
    """Every semifree nu; at the vertex F_0..F_{n-1} the weights are nu itself,
    so the candidates are exactly {+-1}^n. Both nu and -nu are listed."""
    invs = _vertex_inverses(c)
    return [nu for nu in itertools.product((-1, 1), repeat=c.n) if _semifree_under(invs, nu)]


@dataclass(frozen=True)
class Factorization:
    """steps[k] is None (C_k = E) or (i_k, c_k): column k of C_k is e_k + c_k e_{i_k}."""

    steps: tuple

    @property
    def n(self) -> int:
        return len(self.steps)

    def factors(self) -> list[Matrix]:
        out = []
        for k, step in enumerate(self.steps):
            rows = [list(r) for r in identity(self.n)]
            if step is not None:
                i, c = step
                rows[i][k] = c
            out.append(tuple(tuple(r) for r in rows))
        return out

    def product(self) -> Matrix:
        d = identity(self.n)
        for f in self.factors():
            d = matmul(d, f)
        return d

    def to_json(self) -> list:
        return [None if s is None else list(s) for s in self.steps]


def _factorize(d: Matrix, allowed) -> Factorization | None:
    if not is_unipotent_upper(d):
        raise ValueError("input must be unipotent upper triangular")
    n = len(d)
    steps = []
    for k in range(n):
        v = [d[r][k] - int(r == k) for r in range(n)]
        nz = [r for r in range(n) if v[r]]
        if not nz:
            steps.append(None)
            continue
        # col_i has a 1 in row i and zeros below, so the only candidate is
        # the last nonzero row of v, with multiplier v[i]
        i = nz[-1]
        c = v[i]
        if i >= k or any(v[r] != c * d[r][i] for r in range(n)) or not allowed(c):
            return None
        steps.append((i, c))
    fac = Factorization(tuple(steps))
    assert fac.product() == d, f"factorization replay failed for {d}"
    return fac


def factorize_unit(d: Matrix) -> Factorization | None:
    """D = C_1 ... C_n with every off-diagonal factor entry equal to 1."""
    return _factorize(d, lambda c: c == 1)


def factorize_signed(d: Matrix) -> Factorization | None:
    """Sign-relaxed variant: factor entries in {+1, -1}."""
    return _factorize(d, lambda c: c in (1, -1))


def factorize_integer(d: Matrix) -> Factorization | None:
    """Factor entries any nonzero integer."""
    return _factorize(d, lambda c: c != 0)


def half_e_minus_a(a: BottMatrix) -> Matrix | None:
    """(E - A)/2, or None when some entry of E - A is odd."""
    n = a.n
    e = identity(n)
    diff = [[e[i][j] - a.a[i][j] for j in range(n)] for i in range(n)]
    if any(x % 2 for row in diff for x in row):
        return None
    return tuple(tuple(x // 2 for x in row) for row in diff)


def semifree_by_factorization(a: BottMatrix) -> bool:
    d = half_e_minus_a(a)
    return d is not None and factorize_unit(d) is not None


def semifree_by_signed_factorization(a: BottMatrix) -> bool:
    d = half_e_minus_a(a)
    return d is not None and factorize_signed(d) is not None


def factorization_report(a: BottMatrix) -> dict:
    d = half_e_minus_a(a)
    strict = relaxed = integer = None
    if d is not None:
        strict, relaxed, integer = factorize_unit(d), factorize_signed(d), factorize_integer(d)
    return {
        "strict_factorization": strict is not None,
        "relaxed_factorization": relaxed is not None,
        "integer_factorization": integer is not None,
        "strict_steps": None if strict is None else strict.to_json(),
    }
