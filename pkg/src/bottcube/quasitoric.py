"""Characteristic matrices of quasitoric manifolds over the n-cube.

Facets are F_0..F_{2n-1} with F_i and F_{n+i} opposite. The refined
characteristic matrix is (E | lambda_star); column i of lambda_star is the
vector of facet F_{n+i}. A cube vertex is a bit-vector ``eps`` with eps[i] = 0
selecting F_i and eps[i] = 1 selecting F_{n+i}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .intmat import (
    Matrix,
    Permutation,
    as_matrix,
    conjugate,
    det,
    identity,
    is_lower_triangular,
    negate,
    principal_minor,
    subsets,
    transpose,
)

Vertex = tuple[int, ...]


@dataclass(frozen=True)
class CharMatrixCube:
    lambda_star: Matrix

    def __post_init__(self):
        object.__setattr__(self, "lambda_star", as_matrix(self.lambda_star))

    @property
    def n(self) -> int:
        return len(self.lambda_star)

    @property
    def full(self) -> tuple[tuple[int, ...], ...]:
        """The n x 2n refined matrix (E | lambda_star)."""
        e = identity(self.n)
        return tuple(e[i] + self.lambda_star[i] for i in range(self.n))

    def column(self, facet: int) -> tuple[int, ...]:
        n = self.n
        if not 0 <= facet < 2 * n:
            raise IndexError(f"facet {facet} out of range for the {n}-cube")
        if facet < n:
            return tuple(int(i == facet) for i in range(n))
        return tuple(row[facet - n] for row in self.lambda_star)

    def to_json(self) -> dict:
        return {"n": self.n, "lambda_star": [list(r) for r in self.lambda_star]}

    @classmethod
    def from_json(cls, obj: dict) -> "CharMatrixCube":
        c = cls(obj["lambda_star"])
        if "n" in obj and obj["n"] != c.n:
            raise ValueError(f"declared n = {obj['n']} but lambda_star is {c.n}x{c.n}")
        return c


@dataclass(frozen=True)
class BottMatrix:
    """Upper triangular integer matrix with -1 on the diagonal."""

    a: Matrix

    def __post_init__(self):
        a = as_matrix(self.a)
        n = len(a)
        for i in range(n):
            if a[i][i] != -1:
                raise ValueError(f"diagonal entry ({i}, {i}) is {a[i][i]}, expected -1")
            for j in range(i):
                if a[i][j] != 0:
                    raise ValueError(f"entry ({i}, {j}) below the diagonal is nonzero")
        object.__setattr__(self, "a", a)

    @property
    def n(self) -> int:
        return len(self.a)

    @classmethod
    def from_entries(cls, n: int, entries: dict[tuple[int, int], int]) -> "BottMatrix":
        rows = [[-1 if i == j else 0 for j in range(n)] for i in range(n)]
        for (i, j), x in entries.items():
            if not i < j:
                raise ValueError(f"({i}, {j}) is not above the diagonal")
            rows[i][j] = x
        return cls(rows)

    def as_char(self) -> CharMatrixCube:
        return CharMatrixCube(transpose(self.a))

    def to_json(self) -> dict:
        return {"n": self.n, "a": [list(r) for r in self.a]}

    @classmethod
    def from_json(cls, obj: dict) -> "BottMatrix":
        b = cls(obj["a"])
        if "n" in obj and obj["n"] != b.n:
            raise ValueError(f"declared n = {obj['n']} but a is {b.n}x{b.n}")
        return b


def hirzebruch(m: int) -> BottMatrix:
    return BottMatrix(((-1, m), (0, -1)))


def vertices(n: int) -> Iterator[Vertex]:
    return itertools.product((0, 1), repeat=n)


def _lambda(c) -> Matrix:
    return c.lambda_star if isinstance(c, CharMatrixCube) else as_matrix(c)


def is_valid_characteristic(lam) -> bool:
    """Every principal minor (all 2^n index sets) is +-1."""
    lam = _lambda(lam)
    return all(principal_minor(lam, s) in (1, -1) for s in subsets(len(lam)))


def vertex_columns(c: CharMatrixCube, eps: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    if len(eps) != c.n:
        raise ValueError(f"vertex has length {len(eps)}, expected {c.n}")
    return tuple(c.column(i + c.n * e) for i, e in enumerate(eps))


def vertex_matrix(c: CharMatrixCube, eps: Sequence[int]) -> Matrix:
    """Matrix whose columns are the facet vectors at the vertex."""
    return transpose(vertex_columns(c, eps))


def inward_normals(n: int, eps: Sequence[int]) -> Matrix:
    # a_i = e_i on F_i, a_{n+i} = -e_i on F_{n+i}
    return tuple(tuple((1 - 2 * eps[j]) * int(i == j) for j in range(n)) for i in range(n))


def sign_of_fixed_point(c: CharMatrixCube, eps: Sequence[int]) -> int:
    """sign(det(facet vectors) * det(inward normals)) at the vertex."""
    s = det(vertex_matrix(c, eps)) * det(inward_normals(c.n, eps))
    if s not in (1, -1):
        raise ValueError("vertex is singular; matrix is not a valid characteristic matrix")
    return s


def fixed_point_signs(c: CharMatrixCube) -> tuple[int, ...]:
    return tuple(sign_of_fixed_point(c, eps) for eps in vertices(c.n))


def is_bott_tower(c) -> bool:
    """All principal minors of -lambda_star equal 1."""
    neg = negate(_lambda(c))
    return all(principal_minor(neg, s) == 1 for s in subsets(len(neg)))


def _bott_witness(lam: Matrix) -> tuple[BottMatrix, Permutation] | None:
    n = len(lam)
    if any(lam[i][i] != -1 for i in range(n)):
        return None
    for sigma in itertools.permutations(range(n)):
        c = conjugate(lam, sigma)
        if is_lower_triangular(c):
            return BottMatrix(transpose(c)), sigma
    return None


def bott_matrix_from(c: CharMatrixCube) -> tuple[BottMatrix, Permutation]:
    """Return (A, sigma) with conjugate(lambda_star, sigma) == A^t.

    sigma is the lexicographically smallest witness.
    """
    if not is_bott_tower(c):
        raise ValueError("characteristic matrix is not a Bott tower")
    found = _bott_witness(c.lambda_star)
    if found is None:
        raise AssertionError(f"Bott criterion holds but no triangular conjugate of {c.lambda_star}")
    return found


@dataclass(frozen=True)
class OmniWitness:
    bott: BottMatrix
    row_flips: tuple[int, ...]
    col_flips: tuple[int, ...]
    sigma: Permutation

    def flipped(self, lam: Matrix) -> Matrix:
        return flip_signs(lam, self.row_flips, self.col_flips)

    def to_json(self) -> dict:
        return {"a": [list(r) for r in self.bott.a], "row_flips": list(self.row_flips),
                "col_flips": list(self.col_flips), "sigma": list(self.sigma)}


def flip_signs(lam: Matrix, row_flips: Sequence[int], col_flips: Sequence[int]) -> Matrix:
    """Multiply row i by -1 when row_flips[i] and column j by -1 when col_flips[j]."""
    return tuple(
        tuple(x * (-1) ** (row_flips[i] + col_flips[j]) for j, x in enumerate(row))
        for i, row in enumerate(lam)
    )


def bott_up_to_omniorientation(c: CharMatrixCube) -> OmniWitness | None:
    """Search row/column sign flips and conjugations for a Bott transpose.

    Flipping row i re-refines a sign change of lambda_i; flipping column j is a
    sign change of lambda_{n+j}. Flip patterns are scanned in lexicographic
    order, so an unflipped witness is preferred.
    """
    n = c.n
    for rows in itertools.product((0, 1), repeat=n):
        for cols in itertools.product((0, 1), repeat=n):
            lam = flip_signs(c.lambda_star, rows, cols)
            found = _bott_witness(lam)
            if found is not None:
                return OmniWitness(found[0], rows, cols, found[1])
    return None


def restrict_to_facet(c: CharMatrixCube, i: int, side: int) -> CharMatrixCube:
    """Characteristic matrix of the characteristic submanifold over F_i (side 0) or F_{n+i} (side 1).

    The facet's vector l is quotiented out. The remaining near facets F_j,
    j != i, meet the facet in a vertex, so their images form the refined basis
    and the far-facet columns are re-expressed in it. Because l[i] = +-1 the
    coordinates are x_j - (x_i / l_i) l_j, exact over Z.
    """
    n = c.n
    if not 0 <= i < n or side not in (0, 1):
        raise ValueError(f"no facet ({i}, side {side}) on the {n}-cube")
    if n == 1:
        raise ValueError("cannot restrict a rank-1 matrix")
    lam = c.lambda_star
    keep = [j for j in range(n) if j != i]
    if side == 0:
        rows = [[lam[r][k] for k in keep] for r in keep]
    else:
        ell = [lam[r][i] for r in range(n)]
        assert ell[i] in (1, -1), "facet vector is degenerate"
        rows = []
        for r in keep:
            rows.append([lam[r][k] - (lam[i][k] * ell[i]) * ell[r] for k in keep])
    if n - 1 == 1:
        rows = [[-1]]
    out = CharMatrixCube(rows)
    assert is_valid_characteristic(out), f"restriction of {lam} to ({i}, {side}) is singular"
    return out


def enumerate_char_matrices(n: int, bound: int = None, entry_min: int = None,
                            entry_max: int = None) -> Iterator[CharMatrixCube]:
    """All valid lambda_star with entries in [entry_min, entry_max], lexicographic (row-major).

    ``bound`` is shorthand for the symmetric range [-bound, bound]. Diagonal
    entries are +-1 by the 1x1 minors, so only those values are tried there.
    """
    if bound is not None:
        entry_min, entry_max = -bound, bound
    if entry_min is None or entry_max is None:
        raise ValueError("give bound or both entry_min and entry_max")
    full = range(entry_min, entry_max + 1)
    diag = [x for x in full if x in (-1, 1)]
    ranges = [diag if r == col else full for r in range(n) for col in range(n)]
    for flat in itertools.product(*ranges):
        lam = tuple(tuple(flat[r * n:(r + 1) * n]) for r in range(n))
        if is_valid_characteristic(lam):
            yield CharMatrixCube(lam)


def enumerate_bott_matrices(n: int, values: Sequence[int]) -> Iterator[BottMatrix]:
    """All Bott matrices with above-diagonal entries drawn from ``values``."""
    pos = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for combo in itertools.product(values, repeat=len(pos)):
        yield BottMatrix.from_entries(n, dict(zip(pos, combo)))
