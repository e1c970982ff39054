"""Exact integer matrices: determinants, principal minors, permutation conjugation.

Matrices are tuples of row tuples of Python ints. Permutations are tuples of
0-based images, ``sigma[i] = sigma(i)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Matrix = tuple[tuple[int, ...], ...]
Permutation = tuple[int, ...]

UPPER_TRIANGULAR = "UpperTriangular"
CYCLIC = "Cyclic"
NOT_APPLICABLE = "NotApplicable"


def as_matrix(rows: Iterable[Iterable[int]]) -> Matrix:
    """Validate and freeze a square integer matrix."""
    m = tuple(tuple(_as_int(x) for x in row) for row in rows)
    n = len(m)
    if n == 0:
        raise ValueError("empty matrix")
    for row in m:
        if len(row) != n:
            raise ValueError(f"matrix is not square: {n} rows, a row of length {len(row)}")
    return m


def _as_int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        try:
            if int(x) == x and not isinstance(x, (float, bool, str)):
                return int(x)
        except (TypeError, ValueError):
            pass
        raise ValueError(f"matrix entries must be integers, got {x!r}")
    return x


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def negate(a: Matrix) -> Matrix:
    return tuple(tuple(-x for x in row) for row in a)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(a: Matrix, v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def submatrix(a: Matrix, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
    return tuple(tuple(a[i][j] for j in cols) for i in rows)


def det(a: Matrix) -> int:
    """Exact determinant.

    Closed forms up to 3x3, Bareiss fraction-free elimination above that.
    """
    n = len(a)
    if n == 0:
        return 1
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    if n == 3:
        (p, q, r), (s, t, u), (v, w, x) = a
        return p * (t * x - u * w) - q * (s * x - u * v) + r * (s * w - t * v)
    return _det_bareiss(a)


def _det_bareiss(a: Matrix) -> int:
    m = [list(row) for row in a]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact division is guaranteed by Sylvester's identity
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def principal_minor(a: Matrix, subset: Iterable[int]) -> int:
    """Determinant of the submatrix on rows and columns ``subset`` (0-based).

    The empty minor is 1.
    """
    idx = sorted(set(subset))
    n = len(a)
    for i in idx:
        if not 0 <= i < n:
            raise IndexError(f"index {i} out of range for a {n}x{n} matrix")
    return det(submatrix(a, idx, idx))


def subsets(n: int, proper: bool = False):
    """All index subsets of range(n) as tuples, ordered by size then lexicographically."""
    top = n - 1 if proper else n
    for k in range(top + 1):
        yield from itertools.combinations(range(n), k)


def principal_minors(a: Matrix, proper: bool = False) -> dict[tuple[int, ...], int]:
    return {s: principal_minor(a, s) for s in subsets(len(a), proper)}


def check_permutation(sigma: Sequence[int], n: int | None = None) -> Permutation:
    sigma = tuple(int(i) for i in sigma)
    if sorted(sigma) != list(range(len(sigma))):
        raise ValueError(f"not a permutation of 0..{len(sigma) - 1}: {sigma}")
    if n is not None and len(sigma) != n:
        raise ValueError(f"permutation of size {len(sigma)} does not match matrix size {n}")
    return sigma


def inverse_permutation(sigma: Permutation) -> Permutation:
    inv = [0] * len(sigma)
    for i, s in enumerate(sigma):
        inv[s] = i
    return tuple(inv)


def permutation_matrix(sigma: Permutation) -> Matrix:
    """Units in positions (sigma(i), i)."""
    n = len(sigma)
    return tuple(tuple(int(sigma[j] == i) for j in range(n)) for i in range(n))


def conjugate(a: Matrix, sigma: Sequence[int]) -> Matrix:
    """Return P(sigma)^-1 A P(sigma), i.e. the matrix with entries A[sigma(i)][sigma(j)]."""
    sigma = check_permutation(sigma, len(a))
    return tuple(tuple(a[si][sj] for sj in sigma) for si in sigma)


def is_upper_triangular(a: Matrix) -> bool:
    return all(a[i][j] == 0 for i in range(len(a)) for j in range(i))


def is_lower_triangular(a: Matrix) -> bool:
    return all(a[i][j] == 0 for i in range(len(a)) for j in range(i + 1, len(a)))


def is_unipotent_upper(a: Matrix) -> bool:
    return is_upper_triangular(a) and all(a[i][i] == 1 for i in range(len(a)))


def cyclic_form(b: Sequence[int]) -> Matrix:
    """Unit diagonal, b[i] at (i, i+1) for i < n-1 and b[n-1] at (n-1, 0)."""
    n = len(b)
    if n < 2:
        raise ValueError("cyclic form needs n >= 2")
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        rows[i][i + 1] = b[i]
    rows[n - 1][0] = b[n - 1]
    return as_matrix(rows)


def cyclic_entries(a: Matrix) -> tuple[int, ...] | None:
    """The b-sequence if ``a`` has exactly the cyclic shape with all b_i nonzero."""
    n = len(a)
    if n < 2:
        return None
    b = tuple(a[i][i + 1] for i in range(n - 1)) + (a[n - 1][0],)
    if any(x == 0 for x in b):
        return None
    if a != cyclic_form(b):
        return None
    return b


@dataclass(frozen=True)
class MinorNormalForm:
    tag: str
    sigma: Permutation | None = None
    b: tuple[int, ...] | None = None

    def to_json(self) -> dict:
        return {"tag": self.tag, "sigma": None if self.sigma is None else list(self.sigma),
                "b": None if self.b is None else list(self.b)}


def minor_normal_form(a: Matrix) -> MinorNormalForm:
    """Classify a matrix whose proper principal minors are all 1.

    Returns NotApplicable when the hypothesis fails. Otherwise the matrix is
    permutation-conjugate to a unipotent upper triangular matrix (det 1) or to
    the cyclic form with nonzero b_i (det != 1). The witness is the
    lexicographically smallest permutation found by exhaustive search.
    """
    n = len(a)
    if any(m != 1 for m in principal_minors(a, proper=True).values()):
        return MinorNormalForm(NOT_APPLICABLE)
    d = det(a)
    if n == 1 and d != 1:
        # no cyclic shape exists for a 1x1 matrix
        return MinorNormalForm(NOT_APPLICABLE)
    for sigma in itertools.permutations(range(n)):
        c = conjugate(a, sigma)
        if d == 1:
            if is_unipotent_upper(c):
                return MinorNormalForm(UPPER_TRIANGULAR, sigma)
        else:
            b = cyclic_entries(c)
            if b is not None:
                return MinorNormalForm(CYCLIC, sigma, b)
    raise AssertionError(f"no permutation witness for {a}")


def verify_normal_form(a: Matrix, form: MinorNormalForm) -> bool:
    """Replay the witness: the conjugated matrix must literally have the claimed shape."""
    if form.tag == NOT_APPLICABLE:
        return form.sigma is None
    c = conjugate(a, form.sigma)
    if form.tag == UPPER_TRIANGULAR:
        return is_unipotent_upper(c)
    return form.b is not None and all(x != 0 for x in form.b) and c == cyclic_form(form.b)


def solve(a: Matrix, rhs: Sequence[int]) -> tuple[int, ...]:
    """Solve A x = rhs exactly; raise ValueError when singular or non-integral."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular system")
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    out = []
    for r in range(n):
        x = m[r][n]
        if x.denominator != 1:
            raise ValueError("system has no integer solution")
        out.append(int(x))
    return tuple(out)


def adjugate(a: Matrix) -> Matrix:
    n = len(a)
    if n == 1:
        return ((1,),)
    cof = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            rows = [r for r in range(n) if r != i]
            cols = [c for c in range(n) if c != j]
            cof[i][j] = (-1) ** (i + j) * det(submatrix(a, rows, cols))
    return transpose(tuple(tuple(r) for r in cof))


def unimodular_inverse(a: Matrix) -> Matrix:
    """Exact inverse of a matrix with determinant +-1."""
    d = det(a)
    if d not in (1, -1):
        raise ValueError(f"matrix is not unimodular (det = {d})")
    return tuple(tuple(d * x for x in row) for row in adjugate(a))


def rank(rows: Sequence[Sequence[int]], modulus: int = 0) -> int:
    """Rank over Q (modulus 0) or over Z/p."""
    if modulus:
        m = [[x % modulus for x in row] for row in rows]
    else:
        m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        if modulus:
            inv = pow(m[r][col], -1, modulus)
            m[r] = [(x * inv) % modulus for x in m[r]]
        else:
            p = m[r][col]
            m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                if modulus:
                    m[i] = [(x - f * y) % modulus for x, y in zip(m[i], m[r])]
                else:
                    m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
    return r
