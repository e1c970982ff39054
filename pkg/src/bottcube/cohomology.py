"""Graded cohomology rings on the square-free monomial basis.

A ring has n degree-2 generators u_0..u_{n-1} and, for each k, a rule
rewriting u_k^2 as a combination of degree-4 monomials u_i u_j. Elements are
dicts mapping frozenset index sets I to coefficients of u_I. Coefficients are
integers (``modulus=0``) or residues mod 2 (``modulus=2``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Iterable, Sequence

from .intmat import as_matrix, det, rank
from .quasitoric import BottMatrix, CharMatrixCube, is_valid_characteristic

Monomial = frozenset
Element = dict


def _norm(elem: dict, modulus: int) -> dict:
    out = {}
    for k, v in elem.items():
        if modulus:
            v %= modulus
        if v:
            out[frozenset(k)] = v
    return out


def element(terms: Iterable[tuple[Iterable[int], int]], modulus: int = 0) -> dict:
    acc: dict = {}
    for idx, c in terms:
        key = frozenset(idx)
        acc[key] = acc.get(key, 0) + c
    return _norm(acc, modulus)


def generator(i: int) -> dict:
    return {frozenset((i,)): 1}


def linear(coeffs: Sequence[int], modulus: int = 0) -> dict:
    """The degree-2 element sum coeffs[i] u_i."""
    return _norm({frozenset((i,)): c for i, c in enumerate(coeffs)}, modulus)


@dataclass(frozen=True)
class GradedRing:
    n: int
    square_rules: tuple  # square_rules[k] = {frozenset({i, j}): coeff}
    modulus: int = 0
    killed: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.modulus not in (0, 2):
            raise ValueError("coefficients must be Z (modulus 0) or Z/2 (modulus 2)")
        rules = tuple(_norm(dict(r), self.modulus) for r in self.square_rules)
        if len(rules) != self.n:
            raise ValueError(f"expected {self.n} square rules, got {len(rules)}")
        for k, r in enumerate(rules):
            for mono in r:
                if len(mono) != 2 or not all(0 <= i < self.n for i in mono):
                    raise ValueError(f"rule for u_{k}^2 has a term {sorted(mono)} that is not a degree-4 square-free monomial")
        object.__setattr__(self, "square_rules", rules)
        object.__setattr__(self, "killed", frozenset(frozenset(m) for m in self.killed))

    @property
    def coeffs(self) -> str:
        return "Z/2" if self.modulus == 2 else "Z"

    def is_mixed(self) -> bool:
        """Every square rule only uses monomials u_j u_k with j != k."""
        return all(k in mono for k, r in enumerate(self.square_rules) for mono in r)

    def mod2(self) -> "GradedRing":
        return GradedRing(self.n, self.square_rules, 2, self.killed)

    @cached_property
    def _table(self) -> dict:
        """Normal form of u_I * u_k for every k in I, |I| < n.

        Writing y_k = u_I u_k, the rule for u_k^2 gives
        y_k = sum_{j not in I} c_kj u_{I+j} + sum_{j in I, j != k} c_kj y_j,
        a |I| x |I| linear system solved exactly per I.
        """
        if not self.is_mixed():
            raise NotImplementedError("multiplication needs square rules of the form u_k^2 = sum c_kj u_j u_k")
        coef = [[0] * self.n for _ in range(self.n)]
        for k, r in enumerate(self.square_rules):
            for mono, c in r.items():
                (j,) = mono - {k}
                coef[k][j] = c
        table = {}
        for size in range(1, self.n):
            for idx in itertools.combinations(range(self.n), size):
                table.update(self._solve_block(idx, coef))
        return table

    def _solve_block(self, idx: tuple[int, ...], coef) -> dict:
        I = frozenset(idx)
        outside = [j for j in range(self.n) if j not in I]
        # columns of the right-hand side: the square-free monomials I + j
        mat = [[int(a == b) - (coef[ka][kb] if a != b else 0) for b, kb in enumerate(idx)]
               for a, ka in enumerate(idx)]
        rhs = [[coef[k][j] for j in outside] for k in idx]
        sol = _solve_exact(mat, rhs, self.modulus)
        out = {}
        for a, k in enumerate(idx):
            out[(I, k)] = _norm({I | {j}: sol[a][t] for t, j in enumerate(outside)}, self.modulus)
        return out

    def times_generator(self, x: dict, k: int) -> dict:
        acc: dict = {}
        for mono, c in x.items():
            if k not in mono:
                if len(mono) + 1 <= self.n:
                    key = mono | {k}
                    acc[key] = acc.get(key, 0) + c
            elif len(mono) < self.n:
                for m2, c2 in self._table[(mono, k)].items():
                    acc[m2] = acc.get(m2, 0) + c * c2
        return self._kill(_norm(acc, self.modulus))

    def _kill(self, x: dict) -> dict:
        if not self.killed:
            return x
        return {m: c for m, c in x.items() if not any(k <= m for k in self.killed)}

    def multiply(self, a: dict, b: dict) -> dict:
        acc: dict = {}
        for mono, c in b.items():
            part = {k: v * c for k, v in a.items()}
            for g in sorted(mono):
                part = self.times_generator(part, g)
            for k, v in part.items():
                acc[k] = acc.get(k, 0) + v
        return self._kill(_norm(acc, self.modulus))

    def power(self, a: dict, e: int) -> dict:
        out = {frozenset(): 1}
        for _ in range(e):
            out = self.multiply(out, a)
        return out

    def top(self) -> dict:
        """Product u_0 u_1 ... u_{n-1}."""
        out = {frozenset(): 1}
        for i in range(self.n):
            out = self.times_generator(out, i)
        return out

    def graded_ranks(self) -> tuple[int, ...]:
        """Rank of the span of all degree-q monomials in the generators, q = 0..n."""
        ranks = []
        for q in range(self.n + 1):
            basis = [frozenset(s) for s in itertools.combinations(range(self.n), q)]
            rows = []
            for multi in itertools.combinations_with_replacement(range(self.n), q):
                x = {frozenset(): 1}
                for g in multi:
                    x = self.times_generator(x, g)
                rows.append([x.get(b, 0) for b in basis])
            ranks.append(rank(rows, self.modulus) if rows and basis else 0)
        return tuple(ranks)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "coeffs": self.coeffs,
            "square_rules": [[[sorted(m), c] for m, c in sorted(r.items(), key=lambda t: sorted(t[0]))]
                             for r in self.square_rules],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "GradedRing":
        modulus = 2 if obj.get("coeffs", "Z") in ("Z/2", "Z2", 2) else 0
        rules = tuple({frozenset(m): c for m, c in r} for r in obj["square_rules"])
        return cls(obj["n"], rules, modulus)


def element_to_json(x: dict) -> dict:
    return {"terms": [[sorted(m), c] for m, c in sorted(x.items(), key=lambda t: (len(t[0]), sorted(t[0])))]}


def element_from_json(obj: dict, modulus: int = 0) -> dict:
    return element(((m, c) for m, c in obj["terms"]), modulus)


def _solve_exact(mat, rhs, modulus):
    """Solve mat * X = rhs (several right-hand sides) over Z or Z/2."""
    d = len(mat)
    if modulus:
        m = [[x % modulus for x in mat[i]] + [x % modulus for x in rhs[i]] for i in range(d)]
    else:
        m = [[Fraction(x) for x in mat[i]] + [Fraction(x) for x in rhs[i]] for i in range(d)]
    for col in range(d):
        piv = next((r for r in range(col, d) if m[r][col] != 0), None)
        if piv is None:
            raise ValueError("square rules do not determine the product on the square-free basis")
        m[col], m[piv] = m[piv], m[col]
        if modulus:
            inv = pow(m[col][col], -1, modulus)
            m[col] = [(x * inv) % modulus for x in m[col]]
        else:
            p = m[col][col]
            m[col] = [x / p for x in m[col]]
        for r in range(d):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                if modulus:
                    m[r] = [(x - f * y) % modulus for x, y in zip(m[r], m[col])]
                else:
                    m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    out = []
    for r in range(d):
        row = m[r][d:]
        if not modulus:
            if any(x.denominator != 1 for x in row):
                raise ValueError("square rules force non-integral normal forms")
            row = [int(x) for x in row]
        out.append(row)
    return out


def build_ring(a: BottMatrix, modulus: int = 0) -> GradedRing:
    """u_k^2 = sum_{i<k} a_ik u_i u_k."""
    n = a.n
    rules = tuple({frozenset((i, k)): a.a[i][k] for i in range(k)} for k in range(n))
    return GradedRing(n, rules, modulus)


def build_ring_from_lambda(c: CharMatrixCube, modulus: int = 0) -> GradedRing:
    """Eliminate the near-facet classes with the linear relations.

    With u_k the class of the far facet F_{n+k}, the near class is
    v_k = -sum_j lambda_kj u_j, and the cube relation v_k u_k = 0 gives
    u_k^2 = -lambda_kk * sum_{j != k} lambda_kj u_j u_k (lambda_kk = +-1).
    """
    lam = c.lambda_star
    n = c.n
    if not is_valid_characteristic(lam):
        raise ValueError("not a valid characteristic matrix")
    rules = tuple(
        {frozenset((j, k)): -lam[k][k] * lam[k][j] for j in range(n) if j != k}
        for k in range(n)
    )
    return GradedRing(n, rules, modulus)


def expected_ranks(n: int) -> tuple[int, ...]:
    return tuple(comb(n, q) for q in range(n + 1))


def p1_ordering(ring: GradedRing) -> tuple[int, ...] | None:
    """A relabelling of the generators under which every square rule has the
    shape x_k^2 = sum_{i<k} a_ik x_i x_k, or None.

    ``order[p]`` is the original generator placed at position p. The search is
    a topological sort of the "u_k^2 mentions u_i" relation; the smallest
    available label is always taken, so the identity is returned when it works.
    """
    n = ring.n
    needs: list[set] = []
    for k, r in enumerate(ring.square_rules):
        deps = set()
        for mono in r:
            if k not in mono:
                return None
            deps |= mono - {k}
        needs.append(deps)
    order: list[int] = []
    placed: set = set()
    while len(order) < n:
        ready = [k for k in range(n) if k not in placed and needs[k] <= placed]
        if not ready:
            return None
        order.append(ready[0])
        placed.add(ready[0])
    return tuple(order)


def is_BQ_algebra_mod2(ring: GradedRing) -> bool:
    """(P1) square rules of lower-index mixed shape (up to relabelling) and (P2) nonzero top product."""
    if ring.modulus != 2:
        ring = ring.mod2()
    if p1_ordering(ring) is None:
        return False
    return bool(ring.top())


def square_zero_vectors(ring: GradedRing, bound: int = 8) -> list[tuple[int, ...]]:
    """Primitive degree-2 coefficient vectors (up to sign) with |a_i| <= bound and zero square."""
    n = ring.n
    pairs = {}
    for i in range(n):
        for j in range(i, n):
            pairs[(i, j)] = ring.multiply(generator(i), generator(j))
    out = []
    from math import gcd
    for vec in itertools.product(range(-bound, bound + 1), repeat=n):
        nz = [x for x in vec if x]
        if not nz or nz[0] < 0:
            continue
        g = 0
        for x in nz:
            g = gcd(g, x)
        if g != 1:
            continue
        acc: dict = {}
        for (i, j), prod in pairs.items():
            w = vec[i] * vec[j] * (1 if i == j else 2)
            if w:
                for m, c in prod.items():
                    acc[m] = acc.get(m, 0) + w * c
        if not _norm(acc, ring.modulus):
            out.append(vec)
    return out


def find_square_zero_basis(ring: GradedRing, bound: int = 8) -> list[tuple[int, ...]] | None:
    """Brute force: n square-zero degree-2 elements forming a unimodular basis.

    Absence only means none exists with coefficients in [-bound, bound].
    """
    if ring.modulus != 0:
        raise ValueError("square-zero basis search is over Z")
    cands = square_zero_vectors(ring, bound)
    for combo in itertools.combinations(cands, ring.n):
        if det(as_matrix(combo)) in (1, -1):
            return list(combo)
    return None


@dataclass(frozen=True)
class ProductTest:
    iso: bool
    basis: tuple | None = None  # basis[k] = coefficients of x_k in u_0..u_{n-1}
    factorization: object = None

    def to_json(self) -> dict:
        return {"iso_to_product": self.iso,
                "basis": None if self.basis is None else [list(b) for b in self.basis]}


def iso_to_product_test(a: BottMatrix) -> ProductTest:
    """Decide H*(B) = H*((CP^1)^n) by factorizing (E - A)/2, then witness-check.

    On success x_k = sum_j d_jk u_j is built and its square and the top
    product are verified in the ring.
    """
    from .semifree import factorize_integer, half_e_minus_a

    d = half_e_minus_a(a)
    if d is None:
        return ProductTest(False)
    fac = factorize_integer(d)
    if fac is None:
        return ProductTest(False)
    n = a.n
    ring = build_ring(a)
    basis = tuple(tuple(d[j][k] for j in range(n)) for k in range(n))
    xs = [linear(b) for b in basis]
    for x in xs:
        if ring.multiply(x, x):
            raise AssertionError(f"witness x = {x} does not square to zero for {a.a}")
    prod = {frozenset(): 1}
    for x in xs:
        prod = ring.multiply(prod, x)
    if not prod:
        raise AssertionError(f"witness basis has zero top product for {a.a}")
    return ProductTest(True, basis, fac)


def expected_face_counts(n: int) -> tuple[int, int]:
    """(f0, f1) forced for a cube: 2n facets and 2n(n-1) codimension-2 faces."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return 2 * n, 2 * n * (n - 1)


def betti_from_face_counts(f0: int, f1: int, n: int) -> tuple[int, int]:
    """(b2, b4) of a quasitoric manifold from the face numbers of its polytope."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return f0 - n, f1 - (n - 1) * f0 + comb(n, n - 2)


def naive_reduce(ring: GradedRing, word: Sequence[int], max_steps: int = 10_000) -> dict:
    """Reduce the monomial u_{w0} u_{w1} ... by direct square rewriting.

    Independent of the linear-solve table; terminates for lower-index rules
    (Bott rings) and raises RuntimeError when rewriting does not settle.
    """
    from collections import Counter

    todo = {tuple(sorted(word)): 1}
    done: dict = {}
    steps = 0
    while todo:
        steps += 1
        if steps > max_steps:
            raise RuntimeError("rewriting did not terminate")
        mono, c = todo.popitem()
        if len(mono) > ring.n:
            continue
        cnt = Counter(mono)
        sq = [k for k, v in cnt.items() if v >= 2]
        if not sq:
            key = frozenset(mono)
            done[key] = done.get(key, 0) + c
            continue
        k = max(sq)
        rest = list(mono)
        rest.remove(k)
        rest.remove(k)
        for pair, c2 in ring.square_rules[k].items():
            new = tuple(sorted(rest + list(pair)))
            todo[new] = todo.get(new, 0) + c * c2
            if not todo[new]:
                del todo[new]
    return _norm(done, ring.modulus)
