"""Crosscomplex recognition and combinatorial cubes via duality."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable


@dataclass(frozen=True)
class SimplicialComplex:
    """Simplicial complex given by its maximal faces (vertex labels are ints)."""

    facets: frozenset

    def __init__(self, facets: Iterable[Iterable[int]]):
        fs = {frozenset(f) for f in facets}
        maximal = frozenset(f for f in fs if not any(f < g for g in fs))
        object.__setattr__(self, "facets", maximal)

    @property
    def vertices(self) -> frozenset:
        return frozenset().union(*self.facets) if self.facets else frozenset()

    @property
    def dim(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def faces(self, size: int) -> set:
        out = set()
        for f in self.facets:
            out.update(frozenset(c) for c in itertools.combinations(sorted(f), size))
        return out

    def edges(self) -> set:
        return self.faces(2)

    def is_connected(self) -> bool:
        verts = self.vertices
        if not verts:
            return False
        adj = {v: set() for v in verts}
        for f in self.facets:
            for v in f:
                adj[v] |= f
        seen = set()
        stack = [next(iter(verts))]
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            stack.extend(adj[v] - seen)
        return seen == verts

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.faces(j + 1)) for j in range(self.dim + 1))

    def to_json(self) -> dict:
        labels = {v: i for i, v in enumerate(sorted(self.vertices))}
        return {"vertices": len(labels),
                "facets": sorted(sorted(labels[v] for v in f) for f in self.facets)}

    @classmethod
    def from_json(cls, obj: dict) -> "SimplicialComplex":
        k = cls(obj["facets"])
        nv = obj.get("vertices")
        if nv is not None and not all(0 <= v < nv for v in k.vertices):
            raise ValueError(f"facet vertex outside 0..{nv - 1}")
        if nv is not None and len(k.vertices) != nv:
            raise ValueError(f"declared {nv} vertices but facets use {len(k.vertices)}")
        return k


def link(k: SimplicialComplex, v: int) -> SimplicialComplex:
    if v not in k.vertices:
        raise KeyError(f"vertex {v} is not in the complex")
    return SimplicialComplex(f - {v} for f in k.facets if v in f)


def boundary_of_simplex(n_vertices: int) -> SimplicialComplex:
    return SimplicialComplex(itertools.combinations(range(n_vertices), n_vertices - 1))


def crosscomplex(k: int) -> SimplicialComplex:
    """Boundary of the (k+1)-dimensional crosspolytope: vertices 2i and 2i+1 are antipodal."""
    return SimplicialComplex(
        [2 * i + b for i, b in enumerate(bits)] for bits in itertools.product((0, 1), repeat=k + 1)
    )


def octahedron() -> SimplicialComplex:
    return crosscomplex(2)


def antipodal_pairs(k: SimplicialComplex) -> list[tuple[int, int]] | None:
    """The perfect matching of non-adjacent vertices, if each vertex has exactly one non-neighbour."""
    verts = sorted(k.vertices)
    edges = k.edges()
    partner = {}
    for v in verts:
        non = [w for w in verts if w != v and frozenset((v, w)) not in edges]
        if len(non) != 1:
            return None
        partner[v] = non[0]
    if any(partner[partner[v]] != v for v in verts):
        return None
    return sorted({tuple(sorted((v, partner[v]))) for v in verts})


def is_crosscomplex(k: SimplicialComplex) -> bool:
    """Direct test: the faces are exactly the sets meeting each antipodal pair at most once."""
    if not k.facets or k.dim < 0:
        return False
    d = k.dim
    if len(k.vertices) != 2 * (d + 1):
        return False
    pairs = antipodal_pairs(k)
    if pairs is None or len(pairs) != d + 1:
        return False
    expected = {frozenset(p[b] for p, b in zip(pairs, bits))
                for bits in itertools.product((0, 1), repeat=d + 1)}
    return set(k.facets) == expected


def is_crosscomplex_recursive(k: SimplicialComplex) -> bool:
    """Connected, pure and every vertex link a crosscomplex one dimension lower.

    Dimensions 0 and 1 have no such characterisation and use the direct test.
    """
    if not k.facets:
        return False
    d = k.dim
    if d <= 1:
        return is_crosscomplex(k)
    if not k.is_connected() or not k.is_pure():
        return False
    for v in k.vertices:
        lk = link(k, v)
        if lk.dim != d - 1 or not is_crosscomplex_recursive(lk):
            return False
    return True


def expected_cross_f_vector(d: int) -> tuple[int, ...]:
    from math import comb
    return tuple(comb(d + 1, j + 1) * 2 ** (j + 1) for j in range(d + 1))


@dataclass(frozen=True)
class SimplePolytope:
    """Vertex-facet incidences of a simple polytope of dimension n."""

    n_facets: int
    vertex_facets: tuple

    def __init__(self, n_facets: int, vertex_facets: Iterable[Iterable[int]]):
        vf = tuple(frozenset(v) for v in vertex_facets)
        if not vf:
            raise ValueError("polytope has no vertices")
        sizes = {len(v) for v in vf}
        if len(sizes) != 1:
            raise ValueError("vertices lie in different numbers of facets; polytope is not simple")
        for v in vf:
            if not all(0 <= f < n_facets for f in v):
                raise ValueError(f"facet index outside 0..{n_facets - 1}")
        if len(set(vf)) != len(vf):
            raise ValueError("two vertices have the same facet set")
        object.__setattr__(self, "n_facets", n_facets)
        object.__setattr__(self, "vertex_facets", vf)

    @property
    def dim(self) -> int:
        return len(self.vertex_facets[0])

    def dual(self) -> SimplicialComplex:
        return SimplicialComplex(self.vertex_facets)

    def to_json(self) -> dict:
        return {"facets": self.n_facets, "vertex_facets": [sorted(v) for v in self.vertex_facets]}

    @classmethod
    def from_json(cls, obj: dict) -> "SimplePolytope":
        return cls(obj["facets"], obj["vertex_facets"])


def cube(n: int) -> SimplePolytope:
    return SimplePolytope(2 * n, ([i + n * e for i, e in enumerate(eps)]
                                  for eps in itertools.product((0, 1), repeat=n)))


def polygon(m: int) -> SimplePolytope:
    return SimplePolytope(m, ((i, (i + 1) % m) for i in range(m)))


def triangular_prism() -> SimplePolytope:
    # facets 0, 1, 2 are the sides, 3 and 4 the triangles
    return SimplePolytope(5, [(0, 1, 3), (1, 2, 3), (2, 0, 3), (0, 1, 4), (1, 2, 4), (2, 0, 4)])


def is_combinatorial_cube(p: SimplePolytope) -> bool:
    """The dual complex (facets as vertices) is a crosscomplex."""
    dual = p.dual()
    if len(dual.vertices) != p.n_facets:
        return False
    return is_crosscomplex(dual)
