"""Acceptance criteria, runnable from pytest and from ``bottcube selfcheck``.

Each check returns a Result; witnesses produced along the way are collected
and replayed by the final soundness sweep.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable

from .cohomology import (
    build_ring,
    build_ring_from_lambda,
    expected_ranks,
    find_square_zero_basis,
    iso_to_product_test,
    linear,
)
from .fan2d import NORMAL_PAIRS, enumerate_fans, is_complete_smooth, normalize_at, semifree_vectors
from .intmat import (
    CYCLIC,
    UPPER_TRIANGULAR,
    as_matrix,
    conjugate,
    det,
    minor_normal_form,
    principal_minors,
    transpose,
    verify_normal_form,
)
from .quasitoric import (
    BottMatrix,
    CharMatrixCube,
    bott_matrix_from,
    bott_up_to_omniorientation,
    enumerate_bott_matrices,
    enumerate_char_matrices,
    fixed_point_signs,
    hirzebruch,
    is_bott_tower,
)
from .semifree import (
    enumerate_semifree_vectors,
    factorize_integer,
    factorize_unit,
    half_e_minus_a,
    semifree_by_factorization,
)
from .simplicial import (
    SimplicialComplex,
    boundary_of_simplex,
    crosscomplex,
    is_crosscomplex,
    is_crosscomplex_recursive,
    link,
    octahedron,
)

SEED = 20070101


@dataclass
class Result:
    key: str
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0
    limit: float | None = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lim = f" (limit {self.limit:g}s)" if self.limit else ""
        return f"[{status}] {self.key:>3} {self.title}: {self.detail} [{self.seconds:.2f}s{lim}]"


@dataclass
class Context:
    """Shared censuses and collected witnesses across criteria."""

    rings: list = field(default_factory=list)  # (label, GradedRing)
    witnesses: list = field(default_factory=list)  # (label, zero-arg replay callable)
    _char3: list | None = None

    def char_census(self, n: int, bound: int) -> list[CharMatrixCube]:
        if (n, bound) == (3, 3):
            if self._char3 is None:
                self._char3 = list(enumerate_char_matrices(3, 3))
            return self._char3
        return list(enumerate_char_matrices(n, bound))

    def witness(self, label: str, replay: Callable[[], bool]) -> None:
        self.witnesses.append((label, replay))


def _bott_replay(c: CharMatrixCube, a: BottMatrix, sigma) -> Callable[[], bool]:
    return lambda: conjugate(c.lambda_star, sigma) == transpose(a.a)


def _fac_replay(d, fac) -> Callable[[], bool]:
    return lambda: fac.product() == d


def _basis_replay(a: BottMatrix, basis) -> Callable[[], bool]:
    def replay() -> bool:
        ring = build_ring(a)
        xs = [linear(b) for b in basis]
        if any(ring.multiply(x, x) for x in xs):
            return False
        top = {frozenset(): 1}
        for x in xs:
            top = ring.multiply(top, x)
        return bool(top) and det(as_matrix(basis)) in (1, -1)
    return replay


def criterion_1(ctx: Context) -> Result:
    bad = []
    for m in range(-10, 11):
        a = hirzebruch(m)
        res = iso_to_product_test(a)
        ctx.rings.append((f"hirzebruch({m})", build_ring(a)))
        if res.iso:
            ctx.witness(f"iso basis m={m}", _basis_replay(a, res.basis))
        if res.iso != (m % 2 == 0):
            bad.append(m)
    return Result("1", "Hirzebruch parity", not bad,
                  "iso <=> m even for all m in [-10, 10]" if not bad else f"mismatch at m = {bad}", limit=1)


def criterion_2(ctx: Context) -> Result:
    good = BottMatrix(((-1, -2, -2), (0, -1, 0), (0, 0, -1)))
    bad = BottMatrix(((-1, 0, -2), (0, -1, -2), (0, 0, -1)))
    d = half_e_minus_a(good)
    fac = factorize_unit(d) if d is not None else None
    ok_good = fac is not None and fac.steps == (None, (0, 1), (0, 1)) and [list(f) for f in fac.factors()] == [
        [(1, 0, 0), (0, 1, 0), (0, 0, 1)],
        [(1, 1, 0), (0, 1, 0), (0, 0, 1)],
        [(1, 0, 1), (0, 1, 0), (0, 0, 1)],
    ]
    if fac is not None:
        ctx.witness("displayed factorization", _fac_replay(d, fac))
    ok_bad = not semifree_by_factorization(bad)
    for a in (good, bad):
        ctx.rings.append((f"sfdec {a.a}", build_ring(a)))
    return Result("2", "factorization fixed points", ok_good and ok_bad,
                  f"displayed factorization {'reproduced' if ok_good else 'NOT reproduced'}; "
                  f"counterexample {'absent' if ok_bad else 'WRONGLY present'}")


def criterion_3(ctx: Context) -> Result:
    bad = []
    count = 0
    for n in range(1, 5):
        for a in enumerate_bott_matrices(n, (0, -2)):
            count += 1
            oracle = bool(enumerate_semifree_vectors(a.as_char()))
            d = half_e_minus_a(a)
            fac = factorize_unit(d)
            if fac is not None:
                ctx.witness(f"strict factorization {a.a}", _fac_replay(d, fac))
            if oracle != (fac is not None):
                bad.append(a.a)
            ctx.rings.append((f"bott {a.a}", build_ring(a)))
    return Result("3", "semifree oracle <=> strict factorization", not bad,
                  f"{count} Bott matrices with entries in {{0, -2}}, n <= 4" + (f"; mismatches {bad[:3]}" if bad else ""),
                  limit=10)


def _semifree_census(ctx: Context):
    for n in (1, 2, 3):
        for c in ctx.char_census(n, 3):
            vecs = enumerate_semifree_vectors(c)
            if vecs:
                yield c, vecs


def criterion_4(ctx: Context) -> Result:
    """As stated: semifree => all principal minors of -lambda_star equal 1."""
    total = 0
    bad = []
    for c, _ in _semifree_census(ctx):
        total += 1
        ctx.rings.append((f"semifree {c.lambda_star}", build_ring_from_lambda(c)))
        if not is_bott_tower(c):
            bad.append(c.lambda_star)
    detail = f"{total} semifree matrices with entries in [-3, 3], n <= 3"
    if bad:
        detail += f"; {len(bad)} are not Bott in their given omniorientation, e.g. {bad[0]}"
    return Result("4", "semifree => Bott (literal, fixed omniorientation)", not bad, detail, limit=300)


def criterion_4_omni(ctx: Context) -> Result:
    """Semifree => equivalent to a Bott tower once omniorientations may change."""
    total = 0
    bad = []
    for c, vecs in _semifree_census(ctx):
        total += 1
        w = bott_up_to_omniorientation(c)
        if w is None:
            bad.append(c.lambda_star)
            continue
        ctx.witness(f"omni witness {c.lambda_star}",
                    lambda c=c, w=w: conjugate(w.flipped(c.lambda_star), w.sigma) == transpose(w.bott.a))
        # flipping orientations only changes weight signs
        flipped = CharMatrixCube(w.flipped(c.lambda_star))
        if not enumerate_semifree_vectors(flipped):
            bad.append(c.lambda_star)
    return Result("4o", "semifree => Bott up to omniorientation", not bad,
                  f"{total} semifree matrices, all with a Bott witness" if not bad else f"failures {bad[:3]}",
                  limit=300)


def criterion_5(ctx: Context) -> Result:
    rng = random.Random(SEED)
    bad_bott = 0
    for t in range(1000):
        n = rng.randint(1, 5)
        a = BottMatrix.from_entries(n, {(i, j): rng.randint(-4, 4) for i in range(n) for j in range(i + 1, n)})
        if any(s != 1 for s in fixed_point_signs(a.as_char())):
            bad_bott += 1
        ctx.rings.append((f"random bott {a.a}", build_ring(a)))
    non_bott = 0
    bad_non = 0
    for c in ctx.char_census(2, 4):
        if not is_bott_tower(c):
            non_bott += 1
            if all(s == 1 for s in fixed_point_signs(c)):
                bad_non += 1
    ok = bad_bott == 0 and bad_non == 0
    return Result("5", "fixed-point signs", ok,
                  f"1000 random Bott matrices all signs +1 ({bad_bott} failures); "
                  f"{non_bott} valid non-Bott n=2 matrices with a -1 sign ({bad_non} failures)")


def criterion_6(ctx: Context) -> Result:
    checked = 0
    bad = []
    for offdiag in itertools.product((-1, 0, 1), repeat=6):
        it = iter(offdiag)
        a = tuple(tuple(1 if i == j else next(it) for j in range(3)) for i in range(3))
        if any(m != 1 for m in principal_minors(a, proper=True).values()):
            continue
        checked += 1
        form = minor_normal_form(a)
        want = UPPER_TRIANGULAR if det(a) == 1 else CYCLIC
        if form.tag != want or not verify_normal_form(a, form):
            bad.append(a)
        ctx.witness(f"minor normal form {a}", lambda a=a, form=form: verify_normal_form(a, form))
    return Result("6", "principal-minor trichotomy", not bad,
                  f"{checked} matrices satisfy the hypothesis; verdicts match det" + (f"; mismatches {bad[:3]}" if bad else ""),
                  limit=60)


def criterion_7(ctx: Context) -> Result:
    bad = [label for label, ring in ctx.rings if ring.graded_ranks() != expected_ranks(ring.n)]
    return Result("7", "graded ranks C(n, q)", not bad,
                  f"{len(ctx.rings)} rings from criteria 1-5" + (f"; wrong ranks for {bad[:3]}" if bad else ""))


def _fan_census():
    return [(f, v) for f in enumerate_fans(10, 6) for v in [semifree_vectors(f)] if v]


def criterion_8(ctx: Context) -> Result:
    """As stated: every semifree fan has 4 rays and (lambda_3, lambda_4) among the three pairs."""
    sf = _fan_census()
    four = all(len(f) == 4 for f, _ in sf)
    off = [f.rays for f, _ in sf if len(f) != 4 or (f.rays[2], f.rays[3]) not in NORMAL_PAIRS]
    forms = {(f.rays[2], f.rays[3]) for f, _ in sf if len(f) == 4}
    both = ((-1, 0), (0, -1)) in forms and ((-1, -2), (0, -1)) in forms
    ok = four and not off and both
    return Result("8", "four-ray classification (literal)", ok,
                  f"{len(sf)} semifree fans, all 4 rays: {four}; both normal forms: {both}"
                  + (f"; outside the three pairs: {off}" if off else ""), limit=60)


def criterion_8_normalized(ctx: Context) -> Result:
    """Same census after moving nu into the first cone."""
    sf = _fan_census()
    bad = []
    in_first = 0
    for f, vecs in sf:
        if len(f) != 4:
            bad.append(f.rays)
            continue
        if (1, 1) in vecs:
            in_first += 1
            if (f.rays[2], f.rays[3]) not in NORMAL_PAIRS:
                bad.append(f.rays)
        for nu in vecs:
            norm = normalize_at(f, nu)
            if norm is None:
                bad.append(f.rays)
                continue
            g, gnu = norm
            ctx.witness(f"fan normalization {f.rays} nu={nu}",
                        lambda g=g, gnu=gnu: is_complete_smooth(g) and gnu in semifree_vectors(g))
            if gnu != (1, 1) or (g.rays[2], g.rays[3]) not in NORMAL_PAIRS:
                bad.append(f.rays)
    forms = {(f.rays[2], f.rays[3]) for f, v in sf if (1, 1) in v}
    both = ((-1, 0), (0, -1)) in forms and ((-1, -2), (0, -1)) in forms
    return Result("8n", "four-ray classification (nu in first cone)", not bad and both,
                  f"{len(sf)} semifree fans, {in_first} with nu = (1, 1); every (fan, nu) normalizes into "
                  f"the three pairs: {not bad}; both normal forms: {both}", limit=60)


def generated_complexes(seed: int = SEED) -> list[SimplicialComplex]:
    """Constructed families plus random pure 2-complexes, all with at most 10 vertices."""
    out = [crosscomplex(k) for k in range(0, 5)]
    out += [boundary_of_simplex(v) for v in range(2, 11)]
    out += [SimplicialComplex((i, (i + 1) % m) for i in range(m)) for m in range(3, 11)]
    out += [link(crosscomplex(3), 0), link(octahedron(), 2)]
    octa = octahedron()
    out.append(SimplicialComplex(set(octa.facets) - {next(iter(sorted(octa.facets, key=sorted)))}))
    # octahedron with one triangle stellarly subdivided
    f0 = sorted(octa.facets, key=sorted)[0]
    a, b, c = sorted(f0)
    out.append(SimplicialComplex((set(octa.facets) - {f0}) | {frozenset((a, b, 6)), frozenset((b, c, 6)), frozenset((a, c, 6))}))
    # two disjoint octahedra would need 12 vertices; use octahedron plus a disjoint edge
    out.append(SimplicialComplex(list(octa.facets) + [(6, 7)]))
    # suspension of a pentagon (links are 4-cycles only at the pentagon vertices)
    pent = [(i, (i + 1) % 5) for i in range(5)]
    out.append(SimplicialComplex([e + (5,) for e in pent] + [e + (6,) for e in pent]))
    rng = random.Random(seed)
    for _ in range(300):
        nv = rng.randint(4, 10)
        tris = list(itertools.combinations(range(nv), 3))
        k = rng.randint(1, min(len(tris), 14))
        chosen = rng.sample(tris, k)
        out.append(SimplicialComplex(chosen))
    return out


def criterion_9(ctx: Context) -> Result:
    octa_ok = is_crosscomplex(octahedron())
    simplex_ok = not is_crosscomplex(boundary_of_simplex(5))
    cx = generated_complexes()
    disagree = [k.facets for k in cx if is_crosscomplex(k) != is_crosscomplex_recursive(k)]
    ok = octa_ok and simplex_ok and not disagree
    return Result("9", "crosscomplex recognition", ok,
                  f"octahedron {octa_ok}; boundary of 4-simplex rejected {simplex_ok}; "
                  f"direct and recursive agree on {len(cx) - len(disagree)}/{len(cx)} complexes")


def criterion_10(ctx: Context) -> Result:
    # witnesses from the Bott census and square-zero searches that the other
    # criteria do not already record
    for c in ctx.char_census(3, 3):
        if is_bott_tower(c):
            a, sigma = bott_matrix_from(c)
            ctx.witness(f"bott witness {c.lambda_star}", _bott_replay(c, a, sigma))
            d = half_e_minus_a(a)
            if d is not None:
                fac = factorize_integer(d)
                if fac is not None:
                    ctx.witness(f"integer factorization {a.a}", _fac_replay(d, fac))
    for m in range(-10, 11, 2):
        a = hirzebruch(m)
        basis = find_square_zero_basis(build_ring(a))
        if basis is None:
            ctx.witness(f"square-zero basis m={m}", lambda: False)
        else:
            ctx.witness(f"square-zero basis m={m}", _basis_replay(a, basis))
    failed = [label for label, replay in ctx.witnesses if not replay()]
    return Result("10", "witness soundness sweep", not failed,
                  f"{len(ctx.witnesses)} witnesses replayed" + (f"; failed: {failed[:3]}" if failed else ""))


CRITERIA: list[Callable[[Context], Result]] = [
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_4_omni, criterion_5,
    criterion_6, criterion_7, criterion_8, criterion_8_normalized, criterion_9, criterion_10,
]
KEYS = ["1", "2", "3", "4", "4o", "5", "6", "7", "8", "8n", "9", "10"]


def run_all(verbose: bool = False, echo=print) -> list[Result]:
    ctx = Context()
    results = []
    for check in CRITERIA:
        t0 = time.perf_counter()
        res = check(ctx)
        res.seconds = time.perf_counter() - t0
        if res.limit is not None and res.seconds > res.limit:
            res.passed = False
            res.detail += f"; exceeded time limit {res.limit:g}s"
        results.append(res)
        if verbose:
            echo(res.line())
    return results
