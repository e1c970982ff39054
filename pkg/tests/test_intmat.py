import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bottcube.intmat import (
    CYCLIC,
    NOT_APPLICABLE,
    UPPER_TRIANGULAR,
    adjugate,
    as_matrix,
    conjugate,
    cyclic_form,
    det,
    identity,
    inverse_permutation,
    matmul,
    minor_normal_form,
    permutation_matrix,
    principal_minor,
    principal_minors,
    rank,
    transpose,
    unimodular_inverse,
    verify_normal_form,
)

from conftest import leibniz_det


def square(n, lo=-3, hi=3):
    return st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n)


sized = st.integers(1, 6).flatmap(square)


def test_det_examples():
    assert det(identity(3)) == 1
    assert det(as_matrix([[1, 1, 0], [0, 1, 1], [1, 0, 1]])) == 2
    assert det(as_matrix([[1, 2], [1, 1]])) == -1
    assert det(()) == 1


@given(sized)
def test_det_matches_leibniz(rows):
    a = as_matrix(rows)
    assert det(a) == leibniz_det(a)


def test_det_bareiss_many_samples():
    rng = random.Random(7)
    for _ in range(1000):
        n = rng.randint(1, 6)
        a = as_matrix([[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)])
        assert principal_minor(a, range(n)) == det(a) == leibniz_det(a)


def test_as_matrix_rejects_bad_input():
    with pytest.raises(ValueError):
        as_matrix([[1, 2], [3]])
    with pytest.raises((ValueError, TypeError)):
        as_matrix([[1.5, 0], [0, 1]])


def test_principal_minor_examples():
    a = as_matrix([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    assert principal_minor(a, []) == 1
    assert principal_minor(a, {0, 1}) == 1
    neg = as_matrix([[1, 2], [1, 1]])
    assert principal_minor(neg, {0, 1}) == -1
    with pytest.raises(IndexError):
        principal_minor(a, {3})


def test_conjugate_examples():
    a = as_matrix([[1, 0], [1, 1]])
    assert conjugate(a, (0, 1)) == a
    assert conjugate(a, (1, 0)) == ((1, 1), (0, 1))


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(square(n), st.permutations(range(n)))))
def test_conjugate_is_matrix_conjugation(args):
    rows, sigma = args
    a = as_matrix(rows)
    p = permutation_matrix(tuple(sigma))
    assert conjugate(a, sigma) == matmul(matmul(transpose(p), a), p)
    assert conjugate(conjugate(a, sigma), inverse_permutation(tuple(sigma))) == a
    assert det(conjugate(a, sigma)) == det(a)


def test_normal_form_examples():
    f = minor_normal_form(as_matrix([[1, 1], [0, 1]]))
    assert f.tag == UPPER_TRIANGULAR and f.sigma == (0, 1)
    f = minor_normal_form(as_matrix([[1, 1, 0], [0, 1, 1], [1, 0, 1]]))
    assert f.tag == CYCLIC and f.b == (1, 1, 1)
    a = as_matrix([[1, 0, 1], [1, 1, 0], [0, 1, 1]])
    f = minor_normal_form(a)
    assert f.tag == CYCLIC and verify_normal_form(a, f)
    # the order-reversing permutation is also a witness
    rev = conjugate(a, (2, 1, 0))
    assert rev == cyclic_form((1, 1, 1))


def test_normal_form_not_applicable():
    assert minor_normal_form(as_matrix([[1, 1], [1, 2]])).tag == NOT_APPLICABLE
    assert minor_normal_form(as_matrix([[2]])).tag == NOT_APPLICABLE
    assert minor_normal_form(as_matrix([[1]])).tag == UPPER_TRIANGULAR


@pytest.mark.parametrize("n", [2, 3, 4])
def test_trichotomy_exhaustive(n):
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    seen = {UPPER_TRIANGULAR: 0, CYCLIC: 0}
    for vals in itertools.product((-1, 0, 1), repeat=len(off)):
        rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for (i, j), v in zip(off, vals):
            rows[i][j] = v
        # proper 2x2 minors equal to 1 force a_ij * a_ji = 0; cheap prefilter
        if n > 2 and any(rows[i][j] * rows[j][i] for i, j in off):
            continue
        a = as_matrix(rows)
        mins = principal_minors(a, proper=True)
        if any(v != 1 for v in mins.values()):
            continue
        f = minor_normal_form(a)
        assert f.tag == (UPPER_TRIANGULAR if det(a) == 1 else CYCLIC)
        assert verify_normal_form(a, f)
        seen[f.tag] += 1
    assert seen[UPPER_TRIANGULAR] > 0 and seen[CYCLIC] > 0


def test_trichotomy_n5_sampled():
    rng = random.Random(5)
    n, hits = 5, 0
    for _ in range(20000):
        sigma = list(range(n))
        rng.shuffle(sigma)
        if rng.random() < 0.5:
            up = [[1 if i == j else (rng.randint(-2, 2) if j > i else 0) for j in range(n)] for i in range(n)]
            base = as_matrix(up)
        else:
            base = cyclic_form([rng.choice((-2, -1, 1, 2)) for _ in range(n)])
        a = conjugate(base, inverse_permutation(tuple(sigma)))
        f = minor_normal_form(a)
        assert f.tag == (UPPER_TRIANGULAR if det(a) == 1 else CYCLIC)
        assert verify_normal_form(a, f)
        hits += 1
        if hits >= 300:
            break


@given(st.integers(2, 6).flatmap(lambda n: st.lists(st.integers(-3, 3).filter(bool), min_size=n, max_size=n)))
def test_cyclic_determinant_formula(b):
    n = len(b)
    prod = 1
    for x in b:
        prod *= x
    c = cyclic_form(b)
    assert det(c) == 1 + (-1) ** (n + 1) * prod
    assert all(v == 1 for v in principal_minors(c, proper=True).values())


@given(st.integers(1, 4).flatmap(square))
def test_adjugate_identity(rows):
    a = as_matrix(rows)
    d = det(a)
    n = len(a)
    assert matmul(a, adjugate(a)) == tuple(tuple(d if i == j else 0 for j in range(n)) for i in range(n))


def test_unimodular_inverse_and_rank():
    a = as_matrix([[1, 2], [1, 1]])
    assert matmul(a, unimodular_inverse(a)) == identity(2)
    with pytest.raises(ValueError):
        unimodular_inverse(as_matrix([[2, 0], [0, 1]]))
    assert rank([[1, 1], [1, 1]]) == 1
    assert rank([[1, 1], [1, -1]]) == 2
    assert rank([[1, 1], [1, -1]], modulus=2) == 1
