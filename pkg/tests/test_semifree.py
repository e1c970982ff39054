import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bottcube.intmat import identity, matvec, negate, transpose
from bottcube.quasitoric import (
    BottMatrix,
    CharMatrixCube,
    enumerate_bott_matrices,
    enumerate_char_matrices,
    bott_up_to_omniorientation,
    vertex_columns,
    vertices,
)
from bottcube.semifree import (
    Factorization,
    enumerate_semifree_vectors,
    factorization_report,
    factorize_integer,
    factorize_signed,
    factorize_unit,
    half_e_minus_a,
    is_primitive,
    is_semifree,
    semifree_by_factorization,
    semifree_by_signed_factorization,
    weights_at_vertex,
)

TWIST = CharMatrixCube(((-1, 0), (-2, -1)))
GOOD = BottMatrix(((-1, -2, -2), (0, -1, 0), (0, 0, -1)))
BAD = BottMatrix(((-1, 0, -2), (0, -1, -2), (0, 0, -1)))


def test_weights_examples():
    assert weights_at_vertex(TWIST, (3, -5), (0, 0)) == (3, -5)
    assert weights_at_vertex(TWIST, (1, 1), (1, 1)) == (-1, 1)
    e = CharMatrixCube(negate(identity(3)))
    assert weights_at_vertex(e, (1, -1, 1), (1, 1, 1)) == (-1, 1, -1)


def test_weights_reconstruct_nu():
    for c in enumerate_char_matrices(2, 2):
        for eps in vertices(2):
            for nu in itertools.product(range(-2, 3), repeat=2):
                k = weights_at_vertex(c, nu, eps)
                cols = vertex_columns(c, eps)
                assert matvec(transpose(cols), k) == nu


def test_is_semifree_examples():
    assert is_semifree(CharMatrixCube(negate(identity(3))), (1, 1, 1))
    assert is_semifree(TWIST, (1, 1))
    assert not is_semifree(CharMatrixCube(((-1, 0), (-4, -1))), (1, 1))
    with pytest.raises(ValueError):
        is_semifree(TWIST, (2, 0))
    assert is_primitive((3, -2)) and not is_primitive((0, 0)) and not is_primitive((2, 4))


def test_enumerate_examples():
    assert sorted(enumerate_semifree_vectors(CharMatrixCube(negate(identity(2))))) == [
        (-1, -1), (-1, 1), (1, -1), (1, 1)]
    assert sorted(enumerate_semifree_vectors(TWIST)) == [(-1, -1), (1, 1)]
    assert enumerate_semifree_vectors(BAD.as_char()) == []


def test_search_space_is_complete():
    # any semifree nu has weights nu at the initial vertex, so |nu_i| = 1
    for c in enumerate_char_matrices(2, 2):
        brute = [nu for nu in itertools.product(range(-3, 4), repeat=2)
                 if is_primitive(nu) and is_semifree(c, nu)]
        assert sorted(brute) == sorted(enumerate_semifree_vectors(c))


@pytest.mark.parametrize("n", [2, 3])
def test_negation_symmetry(n):
    for c in enumerate_char_matrices(n, 2 if n == 2 else 1):
        vecs = set(enumerate_semifree_vectors(c))
        assert vecs == {tuple(-x for x in v) for v in vecs}


def test_semifree_implies_bott_up_to_omniorientation():
    for c in enumerate_char_matrices(3, 1):
        if enumerate_semifree_vectors(c):
            assert bott_up_to_omniorientation(c) is not None


def test_factorization_examples():
    f = factorize_unit(((1, 1, 1), (0, 1, 0), (0, 0, 1)))
    assert f.steps == (None, (0, 1), (0, 1))
    assert f.product() == ((1, 1, 1), (0, 1, 0), (0, 0, 1))
    assert factorize_unit(((1, 0, 1), (0, 1, 1), (0, 0, 1))) is None
    assert factorize_integer(((1, 0, 1), (0, 1, 1), (0, 0, 1))) is None
    assert factorize_unit(identity(3)).steps == (None, None, None)
    g = factorize_integer(((1, 2), (0, 1)))
    assert g.steps == (None, (0, 2))
    assert factorize_unit(((1, 2), (0, 1))) is None
    assert factorize_signed(((1, -1), (0, 1))) is not None
    assert factorize_unit(((1, -1), (0, 1))) is None
    with pytest.raises(ValueError):
        factorize_unit(((1, 0), (1, 1)))


def test_semifree_by_factorization_examples():
    assert semifree_by_factorization(GOOD)
    assert not semifree_by_factorization(BAD)
    assert semifree_by_factorization(BottMatrix(negate(identity(4))))
    assert half_e_minus_a(BottMatrix(((-1, 1), (0, -1)))) is None
    assert not semifree_by_factorization(BottMatrix(((-1, 1), (0, -1))))
    rep = factorization_report(GOOD)
    assert rep == {"strict_factorization": True, "relaxed_factorization": True,
                   "integer_factorization": True, "strict_steps": [None, [0, 1], [0, 1]]}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_oracle_agreement_zero_minus_two(n):
    for a in enumerate_bott_matrices(n, (0, -2)):
        assert semifree_by_factorization(a) == bool(enumerate_semifree_vectors(a.as_char()))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_signed_factorization_matches_oracle(n):
    # with both signs allowed the factorization test agrees with the weight test
    for a in enumerate_bott_matrices(n, (-2, 0, 2)):
        assert semifree_by_signed_factorization(a) == bool(enumerate_semifree_vectors(a.as_char()))


def unipotent(n):
    @st.composite
    def build(draw):
        return tuple(tuple(1 if i == j else (draw(st.integers(-2, 2)) if j > i else 0) for j in range(n))
                     for i in range(n))
    return build()


@given(st.integers(1, 5).flatmap(unipotent))
def test_factorizations_replay_and_nest(d):
    u, s, z = factorize_unit(d), factorize_signed(d), factorize_integer(d)
    for f in (u, s, z):
        if f is not None:
            assert f.product() == d
    if u is not None:
        assert s is not None
    if s is not None:
        assert z is not None


def test_factorization_json():
    f = Factorization((None, (0, 1), (1, -1)))
    assert f.to_json() == [None, [0, 1], [1, -1]]
    assert len(f.factors()) == 3
