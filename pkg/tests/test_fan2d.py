import pytest
from hypothesis import given
from hypothesis import strategies as st

from bottcube.fan2d import (
    NORMAL_PAIRS,
    Fan2D,
    cone_weights,
    det2,
    enumerate_fans,
    is_complete_smooth,
    normalize_at,
    semifree_vectors,
    winding_number,
)
from bottcube.intmat import transpose
from bottcube.quasitoric import CharMatrixCube, is_valid_characteristic
from bottcube.semifree import is_semifree

PRODUCT = Fan2D([(1, 0), (0, 1), (-1, 0), (0, -1)])
TWISTED = Fan2D([(1, 0), (0, 1), (-1, -2), (0, -1)])


def test_complete_smooth_examples():
    assert is_complete_smooth(PRODUCT)
    assert is_complete_smooth(TWISTED)
    assert not is_complete_smooth(Fan2D([(1, 0), (0, 1), (-2, -1)]))
    assert is_complete_smooth(Fan2D([(1, 0), (0, 1), (-1, -1)]))
    # going around twice has unit cones but winding number 2
    twice = Fan2D([(1, 0), (0, 1), (-1, 0), (0, -1)] * 2)
    assert all(det2(a, b) == 1 for a, b in twice.cones())
    assert winding_number(twice) == 2
    assert not is_complete_smooth(twice)
    assert not is_complete_smooth(Fan2D([(1, 0), (0, 1), (-1, 0), (-2, -2), (0, -1)]))


def test_semifree_examples():
    assert (1, 1) in semifree_vectors(PRODUCT)
    assert (1, 1) in semifree_vectors(TWISTED)
    assert semifree_vectors(Fan2D([(1, 0), (0, 1), (-1, 1), (0, -1)])) == []
    with pytest.raises(ValueError):
        semifree_vectors(Fan2D([(1, 0), (0, 1)]))


def test_enumeration_examples():
    small = [f.rays for f in enumerate_fans(4, 2)]
    for l3, l4 in NORMAL_PAIRS:
        assert ((1, 0), (0, 1), l3, l4) in small
    assert ((1, 0), (0, 1), (-1, -1)) in [f.rays for f in enumerate_fans(3, 1)]
    with pytest.raises(ValueError):
        list(enumerate_fans(2, 1))


def test_enumeration_is_sound_and_unique():
    fans = list(enumerate_fans(7, 3))
    assert len(fans) == len({f.rays for f in fans})
    assert all(is_complete_smooth(f) for f in fans)
    assert all(f.rays[:2] == ((1, 0), (0, 1)) for f in fans)
    assert all(max(abs(x) for r in f.rays for x in r) <= 3 for f in fans)


def test_enumeration_matches_brute_force():
    # every cyclic ray sequence of length m <= 5 with coordinates in [-2, 2]
    import itertools
    rays = [(x, y) for x in range(-2, 3) for y in range(-2, 3) if (x, y) != (0, 0)]
    brute = set()
    for m in (3, 4, 5):
        for rest in itertools.product(rays, repeat=m - 2):
            f = Fan2D([(1, 0), (0, 1), *rest])
            if is_complete_smooth(f):
                brute.add(f.rays)
    assert brute == {f.rays for f in enumerate_fans(5, 2)}


def test_semifree_closed_under_negation():
    for f in enumerate_fans(8, 4):
        vecs = set(semifree_vectors(f))
        assert vecs == {(-x, -y) for x, y in vecs}


def test_four_ray_fans_agree_with_quasitoric():
    for f in enumerate_fans(4, 6):
        if len(f) != 4:
            continue
        l3, l4 = f.rays[2], f.rays[3]
        # facet vectors lambda_3, lambda_4 are opposite to lambda_1, lambda_2
        c = CharMatrixCube(transpose((l3, l4)))
        assert is_valid_characteristic(c)
        fan_side = set(semifree_vectors(f))
        cube_side = {nu for nu in [(1, 1), (1, -1), (-1, 1), (-1, -1)] if is_semifree(c, nu)}
        assert fan_side == cube_side


def test_normalize_at():
    f = Fan2D([(1, 0), (0, 1), (-1, 2), (0, -1)])
    assert (1, -1) in semifree_vectors(f)
    g, nu = normalize_at(f, (1, -1))
    assert nu == (1, 1)
    assert is_complete_smooth(g) and g.rays[:2] == ((1, 0), (0, 1))
    assert (g.rays[2], g.rays[3]) in NORMAL_PAIRS
    assert normalize_at(PRODUCT, (1, 0)) is None


@given(st.integers(-5, 5), st.integers(-5, 5))
def test_cone_weights_reconstruct(x, y):
    a, b = (2, 1), (1, 1)
    k1, k2 = cone_weights((x, y), a, b)
    assert (k1 * a[0] + k2 * b[0], k1 * a[1] + k2 * b[1]) == (x, y)
