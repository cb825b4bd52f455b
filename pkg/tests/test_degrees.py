import itertools
import math
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grouprank.degrees import (
    CharacterDegreeProfile,
    DegreeError,
    class_matrices,
    degrees,
    degrees_catalog,
    degrees_dixon,
    degrees_symmetric,
    dixon_prime,
    hook_length_degree,
    integer_partitions,
    _char_poly,
)
from grouprank.groups import build_group, conjugacy_classes


def count_syt(shape):
    """Standard Young tableaux of a shape, by removing corner cells recursively."""
    shape = tuple(r for r in shape if r)
    if sum(shape) <= 1:
        return 1
    total = 0
    for i, r in enumerate(shape):
        if i + 1 == len(shape) or shape[i + 1] < r:
            total += count_syt(shape[:i] + (r - 1,) + shape[i + 1:])
    return total


def brute_partitions(n):
    out = set()
    for k in range(1, n + 1):
        for c in itertools.combinations_with_replacement(range(1, n + 1), k):
            if sum(c) == n:
                out.add(tuple(sorted(c, reverse=True)))
    return out


@pytest.mark.parametrize("n", range(1, 9))
def test_partitions_match_enumeration(n):
    assert set(integer_partitions(n)) == brute_partitions(n)


@pytest.mark.parametrize("n", range(1, 8))
def test_hook_length_matches_tableaux_count(n):
    for shape in integer_partitions(n):
        assert hook_length_degree(shape) == count_syt(shape)


def test_symmetric_profiles():
    assert degrees_symmetric(3).degrees == (1, 1, 2)
    assert degrees_symmetric(4).degrees == (1, 1, 2, 3, 3)
    assert degrees_symmetric(5).degrees == (1, 1, 4, 4, 5, 5, 6)
    assert degrees_symmetric(6).t == 11 and degrees_symmetric(6).largest == 16


@pytest.mark.parametrize("spec", ["S:3", "S:4", "S:5", "Q8", "D:5", "D:6", "C:7", "A:2,2,2",
                                  "GL2:2", "GL2:3", "GL2:4", "F:5", "F:7", "F:11"])
def test_dixon_matches_catalog(spec):
    assert degrees_dixon(build_group(spec)).degrees == degrees_catalog(spec).degrees


@pytest.mark.parametrize("q,t", [(3, 7), (5, 9)])
def test_sl2_class_count(q, t):
    # q + 4 irreducible characters for odd q
    prof = degrees_dixon(build_group(f"SL2:{q}"))
    assert prof.t == t == conjugacy_classes(build_group(f"SL2:{q}")).count


def test_sl2_has_no_catalog():
    with pytest.raises(DegreeError):
        degrees_catalog("SL2:3")


def test_catalog_orders():
    assert degrees_catalog("GL2:3").group_order == 48
    assert degrees_catalog("F:7").degrees == (1,) * 6 + (6,)
    assert degrees_catalog("D:6").degrees == (1, 1, 1, 1, 2, 2)


def test_profile_invariant():
    with pytest.raises(DegreeError):
        CharacterDegreeProfile((1, 2), 6)
    with pytest.raises(DegreeError):
        CharacterDegreeProfile((), 0)


def test_stats():
    st_ = degrees_symmetric(4).stats
    assert st_.t(1) == 2 and st_.t(2) == 1 and st_.t(3) == 2
    assert st_.T(1) == 5 and st_.T(3) == 2 and st_.T(4) == 0 and st_.T(7) == 0


def test_dixon_prime():
    ell = dixon_prime(24, 12)
    assert ell % 12 == 1 and ell > 2 * math.sqrt(24)


def test_class_matrices_count_pairs():
    G = build_group("S:4")
    cc = conjugacy_classes(G)
    M = class_matrices(G, cc)
    sizes = cc.sizes()
    # sum_t c_rst |C_t| = |C_r| |C_s|
    for r in range(cc.count):
        for s in range(cc.count):
            assert sum(M[r, s, t] * sizes[t] for t in range(cc.count)) == sizes[r] * sizes[s]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(0, 100), min_size=4, max_size=4), min_size=4, max_size=4))
def test_char_poly_against_sympy(rows):
    import sympy

    q = 101
    ours = _char_poly(__import__("numpy").array(rows, dtype="int64"), q)
    x = sympy.symbols("x")
    ref = sympy.Poly(sympy.Matrix(rows).charpoly(x).as_expr(), x, modulus=q)
    coeffs = [int(c) % q for c in reversed(ref.all_coeffs())]
    assert [c % q for c in ours] == coeffs


def test_dispatch():
    assert degrees("S:4", method="catalog").degrees == degrees("S:4").degrees
    assert Counter(degrees("Q8").degrees) == Counter({1: 4, 2: 1})
