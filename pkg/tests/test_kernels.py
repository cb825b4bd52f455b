import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grouprank import kernels
from grouprank.algebra import group_algebra
from grouprank.bilinear import rank_one_tensors, roots_of_unity
from grouprank.fields import FieldSpec
from grouprank.groups import build_group

BACKENDS = kernels.backends()


def test_backend_selected():
    assert kernels.BACKEND in BACKENDS
    assert kernels.backend is BACKENDS[kernels.BACKEND]


def direct_convolution(table, x, y, q):
    z = [0] * len(x)
    for i in range(len(x)):
        for j in range(len(y)):
            z[table[i, j]] += int(x[i]) * int(y[j])
    return np.array([v % q for v in z], dtype=np.int64)


@pytest.mark.parametrize("name", sorted(BACKENDS))
@settings(max_examples=30, deadline=None)
@given(spec=st.sampled_from(["C:5", "S:3", "Q8", "D:5", "A:2,3"]), q=st.sampled_from([2, 7, 10007]),
       seed=st.integers(0, 2 ** 32 - 1))
def test_convolve_matches_direct_sum(name, spec, q, seed):
    G = build_group(spec)
    rng = np.random.default_rng(seed)
    x = rng.integers(0, q, G.order, dtype=np.int64)
    y = rng.integers(0, q, G.order, dtype=np.int64)
    out = BACKENDS[name].convolve_mod(G.table, x, y, q)
    assert np.array_equal(out, direct_convolution(G.table, x, y, q))


@pytest.mark.parametrize("name", sorted(BACKENDS))
@settings(max_examples=30, deadline=None)
@given(logm=st.integers(0, 6), q=st.sampled_from([193, 257, 7681]), rows=st.integers(1, 4),
       seed=st.integers(0, 2 ** 32 - 1))
def test_ntt_matches_dft_and_matrix_product(name, logm, q, rows, seed):
    m = 2 ** logm
    root = roots_of_unity(q, m)
    rng = np.random.default_rng(seed)
    a = rng.integers(0, q, (rows, m), dtype=np.int64)
    Wm = np.array([[pow(root, j * k, q) for j in range(m)] for k in range(m)], dtype=np.int64)
    ref = np.array([[sum(int(a[r, j]) * int(Wm[k, j]) for j in range(m)) % q for k in range(m)]
                    for r in range(rows)], dtype=np.int64)
    kern = BACKENDS[name]
    assert np.array_equal(kern.ntt_rows(a.copy(), root, q), ref)
    assert np.array_equal(kern.dft_rows(a.copy(), Wm, q), ref)


def _search_inputs(q, n, A):
    triples, R1 = rank_one_tensors(q, n)
    codes = R1 @ np.array([q ** k for k in range(n ** 3)], dtype=np.int64)
    order = np.argsort(codes)
    target = np.ascontiguousarray(A.constants.reshape(-1) % q, dtype=np.int64)
    return triples, R1, np.ascontiguousarray(codes[order]), np.ascontiguousarray(order.astype(np.int64)), target


@pytest.mark.parametrize("spec,q,r", [("C:2", 2, 2), ("C:2", 2, 3), ("C:3", 2, 3), ("C:3", 2, 4), ("C:2", 3, 2)])
def test_rank_search_backends_agree(spec, q, r):
    A = group_algebra(build_group(spec), FieldSpec(q))
    n = A.dim
    triples, R1, codes, index, target = _search_inputs(q, n, A)
    results = {name: kern.rank_search(R1, codes, index, target, q, r, n)[0] for name, kern in BACKENDS.items()}
    assert len(set(results.values())) == 1
    found = results["python"]
    if found is not None:
        total = R1[list(found)].sum(axis=0) % q
        assert np.array_equal(total, target)
