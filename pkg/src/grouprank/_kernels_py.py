"""Pure-Python/numpy versions of the compiled kernels (same signatures, same results)."""
from __future__ import annotations

import numpy as np


def convolve_mod(table, x, y, q):
    n = len(x)
    z = np.zeros(n, dtype=np.int64)
    for i in np.nonzero(x)[0]:
        # rows of a group table are permutations, so the fancy update has no collisions
        row = table[i]
        z[row] = (z[row] + int(x[i]) * y) % q
    return z


def ntt_rows(a, root, q):
    rows, m = a.shape
    if m == 0:
        return a
    rev = np.zeros(m, dtype=np.int64)
    bits = m.bit_length() - 1
    for i in range(m):
        rev[i] = int(format(i, f"0{bits}b")[::-1], 2) if bits else 0
    a[:] = a[:, rev]
    tw = np.empty(m, dtype=np.int64)
    tw[0] = 1
    for k in range(1, m):
        tw[k] = tw[k - 1] * root % q
    length = 2
    while length <= m:
        half = length // 2
        w = tw[:: m // length][:half]
        blocks = a.reshape(rows, m // length, length)
        u = blocks[:, :, :half].copy()
        v = blocks[:, :, half:] * w % q
        blocks[:, :, :half] = (u + v) % q
        blocks[:, :, half:] = (u - v) % q
        length *= 2
    return a


def dft_rows(a, W, q):
    out = np.zeros(a.shape, dtype=np.int64)
    for j in range(a.shape[1]):
        out = (out + a[:, j, None] * W[:, j][None, :]) % q
    return out


def _rank_mod(M, q):
    M = [list(row) for row in M]
    rows, cols = len(M), len(M[0])
    rk = 0
    for c in range(cols):
        if rk == rows:
            break
        p = next((i for i in range(rk, rows) if M[i][c] % q), None)
        if p is None:
            continue
        M[rk], M[p] = M[p], M[rk]
        inv = pow(int(M[rk][c]), -1, q)
        for i in range(rk + 1, rows):
            f = M[i][c] * inv % q
            if f:
                M[i] = [(a - f * b) % q for a, b in zip(M[i], M[rk])]
        rk += 1
    return rk


def flat_rank(z, n, q):
    t = np.asarray(z).reshape(n, n, n)
    return max(
        _rank_mod(t.reshape(n, n * n).tolist(), q),
        _rank_mod(t.transpose(1, 0, 2).reshape(n, n * n).tolist(), q),
        _rank_mod(t.transpose(2, 0, 1).reshape(n, n * n).tolist(), q),
    )


def rank_search(rank1, sorted_codes, code_index, target, q, r, n):
    R, L = rank1.shape
    powers = np.array([q ** k for k in range(L)], dtype=np.int64)
    lookup = dict(zip(sorted_codes.tolist(), code_index.tolist()))
    target = np.asarray(target, dtype=np.int64) % q
    if r == 0:
        return ((), 0) if not target.any() else (None, 0)
    if r < n and flat_rank(target, n, q) > r:
        return None, 0
    if r == 1:
        j = lookup.get(int(target @ powers))
        return ((j,), 1) if j is not None else (None, 1)
    nodes = 0
    rank1_list = rank1
    # last level: residuals for every candidate at once, then a dictionary lookup
    stack = [(0, target, ())]
    while stack:
        start, res, chosen = stack.pop()
        depth = len(chosen)
        if depth == r - 2:
            cand = np.arange(start, R)
            if cand.size == 0:
                continue
            residuals = (res[None, :] - rank1_list[cand]) % q
            codes = residuals @ powers
            nodes += cand.size
            for k, code in enumerate(codes.tolist()):
                j = lookup.get(code)
                if j is not None and j > cand[k]:
                    return chosen + (int(cand[k]), j), nodes
            continue
        children = []
        for i in range(start, R):
            nodes += 1
            nres = (res - rank1_list[i]) % q
            remaining = r - depth - 1
            if remaining < n and flat_rank(nres, n, q) > remaining:
                continue
            children.append((i + 1, nres, chosen + (i,)))
        stack.extend(reversed(children))
    return None, nodes
