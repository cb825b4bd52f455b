# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops; semantics mirror grouprank._kernels_py exactly."""
import numpy as np
from libc.stdint cimport int64_t


def convolve_mod(const int64_t[:, ::1] table, const int64_t[::1] x, const int64_t[::1] y, int64_t q):
    cdef Py_ssize_t n = x.shape[0], i, j
    cdef int64_t xi, k
    out = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] z = out
    for i in range(n):
        xi = x[i]
        if xi == 0:
            continue
        for j in range(n):
            k = table[i, j]
            z[k] = (z[k] + xi * y[j]) % q
    return out


def ntt_rows(int64_t[:, ::1] a, int64_t root, int64_t q):
    cdef Py_ssize_t rows = a.shape[0], m = a.shape[1]
    cdef Py_ssize_t r, i, j, k, bit, length, half, step
    cdef int64_t u, v, tmp
    tw_arr = np.empty(m, dtype=np.int64)
    cdef int64_t[::1] tw = tw_arr
    if m == 0:
        return np.asarray(a)
    tw[0] = 1
    for k in range(1, m):
        tw[k] = tw[k - 1] * root % q
    for r in range(rows):
        j = 0
        for i in range(1, m):
            bit = m >> 1
            while j & bit:
                j ^= bit
                bit >>= 1
            j ^= bit
            if i < j:
                tmp = a[r, i]
                a[r, i] = a[r, j]
                a[r, j] = tmp
        length = 2
        while length <= m:
            half = length >> 1
            step = m // length
            for i in range(0, m, length):
                for k in range(half):
                    u = a[r, i + k]
                    v = a[r, i + k + half] * tw[k * step] % q
                    a[r, i + k] = (u + v) % q
                    a[r, i + k + half] = (u - v + q) % q
            length <<= 1
    return np.asarray(a)


def dft_rows(const int64_t[:, ::1] a, const int64_t[:, ::1] W, int64_t q):
    cdef Py_ssize_t rows = a.shape[0], m = a.shape[1], r, k, j
    cdef int64_t acc
    out = np.empty((rows, m), dtype=np.int64)
    cdef int64_t[:, ::1] o = out
    for r in range(rows):
        for k in range(m):
            acc = 0
            for j in range(m):
                acc = (acc + a[r, j] * W[k, j]) % q
            o[r, k] = acc
    return out


cdef int _rank_mod(int64_t* M, int rows, int cols, int64_t q):
    cdef int rk = 0, c, i, p, jj
    cdef int64_t inv, f, t
    for c in range(cols):
        if rk == rows:
            break
        p = -1
        for i in range(rk, rows):
            if M[i * cols + c] % q != 0:
                p = i
                break
        if p < 0:
            continue
        if p != rk:
            for jj in range(cols):
                t = M[p * cols + jj]
                M[p * cols + jj] = M[rk * cols + jj]
                M[rk * cols + jj] = t
        # inverse by Fermat (q prime, small)
        inv = 1
        t = M[rk * cols + c] % q
        f = q - 2
        while f > 0:
            if f & 1:
                inv = inv * t % q
            t = t * t % q
            f >>= 1
        for i in range(rk + 1, rows):
            f = M[i * cols + c] % q * inv % q
            if f:
                for jj in range(cols):
                    M[i * cols + jj] = ((M[i * cols + jj] - f * M[rk * cols + jj]) % q + q) % q
        rk += 1
    return rk


cdef int _flat_rank(int64_t* z, int n, int64_t q):
    cdef int64_t buf[64]
    cdef int i, j, k, best = 0, rk
    cdef int nn = n * n
    # mode 1: rows i, cols (j,k)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                buf[i * nn + j * n + k] = z[i * nn + j * n + k]
    rk = _rank_mod(buf, n, nn, q)
    if rk > best:
        best = rk
    for i in range(n):
        for j in range(n):
            for k in range(n):
                buf[j * nn + i * n + k] = z[i * nn + j * n + k]
    rk = _rank_mod(buf, n, nn, q)
    if rk > best:
        best = rk
    for i in range(n):
        for j in range(n):
            for k in range(n):
                buf[k * nn + i * n + j] = z[i * nn + j * n + k]
    rk = _rank_mod(buf, n, nn, q)
    if rk > best:
        best = rk
    return best


cdef Py_ssize_t _lookup(const int64_t[::1] codes, int64_t key):
    cdef Py_ssize_t lo = 0, hi = codes.shape[0] - 1, mid
    while lo <= hi:
        mid = (lo + hi) >> 1
        if codes[mid] == key:
            return mid
        if codes[mid] < key:
            lo = mid + 1
        else:
            hi = mid - 1
    return -1


def rank_search(const int64_t[:, ::1] rank1, const int64_t[::1] sorted_codes,
                const int64_t[::1] code_index, const int64_t[::1] target,
                int64_t q, int r, int n):
    """Lexicographically first strictly increasing index tuple of length r summing to target."""
    cdef Py_ssize_t R = rank1.shape[0], L = rank1.shape[1]
    cdef Py_ssize_t depth, k, pos
    cdef int64_t code, pw
    cdef long long nodes = 0
    if L > 64:
        raise ValueError("tensor too large for the compiled search")
    res_arr = np.zeros((r + 1, L), dtype=np.int64)
    idx_arr = np.full(r + 1, -1, dtype=np.int64)
    cdef int64_t[:, ::1] res = res_arr
    cdef int64_t[::1] idx = idx_arr
    for k in range(L):
        res[0, k] = target[k] % q
    if r == 0:
        for k in range(L):
            if res[0, k]:
                return None, 0
        return (), 0
    if r < n and _flat_rank(&res[0, 0], n, q) > r:
        return None, 0
    if r == 1:
        code = 0
        pw = 1
        for k in range(L):
            code += res[0, k] * pw
            pw *= q
        pos = _lookup(sorted_codes, code)
        if pos >= 0:
            return (int(code_index[pos]),), 1
        return None, 1
    depth = 0
    idx[0] = -1
    while depth >= 0:
        idx[depth] += 1
        if idx[depth] >= R:
            depth -= 1
            continue
        nodes += 1
        for k in range(L):
            res[depth + 1, k] = (res[depth, k] - rank1[idx[depth], k] + q) % q
        if depth + 1 == r - 1:
            code = 0
            pw = 1
            for k in range(L):
                code += res[depth + 1, k] * pw
                pw *= q
            pos = _lookup(sorted_codes, code)
            if pos >= 0 and code_index[pos] > idx[depth]:
                return tuple(int(idx[k]) for k in range(r - 1)) + (int(code_index[pos]),), nodes
            continue
        if r - (depth + 1) < n and _flat_rank(&res[depth + 1, 0], n, q) > r - (depth + 1):
            continue
        depth += 1
        idx[depth] = idx[depth - 1]
    return None, nodes
