"""Bilinear algorithms: construction, evaluation, exact verification and exhaustive rank search.

An algorithm of length r for a bilinear map U x V -> W is a list of triples
``(u, v, w)``; it computes ``sum_r u(x) v(y) w``.  Here ``U``, ``V`` and
``W`` are coordinate spaces, so each triple is three coefficient vectors.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import kernels
from .algebra import FiniteDimAlgebra, matrix_algebra
from .fields import FieldSpec
from .groups import FiniteGroup, abelian_coordinates, exponent

MATRIX_RECURSION_LIMIT = 16
SEARCH_NODE_CAP = 5 * 10 ** 7


class AlgorithmError(ValueError):
    pass


class InfeasibleError(AlgorithmError):
    """The request is outside what can be computed at this scale."""


@dataclass(frozen=True, eq=False)
class BilinearAlgorithm:
    dims: tuple[int, int, int]
    field: FieldSpec
    U: np.ndarray  # r x dim U
    V: np.ndarray  # r x dim V
    W: np.ndarray  # r x dim W (row rho is the vector w_rho)
    label: str = ""

    def __post_init__(self):
        r = self.U.shape[0]
        du, dv, dw = self.dims
        if self.U.shape != (r, du) or self.V.shape != (r, dv) or self.W.shape != (r, dw):
            raise AlgorithmError("triple dimensions do not match the declared dims")

    def __len__(self):
        return self.U.shape[0]

    @property
    def length(self) -> int:
        return len(self)

    @classmethod
    def from_triples(cls, triples, dims, field: FieldSpec, label: str = "") -> BilinearAlgorithm:
        F = field
        if triples:
            U = F.array([t[0] for t in triples])
            V = F.array([t[1] for t in triples])
            W = F.array([t[2] for t in triples])
        else:
            U, V, W = (F.zeros((0, d)) for d in dims)
        return cls(tuple(dims), F, U, V, W, label)

    def triples(self):
        return list(zip(self.U, self.V, self.W))

    def tensor(self) -> np.ndarray:
        """sum_r u_r (x) v_r (x) w_r as a dim U x dim V x dim W array."""
        F = self.field
        du, dv, dw = self.dims
        if len(self) == 0:
            return F.zeros((du, dv, dw))
        UV = F.reduce(self.U[:, :, None] * self.V[:, None, :]).reshape(len(self), du * dv)
        return F.reduce(UV.T @ self.W).reshape(du, dv, dw)


def evaluate(algo: BilinearAlgorithm, x, y) -> np.ndarray:
    F = algo.field
    x = np.asarray(x, dtype=F.dtype)
    y = np.asarray(y, dtype=F.dtype)
    if x.shape != (algo.dims[0],) or y.shape != (algo.dims[1],):
        raise AlgorithmError(f"expected inputs of sizes {algo.dims[:2]}")
    if len(algo) == 0:
        return F.zeros(algo.dims[2])
    m = F.reduce(F.dot(algo.U, x) * F.dot(algo.V, y))
    return F.dot(m, algo.W)


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    failing_pair: tuple[int, int] | None = None

    def __bool__(self):
        return self.ok


def verify(algo: BilinearAlgorithm, A: FiniteDimAlgebra) -> VerifyResult:
    """Exact check of sum_r u_r(e_i) v_r(e_j) w_r == e_i e_j on every basis pair."""
    if algo.field != A.field:
        raise AlgorithmError(f"field mismatch: {algo.field} vs {A.field}")
    if algo.dims != (A.dim, A.dim, A.dim):
        raise AlgorithmError(f"algorithm dims {algo.dims} do not fit an algebra of dim {A.dim}")
    F = A.field
    diff = F.reduce(algo.tensor() - A.constants)
    bad = np.argwhere(np.any(diff != 0, axis=2))
    if len(bad):
        i, j = bad[0]
        return VerifyResult(False, (int(i), int(j)))
    return VerifyResult(True)


def trivial_algorithm(A: FiniteDimAlgebra) -> BilinearAlgorithm:
    """One triple per basis pair: (e_i*, e_j*, e_i e_j)."""
    F, n = A.field, A.dim
    U = F.zeros((n * n, n))
    V = F.zeros((n * n, n))
    W = F.zeros((n * n, n))
    for i in range(n):
        for j in range(n):
            U[i * n + j, i] = F.elem(1)
            V[i * n + j, j] = F.elem(1)
            W[i * n + j] = A.basis_product(i, j)
    return BilinearAlgorithm((n, n, n), F, U, V, W, f"trivial[{A.label}]")


# Strassen and recursive matrix multiplication


def strassen_2x2(field: FieldSpec) -> BilinearAlgorithm:
    """Strassen's 7-multiplication scheme; basis E_11, E_12, E_21, E_22."""
    F = FieldSpec.parse(field)
    # (u, v, w) in terms of a11 a12 a21 a22 / b.. / c..
    rows = [
        ((1, 0, 0, 1), (1, 0, 0, 1), (1, 0, 0, 1)),    # M1 = (a11+a22)(b11+b22)
        ((0, 0, 1, 1), (1, 0, 0, 0), (0, 0, 1, -1)),   # M2 = (a21+a22) b11
        ((1, 0, 0, 0), (0, 1, 0, -1), (0, 1, 0, 1)),   # M3 = a11 (b12-b22)
        ((0, 0, 0, 1), (-1, 0, 1, 0), (1, 0, 1, 0)),   # M4 = a22 (b21-b11)
        ((1, 1, 0, 0), (0, 0, 0, 1), (-1, 1, 0, 0)),   # M5 = (a11+a12) b22
        ((-1, 0, 1, 0), (1, 1, 0, 0), (0, 0, 0, 1)),   # M6 = (a21-a11)(b11+b12)
        ((0, 1, 0, -1), (0, 0, 1, 1), (1, 0, 0, 0)),   # M7 = (a12-a22)(b21+b22)
    ]
    return BilinearAlgorithm.from_triples(rows, (4, 4, 4), F, f"strassen[{F}]")


def _kron_matrix_algorithms(outer: BilinearAlgorithm, inner: BilinearAlgorithm, a: int, b: int):
    """Tensor an algorithm for a x a matrices with one for b x b matrices -> (ab) x (ab)."""
    F = outer.field
    N = a * b
    # entry (r1, c1) of the outer block and (r2, c2) of the inner block -> (r1*b + r2, c1*b + c2)
    perm = np.empty(N * N, dtype=np.int64)
    for r1, c1, r2, c2 in itertools.product(range(a), range(a), range(b), range(b)):
        perm[(r1 * a + c1) * b * b + r2 * b + c2] = (r1 * b + r2) * N + (c1 * b + c2)

    def kron(X, Y):
        K = F.reduce(np.einsum("ri,sj->rsij", X, Y)).reshape(len(X) * len(Y), -1)
        out = F.zeros(K.shape)
        out[:, perm] = K
        return out

    return kron(outer.U, inner.U), kron(outer.V, inner.V), kron(outer.W, inner.W)


def recursive_matrix_length(n: int) -> int:
    """Length of :func:`matrix_algo_recursive` without building it: 7^ceil(log2 n)."""
    if n < 1:
        raise AlgorithmError("n must be positive")
    return 7 ** math.ceil(math.log2(n)) if n > 1 else 1


def matrix_algo_recursive(n: int, field: FieldSpec) -> BilinearAlgorithm:
    """Strassen recursion on n x n matrices zero-padded to the next power of two."""
    F = FieldSpec.parse(field)
    if n < 1:
        raise AlgorithmError("n must be positive")
    if n > MATRIX_RECURSION_LIMIT:
        raise InfeasibleError(
            f"n = {n} > {MATRIX_RECURSION_LIMIT}: would materialise {recursive_matrix_length(n)} triples"
        )
    if n == 1:
        one = F.array([[1]])
        return BilinearAlgorithm((1, 1, 1), F, one, one.copy(), one.copy(), f"matrix1[{F}]")
    k = math.ceil(math.log2(n))
    S = strassen_2x2(F)
    U, V, W, size = S.U, S.V, S.W, 2
    for _ in range(k - 1):
        cur = BilinearAlgorithm((size * size,) * 3, F, U, V, W)
        U, V, W = _kron_matrix_algorithms(S, cur, 2, size)
        size *= 2
    # keep only the coordinates of the top-left n x n block
    keep = [a * size + b for a in range(n) for b in range(n)]
    d = n * n
    return BilinearAlgorithm((d, d, d), F, U[:, keep], V[:, keep], W[:, keep], f"strassen-rec{n}[{F}]")


def schoolbook_matrix_algo(n: int, field: FieldSpec) -> BilinearAlgorithm:
    """The n^3 products a_ab b_bc."""
    F = FieldSpec.parse(field)
    d = n * n
    U, V, W = F.zeros((n ** 3, d)), F.zeros((n ** 3, d)), F.zeros((n ** 3, d))
    one = F.elem(1)
    for r, (a, b, c) in enumerate(itertools.product(range(n), repeat=3)):
        U[r, a * n + b] = one
        V[r, b * n + c] = one
        W[r, a * n + c] = one
    return BilinearAlgorithm((d, d, d), F, U, V, W, f"schoolbook{n}[{F}]")


def direct_sum(a: BilinearAlgorithm, b: BilinearAlgorithm) -> BilinearAlgorithm:
    """Block algorithm for A x B from algorithms for A and B."""
    if a.field != b.field:
        raise AlgorithmError(f"field mismatch: {a.field} vs {b.field}")
    F = a.field

    def block(X, Y):
        out = F.zeros((len(X) + len(Y), X.shape[1] + Y.shape[1]))
        out[: len(X), : X.shape[1]] = X
        out[len(X):, X.shape[1]:] = Y
        return out

    dims = tuple(x + y for x, y in zip(a.dims, b.dims))
    return BilinearAlgorithm(dims, F, block(a.U, b.U), block(a.V, b.V), block(a.W, b.W),
                             f"{a.label} + {b.label}")


def field_algorithm(field: FieldSpec) -> BilinearAlgorithm:
    return matrix_algo_recursive(1, field)


# polynomial interpolation for k[X]/(f)


def _poly_mul(a, b, F):
    out = [F.elem(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = F.reduce(out[i + j] + x * y)
    return out


def _poly_mod(a, f, F):
    a = list(a)
    d = len(f) - 1
    for top in range(len(a) - 1, d - 1, -1):
        c = a[top]
        if c != 0:
            for k in range(d + 1):
                a[top - d + k] = F.reduce(a[top - d + k] - c * f[k])
    a = a[:d] + [F.elem(0)] * max(0, d - len(a))
    return a


def interpolation_ext_algo(d: int, modulus, field: FieldSpec) -> BilinearAlgorithm:
    """Length 2d-1 algorithm for k[X]/(f): evaluate at 2d-2 points and at infinity.

    The point at infinity reads off the product of leading coefficients; its
    w-vector is prod (X - a_k) reduced mod f, while the finite points use
    Lagrange basis polynomials on the same 2d-2 nodes, so that
    ab = sum_k a(a_k) b(a_k) L_k + lc(a) lc(b) prod(X - a_k).
    """
    F = FieldSpec.parse(field)
    f = [F.elem(c) for c in modulus]
    if len(f) != d + 1 or f[-1] != F.elem(1):
        raise AlgorithmError(f"modulus must be monic of degree {d}")
    npts = 2 * d - 2
    if F.size is not None and F.size < npts:
        raise InfeasibleError(
            f"field {F} has {F.size} elements; interpolation needs at least 2d-2 = {npts}"
        )
    pts = [F.elem(k) for k in range(npts)]
    triples = []
    for a in pts:
        ev = [F.reduce(a ** i) if F.q is None else pow(int(a), i, F.q) for i in range(d)]
        others = [b for b in pts if b != a]
        num = [F.elem(1)]
        den = F.elem(1)
        for b in others:
            num = _poly_mul(num, [F.reduce(-b), F.elem(1)], F)
            den = F.reduce(den * (a - b))
        inv = F.inv(den)
        lag = [F.reduce(c * inv) for c in num]
        triples.append((ev, ev, _poly_mod(lag, f, F)))
    lead = [F.elem(0)] * (d - 1) + [F.elem(1)]
    prod = [F.elem(1)]
    for b in pts:
        prod = _poly_mul(prod, [F.reduce(-b), F.elem(1)], F)
    triples.append((lead, lead, _poly_mod(prod, f, F)))
    return BilinearAlgorithm.from_triples(triples, (d, d, d), F, f"interp{d}[{F}]")


# abelian DFT


def roots_of_unity(q: int, m: int) -> int:
    """A primitive m-th root of unity in GF(q)."""
    if (q - 1) % m:
        raise AlgorithmError(f"GF({q}) has no primitive {m}-th root of unity")
    from sympy import primitive_root

    g = primitive_root(q)
    return pow(g, (q - 1) // m, q)


def character_table_abelian(G: FiniteGroup, q: int):
    """All characters of an abelian group with values in GF(q), rows = characters.

    Returns ``(X, moduli, coords)`` where ``X[k, g]`` is chi_k(g); the k-th
    character is indexed by the same mixed-radix exponent vector as elements.
    """
    if not G.is_abelian():
        raise AlgorithmError(f"{G.label or 'group'} is not abelian")
    if G.order % q == 0:
        raise AlgorithmError(f"q = {q} divides the group order")
    e = exponent(G)
    if (q - 1) % e:
        raise AlgorithmError(f"q = {q} is not 1 mod exponent {e}")
    moduli, coords = abelian_coordinates(G)
    zetas = [roots_of_unity(q, m) for m in moduli]
    n = G.order
    X = np.ones((n, n), dtype=np.int64)
    for s, (m, z) in enumerate(zip(moduli, zetas)):
        powers = np.array([pow(z, k, q) for k in range(m)], dtype=np.int64)
        expo = np.outer(coords[:, s], coords[:, s]) % m  # character index k, element g
        X = X * powers[expo] % q
    return X, moduli, coords


def dft_abelian_algo(G: FiniteGroup, q: int) -> BilinearAlgorithm:
    F = FieldSpec(q)
    X, _, _ = character_table_abelian(G, q)
    n = G.order
    ninv = pow(n, -1, q)
    # w_k[g] = chi_k(g^-1) / n
    W = X[:, G.inverses] * ninv % q
    return BilinearAlgorithm((n, n, n), F, X.copy(), X.copy(), W, f"dft[{G.label}/GF({q})]")


# exhaustive rank search


def _nonzero_vectors(q: int, n: int, normalized: bool):
    out = []
    for v in itertools.product(range(q), repeat=n):
        if not any(v):
            continue
        if normalized and next(c for c in v if c) != 1:
            continue
        out.append(v)
    return out


def rank_one_tensors(q: int, n: int):
    """Every rank-one n x n x n tensor over GF(q) exactly once, with its (u, v, w)."""
    norm = _nonzero_vectors(q, n, True)
    full = _nonzero_vectors(q, n, False)
    triples = [(u, v, w) for u in norm for v in norm for w in full]
    T = np.array(
        [np.einsum("i,j,k->ijk", u, v, w).reshape(-1) % q for u, v, w in triples], dtype=np.int64
    )
    return triples, T


@dataclass(frozen=True)
class RankResult:
    rank: int | None  # None: greater than r_max
    r_max: int
    witness: BilinearAlgorithm | None
    nodes: int

    @property
    def exceeds(self) -> bool:
        return self.rank is None


def search_size_estimate(q: int, n: int, r: int) -> int:
    R = ((q ** n - 1) ** 3) // ((q - 1) ** 2)
    return math.comb(R, max(r - 1, 0))


def brute_force_rank(A: FiniteDimAlgebra, r_max: int, node_cap: int = SEARCH_NODE_CAP,
                     backend=None) -> RankResult:
    """Minimal length of a bilinear algorithm for A, by exhaustive search up to r_max.

    Candidate rank-one terms are normalised (u and v start with coefficient
    1), each term is used at most once and terms are taken in increasing
    index order, so every decomposition is visited once; the last term is
    found by lookup, and prefixes whose residual has a flattening rank above
    the remaining budget are abandoned.
    """
    F = A.field
    q, n = F.q, A.dim
    if q not in (2, 3):
        raise InfeasibleError("exhaustive rank search supports GF(2) and GF(3) only")
    if n > 3:
        raise InfeasibleError(f"dim {n} > 3: search size ~{search_size_estimate(q, n, r_max):.3e}")
    if r_max > 6:
        raise InfeasibleError(f"r_max {r_max} > 6: search size ~{search_size_estimate(q, n, r_max):.3e}")
    kern = backend or kernels.backend
    triples, R1 = rank_one_tensors(q, n)
    powers = np.array([q ** k for k in range(n ** 3)], dtype=np.int64)
    codes = R1 @ powers
    order = np.argsort(codes)
    sorted_codes = np.ascontiguousarray(codes[order])
    code_index = np.ascontiguousarray(order.astype(np.int64))
    target = np.ascontiguousarray(A.constants.reshape(-1).astype(np.int64) % q)
    total_nodes = 0
    for r in range(0, r_max + 1):
        est = search_size_estimate(q, n, r)
        if est > node_cap:
            raise InfeasibleError(
                f"length {r} search over GF({q}), dim {n}: ~{est:.3e} prefixes exceeds cap {node_cap:.1e}"
            )
        found, nodes = kern.rank_search(R1, sorted_codes, code_index, target, q, r, n)
        total_nodes += nodes
        if found is not None:
            rows = [triples[i] for i in found]
            algo = BilinearAlgorithm.from_triples(rows, (n, n, n), F, f"search[{A.label}] r={r}")
            return RankResult(r, r_max, algo, total_nodes)
    return RankResult(None, r_max, None, total_nodes)


# file format


def write_algorithm(algo: BilinearAlgorithm, path) -> None:
    F = algo.field
    lines = [
        f"dims {' '.join(map(str, algo.dims))}",
        f"field {F.token()}",
        f"r {len(algo)}",
    ]
    for u, v, w in algo.triples():
        lines.append("u " + " ".join(F.fmt(c) for c in u))
        lines.append("v " + " ".join(F.fmt(c) for c in v))
        lines.append("w " + " ".join(F.fmt(c) for c in w))
    Path(path).write_text("\n".join(lines) + "\n")


def read_algorithm(path) -> BilinearAlgorithm:
    rows = [ln.split() for ln in Path(path).read_text().splitlines() if ln.strip() and not ln.startswith("#")]
    try:
        head = {r[0]: r[1:] for r in rows[:3]}
        dims = tuple(int(x) for x in head["dims"])
        F = FieldSpec.parse(head["field"][0])
        r = int(head["r"][0])
        body = rows[3:]
        if len(body) != 3 * r or len(dims) != 3:
            raise ValueError(f"expected {3 * r} coefficient rows")
        triples = []
        for k in range(r):
            block = body[3 * k: 3 * k + 3]
            if [b[0] for b in block] != ["u", "v", "w"]:
                raise ValueError("rows must come in u, v, w order")
            triples.append(tuple([Fraction(c) for c in b[1:]] for b in block))
    except (KeyError, ValueError, IndexError) as exc:
        raise AlgorithmError(f"{path}: malformed algorithm file ({exc})") from None
    for u, v, w in triples:
        if (len(u), len(v), len(w)) != dims:
            raise AlgorithmError(f"{path}: coefficient row lengths do not match dims {dims}")
    return BilinearAlgorithm.from_triples(triples, dims, F, str(path))


def matrix_target(n: int, field: FieldSpec) -> FiniteDimAlgebra:
    return matrix_algebra(n, field)
