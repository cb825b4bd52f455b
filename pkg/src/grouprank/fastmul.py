"""Group algebra multiplication by table convolution, abelian transforms, and block decomposition.

Every strategy counts its bilinear multiplications (products in which one
factor depends on x and the other on y) so strategies can be compared.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from . import kernels
from .algebra import group_algebra
from .bilinear import (
    BilinearAlgorithm,
    character_table_abelian,
    direct_sum,
    evaluate,
    matrix_algo_recursive,
    roots_of_unity,
    schoolbook_matrix_algo,
)
from .fields import FieldError, FieldSpec, inverse
from .groups import FiniteGroup, abelian_coordinates, exponent, symmetric, symmetric_permutations

STRASSEN_CUTOFF = 2


class MulError(ValueError):
    pass


@dataclass
class OpCounter:
    bilinear: int = 0
    linear: int = 0  # multiplications by constants plus additions in the linear stages

    def add(self, bilinear: int = 0, linear: int = 0) -> None:
        self.bilinear += bilinear
        self.linear += linear


def _check_len(G: FiniteGroup, *vecs):
    for v in vecs:
        if len(v) != G.order:
            raise MulError(f"vector length {len(v)} != group order {G.order}")


def naive_mul(G: FiniteGroup, field, x, y, counter: OpCounter | None = None) -> np.ndarray:
    F = FieldSpec.parse(field)
    _check_len(G, x, y)
    n = G.order
    if counter is not None:
        counter.add(n * n, n * n)
    if F.q is not None:
        return kernels.convolve_mod(G.table, np.ascontiguousarray(x, dtype=np.int64) % F.q,
                                    np.ascontiguousarray(y, dtype=np.int64) % F.q, F.q)
    return group_algebra(G, F).mul(x, y)


# abelian transforms


def _is_power_of_two(m: int) -> bool:
    return m > 0 and m & (m - 1) == 0


class AbelianTransform:
    """Multidimensional DFT over GF(q) for an abelian group, one axis per cyclic factor."""

    def __init__(self, G: FiniteGroup, q: int):
        if not G.is_abelian():
            raise MulError(f"{G.label or 'group'} is not abelian")
        if G.order % q == 0:
            raise MulError(f"q = {q} divides the group order")
        e = exponent(G)
        if (q - 1) % e:
            raise MulError(f"GF({q}) lacks a primitive {e}-th root of unity (need q = 1 mod {e})")
        self.G, self.q = G, q
        self.moduli, coords = abelian_coordinates(G)
        self.pos = np.ravel_multi_index(coords.T, self.moduli) if self.moduli else np.zeros(1, dtype=np.int64)
        self.roots = [roots_of_unity(q, m) for m in self.moduli]
        self.n_inv = pow(G.order, -1, q)

    def _axis(self, T: np.ndarray, s: int, root: int, counter) -> np.ndarray:
        m, q = self.moduli[s], self.q
        moved = np.moveaxis(T, s, -1)
        shape = moved.shape
        rows = np.ascontiguousarray(moved.reshape(-1, m), dtype=np.int64)
        if _is_power_of_two(m):
            rows = kernels.ntt_rows(rows, root, q)
            ops = rows.shape[0] * m * max(1, int(math.log2(m))) * 2
        else:
            k = np.arange(m, dtype=np.int64)
            W = np.array([[pow(root, int(a * b), q) for b in k] for a in k], dtype=np.int64)
            rows = kernels.dft_rows(rows, W, q)
            ops = rows.shape[0] * m * m * 2
        if counter is not None:
            counter.add(linear=ops)
        return np.moveaxis(np.asarray(rows).reshape(shape), -1, s)

    def forward(self, x, counter=None) -> np.ndarray:
        T = np.zeros(self.G.order, dtype=np.int64)
        T[self.pos] = np.asarray(x, dtype=np.int64) % self.q
        T = T.reshape(self.moduli) if self.moduli else T
        for s, r in enumerate(self.roots):
            T = self._axis(T, s, r, counter)
        return T.reshape(-1)

    def inverse(self, X, counter=None) -> np.ndarray:
        T = np.asarray(X, dtype=np.int64).reshape(self.moduli) if self.moduli else np.asarray(X)
        for s, r in enumerate(self.roots):
            T = self._axis(T, s, pow(r, -1, self.q), counter)
        flat = T.reshape(-1) * self.n_inv % self.q
        return flat[self.pos]


def ntt_mul(G: FiniteGroup, q: int, x, y, counter: OpCounter | None = None,
            transform: AbelianTransform | None = None) -> np.ndarray:
    _check_len(G, x, y)
    tr = transform or AbelianTransform(G, q)
    X = tr.forward(x, counter)
    Y = tr.forward(y, counter)
    if counter is not None:
        counter.add(bilinear=G.order)
    return tr.inverse(X * Y % q, counter)


# block decomposition


@dataclass(eq=False)
class DecompositionMap:
    """Linear map k[G] -> prod_tau D_tau^(n_tau x n_tau); column g is the image of g.

    Block coordinates are concatenated; a block with d = 1 is an n x n matrix
    stored row-major.
    """

    matrix: np.ndarray
    blocks: list[tuple[int, int]]
    field: FieldSpec
    verified: bool = field(default=False, repr=False)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def offsets(self) -> list[int]:
        out, k = [], 0
        for n, d in self.blocks:
            out.append(k)
            k += n * n * d
        return out

    def check_shape(self) -> None:
        total = sum(n * n * d for n, d in self.blocks)
        if self.matrix.shape != (total, total):
            raise MulError(f"blocks account for dimension {total}, matrix is {self.matrix.shape}")

    def inverse_matrix(self) -> np.ndarray:
        inv = getattr(self, "_inverse", None)
        if inv is None:
            inv = inverse(self.matrix, self.field)
            self._inverse = inv
        return inv


def block_product(dmap: DecompositionMap, X, Y) -> np.ndarray:
    """Schoolbook product in the block algebra (the reference used by verification)."""
    F = dmap.field
    Z = F.zeros(dmap.dim)
    for (n, d), off in zip(dmap.blocks, dmap.offsets()):
        if d != 1:
            raise MulError("blocks over division algebras of degree > 1 are not supported")
        a = X[off: off + n * n].reshape(n, n)
        b = Y[off: off + n * n].reshape(n, n)
        Z[off: off + n * n] = F.reduce(a.dot(b)).reshape(-1)
    return Z


@dataclass(frozen=True)
class IsoResult:
    ok: bool
    failing_pair: tuple[int, int] | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def verify_isomorphism(dmap: DecompositionMap, G: FiniteGroup, field=None) -> IsoResult:
    """Complete check: the map is invertible and multiplicative on every basis pair."""
    F = FieldSpec.parse(field) if field is not None else dmap.field
    if F != dmap.field:
        return IsoResult(False, None, f"field mismatch: {F} vs {dmap.field}")
    dmap.check_shape()
    if dmap.dim != G.order:
        return IsoResult(False, None, f"map dimension {dmap.dim} != group order {G.order}")
    try:
        dmap.inverse_matrix()
    except FieldError:
        return IsoResult(False, None, "matrix is singular")
    M = dmap.matrix
    cols = [M[:, g] for g in range(G.order)]
    for i in range(G.order):
        for j in range(G.order):
            lhs = cols[int(G.table[i, j])]
            if not F.equal(lhs, block_product(dmap, cols[i], cols[j])):
                return IsoResult(False, (i, j), "not multiplicative")
    dmap.verified = True
    return IsoResult(True)


@lru_cache(maxsize=None)
def block_algorithm(n: int, field: FieldSpec, cutoff: int = STRASSEN_CUTOFF) -> BilinearAlgorithm:
    """Algorithm used for one n x n block: Strassen recursion from the cutoff up."""
    if n < cutoff:
        return schoolbook_matrix_algo(n, field)
    return matrix_algo_recursive(n, field)


def decomposed_mul(dmap: DecompositionMap, x, y, counter: OpCounter | None = None,
                   cutoff: int = STRASSEN_CUTOFF) -> np.ndarray:
    if not dmap.verified:
        raise MulError("decomposition map has not been verified")
    F = dmap.field
    x = F.array(x) if F.q is None else np.asarray(x, dtype=np.int64) % F.q
    y = F.array(y) if F.q is None else np.asarray(y, dtype=np.int64) % F.q
    if len(x) != dmap.dim or len(y) != dmap.dim:
        raise MulError(f"expected vectors of length {dmap.dim}")
    M, Minv = dmap.matrix, dmap.inverse_matrix()
    X, Y = F.dot(M, x), F.dot(M, y)
    Z = F.zeros(dmap.dim)
    for (n, d), off in zip(dmap.blocks, dmap.offsets()):
        if d != 1:
            raise MulError("blocks over division algebras of degree > 1 are not supported")
        algo = block_algorithm(n, F, cutoff)
        sl = slice(off, off + n * n)
        Z[sl] = evaluate(algo, X[sl], Y[sl])
        if counter is not None:
            counter.add(bilinear=len(algo))
    if counter is not None:
        counter.add(linear=3 * 2 * dmap.dim ** 2)
    return F.dot(Minv, Z)


def decomposition_algorithm(dmap: DecompositionMap, cutoff: int = STRASSEN_CUTOFF) -> BilinearAlgorithm:
    """The bilinear algorithm that :func:`decomposed_mul` executes, written in the group basis."""
    F = dmap.field
    algo = None
    for n, d in dmap.blocks:
        if d != 1:
            raise MulError("blocks over division algebras of degree > 1 are not supported")
        b = block_algorithm(n, F, cutoff)
        algo = b if algo is None else direct_sum(algo, b)
    M, Minv = dmap.matrix, dmap.inverse_matrix()
    n = dmap.dim
    return BilinearAlgorithm((n, n, n), F, F.dot(algo.U, M), F.dot(algo.V, M),
                             F.dot(algo.W, Minv.T), "decomposition")


# built-in maps


def _standard_rep_s3(perm, F):
    """Matrix of the permutation on span(e0 - e1, e1 - e2) in that basis."""
    basis = F.array([[1, -1, 0], [0, 1, -1]])

    def act(v):
        w = F.zeros(3)
        for i in range(3):
            w[perm[i]] = v[i]
        return w

    # coordinates c with c @ basis = act(b): solve using the first two entries
    B2 = basis[:, :2]  # rows (1,-1), (0,1): invertible
    Binv = inverse(B2, F)
    rows = [F.dot(act(b)[:2], Binv) for b in basis]
    # column j of the matrix holds the coordinates of g(b_j)
    return F.array(np.array(rows, dtype=object).T)


def s3_map(field="Q") -> DecompositionMap:
    """k[S3] -> k x k x k^(2x2) via the trivial, sign and standard representations."""
    F = FieldSpec.parse(field)
    if F.q in (2, 3):
        raise MulError("k[S3] is not semisimple in characteristic 2 or 3")
    perms = symmetric_permutations(3)
    cols = []
    for p in perms:
        inversions = sum(1 for i in range(3) for j in range(i + 1, 3) if p[i] > p[j])
        sign = -1 if inversions % 2 else 1
        rho = _standard_rep_s3(p, F)
        cols.append([F.elem(1), F.elem(sign)] + list(rho.reshape(-1)))
    M = F.array(np.array(cols, dtype=object).T)
    dmap = DecompositionMap(M, [(1, 1), (1, 1), (2, 1)], F)
    if not verify_isomorphism(dmap, symmetric(3)):
        raise MulError("built-in S3 map failed verification")
    return dmap


def dft_map(G: FiniteGroup, q: int) -> DecompositionMap:
    X, _, _ = character_table_abelian(G, q)
    F = FieldSpec(q)
    dmap = DecompositionMap(X.copy(), [(1, 1)] * G.order, F)
    if not verify_isomorphism(dmap, G):
        raise MulError("character map failed verification")
    return dmap


# file format


def write_map(dmap: DecompositionMap, path) -> None:
    F = dmap.field
    lines = [f"dim {dmap.dim}", f"field {F.token()}",
             "blocks " + " ".join(f"{n}:{d}" for n, d in dmap.blocks)]
    lines += [" ".join(F.fmt(c) for c in row) for row in dmap.matrix]
    Path(path).write_text("\n".join(lines) + "\n")


def read_map(path) -> DecompositionMap:
    rows = [ln.split() for ln in Path(path).read_text().splitlines() if ln.strip() and not ln.startswith("#")]
    try:
        head = {r[0]: r[1:] for r in rows[:3]}
        dim = int(head["dim"][0])
        F = FieldSpec.parse(head["field"][0])
        blocks = [tuple(int(v) for v in b.split(":")) for b in head["blocks"]]
        body = rows[3:]
        if len(body) != dim or any(len(r) != dim for r in body):
            raise ValueError(f"expected {dim} rows of {dim} entries")
        M = F.array([[c for c in r] for r in body])
    except (KeyError, ValueError, IndexError) as exc:
        raise MulError(f"{path}: malformed decomposition map ({exc})") from None
    dmap = DecompositionMap(M, blocks, F)
    dmap.check_shape()
    return dmap


# comparison


@dataclass
class OpCountReport:
    order: int
    counts: dict  # strategy -> OpCounter

    @property
    def best(self) -> str:
        return min(self.counts, key=lambda k: (self.counts[k].bilinear, self.counts[k].linear, k))

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "bilinear": {k: c.bilinear for k, c in self.counts.items()},
            "linear": {k: c.linear for k, c in self.counts.items()},
            "best": self.best,
        }


def opcount_compare(G: FiniteGroup, field, dmap: DecompositionMap | None = None,
                    rng: np.random.Generator | None = None) -> OpCountReport:
    """Run each available strategy once on random inputs and check they agree."""
    F = FieldSpec.parse(field)
    rng = rng or np.random.default_rng(0)
    x, y = F.random_vector(rng, G.order), F.random_vector(rng, G.order)
    counts = {"naive": OpCounter()}
    ref = naive_mul(G, F, x, y, counts["naive"])
    results = {}
    if F.q is not None and G.is_abelian():
        try:
            tr = AbelianTransform(G, F.q)
        except MulError:
            tr = None
        if tr is not None:
            counts["ntt"] = OpCounter()
            results["ntt"] = ntt_mul(G, F.q, x, y, counts["ntt"], tr)
    if dmap is not None:
        if not dmap.verified and not verify_isomorphism(dmap, G, F):
            raise MulError("decomposition map does not verify")
        counts["decomposed"] = OpCounter()
        results["decomposed"] = decomposed_mul(dmap, x, y, counts["decomposed"])
    for name, z in results.items():
        if not F.equal(z, ref):
            raise MulError(f"strategy {name} disagrees with the naive product")
    return OpCountReport(G.order, counts)
