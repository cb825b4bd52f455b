"""Irreducible character degrees over an algebraically closed field of characteristic 0.

Three routes produce a :class:`CharacterDegreeProfile`:

* :func:`degrees_dixon` -- Burnside's class-matrix method run modulo a prime
  ``l = 1 (mod exponent)`` (Dixon's variant), for any group table;
* :func:`degrees_symmetric` -- hook-length formula per partition of n;
* :func:`degrees_catalog` -- closed forms for the named families.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from sympy import isprime
from sympy.utilities.iterables import partitions as _sympy_partitions

from .fields import FieldSpec, inverse, nullspace, rref
from .groups import FiniteGroup, GroupSpec, conjugacy_classes, exponent

SYMMETRIC_LIMIT = 40
DIXON_PRIME_CAP = 10 ** 7


class DegreeError(ValueError):
    pass


@dataclass(frozen=True)
class CharacterDegreeProfile:
    degrees: tuple[int, ...]
    group_order: int

    def __post_init__(self):
        degs = tuple(sorted(int(d) for d in self.degrees))
        object.__setattr__(self, "degrees", degs)
        if not degs or degs[0] < 1:
            raise DegreeError("degrees must be positive")
        if sum(d * d for d in degs) != self.group_order:
            raise DegreeError(
                f"sum of squared degrees {sum(d * d for d in degs)} != group order {self.group_order}"
            )

    @property
    def t(self) -> int:
        return len(self.degrees)

    @property
    def largest(self) -> int:
        return self.degrees[-1]

    def to_dict(self) -> dict:
        return {"group_order": self.group_order, "degrees": list(self.degrees)}

    @cached_property
    def stats(self) -> DegreeStats:
        return profile_stats(self)


@dataclass(frozen=True)
class DegreeStats:
    """``t[i]`` = number of degrees equal to i, ``T(i)`` = number of degrees >= i."""

    t_counts: dict
    cumulative: dict

    def t(self, i: int) -> int:
        return self.t_counts.get(i, 0)

    def T(self, i: int) -> int:
        if i in self.cumulative:
            return self.cumulative[i]
        return self.cumulative[max(self.cumulative)] if i < 1 else 0


def profile_stats(profile: CharacterDegreeProfile) -> DegreeStats:
    counts = Counter(profile.degrees)
    top = profile.largest
    cumulative = {}
    running = 0
    for i in range(top, 0, -1):
        running += counts.get(i, 0)
        cumulative[i] = running
    return DegreeStats(dict(sorted(counts.items())), dict(sorted(cumulative.items())))


# symmetric groups


def integer_partitions(n: int) -> list[tuple[int, ...]]:
    """Partitions of n as weakly decreasing tuples, in reverse lexicographic order."""
    out = []
    for p in _sympy_partitions(n):
        out.append(tuple(sorted((k for k, m in p.items() for _ in range(m)), reverse=True)))
    return sorted(out, reverse=True)


def hook_length_degree(shape) -> int:
    n = sum(shape)
    conj = [sum(1 for r in shape if r > c) for c in range(shape[0])] if shape else []
    hooks = 1
    for i, row in enumerate(shape):
        for j in range(row):
            hooks *= (row - j - 1) + (conj[j] - i - 1) + 1
    return math.factorial(n) // hooks


def degrees_symmetric(n: int) -> CharacterDegreeProfile:
    if n < 1:
        raise DegreeError("n must be positive")
    if n > SYMMETRIC_LIMIT:
        raise DegreeError(f"S_{n}: n exceeds the configured limit {SYMMETRIC_LIMIT}")
    return CharacterDegreeProfile(
        tuple(hook_length_degree(s) for s in integer_partitions(n)), math.factorial(n)
    )


# closed-form catalog


def degrees_catalog(spec) -> CharacterDegreeProfile:
    if isinstance(spec, str):
        spec = GroupSpec.parse(spec)
    f, ps = spec.family, spec.params
    if f in ("C", "A"):
        n = math.prod(ps)
        return CharacterDegreeProfile((1,) * n, n)
    if f == "D":
        n = ps[0]
        if n % 2:
            degs = (1,) * 2 + (2,) * ((n - 1) // 2)
        else:
            degs = (1,) * 4 + (2,) * ((n - 2) // 2)
        return CharacterDegreeProfile(degs, 2 * n)
    if f == "Q8":
        return CharacterDegreeProfile((1, 1, 1, 1, 2), 8)
    if f == "S":
        return degrees_symmetric(ps[0])
    if f == "GL2":
        q = ps[0]
        degs = (
            (1,) * (q - 1)
            + (q,) * (q - 1)
            + (q + 1,) * ((q - 1) * (q - 2) // 2)
            + (q - 1,) * (q * (q - 1) // 2)
        )
        return CharacterDegreeProfile(degs, q ** 4 - q ** 3 - q ** 2 + q)
    if f == "F":
        p = ps[0]
        return CharacterDegreeProfile((1,) * (p - 1) + (p - 1,), p * (p - 1))
    raise DegreeError(f"no catalog degree data for {spec}; use degrees_dixon")


# Dixon


def dixon_prime(order: int, exp: int, cap: int = DIXON_PRIME_CAP) -> int:
    """Smallest prime l = 1 (mod exp) with l > 2 sqrt(order)."""
    bound = 2 * math.isqrt(order) + 2
    ell = exp + 1
    while ell <= bound or not isprime(ell):
        ell += exp
        if ell > cap:
            raise DegreeError(f"no prime = 1 mod {exp} above {bound} below cap {cap}")
    return ell


def class_matrices(G: FiniteGroup, classes=None) -> np.ndarray:
    """``M[r, s, t]`` = #{(x, y) in C_r x C_s : x y = z_t} for a fixed z_t in C_t."""
    cc = classes or conjugacy_classes(G)
    k = cc.count
    cls = cc.class_of(G.order)
    M = np.zeros((k, k, k), dtype=np.int64)
    for t, c in enumerate(cc.classes):
        z = c[0]
        ys = G.table[G.inverses, z]  # y = x^-1 z
        np.add.at(M[:, :, t], (cls, cls[ys]), 1)
    return M


def _restrict(A, B, F):
    """Matrix of A restricted to the invariant column space spanned by B."""
    AB = F.reduce(A @ B)
    _, rows = rref(B.T, F)  # rows of B forming an invertible block
    return F.reduce(inverse(B[rows], F) @ AB[rows])


def _char_poly(A, q: int) -> list[int]:
    """Characteristic polynomial mod q (coefficients low->high) via Hessenberg reduction."""
    n = A.shape[0]
    H = [[int(x) % q for x in row] for row in A.tolist()]
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if H[i][m - 1]), None)
        if piv is None:
            continue
        if piv != m:
            H[m], H[piv] = H[piv], H[m]
            for row in H:
                row[m], row[piv] = row[piv], row[m]
        inv = pow(H[m][m - 1], -1, q)
        for i in range(m + 1, n):
            u = H[i][m - 1] * inv % q
            if u:
                for j in range(n):
                    H[i][j] = (H[i][j] - u * H[m][j]) % q
                for row in H:
                    row[m] = (row[m] + u * row[i]) % q
    polys = [[1]]
    for m in range(1, n + 1):
        # p_m = (x - h_mm) p_{m-1} - sum_{i<m} h_{i,m} prod_{j=i+1..m} h_{j,j-1} p_{i-1}
        prev = polys[m - 1]
        p = [0] + prev[:]
        hmm = H[m - 1][m - 1]
        for k, c in enumerate(prev):
            p[k] = (p[k] - hmm * c) % q
        t = 1
        for i in range(m - 1, 0, -1):
            t = t * H[i][i - 1] % q
            coef = H[i - 1][m - 1] * t % q
            if coef:
                for k, c in enumerate(polys[i - 1]):
                    p[k] = (p[k] - coef * c) % q
        polys.append(p)
    return polys[n]


def _roots_mod(poly, q: int) -> list[int]:
    xs = np.arange(q, dtype=np.int64)
    acc = np.zeros(q, dtype=np.int64)
    for c in reversed(poly):
        acc = (acc * xs + c) % q
    return [int(x) for x in np.nonzero(acc == 0)[0]]


def common_eigenvectors(matrices, q: int) -> list[np.ndarray]:
    """Split GF(q)^k into common eigenlines of commuting diagonalizable matrices.

    Matrices are applied in the given order; eigenvalues are taken in
    increasing order, so the output order is deterministic.
    """
    F = FieldSpec(q)
    k = matrices[0].shape[0]
    spaces = [F.identity(k)]  # columns span each space
    for A in matrices:
        A = F.reduce(np.asarray(A, dtype=np.int64))
        nxt = []
        for B in spaces:
            if B.shape[1] == 1:
                nxt.append(B)
                continue
            R = _restrict(A, B, F)
            pieces = []
            for lam in _roots_mod(_char_poly(R, q), q):
                N = nullspace(F.reduce(R - lam * F.identity(R.shape[0])), F)
                pieces.append(F.reduce(B @ N.T))
            if sum(p.shape[1] for p in pieces) != B.shape[1]:
                raise DegreeError("class matrices are not diagonalizable over GF(%d)" % q)
            nxt.extend(pieces)
        spaces = nxt
        if all(B.shape[1] == 1 for B in spaces):
            break
    if not all(B.shape[1] == 1 for B in spaces):
        raise DegreeError("common eigenspaces did not split into lines")
    return [B[:, 0] for B in spaces]


def degrees_dixon(G: FiniteGroup, prime_cap: int = DIXON_PRIME_CAP) -> CharacterDegreeProfile:
    n = G.order
    if n == 1:
        return CharacterDegreeProfile((1,), 1)
    cc = conjugacy_classes(G)
    k = cc.count
    sizes = cc.sizes()
    ell = dixon_prime(n, exponent(G), prime_cap)
    M = class_matrices(G, cc)
    cls = cc.class_of(n)
    e_cls = int(cls[G.identity])
    inv_cls = [int(cls[G.inverses[c[0]]]) for c in cc.classes]
    # (M_r)_{s,t} = c_{rst}; omega vectors are common column eigenvectors
    mats = [M[r] for r in range(k) if r != e_cls]
    vecs = common_eigenvectors(mats, ell) if mats else [np.ones(1, dtype=np.int64)]
    if len(vecs) != k:
        raise DegreeError(f"found {len(vecs)} characters, expected {k}")
    degs = []
    half = ell // 2
    for w in vecs:
        w = w * pow(int(w[e_cls]), -1, ell) % ell
        s = sum(int(w[r]) * int(w[inv_cls[r]]) * pow(sizes[r], -1, ell) for r in range(k)) % ell
        d2 = n * pow(s, -1, ell) % ell
        d = next((d for d in range(1, min(half, math.isqrt(n)) + 1) if d * d % ell == d2), None)
        if d is None:
            raise DegreeError(f"degree lift failed modulo {ell}")
        degs.append(d)
    return CharacterDegreeProfile(tuple(degs), n)


def degrees(spec_or_group, method: str = "dixon") -> CharacterDegreeProfile:
    """Convenience dispatcher used by the CLI."""
    from .groups import build_group

    if method == "catalog":
        return degrees_catalog(spec_or_group)
    G = spec_or_group if isinstance(spec_or_group, FiniteGroup) else build_group(spec_or_group)
    return degrees_dixon(G)
