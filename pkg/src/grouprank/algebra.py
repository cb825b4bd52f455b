"""Finite-dimensional associative algebras given by structural constants.

``constants[i, j, v]`` is the coefficient of ``e_v`` in ``e_i * e_j``.  Group
algebras keep their group table and multiply by convolution; their dense
constants are materialised only on request.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path

import numpy as np

from .fields import FieldSpec, in_span, row_basis
from .groups import FiniteGroup, sylow_p_subgroup

ASSOCIATIVITY_DIM_LIMIT = 64


class AlgebraError(ValueError):
    pass


class RefusalError(AlgebraError):
    """The computation is declined because its preconditions do not hold."""


@dataclass(frozen=True, eq=False)
class FiniteDimAlgebra:
    dim: int
    field: FieldSpec
    _constants: np.ndarray | None = field(default=None, repr=False)
    unity: np.ndarray | None = field(default=None, repr=False)
    group: FiniteGroup | None = field(default=None, repr=False)
    label: str = ""

    @cached_property
    def constants(self) -> np.ndarray:
        if self._constants is not None:
            return self._constants
        F, n = self.field, self.dim
        C = F.zeros((n, n, n))
        T = self.group.table
        one = F.elem(1)
        for i in range(n):
            C[i, np.arange(n), T[i]] = one
        return C

    def mul(self, x, y) -> np.ndarray:
        F = self.field
        x = np.asarray(x, dtype=F.dtype)
        y = np.asarray(y, dtype=F.dtype)
        if x.shape != (self.dim,) or y.shape != (self.dim,):
            raise AlgebraError(f"expected vectors of length {self.dim}")
        if self.group is not None:
            z = F.zeros(self.dim)
            T = self.group.table
            for i in np.nonzero(x != 0)[0]:
                z[T[i]] = z[T[i]] + x[i] * y  # row i of the table is a permutation
                if F.q is not None:
                    z %= F.q
            return F.reduce(z)
        return F.reduce(np.einsum("i,j,ijv->v", x, y, self.constants))

    def basis_product(self, i: int, j: int) -> np.ndarray:
        if self.group is not None:
            return self.field.unit(self.dim, int(self.group.table[i, j]))
        return self.constants[i, j]

    def is_associative(self) -> bool:
        F, C = self.field, self.constants
        # (e_i e_j) e_l = e_i (e_j e_l) for all basis triples
        left = F.reduce(np.einsum("ijm,mlv->ijlv", C, C))
        right = F.reduce(np.einsum("jlm,imv->ijlv", C, C))
        return bool(np.all(F.reduce(left - right) == 0))

    def check_unity(self) -> bool:
        F, C, u = self.field, self.constants, self.unity
        left = F.reduce(np.einsum("i,ijv->jv", u, C))
        right = F.reduce(np.einsum("j,ijv->iv", u, C))
        eye = F.identity(self.dim)
        return F.equal(left, eye) and F.equal(right, eye)

    def validate(self) -> FiniteDimAlgebra:
        if self.unity is None or not self.check_unity():
            raise AlgebraError("unity does not act as a two-sided identity")
        if self.dim <= ASSOCIATIVITY_DIM_LIMIT and not self.is_associative():
            raise AlgebraError("structural constants are not associative")
        return self


def from_constants(constants, field: FieldSpec, unity=None, label: str = "", check: bool = True):
    C = constants if isinstance(constants, np.ndarray) and constants.dtype == field.dtype else field.array(constants)
    n = C.shape[0]
    if C.shape != (n, n, n):
        raise AlgebraError("constants must be a dim x dim x dim array")
    u = field.array(unity) if unity is not None else None
    A = FiniteDimAlgebra(n, field, C, u, None, label)
    return A.validate() if check else A


def group_algebra(G: FiniteGroup, field: FieldSpec) -> FiniteDimAlgebra:
    F = FieldSpec.parse(field)
    return FiniteDimAlgebra(
        G.order, F, None, F.unit(G.order, G.identity), G, f"{F}[{G.label or 'G'}]"
    )


def matrix_algebra(n: int, field: FieldSpec) -> FiniteDimAlgebra:
    """k^{n x n} in the matrix-unit basis, E_ab at index a*n + b."""
    if n < 1:
        raise AlgebraError("matrix size must be positive")
    F = FieldSpec.parse(field)
    d = n * n
    C = F.zeros((d, d, d))
    one = F.elem(1)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                C[a * n + b, b * n + c, a * n + c] = one
    unity = F.zeros(d)
    for a in range(n):
        unity[a * n + a] = one
    return FiniteDimAlgebra(d, F, C, unity, None, f"{F}^{n}x{n}")


def polynomial_quotient_algebra(modulus, field: FieldSpec) -> FiniteDimAlgebra:
    """k[X]/(f) for monic f given low->high, basis 1, X, ..., X^{d-1}."""
    F = FieldSpec.parse(field)
    f = [F.elem(c) for c in modulus]
    d = len(f) - 1
    if d < 1 or f[-1] != F.elem(1):
        raise AlgebraError("modulus must be monic of degree >= 1")
    # X^k mod f for k < 2d-1
    powers = []
    cur = F.unit(d, 0)
    for _ in range(2 * d - 1):
        powers.append(cur)
        top = cur[d - 1]
        nxt = F.zeros(d)
        nxt[1:] = cur[:-1]
        nxt = F.reduce(nxt - top * np.array(f[:d], dtype=F.dtype))
        cur = nxt
    C = F.zeros((d, d, d))
    for i in range(d):
        for j in range(d):
            C[i, j] = powers[i + j]
    return FiniteDimAlgebra(d, F, C, F.unit(d, 0), None, f"{F}[X]/({','.join(F.fmt(c) for c in f)})")


def direct_product(A: FiniteDimAlgebra, B: FiniteDimAlgebra) -> FiniteDimAlgebra:
    if A.field != B.field:
        raise AlgebraError(f"field mismatch: {A.field} vs {B.field}")
    F = A.field
    a, b = A.dim, B.dim
    C = F.zeros((a + b,) * 3)
    C[:a, :a, :a] = A.constants
    C[a:, a:, a:] = B.constants
    unity = np.concatenate([A.unity, B.unity])
    return FiniteDimAlgebra(a + b, F, C, unity, None, f"{A.label} x {B.label}")


def field_algebra(field: FieldSpec) -> FiniteDimAlgebra:
    return matrix_algebra(1, field)


# ideals and radicals


def _products(A, X, Y):
    """All products x*y for rows x of X and y of Y."""
    return [A.mul(x, y) for x in X for y in Y]


def is_two_sided_ideal(A: FiniteDimAlgebra, basis) -> bool:
    F = A.field
    B = row_basis(basis, F, A.dim)
    for k in range(A.dim):
        e = F.unit(A.dim, k)
        for b in B:
            if not in_span(B, A.mul(e, b), F) or not in_span(B, A.mul(b, e), F):
                return False
    return True


def radical_powers_generic(A: FiniteDimAlgebra, ideal_basis) -> list[int]:
    """Dimensions of I, I^2, ... (stopping before the first zero power)."""
    F = A.field
    I = row_basis(ideal_basis, F, A.dim)
    if len(I) == 0:
        return []
    if not is_two_sided_ideal(A, I):
        raise AlgebraError("basis does not span a two-sided ideal")
    dims = []
    P = I
    for _ in range(A.dim + 1):
        dims.append(len(P))
        P = row_basis(_products(A, P, I), F, A.dim)
        if len(P) == 0:
            return dims
    raise AlgebraError(f"ideal is not nilpotent within {A.dim} steps")


def augmentation_radical(G: FiniteGroup, p: int) -> np.ndarray:
    """Basis of the ideal of GF(p)[G] generated by {h - 1 : h in the normal Sylow p-subgroup}."""
    syl = sylow_p_subgroup(G, p)
    if not syl.normal:
        raise RefusalError(
            f"Sylow {p}-subgroup of {G.label or 'G'} is not normal; "
            "the radical is not determined by it and is not computed"
        )
    F = FieldSpec(p)
    A = group_algebra(G, F)
    n = G.order
    gens = []
    for h in sorted(syl.elements):
        if h == G.identity:
            continue
        v = F.zeros(n)
        v[h] = 1
        v[G.identity] = p - 1
        gens.append(v)
    if not gens:
        return F.zeros((0, n))
    # left multiples g(h - 1); normality makes this already two-sided, closed below regardless
    vecs = [A.mul(F.unit(n, g), v) for g in range(n) for v in gens]
    B = row_basis(vecs, F, n)
    while True:
        more = [A.mul(b, F.unit(n, g)) for b in B for g in range(n)]
        B2 = row_basis(np.vstack([B] + more), F, n)
        if len(B2) == len(B):
            break
        B = B2
    order_p = syl.order
    expected = (n // order_p) * (order_p - 1)
    if len(B) != expected:
        raise AlgebraError(f"radical dimension {len(B)} != n(p^d - 1) = {expected}")
    return B


def bounded_composition_count(factors, p: int, m: int) -> int:
    """a_m = #{(i_1..i_s) : sum i <= m, 0 <= i_k < p^{t_k}} for exponents t_k."""
    if m < 0:
        return 0
    ways = [1] + [0] * m  # ways[s] = tuples so far with sum exactly s
    for t in factors:
        bound = p ** t
        nxt = [0] * (m + 1)
        for s, w in enumerate(ways):
            if w:
                for i in range(min(bound, m - s + 1)):
                    nxt[s + i] += w
        ways = nxt
    return sum(ways)


@dataclass(frozen=True)
class RadicalProfile:
    n: int
    p: int
    factors: tuple[int, ...]
    dims: tuple[int, ...]  # dims[m-1] = dim R^m for m = 1..N-1

    @property
    def d(self) -> int:
        return sum(self.factors)

    @property
    def nilpotence_index(self) -> int:
        return len(self.dims) + 1

    def dim_power(self, m: int) -> int:
        """dim R^m, with R^0 the whole algebra and R^m = 0 beyond the nilpotence index."""
        if m <= 0:
            return self.n * self.p ** self.d
        return self.dims[m - 1] if m <= len(self.dims) else 0

    def to_dict(self) -> dict:
        return {
            "n": self.n, "p": self.p, "factors": list(self.factors),
            "dims": list(self.dims), "nilpotence_index": self.nilpotence_index,
        }


def radical_profile_closed_form(n: int, p: int, factors) -> RadicalProfile:
    if n < 1 or n % p == 0:
        raise AlgebraError("n must be positive and prime to p")
    factors = tuple(sorted((int(t) for t in factors), reverse=True))
    d = sum(factors)
    N = 1 + sum(p ** t - 1 for t in factors)
    dims = tuple(n * (p ** d - bounded_composition_count(factors, p, m - 1)) for m in range(1, N))
    return RadicalProfile(n, p, factors, dims)


def radical_profile_from_dims(n: int, p: int, factors, dims) -> RadicalProfile:
    dims = tuple(int(x) for x in dims)
    if any(a <= b for a, b in zip(dims, dims[1:])) or (dims and dims[-1] <= 0):
        raise AlgebraError("radical power dimensions must strictly decrease to zero")
    return RadicalProfile(n, p, tuple(factors), dims)


def group_radical_profile(G: FiniteGroup, p: int, generic: bool = True) -> dict:
    """Closed-form (and optionally span-computed) radical data for GF(p)[G]."""
    syl = sylow_p_subgroup(G, p)
    if not syl.normal:
        raise RefusalError(f"Sylow {p}-subgroup is not normal; modular radical data is not computed")
    n = G.order // syl.order
    out = {"n": n, "p": p, "sylow_order": syl.order}
    if syl.exponents is not None:
        out["closed_form"] = radical_profile_closed_form(n, p, syl.exponents)
    if generic:
        A = group_algebra(G, FieldSpec(p))
        out["generic_dims"] = radical_powers_generic(A, augmentation_radical(G, p))
    return out


def check_dimension_sum(blocks, radical_dim: int, order: int) -> bool:
    """sum n^2 d + dim J == |G| for semisimple-quotient blocks (n, d)."""
    return sum(n * n * d for n, d in blocks) + radical_dim == order


# file format


def write_algebra(A: FiniteDimAlgebra, path) -> None:
    F, C = A.field, A.constants
    entries = []
    for i, j, v in zip(*np.nonzero(C != 0)):
        entries.append([int(i), int(j), int(v), F.fmt(C[i, j, v])])
    doc = {
        "dim": A.dim,
        "field": F.token(),
        "constants": entries,
        "unity": [F.fmt(x) for x in A.unity],
        "label": A.label,
    }
    Path(path).write_text(json.dumps(doc, indent=1) + "\n")


def read_algebra(path) -> FiniteDimAlgebra:
    try:
        doc = json.loads(Path(path).read_text())
        F = FieldSpec.parse(doc["field"])
        n = int(doc["dim"])
        C = F.zeros((n, n, n))
        for i, j, v, val in doc["constants"]:
            C[i, j, v] = F.elem(Fraction(str(val)))
        unity = F.array([Fraction(str(x)) for x in doc["unity"]])
    except (KeyError, ValueError, TypeError, IndexError) as exc:
        raise AlgebraError(f"{path}: malformed algebra file ({exc})") from None
    return from_constants(C, F, unity, doc.get("label", str(path)))


def algebra_from_spec(kind: str, arg: str, field: FieldSpec) -> FiniteDimAlgebra:
    """Build a group or matrix algebra from CLI arguments."""
    from .groups import build_group

    if kind == "group":
        return group_algebra(build_group(arg), field)
    if kind == "matrix":
        return matrix_algebra(int(arg), field)
    if kind == "poly":
        return polynomial_quotient_algebra([int(c) for c in arg.split(",")], field)
    raise AlgebraError(f"unknown algebra kind {kind!r}")
