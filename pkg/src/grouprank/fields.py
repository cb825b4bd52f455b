"""Exact ground fields (rationals and prime fields) and dense linear algebra over them.

Vectors and matrices are numpy arrays: ``int64`` reduced modulo ``q`` for GF(q),
``object`` arrays of :class:`fractions.Fraction` for the rationals.  Every
routine here is exact; nothing touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from sympy import isprime


class FieldError(ValueError):
    pass


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals (``q is None``) or the prime field GF(q)."""

    q: int | None = None

    def __post_init__(self):
        if self.q is not None:
            if not isinstance(self.q, (int, np.integer)) or not isprime(int(self.q)):
                raise FieldError(f"GF(q) needs a prime q, got {self.q!r}")
            object.__setattr__(self, "q", int(self.q))

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls(None)

    @classmethod
    def gf(cls, q: int) -> FieldSpec:
        return cls(q)

    @classmethod
    def parse(cls, text) -> FieldSpec:
        """Parse ``"Q"`` or a prime such as ``"5"``/``5``."""
        if isinstance(text, FieldSpec):
            return text
        s = str(text).strip()
        if s.upper() in ("Q", "QQ", "RATIONALS"):
            return cls(None)
        if s.upper().startswith("GF(") and s.endswith(")"):
            s = s[3:-1]
        try:
            return cls(int(s))
        except ValueError:
            raise FieldError(f"unknown field {text!r}") from None

    @property
    def is_prime_field(self) -> bool:
        return self.q is not None

    @property
    def characteristic(self) -> int:
        return 0 if self.q is None else self.q

    @property
    def size(self) -> int | None:
        """Number of elements, ``None`` for the (infinite) rationals."""
        return self.q

    @property
    def dtype(self):
        return object if self.q is None else np.int64

    def __str__(self):
        return "Q" if self.q is None else f"GF({self.q})"

    def token(self) -> str:
        return "Q" if self.q is None else str(self.q)

    # scalars

    def elem(self, x):
        if self.q is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.q)) % self.q
        if isinstance(x, str):
            return self.elem(Fraction(x))
        return int(x) % self.q

    def inv(self, x):
        if self.q is None:
            if x == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / Fraction(x)
        x = int(x) % self.q
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.q)

    def fmt(self, x) -> str:
        if self.q is None:
            x = Fraction(x)
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return str(int(x) % self.q)

    def elements(self):
        """All field elements in increasing order (finite fields only)."""
        if self.q is None:
            raise FieldError("the rationals are infinite")
        return range(self.q)

    # arrays

    def array(self, data) -> np.ndarray:
        src = np.array(data, dtype=object)
        out = np.empty(src.shape, dtype=object)
        flat_in, flat_out = src.reshape(-1), out.reshape(-1)
        for k in range(flat_in.size):
            flat_out[k] = self.elem(flat_in[k])
        return out if self.q is None else out.astype(np.int64)

    def zeros(self, shape) -> np.ndarray:
        if self.q is None:
            a = np.empty(shape, dtype=object)
            a.fill(Fraction(0))
            return a
        return np.zeros(shape, dtype=np.int64)

    def identity(self, n: int) -> np.ndarray:
        a = self.zeros((n, n))
        for i in range(n):
            a[i, i] = self.elem(1)
        return a

    def unit(self, n: int, i: int) -> np.ndarray:
        v = self.zeros(n)
        v[i] = self.elem(1)
        return v

    def reduce(self, a):
        """Bring the result of ring operations back into canonical form."""
        if self.q is None:
            return a
        return np.mod(a, self.q)

    def dot(self, a, b):
        return self.reduce(np.dot(a, b))

    def random_vector(self, rng: np.random.Generator, n: int, bound: int = 9) -> np.ndarray:
        """Random vector; rationals get small numerators/denominators."""
        if self.q is None:
            nums = rng.integers(-bound, bound + 1, size=n)
            dens = rng.integers(1, 4, size=n)
            return self.array([Fraction(int(a), int(b)) for a, b in zip(nums, dens)])
        return rng.integers(0, self.q, size=n, dtype=np.int64)

    def equal(self, a, b) -> bool:
        return bool(np.all(self.reduce(np.asarray(a) - np.asarray(b)) == 0))


# dense linear algebra


def rref(M, F: FieldSpec):
    """Reduced row echelon form. Returns ``(R, pivots)`` with ``R`` a new array."""
    R = np.array(M, dtype=F.dtype, copy=True)
    if R.ndim != 2:
        raise ValueError("rref expects a matrix")
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c] != 0)[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            R[[r, p]] = R[[p, r]]
        R[r] = F.reduce(R[r] * F.inv(R[r, c]))
        col = R[:, c].copy()
        col[r] = 0
        if np.any(col != 0):
            R = F.reduce(R - np.outer(col, R[r]))
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M, F: FieldSpec) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(M, F)[1])


def row_basis(vectors, F: FieldSpec, dim: int | None = None) -> np.ndarray:
    """Echelon basis (as rows) of the span of ``vectors``."""
    V = np.asarray(vectors, dtype=F.dtype)
    if V.size == 0:
        return F.zeros((0, dim if dim is not None else (V.shape[-1] if V.ndim == 2 else 0)))
    R, piv = rref(V, F)
    return R[: len(piv)]


def nullspace(M, F: FieldSpec) -> np.ndarray:
    """Basis (rows) of ``{x : M x = 0}``."""
    M = np.asarray(M, dtype=F.dtype)
    cols = M.shape[1]
    R, piv = rref(M, F)
    free = [c for c in range(cols) if c not in piv]
    basis = F.zeros((len(free), cols))
    for k, f in enumerate(free):
        basis[k, f] = F.elem(1)
        for i, p in enumerate(piv):
            basis[k, p] = F.reduce(-R[i, f])
    return basis


def inverse(M, F: FieldSpec) -> np.ndarray:
    M = np.asarray(M, dtype=F.dtype)
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    R, piv = rref(np.hstack([M, F.identity(n)]), F)
    if piv[:n] != list(range(n)) or len(piv) < n or piv[n - 1] != n - 1:
        raise FieldError("matrix is singular")
    return R[:, n:]


def in_span(basis: np.ndarray, v, F: FieldSpec) -> bool:
    if len(basis) == 0:
        return not np.any(np.asarray(v) != 0)
    return rank(np.vstack([basis, v]), F) == len(basis)
