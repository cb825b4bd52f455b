"""Finite groups stored as complete multiplication tables.

Every group in the package is a :class:`FiniteGroup`: ``table[i, j]`` is the
index of ``g_i * g_j``.  Named families are expanded into tables at build time
(see :func:`build_group`), and all structural queries (classes, center, Sylow
subgroups, exponent) work directly on the table.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from sympy import factorint, isprime, primitive_root

# full O(n^3) associativity check is run up to this order
ASSOCIATIVITY_CHECK_LIMIT = 1024
MAX_ORDER = 5000


class GroupError(ValueError):
    """Invalid group data or a malformed group description."""


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    table: np.ndarray
    identity: int
    inverses: np.ndarray
    label: str = ""
    # coordinates of an abelian family w.r.t. a cyclic decomposition, when known
    abelian_basis: tuple | None = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"FiniteGroup({self.label or 'table'}, order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        cur = np.arange(n)
        idx = np.arange(n)
        for k in range(1, n + 1):
            hit = (cur == self.identity) & (orders == 0)
            orders[hit] = k
            if np.all(orders):
                break
            cur = self.table[cur, idx]
        return orders

    def power(self, a: int, k: int) -> int:
        r = self.identity
        for _ in range(k % self.order):
            r = int(self.table[r, a])
        return r


def from_table(table, label: str = "", check_associativity: bool | None = None) -> FiniteGroup:
    """Validate a multiplication table and wrap it as a group."""
    T = np.asarray(table, dtype=np.int64)
    if T.ndim != 2 or T.shape[0] != T.shape[1] or T.shape[0] == 0:
        raise GroupError("table must be a non-empty square array")
    n = T.shape[0]
    if T.min() < 0 or T.max() >= n:
        raise GroupError("table entries out of range")
    idx = np.arange(n)
    ids = [e for e in range(n) if np.array_equal(T[e], idx) and np.array_equal(T[:, e], idx)]
    if not ids:
        raise GroupError("no identity element")
    e = ids[0]
    hits = T == e
    if not (np.all(hits.sum(axis=1) == 1) and np.all(hits.sum(axis=0) == 1)):
        raise GroupError("some element has no (unique) inverse")
    inv = np.argmax(hits, axis=1)
    if not np.all(T[inv, idx] == e):
        raise GroupError("left and right inverses differ")
    # latin square: every row and column is a permutation
    srt = np.sort(T, axis=1)
    if not (np.all(srt == idx) and np.all(np.sort(T, axis=0) == idx[:, None])):
        raise GroupError("table is not a latin square")
    if check_associativity is None:
        check_associativity = n <= ASSOCIATIVITY_CHECK_LIMIT
    if check_associativity:
        for i in range(n):
            # (g_i g_j) g_l  vs  g_i (g_j g_l)
            if not np.array_equal(T[T[i]], T[i][T]):
                raise GroupError("multiplication is not associative")
    return FiniteGroup(T, int(e), inv.astype(np.int64), label)


def _closure_table(elements, mul, label, check=None, **extra) -> FiniteGroup:
    index = {x: k for k, x in enumerate(elements)}
    n = len(elements)
    if n > MAX_ORDER:
        raise GroupError(f"order {n} exceeds the supported limit {MAX_ORDER}")
    T = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(elements):
        T[i] = [index[mul(a, b)] for b in elements]
    g = from_table(T, label, check)
    if extra:
        g = FiniteGroup(g.table, g.identity, g.inverses, g.label, **extra)
    return g


# families


def cyclic(n: int) -> FiniteGroup:
    return abelian((n,), label=f"C:{n}")


def abelian(moduli, label: str | None = None) -> FiniteGroup:
    moduli = tuple(int(m) for m in moduli)
    if not moduli or any(m < 1 for m in moduli):
        raise GroupError("abelian factors must be positive")
    n = math.prod(moduli)
    if n > MAX_ORDER:
        raise GroupError(f"order {n} exceeds the supported limit {MAX_ORDER}")
    coords = np.array(list(itertools.product(*[range(m) for m in moduli])), dtype=np.int64)
    coords = coords.reshape(n, len(moduli))
    radix = np.array([math.prod(moduli[k + 1:]) for k in range(len(moduli))], dtype=np.int64)
    mods = np.array(moduli, dtype=np.int64)
    summed = (coords[:, None, :] + coords[None, :, :]) % mods
    T = summed @ radix
    g = from_table(T, label or "A:" + ",".join(map(str, moduli)))
    return FiniteGroup(g.table, g.identity, g.inverses, g.label, abelian_basis=moduli)


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n; element r^a s^b has index a + n*b."""
    if n < 1:
        raise GroupError("dihedral parameter must be positive")
    elems = [(a, b) for b in range(2) for a in range(n)]

    def mul(x, y):
        a, b = x
        c, d = y
        return ((a + (c if b == 0 else -c)) % n, (b + d) % 2)

    return _closure_table(elems, mul, f"D:{n}")


def symmetric(n: int) -> FiniteGroup:
    """S_n on {0..n-1}, lexicographic order; (g*h)(x) = g(h(x))."""
    if n < 1:
        raise GroupError("symmetric degree must be positive")
    if math.factorial(n) > MAX_ORDER:
        raise GroupError(f"S_{n} exceeds the supported order limit {MAX_ORDER}")
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)
    m = len(perms)
    codes = perms @ (n ** np.arange(n - 1, -1, -1, dtype=np.int64))
    order = np.argsort(codes)
    sorted_codes = codes[order]
    T = np.empty((m, m), dtype=np.int64)
    for i in range(m):
        comp = perms[i][perms]  # row j: g_i o g_j
        c = comp @ (n ** np.arange(n - 1, -1, -1, dtype=np.int64))
        T[i] = order[np.searchsorted(sorted_codes, c)]
    return from_table(T, f"S:{n}")


def symmetric_permutations(n: int) -> list[tuple[int, ...]]:
    """Element list matching the indexing used by :func:`symmetric`."""
    return list(itertools.permutations(range(n)))


def quaternion8() -> FiniteGroup:
    """Q8 indexed as [1, -1, i, -i, j, -j, k, -k]."""
    # unit products: table over {1,i,j,k} with signs
    unit_mul = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    elems = [(s, u) for u in range(4) for s in (1, -1)]

    def mul(x, y):
        s, u = unit_mul[(x[1], y[1])]
        return (x[0] * y[0] * s, u)

    return _closure_table(elems, mul, "Q8")


def frobenius(p: int) -> FiniteGroup:
    """F_{p,p-1} = <a, b | a^p = b^(p-1) = 1, b^-1 a b = a^u>, element a^i b^j at i + p*j."""
    if not isprime(p):
        raise GroupError(f"Frobenius group needs a prime, got {p}")
    u = primitive_root(p) if p > 2 else 1
    u_inv = pow(u, -1, p)
    elems = [(i, j) for j in range(p - 1) for i in range(p)]

    def mul(x, y):
        # b^j a^k b^-j = a^(k u^-j)
        i, j = x
        k, l = y
        return ((i + k * pow(u_inv, j, p)) % p, (j + l) % (p - 1))

    return _closure_table(elems, mul, f"F:{p} (u={u})")


# GF(p^k) for the matrix groups


def _poly_mulmod(a, b, mod, p):
    k = len(mod) - 1
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for t in range(k + 1):
                prod[d - k + t] = (prod[d - k + t] - c * mod[t]) % p
    return prod[:k]


def _is_irreducible(mod, p) -> bool:
    """Trial division by every monic polynomial of degree <= k/2 (mod is low->high)."""
    k = len(mod) - 1
    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            div = list(tail) + [1]
            rem = list(mod)
            for top in range(k, d - 1, -1):
                c = rem[top]
                if c:
                    for t in range(d + 1):
                        rem[top - d + t] = (rem[top - d + t] - c * div[t]) % p
            if not any(rem[:d]):
                return False
    return True


def conway_free_modulus(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible polynomial of degree k over GF(p), low->high."""
    if k == 1:
        return (0, 1)
    for tail in itertools.product(range(p), repeat=k):
        mod = tail[::-1] + (1,)
        if mod[0] and _is_irreducible(mod, p):
            return mod
    raise GroupError(f"no irreducible polynomial of degree {k} over GF({p})")


def prime_power(q: int) -> tuple[int, int]:
    f = factorint(q) if q > 1 else {}
    if len(f) != 1:
        raise GroupError(f"{q} is not a prime power")
    (p, k), = f.items()
    return int(p), int(k)


@dataclass(frozen=True)
class GaloisField:
    """GF(p^k) with elements encoded as integers sum c_i p^i."""

    p: int
    k: int
    modulus: tuple[int, ...]
    add: np.ndarray
    mul: np.ndarray

    @property
    def q(self) -> int:
        return self.p ** self.k

    def describe(self) -> str:
        if self.k == 1:
            return f"GF({self.p})"
        terms = []
        for d in range(len(self.modulus) - 1, -1, -1):
            c = self.modulus[d]
            if not c:
                continue
            mono = "" if d == 0 else ("x" if d == 1 else f"x^{d}")
            coef = "" if c == 1 and d else str(c)
            terms.append(coef + ("*" if coef and mono else "") + mono)
        return f"GF({self.q})=GF({self.p})[x]/({'+'.join(terms)})"


def galois_field(q: int) -> GaloisField:
    p, k = prime_power(q)
    mod = conway_free_modulus(p, k)
    digits = [[(x // p ** i) % p for i in range(k)] for x in range(q)]
    weights = [p ** i for i in range(k)]
    add = np.empty((q, q), dtype=np.int64)
    mul = np.empty((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(q):
            add[a, b] = sum(((x + y) % p) * w for x, y, w in zip(digits[a], digits[b], weights))
            prod = _poly_mulmod(digits[a], digits[b], mod, p) if k > 1 else [(a * b) % p]
            mul[a, b] = sum(c * w for c, w in zip(prod, weights))
    return GaloisField(p, k, mod, add, mul)


def _matrix_group(q: int, special: bool) -> FiniteGroup:
    K = galois_field(q)
    A, M = K.add, K.mul
    neg = np.array([int(np.nonzero(A[x] == 0)[0][0]) for x in range(q)])

    def det(m):
        a, b, c, d = m
        return int(A[M[a, d], neg[M[b, c]]])

    elems = [m for m in itertools.product(range(q), repeat=4) if (det(m) == 1 if special else det(m) != 0)]
    ident = (1, 0, 0, 1)
    elems.remove(ident)
    elems.insert(0, ident)

    def mul(x, y):
        a, b, c, d = x
        e, f, g, h = y
        return (
            int(A[M[a, e], M[b, g]]),
            int(A[M[a, f], M[b, h]]),
            int(A[M[c, e], M[d, g]]),
            int(A[M[c, f], M[d, h]]),
        )

    name = "SL2" if special else "GL2"
    return _closure_table(elems, mul, f"{name}:{q} [{K.describe()}]")


def gl2(q: int) -> FiniteGroup:
    return _matrix_group(q, special=False)


def sl2(q: int) -> FiniteGroup:
    return _matrix_group(q, special=True)


# specs


FAMILIES = ("C", "A", "D", "S", "Q8", "GL2", "SL2", "F", "file")


@dataclass(frozen=True)
class GroupSpec:
    family: str
    params: tuple = ()

    @classmethod
    def parse(cls, text: str) -> GroupSpec:
        """Parse ``C:n``, ``A:m1,m2``, ``D:n``, ``S:n``, ``Q8``, ``GL2:q``, ``SL2:q``, ``F:p``, ``file:path``."""
        s = text.strip()
        if s.upper() == "Q8":
            return cls("Q8")
        if ":" not in s:
            raise GroupError(f"cannot parse group spec {text!r}")
        fam, arg = s.split(":", 1)
        fam = fam.strip()
        if fam == "file":
            return cls("file", (arg,))
        fam = fam.upper()
        if fam not in FAMILIES:
            raise GroupError(f"unknown group family {fam!r}")
        try:
            params = tuple(int(v) for v in arg.split(","))
        except ValueError:
            raise GroupError(f"bad parameters in {text!r}") from None
        if fam != "A" and len(params) != 1:
            raise GroupError(f"family {fam} takes one parameter")
        if any(v < 1 for v in params):
            raise GroupError("group parameters must be positive")
        if fam in ("GL2", "SL2"):
            prime_power(params[0])
        if fam == "F" and not isprime(params[0]):
            raise GroupError(f"F:p needs a prime p, got {params[0]}")
        return cls(fam, params)

    def __str__(self):
        if self.family == "Q8":
            return "Q8"
        return f"{self.family}:{','.join(map(str, self.params))}"

    @property
    def expected_order(self) -> int | None:
        f, ps = self.family, self.params
        if f == "C":
            return ps[0]
        if f == "A":
            return math.prod(ps)
        if f == "D":
            return 2 * ps[0]
        if f == "S":
            return math.factorial(ps[0])
        if f == "Q8":
            return 8
        if f == "GL2":
            q = ps[0]
            return q ** 4 - q ** 3 - q ** 2 + q
        if f == "SL2":
            q = ps[0]
            return q ** 3 - q
        if f == "F":
            return ps[0] * (ps[0] - 1)
        return None


def build_group(spec) -> FiniteGroup:
    """Build a validated group from a :class:`GroupSpec` or its string form."""
    if isinstance(spec, str):
        spec = GroupSpec.parse(spec)
    f, ps = spec.family, spec.params
    expected = spec.expected_order
    if expected is not None and expected > MAX_ORDER:
        raise GroupError(f"{spec} has order {expected} > {MAX_ORDER}")
    if f == "C":
        G = cyclic(ps[0])
    elif f == "A":
        G = abelian(ps)
    elif f == "D":
        G = dihedral(ps[0])
    elif f == "S":
        G = symmetric(ps[0])
    elif f == "Q8":
        G = quaternion8()
    elif f == "GL2":
        G = gl2(ps[0])
    elif f == "SL2":
        G = sl2(ps[0])
    elif f == "F":
        G = frobenius(ps[0])
    else:
        G = read_table(ps[0])
    if expected is not None and G.order != expected:
        raise GroupError(f"{spec}: built order {G.order}, expected {expected}")
    return G


# table files


def read_table(path) -> FiniteGroup:
    lines = [ln.split() for ln in Path(path).read_text().splitlines() if ln.strip()]
    try:
        n = int(lines[0][0])
        rows = [[int(v) for v in ln] for ln in lines[1 : n + 1]]
    except (IndexError, ValueError):
        raise GroupError(f"{path}: malformed table file") from None
    if len(rows) != n or any(len(r) != n for r in rows):
        raise GroupError(f"{path}: expected {n} rows of {n} entries")
    return from_table(rows, label=f"file:{path}", check_associativity=True)


def write_table(G: FiniteGroup, path) -> None:
    out = [str(G.order)] + [" ".join(map(str, row)) for row in G.table.tolist()]
    Path(path).write_text("\n".join(out) + "\n")


# structure


@dataclass(frozen=True)
class ConjugacyPartition:
    classes: tuple[tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return len(self.classes)

    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    def class_of(self, order: int) -> np.ndarray:
        lookup = np.empty(order, dtype=np.int64)
        for k, c in enumerate(self.classes):
            lookup[list(c)] = k
        return lookup


def conjugacy_classes(G: FiniteGroup) -> ConjugacyPartition:
    T, inv = G.table, G.inverses
    seen = np.zeros(G.order, dtype=bool)
    classes = []
    for x in range(G.order):
        if seen[x]:
            continue
        # g x g^-1 for all g
        conj = np.unique(T[T[:, x], inv])
        seen[conj] = True
        classes.append(tuple(int(c) for c in conj))
    return ConjugacyPartition(tuple(classes))


def center(G: FiniteGroup) -> set[int]:
    T = G.table
    return {z for z in range(G.order) if np.array_equal(T[z], T[:, z])}


def exponent(G: FiniteGroup) -> int:
    return math.lcm(*(int(o) for o in G.element_orders()))


def subgroup_closure(G: FiniteGroup, gens, limit: int | None = None) -> set[int] | None:
    """Subgroup generated by ``gens``; ``None`` once it grows past ``limit``."""
    H = {G.identity}
    frontier = [G.identity]
    gens = list(gens)
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                x = int(G.table[h, g])
                if x not in H:
                    H.add(x)
                    nxt.append(x)
                    if limit is not None and len(H) > limit:
                        return None
        frontier = nxt
    return H


@dataclass(frozen=True)
class SylowInfo:
    p: int
    elements: frozenset
    normal: bool
    abelian_factors: tuple[int, ...] | None

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def exponents(self) -> tuple[int, ...] | None:
        """Cyclic factor exponents t_1 >= ... >= t_s (orders p^t)."""
        if self.abelian_factors is None:
            return None
        return tuple(round(math.log(f, self.p)) for f in self.abelian_factors)


def _p_part(n: int, p: int) -> int:
    k = 1
    while n % (k * p) == 0:
        k *= p
    return k


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def _abelian_p_factors(G: FiniteGroup, H, p: int) -> tuple[int, ...]:
    """Invariants of an abelian p-subgroup from the sizes of its p^k-torsion layers."""
    orders = G.element_orders()
    elems = list(H)
    counts = [1]
    k = 1
    while counts[-1] < len(elems):
        counts.append(sum(1 for h in elems if (p ** k) % orders[h] == 0))
        k += 1
    logs = [round(math.log(c, p)) for c in counts]
    # number of cyclic factors of order >= p^k is logs[k] - logs[k-1]
    ge = [logs[k] - logs[k - 1] for k in range(1, len(logs))]
    factors = []
    for k in range(len(ge), 0, -1):
        exact = ge[k - 1] - (ge[k] if k < len(ge) else 0)
        factors += [p ** k] * exact
    return tuple(factors)


def sylow_p_subgroup(G: FiniteGroup, p: int) -> SylowInfo:
    if not isprime(p):
        raise GroupError(f"{p} is not prime")
    target = _p_part(G.order, p)
    if target == 1:
        return SylowInfo(p, frozenset({G.identity}), True, ())
    orders = G.element_orders()
    S = [x for x in range(G.order) if _is_p_power(int(orders[x]), p)]
    Sset = set(S)
    sub = G.table[np.ix_(S, S)]
    if np.all(np.isin(sub, S)):
        H, normal = Sset, True
    else:
        normal = False
        H = {G.identity}
        # greedy growth; a maximal p-subgroup is Sylow, so this always reaches target
        while len(H) < target:
            for g in S:
                if g in H:
                    continue
                K = subgroup_closure(G, list(H) + [g], limit=target)
                if K is not None and _is_p_power(len(K), p):
                    H = K
                    break
            else:
                raise GroupError("Sylow search failed")  # unreachable for a valid group
    Hl = sorted(H)
    sub = G.table[np.ix_(Hl, Hl)]
    factors = _abelian_p_factors(G, Hl, p) if np.array_equal(sub, sub.T) else None
    return SylowInfo(p, frozenset(H), normal, factors)


def prime_divisors(n: int) -> list[int]:
    return sorted(int(p) for p in factorint(n)) if n > 1 else []


# abelian decomposition


def _abelian_decomposition(G: FiniteGroup) -> list[tuple[int, int]]:
    """Elements g_1..g_s with orders m_1..m_s such that G is the direct product of the <g_i>."""
    if G.order == 1:
        return []
    orders = G.element_orders()
    g = int(np.argmax(orders))  # first element of maximal order
    m = int(orders[g])
    C = [G.power(g, k) for k in range(m)]
    if m == G.order:
        return [(g, m)]
    # quotient by <g>
    coset = np.full(G.order, -1, dtype=np.int64)
    reps = []
    for x in range(G.order):
        if coset[x] < 0:
            coset[G.table[x, C]] = len(reps)
            reps.append(x)
    Q = np.array([[coset[G.table[a, b]] for b in reps] for a in reps], dtype=np.int64)
    Qg = from_table(Q, check_associativity=False)
    out = [(g, m)]
    Cpos = {c: k for k, c in enumerate(C)}
    for qe, mq in _abelian_decomposition(Qg):
        x = reps[qe]
        # x^mq lies in <g>, equal to g^k with mq | k since m is the maximal order
        k = Cpos[G.power(x, mq)]
        if k % mq:
            raise GroupError("abelian decomposition failed")  # cannot happen for abelian G
        y = int(G.table[x, G.power(g, (-(k // mq)) % m)])
        out.append((y, mq))
    return out


def abelian_coordinates(G: FiniteGroup) -> tuple[tuple[int, ...], np.ndarray]:
    """Cyclic factor orders and, per element, its exponent vector in that decomposition.

    Families built by :func:`abelian` keep their defining coordinates; other
    abelian tables are decomposed by the maximal-order-element method.
    """
    if not G.is_abelian():
        raise GroupError(f"{G.label or 'group'} is not abelian")
    if G.abelian_basis is not None:
        moduli = tuple(G.abelian_basis)
        coords = np.array(list(itertools.product(*[range(m) for m in moduli])), dtype=np.int64)
        return moduli, coords.reshape(G.order, len(moduli))
    basis = _abelian_decomposition(G)
    moduli = tuple(m for _, m in basis)
    coords = np.zeros((G.order, len(basis)), dtype=np.int64)
    seen = np.zeros(G.order, dtype=bool)
    for exps in itertools.product(*[range(m) for m in moduli]):
        x = G.identity
        for (gi, _), e in zip(basis, exps):
            x = int(G.table[x, G.power(gi, e)])
        if seen[x]:
            raise GroupError("abelian decomposition is not a direct product")
        seen[x] = True
        coords[x] = exps
    return moduli, coords
