"""Exact evaluation of rank bounds for group algebras.

Lower bounds for semisimple group algebras are driven by the character degree
profile; modular bounds by radical power dimensions; upper bounds by the
lengths of constructible algorithms.  All rigorous values are exact
rationals.  Values that depend on the matrix multiplication exponent are
irrational in general and are evaluated with high-precision decimals; they are
always flagged as conditional and never enter ``best_lower``/``best_upper``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Iterable

from .algebra import RadicalProfile
from .bilinear import recursive_matrix_length
from .degrees import CharacterDegreeProfile

PRECISION = 60
ROOT_TOLERANCE = Decimal("1e-12")


class BoundError(ValueError):
    pass


@dataclass(frozen=True)
class OmegaParam:
    omega: Fraction
    source: str = ""

    def __post_init__(self):
        w = Fraction(self.omega)
        object.__setattr__(self, "omega", w)
        if not 2 <= w <= 3:
            raise BoundError(f"omega must lie in [2, 3], got {w}")

    @classmethod
    def parse(cls, text) -> OmegaParam:
        if isinstance(text, OmegaParam):
            return text
        s = str(text).strip()
        known = {"2.3727": "2.3727 literature value", "3": "3 trivial", "2": "2 conjectured"}
        return cls(Fraction(s), known.get(s, "user supplied"))

    def decimal(self) -> Decimal:
        return Decimal(self.omega.numerator) / Decimal(self.omega.denominator)

    def __str__(self):
        return str(self.decimal())


DEFAULT_OMEGA = OmegaParam(Fraction("2.3727"), "2.3727 literature value")


@dataclass(frozen=True)
class BoundEntry:
    name: str
    kind: str  # lower | upper | exact
    formula: str
    value: Fraction | Decimal
    applicable: bool = True
    reason: str = ""
    conditional: str | None = None  # set when the entry is not unconditionally rigorous
    witnessed: bool = False  # upper entries backed by a constructible algorithm

    @property
    def bound(self) -> int:
        """Integer consequence: ceiling for lower/exact values, floor for upper ones."""
        v = self.value
        if isinstance(v, Decimal):
            v = Fraction(v)
        return math.floor(v) if self.kind == "upper" else math.ceil(v)

    @property
    def rigorous(self) -> bool:
        return self.applicable and self.conditional is None

    def to_dict(self) -> dict:
        v = self.value
        return {
            "name": self.name,
            "kind": self.kind,
            "formula": self.formula,
            "value": _fmt_value(v),
            "bound": self.bound,
            "applicable": self.applicable,
            "reason": self.reason,
            "conditional": self.conditional,
            "witnessed": self.witnessed,
        }


def _fmt_value(v) -> str:
    if isinstance(v, Decimal):
        return format(v.quantize(Decimal("1e-12")).normalize(), "f")
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


@dataclass
class BoundReport:
    entries: list[BoundEntry] = field(default_factory=list)

    def add(self, entry: BoundEntry) -> BoundEntry:
        self.entries.append(entry)
        return entry

    def extend(self, entries: Iterable[BoundEntry]) -> None:
        self.entries.extend(entries)

    def get(self, name: str) -> BoundEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    @property
    def best_lower(self) -> int | None:
        vals = [e.bound for e in self.entries if e.rigorous and e.kind in ("lower", "exact")]
        return max(vals) if vals else None

    @property
    def best_upper(self) -> int | None:
        vals = [e.bound for e in self.entries
                if e.rigorous and (e.kind == "exact" or (e.kind == "upper" and e.witnessed))]
        return min(vals) if vals else None

    @property
    def exact(self) -> int | None:
        lo, hi = self.best_lower, self.best_upper
        return lo if lo is not None and lo == hi else None

    def check(self) -> None:
        lo, hi = self.best_lower, self.best_upper
        if lo is not None and hi is not None and lo > hi:
            raise BoundError(f"inconsistent report: best_lower {lo} > best_upper {hi}")

    def to_dict(self) -> dict:
        return {
            "entries": [e.to_dict() for e in self.entries],
            "best_lower": self.best_lower,
            "best_upper": self.best_upper,
        }


# classical bounds


def alder_strassen(dim: int, t: int) -> int:
    if not 1 <= t <= dim:
        raise BoundError(f"need 1 <= t <= dim, got t={t}, dim={dim}")
    return 2 * dim - t


def blaser_52(dims) -> Fraction:
    dims = [int(n) for n in dims]
    if not dims:
        raise BoundError("need at least one block")
    if any(n < 2 for n in dims):
        raise BoundError("every block must be a noncommutative matrix algebra (n >= 2)")
    return Fraction(5, 2) * sum(n * n for n in dims) - 3 * sum(dims)


def matrix_remark_bound(n: int) -> int:
    if n < 3:
        raise BoundError("the bound 2n^2 + n - 2 needs n >= 3")
    return 2 * n * n + n - 2


def classify_semisimple(profile: CharacterDegreeProfile) -> BoundReport:
    """Minimal-rank test and lower bounds for a split semisimple group algebra."""
    st = profile.stats
    G, t = profile.group_order, profile.t
    rep = BoundReport()
    rep.add(BoundEntry("alder-strassen", "lower", "2|G| - t", Fraction(alder_strassen(G, t))))
    minimal = st.T(3) == 0
    if minimal:
        value = st.t(1) + 7 * st.t(2)
        assert value == 2 * G - t
        rep.add(BoundEntry("minimal-rank", "exact", "t1 + 7 t2", Fraction(value),
                           reason="all degrees <= 2: minimal rank"))
    else:
        rep.add(BoundEntry("minimal-rank", "exact", "t1 + 7 t2", Fraction(st.t(1) + 7 * st.t(2)),
                           applicable=False, reason="a degree >= 3 exists: not of minimal rank"))
    T7 = st.T(7)
    base = Fraction(2 * G - t)
    case2 = BoundEntry("not-minimal", "lower", "2|G| - t + max(5/2 T7, 1)",
                       base + max(Fraction(5, 2) * T7, Fraction(1)), applicable=not minimal,
                       reason="" if not minimal else "algebra is of minimal rank")
    rep.add(case2)
    rep.add(BoundEntry("not-minimal-sharper-constant", "lower", "2|G| - t + max(7/2 T7, 1)",
                       base + max(Fraction(7, 2) * T7, Fraction(1)), applicable=not minimal,
                       conditional="intermediate constant from the argument, not part of the stated bound"))
    nt = profile.largest
    rep.add(BoundEntry("large-block-remark", "lower", "2|G| + n_t - t - 1",
                       Fraction(2 * G + nt - t - 1), applicable=nt >= 3,
                       reason="" if nt >= 3 else "largest degree < 3"))
    big = [n for n in profile.degrees if n >= 2]
    if big:
        combo = st.t(1) + blaser_52(big)
        rep.add(BoundEntry("noncommutative-part", "lower", "t1 + 5/2 sum n^2 - 3 sum n (n >= 2)", combo))
    else:
        rep.add(BoundEntry("noncommutative-part", "lower", "t1 + 5/2 sum n^2 - 3 sum n (n >= 2)",
                           Fraction(st.t(1)), applicable=False, reason="commutative algebra"))
    return rep


# omega dependent bounds


def _dec(x) -> Decimal:
    if isinstance(x, Fraction):
        return Decimal(x.numerator) / Decimal(x.denominator)
    return Decimal(x)


def _pow(base, expo) -> Decimal:
    """base ** expo in the ambient decimal context (base > 0)."""
    return _dec(base) ** _dec(expo)


def omega_sum_bound(profile: CharacterDegreeProfile, w: OmegaParam = DEFAULT_OMEGA) -> list[BoundEntry]:
    w = OmegaParam.parse(w)
    cond = f"conditional on exponent >= {w}"
    with localcontext() as ctx:
        ctx.prec = PRECISION
        om = w.decimal()
        total = sum(_pow(n, om) for n in profile.degrees)
        largest = _pow(profile.largest, om)
        G, t = profile.group_order, profile.t
        closed = _pow(G, om / 2) / _pow(t, om * om / 4 - om / 2)
    return [
        BoundEntry("omega-sum", "lower", "sum n^w", +total, conditional=cond),
        BoundEntry("omega-largest", "lower", "n_t^w", +largest, conditional=cond),
        BoundEntry("omega-closed-form", "lower", "|G|^(w/2) / t^(w^2/4 - w/2)", +closed, conditional=cond),
    ]


def upper_estimates(profile: CharacterDegreeProfile, d_list=None,
                    w: OmegaParam = DEFAULT_OMEGA) -> list[BoundEntry]:
    w = OmegaParam.parse(w)
    degs = profile.degrees
    d_list = [1] * len(degs) if d_list is None else [int(d) for d in d_list]
    if len(d_list) != len(degs) or any(d < 1 for d in d_list):
        raise BoundError("d_list must give one positive division-algebra degree per block")
    witness = sum(recursive_matrix_length(n) * (2 * d - 1) for n, d in zip(degs, d_list))
    out = [BoundEntry("witness", "upper", "sum len(strassen(n)) (2d - 1)", Fraction(witness),
                      witnessed=True, reason="explicit algorithm: recursive Strassen per block")]
    cond = f"conditional on exponent <= {w}; asymptotic form, no witness"
    G, f = profile.group_order, profile.largest
    with localcontext() as ctx:
        ctx.prec = PRECISION
        om = w.decimal()
        general = _pow(G, om / 2)
        large = G * _pow(f, om - 2 + 4 / (om + 2))
        best_h = min((G * (_pow(h, om) + _pow(f, om) / (h * h)), h) for h in range(1, f + 1))
    out.append(BoundEntry("general-upper", "upper", "|G|^(w/2)", +general, conditional=cond))
    out.append(BoundEntry("largest-degree-upper", "upper", "|G| f^(w - 2 + 4/(w + 2))", +large, conditional=cond))
    out.append(BoundEntry("split-upper", "upper", "min_h |G| (h^w + f^w / h^2)", +best_h[0],
                          conditional=cond, reason=f"minimum at h = {best_h[1]}"))
    return out


def semisimple_report(profile: CharacterDegreeProfile, w: OmegaParam = DEFAULT_OMEGA,
                      d_list=None) -> BoundReport:
    """Everything computable from a degree profile: lower bounds, omega bounds, upper estimates."""
    rep = classify_semisimple(profile)
    rep.extend(omega_sum_bound(profile, w))
    rep.extend(upper_estimates(profile, d_list, w))
    rep.check()
    return rep


# Schoenhage root


def schonhage_root(degrees, r, tol: Decimal = ROOT_TOLERANCE) -> Decimal:
    """The root x of sum n^x = r, by bisection."""
    degs = [int(n) for n in degrees]
    if not degs or any(n < 1 for n in degs):
        raise BoundError("degrees must be positive integers")
    if all(n == 1 for n in degs):
        raise BoundError("all degrees are 1: no matrix block, theorem inapplicable")
    with localcontext() as ctx:
        ctx.prec = PRECISION
        r = _dec(r)
        if r <= len(degs):
            raise BoundError(f"r = {r} <= t = {len(degs)}: no positive root")

        def g(x):
            return sum(_pow(n, x) for n in degs) - r

        lo, hi = Decimal(0), Decimal(1)
        while g(hi) < 0:
            lo, hi = hi, hi * 2
        while hi - lo > tol:
            mid = (lo + hi) / 2
            if g(mid) < 0:
                lo = mid
            else:
                hi = mid
        return ((lo + hi) / 2).quantize(Decimal("1e-13"))


# modular bounds


def blrad_value(rp: RadicalProfile, dimA: int, m1: int, m2: int) -> int:
    return dimA - rp.dim_power(m1 + m2 - 1) + rp.dim_power(m1) + rp.dim_power(m2)


def blrad_table(rp: RadicalProfile, dimA: int) -> dict:
    N = rp.nilpotence_index
    return {(a, b): blrad_value(rp, dimA, a, b) for a in range(1, N) for b in range(a, N)}


def _check_rp(rp: RadicalProfile, dimA: int) -> None:
    if dimA != rp.dim_power(0):
        raise BoundError(f"dimA = {dimA} but the radical profile describes dimension {rp.dim_power(0)}")


def modular_blrad(rp: RadicalProfile, dimA: int) -> tuple[BoundEntry, tuple[int, int] | None]:
    """Maximise dim A - dim R^(m1+m2-1) + dim R^m1 + dim R^m2; ties go to the smallest pair."""
    _check_rp(rp, dimA)
    N = rp.nilpotence_index
    best, arg = None, None
    for a in range(1, N):
        for b in range(1, N):
            v = blrad_value(rp, dimA, a, b)
            if best is None or v > best:
                best, arg = v, (a, b)
    if best is None:
        return BoundEntry("large-radical", "lower", "dim A - dim R^(m1+m2-1) + dim R^m1 + dim R^m2",
                          Fraction(dimA), applicable=False, reason="radical is zero"), None
    return BoundEntry("large-radical", "lower", "dim A - dim R^(m1+m2-1) + dim R^m1 + dim R^m2",
                      Fraction(best), reason=f"optimum at (m1, m2) = {arg}"), arg


def modular_coefficient(rp: RadicalProfile, dimA: int) -> Fraction:
    entry, _ = modular_blrad(rp, dimA)
    return Fraction(entry.value) / dimA


def modular_report(rp: RadicalProfile) -> dict:
    dimA = rp.dim_power(0)
    entry, arg = modular_blrad(rp, dimA)
    return {
        "dim": dimA,
        "blrad": entry.bound,
        "optimum": list(arg) if arg else None,
        "coefficient": _fmt_value(Fraction(entry.value) / dimA),
        "entry": entry.to_dict(),
    }


# fits and inequalities


def rank_exponent_fit(series, cutoff: int = 1) -> Decimal:
    """max log(rank)/log(dim) over points with dim > cutoff: a finite estimate of the rank exponent."""
    pts = [(int(d), Fraction(r)) for d, r in series]
    if len(pts) < 2:
        raise BoundError("need at least two (dim, rank) points")
    if any(b[0] <= a[0] for a, b in zip(pts, pts[1:])):
        raise BoundError("dims must be strictly increasing")
    use = [(d, r) for d, r in pts if d > max(cutoff, 1)]
    if not use:
        raise BoundError(f"no point with dim > {cutoff}")
    with localcontext() as ctx:
        ctx.prec = PRECISION
        return +max(_dec(r).ln() / Decimal(d).ln() for d, r in use)


def holder_sides(degrees, delta) -> tuple[Decimal, Decimal]:
    """(sum n, t^(1-1/delta) (sum n^delta)^(1/delta))."""
    degs = list(degrees)
    with localcontext() as ctx:
        ctx.prec = PRECISION
        d = _dec(Fraction(delta))
        lhs = Decimal(sum(degs))
        rhs = _pow(len(degs), 1 - 1 / d) * sum(_pow(n, d) for n in degs) ** (1 / d)
        return +lhs, +rhs


def convexity_sides(values, alpha) -> tuple[Decimal, Decimal]:
    """(sum n^alpha, (sum n)^alpha)."""
    vals = list(values)
    with localcontext() as ctx:
        ctx.prec = PRECISION
        a = _dec(Fraction(alpha))
        return +sum(_pow(n, a) for n in vals), +_pow(sum(vals), a)
