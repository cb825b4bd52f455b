"""Acceptance criteria, one check per criterion.

Run under pytest (``pytest tests/test_acceptance.py -s`` shows the lines) or
directly (``python3 tests/test_acceptance.py``) to print one PASS/FAIL line
per criterion.  Tolerances are pinned in the constants below.
"""
from __future__ import annotations

import time
from decimal import Decimal, localcontext
from fractions import Fraction

import numpy as np
import pytest

from grouprank.algebra import (
    augmentation_radical,
    group_algebra,
    matrix_algebra,
    radical_powers_generic,
    radical_profile_closed_form,
)
from grouprank.bilinear import brute_force_rank, dft_abelian_algo, strassen_2x2, verify
from grouprank.bounds import (
    PRECISION,
    classify_semisimple,
    convexity_sides,
    holder_sides,
    modular_blrad,
    schonhage_root,
    upper_estimates,
)
from grouprank.degrees import degrees_catalog, degrees_dixon, degrees_symmetric
from grouprank.fastmul import AbelianTransform, decomposed_mul, naive_mul, ntt_mul, s3_map
from grouprank.fields import FieldSpec
from grouprank.groups import build_group, sylow_p_subgroup

DEGREES_BUDGET_S = 60.0
LOWER_BOUNDS_BUDGET_S = 10.0
RANK_SEARCH_BUDGET_S = 60.0
MODULAR_BUDGET_S = 30.0
ROOT_TOL_LOG2_7 = 1e-4
ROOT_TOL_EXACT = 1e-9
LOG2_7 = Decimal(7).ln() / Decimal(2).ln()
# relative slack for comparisons of 60-digit decimals (rounding only; no modelling slack)
DECIMAL_REL_TOL = Decimal("1e-40")
PROPERTY_SAMPLES = 1000
PROPERTY_EXPONENTS = (Fraction(1), Fraction(3, 2), Fraction(2), Fraction("2.3727"))

RESULTS: dict[str, tuple[bool, str]] = {}


def report(key: str, title: str, ok: bool, detail: str) -> None:
    RESULTS[key] = (ok, detail)
    print(f"[{'PASS' if ok else 'FAIL'}] {key} {title}: {detail}")


# 1 and 2


DIXON_VS_CATALOG = (
    [f"C:{n}" for n in range(1, 33)]
    + [f"D:{n}" for n in range(1, 13)]
    + ["Q8", "GL2:2", "GL2:3", "F:5", "F:7"]
)


def check_degrees():
    t0 = time.perf_counter()
    mismatches, profiles = [], []
    for n in (3, 4, 5, 6):
        d = degrees_dixon(build_group(f"S:{n}"))
        h = degrees_symmetric(n)
        profiles.append(d)
        if d.degrees != h.degrees:
            mismatches.append(f"S:{n}")
    for spec in DIXON_VS_CATALOG:
        d = degrees_dixon(build_group(spec))
        profiles.append(d)
        if d.degrees != degrees_catalog(spec).degrees:
            mismatches.append(spec)
    elapsed = time.perf_counter() - t0
    ok = not mismatches and elapsed < DEGREES_BUDGET_S
    return ok, profiles, f"{len(profiles)} groups, mismatches={mismatches}, {elapsed:.1f}s < {DEGREES_BUDGET_S:.0f}s"


@pytest.fixture(scope="module")
def degree_run():
    return check_degrees()


def test_ac01_degrees(degree_run):
    ok, _, detail = degree_run
    report("AC1", "Dixon degrees equal hook-length and catalog profiles", ok, detail)
    assert ok, detail


def check_sum_of_squares(profiles):
    bad = [p for p in profiles if sum(d * d for d in p.degrees) != p.group_order]
    return not bad, f"{len(profiles)} profiles, violations={len(bad)}"


def test_ac02_sum_of_squares(degree_run):
    ok, detail = check_sum_of_squares(degree_run[1])
    report("AC2", "sum of squared degrees equals |G|", ok, detail)
    assert ok, detail


# 3


def check_minimal_rank():
    expected = {"S:3": 9, "Q8": 11, "D:4": 11}
    parts, ok = [], True
    for spec, want in expected.items():
        prof = degrees_dixon(build_group(spec))
        rep = classify_semisimple(prof)
        st = prof.stats
        e = rep.get("minimal-rank")
        vals = (e.bound, st.t(1) + 7 * st.t(2), 2 * prof.group_order - prof.t)
        good = e.applicable and e.kind == "exact" and rep.exact == want and all(v == want for v in vals)
        ok &= good
        parts.append(f"{spec}={rep.exact}")
    return ok, ", ".join(parts)


def test_ac03_minimal_rank():
    ok, detail = check_minimal_rank()
    report("AC3", "minimal-rank classification", ok, detail)
    assert ok, detail


# 4


def check_lower_bounds():
    t0 = time.perf_counter()
    rep4 = classify_semisimple(degrees_symmetric(4))
    rep5 = classify_semisimple(degrees_symmetric(5))
    rep6 = classify_semisimple(degrees_symmetric(6))
    elapsed = time.perf_counter() - t0
    got = {
        "S4.best": rep4.best_lower, "S4.remark": rep4.get("large-block-remark").bound,
        "S4.case2": rep4.get("not-minimal").bound, "S4.case3": rep4.get("noncommutative-part").bound,
        "S5.best": rep5.best_lower, "S6.best": rep6.best_lower,
        "S6.case3": rep6.get("noncommutative-part").bound,
    }
    want = {"S4.best": 45, "S4.remark": 45, "S4.case2": 44, "S4.case3": 33,
            "S5.best": 238, "S6.best": 1575, "S6.case3": 1575}
    ok = got == want and elapsed < LOWER_BOUNDS_BUDGET_S
    return ok, f"{got}, {elapsed:.3f}s"


def test_ac04_lower_bounds():
    ok, detail = check_lower_bounds()
    report("AC4", "non-minimal lower bounds", ok, detail)
    assert ok, detail


# 5


def check_verifier(n_corruptions=100, seed=5):
    ok = True
    parts = []
    for fld in ("2", "5", "Q"):
        F = FieldSpec.parse(fld)
        algo = strassen_2x2(F)
        A = matrix_algebra(2, F)
        good = bool(verify(algo, A))
        rng = np.random.default_rng(seed)
        rejected = 0
        for _ in range(n_corruptions):
            arr = rng.integers(3)
            r, c = rng.integers(len(algo)), rng.integers(4)
            mats = [algo.U.copy(), algo.V.copy(), algo.W.copy()]
            M = mats[arr]
            if F.q is None:
                M[r, c] = M[r, c] + Fraction(int(rng.integers(1, 5)))
            else:
                M[r, c] = (M[r, c] + int(rng.integers(1, F.q))) % F.q
            bad = type(algo)(algo.dims, F, *mats)
            res = verify(bad, A)
            rejected += (not res.ok) and res.failing_pair is not None
        ok &= good and rejected == n_corruptions
        parts.append(f"{F}: valid={good}, rejected {rejected}/{n_corruptions}")
    return ok, "; ".join(parts)


def test_ac05_verifier():
    ok, detail = check_verifier()
    report("AC5", "verifier soundness", ok, detail)
    assert ok, detail


# 6


def check_rank_search():
    parts, ok = [], True
    for spec, q, want in (("C:2", 3, 2), ("C:2", 2, 3)):
        A = group_algebra(build_group(spec), FieldSpec(q))
        t0 = time.perf_counter()
        res = brute_force_rank(A, 6)
        elapsed = time.perf_counter() - t0
        good = res.rank == want and bool(verify(res.witness, A)) and len(res.witness) == want
        ok &= good and elapsed < RANK_SEARCH_BUDGET_S
        parts.append(f"GF({q})[Z2] rank={res.rank} ({elapsed:.2f}s)")
    return ok, ", ".join(parts)


def test_ac06_rank_search():
    ok, detail = check_rank_search()
    report("AC6", "exhaustive rank", ok, detail)
    assert ok, detail


# 7


def check_schonhage():
    r1 = schonhage_root((1, 1, 2), 9)
    r2 = schonhage_root((2,), 8)
    e1, e2 = abs(r1 - LOG2_7), abs(r2 - 3)
    ok = e1 < Decimal(ROOT_TOL_LOG2_7) and e2 < Decimal(ROOT_TOL_EXACT)
    return ok, f"root(1,1,2;9)={r1} (err {e1:.1e}), root(2;8)={r2} (err {e2:.1e})"


def test_ac07_schonhage():
    ok, detail = check_schonhage()
    report("AC7", "Schonhage root", ok, detail)
    assert ok, detail


# 8


def check_modular():
    t0 = time.perf_counter()
    parts, ok = [], True
    for spec, p in (("A:2,2", 2), ("A:2,4", 2), ("A:3,3", 3), ("S:3", 3)):
        G = build_group(spec)
        syl = sylow_p_subgroup(G, p)
        cf = radical_profile_closed_form(G.order // syl.order, p, syl.exponents)
        gen = radical_powers_generic(group_algebra(G, FieldSpec(p)), augmentation_radical(G, p))
        ok &= list(cf.dims) == list(gen)
        parts.append(f"GF({p})[{spec}] {list(cf.dims)}=={list(gen)}")
    for spec, p, want in (("C:2", 2, 3), ("A:2,2", 2, 7), ("C:3", 3, 5)):
        G = build_group(spec)
        syl = sylow_p_subgroup(G, p)
        rp = radical_profile_closed_form(G.order // syl.order, p, syl.exponents)
        entry, _ = modular_blrad(rp, G.order)
        ok &= entry.bound == want
        parts.append(f"blrad GF({p})[{spec}]={entry.bound}")
    elapsed = time.perf_counter() - t0
    ok &= elapsed < MODULAR_BUDGET_S
    return ok, "; ".join(parts) + f"; {elapsed:.2f}s"


def test_ac08_modular():
    ok, detail = check_modular()
    report("AC8", "modular formulas", ok, detail)
    assert ok, detail


# 9


def check_fast_mul(seed=9):
    rng = np.random.default_rng(seed)
    parts, ok = [], True
    for spec, q in (("C:4", 5), ("C:16", 17), ("A:6,2", 13)):
        G = build_group(spec)
        tr = AbelianTransform(G, q)
        same = 0
        for _ in range(200):
            x = rng.integers(0, q, G.order)
            y = rng.integers(0, q, G.order)
            same += np.array_equal(ntt_mul(G, q, x, y, transform=tr), naive_mul(G, q, x, y))
        algo = dft_abelian_algo(G, q)
        good_algo = bool(verify(algo, group_algebra(G, FieldSpec(q)))) and len(algo) == G.order
        ok &= same == 200 and good_algo
        parts.append(f"{spec}/GF({q}) ntt {same}/200, dft len {len(algo)} verified={good_algo}")
    F = FieldSpec.parse("Q")
    G = build_group("S:3")
    dmap = s3_map(F)
    same = 0
    for _ in range(100):
        x, y = F.random_vector(rng, 6), F.random_vector(rng, 6)
        same += F.equal(decomposed_mul(dmap, x, y), naive_mul(G, F, x, y))
    ok &= same == 100
    parts.append(f"S3/Q decomposed {same}/100")
    return ok, "; ".join(parts)


def test_ac09_fast_mul():
    ok, detail = check_fast_mul()
    report("AC9", "fast multiplication equivalence", ok, detail)
    assert ok, detail


# 10


def catalog_specs(max_order=720):
    specs = [f"C:{n}" for n in range(1, 65)] + ["A:2,2", "A:2,4", "A:3,3", "A:6,2"]
    specs += [f"D:{n}" for n in range(1, max_order // 2 + 1)]
    specs += [f"S:{n}" for n in range(1, 7)] + ["Q8"]
    specs += [f"GL2:{q}" for q in (2, 3, 4, 5)]
    specs += [f"F:{p}" for p in (2, 3, 5, 7, 11, 13, 17, 19, 23)]
    return specs


def check_ordering():
    bad, count = [], 0
    for spec in catalog_specs():
        prof = degrees_catalog(spec)
        if prof.group_order > 720:
            continue
        count += 1
        lower = classify_semisimple(prof).best_lower
        witness = upper_estimates(prof)[0].bound
        if witness < lower:
            bad.append(spec)
    s3 = upper_estimates(degrees_catalog("S:3"))[0].bound
    s3_exact = classify_semisimple(degrees_catalog("S:3")).exact
    ok = not bad and s3 == 9 == s3_exact
    return ok, f"{count} groups, violations={bad}, S3 witness={s3}, exact={s3_exact}"


def test_ac10_ordering():
    ok, detail = check_ordering()
    report("AC10", "upper/lower ordering", ok, detail)
    assert ok, detail


# 11


def random_profiles(rng, count):
    out = []
    for _ in range(count):
        t = int(rng.integers(1, 30))
        out.append([int(v) for v in rng.integers(1, 60, size=t)])
    return out


def not_above(lhs: Decimal, rhs: Decimal) -> bool:
    """lhs <= rhs up to DECIMAL_REL_TOL, evaluated at the working precision of the inputs."""
    with localcontext() as ctx:
        ctx.prec = PRECISION
        return lhs - rhs <= abs(rhs) * DECIMAL_REL_TOL


def check_properties(seed=11):
    rng = np.random.default_rng(seed)
    holder_bad = convex_bad = 0
    profiles = random_profiles(rng, PROPERTY_SAMPLES)
    for prof in profiles:
        for e in PROPERTY_EXPONENTS:
            lhs, rhs = holder_sides(prof, e)
            holder_bad += not not_above(lhs, rhs)
            lhs, rhs = convexity_sides(prof, e)
            convex_bad += not not_above(lhs, rhs)
    ok = holder_bad == 0 and convex_bad == 0
    checks = len(profiles) * len(PROPERTY_EXPONENTS)
    return ok, f"{checks} Holder checks, {holder_bad} violations; {checks} convexity checks, {convex_bad} violations"


def test_ac11_properties():
    ok, detail = check_properties()
    report("AC11", "Holder and convexity inequalities", ok, detail)
    assert ok, detail


def main() -> int:
    ok1, profiles, d1 = check_degrees()
    report("AC1", "Dixon degrees equal hook-length and catalog profiles", ok1, d1)
    report("AC2", "sum of squared degrees equals |G|", *check_sum_of_squares(profiles))
    report("AC3", "minimal-rank classification", *check_minimal_rank())
    report("AC4", "non-minimal lower bounds", *check_lower_bounds())
    report("AC5", "verifier soundness", *check_verifier())
    report("AC6", "exhaustive rank", *check_rank_search())
    report("AC7", "Schonhage root", *check_schonhage())
    report("AC8", "modular formulas", *check_modular())
    report("AC9", "fast multiplication equivalence", *check_fast_mul())
    report("AC10", "upper/lower ordering", *check_ordering())
    report("AC11", "Holder and convexity inequalities", *check_properties())
    failed = [k for k, (ok, _) in RESULTS.items() if not ok]
    print(f"{len(RESULTS) - len(failed)}/{len(RESULTS)} criteria pass")
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
