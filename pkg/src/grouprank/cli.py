"""Command-line interface: one JSON report line per invocation on stdout.

Exit codes: 0 success, 1 usage error, 2 validation failure, 3 refusal
(instance infeasible or preconditions unmet).
"""
from __future__ import annotations

import argparse
import json
import math
import platform
import sys
import time

import numpy as np
import sympy

from . import __version__, kernels
from .algebra import (
    AlgebraError,
    RefusalError,
    algebra_from_spec,
    group_radical_profile,
    radical_profile_from_dims,
    read_algebra,
    write_algebra,
)
from .bilinear import (
    AlgorithmError,
    InfeasibleError,
    brute_force_rank,
    dft_abelian_algo,
    interpolation_ext_algo,
    matrix_algo_recursive,
    read_algorithm,
    strassen_2x2,
    trivial_algorithm,
    verify,
    write_algorithm,
)
from .bounds import BoundError, OmegaParam, modular_report, schonhage_root, semisimple_report
from .degrees import DegreeError, degrees_catalog, degrees_dixon, degrees_symmetric
from .fastmul import (
    AbelianTransform,
    MulError,
    OpCounter,
    decomposed_mul,
    decomposition_algorithm,
    dft_map,
    naive_mul,
    ntt_mul,
    read_map,
    s3_map,
    verify_isomorphism,
    write_map,
)
from .fields import FieldError, FieldSpec
from .groups import (
    GroupError,
    GroupSpec,
    build_group,
    center,
    conjugacy_classes,
    exponent,
    prime_divisors,
    sylow_p_subgroup,
)

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_REFUSED = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _versions() -> dict:
    return {
        "grouprank": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "sympy": sympy.__version__,
        "backend": kernels.BACKEND,
    }


def _envelope(command: str, inputs: dict, results: dict, seconds: float, extra_timing=None) -> dict:
    timing = {"seconds": round(seconds, 6)}
    if extra_timing:
        timing.update(extra_timing)
    return {"command": command, "inputs": inputs, "results": results,
            "versions": _versions(), "timing": timing}


def _fmt_vec(F: FieldSpec, v) -> list[str]:
    return [F.fmt(c) for c in v]


# commands


def cmd_info(args) -> dict:
    G = build_group(args.spec)
    cc = conjugacy_classes(G)
    syl = {}
    for p in prime_divisors(G.order):
        s = sylow_p_subgroup(G, p)
        syl[str(p)] = {"order": s.order, "normal": s.normal,
                       "abelian_factors": list(s.abelian_factors) if s.abelian_factors is not None else None}
    return {
        "label": G.label,
        "order": G.order,
        "classes": cc.count,
        "class_sizes": sorted(cc.sizes()),
        "center_size": len(center(G)),
        "exponent": exponent(G),
        "abelian": G.is_abelian(),
        "sylow": syl,
    }


def _profile(spec: str, method: str):
    if method == "catalog":
        return degrees_catalog(spec)
    if method == "hook":
        gs = GroupSpec.parse(spec)
        if gs.family != "S":
            raise DegreeError("the hook-length method applies to S:n only")
        return degrees_symmetric(gs.params[0])
    return degrees_dixon(build_group(spec))


def cmd_degrees(args) -> dict:
    prof = _profile(args.spec, args.method)
    st = prof.stats
    return {**prof.to_dict(), "t": prof.t, "largest": prof.largest,
            "t_counts": {str(k): v for k, v in st.t_counts.items()}}


def cmd_bounds(args) -> dict:
    prof = _profile(args.spec, args.method)
    w = OmegaParam.parse(args.omega)
    rep = semisimple_report(prof, w)
    return {"profile": prof.to_dict(), "omega": {"value": str(w), "source": w.source}, **rep.to_dict()}


def cmd_radical(args) -> dict:
    G = build_group(args.spec)
    p = args.p
    if not sympy.isprime(p):
        raise FieldError(f"p = {p} is not prime")
    data = group_radical_profile(G, p, generic=not args.no_generic)
    out = {"n": data["n"], "p": p, "sylow_order": data["sylow_order"]}
    cf = data.get("closed_form")
    gen = data.get("generic_dims")
    if cf is not None:
        out["closed_form_dims"] = list(cf.dims)
    if gen is not None:
        out["generic_dims"] = list(gen)
    if cf is not None and gen is not None:
        out["agree"] = list(cf.dims) == list(gen)
        if not out["agree"]:
            raise AlgebraError(f"closed form {cf.dims} disagrees with span computation {gen}")
    rp = cf
    if rp is None:
        if gen is None:
            raise RefusalError("Sylow subgroup is not abelian: no closed form; rerun without --no-generic")
        rp = radical_profile_from_dims(data["n"], p, (round(math.log(data["sylow_order"], p)),), gen)
    out["radical_dim"] = rp.dim_power(1)
    out["nilpotence_index"] = rp.nilpotence_index
    out.update(modular_report(rp))
    return out


def cmd_rank_search(args) -> dict:
    A = read_algebra(args.algebra)
    res = brute_force_rank(A, args.max)
    out = {"algebra": A.label, "dim": A.dim, "field": str(A.field), "r_max": args.max, "nodes": res.nodes}
    if res.rank is None:
        out["rank"] = None
        out["summary"] = f"rank > {args.max}"
    else:
        out["rank"] = res.rank
        out["summary"] = f"rank = {res.rank}"
        if args.witness:
            write_algorithm(res.witness, args.witness)
            out["witness_file"] = args.witness
    return out


def cmd_verify(args) -> dict:
    algo = read_algorithm(args.algorithm)
    A = read_algebra(args.algebra)
    res = verify(algo, A)
    out = {"valid": res.ok, "length": len(algo),
           "failing_pair": list(res.failing_pair) if res.failing_pair else None}
    out["summary"] = f"VALID, length {len(algo)}" if res.ok else f"INVALID, first failing basis pair {res.failing_pair}"
    return out


def _load_map(args, G, F):
    if args.map:
        dmap = read_map(args.map)
        if dmap.field != F:
            raise MulError(f"map is over {dmap.field}, requested {F}")
        res = verify_isomorphism(dmap, G, F)
        if not res:
            raise MulError(f"decomposition map does not verify ({res.reason} at {res.failing_pair})")
        return dmap
    if G.label == "S:3":
        return s3_map(F)
    if F.q is not None and G.is_abelian():
        return dft_map(G, F.q)
    raise MulError("no built-in decomposition map for this group; pass --map")


def cmd_mul(args, timings: dict) -> dict:
    G = build_group(args.spec)
    F = FieldSpec.parse(args.field)
    rng = np.random.default_rng(args.seed)
    methods = ["naive", "ntt", "decomposed"] if args.method == "all" else [args.method]
    if args.bench and "naive" not in methods:
        methods = ["naive"] + methods
    runners = {}
    for m in methods:
        if m == "naive":
            runners[m] = lambda x, y, c: naive_mul(G, F, x, y, c)
        elif m == "ntt":
            if F.q is None:
                raise MulError("the ntt method needs a prime field")
            tr = AbelianTransform(G, F.q)
            runners[m] = lambda x, y, c, tr=tr: ntt_mul(G, F.q, x, y, c, tr)
        elif m == "decomposed":
            dmap = _load_map(args, G, F)
            runners[m] = lambda x, y, c, dmap=dmap: decomposed_mul(dmap, x, y, c)
    if args.x is not None or args.y is not None:
        if args.x is None or args.y is None:
            raise UsageError("--x and --y must be given together")
        pairs = [(F.array(args.x.split(",")), F.array(args.y.split(",")))]
    else:
        pairs = [(F.random_vector(rng, G.order), F.random_vector(rng, G.order))
                 for _ in range(args.pairs if args.bench else 1)]
    counts, products = {}, {}
    for m, run in runners.items():
        c = OpCounter()
        t0 = time.perf_counter()
        outs = [run(x, y, c) for x, y in pairs]
        timings[f"{m}_seconds"] = round(time.perf_counter() - t0, 6)
        counts[m] = {"bilinear_per_product": c.bilinear // len(pairs), "linear_per_product": c.linear // len(pairs)}
        products[m] = outs
    ref = products[methods[0]]
    agree = all(all(F.equal(a, b) for a, b in zip(ref, products[m])) for m in methods)
    if not agree:
        raise MulError("strategies disagree")
    out = {"group": G.label, "field": str(F), "methods": methods, "pairs": len(pairs),
           "counts": counts, "agree": agree}
    if not args.bench:
        out["product"] = _fmt_vec(F, ref[0])
    return out


def cmd_emit_algebra(args) -> dict:
    F = FieldSpec.parse(args.field)
    A = algebra_from_spec(args.kind, args.arg, F)
    write_algebra(A, args.output)
    return {"label": A.label, "dim": A.dim, "field": str(F), "file": args.output}


def cmd_emit_algorithm(args) -> dict:
    F = FieldSpec.parse(args.field)
    kind, arg = args.kind, args.arg
    if kind == "strassen":
        algo = strassen_2x2(F)
    elif kind == "matrix":
        algo = matrix_algo_recursive(int(arg), F)
    elif kind == "interp":
        coeffs = [int(c) for c in arg.split(",")]
        algo = interpolation_ext_algo(len(coeffs) - 1, coeffs, F)
    elif kind == "dft":
        if F.q is None:
            raise FieldError("dft algorithms need a prime field")
        algo = dft_abelian_algo(build_group(arg), F.q)
    elif kind == "decomposition":
        G = build_group(arg)
        algo = decomposition_algorithm(_load_map(args, G, F))
    elif kind == "trivial":
        algo = trivial_algorithm(algebra_from_spec("group", arg, F))
    else:
        raise UsageError(f"unknown algorithm kind {kind!r}")
    write_algorithm(algo, args.output)
    return {"label": algo.label, "length": len(algo), "dims": list(algo.dims), "file": args.output}


def cmd_emit_map(args) -> dict:
    F = FieldSpec.parse(args.field)
    G = build_group(args.spec)
    dmap = _load_map(args, G, F)
    write_map(dmap, args.output)
    return {"group": G.label, "blocks": [list(b) for b in dmap.blocks], "file": args.output}


def cmd_schonhage(args) -> dict:
    degs = [int(d) for d in args.degrees.split(",")]
    root = schonhage_root(degs, args.rank)
    return {"degrees": degs, "rank": args.rank, "root": str(root)}


# parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="grouprank", description="Bilinear complexity toolkit for group algebras.")
    p.add_argument("--version", action="version", version=f"grouprank {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("info", help="group structure summary")
    s.add_argument("spec")

    s = sub.add_parser("degrees", help="irreducible character degrees")
    s.add_argument("spec")
    s.add_argument("--method", choices=["dixon", "catalog", "hook"], default="dixon")

    s = sub.add_parser("bounds", help="rank bounds for the semisimple group algebra")
    s.add_argument("spec")
    s.add_argument("--omega", default="2.3727")
    s.add_argument("--method", choices=["dixon", "catalog", "hook"], default="dixon")

    s = sub.add_parser("radical", help="radical powers and the large-radical bound over GF(p)")
    s.add_argument("spec")
    s.add_argument("-p", type=int, required=True)
    s.add_argument("--no-generic", action="store_true", help="skip the span computation")

    s = sub.add_parser("rank-search", help="exhaustive rank of a tiny algebra")
    s.add_argument("algebra", help="algebra JSON file")
    s.add_argument("--max", type=int, default=4)
    s.add_argument("--witness", help="write the minimal algorithm here")

    s = sub.add_parser("verify", help="check an algorithm file against an algebra file")
    s.add_argument("algorithm")
    s.add_argument("algebra")

    s = sub.add_parser("mul", help="multiply in a group algebra, optionally benchmarking strategies")
    s.add_argument("spec")
    s.add_argument("--field", default="Q")
    s.add_argument("--method", choices=["naive", "ntt", "decomposed", "all"], default="naive")
    s.add_argument("--map", help="decomposition map file")
    s.add_argument("--bench", action="store_true")
    s.add_argument("--pairs", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--x", help="comma separated coefficients")
    s.add_argument("--y", help="comma separated coefficients")

    s = sub.add_parser("emit-algebra", help="write an algebra file")
    s.add_argument("kind", choices=["group", "matrix", "poly"])
    s.add_argument("arg", help="group spec, matrix size, or modulus coefficients low to high")
    s.add_argument("--field", default="Q")
    s.add_argument("-o", "--output", required=True)

    s = sub.add_parser("emit-algorithm", help="write an algorithm file")
    s.add_argument("kind", choices=["strassen", "matrix", "interp", "dft", "decomposition", "trivial"])
    s.add_argument("arg", nargs="?", default="")
    s.add_argument("--field", default="Q")
    s.add_argument("--map", help="decomposition map file")
    s.add_argument("-o", "--output", required=True)

    s = sub.add_parser("emit-map", help="write a decomposition map file")
    s.add_argument("spec")
    s.add_argument("--field", default="Q")
    s.add_argument("--map", help=argparse.SUPPRESS)
    s.add_argument("-o", "--output", required=True)

    s = sub.add_parser("schonhage", help="root of sum n^x = r")
    s.add_argument("degrees", help="comma separated degrees")
    s.add_argument("rank", type=int)
    return p


COMMANDS = {
    "info": cmd_info,
    "degrees": cmd_degrees,
    "bounds": cmd_bounds,
    "radical": cmd_radical,
    "rank-search": cmd_rank_search,
    "verify": cmd_verify,
    "emit-algebra": cmd_emit_algebra,
    "emit-algorithm": cmd_emit_algorithm,
    "emit-map": cmd_emit_map,
    "schonhage": cmd_schonhage,
}

REFUSALS = (InfeasibleError, RefusalError)
VALIDATION = (GroupError, FieldError, AlgebraError, AlgorithmError, DegreeError, BoundError, MulError,
              OSError, ZeroDivisionError)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    inputs = {k: v for k, v in vars(args).items() if k != "command"}
    t0 = time.perf_counter()
    timings: dict = {}
    try:
        if args.command == "mul":
            results = cmd_mul(args, timings)
        else:
            results = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"grouprank: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except REFUSALS as exc:
        print(f"grouprank: refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except VALIDATION as exc:
        print(f"grouprank: invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID
    report = _envelope(args.command, inputs, results, time.perf_counter() - t0, timings)
    print(json.dumps(report))
    if "summary" in results:
        print(results["summary"], file=sys.stderr)
    if args.command == "verify" and not results["valid"]:
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
