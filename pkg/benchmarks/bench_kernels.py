"""Compare the compiled and numpy kernel backends, then the multiplication strategies.

    python3 benchmarks/bench_kernels.py --repeat 5 --seed 0
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from grouprank import kernels
from grouprank.algebra import group_algebra
from grouprank.bilinear import rank_one_tensors
from grouprank.fastmul import AbelianTransform, OpCounter, decomposed_mul, dft_map, naive_mul, ntt_mul, s3_map
from grouprank.fields import FieldSpec
from grouprank.groups import build_group


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def bench_backends(repeat, rng):
    rows = []
    G = build_group("S:5")
    q = 10007
    x = rng.integers(0, q, G.order, dtype=np.int64)
    y = rng.integers(0, q, G.order, dtype=np.int64)
    a = rng.integers(0, 7681, (64, 256), dtype=np.int64)
    root = pow(17, (7681 - 1) // 256, 7681)  # 17 generates GF(7681)*
    A = group_algebra(build_group("C:3"), FieldSpec(2))
    triples, R1 = rank_one_tensors(2, 3)
    codes = R1 @ np.array([2 ** k for k in range(27)], dtype=np.int64)
    order = np.argsort(codes)
    target = np.ascontiguousarray(A.constants.reshape(-1) % 2, dtype=np.int64)
    cases = {
        "convolve S5 GF(10007)": lambda k: k.convolve_mod(G.table, x, y, q),
        "ntt 64x256 GF(7681)": lambda k: k.ntt_rows(a.copy(), root, 7681),
        "rank search GF(2)[C3] r=4": lambda k: k.rank_search(
            R1, np.ascontiguousarray(codes[order]), np.ascontiguousarray(order.astype(np.int64)),
            target, 2, 4, 3),
    }
    available = kernels.backends()
    for name, fn in cases.items():
        outs = {}
        for bname, mod in available.items():
            t, out = best_of(lambda: fn(mod), repeat if bname == "cython" else max(1, repeat // 2))
            outs[bname] = (t, out)
        ref = outs["python"][1]
        same = all(_same(o[1], ref) for o in outs.values())
        speed = outs["python"][0] / outs["cython"][0] if "cython" in outs else float("nan")
        rows.append((name, {b: o[0] for b, o in outs.items()}, same, speed))
    return rows


def _same(a, b):
    if isinstance(a, tuple):
        return a[0] == b[0]  # witnesses agree; node counts may differ between backends
    return np.array_equal(a, b)


def bench_strategies(repeat, rng, pairs):
    rows = []
    cases = [("C:16", FieldSpec(17)), ("A:6,2", FieldSpec(13)), ("C:256", FieldSpec(257)),
             ("S:3", FieldSpec.parse("Q")), ("S:3", FieldSpec(7))]
    for spec, F in cases:
        G = build_group(spec)
        data = [(F.random_vector(rng, G.order), F.random_vector(rng, G.order)) for _ in range(pairs)]
        strategies = {"naive": lambda x, y, c: naive_mul(G, F, x, y, c)}
        if G.is_abelian():
            tr = AbelianTransform(G, F.q)
            strategies["ntt"] = lambda x, y, c, tr=tr: ntt_mul(G, F.q, x, y, c, tr)
            dmap = dft_map(G, F.q) if G.order <= 64 else None
        else:
            dmap = s3_map(F)
        if dmap is not None:
            strategies["decomposed"] = lambda x, y, c, dmap=dmap: decomposed_mul(dmap, x, y, c)
        result = {}
        for name, run in strategies.items():
            c = OpCounter()
            t, outs = best_of(lambda: [run(x, y, c) for x, y in data], repeat)
            result[name] = (t / pairs, c.bilinear // (pairs * repeat), outs)
        ref = result["naive"][2]
        agree = all(all(F.equal(a, b) for a, b in zip(ref, r[2])) for r in result.values())
        rows.append((f"{spec} over {F}", result, agree))
    return rows


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--pairs", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)
    rng = np.random.default_rng(args.seed)

    print(f"active backend: {kernels.BACKEND}")
    print("\nkernel backends (best time, seconds)")
    print(f"{'case':32s} {'python':>10s} {'cython':>10s} {'speedup':>8s}  same")
    for name, times, same, speed in bench_backends(args.repeat, rng):
        cy = times.get("cython")
        print(f"{name:32s} {times['python']:10.5f} {cy if cy is not None else float('nan'):10.5f} {speed:8.1f}  {same}")

    print("\nmultiplication strategies (seconds per product, bilinear multiplications)")
    for name, result, agree in bench_strategies(args.repeat, rng, args.pairs):
        cells = "  ".join(f"{k}: {v[0]:.2e}s/{v[1]}" for k, v in result.items())
        print(f"{name:20s} {cells}  agree={agree}")


if __name__ == "__main__":
    main()
