"""Benchmark the compiled kernel against the pure-Python fallback.

Runs micro-benchmarks on the fraction field ops and one macro benchmark
(the full verification suite of a rank-2 flag).  The script re-executes
itself with QFLAG_PURE=1 to time the fallback, so a single invocation
prints the comparison table:

    python benchmarks/bench_kernel.py
"""

import json
import os
import random
import subprocess
import sys
import time


def micro():
    from qflag import _kernel as K
    random.seed(11)

    def rnd_poly(maxdeg=10, step=4):
        return K.pcanon(random.randint(0, 8), step,
                        [random.randint(-4, 4) for _ in range(maxdeg)])

    pairs = []
    for _ in range(120):
        n, d = rnd_poly(), rnd_poly()
        while K.pis_zero(d):
            d = rnd_poly()
        pairs.append(K.fmake(n, d))
    out = {}
    reps = 20
    t0 = time.perf_counter()
    for _ in range(reps):
        for i in range(len(pairs) - 1):
            K.fadd(pairs[i], pairs[i + 1])
    out["fadd"] = reps * (len(pairs) - 1) / (time.perf_counter() - t0)
    t0 = time.perf_counter()
    for _ in range(reps):
        for i in range(len(pairs) - 1):
            K.fmul(pairs[i], pairs[i + 1])
    out["fmul"] = reps * (len(pairs) - 1) / (time.perf_counter() - t0)
    t0 = time.perf_counter()
    n = 0
    for i in range(len(pairs) - 1):
        K.pgcd(K.pmul(pairs[i][0], pairs[i + 1][0]),
               K.pmul(pairs[i][0], pairs[i + 1][1]))
        n += 1
    out["pgcd"] = n / (time.perf_counter() - t0)
    return out


def macro():
    from qflag.cartan import FlagSpec
    from qflag.verify import verify_suite
    t0 = time.perf_counter()
    rep = verify_suite(FlagSpec.parse("B2/1"),
                       ["liouville", "borel-weil", "relations", "mixed"])
    assert rep["ok"]
    return {"verify_B2": time.perf_counter() - t0}


def run_once():
    from qflag import kernel_backend
    out = {"backend": kernel_backend}
    out.update(micro())
    out.update(macro())
    return out


def main():
    if os.environ.get("QFLAG_BENCH_CHILD"):
        print(json.dumps(run_once()))
        return
    here = run_once()
    env = dict(os.environ, QFLAG_PURE="1", QFLAG_BENCH_CHILD="1")
    other = json.loads(subprocess.run(
        [sys.executable, os.path.abspath(__file__)], env=env,
        capture_output=True, text=True, check=True).stdout)
    rows = [here, other] if here["backend"] != "python" else [other, here]
    print(f"{'metric':<12}{rows[0]['backend']:>16}{rows[1]['backend']:>16}{'speedup':>10}")
    for key in ("fadd", "fmul", "pgcd"):
        a, b = rows[0][key], rows[1][key]
        print(f"{key + '/s':<12}{a:>16.0f}{b:>16.0f}{a / b:>10.2f}x")
    a, b = rows[0]["verify_B2"], rows[1]["verify_B2"]
    print(f"{'verify_B2 s':<12}{a:>16.3f}{b:>16.3f}{b / a:>10.2f}x")


if __name__ == "__main__":
    main()
