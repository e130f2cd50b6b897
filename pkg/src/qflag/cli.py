"""Command-line interface.

Machine-readable JSON goes to standard output (and, with --json PATH, to a
file); progress notes go to standard error.  Identical invocations against
identical cache state produce byte-identical output: reports carry no
timestamps and all containers are emitted with sorted keys.

Exit codes: 0 all requested checks passed, 1 a verification failed,
2 usage or domain error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import cartan, verify
from .calculus import gamma_crosscheck, gamma_relation_operator
from .cartan import FlagSpec, LieType
from .errors import QflagError
from .peterweyl import PWAlgebra
from .reps import build_irreducible
from .rmatrix import braiding, ybe_check
from .scalars import QContext, exact_root


def _emit(doc, args) -> None:
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    sys.stdout.write(text)
    if getattr(args, "json", None):
        with open(args.json, "w") as fh:
            fh.write(text)


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr)


def _context(args, lie: LieType) -> QContext:
    L = cartan.lattice_denominator(lie)
    if args.q == "symbolic":
        return QContext(L)
    q0 = Fraction(args.q)
    s0 = exact_root(q0, L)  # raises SpecializationError without an exact root
    return QContext(L, s0=s0)


def _algebra(args, lie: LieType) -> PWAlgebra:
    return PWAlgebra(lie, ctx=_context(args, lie), cache_dir=args.cache,
                     guard=args.guard)


def _parse_krange(text: str):
    if ":" in text:
        a, _, b = text.partition(":")
        lo, hi = int(a), int(b)
    else:
        lo = hi = int(text)
    if lo > hi:
        raise QflagError(f"empty k range {text!r}")
    return lo, hi


def _parse_weight(text: str, rank: int):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != rank or not all(p.lstrip("-").isdigit() for p in parts):
        raise QflagError(f"weight {text!r} does not match rank {rank}")
    return tuple(int(p) for p in parts)


def cmd_catalog(args) -> int:
    doc = {
        "schema": "qflag-report",
        "schema_version": verify.SCHEMA_VERSION,
        "kind": "catalog",
        "max_rank": args.max_rank,
        "entries": cartan.catalog(args.max_rank),
    }
    _emit(doc, args)
    return 0


def cmd_rep(args) -> int:
    lie = LieType.parse(args.type)
    lam = _parse_weight(args.weight, lie.rank)
    ctx = _context(args, lie)
    m = build_irreducible(ctx, lie, lam, guard=args.guard)
    doc = {
        "schema": "qflag-report",
        "schema_version": verify.SCHEMA_VERSION,
        "kind": "module",
        "type": str(lie),
        "L": ctx.L,
        "s_meaning": f"s = q^(1/{ctx.L})",
        "mode": ctx.describe()["mode"],
        "lambda": list(lam),
        "dim": m.dim,
        "weights": [list(w) for w in m.weights],
        "matrices": {
            f"{kind}_{i}": [[r, c, str(v)] for (r, c), v in
                            m.gen_matrix(kind, i).entries_sorted()]
            for kind in ("E", "F") for i in range(1, lie.rank + 1)
        },
        "k_exponents": [list(k) for k in m.k_exps],
    }
    _emit(doc, args)
    return 0


def cmd_rmatrix(args) -> int:
    flag = FlagSpec.parse(args.flag)
    alg = _algebra(args, flag.lie)
    lam = verify.crossed_weight(flag)
    v = alg.module(lam)
    _progress(f"solving braiding on V_{lam} (dim {v.dim})")
    br = braiding(v, v)
    ok = ybe_check(v, br)
    doc = {
        "schema": "qflag-report",
        "schema_version": verify.SCHEMA_VERSION,
        "kind": "rmatrix",
        "flag": str(flag),
        "L": alg.ctx.L,
        "s_meaning": f"s = q^(1/{alg.ctx.L})",
        "mode": alg.ctx.describe()["mode"],
        "lambda": list(lam),
        "dim": v.dim,
        "convention": "R(e_i (x) f_j) = sum R^kl_ij f_k (x) e_l; "
                      "lower terms strictly below wt(f_j) in both slots",
        "entries": [[r // v.dim, r % v.dim, c // v.dim, c % v.dim, str(val)]
                    for (r, c), val in br.matrix.entries_sorted()],
        "ybe": ok,
        "ok": ok,
    }
    _emit(doc, args)
    return 0 if ok else 1


def cmd_relations(args) -> int:
    flag = FlagSpec.parse(args.flag)
    alg = _algebra(args, flag.lie)
    rep = verify.quadratic_flatness(alg, flag, dmax=args.maxdeg)
    from .coordring import quadratic_relations
    spec = quadratic_relations(alg, flag)
    rep["relation_vectors"] = [
        sorted([[k, l, str(v)] for (k, l), v in rel.items()])
        for rel in spec.relations
    ]
    _emit(rep, args)
    return 0 if rep["ok"] else 1


def cmd_liouville(args) -> int:
    flag = FlagSpec.parse(args.flag)
    alg = _algebra(args, flag.lie)
    depth = args.depth if args.depth is not None else verify.default_depth(flag)
    rep = verify.liouville_report(alg, flag, depth)
    if args.word_check:
        alt = tuple(reversed(cartan.longest_word(flag.lie)))
        rep2 = verify.liouville_report(alg, flag, depth, word=alt)
        rep["word_check"] = {"word": list(alt), "dim": rep2["dim"],
                             "agree": rep2["dim"] == rep["dim"]}
        rep["ok"] = rep["ok"] and rep["word_check"]["agree"]
    _emit(rep, args)
    return 0 if rep["ok"] else 1


def _bw_task(payload):
    flagname, k, depth, qmode, opposite, cache = payload
    flag = FlagSpec.parse(flagname)
    L = cartan.lattice_denominator(flag.lie)
    ctx = QContext(L) if qmode == "symbolic" else \
        QContext(L, s0=exact_root(Fraction(qmode), L))
    alg = PWAlgebra(flag.lie, ctx=ctx, cache_dir=cache)
    rep = verify.borel_weil_report(alg, flag, kmax=k, depth=depth,
                                   kmin=k, opposite=opposite)
    return rep["rows"][0]


def cmd_borel_weil(args) -> int:
    flag = FlagSpec.parse(args.flag)
    depth = args.depth if args.depth is not None else verify.default_depth(flag)
    kmin, kmax = _parse_krange(args.k)
    if args.jobs > 1:
        payloads = [(args.flag, k, depth, args.q, args.opposite, args.cache)
                    for k in range(kmin, kmax + 1)]
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_bw_task, payloads))
        rows.sort(key=lambda r: r["k"])
        alg = _algebra(args, flag.lie)
        rep = verify._meta(alg, flag, cartan.longest_word(flag.lie))
        rep.update({"kind": "borel_weil", "opposite": args.opposite,
                    "depth": depth, "rows": rows,
                    "ok": all(r["ok"] for r in rows), "jobs": args.jobs})
    else:
        alg = _algebra(args, flag.lie)
        _progress(f"borel-weil {flag} depth {depth} k {kmin}..{kmax}")
        rep = verify.borel_weil_report(alg, flag, kmax=kmax, depth=depth,
                                       kmin=kmin, opposite=args.opposite)
    if args.word_check:
        alt = tuple(reversed(cartan.longest_word(flag.lie)))
        alg2 = _algebra(args, flag.lie)
        rep2 = verify.borel_weil_report(alg2, flag, kmax=kmax, depth=depth,
                                        kmin=kmin, opposite=args.opposite,
                                        word=alt)
        dims = [r["dim"] for r in rep["rows"]]
        dims2 = [r["dim"] for r in rep2["rows"]]
        rep["word_check"] = {"word": list(alt), "dims": dims2,
                             "agree": dims == dims2}
        rep["ok"] = rep["ok"] and rep["word_check"]["agree"]
    if args.crosscheck:
        alg3 = _algebra(args, flag.lie)
        rep["gamma_crosscheck"] = gamma_crosscheck(alg3, flag)
        rep["ok"] = rep["ok"] and rep["gamma_crosscheck"]["ok"]
    _emit(rep, args)
    return 0 if rep["ok"] else 1


def cmd_coordring(args) -> int:
    flag = FlagSpec.parse(args.flag)
    alg = _algebra(args, flag.lie)
    depth = args.depth if args.depth is not None else verify.default_depth(flag)
    rep = verify.coordinate_ring_equality(alg, flag, dmax=args.maxdeg,
                                          depth=depth)
    _emit(rep, args)
    return 0 if rep["ok"] else 1


def cmd_spherical(args) -> int:
    flag = FlagSpec.parse(args.flag)
    alg = _algebra(args, flag.lie)
    depth = args.depth if args.depth is not None else verify.default_depth(flag)
    rep = verify.spherical_report(alg, flag, depth)
    _emit(rep, args)
    return 0 if rep["ok"] else 1


def _property_samples(alg: PWAlgebra, flag: FlagSpec, seed: int) -> dict:
    """Seeded random exactness samples: associativity and the Leibniz rule."""
    rng = random.Random(seed)
    gens = alg.generators(flag)
    pool = list(gens.z) + list(gens.zbar)
    checks = []
    for _ in range(8):
        a, b, c = (rng.choice(pool) for _ in range(3))
        assoc = alg.multiply(alg.multiply(a, b), c) == \
            alg.multiply(a, alg.multiply(b, c))
        checks.append({"property": "associativity", "ok": assoc})
    for _ in range(4):
        a, b = (rng.choice(pool) for _ in range(2))
        i = rng.randrange(1, flag.lie.rank + 1)
        lhs = alg.act_v(("E", i), alg.multiply(a, b))
        rhs = alg.multiply(alg.act_v(("E", i), a), alg.act_v(("K", i), b)) + \
            alg.multiply(a, alg.act_v(("E", i), b))
        checks.append({"property": "leibniz_E", "node": i, "ok": lhs == rhs})
    eps_ok = True
    for _ in range(4):
        a, b = (rng.choice(pool) for _ in range(2))
        eps_ok = eps_ok and (alg.counit(alg.multiply(a, b)) ==
                             alg.counit(a) * alg.counit(b))
    checks.append({"property": "counit_multiplicative", "ok": eps_ok})
    return {"kind": "properties", "flag": str(flag), "seed": seed,
            "checks": checks, "ok": all(c["ok"] for c in checks)}


def cmd_verify(args) -> int:
    flag = FlagSpec.parse(args.flag)
    alg = _algebra(args, flag.lie)
    suites = [s.strip() for s in args.suite.split(",") if s.strip()]
    depth = args.depth
    extra = []
    core = []
    for s in suites:
        if s == "properties":
            extra.append(_property_samples(alg, flag, args.seed))
        elif s == "gamma-operator":
            rep = gamma_relation_operator(alg, flag)
            rep.pop("operator")
            rep["ok"] = True
            extra.append(rep)
        else:
            core.append(s)
    _progress(f"verify {flag}: suites {suites}")
    rep = verify.verify_suite(flag, core, depth=depth, algebra=alg)
    rep["reports"].extend(extra)
    rep["ok"] = rep["ok"] and all(r.get("ok") for r in extra)
    rep["seed"] = args.seed
    if args.word_check:
        alt = tuple(reversed(cartan.longest_word(flag.lie)))
        base = verify.borel_weil_report(
            alg, flag, verify.DEFAULT_KMAX.get(str(flag), 1),
            depth or verify.default_depth(flag),
            kmin=verify.DEFAULT_KMIN.get(str(flag), -1))
        alt_rep = verify.borel_weil_report(
            alg, flag, verify.DEFAULT_KMAX.get(str(flag), 1),
            depth or verify.default_depth(flag),
            kmin=verify.DEFAULT_KMIN.get(str(flag), -1), word=alt)
        agree = [r["dim"] for r in base["rows"]] == \
            [r["dim"] for r in alt_rep["rows"]]
        rep["word_check"] = {"word": list(alt), "agree": agree}
        rep["ok"] = rep["ok"] and agree
    _emit(rep, args)
    return 0 if rep["ok"] else 1


def cmd_cache(args) -> int:
    doc = {
        "schema": "qflag-report",
        "schema_version": verify.SCHEMA_VERSION,
        "kind": "cache",
        "action": args.action,
        "dir": args.cache,
        "files": [],
    }
    if not args.cache:
        raise QflagError("cache command requires --cache DIR")
    if os.path.isdir(args.cache):
        names = sorted(n for n in os.listdir(args.cache)
                       if n.startswith("cg_") and n.endswith(".json"))
        if args.action == "clear":
            for n in names:
                os.unlink(os.path.join(args.cache, n))
            doc["cleared"] = len(names)
        else:
            doc["files"] = names
    _emit(doc, args)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qflag",
        description="Exact computations with quantized flag manifolds and "
                    "their first-order calculi.")
    p.add_argument("--q", default="symbolic", metavar="{symbolic|RATIONAL}",
                   help="arithmetic mode: fully symbolic over Q(s), or "
                        "specialized at an exact rational q (must have a "
                        "rational L-th root)")
    p.add_argument("--cache", default=None, metavar="DIR",
                   help="structure-constant cache directory")
    p.add_argument("--json", default=None, metavar="PATH",
                   help="also write the JSON report to PATH")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for randomized property samples")
    p.add_argument("--jobs", type=int, default=1,
                   help="worker processes for independent blocks/k-values")
    p.add_argument("--word-check", action="store_true",
                   help="recompute span results with a second reduced word")
    p.add_argument("--guard", type=int, default=64,
                   help="module dimension guard")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("catalog", help="dump the flag catalog and spherical weights")
    c.add_argument("--max-rank", type=int, default=7)
    c.set_defaults(func=cmd_catalog)

    c = sub.add_parser("rep", help="build one irreducible module")
    c.add_argument("--type", required=True, metavar="A2")
    c.add_argument("--weight", required=True, metavar="1,0")
    c.set_defaults(func=cmd_rep)

    c = sub.add_parser("rmatrix", help="braiding of the crossed fundamental block")
    c.add_argument("--flag", required=True, metavar="A2/1")
    c.set_defaults(func=cmd_rmatrix)

    c = sub.add_parser("relations", help="quadratic relations and flatness")
    c.add_argument("--flag", required=True)
    c.add_argument("--maxdeg", type=int, default=3)
    c.set_defaults(func=cmd_relations)

    c = sub.add_parser("liouville", help="kernel of dbar on the flag algebra")
    c.add_argument("--flag", required=True)
    c.add_argument("--depth", type=int, default=None)
    c.set_defaults(func=cmd_liouville)

    c = sub.add_parser("borel-weil", help="holomorphic sections of line modules")
    c.add_argument("--flag", required=True)
    c.add_argument("--k", default="-1:1", metavar="a:b")
    c.add_argument("--depth", type=int, default=None)
    c.add_argument("--opposite", action="store_true")
    c.add_argument("--crosscheck", action="store_true",
                   help="also run the quotient-route cross-check")
    c.set_defaults(func=cmd_borel_weil)

    c = sub.add_parser("coordring", help="coordinate ring equality per degree")
    c.add_argument("--flag", required=True)
    c.add_argument("--maxdeg", type=int, default=2)
    c.add_argument("--depth", type=int, default=None)
    c.set_defaults(func=cmd_coordring)

    c = sub.add_parser("spherical", help="spherical decomposition check")
    c.add_argument("--flag", required=True)
    c.add_argument("--depth", type=int, default=None)
    c.set_defaults(func=cmd_spherical)

    c = sub.add_parser("verify", help="run verification suites")
    c.add_argument("--flag", required=True)
    c.add_argument("--suite",
                   default="liouville,borel-weil,coordring,spherical")
    c.add_argument("--depth", type=int, default=None)
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("cache", help="inspect or clear the structure cache")
    c.add_argument("action", choices=("info", "clear"))
    c.set_defaults(func=cmd_cache)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    argv = list(argv)
    # glue '--k -2:3' into '--k=-2:3' so negative ranges parse
    for t in range(len(argv) - 1):
        if argv[t] == "--k" and argv[t + 1].startswith("-"):
            argv[t:t + 2] = [f"--k={argv[t + 1]}"]
            break
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except QflagError as exc:
        print(f"qflag: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"qflag: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
