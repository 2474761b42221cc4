"""Command-line front end: ``autgrowth <group> <command> [options]``.

Every run prints a short summary and writes a JSON report (plus CSV tables
where relevant) into the output directory, which defaults to
``$AUTGROWTH_OUT`` or ``./autgrowth_out``.  Exit codes: 2 usage or input
error, 3 budget exceeded, 4 internal assertion failure.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from pathlib import Path

from . import free_abelian, free_group, heisenberg, thompson, transducer, virtually_abelian
from .growth import BudgetExceeded, GrowthTable, estimate_rate, product_growth
from .words import parse_word, to_text

EXIT_USAGE, EXIT_BUDGET, EXIT_ASSERT = 2, 3, 4

NAMED_PAIRS = {
    "identity": thompson.IDENTITY,
    "y0": thompson.Y0,
    "y1": thompson.Y1,
    "x0": thompson.X0,
    "x1": thompson.X1,
    "vexample": thompson.VEXAMPLE,
}


class UsageError(Exception):
    pass


def _read_arg(text: str) -> str:
    p = Path(text)
    if p.is_file():
        return p.read_text()
    return text


def load_pair(text: str) -> thompson.TreePair:
    if text in NAMED_PAIRS:
        return NAMED_PAIRS[text]
    return thompson.parse_tree_pair(_read_arg(text))


def load_transducer(text: str) -> transducer.Transducer:
    if text.startswith("pair:"):
        return transducer.tree_pair_to_transducer(load_pair(text[5:]))
    return transducer.parse_transducer(_read_arg(text))


def load_presentation(text: str) -> virtually_abelian.VAPresentation:
    named = {
        "klein": virtually_abelian.klein_presentation,
        "inversion": virtually_abelian.inversion_presentation,
        "trivial": virtually_abelian.trivial_extension_presentation,
    }
    if text in named:
        return named[text]()
    return virtually_abelian.parse_presentation(_read_arg(text))


class Run:
    def __init__(self, args):
        self.args = args
        self.out = Path(args.out or os.environ.get("AUTGROWTH_OUT", "autgrowth_out"))
        self.stem = "_".join([args.group, args.command])
        self.files: dict[str, str] = {}

    def table(self, name: str, t: GrowthTable):
        self.files[f"{self.stem}_{name}.csv"] = t.to_csv()

    def text(self, name: str, body: str):
        self.files[f"{self.stem}_{name}"] = body

    def finish(self, theorem: str, result: dict, summary: str) -> int:
        params = {k: v for k, v in sorted(vars(self.args).items())
                  if k not in ("func", "out") and v is not None}
        report = {"command": f"{self.args.group} {self.args.command}", "parameters": params,
                  "instantiates": theorem, "result": result}
        self.files[f"{self.stem}.json"] = json.dumps(report, indent=2, sort_keys=True, default=str) + "\n"
        self.out.mkdir(parents=True, exist_ok=True)
        for name, body in sorted(self.files.items()):
            (self.out / name).write_text(body)
        print(summary)
        print(f"[{theorem}] artifacts: " + ", ".join(str(self.out / n) for n in sorted(self.files)))
        return 0


# -- growth ------------------------------------------------------------------

def cmd_growth_zr(run, a):
    t = free_abelian.alpha_zr(a.rank, a.max_n)
    run.table("alpha", t)
    return run.finish("free abelian orbit count n + 1", {"counts": t.counts, "kind": t.kind},
                      f"alpha_Z^{a.rank}(0..{a.max_n}) = {t.counts}")


def cmd_growth_heisenberg(run, a):
    lo, up = heisenberg.heis_growth_sandwich(a.max_n, a.lower_mode)
    run.table("lower", lo)
    run.table("upper", up)
    rl, ru = estimate_rate(lo), estimate_rate(up)
    res = {"lower": lo.counts, "upper": up.counts,
           "lower_slope": round(rl.poly_degree_estimate, 6), "upper_slope": round(ru.poly_degree_estimate, 6)}
    return run.finish("Heisenberg quadratic automorphic growth", res,
                      f"lower {lo.counts}\nupper {up.counts}\n"
                      f"log-log slopes {rl.poly_degree_estimate:.3f} / {ru.poly_degree_estimate:.3f}")


def cmd_growth_klein(run, a):
    counts = virtually_abelian.klein_invariant_counts(a.max_n)
    bounds = [virtually_abelian.klein_lower_bound(n) for n in range(a.max_n + 1)]
    t = GrowthTable(counts, "lower_bound", True)
    run.table("invariant_classes", t)
    ok = all(c >= b for c, b in zip(counts, bounds))
    return run.finish("Klein bottle group quadratic lower bound", {"counts": counts, "bound_holds": ok},
                      f"invariant classes {counts}\nbound holds: {ok}")


def cmd_growth_construction(run, a):
    g = virtually_abelian.build_construction_group(a.rank)
    rel_ok = all(g.evaluate(r) == g.identity for r in g.relators())
    t = virtually_abelian.sign_orbit_count(a.rank, a.max_n)
    brute = virtually_abelian.sign_orbit_bruteforce(a.rank, a.max_n)
    run.table("sign_orbits", t)
    res = {"relations_hold": rel_ok, "counts": t.counts, "bruteforce_counts": brute.counts}
    return run.finish("polynomial automorphic growth of every degree", res,
                      f"relations hold: {rel_ok}\nsign orbits {t.counts}\nbrute force  {brute.counts}")


def cmd_growth_product(run, a):
    h = free_abelian.alpha_zr(a.rank, a.max_n)
    k = free_abelian.alpha_zr(1, a.max_n)
    p = product_growth(h, k)
    run.table("product", p)
    eh, ep = estimate_rate(h), estimate_rate(p)
    res = {"factor": h.counts, "product": p.counts,
           "factor_degree": round(eh.poly_degree_estimate, 6), "product_degree": round(ep.poly_degree_estimate, 6)}
    return run.finish("direct product growth bound", res,
                      f"product {p.counts}\ndegree {eh.poly_degree_estimate:.3f} -> {ep.poly_degree_estimate:.3f}")


# -- whitehead ---------------------------------------------------------------

def cmd_wh_minimize(run, a):
    w = parse_word(a.word)
    m, trace = free_group.whitehead_minimize(w, a.rank)
    res = {"input": to_text(w), "minimal": to_text(m.representative), "length": len(m),
           "trace": [str(t) for t in trace]}
    return run.finish("Whitehead minimization", res,
                      f"{to_text(w)} -> {m} (length {len(m)})\ntrace: " + (" ".join(map(str, trace)) or "none"))


def cmd_wh_equal(run, a):
    u, v = parse_word(a.u), parse_word(a.v)
    same = free_group.orbit_equal_small(u, v, a.budget, a.rank)
    return run.finish("automorphic orbit equality", {"u": a.u, "v": a.v, "same_orbit": same},
                      f"{a.u} ~ {a.v}: {same}")


def cmd_wh_family(run, a):
    fc = free_group.count_normal_family(a.m, a.mode)
    res = {"m": fc.m, "mode": fc.mode, "count": fc.count, "bound": fc.bound}
    return run.finish("exponential automorphic growth of free groups", res,
                      f"family count at m={fc.m} ({fc.mode}): {fc.count} (bound {fc.bound})")


# -- thompson ----------------------------------------------------------------

def cmd_tp_compose(run, a):
    x, y = load_pair(a.x), load_pair(a.y)
    z = thompson.tp_compose(x, y)
    run.text("pair.txt", z.to_text())
    return run.finish("tree pair arithmetic", {"result": [list(r) for r in z.rules]}, z.to_text().rstrip())


def cmd_tp_revealing(run, a):
    rp = thompson.make_revealing(load_pair(a.x))
    res = {"pair": [list(r) for r in rp.pair.rules], "classification": rp.classification}
    lines = [rp.pair.to_text().rstrip()] + [f"{l or '.'}: {k}" for l, k in sorted(rp.classification.items())]
    return run.finish("revealing pairs", res, "\n".join(lines))


def cmd_tp_decorations(run, a):
    x = load_pair(a.x)
    pd = thompson.periodic_points(thompson.make_revealing(x))
    dd = thompson.DecorationData(x)
    res = {"periodic_cones": pd.periodic_cones,
           "isolated": [[str(p), n, k] for p, n, k in pd.isolated],
           "source_decorations": [[d.rep, d.letter] for d in dd.sources],
           "sink_decorations": [[d.rep, d.letter] for d in dd.sinks]}
    lines = [f"cone {c or '.'} period {n}" for c, n in pd.periodic_cones]
    lines += [f"{k} {p} period {n}" for p, n, k in pd.isolated]
    lines += [f"source decoration {d.rep}.{d.letter}" for d in dd.sources]
    lines += [f"sink decoration {d.rep}.{d.letter}" for d in dd.sinks]
    return run.finish("periodic points and decorations", res, "\n".join(lines) or "no periodic points")


def cmd_tp_decmap(run, a):
    dm = thompson.decoration_map(load_pair(a.x))
    rules = [[f"{s[0][0]}.{s[0][1]}", s[1], f"{t[0][0]}.{t[0][1]}", t[1]] for s, t in dm.rules]
    lines = [f"({p}){w or '.'} -> ({q}){u or '.'}" for p, w, q, u in rules]
    return run.finish("decoration maps", {"rules": rules}, "\n".join(lines) or "empty decoration map")


def cmd_tp_prime(run, a):
    vp = thompson.construct_prime(load_pair(a.x))
    pd = thompson.periodic_points(thompson.make_revealing(vp))
    sizes = sorted(len(pts) for _, pts, _ in pd.orbits)
    run.text("pair.txt", vp.to_text())
    return run.finish("separating family in V", {"leaves": len(vp), "orbit_sizes": sizes,
                                                  "isolated_points": len(pd.isolated)},
                      f"v' has {len(vp)} leaves; isolated periodic orbits of sizes {sizes}")


def cmd_tp_distinguish(run, a):
    if a.random:
        rng = random.Random(a.seed)
        pool = []
        while len(pool) < a.random:
            x = thompson.random_tree_pair(rng, a.max_leaves)
            if x not in pool:
                pool.append(x)
        bad = [(i, j) for i in range(len(pool)) for j in range(i + 1, len(pool))
               if not thompson.distinguish_primes(pool[i], pool[j])]
        res = {"elements": [str(x) for x in pool], "undistinguished_pairs": bad}
        return run.finish("separating family in V", res,
                          f"{len(pool)} elements, {len(bad)} undistinguished pairs")
    if a.x is None or a.y is None:
        raise UsageError("give two tree pairs or --random N")
    d = thompson.distinguish_primes(load_pair(a.x), load_pair(a.y))
    return run.finish("separating family in V", {"distinguished": d}, f"distinguished: {d}")


def cmd_tp_tinv(run, a):
    inv = thompson.t_word_invariant(a.word)
    shown = inv.representative
    if thompson.necklace(a.word) == inv:
        shown = a.word
    res = {"word": a.word, "canonical": inv.representative, "class_size": inv.class_size}
    return run.finish("exponential automorphic growth of T", res, f"cyclic({shown})")


# -- transducer --------------------------------------------------------------

def cmd_tr_eval(run, a):
    t = load_transducer(a.t)
    out, q = transducer.evaluate(t, a.word)
    return run.finish("transducer evaluation", {"output": out, "state": q}, f"{out or '.'} (state {q})")


def cmd_tr_product(run, a):
    t = transducer.product(load_transducer(a.t1), load_transducer(a.t2))
    run.text("transducer.txt", t.to_text())
    return run.finish("transducer product", {"states": t.n}, t.to_text().rstrip())


def cmd_tr_minimize(run, a):
    t = transducer.minimize(load_transducer(a.t))
    run.text("transducer.txt", t.to_text())
    return run.finish("minimal transducers", {"states": t.n}, t.to_text().rstrip())


def cmd_tr_sync(run, a):
    k = transducer.sync_length(load_transducer(a.t), a.cap)
    return run.finish("synchronizing transducers", {"sync_length": k},
                      f"synchronizing length: {k if k is not None else f'none within {a.cap}'}")


def cmd_tr_conjugate(run, a):
    v = load_pair(a.v)
    z = transducer.conjugate_by_transducer(v, load_transducer(a.c), load_transducer(a.c_inv))
    run.text("pair.txt", z.to_text())
    return run.finish("transducer action on V", {"result": [list(r) for r in z.rules]}, z.to_text().rstrip())


# -- virtually abelian -------------------------------------------------------

def cmd_va_lambda(run, a):
    p = load_presentation(a.presentation)
    em = virtually_abelian.extension_matrices(p)
    res = {"Lambda": em.Lambda, "W": em.W, "L": em.L, "LLambda": em.LLambda, "LW": em.LW}
    return run.finish("extension matrices", res,
                      "\n".join(f"{k}: {v}" for k, v in res.items()))


def cmd_va_certify(run, a):
    c = virtually_abelian.linear_growth_certificate(load_presentation(a.presentation))
    return run.finish("linear automorphic growth certificate", {"holds": c.holds, "witness": c.witness},
                      f"certificate holds: {c.holds}")


def cmd_va_classify(run, a):
    v = virtually_abelian.classify_rank2(load_presentation(a.presentation))
    return run.finish("rank two dichotomy", {"growth": v}, v)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="autgrowth", description="Automorphic growth computations.")
    ap.add_argument("--out", help="output directory (default $AUTGROWTH_OUT or ./autgrowth_out)")
    ap.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    groups = ap.add_subparsers(dest="group", required=True)

    def sub(group, name, func, *opts):
        p = group.add_parser(name)
        for args, kw in opts:
            p.add_argument(*args, **kw)
        p.set_defaults(func=func)
        return p

    def o(*args, **kw):
        return args, kw

    g = groups.add_parser("growth").add_subparsers(dest="command", required=True)
    sub(g, "zr", cmd_growth_zr, o("--rank", type=int, default=2), o("--max-n", type=int, default=10))
    sub(g, "heisenberg", cmd_growth_heisenberg, o("--max-n", type=int, default=12),
        o("--lower-mode", choices=["formula", "bfs"], default="formula"))
    sub(g, "klein", cmd_growth_klein, o("--max-n", type=int, default=20))
    sub(g, "construction", cmd_growth_construction, o("--rank", type=int, default=2),
        o("--max-n", type=int, default=10))
    sub(g, "product", cmd_growth_product, o("--rank", type=int, default=1), o("--max-n", type=int, default=20))

    w = groups.add_parser("whitehead").add_subparsers(dest="command", required=True)
    sub(w, "minimize", cmd_wh_minimize, o("word"), o("--rank", type=int, default=None))
    sub(w, "equal", cmd_wh_equal, o("u"), o("v"), o("--budget", type=int, default=10),
        o("--rank", type=int, default=None))
    sub(w, "count-family", cmd_wh_family, o("--m", type=int, default=12),
        o("--mode", choices=["positive", "absolute", "orbit"], default="positive"))

    t = groups.add_parser("thompson").add_subparsers(dest="command", required=True)
    sub(t, "compose", cmd_tp_compose, o("x"), o("y"))
    sub(t, "revealing", cmd_tp_revealing, o("x"))
    sub(t, "decorations", cmd_tp_decorations, o("x"))
    sub(t, "decmap", cmd_tp_decmap, o("x"))
    sub(t, "prime", cmd_tp_prime, o("x"))
    sub(t, "distinguish", cmd_tp_distinguish, o("x", nargs="?"), o("y", nargs="?"),
        o("--random", type=int, default=0), o("--max-leaves", type=int, default=5))
    sub(t, "t-invariant", cmd_tp_tinv, o("word"))

    r = groups.add_parser("transducer").add_subparsers(dest="command", required=True)
    sub(r, "eval", cmd_tr_eval, o("t"), o("word"))
    sub(r, "product", cmd_tr_product, o("t1"), o("t2"))
    sub(r, "minimize", cmd_tr_minimize, o("t"))
    sub(r, "sync", cmd_tr_sync, o("t"), o("--cap", type=int, default=16))
    sub(r, "conjugate", cmd_tr_conjugate, o("v"), o("c"), o("c_inv"))

    v = groups.add_parser("va").add_subparsers(dest="command", required=True)
    sub(v, "lambda", cmd_va_lambda, o("presentation"))
    sub(v, "certify", cmd_va_certify, o("presentation"))
    sub(v, "classify", cmd_va_classify, o("presentation"))
    return ap


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(Run(args), args)
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except AssertionError as e:
        print(f"internal assertion failed: {e}", file=sys.stderr)
        return EXIT_ASSERT
    except (UsageError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
