"""Command-line front end.

Every subcommand prints one JSON report to stdout (keys sorted, so two
runs of the same command differ at most in the timing field) and exits 0
when all verdicts in the report pass, 1 on a verification failure, 2 on
usage or input errors. --summary adds short human-readable lines on
stderr.
"""

import argparse
import json
import os
import random
import sys
import time

from .algebra import Algebra
from . import parser as ps
from . import forms as fm
from . import derham as dr
from . import ksymbols as ks
from . import singularities as sg
from . import sampling as sp


def _parse_relative(text, algebra):
    if text is None or text == "full":
        return dr.FULL
    if text.startswith("power:"):
        return dr.POWER(int(text.split(":", 1)[1]))
    if text.startswith("explicit:"):
        srcs = [g for g in text.split(":", 1)[1].split(";") if g.strip()]
        if not srcs:
            raise ValueError("explicit relative spec needs generators")
        return dr.EXPLICIT([ps.polynomial_terms(g, algebra.m) for g in srcs])
    raise ValueError(f"unknown relative spec {text!r}")


def _load_algebra(args):
    data = {}
    if getattr(args, "algebra", None):
        with open(args.algebra) as fh:
            data = json.load(fh)
    if getattr(args, "N", None) is not None:
        data["bound"] = args.N
    if getattr(args, "m", None) is not None:
        data["nilpotents"] = args.m
    if getattr(args, "ideal", None):
        data["ideal"] = [g for g in args.ideal.split(";") if g.strip()]
    if "nilpotents" not in data or "bound" not in data:
        raise ValueError("algebra underspecified: give --algebra or both --N and --m")
    return ps.algebra_from_json(data)


def _algebra_flags(p, need_file=True):
    if need_file:
        p.add_argument("--algebra", help="algebra spec JSON file")
    p.add_argument("--N", type=int, help="truncation bound (overrides file)")
    p.add_argument("--m", type=int, help="number of nilpotent variables (overrides file)")
    p.add_argument("--ideal", help="';'-separated ideal generators (overrides file)")


def _cmd_cohom(args):
    A = _load_algebra(args)
    rel = _parse_relative(args.relative, A)
    rep = dr.cohomology(A, rel, param_bound=args.param_bound)
    out = rep.to_json()
    out["all_zero"] = rep.all_zero()
    lines = [f"H table for m={A.m}, N={A.N}, relative {rel.label()}"]
    for row in rep.rows:
        tag = f"pihat={tuple(row['pihat'])} " if "pihat" in row else ""
        lines.append(f"  n={row['degree']} {tag}dim={row['dim']} h={row['dim_h']}")
    lines.append("all H zero" if out["all_zero"] else "nonzero H present")
    return out, True, lines


def _cmd_bloch(args):
    A = _load_algebra(args)
    s = ps.parse_symbol_sum(args.symbol, A)
    cl = ks.bloch(s, slot=args.slot)
    rep = cl.rep
    if args.cutoff is not None:
        rep = dr.quotient_class(rep, dr.FULL, cutoff=args.cutoff)
    out = {"symbol": str(s), "slot": args.slot, "degree": cl.degree,
           "class": fm.form_str(rep), "zero": not rep.terms}
    if rep.terms:
        cert = dr.is_exact(rep, dr.FULL, cutoff=args.cutoff)
        out["witness"] = cert.to_json().get("witness")
    passed = (not args.assert_zero) or out["zero"]
    lines = [f"B({s}) = [{out['class']}] ({'zero' if out['zero'] else 'nonzero'})"]
    return out, passed, lines


def _homotopy_scan(N, max_degree, parametric=False):
    rows = []
    ok = True
    algebras = [Algebra(1, N)]
    if parametric:
        algebras.append(Algebra(1, min(N, 4), params=[("a", False)]))
    for A in algebras:
        pres = dr.relative(A, dr.FULL)
        for n in range(0, max_degree + 1):
            checked = 0
            good = True
            if A.n_params:
                keys = [(i, p) for i in range(1, A.N + min(n, 1))
                        for p in dr._pihat_box(A, 2)]
            else:
                keys = pres.block_keys(n)
            for key in keys:
                blk = fm.form_block(A, n, key)
                for coord in blk.basis:
                    w = fm.Form(A, n, {coord: 1})
                    i = key[0]
                    lhs = fm.d(fm.euler_homotopy(w)) + fm.euler_homotopy(fm.d(w))
                    if lhs != i * w:
                        good = False
                    checked += 1
            rows.append({"params": A.n_params, "degree": n,
                         "checked": checked, "ok": good})
            ok = ok and good
    return rows, ok


def _cmd_verify_homotopy(args):
    rows, ok = _homotopy_scan(args.N, args.max_degree, args.parametric)
    out = {"N": args.N, "rows": rows, "passed": ok}
    total = sum(r["checked"] for r in rows)
    lines = [f"(dh+hd) = i x id on {total} basis forms: {'ok' if ok else 'FAILED'}"]
    return out, ok, lines


def _cmd_verify_steinberg(args):
    rng = random.Random(args.seed)
    algebras = sp.small_algebras()
    rows = []
    ok = True
    for _ in range(args.count):
        A = rng.choice(algebras)
        a, x = sp.steinberg_instance(rng, A)
        zero = ks.bloch(ks.steinberg_element(a, x)).is_zero()
        rows.append({"m": A.m, "N": A.N, "a": str(a.constant()),
                     "x": str(x), "zero": zero})
        ok = ok and zero
    out = {"count": args.count, "seed": args.seed, "passed": ok,
           "instances": rows}
    lines = [f"bloch(zeta(a,x)) = 0 for {args.count} random instances: "
             f"{'ok' if ok else 'FAILED'}"]
    return out, ok, lines


def _cmd_verify_key_identity(args):
    rep = ks.verify_key_identity(args.i, args.j)
    out = rep.to_json()
    lines = [f"(i+j)*B = phi class for i={args.i}, j={args.j}: "
             f"{'ok' if rep.passed else 'FAILED'}"]
    if rep.certificate and rep.certificate.exact and rep.certificate.primitive is not None:
        lines.append(f"  primitive: {fm.form_str(rep.certificate.primitive)}")
    return out, rep.passed, lines


def _cmd_verify_filtration(args):
    p = args.p
    rows = []
    ok = True
    if args.i is not None and args.j is not None:
        pairs = [(args.i, args.j)]
    else:
        pairs = [(i, s - i) for s in range(p, p + 3)
                 for i in range(1, s) if i <= s - i]
    for (i, j) in pairs:
        rep = ks.verify_filtration_vanishing(p, i, j)
        rows.append(rep.to_json())
        ok = ok and rep.vanishes
    out = {"p": p, "window": rows, "passed": ok}
    if p >= 3 and args.i is None:
        wit = ks.filtration_strictness_witness(p)
        found = wit is not None and not wit["certificate"].exact
        out["strictness"] = {
            "found": found,
            "i": wit["i"], "j": wit["j"], "symbol": wit["symbol"],
            "class": wit["rep"],
        } if wit else {"found": False}
        ok = ok and found
        out["passed"] = ok
    lines = [f"V_p window at p={p}: {'ok' if ok else 'FAILED'}"]
    return out, ok, lines


def _cmd_verify_sigma(args):
    rep = dr.sigma_report(args.N)
    out = rep.to_json()
    lines = [f"sigma: R_2 forms -> t^{args.N - 1}-relative forms of R_{args.N}: "
             f"{'bijective' if rep.passed else 'FAILED'}"]
    return out, rep.passed, lines


def _cmd_verify_sequence(args):
    if args.jacobian_of:
        if args.bound is None:
            raise ValueError("--jacobian-of needs --bound")
        terms = ps.polynomial_terms(args.jacobian_of)
        m = len(next(iter(terms)))
        A = Algebra(m, args.bound)
        gens = [g for g in sg._partials(terms, m) if g]
        inner = dr.EXPLICIT(gens)
        degrees = [args.degree if args.degree is not None else m - 1]
    else:
        if args.N is None:
            raise ValueError("give --N for the power case or --jacobian-of")
        A = Algebra(1, args.N)
        inner = dr.POWER(args.N - 1)
        degrees = ([args.degree] if args.degree is not None
                   else list(range(0, 3)))
    reports = [dr.verify_forms_sequence(A, inner, dr.FULL, degree=n)
               for n in degrees]
    ok = all(r.passed for r in reports)
    out = {"degrees": degrees, "reports": [r.to_json() for r in reports],
           "passed": ok}
    lines = []
    for r in reports:
        lines.append(
            f"degree {r.degree}: A={r.dim_inner_classes} B={r.dim_outer_classes} "
            f"C={r.dim_quotient_classes} correction={r.correction_dim} "
            f"{'ok' if r.passed else 'FAILED'}")
    return out, ok, lines


def _cmd_singular(args):
    rep = sg.singularity_report(ps.polynomial_terms(args.poly), args.N_max)
    out = rep.to_json()
    lines = [f"f = {rep.f}: mu={rep.mu} tau={rep.tau} "
             f"dim H^{rep.m - 1} = {rep.h_dim} (= mu - tau)"]
    return out, True, lines


def _cmd_selftest(args):
    from . import acceptance
    workers = args.workers
    if workers is None:
        workers = int(os.environ.get("NILBLOCH_WORKERS", "0") or 0)
    results = acceptance.run_all(workers=workers)
    ok = all(r.passed for r in results)
    out = {"criteria": [r.to_json() for r in results], "passed": ok}
    lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.name}" for r in results]
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} criteria passed")
    return out, ok, lines


def main(argv=None):
    ap = argparse.ArgumentParser(
        prog="nilbloch",
        description="Exact de Rham and Milnor K-symbol calculators for "
                    "truncated nilpotent algebras over Q.")
    ap.add_argument("--summary", action="store_true",
                    help="print human-readable lines on stderr")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("cohom", help="relative de Rham cohomology table")
    _algebra_flags(p)
    p.add_argument("--relative", default="full",
                   help="full | power:K | explicit:g1;g2")
    p.add_argument("--param-bound", type=int, default=None,
                   help="parameter multidegree box bound (parametric mode)")
    p.set_defaults(func=_cmd_cohom)

    p = sub.add_parser("bloch", help="Bloch class of a symbol sum")
    _algebra_flags(p)
    p.add_argument("--symbol", required=True, help='e.g. "{1+a*t, b}"')
    p.add_argument("--slot", choices=["first", "last"], default="first")
    p.add_argument("--cutoff", type=int, default=None)
    p.add_argument("--assert-zero", action="store_true",
                   help="exit 1 when the class is nonzero")
    p.set_defaults(func=_cmd_bloch)

    p = sub.add_parser("verify-homotopy", help="(dh+hd) = internal degree")
    p.add_argument("--N", type=int, default=4)
    p.add_argument("--max-degree", type=int, default=2)
    p.add_argument("--parametric", action="store_true",
                   help="also run a parametric instance")
    p.set_defaults(func=_cmd_verify_homotopy)

    p = sub.add_parser("verify-steinberg", help="bloch(zeta(a,x)) = 0 randomized")
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_verify_steinberg)

    p = sub.add_parser("verify-key-identity",
                       help="(i+j) B{1+a t^i, 1+b t^j} as a form class")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.set_defaults(func=_cmd_verify_key_identity)

    p = sub.add_parser("verify-filtration", help="V_p vanishing window")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--i", type=int, default=None)
    p.add_argument("--j", type=int, default=None)
    p.set_defaults(func=_cmd_verify_filtration)

    p = sub.add_parser("verify-sigma", help="t -> t^(N-1) form isomorphism")
    p.add_argument("--N", type=int, required=True)
    p.set_defaults(func=_cmd_verify_sigma)

    p = sub.add_parser("verify-sequence", help="six-term class sequence")
    p.add_argument("--N", type=int, default=None,
                   help="power case (t^(N-1)) in (t) inside Q[t]/t^N")
    p.add_argument("--jacobian-of", default=None,
                   help="polynomial whose Jacobian ideal is the inner ideal")
    p.add_argument("--bound", type=int, default=None,
                   help="truncation bound for --jacobian-of")
    p.add_argument("--degree", type=int, default=None)
    p.set_defaults(func=_cmd_verify_sequence)

    p = sub.add_parser("singular", help="Milnor/Tyurina report")
    p.add_argument("--poly", required=True)
    p.add_argument("--N-max", type=int, default=24)
    p.set_defaults(func=_cmd_singular)

    p = sub.add_parser("selftest", help="run the acceptance suite")
    p.add_argument("--workers", type=int, default=None,
                   help="process pool size (default: NILBLOCH_WORKERS or 0)")
    p.set_defaults(func=_cmd_selftest)

    args = ap.parse_args(argv)
    t0 = time.perf_counter()
    try:
        out, passed, lines = args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out["command"] = args.cmd
    out["timing_seconds"] = round(time.perf_counter() - t0, 6)
    print(json.dumps(out, indent=2, sort_keys=True, default=str))
    if args.summary:
        for line in lines:
            print(line, file=sys.stderr)
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())
