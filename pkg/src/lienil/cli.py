"""Command-line interface: every experiment as a reproducible command.

Exit codes: 0 success / claims verified, 1 a checked claim failed to
verify, 2 usage error.  Output is text by default; --json (and --csv for
the codimension table) switch to machine-readable forms.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from . import codim, verify
from .freealg import parse_poly, product_span, quotient_dims, to_vector, ideal_eliminator
from .idcheck import (CapExceededError, check_identity, gamma_by_brute_rank,
                      gamma_by_parity_rank, codim_by_parity_rank, min_index,
                      parse_spec, verdict_to_json, witness_e_chain, witness_g_eval,
                      witness_pow_comm, witness_staircase)
from .reptheory import decompose_quotient, did_gamma, did_gamma_finite, partition_str


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lienil",
                                description="Exact verification engine for Lie "
                                            "nilpotency identities and codimensions")
    p.add_argument("--threads", type=int, default=1,
                   help="worker-parallelism bound (results are identical for any value)")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for randomized test-corpus selection (never affects verdicts)")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("min-index", help="least q with [x1..xq] = 0 on the algebra")
    q.add_argument("--algebra", required=True)
    q.add_argument("--cap", type=int, default=None)
    q.add_argument("--max-dim", type=int, default=4096)
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_min_index)

    q = sub.add_parser("check-identity", help="decide whether a multilinear polynomial "
                                              "is an identity of the algebra")
    q.add_argument("--algebra", required=True)
    q.add_argument("--poly", required=True)
    q.add_argument("--max-dim", type=int, default=4096)
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_check_identity)

    q = sub.add_parser("witness", help="produce a non-vanishing substitution")
    q.add_argument("--algebra")
    q.add_argument("--poly")
    q.add_argument("--recipe", choices=["staircase", "e-chain", "pow-comm", "g-eval"])
    q.add_argument("--k", type=int)
    q.add_argument("--l", type=int)
    q.add_argument("--i", type=int, dest="family")
    q.add_argument("--degree", type=int)
    q.add_argument("--max-dim", type=int, default=4096)
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_witness)

    q = sub.add_parser("gamma-dim", help="proper codimension of a variety (--p) "
                                         "or an algebra (--algebra)")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--p", type=int)
    q.add_argument("--algebra")
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_gamma_dim)

    q = sub.add_parser("codim", help="codimension of a variety (--p) or an algebra; "
                                     "--k with --n-max emits the lower-bound table")
    q.add_argument("--n", type=int)
    q.add_argument("--p", type=int)
    q.add_argument("--algebra")
    q.add_argument("--k", type=int)
    q.add_argument("--n-max", type=int, default=20)
    q.add_argument("--json", action="store_true")
    q.add_argument("--csv", action="store_true")
    q.set_defaults(func=cmd_codim)

    q = sub.add_parser("decompose", help="module decomposition of the proper quotient")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--p", type=int, required=True)
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_decompose)

    q = sub.add_parser("did", help="closed-form proper-quotient decomposition for "
                                   "E*E_{2l} (--l) or E_{2m}*E_{2l} (--m --l)")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--l", type=int, required=True)
    q.add_argument("--m", type=int)
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_did)

    q = sub.add_parser("bounds", help="lower-bound polynomials and closed forms")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_bounds)

    q = sub.add_parser("inclusions", help="verify I_m I_n within I_{m+n-2} "
                                          "(and I_{m+n-1} when one factor is odd)")
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--degree", type=int, required=True)
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_inclusions)

    q = sub.add_parser("verify-suite", help="run the full acceptance battery")
    q.add_argument("--criterion", type=int, action="append",
                   help="run only this criterion (repeatable)")
    q.add_argument("--json", action="store_true")
    q.add_argument("--verbose", action="store_true")
    q.set_defaults(func=cmd_verify_suite)
    return p


def cmd_min_index(args) -> int:
    q = min_index(args.algebra, cap=args.cap, max_dim=args.max_dim)
    if args.json:
        print(json.dumps({"algebra": args.algebra, "min_index": q}))
    else:
        print(q)
    return 0


def cmd_check_identity(args) -> int:
    f = parse_poly(args.poly)
    verdict = check_identity(f, args.algebra, max_dim=args.max_dim)
    if args.json:
        print(json.dumps(verdict_to_json(verdict)))
    elif verdict.is_identity:
        print(f"{args.poly} is an identity of {args.algebra}")
    else:
        w = verdict.witness
        print(f"{args.poly} is NOT an identity of {args.algebra}")
        for i, a in enumerate(w.args, 1):
            print(f"  x{i} = {w.algebra.elem_str(a)}")
        print(f"  value = {w.algebra.elem_str(w.value)}")
    return 0


def cmd_witness(args) -> int:
    if args.recipe:
        if args.recipe == "staircase":
            _req(args.k is not None, "--recipe staircase needs --k")
            f, alg, wargs, val = witness_staircase(args.k)
        elif args.recipe == "e-chain":
            _req(args.k is not None, "--recipe e-chain needs --k")
            f, alg, wargs, val = witness_e_chain(args.k)
        elif args.recipe == "pow-comm":
            _req(args.l is not None, "--recipe pow-comm needs --l")
            f, alg, wargs, val = witness_pow_comm(args.l)
        else:
            _req(args.family is not None and args.degree is not None and args.k is not None,
                 "--recipe g-eval needs --i, --degree and --k")
            f, alg, wargs, val = witness_g_eval(args.family, args.degree, args.k)
        if not val:
            print("recipe evaluated to zero", file=sys.stderr)
            return 1
        if args.json:
            print(json.dumps({"algebra": alg.meta.get("name"),
                              "args": [alg.elem_str(a) for a in wargs],
                              "value": alg.elem_str(val)}))
        else:
            print(f"algebra: {alg.meta.get('name')}")
            for i, a in enumerate(wargs, 1):
                print(f"  x{i} = {alg.elem_str(a)}")
            print(f"  value = {alg.elem_str(val)}")
        return 0
    _req(args.algebra and args.poly, "witness needs --recipe or --algebra with --poly")
    f = parse_poly(args.poly)
    verdict = check_identity(f, args.algebra, max_dim=args.max_dim)
    if verdict.is_identity:
        print(f"{args.poly} is an identity of {args.algebra}; no witness exists",
              file=sys.stderr)
        return 1
    w = verdict.witness
    if args.json:
        print(json.dumps(verdict_to_json(verdict)))
    else:
        for i, a in enumerate(w.args, 1):
            print(f"x{i} = {w.algebra.elem_str(a)}")
        print(f"value = {w.algebra.elem_str(w.value)}")
    return 0


def _req(cond, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


def cmd_gamma_dim(args) -> int:
    if (args.p is None) == (args.algebra is None):
        raise ValueError("gamma-dim needs exactly one of --p or --algebra")
    if args.p is not None:
        _, gamma = quotient_dims(args.n, args.p)
        label = f"gamma_{args.n}(index {args.p} variety)"
    else:
        spec = parse_spec(args.algebra)
        if spec.is_grassmann():
            gamma = gamma_by_parity_rank(spec, args.n)
        else:
            gamma = gamma_by_brute_rank(spec.materialize(), args.n)
        label = f"gamma_{args.n}({args.algebra})"
    print(json.dumps({"gamma": gamma}) if args.json else f"{label} = {gamma}")
    return 0


def cmd_codim(args) -> int:
    if args.k is not None:
        table = codim.codim_table_csv(args.k, args.n_max)
        if args.csv:
            print(table, end="")
        elif args.json:
            spec = codim.make_bound_spec(args.k)
            qp = codim.closed_form(spec)
            print(json.dumps({"k": args.k, "closed_form": qp.to_json()}))
        else:
            spec = codim.make_bound_spec(args.k)
            qp = codim.closed_form(spec)
            print(f"closed form: {qp}")
            print(table, end="")
        return 0
    if args.n is None or (args.p is None) == (args.algebra is None):
        raise ValueError("codim needs --k, or --n with exactly one of --p / --algebra")
    if args.p is not None:
        c, _ = quotient_dims(args.n, args.p)
        label = f"c_{args.n}(index {args.p} variety)"
    else:
        spec = parse_spec(args.algebra)
        if not spec.is_grassmann():
            raise ValueError("codim --algebra supports Grassmann specs only")
        c = codim_by_parity_rank(spec, args.n)
        label = f"c_{args.n}({args.algebra})"
    print(json.dumps({"c": c}) if args.json else f"{label} = {c}")
    return 0


def cmd_decompose(args) -> int:
    dec = decompose_quotient(args.n, args.p)
    if args.json:
        print(json.dumps({"n": args.n, "p": args.p, "decomposition": dec.to_json(),
                          "total_dim": dec.total_dim()}))
    else:
        print(f"proper quotient of degree {args.n} at index {args.p}: {dec} "
              f"(dim {dec.total_dim()})")
    return 0


def cmd_did(args) -> int:
    if args.m is None:
        dec, total = did_gamma(args.n, args.l)
        label = f"E*E{2 * args.l}"
    else:
        dec, total = did_gamma_finite(args.n, args.m, args.l)
        label = f"E{2 * args.m}*E{2 * args.l}"
    if args.json:
        print(json.dumps({"algebra": label, "n": args.n,
                          "decomposition": dec.to_json(), "total_dim": total}))
    else:
        print(f"gamma_{args.n}({label}) = {total}: {dec}")
    return 0


def cmd_bounds(args) -> int:
    k = args.k
    a = codim.bound_poly(k, "odd")
    b = codim.bound_poly(k, "even")
    spec = codim.make_bound_spec(k)
    qp = codim.closed_form(spec)
    payload = {
        "k": k,
        "odd_bound": {"degree": a.degree, "lead": str(a.lead())},
        "even_bound": {"degree": b.degree, "lead": str(b.lead())},
        "closed_form": qp.to_json(),
        "closed_form_lead_r": str(qp.r.lead()),
    }
    if k >= 4:
        g, c = codim.combined_bounds(k)
        payload["combined"] = {"gamma_lead": str(g), "codim_lead": str(c)}
    if args.json:
        print(json.dumps(payload))
    else:
        print(f"odd-degree bound polynomial: degree {a.degree}, lead {a.lead()}")
        print(f"even-degree bound polynomial: degree {b.degree}, lead {b.lead()}")
        print(f"codimension closed form: {qp}")
        print(f"lead of r: {qp.r.lead()}")
        if k >= 4:
            print(f"combined leads: gamma {payload['combined']['gamma_lead']}, "
                  f"codim {payload['combined']['codim_lead']}")
    return 0


def cmd_inclusions(args) -> int:
    m, n, deg = args.m, args.n, args.degree
    results = []
    targets = [m + n - 2]
    if m % 2 or n % 2:
        targets.append(m + n - 1)
    span = product_span(m, n, deg)
    for target in targets:
        elim = ideal_eliminator(target, deg)
        ok = all(elim.contains(to_vector(f, deg)) for f in span)
        results.append((target, ok))
    if args.json:
        print(json.dumps({"m": m, "n": n, "degree": deg,
                          "results": [{"target": t, "verified": ok} for t, ok in results]}))
    else:
        for t, ok in results:
            print(f"I_{m}*I_{n} within I_{t} at degree {deg}: "
                  f"{'VERIFIED' if ok else 'FAILED'}")
    return 0 if all(ok for _, ok in results) else 1


def cmd_verify_suite(args) -> int:
    numbers = sorted(set(args.criterion)) if args.criterion else None
    results = verify.run_all(numbers, seed=args.seed)
    if args.json:
        print(json.dumps([{
            "criterion": r.number, "title": r.title, "passed": r.passed,
            "seconds": round(r.seconds, 2),
            "subchecks": [{"name": n, "passed": ok, "detail": d}
                          for n, ok, d in r.subchecks],
        } for r in results]))
    else:
        for r in results:
            print(r.summary())
            if args.verbose or not r.passed:
                for name, ok, detail in r.subchecks:
                    mark = "ok" if ok else "FAIL"
                    print(f"    [{mark}] {name}: {detail}")
    return 0 if all(r.passed for r in results) else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
