"""Command-line front end.

Exit status: 0 on success or a passing check, 1 on a failed verification or
a negative search result, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import catalog, connect, construct, core, extend, gammoid, rep
from .errors import BudgetExceeded, MatroidError
from .io import (
    build_from_manifest,
    dumps,
    load_matroid,
    matroid_to_dict,
    read_bundle,
    write_bundle,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(report, as_json, out=None):
    out = out or sys.stdout
    if as_json:
        out.write(dumps(report))
        return
    for key in sorted(report):
        val = report[key]
        if isinstance(val, (dict, list)):
            val = json.dumps(val, sort_keys=True)
        out.write(f"{key}: {val}\n")


def cmd_cat(args):
    sys.stdout.write(dumps(matroid_to_dict(catalog.get(args.name))))
    return 0


def cmd_check(args):
    M = load_matroid(args.file)
    _emit({"status": "ok", "rank": M.rk, "size": M.n, "bases": len(M.bases)}, args.json)
    return 0


def cmd_op(args):
    M = load_matroid(args.file)
    a = args.args
    verb = args.verb

    def need(k):
        if len(a) < k:
            raise UsageError(f"op {verb} needs {k} argument(s)")

    if verb == "delete":
        out = core.delete(M, a)
    elif verb == "contract":
        out = core.contract(M, a)
    elif verb == "dual":
        out = core.dual(M)
    elif verb == "dsum":
        need(1)
        out = core.direct_sum(M, load_matroid(a[0]))
    elif verb == "coloop":
        need(1)
        out = core.add_coloop(M, a[0])
    elif verb == "pext":
        need(1)
        out = extend.principal_extension(M, a[1:], a[0])
    elif verb == "place":
        need(1)
        out = extend.place_in_span(M, a[1:], a[0])
    elif verb == "free":
        need(1)
        out = extend.free_extension(M, a[0])
    elif verb == "series":
        need(2)
        out = extend.series_extension(M, a[0], a[1])
    elif verb == "shift":
        need(2)
        out = extend.shift(M, a[0], a[1])
    else:
        raise UsageError(f"unknown op {verb!r}")
    sys.stdout.write(dumps(matroid_to_dict(out)))
    return 0


def cmd_conn(args):
    M = load_matroid(args.file)
    S, T = args.S or [], args.T or []
    report = {"S": M.ordered(S), "T": M.ordered(T), "local_connectivity": connect.local_connectivity(M, S, T)}
    if set(S) | set(T) == set(M.labels) and not set(S) & set(T):
        report["exact_3_separation"] = connect.is_exact_3_separation(M, S, T)
    _emit(report, args.json)
    return 0


def cmd_freer(args):
    M = load_matroid(args.file)
    ok = extend.is_freer_element(M, args.p, args.q)
    _emit({"p": args.p, "q": args.q, "freer": ok}, args.json)
    return 0 if ok else 1


def cmd_incomp(args):
    M = load_matroid(args.file)
    pairs = extend.incomparable_pairs(M)
    _emit({"incomparable_pairs": [list(p) for p in pairs], "count": len(pairs)}, args.json)
    return 0


def cmd_construct(args):
    res = build_from_manifest(args.manifest)
    out = write_bundle(res, args.out)
    _emit({"bundle": str(out), "M": {"rank": res.M.rk, "size": res.M.n}}, args.json)
    return 0


def cmd_verify(args):
    res = read_bundle(args.bundle)
    lemmas = construct.LEMMAS if args.lemma == "all" else (args.lemma,)
    reps = construct.verify_all(res, lemmas, threads=args.threads)
    report = {k: v.to_dict() for k, v in reps.items()}
    ok = all(v.passed for v in reps.values())
    report = {"pass": ok, "reports": report}
    _emit(report, args.json)
    return 0 if ok else 1


def cmd_rep(args):
    M = load_matroid(args.file)
    try:
        W = rep.is_representable_gf(M, args.q, budget=args.budget)
    except BudgetExceeded as err:
        _emit({"q": args.q, "status": "search truncated", "detail": str(err)}, args.json)
        return 1
    if W is None:
        _emit({"q": args.q, "status": "not representable (exhaustive)"}, args.json)
        return 1
    _emit({"q": args.q, "status": "representable",
           "verified": rep.verify_representation(M, W),
           "witness": W.to_dict(list(M.labels))}, args.json)
    return 0


def cmd_gammoid(args):
    M = load_matroid(args.file)
    cert = gammoid.free_deconstruction(M, exhaustive=args.exhaustive)
    if cert is None:
        _emit({"status": "no certificate (recognizer is incomplete)",
               "has_incomparable_pair": gammoid.has_incomparable_pair(M)}, args.json)
        return 1
    _emit({"status": "gammoid", "certificate": cert.to_dict(),
           "replay_equal": cert.replay() == M}, args.json)
    return 0


def cmd_normalize(args):
    M = load_matroid(args.file)
    Np, A1, B1 = construct.two_bases_normalize(M)
    sys.stdout.write(dumps({"matroid": matroid_to_dict(Np), "A": list(A1), "B": list(B1)}))
    return 0


def cmd_demo(args):
    L = catalog.fano()
    N = core.uniform(1, 2, ["x", "y"])
    report = construct.demo_report(L, N, ["x"], ["y"], threads=args.threads)
    _emit(report, True)
    return 0 if report["pass"] else 1


def make_parser():
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable reports")
    common.add_argument("--threads", type=int, default=1, help="verifier worker threads")

    p = _Parser(prog="matroidkit", description=__doc__, parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        sp.set_defaults(fn=fn)
        return sp

    add("cat", cmd_cat, help="emit a catalog matroid").add_argument("name")
    add("check", cmd_check, help="validate a matroid file").add_argument("file")
    sp = add("op", cmd_op, help="apply an operation")
    sp.add_argument("verb", choices=["delete", "contract", "dual", "dsum", "coloop",
                                     "pext", "place", "free", "series", "shift"])
    sp.add_argument("file")
    sp.add_argument("args", nargs="*")
    sp = add("conn", cmd_conn, help="local connectivity")
    sp.add_argument("file")
    sp.add_argument("--S", nargs="*")
    sp.add_argument("--T", nargs="*")
    sp = add("freer", cmd_freer, help="is p freer than q")
    sp.add_argument("file")
    sp.add_argument("p")
    sp.add_argument("q")
    add("incomp", cmd_incomp, help="list incomparable pairs").add_argument("file")
    sp = add("construct", cmd_construct, help="run the construction from a manifest")
    sp.add_argument("manifest")
    sp.add_argument("--out", default="bundle")
    sp = add("verify", cmd_verify, help="verify a construction bundle")
    sp.add_argument("bundle")
    sp.add_argument("--lemma", default="all", choices=list(construct.LEMMAS) + ["all"])
    sp = add("rep", cmd_rep, help="GF(q) representability search")
    sp.add_argument("file")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--budget", type=int, default=rep.DEFAULT_BUDGET)
    sp = add("gammoid", cmd_gammoid, help="free-deconstruction certificate")
    sp.add_argument("file")
    sp.add_argument("--exhaustive", action="store_true")
    add("normalize", cmd_normalize, help="two-bases normalization").add_argument("file")
    add("demo", cmd_demo, help="verifier suite over F7 with N = U1,2")
    return p


def run(argv):
    as_json = "--json" in argv
    try:
        args = make_parser().parse_args(argv)
        return args.fn(args)
    except (UsageError, MatroidError, ValueError, KeyError, OSError, json.JSONDecodeError) as err:
        if as_json:
            sys.stderr.write(dumps({"error": type(err).__name__, "message": str(err)}))
        else:
            sys.stderr.write(f"error: {err}\n")
        return 2


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
