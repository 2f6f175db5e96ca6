"""Command-line front end.

JSON goes to standard output (or ``--output``), diagnostics to standard
error.  Exit codes: 0 success or consistent, 1 nonexistence or
inconsistency, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .exact import DimensionMismatch, GMat
from .gen import FAMILIES, Family, GenSpec, UnsupportedDimension, build_corpus, generate
from .ginv import drazin, group_inverse, moore_penrose
from .serial import (
    SchemaError, certificate_to_json, corpus_from_json, corpus_to_json,
    decomposition_to_json, dumps, matrix_from_json, matrix_to_json,
    pair_from_json, projection_to_json, report_to_json, summary_to_json,
)
from .theorems import UnknownTheorem, check, registered, run_suite, SUITE_IDS
from .weighted import (
    InconsistencyError, NotGenWEP, WPair, classify, core_decomposition,
    ep_projection, gen_w_ep, w_drazin, w_ep, w_group,
)

OK, NEGATIVE, INPUT_ERROR = 0, 1, 2

WEIGHTED = {"w-group": w_group, "w-drazin": w_drazin, "w-ep": w_ep, "gen-w-ep": gen_w_ep}


class InputError(Exception):
    pass


def _load(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc})") from None


def _load_pair(path) -> WPair:
    """A WPair object, or a bare matrix taken with unit weight."""
    obj = _load(path)
    if isinstance(obj, dict) and "a" in obj:
        return pair_from_json(obj)
    m = matrix_from_json(obj)
    return WPair(m, GMat.identity(m.n))


def _cmd_classify(args):
    reports = classify(_load_pair(args.input))
    return OK, {k.value: report_to_json(r) for k, r in reports.items()}


def _cmd_inverse(args):
    pair = _load_pair(args.input)
    kind = args.kind
    if kind in WEIGHTED:
        rep = WEIGHTED[kind](pair)
        return (OK if rep.exists else NEGATIVE), report_to_json(rep)
    a = pair.a
    if kind == "mp":
        return OK, {"kind": kind, "exists": True, "witness": matrix_to_json(moore_penrose(a))}
    if kind == "drazin":
        res = drazin(a)
        return OK, {"kind": kind, "exists": True, "witness": matrix_to_json(res.d),
                    "index": res.k}
    g = group_inverse(a)
    out = {"kind": kind, "exists": g is not None,
           "witness": matrix_to_json(g) if g is not None else None}
    if g is None:
        out["reason"] = "index of a exceeds 1"
    return (OK if g is not None else NEGATIVE), out


def _cmd_decompose(args):
    try:
        return OK, {"exists": True, **decomposition_to_json(core_decomposition(_load_pair(args.input)))}
    except NotGenWEP as exc:
        return NEGATIVE, {"exists": False, "reason": str(exc)}


def _cmd_project(args):
    try:
        return OK, {"exists": True, **projection_to_json(ep_projection(_load_pair(args.input)))}
    except NotGenWEP as exc:
        return NEGATIVE, {"exists": False, "reason": str(exc)}


def _cmd_check(args):
    cert = check(args.theorem, _load_pair(args.input))
    return (OK if cert.consistent else NEGATIVE), certificate_to_json(cert)


def _cmd_generate(args):
    if args.family:
        insts = [generate(GenSpec(Family(args.family), args.n, args.seed + i, args.magnitude))
                 for i in range(args.count)]
    else:
        insts = build_corpus(args.count, args.seed, args.n, args.magnitude)
    return OK, corpus_to_json(insts)


def _cmd_suite(args):
    corpus = corpus_from_json(_load(args.input))
    ids = args.theorem or SUITE_IDS
    for t in ids:
        if t not in registered():
            raise UnknownTheorem(t)
    summary = run_suite([i.pair for i in corpus], ids, workers=args.workers)
    print(f"{len(corpus)} instances, {summary.inconsistencies} inconsistencies", file=sys.stderr)
    return (OK if summary.inconsistencies == 0 else NEGATIVE), summary_to_json(summary, len(corpus))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wepkit", description="Exact weighted EP toolkit")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help, input=True):
        sp = sub.add_parser(name, help=help)
        if input:
            sp.add_argument("input", help="JSON file, or - for stdin")
        sp.add_argument("-o", "--output", help="write JSON here instead of stdout")
        sp.set_defaults(fn=fn)
        return sp

    verb("classify", _cmd_classify, "all five weighted predicates with witnesses")
    sp = verb("inverse", _cmd_inverse, "one generalized inverse")
    sp.add_argument("--kind", required=True,
                    choices=["mp", "group", "drazin", *WEIGHTED])
    verb("decompose", _cmd_decompose, "core decomposition a = x + y")
    verb("project", _cmd_project, "EP projection certificate")
    sp = verb("check", _cmd_check, "evaluate one theorem on a pair")
    sp.add_argument("--theorem", required=True, help="registry id, e.g. T2.1")
    sp = verb("generate", _cmd_generate, "emit a seeded corpus", input=False)
    sp.add_argument("--family", choices=[f.value for f in FAMILIES],
                    help="single family; omit for a mixed corpus")
    sp.add_argument("--n", type=int, default=3,
                    help="dimension (mixed corpus: largest dimension)")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--magnitude", type=int, default=10)
    sp.add_argument("--count", type=int, default=1)
    sp = verb("suite", _cmd_suite, "run the theorem registry over a corpus")
    sp.add_argument("--theorem", action="append", help="restrict to these ids")
    sp.add_argument("--workers", type=int, default=1)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code, payload = args.fn(args)
    except (InputError, SchemaError, DimensionMismatch, UnsupportedDimension) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except UnknownTheorem as exc:
        print(f"error: unknown theorem {exc.args[0]!r}", file=sys.stderr)
        return INPUT_ERROR
    except ValueError as exc:  # bad enum values, non-positive magnitude
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except InconsistencyError as exc:
        print(f"inconsistency: {exc}", file=sys.stderr)
        return NEGATIVE
    text = dumps(payload)
    if args.output:
        try:
            with open(args.output, "w") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            print(f"error: cannot write {args.output}: {exc.strerror}", file=sys.stderr)
            return INPUT_ERROR
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
