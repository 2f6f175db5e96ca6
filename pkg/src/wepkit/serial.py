"""JSON encoding for matrices, pairs, reports, certificates and corpora.

Rationals are written as canonical ``"p/q"`` strings (``"0/1"`` for zero),
so a parsed and re-emitted matrix is byte-identical.  On input ``"p"`` and
plain integers are accepted as well; decimals and floats are rejected.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction

from .exact import GMat, GScalar
from .gen import Family, GenSpec, Instance
from .weighted import CoreDecomp, ProjCert, WInverseReport, WPair


class SchemaError(ValueError):
    """Input JSON does not follow the documented schema."""


_RATIONAL = re.compile(r"-?\d+(/\d+)?")


def fmt_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def parse_rational(v) -> Fraction:
    if isinstance(v, bool):
        raise SchemaError(f"not a rational: {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str) and _RATIONAL.fullmatch(v):
        num, _, den = v.partition("/")
        if den and int(den) == 0:
            raise SchemaError(f"zero denominator: {v!r}")
        return Fraction(int(num), int(den or 1))
    raise SchemaError(f"not a rational string: {v!r}")


def _scalar(v) -> GScalar:
    if isinstance(v, dict):
        extra = set(v) - {"re", "im"}
        if extra:
            raise SchemaError(f"unexpected scalar keys {sorted(extra)}")
        return GScalar(parse_rational(v.get("re", 0)), parse_rational(v.get("im", 0)))
    return GScalar(parse_rational(v))


def matrix_to_json(M: GMat) -> dict:
    return {"n": M.n, "entries": [
        [{"re": fmt_rational(z.re), "im": fmt_rational(z.im)} for z in row]
        for row in M.rows()
    ]}


def matrix_from_json(obj) -> GMat:
    if not isinstance(obj, dict) or "entries" not in obj:
        raise SchemaError("matrix must be an object with 'n' and 'entries'")
    rows = obj["entries"]
    n = obj.get("n", len(rows) if isinstance(rows, list) else None)
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise SchemaError(f"bad dimension {n!r}")
    if not isinstance(rows, list) or len(rows) != n or \
            any(not isinstance(r, list) or len(r) != n for r in rows):
        raise SchemaError(f"entries must be an {n}x{n} array")
    return GMat([[_scalar(v) for v in row] for row in rows])


def pair_to_json(pair: WPair) -> dict:
    return {"a": matrix_to_json(pair.a), "w": matrix_to_json(pair.w)}


def pair_from_json(obj) -> WPair:
    if not isinstance(obj, dict) or not {"a", "w"} <= set(obj):
        raise SchemaError("pair must be an object with 'a' and 'w'")
    return WPair(matrix_from_json(obj["a"]), matrix_from_json(obj["w"]))


def _value(v):
    if isinstance(v, GMat):
        return matrix_to_json(v)
    if isinstance(v, WInverseReport):
        return report_to_json(v)
    if isinstance(v, dict):
        return {str(k): _value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_value(x) for x in v]
    return v


def report_to_json(rep: WInverseReport) -> dict:
    return {
        "kind": rep.kind.value,
        "exists": rep.exists,
        "witness": matrix_to_json(rep.x) if rep.exists else None,
        "candidate": matrix_to_json(rep.candidate),
        "axioms": {name: t for name, t in rep.verified_axioms},
        "extras": _value(rep.extras),
    }


def decomposition_to_json(dec: CoreDecomp) -> dict:
    return {"x": matrix_to_json(dec.x), "y": matrix_to_json(dec.y),
            "nil_degree": dec.nil_degree, "checks": dict(dec.checks)}


def projection_to_json(cert: ProjCert) -> dict:
    return {"p": matrix_to_json(cert.p), "m": matrix_to_json(cert.m),
            "checks": dict(cert.checks)}


def certificate_to_json(cert) -> dict:
    return {
        "theorem": cert.theorem,
        "consistent": cert.consistent,
        "shape": cert.shape,
        "clauses": [{"label": c.label, "truth": c.truth, "role": c.role,
                     "witnesses": _value(c.witnesses)} for c in cert.clauses],
        "notes": list(cert.notes),
    }


def summary_to_json(summary, instances: int) -> dict:
    return {
        "instances": instances,
        "inconsistencies": summary.inconsistencies,
        "theorems": summary.counts,
        "failures": [{"index": i, "certificate": certificate_to_json(c)}
                     for i, c in summary.failures],
    }


def spec_to_json(spec: GenSpec) -> dict:
    return {"family": spec.family.value, "n": spec.n, "seed": spec.seed,
            "magnitude": spec.magnitude}


def spec_from_json(obj) -> GenSpec:
    try:
        return GenSpec(Family(obj["family"]), int(obj["n"]), int(obj["seed"]),
                       int(obj.get("magnitude", 10)))
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad generator spec: {exc}") from None


def corpus_to_json(instances) -> list:
    return [{"spec": spec_to_json(i.spec), "pair": pair_to_json(i.pair), "label": i.label}
            for i in instances]


def corpus_from_json(obj) -> list[Instance]:
    """Corpus entries need a ``pair``; ``spec`` and ``label`` may be null."""
    if not isinstance(obj, list):
        raise SchemaError("corpus must be a JSON array")
    out = []
    for item in obj:
        if not isinstance(item, dict) or "pair" not in item:
            raise SchemaError("corpus entries need a 'pair'")
        spec = item.get("spec")
        out.append(Instance(spec_from_json(spec) if spec else None,
                            pair_from_json(item["pair"]), item.get("label")))
    return out


def dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=True)
