"""Command-line front end: ``cohenwitt [flags] COMMAND OP`` with a JSON payload on stdin.

Exit codes: 0 success, 2 a partial-result marker (NotMember, NotInSpan, ...),
1 a fault, 64 a malformed job (bad flags, bad JSON, schema violation).
"""

from __future__ import annotations

import argparse
import json
import sys

import jsonschema

from .cohen import CohenRingModel
from .errors import CohenWittError, Marker
from .fields import FieldDescriptor, make_field
from .lang import (
    L2_BATTERY,
    CohenBinding,
    ValuedBinding,
    ac_negative_controls,
    audit_axioms,
    check_morphism_preserves_qf,
    eval_qf,
    eval_term,
    negative_controls,
    parse_formula,
    parse_term,
)
from .lang.syntax import GAMMA, A, K, k, ring_level
from .morphisms import check_enrichment, structure_isomorphism, tep_embed
from .pbasis import lambda_decompose
from .valued import INF, ValuedElement, ValuedField
from .witt import WittVector, truncate, witt_ring

EXIT_OK, EXIT_FAULT, EXIT_MARKER, EXIT_USAGE = 0, 1, 2, 64

OPS = {
    "lambda": ["decompose"],
    "witt": ["add", "sub", "mul", "neg", "teichmuller", "truncate"],
    "cohen": ["digitize", "undigitize", "member", "rep"],
    "morphism": ["structure-iso", "tep", "check-enrichment"],
    "valued": ["v", "res", "ac"],
    "lang": ["eval", "audit"],
}

# -- schemas ---------------------------------------------------------------------------
_ELT = {"type": "string"}
_DIGITS = {"type": "array", "items": {"anyOf": [{"type": "string"}, {"type": "integer"}]}, "minItems": 1}
_FIELD = {
    "type": "object",
    "properties": {
        "p": {"type": "integer"},
        "d": {"type": "integer", "minimum": 1},
        "r": {"type": "integer", "minimum": 0},
        "modulus": {"type": ["array", "null"], "items": {"type": "integer"}},
    },
    "required": ["p"],
}
_VALUED = {
    "type": "object",
    "properties": {"val": {"anyOf": [{"type": "integer"}, {"const": "inf"}]}, "unit": {"type": ["array", "null"]}},
    "required": ["val"],
}


def _schema(props: dict, required: list) -> dict:
    base = {"field": _FIELD, "m": {"type": "integer", "minimum": 1}}
    return {"type": "object", "properties": {**base, **props}, "required": required}


_BIN = _schema({"x": _DIGITS, "y": _DIGITS}, ["x", "y"])
SCHEMAS = {
    ("lambda", "decompose"): _schema({"alpha": _ELT, "beta": {"type": "array", "items": _ELT}}, ["alpha"]),
    ("witt", "add"): _BIN,
    ("witt", "sub"): _BIN,
    ("witt", "mul"): _BIN,
    ("witt", "neg"): _schema({"x": _DIGITS}, ["x"]),
    ("witt", "teichmuller"): _schema({"alpha": _ELT}, ["alpha"]),
    ("witt", "truncate"): _schema({"x": _DIGITS, "n": {"type": "integer", "minimum": 1}}, ["x", "n"]),
    ("cohen", "digitize"): _schema({"x": _DIGITS, "reps": {"type": "array", "items": _DIGITS}}, ["x"]),
    ("cohen", "undigitize"): _schema({"digits": _DIGITS, "reps": {"type": "array", "items": _DIGITS}},
                                     ["digits"]),
    ("cohen", "member"): _schema({"x": _DIGITS, "reps": {"type": "array", "items": _DIGITS}}, ["x"]),
    ("cohen", "rep"): _schema({"alpha": _ELT, "kind": {"enum": ["lambda", "multiplicative"]},
                               "reps": {"type": "array", "items": _DIGITS}}, ["alpha"]),
    ("morphism", "structure-iso"): _schema({"x": _DIGITS, "reps_source": {"type": "array", "items": _DIGITS},
                                            "reps_target": {"type": "array", "items": _DIGITS}},
                                           ["x", "reps_target"]),
    ("morphism", "tep"): _schema({"x": _DIGITS, "n": {"type": "integer", "minimum": 0}}, ["x", "n"]),
    ("morphism", "check-enrichment"): _schema({"kind": {"enum": ["structure-iso", "tep"]},
                                               "n": {"type": "integer", "minimum": 0},
                                               "reps_target": {"type": "array", "items": _DIGITS}},
                                              ["kind"]),
    ("valued", "v"): _schema({"x": _VALUED}, ["x"]),
    ("valued", "res"): _schema({"x": _VALUED, "n": {"type": "integer", "minimum": 1}}, ["x", "n"]),
    ("valued", "ac"): _schema({"x": _VALUED, "n": {"type": "integer", "minimum": 1}}, ["x", "n"]),
    ("lang", "eval"): _schema({"formula": {"type": "string"}, "term": {"type": "string"},
                               "structure": {"enum": ["cohen", "valued"]},
                               "sorts": {"type": "object", "additionalProperties": {"type": "string"}},
                               "assignment": {"type": "object"}}, []),
    ("lang", "audit"): _schema({"which": {"enum": ["T2", "Tac-core", "ac-axioms", "qf-battery"]},
                                "n": {"type": "integer", "minimum": 1},
                                "control": {"type": "string"}}, ["which"]),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cohenwitt", description="Cohen rings, Witt vectors and ac-valued fields.")
    parser.add_argument("--p", type=int, default=2, help="characteristic of the residue field")
    parser.add_argument("--d", type=int, default=1, help="degree of F_q over F_p")
    parser.add_argument("--modulus", type=str, default=None,
                        help="comma-separated coefficients (low to high) of the F_q modulus")
    parser.add_argument("--r", type=int, default=1, help="number of variables t_i")
    parser.add_argument("--m", type=int, default=2, help="Witt length / precision")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--samples", type=int, default=50)
    parser.add_argument("--input", type=str, default=None, help="read the JSON job from a file instead of stdin")
    parser.add_argument("command", choices=sorted(OPS))
    parser.add_argument("op", nargs="?", default=None)
    return parser


# -- helpers ---------------------------------------------------------------------------
class _Ctx:
    def __init__(self, args, payload: dict):
        if "field" in payload:
            self.k = FieldDescriptor.from_json({"d": 1, "r": 0, **payload["field"]}).field()
        else:
            modulus = tuple(int(c) for c in args.modulus.split(",")) if args.modulus else None
            self.k = make_field(args.p, args.d, args.r, modulus)
        self.m = int(payload.get("m", args.m))
        self.seed = args.seed
        self.samples = args.samples
        self.payload = payload

    @property
    def ring(self):
        return witt_ring(self.k, self.m)

    def vector(self, digits, m: int | None = None) -> WittVector:
        ring = witt_ring(self.k, m or len(digits))
        return ring.vector([str(d) if isinstance(d, int) else d for d in digits])

    def model(self, reps_key: str = "reps") -> CohenRingModel:
        reps = self.payload.get(reps_key)
        if reps is None:
            return CohenRingModel(self.k, self.m)
        return CohenRingModel(self.k, self.m, reps=[self.vector(r, self.m) for r in reps])

    def valued(self, obj: dict) -> ValuedElement:
        vf = ValuedField(self.k, self.m)
        if obj["val"] == "inf":
            return vf.zero()
        return vf.element(int(obj["val"]), [str(d) for d in obj["unit"]])


# -- handlers --------------------------------------------------------------------------
def _lambda(ctx: _Ctx, op: str):
    k = ctx.k
    beta = tuple(k.parse(b) for b in ctx.payload.get("beta", [])) or k.gens()
    dec = lambda_decompose(beta, ctx.m, k.parse(ctx.payload["alpha"]))
    return dec if isinstance(dec, Marker) else dec.to_json()


def _witt(ctx: _Ctx, op: str):
    p = ctx.payload
    if op == "teichmuller":
        return {"result": ctx.ring.teichmuller(ctx.k.parse(p["alpha"])).to_json()}
    x = ctx.vector(p["x"])
    if op == "truncate":
        return {"result": truncate(x, p["n"]).to_json()}
    if op == "neg":
        return {"result": (-x).to_json()}
    y = ctx.vector(p["y"])
    return {"result": x.ring.op(op, x, y).to_json()}


def _cohen(ctx: _Ctx, op: str):
    p = ctx.payload
    model = ctx.model()
    if op == "digitize":
        d = model.digitize(ctx.vector(p["x"], ctx.m))
        return d if isinstance(d, Marker) else {"digits": d.to_json()}
    if op == "undigitize":
        return {"result": model.undigitize([str(a) for a in p["digits"]]).to_json()}
    if op == "member":
        return {"member": model.is_member(ctx.vector(p["x"], ctx.m))}
    alpha = ctx.k.parse(p["alpha"])
    if p.get("kind", "lambda") == "multiplicative":
        out = model.multiplicative_representative(alpha)
    else:
        out = model.lambda_representative(alpha)
    return out if isinstance(out, Marker) else {"result": out.to_json()}


def _morphism(ctx: _Ctx, op: str):
    p = ctx.payload
    if op == "structure-iso":
        phi = structure_isomorphism(ctx.model("reps_source"), ctx.model("reps_target"))
        return {"image": phi(ctx.vector(p["x"], ctx.m)).to_json()}
    if op == "tep":
        phi = tep_embed(ctx.model(), p["n"])
        return {"image": phi(ctx.vector(p["x"], ctx.m)).to_json(),
                "witnesses": [w.to_json() for w in phi.extras["witnesses"]],
                "residue_map": phi.residue_map.to_json()}
    if p["kind"] == "tep":
        phi = tep_embed(ctx.model(), p.get("n", 1))
    else:
        phi = structure_isomorphism(ctx.model(), ctx.model("reps_target"))
    rep = check_enrichment(phi, n_samples=ctx.samples, seed=ctx.seed)
    return {"checked": rep.checked, "mode": rep.mode, "ok": rep.ok,
            "discrepancies": [[_show_tuple(b), str(a), lhs.to_json(), rhs.to_json()]
                              for b, a, lhs, rhs in rep.discrepancies]}


def _show_tuple(b) -> list:
    return [x.to_json() for x in b]


def _valued(ctx: _Ctx, op: str):
    x = ctx.valued(ctx.payload["x"])
    vf = x.field
    if op == "v":
        return {"v": "inf" if x.val is INF else x.val}
    n = ctx.payload["n"]
    out = vf.residue_n(x, n) if op == "res" else vf.ac_n(x, n)
    return out if isinstance(out, Marker) else {"result": out.to_json()}


def _value_in(binding, sort, raw, ctx: _Ctx):
    if sort == k:
        return ctx.k.parse(str(raw))
    if sort == A and isinstance(binding, CohenBinding):
        return ctx.vector(raw, ctx.m)
    if sort in (K, A):
        return ctx.valued(raw)
    if sort == GAMMA:
        return INF if raw == "inf" else int(raw)
    return ctx.vector(raw, ring_level(sort))


def _value_out(v):
    if isinstance(v, bool):
        return v
    if isinstance(v, WittVector):
        return v.to_json()
    if isinstance(v, ValuedElement):
        return v.to_json()
    if v is INF:
        return "inf"
    if isinstance(v, int):
        return v
    return str(v)


def _lang(ctx: _Ctx, op: str):
    p = ctx.payload
    valued = p.get("structure") == "valued" or p.get("which") in ("Tac-core", "ac-axioms")
    if valued:
        binding = ValuedBinding(ValuedField(ctx.k, ctx.m))
    else:
        binding = CohenBinding(CohenRingModel(ctx.k, ctx.m))
    if op == "audit":
        if p["which"] == "qf-battery":
            phi = tep_embed(binding.model, p.get("n", 1))
            rep = check_morphism_preserves_qf(phi, L2_BATTERY, samples=ctx.samples, seed=ctx.seed)
            return rep.to_json()
        control = p.get("control")
        if control:
            controls = ac_negative_controls(binding.vf) if valued else negative_controls(binding.model)
            if control not in controls:
                raise UsageError(f"unknown control {control!r}; choose from {sorted(controls)}")
            binding = controls[control][0]
        which = p["which"] if p["which"] != "T2" or "n" not in p else f"T2({p['n']})"
        return audit_axioms(binding, which, samples=ctx.samples, seed=ctx.seed).to_json()
    sorts = p.get("sorts", {})
    flags: list = []
    if "formula" in p:
        f = parse_formula(p["formula"], sorts)
        env = {name: _value_in(binding, s, p.get("assignment", {}).get(name), ctx)
               for name, s in f.free_vars().items() if name in p.get("assignment", {})}
        return {"value": eval_qf(binding, f, env, flags), "flags": flags}
    if "term" in p:
        t = parse_term(p["term"], sorts)
        env = {name: _value_in(binding, s, p.get("assignment", {}).get(name), ctx)
               for name, s in t.free_vars().items() if name in p.get("assignment", {})}
        return {"value": _value_out(eval_term(binding, t, env, flags)), "flags": flags}
    raise UsageError("lang eval needs a formula or a term")


HANDLERS = {"lambda": _lambda, "witt": _witt, "cohen": _cohen, "morphism": _morphism,
            "valued": _valued, "lang": _lang}


def run(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        op = args.op or OPS[args.command][0]
        if op not in OPS[args.command]:
            raise UsageError(f"{args.command} has no operation {op!r}; choose from {OPS[args.command]}")
        if args.input:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        else:
            text = stdin.read()
        payload = json.loads(text) if text.strip() else {}
        jsonschema.validate(payload, SCHEMAS[(args.command, op)])
        ctx = _Ctx(args, payload)
        result = HANDLERS[args.command](ctx, op)
    except (UsageError, json.JSONDecodeError, jsonschema.ValidationError) as exc:
        msg = exc.message if isinstance(exc, jsonschema.ValidationError) else str(exc)
        print(f"cohenwitt: invalid job: {msg}", file=stderr)
        return EXIT_USAGE
    except (CohenWittError, ValueError, ZeroDivisionError) as exc:
        print(f"cohenwitt: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_FAULT
    if isinstance(result, Marker):
        print(json.dumps({"marker": result.name}, separators=(",", ":")), file=stdout)
        return EXIT_MARKER
    print(json.dumps(result, separators=(",", ":"), ensure_ascii=False), file=stdout)
    return EXIT_OK


def main() -> None:  # pragma: no cover - console entry point
    sys.exit(run())


if __name__ == "__main__":  # pragma: no cover
    main()
