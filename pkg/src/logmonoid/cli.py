"""Command-line front end.

Every verb reads one JSON file and writes one canonical JSON report to
standard output.  Exit codes: 0 success, 2 invalid input, 3 a size cap was
hit.  Errors are reported as a JSON object on standard output.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import BudgetError, MonoidError, ValidationError
from .extcone import extend, extend_map, extended_fiber_product
from .intsat import integralize_basis, saturate
from .jsonio import FORMAT, decode_matrix, dumps, encode_int
from .lattice import DEFAULT_VOLUME_CAP, Cone, cone_fiber_product
from .pipeline import Diagram, fine_faces, fine_faces_of_diagram, report, summary_table
from .presentation import MonomialOrder, Presentation
from .rewriting import groebner, normal_form
from .structure import DEFAULT_GENERATOR_CAP, enumerate_primes, face, units

VERBS = (
    "groebner",
    "nf",
    "units",
    "primes",
    "faces",
    "integralize",
    "saturate",
    "fine-faces",
    "pushout",
    "extend",
    "fiber-product",
    "check-theorem-c",
)

EXIT_OK, EXIT_INVALID, EXIT_BUDGET = 0, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="logmonoid", description="Finitely presented monoids and their faces.")
    p.add_argument("verb", choices=VERBS, metavar="verb", help=", ".join(VERBS))
    p.add_argument("input", help="JSON input file ('-' for standard input)")
    p.add_argument("--order", help='monomial order, e.g. "lex:y,x" or "weighted:y=2,x=1"')
    p.add_argument("--exp", help='exponent for nf, e.g. "x+3y"')
    p.add_argument("--trace", action="store_true", help="nf: print applied rules to stderr")
    p.add_argument("--summary", action="store_true", help="print a table instead of JSON")
    p.add_argument("--exclude-empty-prime", action="store_true")
    p.add_argument("--prime-cap", type=int, default=DEFAULT_GENERATOR_CAP)
    p.add_argument("--volume-cap", type=int, default=DEFAULT_VOLUME_CAP)
    return p


def _plain(x):
    """Make witnesses JSON friendly."""
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return encode_int(x)
    return str(x)


def _error(kind, message, **extra):
    body = {"type": kind, "message": message}
    body.update(extra)
    return {"format": FORMAT, "error": body}


def _load(path):
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ValidationError(f"cannot read {path}: {exc.strerror}") from None
    return json.loads(text)


def _presentation(data):
    if isinstance(data, dict) and "presentation" in data and "generators" not in data:
        data = data["presentation"]
    return Presentation.from_json(data)


def _chart(data):
    if isinstance(data, dict) and "P" in data:
        return Diagram.from_json(data).chart()
    return _presentation(data)


def _order(args, pres):
    return MonomialOrder.parse(args.order, pres.generators)


def _wrap(payload):
    out = {"format": FORMAT}
    out.update(payload)
    return out


def run_verb(args, data, err):
    verb = args.verb
    if verb == "groebner":
        pres = _presentation(data)
        basis = groebner(pres, _order(args, pres))
        return _wrap({"generators": list(pres.generators), "basis": basis.to_json(pres.generators)})
    if verb == "nf":
        pres = _presentation(data)
        if args.exp is None:
            raise ValidationError("nf needs --exp")
        a = pres.exponent(args.exp)
        basis = groebner(pres, _order(args, pres))
        trace = [] if args.trace else None
        b = normal_form(basis, a, trace)
        if trace is not None:
            for head, body in trace:
                err.write(f"{pres.format(head)} -> {pres.format(body)}\n")
        return _wrap(
            {
                "input": pres.format(a),
                "normalForm": pres.format(b),
                "exponent": [encode_int(x) for x in b],
                "order": basis.order.describe(pres.generators),
            }
        )
    if verb == "units":
        pres = _presentation(data)
        rep = units(pres, _order(args, pres))
        out = rep.to_json()
        if rep.divergent:
            out["note"] = (
                "generators with normal form 0 differ from the unit generators; "
                "the normal-form test only detects generators equal to 0"
            )
        return _wrap(out)
    if verb == "primes":
        pres = _presentation(data)
        primes = enumerate_primes(pres, args.prime_cap, args.exclude_empty_prime)
        return _wrap({"generators": list(pres.generators), "primes": [p.names for p in primes]})
    if verb == "faces":
        pres = _presentation(data)
        order = _order(args, pres)
        primes = enumerate_primes(pres, args.prime_cap, args.exclude_empty_prime)
        return _wrap(
            {"faces": [{"prime": p.names, "face": face(pres, p, order).presentation.to_json()} for p in primes]}
        )
    if verb == "integralize":
        pres = _presentation(data)
        basis = integralize_basis(pres, _order(args, pres))
        return _wrap(
            {
                "presentation": pres.with_relations(basis.rules).to_json(),
                "basis": basis.to_json(pres.generators),
            }
        )
    if verb == "saturate":
        pres = _presentation(data)
        return _wrap(saturate(pres, _order(args, pres), args.volume_cap).to_json())
    if verb == "fine-faces":
        chart = _chart(data)
        records = fine_faces(
            chart,
            _order(args, chart),
            cap=args.prime_cap,
            exclude_empty=args.exclude_empty_prime,
            volume_cap=args.volume_cap,
        )
        if args.summary:
            return summary_table(records)
        return report(chart, records)
    if verb == "pushout":
        return _wrap({"presentation": Diagram.from_json(data).chart().to_json()})
    if verb == "extend":
        return _wrap({"extendedCone": extend(Cone.from_json(data)).to_json()})
    if verb == "fiber-product":
        return _fiber_product(data)
    if verb == "check-theorem-c":
        diagram = Diagram.from_json(data)
        chart = diagram.chart()
        result = fine_faces_of_diagram(
            diagram, _order(args, chart), cap=args.prime_cap, volume_cap=args.volume_cap
        )
        if args.summary:
            tc = result.theorem_c
            lines = [f"{'matched' if f.matches else 'UNMATCHED'}  {f.label}" for f in tc.faces]
            lines.append(f"verdict: {'all matched' if tc.verdict else 'mismatch'} (chart level)")
            return "\n".join(lines) + "\n"
        return result.to_json()
    raise UsageError(f"unknown verb {verb!r}")


def _fiber_product(data):
    if not isinstance(data, dict):
        raise ValidationError("fiber-product input must be an object")
    for key in ("cone1", "cone2", "f", "g"):
        if key not in data:
            raise ValidationError(f"fiber-product input is missing {key!r}")
    c1, c2 = Cone.from_json(data["cone1"]), Cone.from_json(data["cone2"])
    f, g = decode_matrix(data["f"]), decode_matrix(data["g"])
    out = {"cone": cone_fiber_product(c1, c2, f, g).to_json()}
    if "base" in data:
        base = extend(Cone.from_json(data["base"]))
        mf = extend_map(f, extend(c1), base)
        mg = extend_map(g, extend(c2), base)
        out["strata"] = [s.to_json() for s in extended_fiber_product(mf, mg)]
    return _wrap(out)


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        out.write(dumps(_error("usage", str(exc))))
        return EXIT_INVALID
    try:
        data = _load(args.input)
    except json.JSONDecodeError as exc:
        out.write(
            dumps(_error("json", exc.msg, line=exc.lineno, column=exc.colno, position=exc.pos))
        )
        return EXIT_INVALID
    except ValidationError as exc:
        out.write(dumps(_error("input", str(exc))))
        return EXIT_INVALID
    try:
        result = run_verb(args, data, err)
    except UsageError as exc:
        out.write(dumps(_error("usage", str(exc))))
        return EXIT_INVALID
    except ValidationError as exc:
        extra = {} if exc.witness is None else {"witness": _plain(exc.witness)}
        out.write(dumps(_error(type(exc).__name__, str(exc), **extra)))
        return EXIT_INVALID
    except BudgetError as exc:
        out.write(dumps(_error(type(exc).__name__, str(exc))))
        return EXIT_BUDGET
    except MonoidError as exc:
        out.write(dumps(_error(type(exc).__name__, str(exc))))
        return EXIT_INVALID
    out.write(result if isinstance(result, str) else dumps(result))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
