"""JSON-in / JSON-out command line front end.

Exit codes: 0 success, 2 not a unit / not invertible, 3 precision exhausted /
undecidable / cap exceeded, 4 parse or schema error.  Errors are reported as
``{"error": {"code": ..., "message": ...}}`` on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

from .errors import GluingError, SchemaError
from .glue import (BundleTriple, TransitionDatum, bundle_from_matrix, cech_h1, formal_from_matrix,
                   global_sections, splitting_type, transition_of_triple)
from .laurent import (BFraction, TruncatedSeries, classify_series_unit, decode_entry, encode_entry,
                      invert_in_B)
from .matfact import (MatLaurent, No, NotEqual, cartan_type, coset_equal, factorize_gdelta,
                      membership_gl_power_series, random_gl)
from .ring import Ring, classify_element, ring_from_json, Unit, Nilpotent

SUBCOMMANDS = ("invert", "classify", "factorize", "membership", "cartan", "coset", "glue",
               "transition", "formal", "sections", "h1", "splitting", "random")


def _load_input(source: str | None) -> Any:
    if source is None or source == "-":
        text = sys.stdin.read()
    elif source.lstrip()[:1] in ("{", "[", '"') or source.strip().lstrip("-").isdigit():
        text = source
    else:
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as exc:
            raise SchemaError(f"cannot read input {source!r}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"input is not valid JSON: {exc}") from exc


def _matrix(ring: Ring, obj: Any, key: str = "gamma") -> MatLaurent:
    """A matrix, or a document carrying one under ``key`` / ``g``."""
    if isinstance(obj, dict):
        for k in (key, "g", "delta"):
            if k in obj and obj[k] is not None:
                return MatLaurent.from_json(ring, obj[k])
        raise SchemaError(f"expected a matrix or an object with a {key!r} field")
    return MatLaurent.from_json(ring, obj)


def _need_prec(args, what: str) -> int:
    if args.prec is None:
        raise SchemaError(f"--prec is required for {what}")
    return args.prec


def _has_truncated(M: MatLaurent) -> bool:
    return M.kind == "series" and M.precision() is not None


def _cmd_invert(ring, doc, args):
    f = decode_entry(ring, doc["f"] if isinstance(doc, dict) and "f" in doc else doc)
    if isinstance(f, TruncatedSeries):
        raise SchemaError("invert takes an exact element of B (\"prec\": null)")
    f = BFraction.of(f)
    witness = classify_series_unit(f)
    inv = invert_in_B(f)
    return {"inverse": encode_entry(inv), "witness": witness.to_json(),
            "check": f * inv == BFraction.one(ring)}


def _cmd_classify(ring, doc, args):
    if isinstance(doc, dict) and "element" in doc:
        c = classify_element(ring(doc["element"]))
        if isinstance(c, Unit):
            return {"kind": "unit", "inverse": ring.encode(c.inverse.value)}
        if isinstance(c, Nilpotent):
            return {"kind": "nilpotent", "index": c.index}
        return {"kind": "other"}
    f = decode_entry(ring, doc["f"] if isinstance(doc, dict) and "f" in doc else doc)
    if isinstance(f, TruncatedSeries) and args.prec is not None:
        f = f.truncate(args.prec)
    return classify_series_unit(f).to_json()


def _cmd_factorize(ring, doc, args):
    prec = _need_prec(args, "factorize")
    return factorize_gdelta(_matrix(ring, doc), prec).to_json()


def _cmd_membership(ring, doc, args):
    key = "delta" if isinstance(doc, dict) and "delta" in doc else "gamma"
    M = _matrix(ring, doc, key)
    if _has_truncated(M):
        M = M.expand(_need_prec(args, "membership on truncated input"))
    out = membership_gl_power_series(M)
    return out.to_json(ring) if isinstance(out, No) else out.to_json()


def _cmd_cartan(ring, doc, args):
    return list(cartan_type(_matrix(ring, doc)))


def _cmd_coset(ring, doc, args):
    if not isinstance(doc, dict) or "gamma1" not in doc or "gamma2" not in doc:
        raise SchemaError("coset expects {\"gamma1\": ..., \"gamma2\": ...}")
    a = _matrix(ring, doc["gamma1"])
    b = _matrix(ring, doc["gamma2"])
    prec = args.prec
    if (a.kind == "series" or b.kind == "series"):
        prec = _need_prec(args, "coset on truncated input")
    out = coset_equal(a, b, prec)
    if isinstance(out, NotEqual):
        return out.to_json(ring)
    return out.to_json()


def _cmd_glue(ring, doc, args):
    triple = bundle_from_matrix(_matrix(ring, doc, "g"))
    out = triple.to_json()
    out["det_witness"] = triple.transition.det_witness.to_json()
    return out


def _triple_or_matrix(ring, doc) -> TransitionDatum:
    if isinstance(doc, dict) and "g" in doc:
        triple = BundleTriple(TransitionDatum.certify(MatLaurent.from_json(ring, doc["g"])),
                              MatLaurent.from_json(ring, doc["delta"]) if doc.get("delta") else None)
        return transition_of_triple(triple)
    return TransitionDatum.certify(_matrix(ring, doc, "g"))


def _cmd_transition(ring, doc, args):
    datum = _triple_or_matrix(ring, doc)
    return {"n": datum.n, "g": datum.g.to_json()}


def _cmd_formal(ring, doc, args):
    return formal_from_matrix(_matrix(ring, doc), _need_prec(args, "formal")).to_json()


def _cmd_sections(ring, doc, args):
    return global_sections(_triple_or_matrix(ring, doc), args.m).to_json()


def _cmd_h1(ring, doc, args):
    return {"m": args.m, "h1": cech_h1(_triple_or_matrix(ring, doc), args.m)}


def _cmd_splitting(ring, doc, args):
    return list(splitting_type(_triple_or_matrix(ring, doc)))


def _cmd_random(ring, doc, args):
    if args.seed is None:
        raise SchemaError("--seed is required for random")
    prec = args.prec if args.prec is not None else 32
    out = random_gl(args.n, args.kind, args.seed, ring, prec)
    if args.kind == "product":
        gamma, g0, d0 = out
        return {"gamma": gamma.to_json(), "g0": g0.to_json(), "delta0": d0.to_json()}
    return out.to_json()


HANDLERS = {name: globals()[f"_cmd_{name}"] for name in SUBCOMMANDS}


class _Parser(argparse.ArgumentParser):
    """Usage errors are schema errors (exit 4), not argparse's default 2."""

    def error(self, message):
        sys.stderr.write(dumps({"error": {"code": "usage_error", "message": message}}))
        raise SystemExit(4)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="blglue", description="Gluing vector bundles on P^1 from Laurent-series matrices.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--ring", required=True, help="ring descriptor as JSON")
        p.add_argument("--input", "-i", default=None,
                       help="JSON input: a file path, inline JSON, or '-' for stdin (default)")
        p.add_argument("--prec", type=int, default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--out", "-o", default=None, help="output path (default stdout)")
        if name in ("sections", "h1"):
            p.add_argument("--m", type=int, default=0, help="twist E(m)")
        if name == "random":
            p.add_argument("--n", type=int, default=2)
            p.add_argument("--kind", choices=("power_series_unit", "b_matrix", "product"),
                           default="product")
    return parser


def run(args: argparse.Namespace) -> tuple[int, Any]:
    """Dispatch one request; returns ``(exit code, JSON document)``."""
    try:
        try:
            ring = ring_from_json(json.loads(args.ring))
        except json.JSONDecodeError as exc:
            raise SchemaError(f"--ring is not valid JSON: {exc}") from exc
        doc = None if args.command == "random" else _load_input(args.input)
        return 0, HANDLERS[args.command](ring, doc, args)
    except GluingError as exc:
        return exc.exit_code, {"error": exc.to_json()}
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        return 4, {"error": {"code": "schema_error", "message": f"{type(exc).__name__}: {exc}"}}


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    code, doc = run(args)
    text = dumps(doc)
    if code != 0:
        sys.stderr.write(text)
        return code
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
