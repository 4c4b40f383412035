"""Command line: ``torusperiods verify|dual|random``.

Documents are JSON objects::

    {"g": 1, "M": [[1.0, 0.0], [0.0, 1.0]], "conjugation": [[1, 0], [0, -1]],
     "form_lambda": [1.0, 0.0], "C_g": 1.0, "tolerance": 1e-09}

Only ``g`` and ``M`` are required. ``verify`` prints one JSON record per
check followed by a summary record. Exit status is 0 when every check
passes, 1 when some check fails and 2 on malformed input or a failed
validation.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from .errors import TorusError
from .realstruct import (
    dual_real_structure,
    make_real_structure,
    random_real_torus,
    verify_real_duality,
)
from .report import CheckRecord, summary
from .torus import DEFAULT_TOL, HodgeForm, dual_torus, duality_transport, make_torus, verify_hermitian_duality

EXIT_OK, EXIT_FAILED, EXIT_INVALID = 0, 1, 2
# exterior-algebra cross-checks get expensive beyond this dimension
ORACLE_MAX_G = 3


class MalformedDocument(TorusError):
    pass


@dataclass
class TorusDocument:
    g: int
    M: np.ndarray
    conjugation: Optional[list] = None
    form_lambda: Optional[complex] = None
    C_g: float = 1.0
    tolerance: float = DEFAULT_TOL


def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise MalformedDocument(f"{where}: expected a number, got {value!r}")
    return float(value)


def _matrix(value, n: int, where: str, integer: bool = False) -> list:
    if not isinstance(value, list) or len(value) != n:
        raise MalformedDocument(f"{where}: expected {n} rows")
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, list) or len(row) != n:
            raise MalformedDocument(f"{where}[{i}]: expected a row of {n} entries")
        out = []
        for j, v in enumerate(row):
            if integer:
                if isinstance(v, bool) or not isinstance(v, int):
                    raise MalformedDocument(f"{where}[{i}][{j}]: expected an integer, got {v!r}")
                out.append(v)
            else:
                out.append(_number(v, f"{where}[{i}][{j}]"))
        rows.append(out)
    return rows


def parse_document(obj) -> TorusDocument:
    """Validate the shape of a decoded JSON document."""
    if not isinstance(obj, dict):
        raise MalformedDocument("document must be a JSON object")
    unknown = set(obj) - {"g", "M", "conjugation", "form_lambda", "C_g", "tolerance"}
    if unknown:
        raise MalformedDocument(f"unknown keys: {sorted(unknown)}")
    for key in ("g", "M"):
        if key not in obj:
            raise MalformedDocument(f"missing required key {key!r}")
    g = obj["g"]
    if isinstance(g, bool) or not isinstance(g, int) or g < 1:
        raise MalformedDocument(f"g: expected a positive integer, got {g!r}")
    doc = TorusDocument(g=g, M=np.array(_matrix(obj["M"], 2 * g, "M")))
    if obj.get("conjugation") is not None:
        doc.conjugation = _matrix(obj["conjugation"], 2 * g, "conjugation", integer=True)
    if obj.get("form_lambda") is not None:
        lam = obj["form_lambda"]
        if not isinstance(lam, list) or len(lam) != 2:
            raise MalformedDocument("form_lambda: expected [re, im]")
        doc.form_lambda = complex(_number(lam[0], "form_lambda[0]"), _number(lam[1], "form_lambda[1]"))
    for key in ("C_g", "tolerance"):
        if obj.get(key) is not None:
            value = _number(obj[key], key)
            if not value > 0:
                raise MalformedDocument(f"{key}: must be positive, got {value}")
            setattr(doc, key, value)
    return doc


def document_to_dict(doc: TorusDocument, defaults: bool = False) -> dict:
    out = {"g": doc.g, "M": [[float(v) for v in row] for row in doc.M]}
    if doc.conjugation is not None:
        out["conjugation"] = [[int(v) for v in row] for row in doc.conjugation]
    if doc.form_lambda is not None:
        out["form_lambda"] = [doc.form_lambda.real, doc.form_lambda.imag]
    if defaults or doc.C_g != 1.0:
        out["C_g"] = doc.C_g
    if defaults or doc.tolerance != DEFAULT_TOL:
        out["tolerance"] = doc.tolerance
    return out


def dumps_document(doc: TorusDocument) -> str:
    """One key per line, matrices inline; floats use shortest round-trip repr."""
    items = document_to_dict(doc)
    body = ",\n".join(f"  {json.dumps(k)}: {json.dumps(v)}" for k, v in items.items())
    return "{\n" + body + "\n}\n"


def read_document(path: str) -> TorusDocument:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise MalformedDocument(f"cannot read {path}: {exc.strerror}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return parse_document(obj)


def _apply_overrides(doc: TorusDocument, args) -> TorusDocument:
    if getattr(args, "tolerance", None) is not None:
        if not args.tolerance > 0:
            raise MalformedDocument(f"--tolerance must be positive, got {args.tolerance}")
        doc.tolerance = args.tolerance
    if getattr(args, "cg", None) is not None:
        if not args.cg > 0:
            raise MalformedDocument(f"--cg must be positive, got {args.cg}")
        doc.C_g = args.cg
    return doc


def run_checks(doc: TorusDocument, oracle: Optional[bool] = None) -> List[CheckRecord]:
    """All checks applicable to the document; validation errors propagate."""
    if oracle is None:
        oracle = doc.g <= ORACLE_MAX_G
    T = make_torus(doc.g, doc.M, doc.tolerance)
    rs = make_real_structure(T, doc.conjugation) if doc.conjugation is not None else None
    omega = HodgeForm(1 if doc.form_lambda is None else doc.form_lambda, doc.g)
    records = verify_hermitian_duality(T, omega, doc.C_g, oracle=oracle)
    if rs is not None:
        records += verify_real_duality(rs, omega, oracle=oracle)
    return records


def dual_document(doc: TorusDocument) -> TorusDocument:
    T = make_torus(doc.g, doc.M, doc.tolerance)
    B = dual_torus(T)
    out = TorusDocument(g=doc.g, M=np.array(B.M), C_g=doc.C_g, tolerance=doc.tolerance)
    if doc.conjugation is not None:
        out.conjugation = dual_real_structure(make_real_structure(T, doc.conjugation)).C.tolist()
    if doc.form_lambda is not None:
        out.form_lambda = duality_transport(T, HodgeForm(doc.form_lambda, doc.g)).lam
    return out


def random_document(g: int, a: int, b: int, r: int, seed: int) -> TorusDocument:
    T, rs = random_real_torus(g, a, b, r, seed)
    return TorusDocument(g=g, M=np.array(T.M), conjugation=rs.C.tolist())


def _record_line(record: CheckRecord) -> str:
    return json.dumps(record.to_dict())


def cmd_verify(args, out=None) -> int:
    out = out or sys.stdout
    doc = _apply_overrides(read_document(args.file), args)
    records = run_checks(doc, args.oracle)
    for record in records:
        print(_record_line(record), file=out)
    print(json.dumps(summary(records)), file=out)
    return EXIT_OK if all(r.passed for r in records) else EXIT_FAILED


def cmd_dual(args, out=None) -> int:
    out = out or sys.stdout
    doc = _apply_overrides(read_document(args.file), args)
    out.write(dumps_document(dual_document(doc)))
    return EXIT_OK


def cmd_random(args, out=None) -> int:
    out = out or sys.stdout
    out.write(dumps_document(random_document(args.g, args.a, args.b, args.r, args.seed)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="torusperiods", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="torus document, or - for standard input")
    common.add_argument("--tolerance", type=float, help="relative tolerance (overrides the document)")
    common.add_argument("--cg", type=float, help="normalization constant C(g) (overrides the document)")

    verify = sub.add_parser("verify", parents=[common], help="run all applicable checks")
    verify.add_argument(
        "--oracle",
        action=argparse.BooleanOptionalAction,
        default=None,
        help=f"run exterior-algebra cross-checks (default: on for g <= {ORACLE_MAX_G})",
    )
    verify.set_defaults(func=cmd_verify)

    dual = sub.add_parser("dual", parents=[common], help="print the dual torus document")
    dual.set_defaults(func=cmd_dual)

    rand = sub.add_parser("random", help="print a random torus with real structure")
    for name in ("g", "a", "b", "r"):
        rand.add_argument(f"--{name}", type=int, required=True)
    rand.add_argument("--seed", type=int, required=True)
    rand.set_defaults(func=cmd_random)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TorusError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
