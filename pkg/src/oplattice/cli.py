"""Command-line interface: ``oplattice recurrence|classify|para-krawtchouk|sweep``.

Jobs are JSON documents; every rational is written as a string "p" or "p/q".
Exit codes: 0 success, 2 invalid input, 3 regularity failure before n_max.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Any

from .algebra import format_scalar, to_scalar
from .detector import DEFAULT_VERIFY_TO, Classical, Degenerate, NotClassical, Verdict, classify
from .errors import DivisionByZeroInFormula, InvalidParameters, TableTooShort
from .lattice import Lattice, QLinear, Quadratic
from .para_krawtchouk import (
    NEGATIVE_LATTICE,
    POSITIVE_LATTICE,
    ParaKrawtchoukParams,
    expected_pearson,
    pk_casestudy,
    pk_table,
)
from .pearson import PearsonData, recurrence, regularity
from .recurrence import RecurrenceTable

EXIT_OK, EXIT_INPUT, EXIT_DEGENERATE = 0, 2, 3

_COMMAND_KEYS = {
    "recurrence": {"lattice", "pearson", "n_max"},
    "classify": {"lattice", "table", "verify_to"},
    "para-krawtchouk": {"pk", "lattice", "lattices"},
    "sweep": {"grid", "lattice", "lattices", "table", "verify_to"},
}


class DocumentError(ValueError):
    pass


# -- parsing --------------------------------------------------------------------


def _check_keys(obj: Any, allowed: set[str], required: set[str], where: str) -> dict:
    if not isinstance(obj, dict):
        raise DocumentError(f"{where}: expected an object")
    unknown = set(obj) - allowed
    if unknown:
        raise DocumentError(f"{where}: unknown field(s) {sorted(unknown)}")
    missing = required - set(obj)
    if missing:
        raise DocumentError(f"{where}: missing field(s) {sorted(missing)}")
    return obj


def _rational(value: Any, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise DocumentError(f"{where}: rationals must be integers or strings 'p/q'")
    try:
        return to_scalar(value)
    except (ValueError, TypeError) as exc:
        raise DocumentError(f"{where}: {exc}") from None


def _integer(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"{where}: expected an integer")
    return value


def parse_lattice(obj: Any, where: str = "lattice") -> Lattice:
    kind = obj.get("kind") if isinstance(obj, dict) else None
    if kind == "qlinear":
        _check_keys(obj, {"kind", "r", "c1", "c2", "c3"}, {"kind", "r", "c1", "c2"}, where)
        args = {k: _rational(obj[k], f"{where}.{k}") for k in ("r", "c1", "c2", "c3") if k in obj}
        return QLinear(**args)
    if kind == "quadratic":
        _check_keys(obj, {"kind", "c4", "c5", "c6"}, {"kind", "c4", "c5", "c6"}, where)
        return Quadratic(*(_rational(obj[k], f"{where}.{k}") for k in ("c4", "c5", "c6")))
    raise DocumentError(f"{where}.kind must be 'qlinear' or 'quadratic'")


def parse_pearson(obj: Any) -> PearsonData:
    _check_keys(obj, set("abcde"), set("abcde"), "pearson")
    return PearsonData(*(_rational(obj[k], f"pearson.{k}") for k in "abcde"))


def parse_table(obj: Any) -> RecurrenceTable:
    _check_keys(obj, {"B", "C"}, {"B", "C"}, "table")
    if not isinstance(obj["B"], list) or not isinstance(obj["C"], list):
        raise DocumentError("table.B and table.C must be lists")
    B = [_rational(v, f"table.B[{i}]") for i, v in enumerate(obj["B"])]
    C = [_rational(v, f"table.C[{i}]") for i, v in enumerate(obj["C"])]
    return RecurrenceTable(B, C)


def parse_pk(obj: Any) -> ParaKrawtchoukParams:
    _check_keys(obj, {"N", "gamma"}, {"N", "gamma"}, "pk")
    return ParaKrawtchoukParams(_integer(obj["N"], "pk.N"), _rational(obj["gamma"], "pk.gamma"))


def _lattice_list(doc: dict, default: list[Lattice]) -> list[Lattice]:
    if "lattice" in doc and "lattices" in doc:
        raise DocumentError("give either 'lattice' or 'lattices', not both")
    if "lattice" in doc:
        return [parse_lattice(doc["lattice"])]
    if "lattices" in doc:
        if not isinstance(doc["lattices"], list):
            raise DocumentError("lattices must be a list")
        return [parse_lattice(x, f"lattices[{i}]") for i, x in enumerate(doc["lattices"])]
    return default


# -- serialisation --------------------------------------------------------------


def lattice_doc(lat: Lattice) -> dict:
    return {"kind": lat.kind, **{k: format_scalar(v) for k, v in lat.params().items()}}


def pearson_doc(pd: PearsonData) -> dict:
    return {k: format_scalar(v) for k, v in zip("abcde", pd.as_tuple())}


def verdict_doc(v: Verdict) -> dict:
    if isinstance(v, Classical):
        return {"verdict": v.name, "pearson": pearson_doc(v.pd), "verified_to": v.verified_to}
    if isinstance(v, NotClassical):
        return {"verdict": v.name, "witness": {"n": v.witness_n, "which": v.which}}
    return {"verdict": v.name, "reason": v.reason}


def format_lattice(lat: Lattice) -> str:
    def coef(c: Fraction, sym: str) -> str:
        if c == 1:
            return sym
        if c == -1:
            return f"-{sym}"
        return f"{format_scalar(c)} {sym}"

    if isinstance(lat, Quadratic):
        pairs = [(lat.c4, "s^2"), (lat.c5, "s")]
        tail = lat.c6
    else:
        q = format_scalar(lat.q)
        pairs = [(lat.c1, f"({q})^(-s)"), (lat.c2, f"({q})^s")]
        tail = lat.c3
    terms = [coef(c, sym) for c, sym in pairs if c != 0]
    if tail != 0:
        terms.append(format_scalar(tail))
    return " + ".join(terms) if terms else "0"


def summary_line(v: Verdict, lat: Lattice) -> str:
    xs = format_lattice(lat)
    if isinstance(v, Classical):
        pd = v.pd
        vals = ", ".join(f"{k} = {format_scalar(x)}" for k, x in zip("abce", (pd.a, pd.b, pd.c, pd.e)))
        return f"The sequence is classical for x(s) = {xs}: {vals}"
    if isinstance(v, NotClassical):
        return f"The sequence is not classical for x(s) = {xs}"
    return f"The sequence is degenerate for x(s) = {xs}: {v.reason}"


# -- commands -------------------------------------------------------------------


def cmd_recurrence(doc: dict) -> tuple[dict, list[str], int]:
    _check_keys(doc, _COMMAND_KEYS["recurrence"], {"lattice", "pearson", "n_max"}, "document")
    lat = parse_lattice(doc["lattice"])
    pd = parse_pearson(doc["pearson"])
    n_max = _integer(doc["n_max"], "n_max")
    if n_max < 0:
        raise DocumentError("n_max must be >= 0")

    stop = n_max
    reg = None
    if n_max > 0:
        reg = regularity(pd, lat, n_max - 1)
        if reg.first_failure is not None:
            stop = reg.first_failure.n
    B, C = [], []
    for n in range(stop):
        try:
            b, c = recurrence(pd, lat, n)
        except DivisionByZeroInFormula:
            stop = n
            break
        B.append(format_scalar(b))
        C.append(format_scalar(c))

    out: dict[str, Any] = {
        "command": "recurrence",
        "lattice": lattice_doc(lat),
        "pearson": pearson_doc(pd),
        "B": B,
        "C": C,
        "regularity": {
            "checked_to": n_max - 1,
            "regular": reg is None or reg.regular,
            "first_failure": None
            if reg is None or reg.first_failure is None
            else {"n": reg.first_failure.n, "reason": reg.first_failure.reason, "detail": reg.first_failure.detail},
        },
    }
    span = f"n = 0..{stop - 1}" if stop else "no n"
    lines = [f"recurrence coefficients for {span} on x(s) = {format_lattice(lat)}"]
    if stop < n_max:
        out["truncated_at"] = stop
        lines.append(f"regularity fails at n = {stop}; table truncated")
        return out, lines, EXIT_DEGENERATE
    return out, lines, EXIT_OK


def cmd_classify(doc: dict, verify_to: int | None = None) -> tuple[dict, list[str], int]:
    _check_keys(doc, _COMMAND_KEYS["classify"], {"lattice", "table"}, "document")
    lat = parse_lattice(doc["lattice"])
    table = parse_table(doc["table"])
    if verify_to is None:
        verify_to = _integer(doc.get("verify_to", DEFAULT_VERIFY_TO), "verify_to")
    v = classify(table, lat, verify_to)
    out = {"command": "classify", "lattice": lattice_doc(lat), **verdict_doc(v)}
    return out, [summary_line(v, lat)], EXIT_OK


def _pk_report_doc(p: ParaKrawtchoukParams, lattices: list[Lattice]) -> tuple[dict, list[str]]:
    rep = pk_casestudy(p, tuple(lattices))
    results = [{"lattice": lattice_doc(lat), **verdict_doc(v)} for lat, v in rep.verdicts]
    doc: dict[str, Any] = {
        "pk": {"N": p.N, "gamma": format_scalar(p.gamma)},
        "results": results,
        "expected_pearson": pearson_doc(expected_pearson(p)) if p.N > 1 else None,
        "gram": {
            "orthogonal": rep.orthogonal,
            "norms_match": rep.norms_match,
            "first_failure": list(rep.first_gram_failure) if rep.first_gram_failure else None,
        },
        "total_mass": format_scalar(rep.total_mass),
        "pearson_degree": rep.pearson_degree,
    }
    lines = [summary_line(v, lat) for lat, v in rep.verdicts]
    lines.append(
        f"Gram matrix under the bi-lattice weights: "
        f"{'orthogonal' if rep.orthogonal and rep.norms_match else 'NOT orthogonal'}, total mass {format_scalar(rep.total_mass)}"
    )
    return doc, lines


def cmd_para_krawtchouk(doc: dict) -> tuple[dict, list[str], int]:
    _check_keys(doc, _COMMAND_KEYS["para-krawtchouk"], {"pk"}, "document")
    p = parse_pk(doc["pk"])
    lattices = _lattice_list(doc, [POSITIVE_LATTICE, NEGATIVE_LATTICE])
    body, lines = _pk_report_doc(p, lattices)
    return {"command": "para-krawtchouk", **body}, lines, EXIT_OK


def _sweep_point(job: tuple) -> dict:
    kind, payload, lat, verify_to = job
    if kind == "pk":
        N, gamma = payload
        rec: dict[str, Any] = {"N": N, "gamma": format_scalar(gamma), "lattice": lattice_doc(lat)}
        try:
            p = ParaKrawtchoukParams(N, gamma)
        except InvalidParameters as exc:
            return {**rec, "verdict": "invalid", "reason": str(exc)}
        t = pk_table(p)
        vt = t.max_index if verify_to is None else verify_to
    else:
        t = payload
        rec = {"lattice": lattice_doc(lat)}
        vt = DEFAULT_VERIFY_TO if verify_to is None else verify_to
    try:
        return {**rec, **verdict_doc(classify(t, lat, vt))}
    except (TableTooShort, ValueError) as exc:
        return {**rec, **verdict_doc(Degenerate(str(exc)))}


def cmd_sweep(doc: dict, verify_to: int | None = None, jobs: int = 1) -> tuple[dict, list[str], int]:
    _check_keys(doc, _COMMAND_KEYS["sweep"], set(), "document")
    if ("grid" in doc) == ("table" in doc):
        raise DocumentError("sweep needs exactly one of 'grid' or 'table'")
    lattices = _lattice_list(doc, [POSITIVE_LATTICE])
    if verify_to is None and "verify_to" in doc:
        verify_to = _integer(doc["verify_to"], "verify_to")

    work: list[tuple] = []
    if "grid" in doc:
        grid = _check_keys(doc["grid"], {"N", "gamma"}, {"N", "gamma"}, "grid")
        if not isinstance(grid["N"], list) or not isinstance(grid["gamma"], list):
            raise DocumentError("grid.N and grid.gamma must be lists")
        Ns = [_integer(v, f"grid.N[{i}]") for i, v in enumerate(grid["N"])]
        gammas = [_rational(v, f"grid.gamma[{i}]") for i, v in enumerate(grid["gamma"])]
        for lat, N, g in product(lattices, Ns, gammas):
            work.append(("pk", (N, g), lat, verify_to))
    else:
        table = parse_table(doc["table"])
        work = [("table", table, lat, verify_to) for lat in lattices]

    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_sweep_point, work))
    else:
        records = [_sweep_point(w) for w in work]
    counts: dict[str, int] = {}
    for r in records:
        counts[r["verdict"]] = counts.get(r["verdict"], 0) + 1
    lines = [f"{len(records)} grid point(s): " + ", ".join(f"{v} {k}" for k, v in sorted(counts.items()))]
    return {"command": "sweep", "records": records}, lines, EXIT_OK


# -- entry point ----------------------------------------------------------------


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def run(command: str, doc: Any, verify_to: int | None = None, jobs: int = 1) -> tuple[dict, list[str], int]:
    """Execute one command on a parsed document; input problems raise DocumentError."""
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    try:
        if command == "recurrence":
            return cmd_recurrence(doc)
        if command == "classify":
            return cmd_classify(doc, verify_to)
        if command == "para-krawtchouk":
            return cmd_para_krawtchouk(doc)
        if command == "sweep":
            return cmd_sweep(doc, verify_to, jobs)
    except (InvalidParameters, TableTooShort) as exc:
        raise DocumentError(str(exc)) from None
    except ValueError as exc:
        if isinstance(exc, DocumentError):
            raise
        raise DocumentError(str(exc)) from None
    raise DocumentError(f"unknown command {command!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="oplattice", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=sorted(_COMMAND_KEYS))
    parser.add_argument("--input", "-i", required=True, help="job document (JSON); '-' for stdin")
    parser.add_argument("--json", action="store_true", help="write the result document to stdout")
    parser.add_argument("--out", "-o", help="write the result document to this file")
    parser.add_argument("--verify-to", type=int, default=None, help="classification depth (default 12)")
    parser.add_argument("--jobs", type=int, default=1, help="worker processes for sweep")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = sys.stdin.read() if args.input == "-" else Path(args.input).read_text()
        doc = json.loads(text)
        out, lines, code = run(args.command, doc, args.verify_to, args.jobs)
    except (OSError, json.JSONDecodeError, DocumentError) as exc:
        print(f"oplattice: error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    summary = sys.stderr if args.json else sys.stdout
    for line in lines:
        print(line, file=summary)
    if args.out:
        Path(args.out).write_text(dumps(out))
    if args.json:
        sys.stdout.write(dumps(out))
    return code


if __name__ == "__main__":
    sys.exit(main())
