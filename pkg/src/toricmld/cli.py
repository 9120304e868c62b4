"""Command line interface.

Subcommands: mld, classify, lawrence, enumerate, complement, verify.
All output is deterministic: canonical ordering and stable JSON key
order. Exit codes: 0 success, 1 invalid input, 2 internal verification
failure (a certificate failed its own re-check, which is a bug or a
theorem violation, never bad input).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .certify import (
    CaseB,
    Contained,
    EqualsIntersection,
    Hit,
    NotTLC,
    candidate_germs,
    classify_germ_record,
    enumerate_germs,
    lawrence,
    series_membership_lattice,
    verify_certificate_lattice,
)
from .errors import VerificationFailure
from .geometry import bounded_complement, complement_standard
from .germs import Germ, case_analysis, germ_from_quotient_type, mld_argmin, psi_of
from .lattices import (
    Vec2,
    contains,
    dot,
    dual,
    format_rational,
    in_cone,
    in_cone_interior,
    lattice_from_generators,
    lattice_from_quotient_type,
    parse_rational,
    superlattices,
)
from .oracle import lawrence_oracle, mld_oracle_lattice
from .records import (
    TABLE_COLUMNS,
    case_data_to_json,
    complement_record_to_json,
    dumps,
    germ_from_json,
    germ_to_json,
    lattice_from_json,
    lawrence_record_to_json,
    lawrence_result_from_json,
    record_from_json,
    record_table_row,
    record_to_json,
)

STANDARD_BOUNDARY_VALUES = (
    Fraction(0),
    Fraction(1, 2),
    Fraction(2, 3),
    Fraction(3, 4),
    Fraction(4, 5),
    Fraction(5, 6),
    Fraction(1),
)


class _Parser(argparse.ArgumentParser):
    """Parser whose usage errors surface as exit code 1, not 2."""

    def error(self, message):
        raise ValueError(message)


def _parse_type(text: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError(f"quotient type must be r,w1,w2: {text!r}")
    try:
        r, w1, w2 = (int(p) for p in parts)
    except ValueError:
        raise ValueError(f"quotient type must be three integers: {text!r}") from None
    return r, w1, w2


def _parse_boundary(text: str) -> tuple[Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"boundary must be b1,b2: {text!r}")
    b1, b2 = (parse_rational(p) for p in parts)
    return b1, b2


def _parse_threshold(text: str) -> Fraction:
    t = parse_rational(text)
    if t <= 0:
        raise ValueError(f"threshold must be positive: {text!r}")
    return t


def _germ_from_args(args) -> Germ:
    r, w1, w2 = _parse_type(args.type)
    b1, b2 = _parse_boundary(args.boundary) if args.boundary else (Fraction(0), Fraction(0))
    return germ_from_quotient_type(r, w1, w2, b1, b2)


def _boundary_pairs(args) -> list[tuple[Fraction, Fraction]]:
    if args.boundary_set == "zero":
        return [(Fraction(0), Fraction(0))]
    if args.boundary_set == "standard":
        return [(a, b) for a in STANDARD_BOUNDARY_VALUES for b in STANDARD_BOUNDARY_VALUES]
    if args.boundary_set == "file":
        if not args.boundary_file:
            raise ValueError("--boundary-set file needs --boundary-file")
        with open(args.boundary_file, encoding="utf-8") as handle:
            data = json.load(handle)
        if not isinstance(data, list):
            raise ValueError("boundary file must hold a JSON array of pairs")
        pairs = []
        for item in data:
            if not isinstance(item, (list, tuple)) or len(item) != 2:
                raise ValueError(f"not a boundary pair: {item!r}")
            pairs.append((parse_rational(item[0]), parse_rational(item[1])))
        if not pairs:
            raise ValueError("boundary file holds no pairs")
        return pairs
    raise ValueError(f"unknown boundary set: {args.boundary_set!r}")


def _classify_payload(payload: tuple[str, str, bool]) -> str:
    """Worker body: classify one serialized germ, return its JSON line."""
    germ_json, t_text, include = payload
    germ = germ_from_json(json.loads(germ_json))
    t = parse_rational(t_text)
    record = classify_germ_record(germ, t)
    if record.mld < t and not include:
        return ""
    return dumps(record_to_json(record))


def _worker_count(args) -> int:
    if getattr(args, "workers", None):
        return max(1, args.workers)
    env = os.environ.get("TORICMLD_WORKERS", "").strip()
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"TORICMLD_WORKERS must be an integer: {env!r}") from None
    return 1


def _record_lines(args, t: Fraction) -> Iterator[str]:
    pairs = _boundary_pairs(args)
    include = args.include_not_tlc
    workers = _worker_count(args)
    if workers == 1:
        for record in enumerate_germs(args.mode, args.bound, t, pairs, include):
            yield dumps(record_to_json(record))
        return
    from multiprocessing import Pool

    payloads = (
        (dumps(germ_to_json(germ)), format_rational(t), include)
        for germ in candidate_germs(args.mode, args.bound, pairs)
    )
    with Pool(workers) as pool:
        for line in pool.imap(_classify_payload, payloads, chunksize=16):
            if line:
                yield line


def _cmd_mld(args) -> int:
    germ = _germ_from_args(args)
    value, argmin = mld_argmin(germ)
    print(format_rational(value))
    print(" ".join(f"({format_rational(v.x1)},{format_rational(v.x2)})" for v in argmin))
    return 0


def _cmd_classify(args) -> int:
    germ = _germ_from_args(args)
    t = _parse_threshold(args.t)
    if psi_of(germ).is_zero():
        raise ValueError("threshold classification needs a nonzero psi (boundary below (1,1))")
    record = classify_germ_record(germ, t)
    out = record_to_json(record)
    out["case_data"] = case_data_to_json(case_analysis(germ))
    print(dumps(out))
    return 0


def _cmd_lawrence(args) -> int:
    if (args.type is None) == (args.index_max is None):
        raise ValueError("exactly one of --type and --index-max is needed")
    if args.p < 1 or args.q < 1:
        raise ValueError("p and q must be positive integers")
    if args.type is not None:
        r, w1, w2 = _parse_type(args.type)
        lattices = [lattice_from_quotient_type(r, w1, w2)]
    else:
        lattices = list(superlattices(args.index_max))
    for lat in lattices:
        result = lawrence(lat, args.p, args.q)
        print(dumps(lawrence_record_to_json(lat, args.p, args.q, result)))
    return 0


def _emit_table(lines, out, fmt) -> None:
    records = [record_from_json(json.loads(line)) for line in lines]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(TABLE_COLUMNS)
        for record in records:
            writer.writerow(record_table_row(record))
        out.write(buf.getvalue())
    else:
        out.write("| " + " | ".join(TABLE_COLUMNS) + " |\n")
        out.write("|" + "---|" * len(TABLE_COLUMNS) + "\n")
        for record in records:
            out.write("| " + " | ".join(record_table_row(record)) + " |\n")


def _cmd_enumerate(args) -> int:
    t = _parse_threshold(args.t)
    if args.mode == "cyclic":
        if args.r_max is None:
            raise ValueError("mode cyclic needs --r-max")
        args.bound = args.r_max
    else:
        if args.index_max is None:
            raise ValueError("mode all needs --index-max")
        args.bound = args.index_max

    if args.resume:
        if not args.out:
            raise ValueError("--resume needs --out")
        if args.format != "jsonl":
            raise ValueError("--resume only supports the jsonl format")
        seen: set[str] = set()
        if os.path.exists(args.out):
            with open(args.out, encoding="utf-8") as handle:
                for line in handle:
                    line = line.strip()
                    if line:
                        seen.add(dumps(json.loads(line)["germ"]))
        with open(args.out, "a", encoding="utf-8") as handle:
            for line in _record_lines(args, t):
                if dumps(json.loads(line)["germ"]) in seen:
                    continue
                handle.write(line + "\n")
        return 0

    lines = _record_lines(args, t)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            if args.format == "jsonl":
                for line in lines:
                    handle.write(line + "\n")
            else:
                _emit_table(lines, handle, args.format)
    else:
        if args.format == "jsonl":
            for line in lines:
                print(line)
        else:
            _emit_table(lines, sys.stdout, args.format)
    return 0


def _cmd_complement(args) -> int:
    germ = _germ_from_args(args)
    if args.bounded:
        comp = bounded_complement(germ)
        print(dumps(complement_record_to_json(germ, comp)))
        return 0
    if args.p < 1 or args.q < 1:
        raise ValueError("p and q must be positive integers")
    comp = complement_standard(germ, args.p, args.q)
    print(dumps(complement_record_to_json(germ, comp, args.p, args.q)))
    return 0


def _require(ok: bool, line_no: int, reason: str) -> None:
    if not ok:
        raise VerificationFailure(f"line {line_no}: {reason}")


def _verify_classification(data: dict, line_no: int) -> None:
    record = record_from_json(data)
    lat = record.germ.lattice
    psi = psi_of(record.germ)
    value, _ = mld_oracle_lattice(lat, psi)
    _require(value == record.mld, line_no, "recorded mld disagrees with the oracle")
    outcome = verify_certificate_lattice(lat, psi, record.t, record.certificate)
    _require(bool(outcome), line_no, f"certificate rejected: {outcome.reason}")
    is_not_tlc = isinstance(record.certificate, NotTLC)
    _require(
        is_not_tlc == (value < record.t),
        line_no,
        "certificate side disagrees with the oracle threshold test",
    )
    _require(
        series_membership_lattice(lat, record.t) == record.series,
        line_no,
        "series memberships disagree with recomputation",
    )


def _verify_lawrence(data: dict, line_no: int) -> None:
    lat = lattice_from_json(data["lattice"])
    p, q = int(data["p"]), int(data["q"])
    t = Fraction(p, q)
    p, q = t.numerator, t.denominator
    result = lawrence_result_from_json(data["lawrence"])
    avoids = lawrence_oracle(lat, p, q)
    if isinstance(result, Hit):
        _require(not avoids, line_no, "hit recorded but the oracle finds no point")
        e = result.e
        _require(contains(lat, e), line_no, "hit point lies outside the subgroup")
        _require(in_cone_interior(e), line_no, "hit point is not interior")
        _require(e.x1 + e.x2 < t, line_no, "hit point misses the open simplex")
        return
    _require(avoids, line_no, "avoidance recorded but the oracle finds a point")
    if isinstance(result, Contained):
        m = result.m
        _require(not m.is_zero() and in_cone(m), line_no, "containment witness degenerate")
        _require(
            m.x1.denominator == 1 and m.x2.denominator == 1,
            line_no,
            "containment witness is not integral",
        )
        _require(
            all(dot(m, row).denominator == 1 for row in lat.basis),
            line_no,
            "subgroup does not pair integrally with the containment witness",
        )
        _require(
            m.x1 <= Fraction(q, p) and m.x2 <= Fraction(q, p),
            line_no,
            "containment witness escapes the box",
        )
        return
    assert isinstance(result, EqualsIntersection)
    _require(result.k1 >= 1 and result.k2 >= 1, line_no, "weights must be positive")
    _require(result.k1 + result.k2 <= 2 * q, line_no, "weights exceed twice the denominator")
    span = lattice_from_generators([result.m1, result.m2])
    _require(span.rank == 2, line_no, "pair covectors are dependent")
    _require(dual(span) == lat, line_no, "subgroup is not the pair's integrality locus")
    total = result.k1 + result.k2
    avg = (
        result.m1.scaled(Fraction(result.k1)) + result.m2.scaled(Fraction(result.k2))
    ).scaled(Fraction(1, total))
    _require(
        0 <= avg.x1 <= Fraction(q, p) and 0 <= avg.x2 <= Fraction(q, p),
        line_no,
        "weighted average escapes the box",
    )


def _verify_complement(data: dict, line_no: int) -> None:
    germ = germ_from_json(data["germ"])
    comp = data["complement"]
    n = int(comp["n"])
    _require(n >= 1, line_no, "level must be positive")
    b1, b2 = (parse_rational(x) for x in comp["boundary"])
    witness = Vec2(parse_rational(comp["witness"][0]), parse_rational(comp["witness"][1]))
    _require(
        witness == Vec2(n * (1 - b1), n * (1 - b2)),
        line_no,
        "witness does not match the scaled boundary complement",
    )
    _require(
        witness.x1.denominator == 1 and witness.x2.denominator == 1,
        line_no,
        "witness is not integral",
    )
    _require(
        contains(dual(germ.lattice), witness),
        line_no,
        "witness does not pair integrally with the lattice",
    )
    _require(germ.b1 <= b1 <= 1 and germ.b2 <= b2 <= 1, line_no, "boundary out of range")
    value = mld_oracle_lattice(germ.lattice, Vec2(witness.x1 / n, witness.x2 / n))[0]
    if "p" in data and "q" in data:
        target = Fraction(int(data["p"]), int(data["q"]))
        _require(value >= target, line_no, "oracle value below the target ratio")
    else:
        _require(value > 0, line_no, "oracle value is not positive")


def _cmd_verify(args) -> int:
    count = 0
    with open(args.infile, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                data = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"line {line_no}: not JSON: {exc}") from None
            if not isinstance(data, dict):
                raise ValueError(f"line {line_no}: not a JSON object")
            if "certificate" in data:
                _verify_classification(data, line_no)
            elif "lawrence" in data:
                _verify_lawrence(data, line_no)
            elif "complement" in data:
                _verify_complement(data, line_no)
            else:
                raise ValueError(f"line {line_no}: unrecognized record shape")
            count += 1
    print(f"verified {count} records")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="toricmld",
        description="Exact classification of two-dimensional toric log germs by minimal log discrepancy.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_mld = sub.add_parser("mld", help="minimal log discrepancy of one germ")
    p_mld.add_argument("--type", required=True, help="quotient type r,w1,w2")
    p_mld.add_argument("--boundary", help="boundary coefficients b1,b2 (default 0,0)")
    p_mld.set_defaults(func=_cmd_mld)

    p_cls = sub.add_parser("classify", help="threshold certificate for one germ")
    p_cls.add_argument("--type", required=True, help="quotient type r,w1,w2")
    p_cls.add_argument("--boundary", help="boundary coefficients b1,b2 (default 0,0)")
    p_cls.add_argument("--t", required=True, help="threshold p/q")
    p_cls.set_defaults(func=_cmd_classify)

    p_law = sub.add_parser("lawrence", help="open simplex avoidance certificates")
    p_law.add_argument("--type", help="quotient type r,w1,w2")
    p_law.add_argument("--index-max", type=int, help="sweep all superlattices up to this index")
    p_law.add_argument("--p", required=True, type=int, help="simplex size numerator")
    p_law.add_argument("--q", required=True, type=int, help="simplex size denominator")
    p_law.set_defaults(func=_cmd_lawrence)

    p_enum = sub.add_parser("enumerate", help="stream classified canonical germs")
    p_enum.add_argument("--mode", required=True, choices=["cyclic", "all"])
    p_enum.add_argument("--r-max", type=int, help="cyclic order bound (mode cyclic)")
    p_enum.add_argument("--index-max", type=int, help="index bound (mode all)")
    p_enum.add_argument("--t", required=True, help="threshold p/q")
    p_enum.add_argument(
        "--boundary-set",
        default="zero",
        choices=["zero", "standard", "file"],
        help="boundary coefficients: zero, the standard ladder up to 5/6 plus 1, or a JSON file",
    )
    p_enum.add_argument("--boundary-file", help="JSON array of boundary pairs (with --boundary-set file)")
    p_enum.add_argument("--out", help="output path (default stdout)")
    p_enum.add_argument("--format", default="jsonl", choices=["jsonl", "csv", "markdown"])
    p_enum.add_argument(
        "--workers",
        type=int,
        help="parallel classification workers (default: TORICMLD_WORKERS or 1); output is identical",
    )
    p_enum.add_argument("--resume", action="store_true", help="append records missing from --out")
    p_enum.add_argument(
        "--include-not-tlc",
        action="store_true",
        help="also stream germs whose value is below the threshold",
    )
    p_enum.set_defaults(func=_cmd_enumerate)

    p_comp = sub.add_parser("complement", help="periodic complement boundaries")
    p_comp.add_argument("--type", required=True, help="quotient type r,w1,w2")
    p_comp.add_argument("--boundary", help="boundary coefficients b1,b2 (default 0,0)")
    p_comp.add_argument("--p", type=int, default=1, help="target ratio numerator")
    p_comp.add_argument("--q", type=int, default=1, help="target ratio denominator")
    p_comp.add_argument(
        "--bounded",
        action="store_true",
        help="level-minimal search with level at most ceil(2/value) instead of the standard construction",
    )
    p_comp.set_defaults(func=_cmd_complement)

    p_ver = sub.add_parser("verify", help="re-check a JSONL record stream with the oracle")
    p_ver.add_argument("--in", dest="infile", required=True, help="records file (jsonl)")
    p_ver.set_defaults(func=_cmd_verify)

    return parser


def run(argv: Sequence[str]) -> int:
    parser = build_parser()
    args = parser.parse_args(list(argv))
    return args.func(args)


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        return run(sys.argv[1:] if argv is None else argv)
    except VerificationFailure as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
