"""JSON record schema for germs, certificates, and derived objects.

Every rational is serialized as the string "p/q" (or "n" for
integers); vectors as two-element arrays of such strings; lattices as
arrays of basis rows. Dict key order is fixed by construction, so
serialized output is byte-stable. Parsing reconstructs lattices through
the canonical constructor, which makes records robust against
reordered or redundant generator rows.
"""

from __future__ import annotations

import json
from typing import Any, Optional

from .certify import (
    CaseA,
    CaseB,
    Certificate,
    ClassifiedGerm,
    Contained,
    EqualsIntersection,
    Hit,
    LawrenceResult,
    NotTLC,
)
from .geometry import Complement, HyperplaneSection
from .germs import CaseData, CaseTag, Germ
from .lattices import (
    Lattice,
    Vec2,
    cyclic_type,
    format_rational,
    index,
    lattice_from_generators,
    parse_rational,
)


def vec_to_json(v: Vec2) -> list[str]:
    return [format_rational(v.x1), format_rational(v.x2)]


def vec_from_json(data: Any) -> Vec2:
    if not isinstance(data, (list, tuple)) or len(data) != 2:
        raise ValueError(f"not a vector: {data!r}")
    return Vec2(parse_rational(data[0]), parse_rational(data[1]))


def lattice_to_json(lat: Lattice) -> list[list[str]]:
    return [vec_to_json(row) for row in lat.basis]


def lattice_from_json(data: Any) -> Lattice:
    if not isinstance(data, list):
        raise ValueError(f"not a lattice: {data!r}")
    return lattice_from_generators([vec_from_json(row) for row in data])


def germ_to_json(germ: Germ) -> dict:
    out: dict = {
        "lattice": lattice_to_json(germ.lattice),
        "boundary": [format_rational(germ.b1), format_rational(germ.b2)],
    }
    ty = cyclic_type(germ.lattice) if germ.lattice.rank == 2 else None
    if ty is not None:
        out["type"] = list(ty)
    return out


def germ_from_json(data: Any) -> Germ:
    if not isinstance(data, dict) or "lattice" not in data or "boundary" not in data:
        raise ValueError(f"not a germ record: {data!r}")
    b = data["boundary"]
    if not isinstance(b, (list, tuple)) or len(b) != 2:
        raise ValueError(f"not a boundary pair: {b!r}")
    return Germ(
        lattice_from_json(data["lattice"]),
        parse_rational(b[0]),
        parse_rational(b[1]),
    )


def certificate_to_json(cert: Certificate) -> dict:
    if isinstance(cert, CaseA):
        return {"case": "a", "m": vec_to_json(cert.m)}
    if isinstance(cert, CaseB):
        return {
            "case": "b",
            "m1": vec_to_json(cert.m1),
            "m2": vec_to_json(cert.m2),
            "t1": format_rational(cert.t1),
            "t2": format_rational(cert.t2),
        }
    if isinstance(cert, NotTLC):
        return {"case": "not_tlc", "e": vec_to_json(cert.e), "value": format_rational(cert.value)}
    raise ValueError(f"not a certificate: {cert!r}")


def certificate_from_json(data: Any) -> Certificate:
    if not isinstance(data, dict):
        raise ValueError(f"not a certificate record: {data!r}")
    kind = data.get("case")
    if kind == "a":
        return CaseA(vec_from_json(data["m"]))
    if kind == "b":
        return CaseB(
            vec_from_json(data["m1"]),
            vec_from_json(data["m2"]),
            parse_rational(data["t1"]),
            parse_rational(data["t2"]),
        )
    if kind == "not_tlc":
        return NotTLC(vec_from_json(data["e"]), parse_rational(data["value"]))
    raise ValueError(f"unknown certificate case: {kind!r}")


def case_data_to_json(data: CaseData) -> dict:
    out: dict = {
        "tag": data.tag.value,
        "gamma": format_rational(data.gamma),
        "v1": vec_to_json(data.v1),
        "mld": format_rational(data.mld),
    }
    if data.tag is CaseTag.SPLIT:
        out["e1p"] = vec_to_json(data.e1p)
        out["e2p"] = vec_to_json(data.e2p)
        out["alpha"] = format_rational(data.alpha)
        out["beta"] = "inf" if data.beta is None else format_rational(data.beta)
        out["psi_prime"] = format_rational(data.psi_prime)
        out["v2"] = vec_to_json(data.v2)
        out["lambda_prime"] = format_rational(data.lambda_prime)
        out["q_min"] = data.q_min
        if data.c is not None:
            out["c"] = format_rational(data.c)
    return out


def record_to_json(record: ClassifiedGerm) -> dict:
    return {
        "germ": germ_to_json(record.germ),
        "t": format_rational(record.t),
        "mld": format_rational(record.mld),
        "certificate": certificate_to_json(record.certificate),
        "series": [list(m) for m in record.series],
    }


def record_from_json(data: Any) -> ClassifiedGerm:
    if not isinstance(data, dict):
        raise ValueError(f"not a classification record: {data!r}")
    for key in ("germ", "t", "mld", "certificate", "series"):
        if key not in data:
            raise ValueError(f"classification record misses key {key!r}")
    series = []
    for m in data["series"]:
        if not isinstance(m, (list, tuple)) or len(m) != 2:
            raise ValueError(f"not a series id: {m!r}")
        series.append((int(m[0]), int(m[1])))
    return ClassifiedGerm(
        germ_from_json(data["germ"]),
        parse_rational(data["t"]),
        parse_rational(data["mld"]),
        certificate_from_json(data["certificate"]),
        series,
    )


def lawrence_result_to_json(result: LawrenceResult) -> dict:
    if isinstance(result, Contained):
        return {"kind": "contained", "m": vec_to_json(result.m)}
    if isinstance(result, EqualsIntersection):
        return {
            "kind": "equals_intersection",
            "m1": vec_to_json(result.m1),
            "m2": vec_to_json(result.m2),
            "k1": result.k1,
            "k2": result.k2,
        }
    if isinstance(result, Hit):
        return {"kind": "hit", "e": vec_to_json(result.e)}
    raise ValueError(f"not a simplex-avoidance result: {result!r}")


def lawrence_result_from_json(data: Any) -> LawrenceResult:
    if not isinstance(data, dict):
        raise ValueError(f"not a simplex-avoidance record: {data!r}")
    kind = data.get("kind")
    if kind == "contained":
        return Contained(vec_from_json(data["m"]))
    if kind == "equals_intersection":
        return EqualsIntersection(
            vec_from_json(data["m1"]),
            vec_from_json(data["m2"]),
            int(data["k1"]),
            int(data["k2"]),
        )
    if kind == "hit":
        return Hit(vec_from_json(data["e"]))
    raise ValueError(f"unknown simplex-avoidance kind: {kind!r}")


def lawrence_record_to_json(lat: Lattice, p: int, q: int, result: LawrenceResult) -> dict:
    out: dict = {"lattice": lattice_to_json(lat)}
    ty = cyclic_type(lat)
    if ty is not None:
        out["type"] = list(ty)
    out["p"] = p
    out["q"] = q
    out["lawrence"] = lawrence_result_to_json(result)
    return out


def complement_to_json(comp: Complement) -> dict:
    return {
        "n": comp.n,
        "boundary": [format_rational(comp.boundary[0]), format_rational(comp.boundary[1])],
        "witness": vec_to_json(comp.witness_m),
    }


def complement_from_json(data: Any) -> Complement:
    if not isinstance(data, dict):
        raise ValueError(f"not a complement record: {data!r}")
    b = data["boundary"]
    return Complement(
        int(data["n"]),
        (parse_rational(b[0]), parse_rational(b[1])),
        vec_from_json(data["witness"]),
    )


def complement_record_to_json(
    germ: Germ, comp: Complement, p: Optional[int] = None, q: Optional[int] = None
) -> dict:
    out: dict = {"germ": germ_to_json(germ)}
    if p is not None and q is not None:
        out["p"] = p
        out["q"] = q
    out["complement"] = complement_to_json(comp)
    return out


def hyperplane_to_json(section: HyperplaneSection) -> dict:
    return {"hyperplane": {"m": vec_to_json(section.m)}}


def hyperplane_from_json(data: Any) -> HyperplaneSection:
    if not isinstance(data, dict) or "hyperplane" not in data:
        raise ValueError(f"not a hyperplane record: {data!r}")
    return HyperplaneSection(vec_from_json(data["hyperplane"]["m"]))


def dumps(data: dict) -> str:
    """One-line JSON with stable key order (insertion order)."""
    return json.dumps(data, separators=(", ", ": "))


def germ_label(germ: Germ) -> str:
    """Short human-readable lattice label for tables."""
    ty = cyclic_type(germ.lattice) if germ.lattice.rank == 2 else None
    if ty is None:
        return f"index {index(germ.lattice)}"
    r, w1, w2 = ty
    if r == 1:
        return "smooth"
    return f"1/{r}({w1},{w2})"


def record_table_row(record: ClassifiedGerm) -> list[str]:
    """Columns: type, lattice, boundary, mld, case, series."""
    cert = record.certificate
    if isinstance(cert, CaseA):
        case = "a"
    elif isinstance(cert, CaseB):
        case = "b"
    else:
        case = "not_tlc"
    lattice_str = ";".join(
        f"({format_rational(r.x1)},{format_rational(r.x2)})" for r in record.germ.lattice.basis
    )
    boundary_str = f"({format_rational(record.germ.b1)},{format_rational(record.germ.b2)})"
    series_str = " ".join(f"({m1},{m2})" for m1, m2 in record.series)
    return [
        germ_label(record.germ),
        lattice_str,
        boundary_str,
        format_rational(record.mld),
        case,
        series_str,
    ]


TABLE_COLUMNS = ["type", "lattice", "boundary", "mld", "case", "series"]
