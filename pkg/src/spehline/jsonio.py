"""Canonical JSON forms and schema checking for every file the CLI touches.

Multisegments serialize to a bit-stable canonical form: the segment list
is sorted, keys are emitted in sorted order and the encoding carries no
whitespace, so equal values produce byte-equal documents and file diffs
are meaningful.  All top-level documents carry a ``schema_version``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .congruence import AutomorphicDatum, Dataset, Verdict
from .diagrams import Diagram, LocalComponent
from .ledger import GlobalContext, LedgerTerm
from .torsion import TorsionProfile
from .zline import (
    HalfInt,
    InertialCuspidal,
    Multisegment,
    Segment,
    Wildcard,
)

SCHEMA_VERSION = 1


class SchemaError(ValueError):
    """A document does not match its schema; ``path`` locates the violation."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


def canonical_dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------- multisegments


def wildcard_to_dict(w: Wildcard) -> dict:
    return {"id": w.id, "degree": w.degree, "shift_twice": w.shift.twice}


def wildcard_from_dict(obj: dict) -> Wildcard:
    return Wildcard(
        id=obj["id"],
        degree=obj["degree"],
        shift=HalfInt(obj.get("shift_twice", 0)),
    )


def multisegment_to_dict(m: Multisegment) -> dict:
    return {
        "segments": [
            {"base_id": s.base.id, "start_twice": s.start.twice, "length": s.length}
            for s in m.segments
        ],
        "tate_twice": m.tate.twice,
        "wildcard": None if m.wildcard is None else wildcard_to_dict(m.wildcard),
        "order_tag": None if m.order_tag is None else list(m.order_tag),
    }


def multisegment_from_dict(
    obj: dict, cuspidals: dict[str, InertialCuspidal]
) -> Multisegment:
    segments = tuple(
        Segment(
            base=cuspidals[s["base_id"]],
            start=HalfInt(s["start_twice"]),
            length=s["length"],
        )
        for s in obj["segments"]
    )
    wildcard = obj.get("wildcard")
    tag = obj.get("order_tag")
    return Multisegment(
        segments=segments,
        tate=HalfInt(obj.get("tate_twice", 0)),
        wildcard=None if wildcard is None else wildcard_from_dict(wildcard),
        order_tag=None if tag is None else (tag[0], tag[1]),
    )


# -------------------------------------------------------------------- cuspidals


def cuspidal_to_dict(pi: InertialCuspidal) -> dict:
    return {"g": pi.g, "e_pi": pi.e_pi, "modl_class": pi.modl_class}


def cuspidal_registry(bases: list[InertialCuspidal]) -> dict:
    return {pi.id: cuspidal_to_dict(pi) for pi in bases}


def registry_from_dict(obj: dict) -> dict[str, InertialCuspidal]:
    return {
        cid: InertialCuspidal(
            id=cid,
            g=rec["g"],
            e_pi=rec.get("e_pi", 1),
            modl_class=rec.get("modl_class", cid),
        )
        for cid, rec in obj.items()
    }


# ----------------------------------------------------------------- ledger terms


def ledger_term_to_dict(term: LedgerTerm) -> dict:
    return {
        "kind": term.kind,
        "stratum": term.stratum,
        "sign": term.sign,
        "xi_twice": term.xi_power.twice,
        "tate_twice": term.tate.twice,
        "infinitesimal": multisegment_to_dict(term.infinitesimal),
    }


def ledger_listing_to_dict(
    d: int, g: int, t: int, terms: list[LedgerTerm]
) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "d": d,
        "g": g,
        "t": t,
        "terms": [ledger_term_to_dict(term) for term in terms],
    }


# --------------------------------------------------------------------- diagrams


def diagram_to_dict(diag: Diagram) -> dict:
    points = sorted(diag.points, key=lambda p: (p.r, p.i))
    return {
        "schema_version": SCHEMA_VERSION,
        "points": [
            {"r": p.r, "i": p.i, "factors": list(diag.factors_at(p))} for p in points
        ],
    }


def component_to_dict(c: LocalComponent) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "s": c.s,
        "factors": [{"t": t, "base_id": base.id} for t, base in c.factors],
        "wildcard": None if c.wildcard is None else wildcard_to_dict(c.wildcard),
        "cuspidals": cuspidal_registry([base for _, base in c.factors]),
    }


def component_from_dict(obj: dict) -> LocalComponent:
    _validate_component(obj, "")
    cuspidals = registry_from_dict(obj["cuspidals"])
    factors = []
    for rec in obj["factors"]:
        if rec["base_id"] not in cuspidals:
            raise SchemaError("factors", f"unknown base_id {rec['base_id']!r}")
        factors.append((rec["t"], cuspidals[rec["base_id"]]))
    wildcard = obj.get("wildcard")
    return LocalComponent(
        s=obj["s"],
        factors=tuple(factors),
        wildcard=None if wildcard is None else wildcard_from_dict(wildcard),
    )


# --------------------------------------------------------------------- datasets


def dataset_to_dict(ds: Dataset) -> dict:
    bases = [ds.context.pi]
    for datum in ds.data:
        for _, base in datum.local.factors:
            if base not in bases:
                bases.append(base)
    return {
        "schema_version": SCHEMA_VERSION,
        "context": {
            "d": ds.context.d,
            "kappa": str(ds.context.kappa),
            "pi_id": ds.context.pi.id,
        },
        "cuspidals": cuspidal_registry(bases),
        "data": [
            {
                "id": datum.id,
                "local": {
                    "s": datum.local.s,
                    "factors": [
                        {"t": t, "base_id": base.id} for t, base in datum.local.factors
                    ],
                    "wildcard": None
                    if datum.local.wildcard is None
                    else wildcard_to_dict(datum.local.wildcard),
                },
                "m": datum.m,
                "d_xi": datum.d_xi,
                "inv_dim": datum.inv_dim,
                "satake": datum.satake,
            }
            for datum in ds.data
        ],
        "torsion": {
            "t0": ds.torsion.t0,
            "tau": list(ds.torsion.tau),
        },
        "levels": list(ds.levels),
    }


def dataset_from_dict(obj: dict) -> Dataset:
    validate_dataset_obj(obj)
    cuspidals = registry_from_dict(obj["cuspidals"])
    pi_id = obj["context"]["pi_id"]
    if pi_id not in cuspidals:
        raise SchemaError("context.pi_id", f"unknown cuspidal {pi_id!r}")
    context = GlobalContext(
        d=obj["context"]["d"],
        pi=cuspidals[pi_id],
        kappa=Fraction(obj["context"]["kappa"]),
    )
    data = []
    for idx, rec in enumerate(obj["data"]):
        factors = []
        for jdx, f in enumerate(rec["local"]["factors"]):
            if f["base_id"] not in cuspidals:
                raise SchemaError(
                    f"data[{idx}].local.factors[{jdx}].base_id",
                    f"unknown cuspidal {f['base_id']!r}",
                )
            factors.append((f["t"], cuspidals[f["base_id"]]))
        wildcard = rec["local"].get("wildcard")
        data.append(
            AutomorphicDatum(
                id=rec["id"],
                local=LocalComponent(
                    s=rec["local"]["s"],
                    factors=tuple(factors),
                    wildcard=None if wildcard is None else wildcard_from_dict(wildcard),
                ),
                m=rec["m"],
                d_xi=rec["d_xi"],
                inv_dim=rec["inv_dim"],
                satake=rec["satake"],
            )
        )
    torsion = TorsionProfile(
        t0=obj["torsion"]["t0"], tau=tuple(obj["torsion"]["tau"])
    )
    return Dataset(
        context=context,
        data=tuple(data),
        torsion=torsion,
        levels=tuple(obj["levels"]),
    )


# ---------------------------------------------------------------------- verdict


def verdict_to_dict(verdict: Verdict) -> dict:
    def side(total):
        return [
            {"key": sym.key, "level": sym.level, "coeff": coeff}
            for sym, coeff in total.items()
        ]

    return {
        "schema_version": SCHEMA_VERSION,
        "equal": verdict.equal,
        "exit_code": verdict.exit_code,
        "warnings": list(verdict.warnings),
        "lhs": side(verdict.lhs),
        "rhs": side(verdict.rhs),
        "diffs": [
            {"key": sym.key, "level": sym.level, "lhs": ca, "rhs": cb}
            for sym, ca, cb in verdict.diffs
        ],
    }


# ------------------------------------------------------------ schema validation


def _need(obj: dict, key: str, typ, path: str, allow_none: bool = False):
    if not isinstance(obj, dict):
        raise SchemaError(path or ".", "expected an object")
    where = f"{path}.{key}" if path else key
    if key not in obj:
        raise SchemaError(where, "missing field")
    value = obj[key]
    if value is None and allow_none:
        return value
    if typ is int and isinstance(value, bool):
        raise SchemaError(where, "expected an integer")
    if not isinstance(value, typ):
        raise SchemaError(where, f"expected {getattr(typ, '__name__', typ)}")
    return value


def _int_list(values, path: str) -> None:
    if not isinstance(values, list):
        raise SchemaError(path, "expected a list")
    for idx, v in enumerate(values):
        if isinstance(v, bool) or not isinstance(v, int):
            raise SchemaError(f"{path}[{idx}]", "expected an integer")


def _validate_wildcard(obj, path: str) -> None:
    if obj is None:
        return
    _need(obj, "id", str, path)
    _need(obj, "degree", int, path)
    if "shift_twice" in obj:
        _need(obj, "shift_twice", int, path)


def _validate_component(obj: dict, path: str) -> None:
    prefix = f"{path}." if path else ""
    _need(obj, "s", int, path)
    factors = _need(obj, "factors", list, path)
    for jdx, f in enumerate(factors):
        fpath = f"{prefix}factors[{jdx}]"
        if not isinstance(f, dict):
            raise SchemaError(fpath, "expected an object")
        _need(f, "t", int, fpath)
        _need(f, "base_id", str, fpath)
    _validate_wildcard(obj.get("wildcard"), f"{prefix}wildcard")
    if "cuspidals" in obj:
        _validate_registry(obj["cuspidals"], f"{prefix}cuspidals")


def _validate_registry(obj, path: str) -> None:
    if not isinstance(obj, dict):
        raise SchemaError(path, "expected an object")
    for cid, rec in obj.items():
        cpath = f"{path}[{cid}]"
        if not isinstance(rec, dict):
            raise SchemaError(cpath, "expected an object")
        _need(rec, "g", int, cpath)
        _need(rec, "e_pi", int, cpath)
        _need(rec, "modl_class", str, cpath)


def validate_dataset_obj(obj: dict) -> None:
    """Raise :class:`SchemaError` at the first structural violation."""
    if not isinstance(obj, dict):
        raise SchemaError(".", "expected a JSON object")
    _need(obj, "schema_version", int, "")
    context = _need(obj, "context", dict, "")
    _need(context, "d", int, "context")
    _need(context, "kappa", str, "context")
    _need(context, "pi_id", str, "context")
    _validate_registry(_need(obj, "cuspidals", dict, ""), "cuspidals")
    data = _need(obj, "data", list, "")
    for idx, rec in enumerate(data):
        dpath = f"data[{idx}]"
        if not isinstance(rec, dict):
            raise SchemaError(dpath, "expected an object")
        _need(rec, "id", str, dpath)
        local = _need(rec, "local", dict, dpath)
        _validate_component(local, f"{dpath}.local")
        _need(rec, "m", int, dpath)
        _need(rec, "d_xi", int, dpath)
        _need(rec, "inv_dim", int, dpath)
        _need(rec, "satake", str, dpath)
    torsion = _need(obj, "torsion", dict, "")
    _need(torsion, "t0", int, "torsion", allow_none=True)
    _int_list(_need(torsion, "tau", list, "torsion"), "torsion.tau")
    _int_list(_need(obj, "levels", list, ""), "levels")
