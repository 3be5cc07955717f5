"""JSON encodings of terms, computads, maps, towers and certificates."""
from __future__ import annotations

import json
from typing import Any

from .core import Comp, Computad, Gen, Generator, Id, Term
from .invertibility import InverseTower
from .morphisms import ComputadMap
from .span_model import Certificate


class FormatError(ValueError):
    pass


def term_to_json(t: Term) -> dict:
    if isinstance(t, Gen):
        return {"gen": t.name}
    if isinstance(t, Id):
        return {"id": term_to_json(t.inner)}
    return {"comp": {"level": t.level, "parts": [term_to_json(p) for p in t.parts]}}


def term_from_json(obj: Any) -> Term:
    if not isinstance(obj, dict) or len(obj) != 1:
        raise FormatError(f"not a term: {obj!r}")
    (key, val), = obj.items()
    if key == "gen":
        if not isinstance(val, str):
            raise FormatError(f"generator name must be a string: {val!r}")
        return Gen(val)
    if key == "id":
        return Id(term_from_json(val))
    if key == "comp":
        try:
            level, parts = val["level"], val["parts"]
        except (TypeError, KeyError):
            raise FormatError(f"malformed composite: {val!r}") from None
        return Comp(level, [term_from_json(p) for p in parts])
    raise FormatError(f"unknown term constructor {key!r}")


def computad_to_json(c: Computad) -> dict:
    gens = []
    for g in c.generators:
        entry: dict[str, Any] = {"name": g.name, "dim": g.dim}
        if g.dim > 0:
            entry["src"] = term_to_json(g.src)
            entry["tgt"] = term_to_json(g.tgt)
        gens.append(entry)
    return {"max_dim": c.max_dim, "generators": gens}


def computad_from_json(obj: Any) -> Computad:
    try:
        gens = []
        for entry in obj["generators"]:
            src = entry.get("src")
            tgt = entry.get("tgt")
            gens.append(Generator(entry["name"], entry["dim"],
                                  None if src is None else term_from_json(src),
                                  None if tgt is None else term_from_json(tgt)))
        return Computad(obj["max_dim"], tuple(gens))
    except (TypeError, KeyError) as exc:
        raise FormatError(f"malformed computad: {exc}") from None


def map_to_json(m: ComputadMap, source_ref: str | None = None, target_ref: str | None = None) -> dict:
    out: dict[str, Any] = {}
    if source_ref is not None:
        out["source"] = source_ref
    if target_ref is not None:
        out["target"] = target_ref
    out["assign"] = {n: term_to_json(m.assign[n]) for n in m.source.names if n in m.assign}
    return out


def assignment_from_json(obj: Any) -> dict[str, Term]:
    try:
        return {k: term_from_json(v) for k, v in obj["assign"].items()}
    except (TypeError, KeyError, AttributeError):
        raise FormatError("map file needs an 'assign' object") from None


def tower_to_json(t: InverseTower) -> dict:
    out: dict[str, Any] = {"subject": term_to_json(t.subject)}
    if t.g_minus is not None:
        out["g_minus"] = term_to_json(t.g_minus)
    if t.g_plus is not None:
        out["g_plus"] = term_to_json(t.g_plus)
    if t.h_plus is not None:
        out["h_plus"] = tower_to_json(t.h_plus)
    if t.h_minus is not None:
        out["h_minus"] = tower_to_json(t.h_minus)
    return out


def tower_from_json(obj: Any) -> InverseTower:
    if not isinstance(obj, dict) or "subject" not in obj:
        raise FormatError("a tower needs a 'subject'")
    get = lambda key, conv: None if obj.get(key) is None else conv(obj[key])  # noqa: E731
    return InverseTower(term_from_json(obj["subject"]),
                        get("g_minus", term_from_json), get("g_plus", term_from_json),
                        get("h_plus", tower_from_json), get("h_minus", tower_from_json))


def certificate_to_json(cert: Certificate) -> dict:
    return {
        "kind": cert.kind,
        "assignment": {"level": cert.assignment.level, "cards": dict(cert.assignment.cards)},
        "values": list(cert.values),
        "argument": cert.argument,
    }


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
