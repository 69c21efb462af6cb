"""JSON schemas for families, posets, certificates and reports, plus DOT
export of Hasse diagrams.

Every artifact carries a schema tag. Serialization is deterministic: keys are
sorted and no volatile data (timings, hostnames) is written, so identical
inputs produce byte-identical files.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional

from .certificates import (BooleanRealizer, FractionalRealizer, LocalRealizer,
                           Realizer)
from .dimensions import DimensionReport, DistinguishingSequence
from .errors import MalformedCertificate
from .geometry import ConvexGeometry, ConvexRealizer, SetFamily, set_label
from .order import Poset, poset_from_relation

SCHEMAS = {
    "setfamily": "ordim/setfamily/1",
    "setfamilies": "ordim/setfamilies/1",
    "poset": "ordim/poset/1",
    "report": "ordim/report/1",
    "realizer": "ordim/certificate/realizer/1",
    "convex": "ordim/certificate/convex/1",
    "local": "ordim/certificate/local/1",
    "boolean": "ordim/certificate/boolean/1",
    "fractional": "ordim/certificate/fractional/1",
    "distinguishing": "ordim/certificate/distinguishing/1",
}


def dumps(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def family_to_json(fam: SetFamily, meta: Optional[dict] = None) -> dict:
    doc = {
        "schema": SCHEMAS["setfamily"],
        "ground": fam.ground_n,
        "sets": [list(s) for s in fam.sets()],
    }
    if meta:
        doc["meta"] = meta
    return doc


def families_to_json(ground: int, fams, meta: Optional[dict] = None) -> dict:
    doc = {
        "schema": SCHEMAS["setfamilies"],
        "ground": ground,
        "families": [[list(s) for s in f.sets()] for f in fams],
    }
    if meta:
        doc["meta"] = meta
    return doc


def family_from_json(doc: dict) -> SetFamily:
    if doc.get("schema") != SCHEMAS["setfamily"]:
        raise MalformedCertificate(f"not a set family document: {doc.get('schema')!r}")
    return SetFamily.from_sets(int(doc["ground"]), doc["sets"])


def poset_to_json(P: Poset) -> dict:
    doc = {
        "schema": SCHEMAS["poset"],
        "n": P.n,
        "relation": [[x, y] for x, y in P.covers],
    }
    if P.labels:
        doc["labels"] = list(P.labels)
    return doc


def poset_from_json(doc: dict) -> Poset:
    if doc.get("schema") != SCHEMAS["poset"]:
        raise MalformedCertificate(f"not a poset document: {doc.get('schema')!r}")
    return poset_from_relation(int(doc["n"]),
                               [tuple(p) for p in doc["relation"]],
                               labels=doc.get("labels"))


def load_document(path: str):
    """Read a JSON artifact and build the matching in-memory object.

    Set families come back as (SetFamily, None); posets as (None, Poset).
    """
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    schema = doc.get("schema", "")
    if schema == SCHEMAS["setfamily"]:
        return family_from_json(doc), None
    if schema == SCHEMAS["poset"]:
        return None, poset_from_json(doc)
    raise MalformedCertificate(f"unsupported document schema {schema!r}")


# ---------------------------------------------------------------------------
# certificates

def certificate_to_json(cert) -> dict:
    if isinstance(cert, Realizer):
        return {"schema": SCHEMAS["realizer"],
                "extensions": [list(e) for e in cert.extensions]}
    if isinstance(cert, ConvexRealizer):
        return {"schema": SCHEMAS["convex"],
                "perms": [list(p) for p in cert.perms]}
    if isinstance(cert, LocalRealizer):
        return {"schema": SCHEMAS["local"],
                "ples": [list(p) for p in cert.ples]}
    if isinstance(cert, BooleanRealizer):
        return {"schema": SCHEMAS["boolean"],
                "orders": [list(o) for o in cert.orders],
                "tau": sorted(cert.tau)}
    if isinstance(cert, FractionalRealizer):
        return {"schema": SCHEMAS["fractional"],
                "weighted": [{"extension": list(e), "weight": str(w)}
                             for e, w in cert.weighted]}
    if isinstance(cert, DistinguishingSequence):
        return {"schema": SCHEMAS["distinguishing"],
                "k": cert.k, "n": cert.n, "t": cert.t,
                "sets": [list(cert.set_of(i)) for i in range(1, cert.n + 1)]}
    raise MalformedCertificate(f"unknown certificate object {type(cert)!r}")


def certificate_from_json(doc: dict):
    schema = doc.get("schema", "")
    if schema == SCHEMAS["realizer"]:
        return Realizer(tuple(tuple(e) for e in doc["extensions"]))
    if schema == SCHEMAS["convex"]:
        return ConvexRealizer(tuple(tuple(p) for p in doc["perms"]))
    if schema == SCHEMAS["local"]:
        return LocalRealizer(tuple(tuple(p) for p in doc["ples"]))
    if schema == SCHEMAS["boolean"]:
        return BooleanRealizer(tuple(tuple(o) for o in doc["orders"]),
                               frozenset(doc["tau"]))
    if schema == SCHEMAS["fractional"]:
        return FractionalRealizer(tuple(
            (tuple(item["extension"]), Fraction(item["weight"]))
            for item in doc["weighted"]))
    if schema == SCHEMAS["distinguishing"]:
        sets = tuple(sum(1 << (m - 1) for m in marks) for marks in doc["sets"])
        return DistinguishingSequence(int(doc["k"]), int(doc["n"]),
                                      int(doc["t"]), sets)
    raise MalformedCertificate(f"unknown certificate schema {schema!r}")


# ---------------------------------------------------------------------------
# reports

def report_to_json(report: DimensionReport, meta: Optional[dict] = None) -> dict:
    params = {}
    for name in ("dim", "cdim", "maxdd", "se"):
        value = getattr(report, name)
        if value is not None:
            params[name] = value
    if report.fdim is not None:
        params["fdim"] = str(report.fdim)
    certs = {}
    if report.realizer is not None:
        certs["realizer"] = certificate_to_json(report.realizer)
    if report.convex_realizer is not None:
        certs["convex"] = certificate_to_json(report.convex_realizer)
    if report.fractional_realizer is not None:
        certs["fractional"] = certificate_to_json(report.fractional_realizer)
    doc = {
        "schema": SCHEMAS["report"],
        "params": params,
        "certificates": certs,
        "warnings": list(report.warnings),
    }
    if meta:
        doc["meta"] = meta
    return doc


# ---------------------------------------------------------------------------
# DOT export

def hasse_dot(G: ConvexGeometry) -> str:
    """Hasse diagram in DOT, meet-irreducible members drawn as white nodes.

    Set labels are rendered as plain digit strings (no braces or commas)."""
    mi = set(G.meet_irr)
    lines = ["digraph hasse {", "  rankdir=BT;",
             '  node [shape=ellipse, style=filled, fontname="Helvetica"];']
    for i, mask in enumerate(G.masks):
        fill = "white" if i in mi else "gray85"
        lines.append(f'  n{i} [label="{set_label(mask)}", fillcolor="{fill}"];')
    for x, y in G.poset.covers:
        lines.append(f"  n{x} -> n{y};")
    lines.append("}")
    return "\n".join(lines) + "\n"
