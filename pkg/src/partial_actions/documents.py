"""JSON document format for groups, algebras and actions.

A workbench document has a version field and named sections:

    {"version": "1",
     "groups":   {"G": {"kind": "symmetric", "n": 3}},
     "algebras": {"A": {"blocks": [{"class": "L", "aut": "G"}]}},
     "actions":  {"alpha": {"kind": "set", "group": "G", "carrier": [...],
                            "domains": {...}, "maps": {...}}}}

Groups come in three kinds: ``cayley`` (explicit table), ``symmetric`` and
``cyclic``.  Actions reference groups and algebras by name or inline them.
Domain/map entries are keyed by element display name; group elements omitted
from ``domains`` have empty domains (the identity defaults to the full
carrier with the identity map).  Parsing and serialization round-trip.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping, Optional, Union

from .algebra_actions import AlgebraPartialAction
from .block_algebras import Block, BlockAlgebra, WreathMap
from .errors import DocumentError, PartialActionError
from .groups import FiniteGroup, cyclic_group, make_group, symmetric_group
from .set_actions import SetPartialAction

FORMAT_VERSION = "1"


def _require(cond: bool, message: str, path: str) -> None:
    if not cond:
        raise DocumentError(message, path)


def group_to_doc(G: FiniteGroup) -> dict:
    if G.doc_kind is not None:
        kind, n = G.doc_kind
        return {"kind": kind, "n": n}
    return {
        "kind": "cayley",
        "table": [list(row) for row in G.table],
        "names": list(G.names),
    }


def parse_group(doc, path: str = "group") -> FiniteGroup:
    _require(isinstance(doc, Mapping), "group document must be an object", path)
    kind = doc.get("kind")
    try:
        if kind == "cayley":
            _require("table" in doc, "cayley group needs a table", path)
            return make_group(doc["table"], doc.get("names"))
        if kind == "symmetric":
            return symmetric_group(int(doc["n"]))
        if kind == "cyclic":
            return cyclic_group(int(doc["n"]))
    except PartialActionError as exc:
        raise DocumentError(str(exc), path) from exc
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"bad group document: {exc}", path) from exc
    raise DocumentError(f"unknown group kind {kind!r}", path)


def _name_index(G: FiniteGroup, path: str) -> dict[str, int]:
    index = {}
    for i, name in enumerate(G.names):
        _require(name not in index, f"duplicate element name {name!r}", path)
        index[name] = i
    return index


def _resolve_element(G: FiniteGroup, names: dict[str, int], ref, path: str) -> int:
    if isinstance(ref, str) and ref in names:
        return names[ref]
    if isinstance(ref, int) and 0 <= ref < G.order:
        return ref
    raise DocumentError(f"unknown group element {ref!r}", path)


def algebra_to_doc(algebra: BlockAlgebra) -> dict:
    return {
        "blocks": [
            {"class": b.iso_class, "aut": group_to_doc(b.aut_group)} for b in algebra.blocks
        ]
    }


def parse_algebra(doc, groups: Mapping[str, FiniteGroup], path: str = "algebra") -> BlockAlgebra:
    _require(isinstance(doc, Mapping), "algebra document must be an object", path)
    _require(isinstance(doc.get("blocks"), list) and doc["blocks"], "algebra needs blocks", path)
    blocks = []
    for i, bdoc in enumerate(doc["blocks"]):
        bpath = f"{path}.blocks[{i}]"
        _require(isinstance(bdoc, Mapping) and "class" in bdoc, "block needs a class", bpath)
        aut_doc = bdoc.get("aut", {"kind": "cayley", "table": [[0]], "names": ["1"]})
        if isinstance(aut_doc, str):
            _require(aut_doc in groups, f"unknown group reference {aut_doc!r}", bpath)
            aut = groups[aut_doc]
        else:
            aut = parse_group(aut_doc, f"{bpath}.aut")
        blocks.append(Block(str(bdoc["class"]), aut))
    try:
        return BlockAlgebra(tuple(blocks))
    except PartialActionError as exc:
        raise DocumentError(str(exc), path) from exc


def _carrier_lookup(carrier: tuple, path: str) -> dict[str, object]:
    lookup: dict[str, object] = {}
    for x in carrier:
        key = str(x)
        _require(key not in lookup, f"carrier points collide at {key!r}", path)
        lookup[key] = x
    return lookup


def set_action_to_doc(spa: SetPartialAction, group_ref: Optional[str] = None) -> dict:
    G = spa.group
    e = G.identity
    doc: dict = {
        "kind": "set",
        "group": group_ref if group_ref is not None else group_to_doc(G),
        "carrier": list(spa.carrier),
        "domains": {},
        "maps": {},
    }
    for g in G.elements():
        if g != e and not spa.domains[g]:
            continue
        by_position = sorted(spa.domains[g], key=spa.carrier.index)
        doc["domains"][G.name(g)] = list(by_position)
        doc["maps"][G.name(g)] = {
            str(k): spa.maps[g][k]
            for k in sorted(spa.maps[g], key=spa.carrier.index)
        }
    return doc


def parse_set_action(
    doc,
    groups: Mapping[str, FiniteGroup],
    path: str = "action",
) -> SetPartialAction:
    _require(isinstance(doc, Mapping), "action document must be an object", path)
    gref = doc.get("group")
    if isinstance(gref, str):
        _require(gref in groups, f"unknown group reference {gref!r}", f"{path}.group")
        G = groups[gref]
    else:
        G = parse_group(gref, f"{path}.group")
    names = _name_index(G, f"{path}.group")
    _require(isinstance(doc.get("carrier"), list), "action needs a carrier list", path)
    carrier = tuple(doc["carrier"])
    lookup = _carrier_lookup(carrier, f"{path}.carrier")
    domains = {}
    for key, points in dict(doc.get("domains", {})).items():
        g = _resolve_element(G, names, key, f"{path}.domains")
        _require(isinstance(points, list), "domain must be a list", f"{path}.domains.{key}")
        resolved = []
        for x in points:
            _require(str(x) in lookup, f"point {x!r} not in the carrier", f"{path}.domains.{key}")
            resolved.append(lookup[str(x)])
        domains[g] = resolved
    maps = {}
    for key, pairs in dict(doc.get("maps", {})).items():
        g = _resolve_element(G, names, key, f"{path}.maps")
        _require(isinstance(pairs, Mapping), "map must be an object", f"{path}.maps.{key}")
        m = {}
        for k, v in pairs.items():
            _require(str(k) in lookup, f"point {k!r} not in the carrier", f"{path}.maps.{key}")
            _require(str(v) in lookup, f"point {v!r} not in the carrier", f"{path}.maps.{key}")
            m[lookup[str(k)]] = lookup[str(v)]
        maps[g] = m
    try:
        return SetPartialAction(G, carrier, domains, maps)
    except PartialActionError as exc:
        raise DocumentError(str(exc), path) from exc


def algebra_action_to_doc(
    pa: AlgebraPartialAction,
    group_ref: Optional[str] = None,
    algebra_ref: Optional[str] = None,
) -> dict:
    G = pa.group
    e = G.identity
    doc: dict = {
        "kind": "algebra",
        "group": group_ref if group_ref is not None else group_to_doc(G),
        "algebra": algebra_ref if algebra_ref is not None else algebra_to_doc(pa.algebra),
        "domains": {},
        "maps": {},
        "twists": {},
    }
    for g in G.elements():
        if g != e and not pa.support(g):
            continue
        doc["domains"][G.name(g)] = sorted(pa.support(g))
        w = pa.maps[g]
        doc["maps"][G.name(g)] = {str(p): q for p, q in sorted(w.position_map.items())}
        doc["twists"][G.name(g)] = {
            str(p): pa.algebra.blocks[p].aut_group.name(f)
            for p, f in sorted(w.twists.items())
        }
    return doc


def parse_algebra_action(
    doc,
    groups: Mapping[str, FiniteGroup],
    algebras: Mapping[str, BlockAlgebra],
    path: str = "action",
) -> AlgebraPartialAction:
    _require(isinstance(doc, Mapping), "action document must be an object", path)
    gref = doc.get("group")
    if isinstance(gref, str):
        _require(gref in groups, f"unknown group reference {gref!r}", f"{path}.group")
        G = groups[gref]
    else:
        G = parse_group(gref, f"{path}.group")
    names = _name_index(G, f"{path}.group")
    aref = doc.get("algebra")
    if isinstance(aref, str):
        _require(aref in algebras, f"unknown algebra reference {aref!r}", f"{path}.algebra")
        algebra = algebras[aref]
    else:
        algebra = parse_algebra(aref, groups, f"{path}.algebra")

    def position(x, where: str) -> int:
        try:
            p = int(x)
        except (TypeError, ValueError):
            raise DocumentError(f"block position {x!r} is not an integer", where) from None
        _require(0 <= p < algebra.n_blocks, f"block position {p} out of range", where)
        return p

    domains: dict[int, list[int]] = {}
    for key, positions in dict(doc.get("domains", {})).items():
        g = _resolve_element(G, names, key, f"{path}.domains")
        if isinstance(positions, Mapping):  # ideal form {"support": [...]}
            positions = positions.get("support")
        _require(
            isinstance(positions, list),
            "domain must be a position list or {\"support\": [...]}",
            f"{path}.domains.{key}",
        )
        domains[g] = [position(p, f"{path}.domains.{key}") for p in positions]
    maps_doc = dict(doc.get("maps", {}))
    twists_doc = dict(doc.get("twists", {}))
    maps = {}
    for key, pairs in maps_doc.items():
        g = _resolve_element(G, names, key, f"{path}.maps")
        _require(isinstance(pairs, Mapping), "map must be an object", f"{path}.maps.{key}")
        pm = {
            position(k, f"{path}.maps.{key}"): position(v, f"{path}.maps.{key}")
            for k, v in pairs.items()
        }
        tw_pairs = twists_doc.get(key, {})
        tw = {}
        for p in pm:
            ref = tw_pairs.get(str(p), None)
            aut = algebra.blocks[p].aut_group
            if ref is None:
                tw[p] = aut.identity
            elif isinstance(ref, str):
                aut_names = _name_index(aut, f"{path}.twists.{key}")
                _require(ref in aut_names, f"unknown automorphism {ref!r}", f"{path}.twists.{key}")
                tw[p] = aut_names[ref]
            else:
                _require(
                    isinstance(ref, int) and 0 <= ref < aut.order,
                    f"bad automorphism index {ref!r}",
                    f"{path}.twists.{key}",
                )
                tw[p] = ref
        source = algebra.ideal(pm.keys())
        target = algebra.ideal(domains.get(g, pm.values()))
        try:
            maps[g] = WreathMap(source, target, pm, tw)
        except PartialActionError as exc:
            raise DocumentError(str(exc), f"{path}.maps.{key}") from exc
    try:
        return AlgebraPartialAction(G, algebra, domains, maps)
    except PartialActionError as exc:
        raise DocumentError(str(exc), path) from exc


AnyAction = Union[SetPartialAction, AlgebraPartialAction]


@dataclass
class Workbench:
    """Parsed workbench document: named groups, algebras and actions."""

    version: str = FORMAT_VERSION
    groups: dict[str, FiniteGroup] = field(default_factory=dict)
    algebras: dict[str, BlockAlgebra] = field(default_factory=dict)
    actions: dict[str, AnyAction] = field(default_factory=dict)


def parse_workbench(doc) -> Workbench:
    _require(isinstance(doc, Mapping), "workbench document must be an object", "$")
    version = str(doc.get("version", FORMAT_VERSION))
    _require(version == FORMAT_VERSION, f"unsupported format version {version!r}", "$.version")
    wb = Workbench(version=version)
    for name, gdoc in dict(doc.get("groups", {})).items():
        wb.groups[name] = parse_group(gdoc, f"$.groups.{name}")
    for name, adoc in dict(doc.get("algebras", {})).items():
        wb.algebras[name] = parse_algebra(adoc, wb.groups, f"$.algebras.{name}")
    for name, action_doc in dict(doc.get("actions", {})).items():
        path = f"$.actions.{name}"
        _require(isinstance(action_doc, Mapping), "action must be an object", path)
        kind = action_doc.get("kind", "set")
        if kind == "set":
            wb.actions[name] = parse_set_action(action_doc, wb.groups, path)
        elif kind == "algebra":
            wb.actions[name] = parse_algebra_action(action_doc, wb.groups, wb.algebras, path)
        else:
            raise DocumentError(f"unknown action kind {kind!r}", path)
    return wb


def workbench_to_doc(wb: Workbench) -> dict:
    doc: dict = {"version": wb.version, "groups": {}, "algebras": {}, "actions": {}}
    group_names = {id(G): name for name, G in wb.groups.items()}
    algebra_names = {id(A): name for name, A in wb.algebras.items()}
    for name, G in wb.groups.items():
        doc["groups"][name] = group_to_doc(G)
    for name, A in wb.algebras.items():
        doc["algebras"][name] = algebra_to_doc(A)
    for name, action in wb.actions.items():
        if isinstance(action, SetPartialAction) and not isinstance(action, AlgebraPartialAction):
            doc["actions"][name] = set_action_to_doc(action, group_names.get(id(action.group)))
        else:
            doc["actions"][name] = algebra_action_to_doc(
                action,
                group_names.get(id(action.group)),
                algebra_names.get(id(action.algebra)),
            )
    return doc


def load_workbench(path: str) -> Workbench:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}", "$") from exc
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: line {exc.lineno}, column {exc.colno}", "$") from exc
    return parse_workbench(doc)
