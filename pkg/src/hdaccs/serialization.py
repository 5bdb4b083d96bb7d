"""JSON and DOT export of labelled complexes."""
from __future__ import annotations

import json
from typing import Any

from .cubical_sets import CellInstance, Edge, LabelledCubicalSet
from .label_objects import Alphabet, MarkedAlphabet, is_mark


def _label_out(a):
    return list(a) if is_mark(a) else a


def _label_in(a):
    return tuple(a) if isinstance(a, list) else a


def to_json_dict(K: LabelledCubicalSet) -> dict[str, Any]:
    base = K.alphabet.base if isinstance(K.alphabet, MarkedAlphabet) else K.alphabet
    alphabet: dict[str, Any] = {
        "letters": sorted(base.letters),
        "involution": {a: b for a, b in sorted(base.involution.items())},
    }
    if isinstance(K.alphabet, MarkedAlphabet):
        alphabet["marks"] = [list(m) for m in sorted(K.alphabet.marks)]
    return {
        "model": K.model,
        "max_dim": K.max_dim,
        "alphabet": alphabet,
        "initial": K.initial,
        "vertices": [{"id": v, "decoration": d} for v, d in sorted(K.vertices.items())],
        "edges": [
            {"id": k, "src": e.src, "tgt": e.tgt, "label": _label_out(e.label)} for k, e in sorted(K.edges.items())
        ],
        "cells": {
            str(p): [{"vertices": list(x.vertices), "edges": list(x.edges)} for x in sorted(K.cells[p])]
            for p in sorted(K.cells)
        },
    }


def dumps(K: LabelledCubicalSet) -> str:
    return json.dumps(to_json_dict(K), indent=1, sort_keys=True) + "\n"


def from_json_dict(data: dict[str, Any]) -> LabelledCubicalSet:
    inv = data["alphabet"]["involution"]
    pairs = frozenset(tuple(sorted((a, b))) for a, b in inv.items())
    alphabet: Alphabet | MarkedAlphabet = Alphabet(frozenset(data["alphabet"]["letters"]), pairs)
    if "marks" in data["alphabet"]:
        alphabet = MarkedAlphabet(alphabet, frozenset(tuple(m) for m in data["alphabet"]["marks"]))
    vertices = {int(v["id"]): v.get("decoration") for v in data["vertices"]}
    edges = {int(e["id"]): Edge(int(e["src"]), int(e["tgt"]), _label_in(e["label"])) for e in data["edges"]}
    cells = {
        int(p): frozenset(CellInstance(int(p), tuple(c["vertices"]), tuple(c["edges"])) for c in cs)
        for p, cs in data.get("cells", {}).items()
    }
    return LabelledCubicalSet(
        data["model"], int(data["max_dim"]), alphabet, vertices, edges, cells, data.get("initial")
    )


def loads(text: str) -> LabelledCubicalSet:
    return from_json_dict(json.loads(text))


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(K: LabelledCubicalSet, name: str = "K") -> str:
    """1-skeleton only, decorations as node labels."""
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for v, d in sorted(K.vertices.items()):
        attrs = [f"label={_dot_quote(d if d is not None else str(v))}"]
        if v == K.initial:
            attrs.append("shape=doublecircle")
        lines.append(f"  {v} [{', '.join(attrs)}];")
    for k, e in sorted(K.edges.items()):
        lab = ",".join(map(str, e.label)) if is_mark(e.label) else str(e.label)
        lines.append(f"  {e.src} -> {e.tgt} [label={_dot_quote(lab)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
