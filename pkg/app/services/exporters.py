"""Deterministic JSON, CSV and Graphviz renderings of engine outputs."""

import csv
import io
import json
from typing import Any, Iterable, Sequence

from pydantic import BaseModel

from .constructions.trees import FiniteTree
from .scheme_engine import SchemeView


def to_plain(value: Any) -> Any:
    """Pydantic models, tuples and sets reduced to JSON-able values."""
    if isinstance(value, BaseModel):
        return value.model_dump(mode="json")
    if isinstance(value, (set, frozenset)):
        return sorted(to_plain(x) for x in value)
    if isinstance(value, (list, tuple)):
        return [to_plain(x) for x in value]
    if isinstance(value, dict):
        return {str(k): to_plain(v) for k, v in value.items()}
    return value


def dumps_json(value: Any) -> str:
    """Sorted keys, compact separators and a trailing newline."""
    return json.dumps(to_plain(value), sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


def dumps_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()


def level_json(scheme: SchemeView, k: int) -> dict:
    """The scheme over m_k as a document of rank-tagged sets."""
    return {
        "type": scheme.spec.name,
        "level": k,
        "m": scheme.m(k),
        "sets": [
            {"rank": scheme.rank_of_size(len(F)), "elements": list(F)} for F in scheme.level_sets(k)
        ],
    }


def _label(node: Any) -> str:
    text = ",".join(str(x) for x in node) if isinstance(node, (tuple, list)) else str(node)
    return '"' + text.replace('"', '\\"') + '"'


def hasse_dot(scheme: SchemeView, k: int, name: str = "scheme") -> str:
    """Hasse diagram of (F(m_k), ⊆), smaller sets at the bottom."""
    members = scheme.level_sets(k)
    lines = [f"digraph {name} {{", "    rankdir=BT;", "    node [shape=box];"]
    for F in members:
        lines.append(f"    {_label(F)};")
    for F in members:
        inside = [G for G in members if G != F and set(G) < set(F)]
        covers = [G for G in inside if not any(set(G) < set(H) for H in inside)]
        for G in sorted(covers):
            lines.append(f"    {_label(G)} -> {_label(F)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def tree_dot(tree: FiniteTree, name: str = "tree") -> str:
    """Edges parent -> child of a finite tree."""
    lines = [f"digraph {name} {{", "    rankdir=BT;"]
    for node in (x for x in tree.nodes if tree.parent[x] is None):
        lines.append(f"    {_label(node)};")
    for node in tree.nodes:
        parent = tree.parent[node]
        if parent is not None:
            lines.append(f"    {_label(parent)} -> {_label(node)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
