"""Combinatorial realization of loopless complexes as flows.

States are vertices, execution paths are edge sequences, and every 2-cell
identifies its two boundary composites.  Path classes are computed by
union-find over the (finite) set of paths between two states.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable

import networkx as nx

from .cube_category import edge_index
from .cubical_sets import CellInstance, LabelledCubicalSet

Path = tuple  # edge ids


class CyclicComplexError(ValueError):
    pass


@dataclass(frozen=True)
class Flow:
    states: frozenset
    generators: dict  # edge id -> (src, tgt)
    relations: tuple  # pairs of 2-edge paths
    labels: dict

    def paths(self, alpha: int, beta: int) -> list[Path]:
        out_edges: dict[int, list[int]] = {}
        for e, (s, _) in sorted(self.generators.items()):
            out_edges.setdefault(s, []).append(e)
        found: list[Path] = []

        def walk(v: int, acc: list[int]) -> None:
            if v == beta and acc:
                found.append(tuple(acc))
            for e in out_edges.get(v, ()):
                acc.append(e)
                walk(self.generators[e][1], acc)
                acc.pop()

        walk(alpha, [])
        return found


@dataclass(frozen=True, order=True)
class PathClass:
    representative: Path
    source: int
    target: int
    size: int


def bad_realization(K: LabelledCubicalSet) -> Flow:
    """One generator per edge, one relation per 2-cell (left-then-top against
    bottom-then-right in cube coordinates)."""
    g = nx.MultiDiGraph()
    g.add_nodes_from(K.vertices)
    g.add_edges_from((e.src, e.tgt) for e in K.edges.values())
    if not nx.is_directed_acyclic_graph(g):
        raise CyclicComplexError("the 1-skeleton has a directed cycle")
    idx = edge_index(2)
    rels = set()
    for x in K.cells.get(2, ()):
        e = {k: x.edges[idx[uv]] for uv, k in idx.items()}
        first = (e[idx[(0, 1)]], e[idx[(1, 3)]])
        second = (e[idx[(0, 2)]], e[idx[(2, 3)]])
        rels.add(tuple(sorted((first, second))))
    return Flow(
        frozenset(K.vertices),
        {k: (e.src, e.tgt) for k, e in K.edges.items()},
        tuple(sorted(rels)),
        {k: e.label for k, e in K.edges.items()},
    )


def _classes(F: Flow, alpha: int, beta: int, relations: Iterable) -> list[list[Path]]:
    paths = F.paths(alpha, beta)
    index = {p: i for i, p in enumerate(paths)}
    parent = list(range(len(paths)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for r1, r2 in relations:
        for p in paths:
            for k in range(len(p) - 1):
                if p[k : k + 2] == r1:
                    q = p[:k] + r2 + p[k + 2 :]
                    a, b = find(index[p]), find(index[q])
                    if a != b:
                        parent[max(a, b)] = min(a, b)
    groups: dict[int, list[Path]] = {}
    for p in paths:
        groups.setdefault(find(index[p]), []).append(p)
    return list(groups.values())


def path_classes(F: Flow, alpha: int, beta: int, seed: int | None = None) -> set[PathClass]:
    """Paths alpha -> beta up to the congruence generated by the relations.

    ``seed`` shuffles the order relations are applied in; the result must not
    depend on it.
    """
    rels = [r for pair in F.relations for r in (pair, pair[::-1])]
    if seed is not None:
        random.Random(seed).shuffle(rels)
    return {PathClass(min(c), alpha, beta, len(c)) for c in _classes(F, alpha, beta, rels)}


def class_count_table(F: Flow) -> dict[tuple[int, int], int]:
    """Number of path classes for every ordered pair of states."""
    return {
        (a, b): len(path_classes(F, a, b))
        for a in sorted(F.states)
        for b in sorted(F.states)
        if a != b
    }


def label_multiset(F: Flow, path: Path) -> Counter:
    return Counter(F.labels[e] for e in path)


def labels_class_invariant(F: Flow) -> bool:
    """Congruent paths carry equal label multisets."""
    for a in F.states:
        for b in F.states:
            if a == b:
                continue
            for c in _classes(F, a, b, [r for pair in F.relations for r in (pair, pair[::-1])]):
                if len({frozenset(label_multiset(F, p).items()) for p in c}) > 1:
                    return False
    return True


def maximal_paths(p: int) -> list[tuple[int, ...]]:
    """Vertex sequences from 0 to the top of [p], one per coordinate order."""
    out = []
    for perm in permutations(range(p)):
        v, seq = 0, [0]
        for i in perm:
            v |= 1 << i
            seq.append(v)
        out.append(tuple(seq))
    return out


def maximal_label_multisets(labels: tuple, p: int) -> set[frozenset]:
    idx = edge_index(p)
    out = set()
    for seq in maximal_paths(p):
        c = Counter(labels[idx[(u, v)]] for u, v in zip(seq, seq[1:]))
        out.add(frozenset(c.items()))
    return out


def check_maximal_label_invariance(K: LabelledCubicalSet, x: CellInstance | None = None) -> bool:
    """Every maximal path of the cell (or of every cell of dim >= 2) reads the
    same multiset of labels."""
    cells = [x] if x is not None else [c for p in range(2, K.max_dim + 1) for c in K.cells.get(p, ())]
    return all(len(maximal_label_multisets(K.label_tuple(c), c.dim)) == 1 for c in cells)
