"""Finite truncated labelled cubical complexes stored as 1-skeleton instances.

A p-cell is recorded by where it sends the vertices and edges of the
standard p-cube; two cells are equal exactly when these maps agree.
"""
from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Mapping, NamedTuple, Sequence

import networkx as nx
from networkx.algorithms import isomorphism as nx_iso

from .cube_category import (
    DEFAULT_BOUND,
    CubeMap,
    belongs_to,
    cube_edges,
    edge_index,
    enumerate_hom,
    face_map,
)
from .label_objects import MODELS, Alphabet, EdgeLabelling, Label, MarkedAlphabet, labels_realizable

DEFAULT_DIM = 3
MAX_DIM = 4


class ComplexError(ValueError):
    pass


class DeterminacyError(ComplexError):
    """Two different cells would share one 1-skeleton instance."""


class Edge(NamedTuple):
    src: int
    tgt: int
    label: Label


class CellInstance(NamedTuple):
    dim: int
    vertices: tuple[int, ...]
    edges: tuple[int, ...]


@lru_cache(maxsize=None)
def _action_indices(mu: CubeMap) -> tuple[tuple[int, ...], tuple[int, ...]]:
    idx = edge_index(mu.dst_dim)
    emap = tuple(idx[(mu.table[u], mu.table[v])] for u, v, _ in cube_edges(mu.src_dim))
    return mu.table, emap


def presheaf_act(mu: CubeMap, x: CellInstance, model: str | None = None) -> CellInstance:
    """Precompose the instance ``x`` with ``mu: [q] -> [p]``."""
    if mu.dst_dim != x.dim:
        raise ComplexError("map and cell dimensions disagree")
    if model is not None and not belongs_to(model, mu):
        raise ComplexError(f"map does not belong to the {model} category")
    try:
        vmap, emap = _action_indices(mu)
    except KeyError:
        raise ComplexError("map is not adjacency-preserving") from None
    return CellInstance(mu.src_dim, tuple(x.vertices[j] for j in vmap), tuple(x.edges[k] for k in emap))


def face(x: CellInstance, i: int, alpha: int) -> CellInstance:
    return presheaf_act(face_map(i, alpha, x.dim), x)


@lru_cache(maxsize=None)
def _face_indices(p: int) -> tuple:
    return tuple(_action_indices(face_map(i, a, p)) for i in range(1, p + 1) for a in (0, 1))


def faces(x: CellInstance) -> list[CellInstance]:
    """The 2p faces in the order (1,0), (1,1), (2,0), ..."""
    return [
        CellInstance(x.dim - 1, tuple(x.vertices[j] for j in vmap), tuple(x.edges[k] for k in emap))
        for vmap, emap in _face_indices(x.dim)
    ]


@dataclass(frozen=True)
class LabelledCubicalSet:
    """A labelled complex truncated at ``max_dim``.

    ``vertices`` maps ids to an optional decoration, ``edges`` maps ids to
    ``Edge`` records and ``cells[p]`` holds the p-cells for 2 <= p <= max_dim.
    """

    model: str
    max_dim: int
    alphabet: Alphabet | MarkedAlphabet
    vertices: Mapping[int, str | None]
    edges: Mapping[int, Edge]
    cells: Mapping[int, frozenset[CellInstance]] = field(default_factory=dict)
    initial: int | None = None

    def __post_init__(self) -> None:
        if self.model not in MODELS:
            raise ComplexError(f"unknown model {self.model!r}")
        cells = {p: frozenset(self.cells.get(p, ())) for p in range(2, self.max_dim + 1)}
        if set(self.cells) - set(cells):
            raise ComplexError("cells above the truncation dimension")
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "vertices", dict(self.vertices))
        object.__setattr__(self, "edges", {k: Edge(*e) for k, e in self.edges.items()})
        self._validate()

    def _validate(self) -> None:
        for e in self.edges.values():
            if e.src not in self.vertices or e.tgt not in self.vertices:
                raise ComplexError(f"edge {e} has an unknown endpoint")
            if e.label not in self.alphabet:
                raise ComplexError(f"label {e.label!r} outside the alphabet")
        if self.initial is not None and self.initial not in self.vertices:
            raise ComplexError("initial state is not a vertex")
        for p, cs in self.cells.items():
            for x in cs:
                self._check_instance(x, p)
            below = self.cells.get(p - 1)
            for x in cs:
                for y in faces(x):
                    if p == 2:
                        continue  # edge faces were checked with the instance
                    if y not in below:
                        raise ComplexError(f"face {y} of {x} is not a cell")

    def _check_instance(self, x: CellInstance, p: int) -> None:
        if x.dim != p or len(x.vertices) != 1 << p or len(x.edges) != len(cube_edges(p)):
            raise ComplexError(f"malformed {p}-cell {x}")
        for (u, v, _), eid in zip(cube_edges(p), x.edges):
            e = self.edges.get(eid)
            if e is None or e.src != x.vertices[u] or e.tgt != x.vertices[v]:
                raise ComplexError(f"cell {x} does not match edge {eid}")

    # -- views

    def cells_of_dim(self, p: int) -> list[CellInstance]:
        """All p-cells in canonical order, vertices and edges included."""
        if p == 0:
            return [CellInstance(0, (v,), ()) for v in sorted(self.vertices)]
        if p == 1:
            return [CellInstance(1, (e.src, e.tgt), (k,)) for k, e in sorted(self.edges.items())]
        return sorted(self.cells.get(p, ()))

    def all_cells(self) -> Iterable[CellInstance]:
        for p in range(self.max_dim + 1):
            yield from self.cells_of_dim(p)

    def counts(self) -> list[int]:
        out = [len(self.vertices), len(self.edges)] + [len(self.cells[p]) for p in range(2, self.max_dim + 1)]
        return out[: self.max_dim + 1] if self.max_dim >= 1 else out[:1]

    def labelling(self, x: CellInstance) -> EdgeLabelling:
        return EdgeLabelling(x.dim, tuple(self.edges[e].label for e in x.edges))

    def label_tuple(self, x: CellInstance) -> tuple:
        return tuple(self.edges[e].label for e in x.edges)

    def with_(self, **changes) -> "LabelledCubicalSet":
        data = dict(
            model=self.model,
            max_dim=self.max_dim,
            alphabet=self.alphabet,
            vertices=self.vertices,
            edges=self.edges,
            cells=self.cells,
            initial=self.initial,
        )
        data.update(changes)
        return LabelledCubicalSet(**data)


def one_dimensional(
    vertices: Mapping[int, str | None],
    edges: Mapping[int, Edge],
    alphabet,
    model: str = "box",
    initial: int | None = None,
) -> LabelledCubicalSet:
    return LabelledCubicalSet(model, 1, alphabet, vertices, edges, {}, initial)


def _default_alphabet(word: Sequence[str]) -> Alphabet:
    return Alphabet.from_names(word)


def cube_skeleton(word: Sequence[Label], alphabet=None) -> LabelledCubicalSet:
    """1-skeleton of [n], the edge flipping coordinate i labelled ``word[i]``."""
    n = len(word)
    return labelled_cube_skeleton(n, tuple(word[i] for _, _, i in cube_edges(n)), alphabet)


def labelled_cube_skeleton(p: int, labels: Sequence[Label], alphabet=None) -> LabelledCubicalSet:
    """1-skeleton of [p] with an arbitrary edge labelling."""
    alphabet = alphabet or _default_alphabet(sorted({a for a in labels if isinstance(a, str)}))
    verts = {v: None for v in range(1 << p)}
    edges = {k: Edge(u, v, labels[k]) for k, (u, v, _) in enumerate(cube_edges(p))}
    return one_dimensional(verts, edges, alphabet)


def standard_cube(word: Sequence[str], model: str = "box", D: int | None = None, alphabet=None) -> LabelledCubicalSet:
    """The labelled cube □[a_1, ..., a_n] in the requested model."""
    n = len(word)
    if n > DEFAULT_BOUND:
        raise ComplexError(f"cube dimension {n} above the enumeration bound")
    D = n if D is None else D
    if D > MAX_DIM:
        raise ComplexError(f"truncation dimension {D} above {MAX_DIM}")
    skel = cube_skeleton(word, alphabet)
    top = CellInstance(n, tuple(range(1 << n)), tuple(range(len(cube_edges(n)))))
    cells = {}
    for p in range(2, min(D, n) + 1):
        cells[p] = frozenset(presheaf_act(f, top) for f in enumerate_hom("box", p, n))
    box = LabelledCubicalSet("box", D, skel.alphabet, skel.vertices, skel.edges, cells)
    return box if model == "box" else freely_generate(box, model)


def truncate(K: LabelledCubicalSet, n: int) -> LabelledCubicalSet:
    if not 0 <= n <= K.max_dim:
        raise ComplexError(f"cannot truncate a {K.max_dim}-complex at {n}")
    edges = K.edges if n >= 1 else {}
    return K.with_(max_dim=n, edges=edges, cells={p: K.cells[p] for p in range(2, n + 1)})


def skeleton(K: LabelledCubicalSet) -> LabelledCubicalSet:
    return truncate(K, min(1, K.max_dim))


def _graph_index(K: LabelledCubicalSet):
    between: dict[tuple[int, int], list[int]] = defaultdict(list)
    succ: dict[int, set[int]] = defaultdict(set)
    for k, e in sorted(K.edges.items()):
        between[(e.src, e.tgt)].append(k)
        succ[e.src].add(e.tgt)
    return between, succ


@lru_cache(maxsize=None)
def _glue_template(p: int) -> tuple[tuple[str, int], ...]:
    # how each edge of [p] is read off (lower face, upper face, connecting edge)
    half = 1 << (p - 1)
    lower = edge_index(p - 1)
    out = []
    for u, v, i in cube_edges(p):
        if i == p - 1:
            out.append(("c", u))
        elif u < half:
            out.append(("l", lower[(u, v)]))
        else:
            out.append(("h", lower[(u - half, v - half)]))
    return tuple(out)


def _glued_candidates(K: LabelledCubicalSet, prev: Sequence[CellInstance], p: int, between, succ):
    """Instances of [p] whose faces along the last coordinate lie in ``prev``."""
    half = 1 << (p - 1)
    template = _glue_template(p)
    by_first: dict[int, list[CellInstance]] = defaultdict(list)
    for c in prev:
        by_first[c.vertices[0]].append(c)
    for c0 in prev:
        for t in sorted(succ.get(c0.vertices[0], ())):
            for c1 in by_first.get(t, ()):
                choices = []
                for v in range(half):
                    es = between.get((c0.vertices[v], c1.vertices[v]))
                    if not es:
                        break
                    choices.append(es)
                else:
                    verts = c0.vertices + c1.vertices
                    for combo in itertools.product(*choices):
                        edges = tuple(
                            c0.edges[j] if kind == "l" else c1.edges[j] if kind == "h" else combo[j]
                            for kind, j in template
                        )
                        yield CellInstance(p, verts, edges)


def coskeleton_1(
    K: LabelledCubicalSet,
    model: str,
    D: int = DEFAULT_DIM,
    accept: Callable[[CellInstance], bool] | None = None,
) -> LabelledCubicalSet:
    """Fill every labelled shell of a 1-dimensional complex up to dimension D.

    ``accept`` optionally restricts the kept cells; it must be stable under
    taking faces for the result to be a complex.
    """
    if any(K.cells.get(p) for p in range(2, K.max_dim + 1)):
        raise ComplexError("coskeleton_1 expects a 1-dimensional complex")
    if D > MAX_DIM:
        raise ComplexError(f"truncation dimension {D} above {MAX_DIM}")
    between, succ = _graph_index(K)
    labels = {k: e.label for k, e in K.edges.items()}
    prev = K.cells_of_dim(1)
    cells: dict[int, frozenset[CellInstance]] = {}
    for p in range(2, D + 1):
        new = set()
        for x in _glued_candidates(K, prev, p, between, succ):
            if not labels_realizable(model, p, tuple(labels[e] for e in x.edges)):
                continue
            if accept is not None and not accept(x):
                continue
            new.add(x)
        cells[p] = frozenset(new)
        prev = sorted(new)
    return LabelledCubicalSet(model, D, K.alphabet, K.vertices, K.edges, cells, K.initial)


def enumerate_shells(K: LabelledCubicalSet, n: int) -> list[CellInstance]:
    """Labelled n-shells of K, each given as the would-be (n+1)-instance."""
    if not 1 <= n <= K.max_dim:
        raise ComplexError("K must be closed up to dimension n")
    if n + 1 > MAX_DIM:
        raise ComplexError("shell dimension above the oracle bound")
    between, succ = _graph_index(K)
    here = set(K.cells_of_dim(n))
    out = []
    for x in _glued_candidates(K, K.cells_of_dim(n), n + 1, between, succ):
        if n >= 2 and not all(y in here for y in faces(x)):
            continue
        if labels_realizable(K.model, n + 1, K.label_tuple(x)):
            out.append(x)
    return sorted(set(out))


def endomaps(model: str, p: int) -> tuple[CubeMap, ...]:
    return enumerate_hom(model, p, p)


def freely_generate(K: LabelledCubicalSet, target: str) -> LabelledCubicalSet:
    """Close a box complex under the endomaps of the target category."""
    if K.model != "box":
        raise ComplexError("freely_generate expects a box-model complex")
    if target not in ("sym", "hat"):
        raise ComplexError(f"unsupported target {target!r}")
    cells = {}
    for p, cs in K.cells.items():
        maps = endomaps(target, p)
        out = {presheaf_act(mu, y) for y in cs for mu in maps}
        if len(out) != len(cs) * len(maps):
            raise DeterminacyError(f"distinct {p}-cells collapse to one instance")
        cells[p] = frozenset(out)
    return K.with_(model=target, cells=cells)


def check_action_closed(K: LabelledCubicalSet) -> bool:
    """Cells are stable under every map of the model category between dims."""
    for p in range(2, K.max_dim + 1):
        for q in range(1, p + 1):
            maps = enumerate_hom(K.model, q, p)
            target = set(K.cells_of_dim(q))
            for x in K.cells[p]:
                for mu in maps:
                    if presheaf_act(mu, x) not in target:
                        return False
    return True


def restrict_edges(K: LabelledCubicalSet, keep: Callable[[Edge], bool]) -> LabelledCubicalSet:
    """Drop every edge failing ``keep`` and every cell using one."""
    edges = {k: e for k, e in K.edges.items() if keep(e)}
    cells = {p: frozenset(x for x in cs if all(e in edges for e in x.edges)) for p, cs in K.cells.items()}
    return K.with_(edges=edges, cells=cells)


def relabel_vertices(K: LabelledCubicalSet, decorate: Callable[[int, str | None], str | None]) -> LabelledCubicalSet:
    return K.with_(vertices={v: decorate(v, d) for v, d in K.vertices.items()})


# ---------------------------------------------------------------- isomorphism


def _nx_graph(K: LabelledCubicalSet, labels: bool, decorations: bool) -> nx.MultiDiGraph:
    g = nx.MultiDiGraph()
    for v, d in K.vertices.items():
        g.add_node(v, tag=(d if decorations else None, v == K.initial))
    for k, e in K.edges.items():
        g.add_edge(e.src, e.tgt, key=k, label=e.label if labels else None)
    return g


def _edge_maps(K, K2, vmap, labels):
    groups = defaultdict(list)
    for k, e in sorted(K.edges.items()):
        groups[(vmap[e.src], vmap[e.tgt], e.label if labels else None)].append(k)
    targets = defaultdict(list)
    for k, e in sorted(K2.edges.items()):
        targets[(e.src, e.tgt, e.label if labels else None)].append(k)
    keys = sorted(groups, key=repr)
    options = []
    for key in keys:
        src, dst = groups[key], targets.get(key, [])
        if len(src) != len(dst):
            return
        options.append([(src, perm) for perm in itertools.permutations(dst)])
    for combo in itertools.product(*options):
        emap = {}
        for src, perm in combo:
            emap.update(zip(src, perm))
        yield emap


def find_isomorphism(
    K: LabelledCubicalSet,
    K2: LabelledCubicalSet,
    labels: bool = True,
    decorations: bool = True,
):
    """A pair (vertex map, edge map) carrying K onto K2, or ``None``."""
    if K.counts() != K2.counts():
        return None
    if labels and Counter(e.label for e in K.edges.values()) != Counter(e.label for e in K2.edges.values()):
        return None
    if (K.initial is None) != (K2.initial is None):
        return None
    g1, g2 = _nx_graph(K, labels, decorations), _nx_graph(K2, labels, decorations)
    matcher = nx_iso.MultiDiGraphMatcher(
        g1,
        g2,
        node_match=lambda a, b: a["tag"] == b["tag"],
        edge_match=lambda a, b: Counter(d["label"] for d in a.values()) == Counter(d["label"] for d in b.values()),
    )
    targets = {p: K2.cells[p] for p in K2.cells}
    for vmap in matcher.isomorphisms_iter():
        for emap in _edge_maps(K, K2, vmap, labels):
            if all(
                CellInstance(p, tuple(vmap[v] for v in x.vertices), tuple(emap[e] for e in x.edges)) in targets[p]
                for p, cs in K.cells.items()
                for x in cs
            ):
                return vmap, emap
    return None


def is_isomorphic(
    K: LabelledCubicalSet,
    K2: LabelledCubicalSet,
    labels: bool = True,
    decorations: bool = True,
) -> bool:
    """Labelled, decorated isomorphism of truncated complexes.

    With ``labels=False`` edge labels are ignored, which compares the
    underlying unlabelled complexes.
    """
    if K.max_dim != K2.max_dim:
        return False
    return find_isomorphism(K, K2, labels, decorations) is not None
