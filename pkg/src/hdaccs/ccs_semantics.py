"""Synchronized products of labelled complexes and the CCS denotations."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Sequence

from .ccs_syntax import (
    Nil,
    Par,
    Prefix,
    Rec,
    Restrict,
    Sum,
    Term,
    Var,
    action_names,
    check_guarded,
    par_text,
    restrict_text,
    show,
    substitute,
)
from .cube_category import CubeMap, is_strictly_increasing, nontwisted_factorize, selection_indices
from .cubical_sets import (
    DEFAULT_DIM,
    MAX_DIM,
    CellInstance,
    ComplexError,
    Edge,
    LabelledCubicalSet,
    coskeleton_1,
    cube_skeleton,
    faces,
    freely_generate,
    is_isomorphic,
    labelled_cube_skeleton,
    skeleton,
)
from .label_objects import TAU, Alphabet, MarkedAlphabet, is_mark

DEFAULT_FUEL = 8


class SemanticsError(ValueError):
    pass


# ---------------------------------------------------------------- fibered products


def _require_one_dim(K: LabelledCubicalSet) -> None:
    if any(K.cells.get(p) for p in range(2, K.max_dim + 1)):
        raise SemanticsError("expected a 1-dimensional complex")


def _base(alphabet) -> Alphabet:
    return alphabet.base if isinstance(alphabet, MarkedAlphabet) else alphabet


def _synchronizes(alphabet: Alphabet, x, y) -> bool:
    if x == TAU or y == TAU or is_mark(x) or is_mark(y):
        return False
    return alphabet.co(x) == y


def _cube_dim(K: LabelledCubicalSet) -> int | None:
    n = len(K.vertices).bit_length() - 1
    if set(K.vertices) != set(range(1 << n)):
        return None
    for e in K.edges.values():
        if e.src & ~e.tgt or bin(e.tgt ^ e.src).count("1") != 1:
            return None
    return n


def _join(d1, d2):
    return None if d1 is None or d2 is None else par_text(d1, d2)


def _fibered(K: LabelledCubicalSet, L: LabelledCubicalSet, marked: bool):
    """Fibered product graph plus the key of every edge.

    Vertex (k, l) gets id ``index(k) + |K_0| * index(l)``, so the product of
    two cube skeleta is numbered like the cube of the summed dimension.  Edge
    keys are ``("K", e, l)``, ``("L", k, f)`` and ``("S", e, f)``.
    """
    if _base(K.alphabet) != _base(L.alphabet):
        raise SemanticsError("alphabet mismatch")
    alphabet = _base(K.alphabet)
    kv, lv = sorted(K.vertices), sorted(L.vertices)
    kpos = {v: i for i, v in enumerate(kv)}
    lpos = {v: i for i, v in enumerate(lv)}

    def vid(k: int, l: int) -> int:
        return kpos[k] + len(kv) * lpos[l]

    m = n = 0
    if marked:
        m, n = _cube_dim(K), _cube_dim(L)
        if m is None or n is None:
            raise SemanticsError("marked product needs cube skeleta")
    vertices = {vid(k, l): _join(K.vertices[k], L.vertices[l]) for l in lv for k in kv}
    keys: list[tuple] = []
    edges: dict[int, Edge] = {}
    marks = set()
    ke, le = sorted(K.edges.items()), sorted(L.edges.items())
    for k_id, e in ke:
        for l in lv:
            keys.append(("K", k_id, l))
            edges[len(edges)] = Edge(vid(e.src, l), vid(e.tgt, l), e.label)
    for f_id, f in le:
        for k in kv:
            keys.append(("L", k, f_id))
            edges[len(edges)] = Edge(vid(k, f.src), vid(k, f.tgt), f.label)
    for k_id, e in ke:
        for f_id, f in le:
            if not _synchronizes(alphabet, e.label, f.label):
                continue
            label = TAU
            if marked:
                r = (e.tgt ^ e.src).bit_length()
                s = m + (f.tgt ^ f.src).bit_length()
                label = (r, s)
                marks.add(label)
            keys.append(("S", k_id, f_id))
            edges[len(edges)] = Edge(vid(e.src, f.src), vid(e.tgt, f.tgt), label)
    initial = None
    if K.initial is not None and L.initial is not None:
        initial = vid(K.initial, L.initial)
    alpha = MarkedAlphabet(alphabet, frozenset(marks)) if marked else alphabet
    G = LabelledCubicalSet(K.model, 1, alpha, vertices, edges, {}, initial)
    return G, keys


def fibered_product(K: LabelledCubicalSet, L: LabelledCubicalSet) -> LabelledCubicalSet:
    """Synchronizing product of two 1-dimensional complexes."""
    _require_one_dim(K)
    _require_one_dim(L)
    return _fibered(K, L, False)[0]


def marked_fibered_product(K: LabelledCubicalSet, L: LabelledCubicalSet) -> LabelledCubicalSet:
    """As ``fibered_product``, synchronizations labelled by the flipped
    coordinates ``(r, s)`` instead of tau."""
    _require_one_dim(K)
    _require_one_dim(L)
    return _fibered(K, L, True)[0]


def unmark(K: LabelledCubicalSet) -> LabelledCubicalSet:
    """Read every mark as tau."""
    edges = {k: Edge(e.src, e.tgt, TAU if is_mark(e.label) else e.label) for k, e in K.edges.items()}
    return K.with_(edges=edges, alphabet=_base(K.alphabet))


# ---------------------------------------------------------------- directed coskeleta


def _cube_vertex_dim(K: LabelledCubicalSet) -> int:
    n = len(K.vertices).bit_length() - 1
    if set(K.vertices) != set(range(1 << n)):
        raise SemanticsError("vertex set is not a cube")
    return n


def _directed_filter(p: int, ordered: bool):
    ident = {}

    def accept(x: CellInstance) -> bool:
        x0 = CubeMap(x.dim, p, x.vertices)
        if not is_strictly_increasing(x0):
            return False
        mu = nontwisted_factorize(x0).mu
        if ordered:
            if x.dim not in ident:
                ident[x.dim] = CubeMap.identity(x.dim)
            return mu == ident[x.dim]
        idx = selection_indices(mu)
        return idx is not None and sorted(idx) == list(range(x.dim)) and mu.dst_dim == x.dim

    return accept


def directed_coskeleton(K: LabelledCubicalSet, D: int = DEFAULT_DIM) -> LabelledCubicalSet:
    """Cells of the box coskeleton whose vertex map is non-twisted after box."""
    p = _cube_vertex_dim(K)
    return coskeleton_1(K, "box", D, accept=_directed_filter(p, True))


def symmetric_directed_coskeleton(K: LabelledCubicalSet, D: int = DEFAULT_DIM) -> LabelledCubicalSet:
    """Same with coordinate selections in any order (sym model)."""
    p = _cube_vertex_dim(K)
    return coskeleton_1(K.with_(model="sym"), "sym", D, accept=_directed_filter(p, False))


# ---------------------------------------------------------------- tensor


@lru_cache(maxsize=4096)
def _local_cells(model: str, D: int, m: int, lam_x: tuple, n: int, lam_y: tuple, alphabet: Alphabet):
    Kx = labelled_cube_skeleton(m, lam_x, alphabet)
    Ly = labelled_cube_skeleton(n, lam_y, alphabet)
    if model == "hat":
        G, keys = _fibered(Kx, Ly, True)
        C = coskeleton_1(G.with_(model="hat"), "hat", D)
    else:
        G, keys = _fibered(Kx, Ly, False)
        C = directed_coskeleton(G, D) if model == "box" else symmetric_directed_coskeleton(G, D)
    out = []
    for p in range(2, D + 1):
        for x in sorted(C.cells[p]):
            out.append((p, x.vertices, tuple(keys[e] for e in x.edges)))
    return tuple(out)


def _injective(x: CellInstance) -> bool:
    return len(set(x.vertices)) == len(x.vertices)


def generating_cells(K: LabelledCubicalSet) -> list[CellInstance]:
    """Cells with injective vertex map that are not a face of such a cell.

    Degenerate cells (transverse pullbacks) are skipped: their local products
    contain cells that do not survive transport through the cell they come
    from, and every legitimate contribution is already produced there.
    """
    inj = {p: [x for x in K.cells[p] if _injective(x)] for p in range(2, K.max_dim + 1)}
    covered = {y for p in inj for x in inj[p] for y in faces(x)}
    covered_edges = {x.edges[k] for x in inj.get(2, ()) for k in range(4)}
    covered_vertices = {e.src for e in K.edges.values()} | {e.tgt for e in K.edges.values()}
    out = [CellInstance(0, (v,), ()) for v in sorted(K.vertices) if v not in covered_vertices]
    out += [c for c in K.cells_of_dim(1) if c.edges[0] not in covered_edges]
    for p in inj:
        out += [x for x in sorted(inj[p]) if x not in covered]
    return out


def tensor(
    K: LabelledCubicalSet,
    L: LabelledCubicalSet,
    model: str | None = None,
    D: int | None = None,
) -> LabelledCubicalSet:
    """Parallel composition: fibered product of 1-skeleta, higher cells from
    local products of cell pairs transported into place."""
    model = model or K.model
    if K.model != model or L.model != model:
        raise SemanticsError("both factors must live in the requested model")
    D = DEFAULT_DIM if D is None else D
    if D > MAX_DIM:
        raise SemanticsError(f"dimension {D} above {MAX_DIM}")
    G, keys = _fibered(skeleton(K), skeleton(L), False)
    alphabet = _base(K.alphabet)
    key_id = {k: i for i, k in enumerate(keys)}
    kpos = {v: i for i, v in enumerate(sorted(K.vertices))}
    lpos = {v: i for i, v in enumerate(sorted(L.vertices))}
    nk = len(kpos)
    cells: dict[int, set[CellInstance]] = {p: set() for p in range(2, D + 1)}
    gens_l = generating_cells(L)
    for x in generating_cells(K):
        m = x.dim
        lam_x = K.label_tuple(x) if m else ()
        mask = (1 << m) - 1
        for y in gens_l:
            n = y.dim
            if m + n < 2:
                continue
            lam_y = L.label_tuple(y) if n else ()
            for p, lverts, lkeys in _local_cells(model, D, m, lam_x, n, lam_y, alphabet):
                verts = tuple(
                    kpos[x.vertices[v & mask]] + nk * lpos[y.vertices[v >> m]] for v in lverts
                )
                edges = []
                for kind, a, b in lkeys:
                    if kind == "K":
                        edges.append(key_id[("K", x.edges[a], y.vertices[b])])
                    elif kind == "L":
                        edges.append(key_id[("L", x.vertices[a], y.edges[b])])
                    else:
                        edges.append(key_id[("S", x.edges[a], y.edges[b])])
                cells[p].add(CellInstance(p, verts, tuple(edges)))
    return LabelledCubicalSet(model, D, alphabet, G.vertices, G.edges, cells, G.initial)


# ---------------------------------------------------------------- CCS


def restrict(K: LabelledCubicalSet, a: str) -> LabelledCubicalSet:
    """Remove a and its co-name, with every cell using such an edge."""
    if a == TAU:
        raise SemanticsError("tau cannot be restricted")
    alphabet = _base(K.alphabet)
    gone = {a, alphabet.co(a)} if a in alphabet else {a}
    edges = {k: e for k, e in K.edges.items() if e.label not in gone}
    cells = {p: frozenset(x for x in cs if all(e in edges for e in x.edges)) for p, cs in K.cells.items()}
    verts = {v: None if d is None else restrict_text(a, d) for v, d in K.vertices.items()}
    return K.with_(vertices=verts, edges=edges, cells=cells)


class Denotation(NamedTuple):
    complex: LabelledCubicalSet
    converged: bool
    stages: int = 0


def _renumber(K: LabelledCubicalSet, vmap: dict[int, int], eoff: int):
    edges = {k + eoff: Edge(vmap[e.src], vmap[e.tgt], e.label) for k, e in K.edges.items()}
    cells = {
        p: {CellInstance(p, tuple(vmap[v] for v in x.vertices), tuple(e + eoff for e in x.edges)) for x in cs}
        for p, cs in K.cells.items()
    }
    return edges, cells


def _merge_cells(*parts):
    out: dict[int, set] = {}
    for part in parts:
        for p, cs in part.items():
            out.setdefault(p, set()).update(cs)
    return out


def term_alphabet(t: Term) -> Alphabet:
    return Alphabet.from_names(sorted(action_names(t)))


def denote(
    t: Term,
    model: str = "box",
    D: int = DEFAULT_DIM,
    fuel: int = DEFAULT_FUEL,
    alphabet: Alphabet | None = None,
) -> Denotation:
    """Decorated complex of a closed guarded term in the given model."""
    check_guarded(t)
    if fuel < 1:
        raise SemanticsError("fuel must be at least 1")
    if model not in ("box", "sym", "hat"):
        raise SemanticsError(f"unknown model {model!r}")
    alphabet = alphabet or term_alphabet(t)
    return _Denoter(model, D, fuel, alphabet).run(t)


@dataclass
class _Denoter:
    model: str
    D: int
    fuel: int
    alphabet: Alphabet

    def run(self, t: Term) -> Denotation:
        self.converged = True
        self.stages = 0
        K = self.den(t)
        return Denotation(K, self.converged, self.stages)

    def point(self, deco: str) -> LabelledCubicalSet:
        return LabelledCubicalSet(self.model, self.D, self.alphabet, {0: deco}, {}, {}, 0)

    def den(self, t: Term) -> LabelledCubicalSet:
        if isinstance(t, Nil):
            return self.point(show(t))
        if isinstance(t, Prefix):
            K = self.den(t.body)
            vmap = {v: i + 1 for i, v in enumerate(sorted(K.vertices))}
            edges, cells = _renumber(K, vmap, 1)
            edges[0] = Edge(0, vmap[K.initial], t.action)
            verts = {vmap[v]: d for v, d in K.vertices.items()}
            verts[0] = show(t)
            return LabelledCubicalSet(self.model, self.D, self.alphabet, verts, edges, cells, 0)
        if isinstance(t, Sum):
            K, L = self.den(t.left), self.den(t.right)
            kmap = {K.initial: 0}
            for v in sorted(K.vertices):
                if v != K.initial:
                    kmap[v] = len(kmap)
            lmap = {L.initial: 0}
            for v in sorted(L.vertices):
                if v != L.initial:
                    lmap[v] = len(kmap) + len(lmap) - 1
            ke, kc = _renumber(K, kmap, 0)
            le, lc = _renumber(L, lmap, len(K.edges))
            verts = {kmap[v]: d for v, d in K.vertices.items()}
            verts.update({lmap[v]: d for v, d in L.vertices.items()})
            verts[0] = show(t)
            return LabelledCubicalSet(
                self.model, self.D, self.alphabet, verts, {**ke, **le}, _merge_cells(kc, lc), 0
            )
        if isinstance(t, Restrict):
            return restrict(self.den(t.body), t.name)
        if isinstance(t, Par):
            return tensor(self.den(t.left), self.den(t.right), self.model, self.D)
        if isinstance(t, Rec):
            return self.rec(t)
        if isinstance(t, Var):
            raise SemanticsError(f"free variable {t.name!r}")
        raise TypeError(f"not a CCS term: {t!r}")

    def rec(self, t: Rec) -> LabelledCubicalSet:
        approx: Term = Nil()
        prev = None
        done = False
        for stage in range(1, self.fuel + 1):
            approx = substitute(t.body, t.var, approx)
            K = self.den(approx)
            self.stages = max(self.stages, stage)
            if prev is not None and is_isomorphic(prev, K, decorations=False):
                done = True
                break
            prev = K
        if not done:
            self.converged = False
        verts = dict(K.vertices)
        verts[K.initial] = show(t)
        return K.with_(vertices=verts)


# ---------------------------------------------------------------- theorem checks


@dataclass(frozen=True)
class CavavraimentReport:
    m_word: tuple
    n_word: tuple
    D: int
    free_counts: list
    marked_counts: list
    unmarked_counts: list
    isomorphic: bool
    same_cells: bool
    strictly_smaller: bool
    extra_cells: tuple

    @property
    def ok(self) -> bool:
        return self.isomorphic


def cavavraiment_complexes(m_word: Sequence[str], n_word: Sequence[str], D: int | None = None, alphabet=None):
    """The three complexes compared by ``verify_cavavraiment``."""
    m, n = len(m_word), len(n_word)
    if m + n > 4:
        raise SemanticsError("m + n must be at most 4")
    D = min(max(m + n, 1), MAX_DIM) if D is None else D
    alphabet = alphabet or Alphabet.from_names([a for a in (*m_word, *n_word) if a != TAU])
    Kx, Ly = cube_skeleton(m_word, alphabet), cube_skeleton(n_word, alphabet)
    G = fibered_product(Kx, Ly)
    free = freely_generate(directed_coskeleton(G, D), "hat")
    marked = coskeleton_1(marked_fibered_product(Kx, Ly).with_(model="hat"), "hat", D)
    unmarked = coskeleton_1(G.with_(model="hat"), "hat", D)
    return free, unmark(marked), unmarked


def verify_cavavraiment(m_word: Sequence[str], n_word: Sequence[str], D: int | None = None, alphabet=None):
    free, marked, unmarked = cavavraiment_complexes(m_word, n_word, D, alphabet)
    same = free.cells == marked.cells and free.edges == marked.edges
    smaller = all(free.cells[p] <= unmarked.cells[p] for p in free.cells) and free.cells != unmarked.cells
    extra = tuple(sorted(x for p in unmarked.cells for x in unmarked.cells[p] - free.cells[p]))
    return CavavraimentReport(
        tuple(m_word),
        tuple(n_word),
        free.max_dim,
        free.counts(),
        marked.counts(),
        unmarked.counts(),
        is_isomorphic(free, marked),
        same,
        smaller,
        extra,
    )
