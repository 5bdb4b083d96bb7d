"""Maps between hypercube posets and the four categories of cubes.

A vertex of ``[n] = {0,1}^n`` is stored as an int whose bit ``i-1`` is the
coordinate ``eps_i``.  Helpers convert to and from bit tuples.  A ``CubeMap``
stores its full vertex table, so equality and composition are canonical.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Mapping, NamedTuple, Sequence

CATEGORIES = ("box", "sym", "bar", "hat")
DEFAULT_BOUND = 4


class DimensionError(ValueError):
    pass


class BoundExceeded(ValueError):
    pass


def popcount(v: int) -> int:
    return bin(v).count("1")


def to_bits(v: int, n: int) -> tuple[int, ...]:
    return tuple((v >> i) & 1 for i in range(n))


def from_bits(bits: Sequence[int]) -> int:
    v = 0
    for i, b in enumerate(bits):
        if b not in (0, 1):
            raise DimensionError(f"not a binary digit: {b!r}")
        v |= b << i
    return v


def distance(u: Sequence[int], v: Sequence[int]) -> int:
    """Number of coordinates where ``u`` and ``v`` differ."""
    if len(u) != len(v):
        raise DimensionError(f"vertices of different dimension: {len(u)} vs {len(v)}")
    return popcount(from_bits(u) ^ from_bits(v))


def cube_edges(p: int) -> tuple[tuple[int, int, int], ...]:
    """Edges of ``[p]`` as ``(low, high, coordinate)`` in canonical order."""
    return _cube_edges(p)


@lru_cache(maxsize=None)
def _cube_edges(p: int) -> tuple[tuple[int, int, int], ...]:
    out = []
    for u in range(1 << p):
        for i in range(p):
            if not u >> i & 1:
                out.append((u, u | 1 << i, i))
    return tuple(out)


@lru_cache(maxsize=None)
def edge_index(p: int) -> dict[tuple[int, int], int]:
    return {(u, v): k for k, (u, v, _) in enumerate(_cube_edges(p))}


@dataclass(frozen=True, order=True)
class CubeMap:
    """A set map ``[src_dim] -> [dst_dim]`` given by its vertex table."""

    src_dim: int
    dst_dim: int
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.table) != 1 << self.src_dim:
            raise DimensionError("table length must be 2**src_dim")
        top = 1 << self.dst_dim
        if any(not 0 <= w < top for w in self.table):
            raise DimensionError("table entry outside the target cube")

    @classmethod
    def identity(cls, n: int) -> "CubeMap":
        return cls(n, n, tuple(range(1 << n)))

    @classmethod
    def from_function(cls, m: int, n: int, fn: Callable[[tuple[int, ...]], Sequence[int]]) -> "CubeMap":
        """Build a map from a function on bit tuples."""
        return cls(m, n, tuple(from_bits(fn(to_bits(v, m))) for v in range(1 << m)))

    @classmethod
    def from_images(cls, m: int, n: int, images: Mapping[tuple[int, ...], Sequence[int]]) -> "CubeMap":
        return cls.from_function(m, n, lambda b: images[b])

    def __call__(self, v: int) -> int:
        return self.table[v]

    def apply(self, bits: Sequence[int]) -> tuple[int, ...]:
        if len(bits) != self.src_dim:
            raise DimensionError("vertex of wrong dimension")
        return to_bits(self.table[from_bits(bits)], self.dst_dim)

    def __matmul__(self, other: "CubeMap") -> "CubeMap":
        """``self @ other`` is the composite self∘other."""
        return compose(other, self)

    def projection(self, k: int) -> tuple[int, ...]:
        """Truth table of the k-th output coordinate (0-based)."""
        return tuple((w >> k) & 1 for w in self.table)

    def is_injective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    def rows(self) -> list[str]:
        def fmt(v: int, n: int) -> str:
            return "(" + ",".join(map(str, to_bits(v, n))) + ")"

        return [f"{fmt(v, self.src_dim)} -> {fmt(w, self.dst_dim)}" for v, w in enumerate(self.table)]

    def __str__(self) -> str:
        return "; ".join(self.rows())


def compose(f: CubeMap, g: CubeMap) -> CubeMap:
    """Return g∘f (apply ``f`` first)."""
    if f.dst_dim != g.src_dim:
        raise DimensionError(f"cannot compose [{f.src_dim}]->[{f.dst_dim}] with [{g.src_dim}]->[{g.dst_dim}]")
    return CubeMap(f.src_dim, g.dst_dim, tuple(g.table[w] for w in f.table))


def compose_all(*maps: CubeMap) -> CubeMap:
    """Composite of ``maps`` read as juxtaposition: compose_all(a, b, c) = a∘b∘c."""
    out = maps[-1]
    for m in reversed(maps[:-1]):
        out = compose(out, m)
    return out


def _check_index(i: int, lo: int, hi: int) -> None:
    if not lo <= i <= hi:
        raise DimensionError(f"index {i} outside [{lo}, {hi}]")


@lru_cache(maxsize=None)
def face_map(i: int, alpha: int, n: int) -> CubeMap:
    """δ_i^α : [n-1] -> [n], inserting ``alpha`` at position ``i``."""
    _check_index(i, 1, n)
    if alpha not in (0, 1):
        raise DimensionError("alpha must be 0 or 1")
    return CubeMap.from_function(n - 1, n, lambda b: b[: i - 1] + (alpha,) + b[i - 1:])


@lru_cache(maxsize=None)
def symmetry_map(i: int, n: int) -> CubeMap:
    """σ_i on [n]: swap coordinates i and i+1."""
    _check_index(i, 1, n - 1)
    return CubeMap.from_function(n, n, lambda b: b[: i - 1] + (b[i], b[i - 1]) + b[i + 1:])


@lru_cache(maxsize=None)
def transverse_degeneracy(i: int, n: int) -> CubeMap:
    """γ_i on [n]: replace coordinates i, i+1 by (max, min)."""
    _check_index(i, 1, n - 1)
    return CubeMap.from_function(
        n, n, lambda b: b[: i - 1] + (max(b[i - 1], b[i]), min(b[i - 1], b[i])) + b[i + 1:]
    )


def is_adjacency_preserving(f: CubeMap) -> bool:
    """Strictly increasing and sending distance-1 pairs to distance-1 pairs.

    Both conditions follow from checking covering pairs: each must map to a
    covering pair.
    """
    for u, v, _ in _cube_edges(f.src_dim):
        a, b = f.table[u], f.table[v]
        if a & ~b or popcount(b ^ a) != 1:
            return False
    return True


def is_strictly_increasing(f: CubeMap) -> bool:
    for u, v, _ in _cube_edges(f.src_dim):
        a, b = f.table[u], f.table[v]
        if a & ~b or a == b:
            return False
    return True


def _insert_constants(free: Sequence[int], base: int, v: int) -> int:
    out = base
    for k, pos in enumerate(free):
        if v >> k & 1:
            out |= 1 << pos
    return out


def _extract(free: Sequence[int], w: int) -> int:
    return sum(((w >> pos) & 1) << k for k, pos in enumerate(free))


def box_map(m: int, n: int, free: Sequence[int], base: int) -> CubeMap:
    """The composite of faces sending coordinate k of [m] to position free[k]."""
    return CubeMap(m, n, tuple(_insert_constants(free, base, v) for v in range(1 << m)))


def coordinate_permutation(perm: Sequence[int]) -> CubeMap:
    """The map whose output coordinate k is input coordinate perm[k] (0-based)."""
    m = len(perm)
    return CubeMap(m, m, tuple(sum(((v >> perm[k]) & 1) << k for k in range(m)) for v in range(1 << m)))


def _check_bound(m: int, n: int, bound: int) -> None:
    if m < 0 or n < 0:
        raise DimensionError("negative dimension")
    if m > bound or n > bound:
        raise BoundExceeded(f"dimensions ({m}, {n}) exceed enumeration bound {bound}")


def _box_hom(m: int, n: int) -> list[CubeMap]:
    out = []
    for free in itertools.combinations(range(n), m):
        fixed = [k for k in range(n) if k not in free]
        for vals in itertools.product((0, 1), repeat=len(fixed)):
            base = sum(b << k for k, b in zip(fixed, vals))
            out.append(box_map(m, n, free, base))
    return out


def _hat_hom(m: int, n: int) -> list[CubeMap]:
    # backtracking over vertices in increasing int order (a linear extension)
    size = 1 << m
    table = [0] * size
    out: list[CubeMap] = []

    def extend(v: int) -> None:
        if v == size:
            out.append(CubeMap(m, n, tuple(table)))
            return
        if v == 0:
            cands: Iterable[int] = range(1 << n)
        else:
            lows = [v ^ (1 << i) for i in range(m) if v >> i & 1]
            w0 = table[lows[0]]
            cands = [w0 | 1 << j for j in range(n) if not w0 >> j & 1]
            for u in lows[1:]:
                wu = table[u]
                cands = [c for c in cands if not wu & ~c and popcount(c ^ wu) == 1]
        for c in cands:
            table[v] = c
            extend(v + 1)

    extend(0)
    return out


def _sym_hom(m: int, n: int) -> list[CubeMap]:
    perms = [coordinate_permutation(p) for p in itertools.permutations(range(m))]
    return [compose(p, b) for b in _box_hom(m, n) for p in perms]


def generators(n: int) -> list[CubeMap]:
    """σ_i and γ_i on [n], in that order."""
    return [symmetry_map(i, n) for i in range(1, n)] + [transverse_degeneracy(i, n) for i in range(1, n)]


@lru_cache(maxsize=None)
def _bar_closure(bound: int) -> dict[tuple[int, int], frozenset[CubeMap]]:
    # every composite is a word in the generators, so post-composing each new
    # map with the generators out of its codomain reaches the fixpoint
    gens_from: dict[int, list[CubeMap]] = {n: list(generators(n)) for n in range(bound + 1)}
    for n in range(1, bound + 1):
        for i in range(1, n + 1):
            for alpha in (0, 1):
                gens_from[n - 1].append(face_map(i, alpha, n))
    homs: dict[tuple[int, int], set[CubeMap]] = {
        (a, b): set() for a in range(bound + 1) for b in range(bound + 1)
    }
    todo = [CubeMap.identity(n) for n in range(bound + 1)]
    for f in todo:
        homs[(f.src_dim, f.dst_dim)].add(f)
    while todo:
        f = todo.pop()
        for g in gens_from[f.dst_dim]:
            h = compose(f, g)
            s = homs[(h.src_dim, h.dst_dim)]
            if h not in s:
                s.add(h)
                todo.append(h)
    return {k: frozenset(v) for k, v in homs.items()}


def enumerate_hom(cat: str, m: int, n: int, bound: int = DEFAULT_BOUND) -> tuple[CubeMap, ...]:
    """The hom-set cat([m],[n]) in lexicographic table order."""
    if cat not in CATEGORIES:
        raise ValueError(f"unknown cube category {cat!r}")
    _check_bound(m, n, bound)
    return _hom_cached(cat, m, n, bound)


@lru_cache(maxsize=None)
def _hom_cached(cat: str, m: int, n: int, bound: int) -> tuple[CubeMap, ...]:
    if m > n:
        return ()
    if cat == "box":
        maps = _box_hom(m, n)
    elif cat == "sym":
        maps = _sym_hom(m, n)
    elif cat == "hat":
        maps = _hat_hom(m, n)
    else:
        maps = list(_bar_closure(bound)[(m, n)])
    return tuple(sorted(set(maps), key=lambda f: f.table))


@lru_cache(maxsize=None)
def hom_set(cat: str, m: int, n: int, bound: int = DEFAULT_BOUND) -> frozenset[CubeMap]:
    return frozenset(enumerate_hom(cat, m, n, bound))


def belongs_to(cat: str, f: CubeMap, bound: int = DEFAULT_BOUND) -> bool:
    """Membership of ``f`` in a cube category (bar is decided by enumeration)."""
    if not is_adjacency_preserving(f):
        return False
    if cat == "hat":
        return True
    if cat == "sym":
        return f.is_injective()
    if cat == "box":
        return factorize(f).psi == CubeMap.identity(f.src_dim)
    if cat == "bar":
        return f in hom_set("bar", f.src_dim, f.dst_dim, bound)
    raise ValueError(f"unknown cube category {cat!r}")


class Factorization(NamedTuple):
    psi: CubeMap
    phi: CubeMap


def factorize(f: CubeMap) -> Factorization:
    """Split an adjacency-preserving map as phi∘psi, psi an endomap, phi in box."""
    if not is_adjacency_preserving(f):
        raise ValueError("map is not adjacency-preserving")
    m, n = f.src_dim, f.dst_dim
    bottom, top = f.table[0], f.table[-1]
    free = [k for k in range(n) if (top & ~bottom) >> k & 1]
    phi = box_map(m, n, free, bottom)
    psi = CubeMap(m, m, tuple(_extract(free, w) for w in f.table))
    return Factorization(psi, phi)


class NonTwistedFactorization(NamedTuple):
    mu: CubeMap
    phi: CubeMap
    psi: CubeMap

    @property
    def reduced_dim(self) -> int:
        return self.mu.dst_dim


def nontwisted_factorize(x: CubeMap) -> NonTwistedFactorization:
    """Write a strictly increasing map as psi∘phi∘mu.

    mu gathers the distinct non-constant coordinate functions (each class
    represented by its first index), phi repeats them, psi inserts constants.
    """
    if not is_strictly_increasing(x):
        raise ValueError("map is not strictly increasing")
    p, r = x.src_dim, x.dst_dim
    size = 1 << p
    proj = [x.projection(k) for k in range(r)]
    const0, const1 = (0,) * size, (1,) * size
    active = [k for k in range(r) if proj[k] not in (const0, const1)]
    classes: list[tuple[int, ...]] = []
    class_of: list[int] = []
    for k in active:
        if proj[k] not in classes:
            classes.append(proj[k])
        class_of.append(classes.index(proj[k]))
    pp, q = len(classes), len(active)
    mu = CubeMap(p, pp, tuple(sum(g[v] << t for t, g in enumerate(classes)) for v in range(size)))
    phi = CubeMap(pp, q, tuple(sum(((e >> c) & 1) << k for k, c in enumerate(class_of)) for e in range(1 << pp)))
    base = sum(1 << k for k in range(r) if proj[k] == const1)
    psi = box_map(q, r, active, base)
    return NonTwistedFactorization(mu, phi, psi)


def selection_indices(phi: CubeMap) -> list[int] | None:
    """If every output coordinate of phi copies an input coordinate, return them."""
    n = phi.src_dim
    coords = [tuple((v >> i) & 1 for v in range(1 << n)) for i in range(n)]
    out = []
    for k in range(phi.dst_dim):
        g = phi.projection(k)
        if g not in coords:
            return None
        out.append(coords.index(g))
    return out


def is_non_twisted(phi: CubeMap, ordered: bool = True) -> bool:
    """Coordinate selection using every input coordinate.

    With ``ordered`` the first appearances must also come in increasing order.
    """
    idx = selection_indices(phi)
    if idx is None or set(idx) != set(range(phi.src_dim)):
        return False
    if not ordered:
        return True
    firsts = list(dict.fromkeys(idx))
    return firsts == sorted(firsts)


@dataclass(frozen=True)
class Shell:
    p: int
    q: int
    faces: Mapping[tuple[int, int], CubeMap]
    vertex_map: CubeMap


def shell_from_faces(faces: Mapping[tuple[int, int], CubeMap]) -> Shell | None:
    """Glue a family ``{(i, alpha): f_i^alpha}`` of maps [p-1] -> [q].

    Returns ``None`` when a compatibility equation fails.
    """
    if not faces or len(faces) % 2:
        raise DimensionError("a shell needs 2p faces")
    p = len(faces) // 2
    if set(faces) != {(i, a) for i in range(1, p + 1) for a in (0, 1)}:
        raise DimensionError("faces must be indexed by (i, alpha), 1 <= i <= p")
    q = next(iter(faces.values())).dst_dim
    if p < 2 or q < 2:
        raise DimensionError("shells need p, q >= 2")
    for f in faces.values():
        if f.src_dim != p - 1 or f.dst_dim != q:
            raise DimensionError("face of the wrong dimension")
    for (i, a), (j, b) in itertools.product(faces, repeat=2):
        if i < j:
            lhs = compose(face_map(i, a, p - 1), faces[(j, b)])
            rhs = compose(face_map(j - 1, b, p - 1), faces[(i, a)])
            if lhs != rhs:
                return None
    half = 1 << (p - 1)
    low, high = faces[(p, 0)].table, faces[(p, 1)].table
    g = CubeMap(p, q, low + high)
    for (i, a), f in faces.items():
        if compose(face_map(i, a, p), g) != f:
            return None
    assert len(low) == half
    return Shell(p, q, dict(faces), g)


def faces_of(g: CubeMap) -> dict[tuple[int, int], CubeMap]:
    p = g.src_dim
    return {(i, a): compose(face_map(i, a, p), g) for i in range(1, p + 1) for a in (0, 1)}


class ShellCheck(NamedTuple):
    complete: bool
    shells: int
    witnesses: tuple[CubeMap, ...]


def is_shell_complete(cat: str, p: int, q: int, bound: int = DEFAULT_BOUND) -> ShellCheck:
    """Check that every shell ∂A[p] -> A[q] has its vertex map in ``cat``."""
    if not 2 <= p <= q:
        raise DimensionError("need 2 <= p <= q")
    _check_bound(p, q, bound)
    lower = enumerate_hom(cat, p - 1, q, bound)
    lower_set = frozenset(lower)
    full = hom_set(cat, p, q, bound)
    found = 0
    witnesses = []
    for f0, f1 in itertools.product(lower, repeat=2):
        g = CubeMap(p, q, f0.table + f1.table)
        faces = faces_of(g)
        if not all(f in lower_set for f in faces.values()):
            continue
        shell = shell_from_faces(faces)
        if shell is None:
            continue
        found += 1
        if shell.vertex_map not in full:
            witnesses.append(shell.vertex_map)
    witnesses.sort(key=lambda f: f.table)
    return ShellCheck(not witnesses, found, tuple(witnesses))


def pas_assez_gd_counterexample() -> CubeMap:
    """An adjacency-preserving endomap of [3] whose faces all lie in bar
    while the map itself does not."""
    images = {
        (0, 0, 0): (0, 0, 0),
        (1, 0, 0): (0, 0, 1),
        (0, 1, 0): (0, 0, 1),
        (0, 0, 1): (0, 0, 1),
        (1, 1, 0): (0, 1, 1),
        (0, 1, 1): (0, 1, 1),
        (1, 0, 1): (1, 0, 1),
        (1, 1, 1): (1, 1, 1),
    }
    return CubeMap.from_images(3, 3, images)


def monoid_closure(gens: Iterable[CubeMap], n: int) -> frozenset[CubeMap]:
    """Endomaps of [n] generated by ``gens`` (identity included)."""
    gens = list(gens)
    seen = {CubeMap.identity(n)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for f in frontier:
            for g in gens:
                h = compose(g, f)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return frozenset(seen)


class RelationCheck(NamedTuple):
    name: str
    ok: bool


def _relation_instances(n: int) -> list[tuple[str, CubeMap, CubeMap]]:
    s = lambda i, d=n: symmetry_map(i, d)  # noqa: E731
    g = lambda i, d=n: transverse_degeneracy(i, d)  # noqa: E731
    d = lambda i, a, k=n: face_map(i, a, k)  # noqa: E731
    c = compose_all
    ident = CubeMap.identity(n)
    rel: list[tuple[str, CubeMap, CubeMap]] = []
    idx = range(1, n)
    for i in idx:
        rel.append((f"s{i}s{i}=id", c(s(i), s(i)), ident))
        rel.append((f"g{i}g{i}=g{i}", c(g(i), g(i)), g(i)))
        rel.append((f"g{i}s{i}=g{i}", c(g(i), s(i)), g(i)))
        if i + 1 < n:
            rel.append((f"s{i}s{i+1}s{i}=s{i+1}s{i}s{i+1}", c(s(i), s(i + 1), s(i)), c(s(i + 1), s(i), s(i + 1))))
            rel.append((f"g{i}g{i+1}g{i}=g{i+1}g{i}g{i+1}", c(g(i), g(i + 1), g(i)), c(g(i + 1), g(i), g(i + 1))))
            rel.append(
                (f"s{i+1}g{i}s{i+1}=s{i}g{i+1}s{i}", c(s(i + 1), g(i), s(i + 1)), c(s(i), g(i + 1), s(i)))
            )
    for i, j in itertools.product(idx, idx):
        if abs(i - j) > 1:
            rel.append((f"s{i}s{j}=s{j}s{i}", c(s(i), s(j)), c(s(j), s(i))))
            rel.append((f"g{i}g{j}=g{j}g{i}", c(g(i), g(j)), c(g(j), g(i))))
            rel.append((f"g{j}s{i}=s{i}g{j}", c(g(j), s(i)), c(s(i), g(j))))
    # symmetries and transverse maps against faces [n-1] -> [n]
    for i, j, a in itertools.product(idx, range(1, n + 1), (0, 1)):
        lhs = c(s(i), d(j, a))
        if j < i:
            rhs = c(d(j, a), s(i - 1, n - 1))
        elif j == i:
            rhs = d(i + 1, a)
        elif j == i + 1:
            rhs = d(i, a)
        else:
            rhs = c(d(j, a), s(i, n - 1))
        rel.append((f"s{i}d{j}^{a}", lhs, rhs))
    for j, i, a in itertools.product(idx, range(1, n + 1), (0, 1)):
        lhs = c(g(j), d(i, a))
        if j < i - 1:
            rhs = c(d(i, a), g(j, n - 1))
        elif j >= i + 1:
            rhs = c(d(i, a), g(j - 1, n - 1))
        elif j == i - 1:
            rhs = d(i - a, a)
        else:
            rhs = d(i + 1 - a, a)
        rel.append((f"g{j}d{i}^{a}", lhs, rhs))
    return rel


def check_moore_relations(n: int, bound: int = DEFAULT_BOUND) -> list[RelationCheck]:
    """Evaluate every generator relation on [n] as a table identity."""
    if not 2 <= n <= bound:
        raise DimensionError("need 2 <= n <= bound")
    return [RelationCheck(name, lhs == rhs) for name, lhs, rhs in _relation_instances(n)]


# ---------------------------------------------------------------- extremal paths


def _path_of(perm: Sequence[int]) -> tuple[int, ...]:
    # perm is one-line notation over 1..n; path vertices e_{perm(1..k)}
    out, cur = [0], 0
    for x in perm:
        cur |= 1 << (x - 1)
        out.append(cur)
    return tuple(out)


def _maximal_chains(n: int) -> set[tuple[int, ...]]:
    chains = {(0,)}
    for _ in range(n):
        chains = {c + (c[-1] | 1 << j,) for c in chains for j in range(n) if not c[-1] >> j & 1}
    return chains


def _then_swap(perm: tuple[int, ...], i: int) -> tuple[int, ...]:
    # perm followed by the transposition (i i+1) acting on values
    return tuple(i + 1 if x == i else i if x == i + 1 else x for x in perm)


def bubble_sort_step(perm: tuple[int, ...], i: int) -> tuple[int, ...]:
    """Keep ``perm`` if value i precedes value i+1, else swap the two values."""
    if perm.index(i) < perm.index(i + 1):
        return perm
    return _then_swap(perm, i)


@dataclass(frozen=True)
class ExtremalPathReport:
    n: int
    paths: frozenset[tuple[int, ...]]
    bijection: dict[tuple[int, ...], tuple[int, ...]]
    is_bijective: bool
    symmetry_identity: bool
    sort_identity: bool
    sort_idempotent: bool

    @property
    def ok(self) -> bool:
        return self.is_bijective and self.symmetry_identity and self.sort_identity and self.sort_idempotent


def extremal_path_correspondence(n: int, bound: int = DEFAULT_BOUND) -> ExtremalPathReport:
    """Match maximal chains of [n] with permutations and check the actions.

    Permutations are one-line words; ``then_swap(perm, i)`` is perm followed by
    the transposition of i and i+1, which is the convention under which the
    σ_i and γ_i images of paths line up with the group and sort actions.
    """
    if not 0 <= n <= bound:
        raise BoundExceeded(f"n={n} outside [0, {bound}]")
    paths = frozenset(_maximal_chains(n))
    perms = list(itertools.permutations(range(1, n + 1)))
    bij = {pm: _path_of(pm) for pm in perms}
    bijective = set(bij.values()) == paths and len(set(bij.values())) == len(perms)
    sym_ok = sort_ok = idem_ok = True
    for pm in perms:
        path = bij[pm]
        for i in range(1, n):
            s, g = symmetry_map(i, n), transverse_degeneracy(i, n)
            if _path_of(_then_swap(pm, i)) != tuple(s(v) for v in path):
                sym_ok = False
            sorted_pm = bubble_sort_step(pm, i)
            if _path_of(sorted_pm) != tuple(g(v) for v in path):
                sort_ok = False
            if bubble_sort_step(sorted_pm, i) != sorted_pm:
                idem_ok = False
    return ExtremalPathReport(n, paths, bij, bijective, sym_ok, sort_ok, idem_ok)


# ---------------------------------------------------------------- conjecture experiment


def _word_relations(n: int) -> list[tuple[tuple[str, ...], tuple[str, ...]]]:
    rel: list[tuple[tuple[str, ...], tuple[str, ...]]] = []
    idx = range(1, n)
    for i in idx:
        s, g = f"s{i}", f"g{i}"
        rel += [((s, s), ()), ((g, g), (g,)), ((g, s), (g,))]
        if i + 1 < n:
            s2, g2 = f"s{i+1}", f"g{i+1}"
            rel += [((s, s2, s), (s2, s, s2)), ((g, g2, g), (g2, g, g2)), ((s2, g, s2), (s, g2, s))]
    for i, j in itertools.product(idx, idx):
        if abs(i - j) > 1:
            rel += [((f"s{i}", f"s{j}"), (f"s{j}", f"s{i}")), ((f"g{i}", f"g{j}"), (f"g{j}", f"g{i}"))]
            rel += [((f"g{j}", f"s{i}"), (f"s{i}", f"g{j}"))]
    return rel


@dataclass(frozen=True)
class ConjectureReport:
    n: int
    max_length: int
    closure_size: int
    maps_reached: int
    relation_classes: int
    classes_sound: bool

    @property
    def agree(self) -> bool:
        return self.closure_size == self.relation_classes


def conj0_experiment(n: int, max_length: int = 6) -> ConjectureReport:
    """Compare the monoid ⟨σ_i, γ_i⟩ on [n] with words modulo the relations.

    Words of length <= ``max_length`` are joined whenever one relation rewrite
    (inside the length bound) links them; the class count is reported next to
    the closure size.  This is evidence at one bound, nothing more.
    """
    if n not in (2, 3):
        raise DimensionError("experiment supports n in {2, 3}")
    names = [f"s{i}" for i in range(1, n)] + [f"g{i}" for i in range(1, n)]
    maps = dict(zip(names, generators(n)))
    closure = monoid_closure(maps.values(), n)
    words = [w for k in range(max_length + 1) for w in itertools.product(names, repeat=k)]
    index = {w: k for k, w in enumerate(words)}
    parent = list(range(len(words)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    rels = _word_relations(n)
    rels += [(b, a) for a, b in rels]
    for w in words:
        for lhs, rhs in rels:
            k = len(lhs)
            for pos in range(len(w) - k + 1):
                if w[pos:pos + k] == lhs:
                    w2 = w[:pos] + rhs + w[pos + k:]
                    if w2 in index:
                        ra, rb = find(index[w]), find(index[w2])
                        if ra != rb:
                            parent[ra] = rb

    def evaluate(w: tuple[str, ...]) -> CubeMap:
        return compose_all(*(maps[x] for x in w)) if w else CubeMap.identity(n)

    value_of: dict[int, CubeMap] = {}
    sound = True
    reached = set()
    for w in words:
        f = evaluate(w)
        reached.add(f)
        r = find(index[w])
        if value_of.setdefault(r, f) != f:
            sound = False
    return ConjectureReport(n, max_length, len(closure), len(reached), len(value_of), sound)
