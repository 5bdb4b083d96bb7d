"""Alphabets, word labels and the realizability oracle for edge labellings."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Hashable, Iterable, Mapping, Sequence

from .cube_category import cube_edges

TAU = "tau"
MODELS = ("box", "sym", "hat")
ORACLE_BOUND = 4

Label = Hashable
Word = tuple


class AlphabetError(ValueError):
    pass


def co_name(name: str) -> str:
    """CCS spelling of the complementary action."""
    return name[1:] if name.startswith("~") else "~" + name


@dataclass(frozen=True)
class Alphabet:
    """Letters with a distinguished silent letter and an involution on the rest."""

    letters: frozenset
    pairs: frozenset = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if TAU not in self.letters:
            raise AlphabetError("the alphabet must contain tau")
        seen: dict[str, str] = {}
        for a, b in self.pairs:
            if TAU in (a, b):
                raise AlphabetError("tau has no co-name")
            if a not in self.letters or b not in self.letters:
                raise AlphabetError(f"pair ({a}, {b}) uses unknown letters")
            for x, y in ((a, b), (b, a)):
                if seen.setdefault(x, y) != y:
                    raise AlphabetError(f"letter {x} paired twice")
        missing = set(self.letters) - {TAU} - set(seen)
        if missing:
            raise AlphabetError(f"no co-name for {sorted(missing)}")

    @classmethod
    def from_names(cls, names: Iterable[str]) -> "Alphabet":
        """CCS alphabet: each name ``a`` together with ``~a``, plus tau."""
        letters = {TAU}
        pairs = set()
        for n in names:
            if n == TAU:
                continue
            base = n[1:] if n.startswith("~") else n
            letters |= {base, "~" + base}
            pairs.add((base, "~" + base))
        return cls(frozenset(letters), frozenset(pairs))

    @property
    def involution(self) -> dict[str, str]:
        out = {}
        for a, b in self.pairs:
            out[a], out[b] = b, a
        return out

    def co(self, a: str) -> str:
        if a == TAU:
            raise AlphabetError("tau has no co-name")
        try:
            return self.involution[a]
        except KeyError:
            raise AlphabetError(f"unknown letter {a!r}") from None

    def __contains__(self, label: object) -> bool:
        return label in self.letters

    def union(self, other: "Alphabet") -> "Alphabet":
        return Alphabet(self.letters | other.letters, self.pairs | other.pairs)

    def sorted_letters(self) -> list[str]:
        return sorted(self.letters)


def involution(alphabet: Alphabet, a: str) -> str:
    return alphabet.co(a)


def is_mark(label: object) -> bool:
    return isinstance(label, tuple) and len(label) == 2 and all(isinstance(x, int) for x in label)


@dataclass(frozen=True)
class MarkedAlphabet:
    """A base alphabet extended by opaque marks ``(r, s)``."""

    base: Alphabet
    marks: frozenset = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        for m in self.marks:
            if not is_mark(m) or min(m) < 1:
                raise AlphabetError(f"bad mark {m!r}")

    @property
    def letters(self) -> frozenset:
        return self.base.letters | self.marks

    def co(self, a: str) -> str:
        if is_mark(a):
            raise AlphabetError("marks have no co-name")
        return self.base.co(a)

    def __contains__(self, label: object) -> bool:
        return label in self.base.letters or label in self.marks


@dataclass(frozen=True)
class EdgeLabelling:
    """Labels of the edges of [p], indexed like ``cube_edges(p)``."""

    dim: int
    labels: tuple

    def __post_init__(self) -> None:
        if len(self.labels) != len(cube_edges(self.dim)):
            raise ValueError("labelling must cover every edge of the cube")

    @classmethod
    def from_function(cls, p: int, fn) -> "EdgeLabelling":
        """``fn(low, coordinate)`` gives the label of the edge leaving ``low``."""
        return cls(p, tuple(fn(u, i) for u, _, i in cube_edges(p)))

    @classmethod
    def of_word(cls, word: Sequence[Label]) -> "EdgeLabelling":
        return cls.from_function(len(word), lambda u, i: word[i])


def word_face(w: Word, i: int, alpha: int) -> Word:
    """Delete letter i (the same for both alpha)."""
    if not 1 <= i <= len(w) or alpha not in (0, 1):
        raise IndexError("face index out of range")
    return tuple(w[: i - 1]) + tuple(w[i:])


def word_symmetry(w: Word, i: int) -> Word:
    if not 1 <= i <= len(w) - 1:
        raise IndexError("symmetry index out of range")
    w = tuple(w)
    return w[: i - 1] + (w[i], w[i - 1]) + w[i + 1:]


@lru_cache(maxsize=None)
def _monotone_functions(p: int) -> tuple[tuple[int, ...], ...]:
    # split on the last coordinate: f = (f0 on the lower half, f1 on the upper)
    if p == 0:
        return ((0,), (1,))
    lower = _monotone_functions(p - 1)
    return tuple(f0 + f1 for f0 in lower for f1 in lower if all(a <= b for a, b in zip(f0, f1)))


@lru_cache(maxsize=None)
def _flip_sets(p: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    edges = cube_edges(p)
    out = []
    for f in _monotone_functions(p):
        if len(set(f)) < 2:
            continue
        mask = 0
        for k, (u, v, _) in enumerate(edges):
            if f[u] != f[v]:
                mask |= 1 << k
        out.append((f, mask))
    out.sort(key=lambda t: (bin(t[1]).count("1"), t[0]))
    return tuple(out)


def monotone_flip_sets(p: int) -> list[tuple[tuple[int, ...], frozenset[int]]]:
    """Non-constant monotone boolean functions on [p] with their flip edges.

    Edges are given by their index in ``cube_edges(p)``.
    """
    if not 0 <= p <= ORACLE_BOUND:
        raise ValueError(f"p={p} outside the oracle bound {ORACLE_BOUND}")
    return [(f, frozenset(k for k in range(p << max(p - 1, 0)) if mask >> k & 1)) for f, mask in _flip_sets(p)]


def _word_of(lam: EdgeLabelling) -> tuple | None:
    word: list = [None] * lam.dim
    for (_, _, i), a in zip(cube_edges(lam.dim), lam.labels):
        if word[i] is None:
            word[i] = a
        elif word[i] != a:
            return None
    return tuple(word)


def _partitions(p: int, labels: tuple, first_only: bool) -> list[tuple[tuple[tuple[int, ...], Label], ...]]:
    n_edges = len(labels)
    full = (1 << n_edges) - 1
    usable = []
    for f, mask in _flip_sets(p):
        letters = {labels[k] for k in range(n_edges) if mask >> k & 1}
        if len(letters) == 1:
            usable.append((f, mask, letters.pop()))
    by_edge: list[list] = [[] for _ in range(n_edges)]
    for item in usable:
        for k in range(n_edges):
            if item[1] >> k & 1:
                by_edge[k].append(item)
    found: list = []
    chosen: list = []

    def search(covered: int) -> bool:
        if covered == full:
            found.append(tuple(sorted((f, a) for f, _, a in chosen)))
            return first_only
        k = (~covered & (covered + 1)).bit_length() - 1
        for item in by_edge[k]:
            if item[1] & covered:
                continue
            chosen.append(item)
            if search(covered | item[1]):
                return True
            chosen.pop()
        return False

    search(0)
    return found


def witnessing_partitions(lam: EdgeLabelling) -> list[tuple[tuple[tuple[int, ...], Label], ...]]:
    """Every block decomposition of the edges of [p] into monotone flip sets
    compatible with ``lam`` (each as sorted (truth table, letter) pairs)."""
    if lam.dim > ORACLE_BOUND:
        raise ValueError("dimension above the oracle bound")
    return _partitions(lam.dim, lam.labels, False)


@lru_cache(maxsize=200_000)
def _hat_realizable(p: int, labels: tuple) -> bool:
    return bool(_partitions(p, labels, True))


def is_realizable(model: str, lam: EdgeLabelling) -> bool:
    if lam.dim > ORACLE_BOUND:
        raise ValueError("dimension above the oracle bound")
    if lam.dim <= 1:
        return True
    if model in ("box", "sym"):
        return _word_of(lam) is not None
    if model == "hat":
        return _hat_realizable(lam.dim, lam.labels)
    raise ValueError(f"unknown model {model!r}")


def realizable(model: str, lam: EdgeLabelling):
    """Canonical label of the unique filler of ``lam``, or ``None``.

    box/sym: the word read off the coordinates.  hat: the smallest sorted
    tuple of (truth table, letter) blocks among the witnessing partitions.
    """
    if model not in MODELS:
        raise ValueError(f"unknown model {model!r}")
    if lam.dim > ORACLE_BOUND:
        raise ValueError("dimension above the oracle bound")
    if model in ("box", "sym"):
        return _word_of(lam)
    parts = _partitions(lam.dim, lam.labels, False)
    return min(parts) if parts else None


def labelling_of_blocks(p: int, blocks: Iterable[tuple[tuple[int, ...], Label]]) -> EdgeLabelling:
    """Edge labelling induced by a block decomposition."""
    labels: list = [None] * len(cube_edges(p))
    for f, a in blocks:
        for k, (u, v, _) in enumerate(cube_edges(p)):
            if f[u] != f[v]:
                if labels[k] is not None:
                    raise ValueError("blocks overlap")
                labels[k] = a
    if any(x is None for x in labels):
        raise ValueError("blocks do not cover the cube")
    return EdgeLabelling(p, tuple(labels))


def pull_back(lam: EdgeLabelling, mu) -> EdgeLabelling:
    """Labelling of [q] seen through an adjacency-preserving ``mu: [q] -> [p]``."""
    from .cube_category import edge_index

    idx = edge_index(lam.dim)
    return EdgeLabelling.from_function(
        mu.src_dim, lambda u, i: lam.labels[idx[(mu.table[u], mu.table[u | 1 << i])]]
    )


def relabel(lam: EdgeLabelling, mapping: Mapping) -> EdgeLabelling:
    return EdgeLabelling(lam.dim, tuple(mapping.get(a, a) for a in lam.labels))


def labels_realizable(model: str, p: int, labels: tuple) -> bool:
    """Fast path of ``is_realizable`` on a raw label tuple."""
    if p <= 1:
        return True
    if p > ORACLE_BOUND:
        raise ValueError("dimension above the oracle bound")
    if model == "hat":
        return _hat_realizable(p, labels)
    if model in ("box", "sym"):
        return _coordinate_constant(p, labels)
    raise ValueError(f"unknown model {model!r}")


@lru_cache(maxsize=200_000)
def _coordinate_constant(p: int, labels: tuple) -> bool:
    word: dict[int, Label] = {}
    for (_, _, i), a in zip(cube_edges(p), labels):
        if word.setdefault(i, a) != a:
            return False
    return True
