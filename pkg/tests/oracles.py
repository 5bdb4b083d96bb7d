"""Brute-force reference computations, written independently of the library.

Vertices here are bit tuples (eps_1, ..., eps_n) rather than packed ints.
"""
from __future__ import annotations

import itertools


def cube(n):
    return list(itertools.product((0, 1), repeat=n))


def leq(u, v):
    return all(a <= b for a, b in zip(u, v))


def dist(u, v):
    return sum(a != b for a, b in zip(u, v))


def covers(n):
    """(u, v) with v = u plus one coordinate switched on."""
    return [(u, v) for u in cube(n) for v in cube(n) if leq(u, v) and dist(u, v) == 1]


def is_ap(table, m):
    return all(leq(table[u], table[v]) and dist(table[u], table[v]) == 1 for u, v in covers(m))


def brute_ap_maps(m, n):
    """Every adjacency-preserving map, by exhausting all vertex tables."""
    src, dst = cube(m), cube(n)
    out = []
    for images in itertools.product(dst, repeat=len(src)):
        table = dict(zip(src, images))
        if is_ap(table, m):
            out.append(table)
    return out


def dfs_ap_count(m, n):
    """Count AP maps by extending along vertices sorted by rank (for sizes
    where exhaustion is too slow)."""
    src = sorted(cube(m), key=lambda u: (sum(u), u))
    dst = cube(n)
    preds = {v: [u for u, w in covers(m) if w == v] for v in src}
    table = {}

    def safe(k):
        if k == len(src):
            return 1
        v = src[k]
        total = 0
        for w in dst:
            if all(leq(table[u], w) and dist(table[u], w) == 1 for u in preds[v]):
                table[v] = w
                total += safe(k + 1)
                del table[v]
        return total

    return safe(0)


def box_maps(m, n):
    """Composites of faces: choose m free output positions (in order) and
    constants elsewhere."""
    out = []
    for free in itertools.combinations(range(n), m):
        rest = [k for k in range(n) if k not in free]
        for consts in itertools.product((0, 1), repeat=len(rest)):
            def f(u, free=free, rest=rest, consts=consts):
                w = [0] * n
                for k, pos in enumerate(free):
                    w[pos] = u[k]
                for pos, c in zip(rest, consts):
                    w[pos] = c
                return tuple(w)

            out.append({u: f(u) for u in cube(m)})
    return out


def to_int(bits):
    return sum(b << i for i, b in enumerate(bits))


def table_tuple(table, m):
    return tuple(to_int(table[u]) for u in sorted(cube(m), key=to_int))


def sigma(i, n):
    def f(u):
        u = list(u)
        u[i - 1], u[i] = u[i], u[i - 1]
        return tuple(u)

    return {u: f(u) for u in cube(n)}


def gamma(i, n):
    def f(u):
        u = list(u)
        a, b = u[i - 1], u[i]
        u[i - 1], u[i] = max(a, b), min(a, b)
        return tuple(u)

    return {u: f(u) for u in cube(n)}


def delta(i, a, n):
    """[n-1] -> [n]"""
    return {u: u[: i - 1] + (a,) + u[i - 1:] for u in cube(n - 1)}


def after(g, f):
    """g o f on dict tables."""
    return {u: g[w] for u, w in f.items()}


def naive_bar(bound):
    """Close faces, sigma and gamma under all composable pairs."""
    maps = {}

    def add(f, m, n):
        key = (m, n, tuple(sorted(f.items())))
        if key not in maps:
            maps[key] = (m, n, f)
            return True
        return False

    for n in range(bound + 1):
        add({u: u for u in cube(n)}, n, n)
        for i in range(1, n):
            add(sigma(i, n), n, n)
            add(gamma(i, n), n, n)
        for i in range(1, n + 1):
            for a in (0, 1):
                add(delta(i, a, n), n - 1, n)
    changed = True
    while changed:
        changed = False
        items = list(maps.values())
        for (m, k, f), (k2, n, g) in itertools.product(items, items):
            if k == k2 and add(after(g, f), m, n):
                changed = True
    out = {}
    for m, n, f in maps.values():
        out.setdefault((m, n), set()).add(table_tuple(f, m))
    return out


def monotone_functions(p):
    pts = cube(p)
    out = []
    for vals in itertools.product((0, 1), repeat=len(pts)):
        f = dict(zip(pts, vals))
        if all(f[u] <= f[v] for u, v in covers(p)):
            out.append(f)
    return out


def non_constant_monotone_count(p):
    return sum(1 for f in monotone_functions(p) if len(set(f.values())) == 2)


def hat_realizable_by_pullback(p, labels, ap_endomaps):
    """labels indexed like covers(p) sorted by the library edge order; a
    labelling is realizable when it is a word labelling seen through some
    adjacency-preserving endomap of [p]."""
    letters = sorted(set(labels), key=repr)
    for table in ap_endomaps:
        for word in itertools.product(letters, repeat=p):
            if all(
                word[_flipped(table[u], table[v])] == lab
                for (u, v), lab in zip(library_edges(p), labels)
            ):
                return True
    return False


def _flipped(a, b):
    return next(k for k in range(len(a)) if a[k] != b[k])


def library_edges(p):
    """Edges of [p] in the library's canonical order, as bit tuples."""
    from hdaccs.cube_category import cube_edges, to_bits

    return [(to_bits(u, p), to_bits(v, p)) for u, v, _ in cube_edges(p)]


def path_classes_by_components(edges, relations, alpha, beta):
    """Connected components of the one-step rewriting graph on paths."""
    import networkx as nx

    out_edges = {}
    for k, (s, t) in edges.items():
        out_edges.setdefault(s, []).append(k)
    paths = []

    def walk(v, acc):
        if v == beta and acc:
            paths.append(tuple(acc))
        for k in out_edges.get(v, ()):
            walk(edges[k][1], acc + [k])

    walk(alpha, [])
    g = nx.Graph()
    g.add_nodes_from(paths)
    for p in paths:
        for r1, r2 in relations:
            for a, b in ((r1, r2), (r2, r1)):
                for i in range(len(p) - 1):
                    if p[i : i + 2] == a:
                        g.add_edge(p, p[:i] + b + p[i + 2 :])
    return nx.number_connected_components(g)
