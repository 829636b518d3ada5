"""Shared graph builders and slow reference implementations.

Everything here is deliberately naive: plain-python BFS, itertools scans.
The point is to cross-check the package against code that shares none of its
machinery (no scipy distances, no bitmask tricks).
"""

from __future__ import annotations

import itertools
import random
from collections import deque

from mdim.graph import Graph, build_graph


# ---------------------------------------------------------------- builders

def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with the hub at vertex 0."""
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_graph(n: int) -> Graph:
    return build_graph(n, list(itertools.combinations(range(n), 2)))


def bowtie() -> Graph:
    """Two triangles sharing vertex 2."""
    return build_graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])


def two_triangles_bridge() -> Graph:
    """Triangles {0,1,2} and {3,4,5} joined by the bridge 2-3."""
    return build_graph(
        6,
        [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)],
    )


def triangle_chain(t: int) -> Graph:
    """t triangles in a row, consecutive ones sharing a vertex."""
    edges = []
    for i in range(t):
        a, b, c = 2 * i, 2 * i + 1, 2 * i + 2
        edges += [(a, b), (b, c), (a, c)]
    return build_graph(2 * t + 1, edges)


def random_connected(rng: random.Random, n: int, m: int) -> Graph:
    """Random connected graph: random spanning tree plus extra edges."""
    verts = list(range(n))
    rng.shuffle(verts)
    edges = set()
    for i in range(1, n):
        a, b = verts[rng.randrange(i)], verts[i]
        edges.add((min(a, b), max(a, b)))
    pool = [(i, j) for i in range(n) for j in range(i + 1, n)]
    rng.shuffle(pool)
    for e in pool:
        if len(edges) >= m:
            break
        edges.add(e)
    return build_graph(n, sorted(edges))


# ------------------------------------------------------- slow reference code

def naive_all_dists(g: Graph) -> list[list[int]]:
    """BFS from every vertex, no numpy/scipy involved."""
    out = []
    for s in range(g.n):
        dist = [-1] * g.n
        dist[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for w in g.adjacency[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    q.append(w)
        out.append(dist)
    return out


def naive_resolves(dists: list[list[int]], n: int, members) -> bool:
    vecs = {tuple(dists[v][w] for w in members) for v in range(n)}
    return len(vecs) == n


def naive_min_resolving(g: Graph) -> tuple[int, ...]:
    """Smallest resolving set by exhaustive scan over the naive distances."""
    dists = naive_all_dists(g)
    for size in range(g.n + 1):
        for combo in itertools.combinations(range(g.n), size):
            if naive_resolves(dists, g.n, combo):
                return combo
    raise AssertionError("the full vertex set always resolves")


def naive_is_gate(dists: list[list[int]], n: int, members, v: int) -> bool:
    """Direct transcription of the gate definition, scanning every vertex."""
    ms = sorted(set(members))
    for u in range(n):
        if u == v:
            continue
        if all(dists[u][w] == dists[u][v] + dists[v][w] for w in ms):
            return True
    return False
