"""Immutable undirected graphs on dense integer vertices, plus shortest-path distances."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path


class GraphError(ValueError):
    """Malformed graph input (bad edge, bad vertex id, disconnected where connectivity is required)."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with vertices 0..n-1 and sorted adjacency lists.

    Instances are value-like and never mutated; build them with :func:`build_graph`.
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    edge_count: int

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        if not (0 <= u < self.n and 0 <= v < self.n):
            return False
        a = self.adjacency[u]
        lo, hi = 0, len(a)
        while lo < hi:
            mid = (lo + hi) // 2
            if a[mid] < v:
                lo = mid + 1
            else:
                hi = mid
        return lo < len(a) and a[lo] == v

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield each edge once as (u, v) with u < v, in sorted order."""
        for u in range(self.n):
            for v in self.adjacency[u]:
                if u < v:
                    yield (u, v)


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Validate and freeze an edge list into a :class:`Graph`.

    Rejects vertex ids outside 0..n-1, self-loops and duplicate edges; the error
    message names the offending pair.
    """
    if n < 0:
        raise GraphError(f"vertex count must be non-negative, got {n}")
    adj: list[list[int]] = [[] for _ in range(n)]
    seen: set[tuple[int, int]] = set()
    count = 0
    for e in edges:
        try:
            u, v = e
        except (TypeError, ValueError):
            raise GraphError(f"edge {e!r} is not a pair") from None
        if not (0 <= u < n) or not (0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) uses a vertex outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop ({u}, {v}) is not allowed")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise GraphError(f"duplicate edge ({u}, {v})")
        seen.add(key)
        adj[u].append(v)
        adj[v].append(u)
        count += 1
    return Graph(n=n, adjacency=tuple(tuple(sorted(a)) for a in adj), edge_count=count)


def is_connected(g: Graph) -> bool:
    """True iff the graph has one connected component (vacuously true for n <= 1)."""
    if g.n <= 1:
        return True
    seen = bytearray(g.n)
    seen[0] = 1
    queue = deque([0])
    reached = 1
    while queue:
        u = queue.popleft()
        for v in g.adjacency[u]:
            if not seen[v]:
                seen[v] = 1
                reached += 1
                queue.append(v)
    return reached == g.n


def bfs_distances(g: Graph, source: int) -> list[int]:
    """Hop distances from `source` to every vertex, by plain breadth-first search.

    Raises GraphError if some vertex is unreachable.
    """
    if not (0 <= source < g.n):
        raise GraphError(f"source {source} outside 0..{g.n - 1}")
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u]
        for v in g.adjacency[u]:
            if dist[v] < 0:
                dist[v] = du + 1
                queue.append(v)
    if any(d < 0 for d in dist):
        bad = dist.index(-1)
        raise GraphError(f"vertex {bad} is unreachable from {source}")
    return dist


@dataclass(frozen=True)
class DistanceMatrix:
    """All-pairs hop distances as a read-only (n, n) integer array."""

    n: int
    dist: np.ndarray

    def __getitem__(self, uv: tuple[int, int]) -> int:
        return int(self.dist[uv])


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    """All-pairs shortest-path matrix of a connected graph.

    Backed by scipy's sparse BFS/Dijkstra so it stays fast on graphs with a few
    thousand vertices; `bfs_distances` remains the reference implementation.
    """
    if g.n == 0:
        mat = np.zeros((0, 0), dtype=np.int32)
        mat.setflags(write=False)
        return DistanceMatrix(0, mat)
    rows: list[int] = []
    cols: list[int] = []
    for u in range(g.n):
        for v in g.adjacency[u]:
            rows.append(u)
            cols.append(v)
    adj = csr_matrix(
        (np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(g.n, g.n)
    )
    raw = shortest_path(adj, method="D", unweighted=True)
    if np.isinf(raw).any():
        raise GraphError("graph is not connected")
    mat = raw.astype(np.int32)
    mat.setflags(write=False)
    return DistanceMatrix(g.n, mat)
