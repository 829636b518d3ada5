"""Resolving-set primitives: membership test, gate test, and the brute-force oracle.

A set R resolves a graph when every vertex pair has different distance to some
member of R.  A vertex v is a "gate" for a set A when some other vertex u sees
the whole of A through v, i.e. d(u, w) = d(u, v) + d(v, w) for every w in A;
such u are called out-vertices.  Gates are what the tree solver has to avoid
when it glues partial solutions together at cut vertices.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .graph import DistanceMatrix, Graph

DEFAULT_ORACLE_LIMIT = 25
_ORACLE_LIMIT_ENV = "MDIM_BRUTE_LIMIT"


class OracleSizeError(ValueError):
    """Brute force refused: graph exceeds the size guard and no override was given."""


@dataclass(frozen=True)
class GateWitness:
    """A gate vertex together with its out-vertices, nearest first."""

    gate: int
    out_vertices: tuple[int, ...]


@dataclass(frozen=True)
class ResolveConstraints:
    """Side conditions for the brute-force search.

    must_include   vertices forced into every candidate set
    non_gate_at    demand that this vertex is not a gate of the returned set
                   (it must then also appear in must_include)
    max_size       give up beyond this cardinality instead of scanning to n
    """

    must_include: tuple[int, ...] = ()
    non_gate_at: int | None = None
    max_size: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "must_include", tuple(sorted(set(self.must_include))))
        if self.non_gate_at is not None and self.non_gate_at not in self.must_include:
            raise ValueError(
                f"non_gate_at vertex {self.non_gate_at} must be listed in must_include"
            )


def is_resolving_set(
    g: Graph, dm: DistanceMatrix, r: Iterable[int]
) -> tuple[bool, tuple[int, int] | None]:
    """Check whether `r` resolves the graph.

    Returns (True, None) on success, otherwise (False, pair) where pair is the
    lexicographically smallest unresolved vertex pair.
    """
    members = sorted(set(r))
    for v in members:
        if not (0 <= v < g.n):
            raise ValueError(f"vertex {v} outside 0..{g.n - 1}")
    if g.n <= 1:
        return True, None
    if not members:
        return False, (0, 1)
    vectors = dm.dist[:, members]
    order = np.lexsort(vectors.T[::-1])
    ordered = vectors[order]
    same = np.all(ordered[1:] == ordered[:-1], axis=1)
    if not same.any():
        return True, None
    # Walk duplicate runs to report the smallest offending pair deterministically.
    best: tuple[int, int] | None = None
    i = 0
    while i < len(same):
        if same[i]:
            j = i
            while j < len(same) and same[j]:
                j += 1
            group = sorted(int(order[k]) for k in range(i, j + 1))
            pair = (group[0], group[1])
            if best is None or pair < best:
                best = pair
            i = j
        else:
            i += 1
    return False, best


def _neighbor_is_out_vertex(dm_row_v, dm_rows, v: int, u: int, members: Sequence[int]) -> bool:
    du = dm_rows[u]
    duv = du[v]
    for w in members:
        if du[w] != duv + dm_row_v[w]:
            return False
    return True


def is_gate(g: Graph, dm: DistanceMatrix, a: Iterable[int], v: int) -> GateWitness | None:
    """Return the gate witness for v with respect to set `a`, or None.

    Existence only needs the neighbors of v to be inspected (an out-vertex can
    always be slid along its shortest path until it touches v); the returned
    witness nevertheless lists every out-vertex, sorted by distance to v.
    """
    members = sorted(set(a))
    if not (0 <= v < g.n):
        raise ValueError(f"vertex {v} outside 0..{g.n - 1}")
    d = dm.dist
    dv = d[v]
    found = False
    for u in g.adjacency[v]:
        if _neighbor_is_out_vertex(dv, d, v, u, members):
            found = True
            break
    if not found:
        return None
    outs = [
        u
        for u in range(g.n)
        if u != v and _neighbor_is_out_vertex(dv, d, v, u, members)
    ]
    outs.sort(key=lambda u: (int(dv[u]), u))
    return GateWitness(gate=v, out_vertices=tuple(outs))


def _has_gate(adjacency, d, members: Sequence[int], v: int) -> bool:
    """Existence-only gate test used by the hot inner loops."""
    dv = d[v]
    for u in adjacency[v]:
        du = d[u]
        duv = du[v]
        ok = True
        for w in members:
            if du[w] != duv + dv[w]:
                ok = False
                break
        if ok:
            return True
    return False


def pair_masks(dist: np.ndarray) -> tuple[list[int], int]:
    """Per-vertex bitmasks over vertex pairs: bit p of mask[w] is set when w
    separates the p-th pair.  Returns (masks, full_mask)."""
    n = dist.shape[0]
    iu, iv = np.triu_indices(n, 1)
    npairs = len(iu)
    masks: list[int] = []
    for w in range(n):
        col = dist[:, w]
        diff = col[iu] != col[iv]
        packed = np.packbits(diff, bitorder="little")
        masks.append(int.from_bytes(packed.tobytes(), "little"))
    return masks, (1 << npairs) - 1


def oracle_size_limit() -> int:
    """Size guard for the brute-force oracle; MDIM_BRUTE_LIMIT overrides it."""
    raw = os.environ.get(_ORACLE_LIMIT_ENV)
    if raw is None:
        return DEFAULT_ORACLE_LIMIT
    try:
        return int(raw)
    except ValueError:
        raise OracleSizeError(f"{_ORACLE_LIMIT_ENV}={raw!r} is not an integer") from None


def brute_force_min_resolving(
    g: Graph,
    dm: DistanceMatrix,
    constraints: ResolveConstraints | None = None,
    *,
    size_limit: int | None = None,
) -> tuple[int, ...] | None:
    """Smallest resolving set by exhaustive search, or None if constrained away.

    Subsets are tried by cardinality and then lexicographically, so the result
    is deterministic: the smallest, lexicographically-first set satisfying all
    constraints.  Refuses graphs larger than the size guard (default 25,
    override via MDIM_BRUTE_LIMIT or the size_limit argument).
    """
    cons = constraints or ResolveConstraints()
    limit = size_limit if size_limit is not None else oracle_size_limit()
    if g.n > limit:
        raise OracleSizeError(
            f"graph has {g.n} vertices, above the brute-force guard of {limit}; "
            f"raise {_ORACLE_LIMIT_ENV} to override"
        )
    for v in cons.must_include:
        if not (0 <= v < g.n):
            raise ValueError(f"must_include vertex {v} outside 0..{g.n - 1}")
    if g.n <= 1:
        return () if cons.max_size is None or cons.max_size >= 0 else None

    d = dm.dist
    masks, full = pair_masks(d)
    base = 0
    for v in cons.must_include:
        base |= masks[v]
    free = [v for v in range(g.n) if v not in cons.must_include]
    cap = g.n if cons.max_size is None else min(cons.max_size, g.n)
    adjacency = g.adjacency

    for size in range(len(cons.must_include), cap + 1):
        extra = size - len(cons.must_include)
        if extra < 0 or extra > len(free):
            continue
        for combo in combinations(free, extra):
            acc = base
            for v in combo:
                acc |= masks[v]
            if acc != full:
                continue
            candidate = tuple(sorted(cons.must_include + combo))
            if cons.non_gate_at is not None and _has_gate(
                adjacency, d, candidate, cons.non_gate_at
            ):
                continue
            return candidate
    return None
