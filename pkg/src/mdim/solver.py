"""Exact metric dimension via dynamic programming over the component tree.

Every c-node is scored with a pair of landmark counts for its subtree, both for
landmark sets that must contain the connecting cut vertex: the cheapest such
set (`beta`), and the cheapest one that additionally leaves the cut vertex
un-gated, i.e. no outside vertex could see the whole set through it (`alpha`).
A-nodes merge the pairs of their children, which all share the cut vertex.
The root's `beta` minus one (the root vertex itself gets dropped) is the
metric dimension.

The per-component search only ever looks at distances inside the component:
restrictions are isometric, so slices of the one global distance matrix are
enough, and no per-node BFS is needed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .decompose import (
    EBC,
    DebcTree,
    Decomposition,
    EbcTree,
    build_ebc_tree,
    decompose,
)
from .graph import DistanceMatrix, Graph, GraphError, all_pairs_distances, is_connected
from .resolving import (
    ResolveConstraints,
    brute_force_min_resolving,
    is_resolving_set,
    oracle_size_limit,
    pair_masks,
)

#: Extra landmarks a leg or bridge component may ever need on top of the
#: forced cut vertices.  Two suffice: one extra inside a dangling path both
#: resolves it and un-gates its root, and a bridge has no room for more.
_PATHLIKE_BUDGET = 2


class InfeasibleBoundError(Exception):
    """No resolving set keeps every extended component within the cap."""

    def __init__(self, bound: int, detail: str = ""):
        self.bound = bound
        msg = f"no resolving set with at most {bound} landmarks per extended component"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


@dataclass(frozen=True)
class HPair:
    """Subtree landmark counts for sets pinned at the connecting cut vertex.

    `beta`/`witness_plain`: cheapest set containing the cut vertex.
    `alpha`/`witness_nongate`: cheapest such set that also blocks any outside
    vertex from gating through the cut vertex.  `alpha` is None only when the
    per-component cap makes the un-gated variant impossible.
    """

    alpha: int | None
    beta: int
    witness_nongate: tuple[int, ...] | None
    witness_plain: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.beta < 1:
            raise ValueError(f"beta must be positive, got {self.beta}")
        if len(self.witness_plain) != self.beta:
            raise ValueError("witness_plain size does not match beta")
        if (self.alpha is None) != (self.witness_nongate is None):
            raise ValueError("alpha and witness_nongate must be set together")
        if self.alpha is not None:
            if not self.beta <= self.alpha <= self.beta + 1:
                raise ValueError(
                    f"alpha must be beta or beta+1, got alpha={self.alpha} beta={self.beta}"
                )
            assert self.witness_nongate is not None
            if len(self.witness_nongate) != self.alpha:
                raise ValueError("witness_nongate size does not match alpha")


@dataclass(frozen=True)
class Solution:
    dimension: int
    resolving_set: tuple[int, ...]
    per_ebc_counts: Mapping[int, int]
    bound: int | None
    mode: str  # "exact" | "k_bounded" | "brute_fallback"


def _eq_through(d: np.ndarray, u: int, anchor: int, w: int) -> bool:
    """Does every shortest u-w route pass the anchor at full stretch?"""
    return d[u, w] == d[u, anchor] + d[anchor, w]


def compute_c_node(
    g: Graph,
    dm: DistanceMatrix,
    component: Sequence[int],
    parent_vertex: int,
    child_pairs: Sequence[tuple[int, HPair]],
    budget: int | None,
) -> HPair | None:
    """Score one component given the scored subtrees hanging below it.

    `component` lists the component's vertices (original ids), `parent_vertex`
    the cut vertex linking it upward, and `child_pairs` maps each downward cut
    vertex to its subtree's pair.  `budget` caps the landmarks picked strictly
    inside the component (None = no cap).  Returns None when no landmark set
    within budget works.

    Landmark sets assemble as W plus one witness per child, minus the child
    cut vertices themselves.  A child cut vertex therefore only contributes
    distance information when its chosen witness keeps a vertex strictly below
    it; all resolving and gate checks here run against that pinned subset, not
    against W itself.  Children whose cheap witness leaves the cut vertex
    gated can be upgraded to their un-gated witness for one extra landmark.
    """
    comp = sorted(set(component))
    pos = {v: i for i, v in enumerate(comp)}
    if parent_vertex not in pos:
        raise ValueError(f"parent vertex {parent_vertex} not in component")
    child_vs = [cv for cv, _ in child_pairs]
    if len(set(child_vs)) != len(child_vs):
        raise ValueError("duplicate child cut vertices")
    if parent_vertex in child_vs:
        raise ValueError("parent vertex cannot also be a child cut vertex")
    for cv in child_vs:
        if cv not in pos:
            raise ValueError(f"child cut vertex {cv} not in component")

    d = dm.dist[np.ix_(comp, comp)]
    masks, full_mask = pair_masks(d)
    adj_local: list[list[int]] = [
        [pos[w] for w in g.adjacency[v] if w in pos] for v in comp
    ]

    p_loc = pos[parent_vertex]
    children = [(pos[cv], hp) for cv, hp in child_pairs]
    k = len(children)

    # Children split three ways.  Same-price children take their un-gated
    # witness unconditionally: it costs nothing, keeps the cut vertex pinned,
    # and settles their gate condition outright.  Children with a one-landmark
    # gap start on the cheap witness and may be upgraded.  Children without an
    # un-gated witness (possible under a cap) must pass the gate check as-is.
    settled: list[int] = []
    gap: list[int] = []
    stuck: list[int] = []
    for i, (_, hp) in enumerate(children):
        if hp.alpha is None:
            stuck.append(i)
        elif hp.alpha == hp.beta:
            settled.append(i)
        else:
            gap.append(i)
    base_child_cost = sum(
        (hp.alpha if i in set(settled) else hp.beta) - 1
        for i, (_, hp) in enumerate(children)
    )
    # Cut vertices pinned no matter what: settled children (witness >= 2), and
    # any child whose cheap witness already reaches below the cut vertex.
    settled_set = set(settled)
    always_pinned = [
        cv
        for i, (cv, hp) in enumerate(children)
        if i in settled_set or hp.beta >= 2
    ]

    mandatory = sorted({p_loc, *(c for c, _ in children)})
    free = [v for v in range(len(comp)) if v not in set(mandatory)]
    max_extra = len(free) if budget is None else min(budget, len(free))

    best_beta: tuple[int, tuple[int, ...], frozenset[int]] | None = None
    best_alpha: tuple[int, tuple[int, ...], frozenset[int]] | None = None
    parent_nbrs = adj_local[p_loc]

    def not_gate(v_loc: int, pinned: Sequence[int]) -> bool:
        return not any(
            all(_eq_through(d, u, v_loc, w) for w in pinned if w != v_loc)
            for u in adj_local[v_loc]
        )

    for xsize in range(max_extra + 1):
        floor = len(mandatory) + xsize - k + base_child_cost
        if (
            best_beta is not None
            and best_alpha is not None
            and floor > best_beta[0]
            and floor > best_alpha[0]
        ):
            break
        for extra in itertools.combinations(free, xsize):
            w_set = tuple(sorted(set(mandatory) | set(extra)))
            base_size = len(w_set) - k + base_child_cost
            core = {p_loc, *extra}
            # Scan upgrade subsets of the gap children, cheapest first.  More
            # upgrades only grow the pinned set, so the checks relax while the
            # cost rises: the first hit per category is optimal for this W.
            found_beta_here = False
            found_alpha_here = False
            for count in range(len(gap) + 1):
                size = base_size + count
                want_beta = not found_beta_here and (
                    best_beta is None or size < best_beta[0]
                )
                want_alpha = not found_alpha_here and (
                    best_alpha is None or size < best_alpha[0]
                )
                if not want_beta and not want_alpha:
                    break
                for subset in itertools.combinations(gap, count):
                    chosen_up = frozenset(subset)
                    pinned = sorted(
                        core
                        | set(always_pinned)
                        | {children[i][0] for i in chosen_up}
                    )
                    acc = 0
                    for v in pinned:
                        acc |= masks[v]
                    if acc != full_mask:
                        continue
                    ok = True
                    for i in stuck + [i for i in gap if i not in chosen_up]:
                        if not not_gate(children[i][0], pinned):
                            ok = False
                            break
                    if not ok:
                        continue
                    if want_beta:
                        best_beta = (size, w_set, chosen_up)
                        found_beta_here = True
                        want_beta = False
                    if want_alpha and not_gate(p_loc, pinned):
                        best_alpha = (size, w_set, chosen_up)
                        found_alpha_here = True
                        want_alpha = False
                    if not want_beta and not want_alpha:
                        break

    if best_beta is None:
        return None

    inv = {i: v for v, i in pos.items()}

    def assemble(w_set: tuple[int, ...], upgrades: frozenset[int]) -> tuple[int, ...]:
        out = {inv[w] for w in w_set}
        for i, (cv, hp) in enumerate(children):
            out.discard(inv[cv])
        for i, (cv, hp) in enumerate(children):
            take_nongate = i in set(settled) or i in upgrades
            chosen = hp.witness_nongate if take_nongate else hp.witness_plain
            assert chosen is not None
            out.update(set(chosen) - {inv[cv]})
        return tuple(sorted(out))

    plain = assemble(best_beta[1], best_beta[2])
    assert len(plain) == best_beta[0], "assembled witness size drifted"
    if best_alpha is None:
        return HPair(
            alpha=None, beta=best_beta[0], witness_nongate=None, witness_plain=plain
        )
    nongate = assemble(best_alpha[1], best_alpha[2])
    assert len(nongate) == best_alpha[0], "assembled witness size drifted"
    return HPair(
        alpha=best_alpha[0],
        beta=best_beta[0],
        witness_nongate=nongate,
        witness_plain=plain,
    )


def compute_a_node(child_pairs: Sequence[HPair]) -> HPair | None:
    """Merge the pairs of all components meeting at one cut vertex.

    All child witness sets share exactly the cut vertex, so sizes add up with
    one copy of it kept.  The un-gated variant needs every child un-gated; the
    plain variant may leave at most one child gated, and picks the cheapest.
    Returns None when two or more children cannot be un-gated at all.
    """
    pairs = list(child_pairs)
    if not pairs:
        raise ValueError("a-node needs at least one child")
    if len(pairs) == 1:
        return pairs[0]
    k = len(pairs)

    alpha_total: int | None = None
    nongate_union: tuple[int, ...] | None = None
    if all(p.alpha is not None for p in pairs):
        alpha_total = sum(p.alpha for p in pairs) - (k - 1)  # type: ignore[misc]
        merged: set[int] = set()
        for p in pairs:
            assert p.witness_nongate is not None
            merged.update(p.witness_nongate)
        nongate_union = tuple(sorted(merged))
        assert len(nongate_union) == alpha_total, "child witnesses overlap beyond the cut vertex"

    best: tuple[int, tuple[int, ...]] | None = None
    if alpha_total is not None:
        assert nongate_union is not None
        best = (alpha_total, nongate_union)
    for j, pj in enumerate(pairs):
        if any(p.alpha is None for i, p in enumerate(pairs) if i != j):
            continue
        total = pj.beta + sum(p.alpha for i, p in enumerate(pairs) if i != j) - (k - 1)  # type: ignore[misc]
        if best is None or total < best[0]:
            merged = set(pj.witness_plain)
            for i, p in enumerate(pairs):
                if i != j:
                    assert p.witness_nongate is not None
                    merged.update(p.witness_nongate)
            wit = tuple(sorted(merged))
            assert len(wit) == total, "child witnesses overlap beyond the cut vertex"
            best = (total, wit)

    if best is None:
        return None
    return HPair(
        alpha=alpha_total,
        beta=best[0],
        witness_nongate=nongate_union,
        witness_plain=best[1],
    )


def pick_root(t: EbcTree) -> int:
    """A-node with the most tree neighbors; ties go to the smallest vertex."""
    best = None
    for j in range(len(t.a_vertices)):
        node = t.c_count + j
        deg = len(t.neighbors[node])
        if best is None or deg > best[0]:
            best = (deg, node)
    if best is None:
        raise ValueError("tree has no a-nodes")
    return best[1]


def evaluate_tree(
    g: Graph,
    dm: DistanceMatrix,
    dt: DebcTree,
    bound: int | None = None,
) -> dict[int, HPair | None]:
    """Run the dynamic program bottom-up and keep every node's pair."""
    t = dt.tree
    values: dict[int, HPair | None] = {}
    for node in dt.postorder():
        if t.is_c_node(node):
            comp = t.component(node)
            p = dt.parent[node]
            assert p is not None, "component nodes never sit at the root"
            parent_vertex = t.a_vertex(p)
            kid_pairs = []
            dead = False
            for ch in dt.children[node]:
                hp = values[ch]
                if hp is None:
                    dead = True
                    break
                kid_pairs.append((t.a_vertex(ch), hp))
            if dead:
                values[node] = None
                continue
            comp_budget = bound if comp.kind == EBC else _PATHLIKE_BUDGET
            values[node] = compute_c_node(
                g, dm, comp.vertices, parent_vertex, kid_pairs, comp_budget
            )
        else:
            kids = [values[ch] for ch in dt.children[node]]
            if any(v is None for v in kids):
                values[node] = None
            else:
                values[node] = compute_a_node([v for v in kids if v is not None])
    return values


def per_ebc_counts(d: Decomposition, landmarks: Iterable[int]) -> dict[int, int]:
    """Landmarks inside each extended component; shared cut vertices count in
    every component containing them."""
    chosen = set(landmarks)
    return {
        i: len(chosen.intersection(c.vertices))
        for i, c in enumerate(d.components)
        if c.kind == EBC
    }


def brute_force_min_bounded(
    g: Graph,
    dm: DistanceMatrix,
    d: Decomposition,
    bound: int,
    *,
    size_limit: int | None = None,
) -> tuple[int, ...] | None:
    """Smallest resolving set keeping every extended component within `bound`,
    by exhaustive search.  Subject to the same size guard as the plain oracle."""
    limit = oracle_size_limit() if size_limit is None else size_limit
    if g.n > limit:
        from .resolving import OracleSizeError

        raise OracleSizeError(
            f"refusing brute force on {g.n} vertices (limit {limit}); "
            "raise the limit explicitly to override"
        )
    if g.n <= 1:
        return ()
    ebc_vertex_sets = [set(c.vertices) for c in d.components if c.kind == EBC]
    masks, full_mask = pair_masks(dm.dist)
    for size in range(g.n + 1):
        for combo in itertools.combinations(range(g.n), size):
            acc = 0
            for v in combo:
                acc |= masks[v]
            if acc != full_mask:
                continue
            cs = set(combo)
            if all(len(cs & vs) <= bound for vs in ebc_vertex_sets):
                return combo
    return None


def _fallback_solution(
    g: Graph,
    dm: DistanceMatrix,
    d: Decomposition,
    bound: int | None,
) -> Solution:
    if bound is None:
        r = brute_force_min_resolving(g, dm)
        assert r is not None
    else:
        r = brute_force_min_bounded(g, dm, d, bound)
        if r is None:
            raise InfeasibleBoundError(bound)
    return Solution(
        dimension=len(r),
        resolving_set=r,
        per_ebc_counts=per_ebc_counts(d, r),
        bound=bound,
        mode="brute_fallback",
    )


def solve(g: Graph, bound: int | None = None) -> Solution:
    """Metric dimension with one smallest resolving set attached.

    With `bound` set, restrict to resolving sets placing at most that many
    landmarks in any extended component (raises InfeasibleBoundError when no
    such set exists).  Graphs without amalgamation vertices fall back to the
    exhaustive oracle, which obeys the MDIM_BRUTE_LIMIT size guard.
    """
    if g.n == 0:
        raise GraphError("metric dimension needs at least one vertex")
    if bound is not None and bound < 1:
        raise ValueError(f"bound must be positive, got {bound}")
    if not is_connected(g):
        raise GraphError("graph is not connected")
    mode = "exact" if bound is None else "k_bounded"
    if g.n <= 2:
        return Solution(
            dimension=g.n - 1,
            resolving_set=tuple(range(g.n - 1)),
            per_ebc_counts={},
            bound=bound,
            mode=mode,
        )

    d = decompose(g)
    dm = all_pairs_distances(g)

    if not d.amalgamation_vertices:
        return _fallback_solution(g, dm, d, bound)

    t = build_ebc_tree(d)
    dt = root_tree_checked(t)
    values = evaluate_tree(g, dm, dt, bound)
    hp = values[dt.root]
    if hp is None:
        if bound is None:
            raise AssertionError("unbounded dynamic program reported infeasible")
        raise InfeasibleBoundError(bound)

    root_vertex = t.a_vertex(dt.root)
    landmarks = tuple(sorted(set(hp.witness_plain) - {root_vertex}))
    dimension = hp.beta - 1

    ok, _ = is_resolving_set(g, dm, landmarks)
    if not ok or len(landmarks) != dimension:
        # Should never happen; prefer a slow correct answer over a wrong one.
        return _fallback_solution(g, dm, d, bound)

    counts = per_ebc_counts(d, landmarks)
    if bound is not None:
        assert all(c <= bound for c in counts.values()), "cap violated by witness"
    return Solution(
        dimension=dimension,
        resolving_set=landmarks,
        per_ebc_counts=counts,
        bound=bound,
        mode=mode,
    )


def root_tree_checked(t: EbcTree) -> DebcTree:
    from .decompose import root_tree

    return root_tree(t, pick_root(t))


def smallest_bound(g: Graph) -> tuple[int, Solution]:
    """Least per-component cap that still admits a resolving set."""
    if g.n == 0:
        raise GraphError("metric dimension needs at least one vertex")
    for k in range(1, max(g.n, 1) + 1):
        try:
            return k, solve(g, bound=k)
        except InfeasibleBoundError:
            continue
    raise AssertionError("cap equal to the vertex count is always feasible")
