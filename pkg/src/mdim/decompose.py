"""Decomposition of a connected graph into legs, bridges and extended biconnected
components, and the bipartite component tree built on top of it.

A leg is a dangling path: leaf, then degree-2 vertices, ending at its root of
degree >= 3.  A leg is "hooked" when deleting its root splits the graph into
exactly two pieces; hooked legs are absorbed into the biconnected component at
their root, forming an extended component (kind "ebc").  Remaining legs and all
cut edges outside legs become their own components.  Vertices shared by two or
more components are the amalgamation vertices; components and amalgamation
vertices alternate in a tree with all leaves on the component side.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

from .graph import Graph, GraphError, build_graph, is_connected

EBC = "ebc"
BRIDGE = "bridge"
ORDINARY_LEG = "ordinary_leg"


@dataclass(frozen=True)
class Leg:
    """A dangling path, stored leaf first and root last."""

    vertices: tuple[int, ...]
    hooked: bool

    @property
    def leaf(self) -> int:
        return self.vertices[0]

    @property
    def root(self) -> int:
        return self.vertices[-1]

    def edges(self) -> tuple[tuple[int, int], ...]:
        vs = self.vertices
        return tuple(_norm(vs[i], vs[i + 1]) for i in range(len(vs) - 1))


@dataclass(frozen=True)
class Component:
    """One piece of the edge partition: an extended biconnected component, a
    bridge, or an ordinary leg."""

    kind: str
    vertices: tuple[int, ...]
    core_vertices: tuple[int, ...]


@dataclass(frozen=True)
class Decomposition:
    components: tuple[Component, ...]
    amalgamation_vertices: tuple[int, ...]
    edge_owner: Mapping[tuple[int, int], int]


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def _all_blocks(g: Graph) -> list[tuple[frozenset[int], tuple[tuple[int, int], ...]]]:
    """Every block (maximal subgraph without a cut vertex), bridges included,
    via an iterative Hopcroft-Tarjan pass."""
    n = g.n
    disc = [-1] * n
    low = [0] * n
    edge_stack: list[tuple[int, int]] = []
    blocks: list[tuple[frozenset[int], tuple[tuple[int, int], ...]]] = []
    timer = 0

    for start in range(n):
        if disc[start] != -1 or g.degree(start) == 0:
            continue
        # frame: (vertex, parent, index into adjacency)
        stack: list[list[int]] = [[start, -1, 0]]
        disc[start] = low[start] = timer
        timer += 1
        while stack:
            frame = stack[-1]
            u, parent, idx = frame
            if idx < len(g.adjacency[u]):
                frame[2] += 1
                v = g.adjacency[u][idx]
                if v == parent:
                    continue
                if disc[v] == -1:
                    edge_stack.append((u, v))
                    disc[v] = low[v] = timer
                    timer += 1
                    stack.append([v, u, 0])
                elif disc[v] < disc[u]:
                    edge_stack.append((u, v))
                    if disc[v] < low[u]:
                        low[u] = disc[v]
            else:
                stack.pop()
                if not stack:
                    continue
                p = stack[-1][0]
                if low[u] < low[p]:
                    low[p] = low[u]
                if low[u] >= disc[p]:
                    # p closes a block; collect edges down to (p, u)
                    edges: list[tuple[int, int]] = []
                    while True:
                        e = edge_stack.pop()
                        edges.append(_norm(*e))
                        if e == (p, u):
                            break
                    verts = frozenset(x for e in edges for x in e)
                    blocks.append((verts, tuple(sorted(edges))))
    return blocks


def biconnected_components(g: Graph) -> list[tuple[int, ...]]:
    """Vertex sets of the maximal biconnected subgraphs with at least three
    vertices; single edges never count."""
    out = [tuple(sorted(vs)) for vs, _ in _all_blocks(g) if len(vs) >= 3]
    out.sort()
    return out


def classify_legs(g: Graph) -> list[Leg]:
    """Find every leg and mark it hooked or ordinary.

    A leg is hooked exactly when its root lies in precisely two blocks (the leg
    edge and one biconnected core), i.e. deleting the root leaves two pieces.
    A graph that is itself a path has no legs at all.
    """
    block_count = [0] * g.n
    for vs, _ in _all_blocks(g):
        for v in vs:
            block_count[v] += 1
    legs: list[Leg] = []
    for leaf in range(g.n):
        if g.degree(leaf) != 1:
            continue
        path = [leaf]
        prev = leaf
        cur = g.adjacency[leaf][0]
        while g.degree(cur) == 2:
            a, b = g.adjacency[cur]
            nxt = b if a == prev else a
            path.append(cur)
            prev, cur = cur, nxt
        if g.degree(cur) < 3:
            continue  # ran into another endpoint: the graph is a bare path
        path.append(cur)
        legs.append(Leg(vertices=tuple(path), hooked=block_count[cur] == 2))
    legs.sort(key=lambda l: l.leaf)
    return legs


def decompose(g: Graph) -> Decomposition:
    """Partition the edges of a connected graph into components and identify
    the amalgamation vertices."""
    if g.n < 2:
        raise GraphError("decomposition needs at least two vertices")
    if not is_connected(g):
        raise GraphError("graph is not connected")

    blocks = _all_blocks(g)
    legs = classify_legs(g)

    leg_edge_ids: set[tuple[int, int]] = set()
    for leg in legs:
        leg_edge_ids.update(leg.edges())

    hooked_by_root: dict[int, Leg] = {}
    for leg in legs:
        if leg.hooked:
            if leg.root in hooked_by_root:
                raise AssertionError(
                    f"vertex {leg.root} roots two hooked legs; decomposition broken"
                )
            hooked_by_root[leg.root] = leg

    raw: list[tuple[str, set[int], set[int], list[tuple[int, int]]]] = []
    # kind, vertices, core, edges

    for verts, edges in blocks:
        if len(verts) >= 3:
            vset = set(verts)
            eset = list(edges)
            for root in verts:
                leg = hooked_by_root.get(root)
                if leg is not None:
                    vset.update(leg.vertices)
                    eset.extend(leg.edges())
            raw.append((EBC, vset, set(verts), eset))
        else:
            e = edges[0]
            if e in leg_edge_ids:
                continue  # owned by a leg (ordinary or hooked)
            raw.append((BRIDGE, set(verts), set(verts), [e]))

    for leg in legs:
        if not leg.hooked:
            vs = set(leg.vertices)
            raw.append((ORDINARY_LEG, vs, vs, list(leg.edges())))

    raw.sort(key=lambda item: (min(item[1]), tuple(sorted(item[1]))))
    components = tuple(
        Component(kind=k, vertices=tuple(sorted(vs)), core_vertices=tuple(sorted(core)))
        for k, vs, core, _ in raw
    )

    edge_owner: dict[tuple[int, int], int] = {}
    for idx, (_, _, _, edges) in enumerate(raw):
        for e in edges:
            if e in edge_owner:
                raise AssertionError(f"edge {e} assigned to two components")
            edge_owner[e] = idx
    missing = [e for e in g.edges() if e not in edge_owner]
    if missing:
        raise AssertionError(f"edges {missing} not covered by any component")

    membership: dict[int, int] = {}
    for comp in components:
        for v in comp.vertices:
            membership[v] = membership.get(v, 0) + 1
    amalg = tuple(sorted(v for v, cnt in membership.items() if cnt >= 2))

    return Decomposition(
        components=components, amalgamation_vertices=amalg, edge_owner=edge_owner
    )


@dataclass(frozen=True)
class EbcTree:
    """Bipartite tree over components (c-nodes) and amalgamation vertices
    (a-nodes).  Node ids: c-node i is i, a-node j is c_count + j."""

    decomposition: Decomposition
    a_vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    neighbors: tuple[tuple[int, ...], ...]

    @property
    def c_count(self) -> int:
        return len(self.decomposition.components)

    @property
    def node_count(self) -> int:
        return self.c_count + len(self.a_vertices)

    def is_c_node(self, node: int) -> bool:
        return node < self.c_count

    def component(self, node: int) -> Component:
        if not self.is_c_node(node):
            raise ValueError(f"node {node} is not a c-node")
        return self.decomposition.components[node]

    def a_vertex(self, node: int) -> int:
        if self.is_c_node(node):
            raise ValueError(f"node {node} is not an a-node")
        return self.a_vertices[node - self.c_count]


def build_ebc_tree(d: Decomposition) -> EbcTree:
    """Connect each component to the amalgamation vertices it contains."""
    a_vertices = d.amalgamation_vertices
    c_count = len(d.components)
    index_of = {v: j for j, v in enumerate(a_vertices)}
    edges: list[tuple[int, int]] = []
    nbrs: list[list[int]] = [[] for _ in range(c_count + len(a_vertices))]
    for ci, comp in enumerate(d.components):
        for v in comp.vertices:
            j = index_of.get(v)
            if j is None:
                continue
            a_node = c_count + j
            edges.append((ci, a_node))
            nbrs[ci].append(a_node)
            nbrs[a_node].append(ci)
    return EbcTree(
        decomposition=d,
        a_vertices=a_vertices,
        edges=tuple(sorted(edges)),
        neighbors=tuple(tuple(sorted(x)) for x in nbrs),
    )


@dataclass(frozen=True)
class DebcTree:
    """The component tree oriented away from a chosen a-node root."""

    tree: EbcTree
    root: int
    parent: tuple[int | None, ...]
    children: tuple[tuple[int, ...], ...]

    def postorder(self) -> Iterator[int]:
        """Children before parents, iteratively (trees can be thousands deep)."""
        stack: list[tuple[int, bool]] = [(self.root, False)]
        while stack:
            node, expanded = stack.pop()
            if expanded:
                yield node
            else:
                stack.append((node, True))
                for ch in reversed(self.children[node]):
                    stack.append((ch, False))

    def subtree_nodes(self, node: int) -> Iterator[int]:
        stack = [node]
        while stack:
            cur = stack.pop()
            yield cur
            stack.extend(self.children[cur])


def root_tree(t: EbcTree, root: int) -> DebcTree:
    """Orient the tree from `root`, which must be an a-node with at least two
    neighbors."""
    if t.is_c_node(root):
        raise ValueError(f"root must be an a-node, got c-node {root}")
    if len(t.neighbors[root]) < 2:
        raise ValueError(
            f"root a-node {root} has {len(t.neighbors[root])} neighbors, needs >= 2"
        )
    parent: list[int | None] = [None] * t.node_count
    order = [root]
    seen = {root}
    for node in order:
        for nb in t.neighbors[node]:
            if nb not in seen:
                seen.add(nb)
                parent[nb] = node
                order.append(nb)
    kids: list[list[int]] = [[] for _ in range(t.node_count)]
    for node in order:
        p = parent[node]
        if p is not None:
            kids[p].append(node)
    return DebcTree(
        tree=t,
        root=root,
        parent=tuple(parent),
        children=tuple(tuple(sorted(k)) for k in kids),
    )


def subtree_graph(dt: DebcTree, g: Graph, node: int) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on all component vertices in the subtree at `node`.

    Returns the relabeled graph plus the new-to-original id map.
    """
    verts: set[int] = set()
    for nd in dt.subtree_nodes(node):
        if dt.tree.is_c_node(nd):
            verts.update(dt.tree.component(nd).vertices)
    if not verts:
        # a-node whose subtree carries no component cannot appear in a valid tree
        raise ValueError(f"subtree at node {node} contains no component vertices")
    ordered = tuple(sorted(verts))
    back = {orig: new for new, orig in enumerate(ordered)}
    edges = [
        (back[u], back[v])
        for u, v in g.edges()
        if u in verts and v in verts
    ]
    return build_graph(len(ordered), edges), ordered


def _vertex_list(vs: tuple[int, ...]) -> str:
    return "{" + ",".join(str(v) for v in vs) + "}"


def to_dot(t: EbcTree, dt: DebcTree | None = None) -> str:
    """Graphviz rendering: components as boxes, amalgamation vertices as
    circles; pass the rooted tree to get edges directed towards the root."""
    lines: list[str] = []
    directed = dt is not None
    lines.append("digraph component_tree {" if directed else "graph component_tree {")
    for ci in range(t.c_count):
        comp = t.decomposition.components[ci]
        label = f"{comp.kind} {_vertex_list(comp.vertices)}"
        lines.append(f'  c{ci} [shape=box, label="{label}"];')
    for j, v in enumerate(t.a_vertices):
        lines.append(f"  a{j} [shape=circle, label=\"{v}\"];")

    def name(node: int) -> str:
        return f"c{node}" if t.is_c_node(node) else f"a{node - t.c_count}"

    if directed:
        assert dt is not None
        for node in range(t.node_count):
            p = dt.parent[node]
            if p is not None:
                lines.append(f"  {name(node)} -> {name(p)};")
    else:
        for cu, au in t.edges:
            lines.append(f"  {name(cu)} -- {name(au)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json_dict(d: Decomposition) -> dict:
    """JSON-friendly summary of a decomposition."""
    return {
        "components": [
            {
                "kind": c.kind,
                "vertices": list(c.vertices),
                "core_vertices": list(c.core_vertices),
            }
            for c in d.components
        ],
        "amalgamation_vertices": list(d.amalgamation_vertices),
    }
