"""Storage graphs, BFS layer decompositions, and repair trees.

Vertices are 0-based ints.  Graphs are simple and undirected; they are built
once and then treated as immutable.  All tie-breaking (helper choice in the
outermost layer, BFS parent choice) is by smallest vertex id so that every
derived object is deterministic.

Graph file format: first line ``n m``, then ``m`` lines ``u v`` with 0-based
endpoints; self-loops and duplicate edges are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class DisconnectedGraphError(ValueError):
    """Raised when an operation needs more reachable vertices than exist."""


class Graph:
    """Simple undirected graph on vertices 0..n-1."""

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()) -> None:
        if n <= 0:
            raise ValueError("need at least one vertex")
        self.n = n
        self._adj: list[set[int]] = [set() for _ in range(n)]
        self._m = 0
        for u, v in edges:
            self._add_edge(u, v)

    def _add_edge(self, u: int, v: int) -> None:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"edge ({u},{v}) out of range")
        if u == v:
            raise ValueError(f"self-loop at {u}")
        if v in self._adj[u]:
            raise ValueError(f"duplicate edge ({u},{v})")
        self._adj[u].add(v)
        self._adj[v].add(u)
        self._m += 1

    @property
    def edge_count(self) -> int:
        return self._m

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self._adj[u]) if u < v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(sorted(self._adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def reachable_from(self, source: int) -> set[int]:
        seen = {source}
        frontier = [source]
        while frontier:
            nxt = []
            for u in frontier:
                for w in self._adj[u]:
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            frontier = nxt
        return seen

    def is_connected(self) -> bool:
        return len(self.reachable_from(0)) == self.n

    def to_text(self) -> str:
        lines = [f"{self.n} {self._m}"]
        lines += [f"{u} {v}" for u, v in self.edges()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Graph":
        rows = [ln.split() for ln in text.splitlines() if ln.strip()]
        if not rows or len(rows[0]) != 2:
            raise ValueError("first line must be 'n m'")
        n, m = (int(x) for x in rows[0])
        if len(rows) - 1 != m:
            raise ValueError(f"expected {m} edge lines, got {len(rows) - 1}")
        edges = []
        for row in rows[1:]:
            if len(row) != 2:
                raise ValueError(f"bad edge line: {' '.join(row)}")
            edges.append((int(row[0]), int(row[1])))
        return cls(n, edges)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self._m})"


@dataclass(frozen=True)
class LayerDecomposition:
    """BFS spheres around a center, restricted to the chosen helper set."""

    center: int
    layers: tuple[tuple[int, ...], ...]  # layer j-1 holds vertices at distance j

    @property
    def depth(self) -> int:
        return len(self.layers)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(layer) for layer in self.layers)

    def ball(self, i: int) -> tuple[int, ...]:
        out: list[int] = []
        for layer in self.layers[:i]:
            out.extend(layer)
        return tuple(sorted(out))


class RepairTree:
    """Rooted tree over the failed vertex (root) and its helpers."""

    def __init__(self, root: int, parent: dict[int, int]) -> None:
        self.root = root
        self.parent = dict(parent)
        children: dict[int, list[int]] = {root: []}
        for v in self.parent:
            children.setdefault(v, [])
        for v, p in self.parent.items():
            if p not in children:
                raise ValueError(f"parent {p} of {v} is not a tree vertex")
            children[p].append(v)
        self.children = {v: tuple(sorted(cs)) for v, cs in children.items()}

        self.depth: dict[int, int] = {root: 0}
        order = [root]
        for v in order:
            for c in self.children[v]:
                self.depth[c] = self.depth[v] + 1
                order.append(c)
        if len(order) != len(self.children):
            raise ValueError("parent map does not form a tree rooted at the root")
        self._topo = order  # root first, children after parents

        self.subtree_size: dict[int, int] = {}
        for v in reversed(order):
            self.subtree_size[v] = 1 + sum(self.subtree_size[c] for c in self.children[v])

    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.children))

    def non_root(self) -> tuple[int, ...]:
        return tuple(sorted(self.parent))

    def topo_order(self) -> tuple[int, ...]:
        return tuple(self._topo)

    @property
    def height(self) -> int:
        return max(self.depth.values())

    def layer_sizes(self) -> tuple[int, ...]:
        """(#vertices at depth 1, ..., #vertices at depth height)."""
        sizes = [0] * self.height
        for v, dep in self.depth.items():
            if dep:
                sizes[dep - 1] += 1
        return tuple(sizes)

    def __repr__(self) -> str:
        return f"RepairTree(root={self.root}, vertices={len(self.children)})"


def select_helpers(g: Graph, failed: int, d: int) -> tuple[tuple[int, ...], LayerDecomposition]:
    """The d closest vertices to ``failed`` by BFS; full layers are taken
    whole and the deficit in the outermost layer is filled by smallest id."""
    if not (0 <= failed < g.n):
        raise ValueError(f"failed vertex {failed} out of range")
    if d < 1 or d > g.n - 1:
        raise ValueError(f"d={d} must be in [1, n-1]")
    chosen: list[tuple[int, ...]] = []
    taken = 0
    seen = {failed}
    frontier = [failed]
    while taken < d:
        nxt = sorted({w for u in frontier for w in g.neighbors(u)} - seen)
        if not nxt:
            raise DisconnectedGraphError(
                f"only {taken} of d={d} helpers reachable from vertex {failed}")
        if taken + len(nxt) <= d:
            layer = tuple(nxt)
        else:
            layer = tuple(nxt[: d - taken])  # smallest ids fill the deficit
        chosen.append(layer)
        taken += len(layer)
        seen.update(nxt)
        frontier = nxt
    helpers = tuple(sorted(v for layer in chosen for v in layer))
    return helpers, LayerDecomposition(failed, tuple(chosen))


def spanning_tree_rooted(g: Graph, root: int, vertices: Iterable[int]) -> RepairTree:
    """BFS spanning tree of the induced subgraph, parent = smallest-id
    neighbor one layer closer to the root."""
    vs = set(vertices)
    vs.add(root)
    parent: dict[int, int] = {}
    seen = {root}
    frontier = [root]
    while frontier:
        nxt = []
        for u in sorted(frontier):
            for w in g.neighbors(u):
                if w in vs and w not in seen:
                    seen.add(w)
                    parent[w] = u
                    nxt.append(w)
        frontier = nxt
    if seen != vs:
        missing = sorted(vs - seen)
        raise DisconnectedGraphError(f"induced subgraph not connected; unreachable: {missing}")
    return RepairTree(root, parent)


def build_repair_tree(g: Graph, failed: int, helpers: Iterable[int]) -> RepairTree:
    """BFS tree of the subgraph on {failed} + helpers, rooted at the failed vertex."""
    return spanning_tree_rooted(g, failed, helpers)


def random_recursive_tree(root: int, others: Sequence[int], rng) -> RepairTree:
    """Random tree on {root} + others: vertices attach (in shuffled order) to a
    uniformly random vertex already in the tree.  Test/experiment utility."""
    order = list(others)
    rng.shuffle(order)
    placed = [root]
    parent = {}
    for v in order:
        parent[v] = placed[rng.randrange(len(placed))]
        placed.append(v)
    return RepairTree(root, parent)


def star_graph(rays: int) -> Graph:
    """Star with center 0 and leaves 1..rays."""
    return Graph(rays + 1, [(0, i) for i in range(1, rays + 1)])


def path_graph(length: int) -> Graph:
    """Path 0 - 1 - ... - length."""
    return Graph(length + 1, [(i, i + 1) for i in range(length)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def two_neighbor_graph(k: int) -> Graph:
    """Failed vertex 0 adjacent to helpers 1 and 2 only; helpers 1..k+1 form a
    complete graph.  n = k+2 vertices, d = k+1."""
    edges = [(0, 1), (0, 2)]
    edges += [(u, v) for u in range(1, k + 2) for v in range(u + 1, k + 2)]
    return Graph(k + 2, edges)


def three_neighbor_example_graph() -> Graph:
    """Failed vertex 0 adjacent to helpers 1, 2, 3; helpers 1..6 form a
    complete graph.  The small instance whose cut LP value is 27/4."""
    edges = [(0, 1), (0, 2), (0, 3)]
    edges += [(u, v) for u in range(1, 7) for v in range(u + 1, 7)]
    return Graph(7, edges)
