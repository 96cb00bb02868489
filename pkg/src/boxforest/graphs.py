"""Graphs, digraphs, rooted trees, colorings, and small exact searches.

Vertices are always 0..n-1. Everything here is sized for certificate-scale
work (tens of vertices): plain sets and backtracking, no cleverness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .geometry import Box, intersects

__all__ = [
    "Coloring",
    "Digraph",
    "Graph",
    "RootedTree",
    "complete_kary_tree",
    "degeneracy_coloring",
    "find_induced_copy",
    "intersection_graph",
    "is_path_induced",
]


class Graph:
    """Simple undirected graph on vertices 0..n-1."""

    __slots__ = ("n", "adj", "edges")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        self.n = n
        adj: list[set[int]] = [set() for _ in range(n)]
        edge_set: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range")
            if u == v:
                raise ValueError(f"loop at {u}")
            adj[u].add(v)
            adj[v].add(u)
            edge_set.add((min(u, v), max(u, v)))
        self.adj = tuple(frozenset(s) for s in adj)
        self.edges = frozenset(edge_set)

    def adjacent(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def neighbors(self, u: int) -> frozenset[int]:
        return self.adj[u]

    def degree(self, u: int) -> int:
        return len(self.adj[u])

    def complement(self) -> "Graph":
        edges = [
            (u, v)
            for u in range(self.n)
            for v in range(u + 1, self.n)
            if v not in self.adj[u]
        ]
        return Graph(self.n, edges)

    def subgraph(self, vertices: Iterable[int]) -> tuple["Graph", dict[int, int]]:
        """Induced subgraph relabeled to 0..k-1 plus the new->old map."""
        order = sorted(set(vertices))
        index = {v: i for i, v in enumerate(order)}
        edges = [
            (index[u], index[v])
            for u, v in self.edges
            if u in index and v in index
        ]
        return Graph(len(order), edges), dict(enumerate(order))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self.edges)})"


class Digraph:
    """Simple directed graph; at most one arc per ordered pair, no loops."""

    __slots__ = ("n", "out", "inn", "arcs")

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        self.n = n
        out: list[set[int]] = [set() for _ in range(n)]
        inn: list[set[int]] = [set() for _ in range(n)]
        arc_set: set[tuple[int, int]] = set()
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u},{v}) out of range")
            if u == v:
                raise ValueError(f"loop at {u}")
            out[u].add(v)
            inn[v].add(u)
            arc_set.add((u, v))
        self.out = tuple(frozenset(s) for s in out)
        self.inn = tuple(frozenset(s) for s in inn)
        self.arcs = frozenset(arc_set)

    def has_arc(self, u: int, v: int) -> bool:
        return v in self.out[u]

    def out_neighbors(self, u: int) -> frozenset[int]:
        return self.out[u]

    def in_neighbors(self, u: int) -> frozenset[int]:
        return self.inn[u]

    def underlying(self) -> Graph:
        return Graph(self.n, self.arcs)

    def topological_order(self) -> list[int] | None:
        """Kahn's algorithm; None when a cycle exists. Deterministic."""
        indeg = [len(self.inn[v]) for v in range(self.n)]
        ready = sorted(v for v in range(self.n) if indeg[v] == 0)
        order: list[int] = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for w in sorted(self.out[v]):
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
        return order if len(order) == self.n else None

    def is_acyclic(self) -> bool:
        return self.topological_order() is not None

    def reachable_from(self, u: int) -> frozenset[int]:
        """Vertices reachable from u, including u itself."""
        seen = {u}
        stack = [u]
        while stack:
            for w in self.out[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return frozenset(seen)

    def coreachable_to(self, v: int) -> frozenset[int]:
        """Vertices that reach v, including v itself."""
        seen = {v}
        stack = [v]
        while stack:
            for w in self.inn[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return frozenset(seen)

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, m={len(self.arcs)})"


class RootedTree:
    """Rooted directed tree; arcs point away from the root.

    Vertices are 0..n-1 with the root fixed at 0 and every parent id smaller
    than its children's (the builders below guarantee this).
    """

    __slots__ = ("n", "parent", "children", "_depths")

    def __init__(self, parent: Sequence[int | None]):
        self.n = len(parent)
        if self.n == 0:
            raise ValueError("tree needs at least one vertex")
        if parent[0] is not None:
            raise ValueError("vertex 0 must be the root")
        children: list[list[int]] = [[] for _ in range(self.n)]
        for v in range(1, self.n):
            p = parent[v]
            if p is None or not (0 <= p < v):
                raise ValueError(f"vertex {v} needs a parent with a smaller id")
            children[p].append(v)
        self.parent = tuple(parent)
        self.children = tuple(tuple(c) for c in children)
        depths = [0] * self.n
        for v in range(1, self.n):
            depths[v] = depths[self.parent[v]] + 1
        self._depths = tuple(depths)

    @property
    def root(self) -> int:
        return 0

    def depth_of(self, v: int) -> int:
        return self._depths[v]

    def depth(self) -> int:
        return max(self._depths)

    def arcs(self) -> list[tuple[int, int]]:
        return [(self.parent[v], v) for v in range(1, self.n)]

    def preorder(self) -> list[int]:
        order: list[int] = []
        stack = [0]
        while stack:
            v = stack.pop()
            order.append(v)
            stack.extend(reversed(self.children[v]))
        return order

    def subtree(self, v: int) -> frozenset[int]:
        seen = {v}
        stack = [v]
        while stack:
            for c in self.children[stack.pop()]:
                seen.add(c)
                stack.append(c)
        return frozenset(seen)

    def ancestors(self, v: int) -> list[int]:
        """Proper ancestors of v, nearest first."""
        out = []
        while self.parent[v] is not None:
            v = self.parent[v]  # type: ignore[assignment]
            out.append(v)
        return out

    def underlying_edges(self) -> frozenset[tuple[int, int]]:
        return frozenset((min(u, v), max(u, v)) for u, v in self.arcs())

    def __repr__(self) -> str:
        return f"RootedTree(n={self.n}, depth={self.depth()})"


def complete_kary_tree(depth: int, branching: int) -> RootedTree:
    """Complete rooted tree: every vertex above the last level has exactly
    ``branching`` children; leaves all sit at ``depth``."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if branching < 1:
        raise ValueError("branching must be at least 1")
    parent: list[int | None] = [None]
    frontier = [0]
    for _ in range(depth):
        nxt = []
        for v in frontier:
            for _ in range(branching):
                parent.append(v)
                nxt.append(len(parent) - 1)
        frontier = nxt
    return RootedTree(parent)


@dataclass(frozen=True)
class Coloring:
    """Vertex coloring with colors 0..palette_size-1."""

    colors: Mapping[int, int]
    palette_size: int

    def __post_init__(self) -> None:
        for v, c in self.colors.items():
            if not (0 <= c < self.palette_size):
                raise ValueError(f"color {c} of vertex {v} outside palette")

    def is_proper_on(self, g: Graph) -> bool:
        if set(self.colors) != set(range(g.n)):
            return False
        return all(self.colors[u] != self.colors[v] for u, v in g.edges)


def intersection_graph(boxes: Sequence[Box]) -> Graph:
    """Edge uv iff boxes u and v overlap on every axis (normalized input)."""
    index = {b.id: b for b in boxes}
    if sorted(index) != list(range(len(boxes))):
        raise ValueError("box ids must be 0..n-1")
    n = len(boxes)
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if intersects(index[u], index[v])
    ]
    return Graph(n, edges)


def degeneracy_coloring(g: Graph, bound: int) -> Coloring | None:
    """Greedy coloring along a peeling order, or None if peeling gets stuck.

    Repeatedly removes the smallest vertex whose remaining degree is below
    ``bound``; coloring the removal order in reverse then sees fewer than
    ``bound`` colored neighbors per vertex, so at most ``bound`` colors.
    """
    if bound < 1:
        raise ValueError("bound must be positive")
    degree = [g.degree(v) for v in range(g.n)]
    alive = set(range(g.n))
    order: list[int] = []
    while alive:
        pick = next((v for v in sorted(alive) if degree[v] < bound), None)
        if pick is None:
            return None
        alive.discard(pick)
        order.append(pick)
        for w in g.adj[pick]:
            if w in alive:
                degree[w] -= 1
    colors: dict[int, int] = {}
    for v in reversed(order):
        used = {colors[w] for w in g.adj[v] if w in colors}
        c = next(c for c in range(bound) if c not in used)
        colors[v] = c
    palette = 1 + max(colors.values(), default=-1) if colors else 0
    return Coloring(colors, max(palette, 1) if g.n else 0)


def find_induced_copy(g: Graph, t: RootedTree) -> dict[int, int] | None:
    """First induced copy of the tree's underlying graph in g, or None.

    Backtracks over the tree in preorder: a candidate must be adjacent to
    its parent's image and non-adjacent to every other mapped image, which
    checks each vertex pair exactly once.
    """
    order = t.preorder()
    image: dict[int, int] = {}
    used: set[int] = set()

    def place(idx: int) -> bool:
        if idx == len(order):
            return True
        v = order[idx]
        p = t.parent[v]
        if p is None:
            candidates: Iterable[int] = range(g.n)
        else:
            candidates = sorted(g.adj[image[p]])
        for w in candidates:
            if w in used:
                continue
            ok = all(
                (tv == p) == g.adjacent(w, image[tv])
                for tv in image
                if tv != v
            )
            if not ok:
                continue
            image[v] = w
            used.add(w)
            if place(idx + 1):
                return True
            used.discard(w)
            del image[v]
        return False

    return dict(image) if place(0) else None


def is_path_induced(dg: Digraph, t: RootedTree, phi: Mapping[int, int]) -> bool:
    """True when every directed path of the embedded tree is induced in dg.

    ``phi`` must be an arc-preserving injection of the tree into dg
    (ValueError otherwise). Directed tree paths are exactly the
    ancestor-descendant chains, so the condition reduces to: images of
    ancestor-descendant pairs at tree distance >= 2 are non-adjacent in
    dg's underlying graph.
    """
    if set(phi) != set(range(t.n)):
        raise ValueError("mapping must cover exactly the tree vertices")
    if len(set(phi.values())) != t.n:
        raise ValueError("mapping must be injective")
    for u, v in t.arcs():
        if not dg.has_arc(phi[u], phi[v]):
            raise ValueError(f"tree arc ({u},{v}) not preserved")
    und = dg.underlying()
    for v in range(t.n):
        anc = t.ancestors(v)
        # anc[0] is the parent; deeper ancestors are at distance >= 2
        for a in anc[1:]:
            if und.adjacent(phi[a], phi[v]):
                return False
    return True
