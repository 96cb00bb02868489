"""End-to-end dichotomy: color within the proven bound or emit a tree.

Given normalized boxes and tree parameters (depth r, branching k), the
pipeline decomposes the intersections by pattern and runs the grading
machinery per pattern digraph. If any pattern yields a calm, path-induced
embedding of the complete (k^d * omega)-ary tree of depth r, pruning each
vertex's children to k pairwise-disjoint boxes produces an induced copy of
the depth-r k-ary tree in the host graph. Otherwise every pattern peeled
into layers, and the product of the per-pattern layer colorings is a
proper coloring whose palette stays within the derived bound.

Both outcomes are re-verified from scratch before being returned; a
verification failure raises InternalInvariantError because it can only
mean a bug, not an unlucky input.
"""

from __future__ import annotations

import heapq
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Mapping, NamedTuple, Sequence

from .embedding import (
    CalmEmbedding,
    InternalInvariantError,
    LayeredColoring,
    find_path_induced_tree,
    peel_grading,
)
from .geometry import Box, Pattern, intersects
from .graphs import Coloring, Graph, RootedTree, complete_kary_tree, intersection_graph
from .oracles import DEFAULT_LIMITS, OracleLimits, maximum_independent_set, omega
from .patterns import PatternDigraph, decompose, product_coloring

__all__ = [
    "BoundReport",
    "Extraction",
    "InducedTree",
    "ProperColoring",
    "certificate_to_json",
    "chi_bound",
    "color_or_find_forest",
    "extract_independent",
    "parse_certificate",
    "prune_children",
    "tree_vertex_count",
    "verify_certificate",
]


def tree_vertex_count(depth: int, branching: int) -> int:
    """Vertices of the complete ``branching``-ary tree of the given depth."""
    if depth < 0 or branching < 1:
        raise ValueError("need depth >= 0 and branching >= 1")
    if branching == 1:
        return depth + 1
    return (branching ** (depth + 1) - 1) // (branching - 1)


@dataclass(frozen=True)
class BoundReport:
    """Two closed-form palette bounds, exact integers throughout.

    ``stated_bound`` is (2 r k^d w^2)^(4^d), phrased in the raw branching
    parameter; ``derived_bound`` replaces k^d w by the vertex count of the
    tree the per-pattern step embeds, (2 r |T| w)^(4^d), and is what the
    pipeline's coloring obligation is keyed on. The derived form dominates
    whenever k^d w >= 2.
    """

    d: int
    r: int
    k: int
    omega: int
    tree_branching: int
    tree_size: int
    stated_bound: int
    derived_bound: int


def chi_bound(d: int, r: int, k: int, omega: int) -> BoundReport:
    if d < 1 or r < 0 or k < 1 or omega < 1:
        raise ValueError("need d >= 1, r >= 0, k >= 1, omega >= 1")
    branching = k**d * omega
    size = tree_vertex_count(r, branching)
    patterns = 4**d
    return BoundReport(
        d=d,
        r=r,
        k=k,
        omega=omega,
        tree_branching=branching,
        tree_size=size,
        stated_bound=(2 * r * k**d * omega**2) ** patterns,
        derived_bound=(2 * r * size * omega) ** patterns,
    )


class Extraction(NamedTuple):
    ids: tuple[int, ...]
    shortfall: bool


def _interval_mis(boxes: Sequence[Box], axis: int) -> list[int]:
    """Exact maximum independent set of an interval graph, greedy by hi."""
    chosen: list[int] = []
    last_hi = None
    for b in sorted(boxes, key=lambda b: (b.side(axis).hi, b.id)):
        if last_hi is None or b.side(axis).lo > last_hi:
            chosen.append(b.id)
            last_hi = b.side(axis).hi
    return chosen


def _interval_max_clique(boxes: Sequence[Box], axis: int) -> list[int]:
    """Ids of intervals through the first deepest sweep point (exact)."""
    events = sorted(
        (b.side(axis).lo, 0, b.id) for b in boxes
    ) + sorted((b.side(axis).hi, 1, b.id) for b in boxes)
    events.sort()
    active: set[int] = set()
    best: frozenset[int] = frozenset()
    for _, is_hi, bid in events:
        if is_hi:
            active.discard(bid)
        else:
            active.add(bid)
            if len(active) > len(best):
                best = frozenset(active)
    return sorted(best)


def extract_independent(
    boxes: Sequence[Box], target: int | None = None
) -> Extraction:
    """Pairwise-disjoint boxes, at least ceil((n / omega)^(1/d)) of them.

    Recursive: the last axis's intervals form an interval graph; either its
    exact independent set is large, or its deepest point is covered by many
    boxes which all meet there, and those recurse one axis down. Truncates
    to ``target`` when given; flags a shortfall (returning everything
    found) when the target is out of reach.
    """
    if not boxes:
        raise ValueError("empty box collection")
    if target is not None and target < 1:
        raise ValueError("target must be positive")
    d = boxes[0].dim
    if any(b.dim != d for b in boxes):
        raise ValueError("dimension mismatch")
    if d == 1:
        ids = _interval_mis(boxes, 0)
    else:
        by_id = {b.id: b for b in boxes}
        option_a = _interval_mis(boxes, d - 1)
        stack_ids = _interval_max_clique(boxes, d - 1)
        projected = [Box(i, by_id[i].sides[:-1]) for i in stack_ids]
        option_b = list(extract_independent(projected).ids)
        ids = option_a if len(option_a) >= len(option_b) else option_b
    ids = sorted(ids)
    if target is None:
        return Extraction(tuple(ids), False)
    if len(ids) >= target:
        return Extraction(tuple(ids[:target]), False)
    return Extraction(tuple(ids), True)


@dataclass(frozen=True)
class ProperColoring:
    """Coloring certificate: proper on the host graph, palette within bound."""

    coloring: Coloring
    bound: int
    per_pattern: Mapping[Pattern, int]


@dataclass(frozen=True)
class InducedTree:
    """Induced-copy certificate: tree vertex -> box id, exhaustively checkable."""

    tree: RootedTree
    mapping: Mapping[int, int]
    r: int
    k: int


Certificate = ProperColoring | InducedTree


def prune_children(
    emb: CalmEmbedding,
    boxes: Sequence[Box],
    k: int,
    limits: OracleLimits = DEFAULT_LIMITS,
) -> InducedTree:
    """Thin an embedded wide tree down to an induced k-ary certificate.

    Level by level each kept vertex selects k of its children whose boxes
    are pairwise disjoint: by the containment bound the k^d * omega
    children always contain k disjoint ones. Uses the exact independence
    oracle when the child count is within limits, else the constructive
    extraction. The final mapping is re-verified pairwise against the
    boxes; any failure is a bug, not an input condition.
    """
    if k < 1:
        raise ValueError("k must be positive")
    by_id = {b.id: b for b in boxes}
    big = emb.tree
    r = big.depth()
    parent: list[int | None] = [None]
    mapping = {0: emb.phi[big.root]}
    frontier = [(0, big.root)]  # (new vertex, big-tree vertex)
    for _ in range(r):
        next_frontier = []
        for new_v, big_v in frontier:
            kids = big.children[big_v]
            kid_boxes = [by_id[emb.phi[c]] for c in kids]
            if len(kid_boxes) <= limits.omega:
                sub, back = _disjointness_graph(kid_boxes)
                witness = maximum_independent_set(sub, limits)
                chosen_ids = sorted(back[i] for i in witness)[:k]
                shortfall = len(witness) < k
            else:
                ext = extract_independent(kid_boxes, target=k)
                chosen_ids = list(ext.ids)
                shortfall = ext.shortfall
            if shortfall:
                raise InternalInvariantError(
                    f"only {len(chosen_ids)} disjoint children of tree vertex "
                    f"{big_v}, needed {k}; contradicts the containment bound"
                )
            chosen_set = set(chosen_ids)
            for c in kids:
                if emb.phi[c] in chosen_set:
                    parent.append(new_v)
                    nv = len(parent) - 1
                    mapping[nv] = emb.phi[c]
                    next_frontier.append((nv, c))
        frontier = next_frontier
    tree = complete_kary_tree(r, k)
    if tree.n != len(parent):
        raise InternalInvariantError("pruned tree has wrong size")
    cert = InducedTree(tree, mapping, r, k)
    problem = _induced_tree_violation(cert, boxes)
    if problem:
        raise InternalInvariantError(f"pruned certificate not induced: {problem}")
    return cert


def _disjointness_graph(boxes: Sequence[Box]) -> tuple[Graph, dict[int, int]]:
    """Intersection graph of arbitrary-id boxes, relabeled to 0..k-1."""
    order = sorted(boxes, key=lambda b: b.id)
    edges = [
        (i, j)
        for i in range(len(order))
        for j in range(i + 1, len(order))
        if intersects(order[i], order[j])
    ]
    return Graph(len(order), edges), {i: b.id for i, b in enumerate(order)}


def _induced_tree_violation(cert: InducedTree, boxes: Sequence[Box]) -> str | None:
    """Pairwise check that the mapping is an induced copy; None when clean."""
    by_id = {b.id: b for b in boxes}
    t = cert.tree
    if set(cert.mapping) != set(range(t.n)):
        return "mapping does not cover the tree vertices"
    if len(set(cert.mapping.values())) != t.n:
        return "mapping is not injective"
    if any(v not in by_id for v in cert.mapping.values()):
        return "mapping hits an unknown box id"
    tree_edges = t.underlying_edges()
    for u in range(t.n):
        for v in range(u + 1, t.n):
            expected = (u, v) in tree_edges
            actual = intersects(by_id[cert.mapping[u]], by_id[cert.mapping[v]])
            if expected != actual:
                kind = "missing adjacency" if expected else "extra adjacency"
                return f"{kind} between tree vertices {u} and {v}"
    return None


def _interval_greedy_coloring(boxes: Sequence[Box]) -> Coloring:
    """Left-to-right sweep; uses exactly as many colors as the deepest point."""
    colors: dict[int, int] = {}
    active: list[tuple[int, int]] = []  # (hi, color)
    free: list[int] = []
    palette = 0
    for b in sorted(boxes, key=lambda b: (b.side(0).lo, b.id)):
        lo = b.side(0).lo
        while active and active[0][0] < lo:
            _, c = heapq.heappop(active)
            heapq.heappush(free, c)
        if free:
            c = heapq.heappop(free)
        else:
            c = palette
            palette += 1
        colors[b.id] = c
        heapq.heappush(active, (b.side(0).hi, c))
    return Coloring(colors, palette)


def color_or_find_forest(
    boxes: Sequence[Box],
    r: int,
    k: int,
    limits: OracleLimits = DEFAULT_LIMITS,
    omega_bound: int | None = None,
    threads: int = 1,
) -> Certificate:
    """Proper coloring within the derived bound, or an induced tree.

    Expects normalized boxes with ids 0..n-1. ``omega_bound`` may supply a
    caller-guaranteed upper bound on the clique number to skip the exact
    oracle on instances above its limit. With r = 0 the certificate is the
    trivial single-vertex tree (any box is one); d = 1 instances specialize
    to the interval greedy sweep, which colors with exactly omega colors.
    """
    if not boxes:
        raise ValueError("empty box collection")
    if r < 0 or k < 1:
        raise ValueError("need r >= 0 and k >= 1")
    if threads < 1:
        raise ValueError("threads must be positive")
    if omega_bound is not None and omega_bound < 1:
        raise ValueError("omega bound must be positive")
    d = boxes[0].dim
    g = intersection_graph(boxes)

    if r == 0:
        cert = InducedTree(RootedTree([None]), {0: 0}, 0, k)
        problem = _induced_tree_violation(cert, boxes)
        if problem:
            raise InternalInvariantError(problem)
        return cert

    if d == 1:
        coloring = _interval_greedy_coloring(boxes)
        if not coloring.is_proper_on(g):
            raise InternalInvariantError("interval sweep produced an improper coloring")
        report = chi_bound(d, r, k, max(coloring.palette_size, 1))
        if coloring.palette_size > report.derived_bound:
            raise InternalInvariantError("interval palette exceeds the derived bound")
        return ProperColoring(coloring, report.derived_bound, {})

    w = omega_bound if omega_bound is not None else omega(g, limits)
    report = chi_bound(d, r, k, w)
    family = decompose(boxes)
    big_tree = (
        complete_kary_tree(r, report.tree_branching)
        if report.tree_size <= len(boxes)
        else None
    )

    def run_pattern(pd: PatternDigraph) -> CalmEmbedding | LayeredColoring:
        if big_tree is None:
            # the tree outgrows the instance: every vertex peels immediately
            result = peel_grading(pd.digraph, report.tree_size, 2)
            if not isinstance(result, LayeredColoring):
                raise InternalInvariantError("oversized tree failed to peel out")
            return result
        return find_path_induced_tree(
            pd.digraph, g, big_tree, limits, host_clique_number=w
        )

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run_pattern, family))
    else:
        results = [run_pattern(pd) for pd in family]

    for pd, result in zip(family, results):
        if isinstance(result, CalmEmbedding):
            return prune_children(result, boxes, k, limits)

    colorings = {
        pd.pattern: result.coloring
        for pd, result in zip(family, results)
        if isinstance(result, LayeredColoring)
    }
    combined = product_coloring(family, colorings)
    if not combined.is_proper_on(g):
        raise InternalInvariantError("product coloring improper on the host graph")
    if combined.palette_size > report.derived_bound:
        raise InternalInvariantError(
            f"palette {combined.palette_size} exceeds derived bound "
            f"{report.derived_bound}"
        )
    per_pattern = {
        pd.pattern: colorings[pd.pattern].palette_size for pd in family
    }
    return ProperColoring(combined, report.derived_bound, per_pattern)


def certificate_to_json(cert: Certificate) -> str:
    """Canonical single-line JSON; byte-stable for identical certificates."""
    if isinstance(cert, ProperColoring):
        payload = {
            "kind": "coloring",
            "palette": cert.coloring.palette_size,
            "bound": cert.bound,
            "colors": {str(v): c for v, c in cert.coloring.colors.items()},
        }
    else:
        payload = {
            "kind": "induced_tree",
            "r": cert.r,
            "k": cert.k,
            "map": {str(v): b for v, b in cert.mapping.items()},
        }
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def _int_keyed(entries: dict, label: str) -> dict[int, int]:
    """Decode a JSON object with decimal-string keys and integer values."""
    out: dict[int, int] = {}
    for key, value in entries.items():
        if type(value) is not int:
            raise ValueError(f"{label} values must be integers")
        try:
            out[int(key)] = value
        except (TypeError, ValueError):
            raise ValueError(f"{label} keys must be decimal ids") from None
    return out


def parse_certificate(text: str) -> dict:
    """Parse and schema-check a certificate; ValueError on malformed input."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"bad certificate JSON: {exc}") from None
    if not isinstance(payload, dict):
        raise ValueError("certificate must be a JSON object")
    kind = payload.get("kind")
    if kind == "coloring":
        wanted = {"kind", "palette", "bound", "colors"}
        if set(payload) != wanted:
            raise ValueError(f"coloring certificate needs keys {sorted(wanted)}")
        if type(payload["palette"]) is not int or type(payload["bound"]) is not int:
            raise ValueError("palette and bound must be integers")
        if not isinstance(payload["colors"], dict):
            raise ValueError("colors must be an object")
        payload["colors"] = _int_keyed(payload["colors"], "colors")
        return payload
    if kind == "induced_tree":
        wanted = {"kind", "r", "k", "map"}
        if set(payload) != wanted:
            raise ValueError(f"induced-tree certificate needs keys {sorted(wanted)}")
        if type(payload["r"]) is not int or type(payload["k"]) is not int:
            raise ValueError("r and k must be integers")
        if payload["r"] < 0 or payload["k"] < 1:
            raise ValueError("need r >= 0 and k >= 1")
        if not isinstance(payload["map"], dict):
            raise ValueError("map must be an object")
        payload["map"] = _int_keyed(payload["map"], "map")
        return payload
    raise ValueError("certificate kind must be 'coloring' or 'induced_tree'")


def verify_certificate(boxes: Sequence[Box], payload: dict) -> tuple[bool, str]:
    """Re-verify a parsed certificate against the boxes, edge by edge.

    Returns (ok, message); a mismatched vertex set raises ValueError since
    that is an input error rather than a refutation.
    """
    n = len(boxes)
    if payload["kind"] == "coloring":
        colors: dict[int, int] = payload["colors"]
        if set(colors) != set(range(n)):
            raise ValueError("certificate colors do not cover the box ids")
        palette = payload["palette"]
        bad = next((v for v, c in colors.items() if not 0 <= c < palette), None)
        if bad is not None:
            return False, f"color of box {bad} outside the stated palette"
        if palette > payload["bound"]:
            return False, (
                f"palette {palette} exceeds the stated bound {payload['bound']}"
            )
        g = intersection_graph(boxes)
        for u, v in sorted(g.edges):
            if colors[u] == colors[v]:
                return False, f"adjacent boxes {u} and {v} share color {colors[u]}"
        return True, f"proper coloring with {palette} colors within bound"
    if tree_vertex_count(payload["r"], payload["k"]) > n:
        raise ValueError("certificate tree has more vertices than there are boxes")
    tree = complete_kary_tree(payload["r"], payload["k"])
    mapping: dict[int, int] = payload["map"]
    if set(mapping) != set(range(tree.n)):
        raise ValueError(
            f"certificate map must cover tree vertices 0..{tree.n - 1}"
        )
    if any(not 0 <= b < n for b in mapping.values()):
        raise ValueError("certificate map hits a box id out of range")
    cert = InducedTree(tree, mapping, payload["r"], payload["k"])
    problem = _induced_tree_violation(cert, boxes)
    if problem:
        return False, problem
    return True, (
        f"induced depth-{payload['r']} {payload['k']}-ary tree on {tree.n} boxes"
    )
