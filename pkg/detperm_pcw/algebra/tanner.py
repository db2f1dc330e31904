"""Tanner-graph analytics: cycles, distances, matchings and canonical completions."""

from __future__ import annotations

import logging
import math
from collections import deque
from fractions import Fraction
from typing import Hashable, Union

import networkx as nx
import numpy as np

from .errors import ContractError, ShapeError
from .gf2core import BinaryMatrix, IntVector
from .types import CompletionResult

logger = logging.getLogger("pcw.tanner")

Distance = Union[int, float]  # math.inf when unreachable


def bit_node(i: int) -> tuple[str, int]:
    return ("x", i)


def check_node(j: int) -> tuple[str, int]:
    return ("c", j)


class TannerGraph:
    """T(H): bit nodes X_i, check nodes C_j, an edge for every 1-entry of H.

    The underlying networkx graph is frozen after construction.
    """

    __slots__ = ("graph", "n_bits", "n_checks")

    def __init__(self, graph: nx.Graph, n_bits: int, n_checks: int) -> None:
        self.graph = graph
        self.n_bits = n_bits
        self.n_checks = n_checks

    @property
    def num_edges(self) -> int:
        return self.graph.number_of_edges()

    @property
    def num_nodes(self) -> int:
        return self.graph.number_of_nodes()

    def bit_neighbors(self, i: int) -> list[int]:
        return sorted(j for _, j in self.graph.neighbors(bit_node(i)))

    def check_neighbors(self, j: int) -> list[int]:
        return sorted(i for _, i in self.graph.neighbors(check_node(j)))

    def check_degree(self, j: int) -> int:
        return self.graph.degree(check_node(j))

    def _bit(self, i: int) -> tuple[str, int]:
        if not 0 <= i < self.n_bits:
            raise ShapeError(f"bit index {i} outside 0..{self.n_bits - 1}", code="index.out_of_range")
        return bit_node(i)


def build_tanner(H: BinaryMatrix) -> TannerGraph:
    g = nx.Graph()
    g.add_nodes_from((bit_node(i) for i in range(H.n)), bipartite=0)
    g.add_nodes_from((check_node(j) for j in range(H.m)), bipartite=1)
    rows, cols = np.nonzero(H.bits)
    g.add_edges_from((check_node(int(j)), bit_node(int(i))) for j, i in zip(rows, cols))
    return TannerGraph(nx.freeze(g), H.n, H.m)


def girth(g: TannerGraph) -> Distance:
    """Shortest cycle length by a BFS from every node; inf when acyclic."""
    best: Distance = math.inf
    adj = g.graph.adj
    for source in g.graph.nodes:
        dist: dict[Hashable, int] = {source: 0}
        parent: dict[Hashable, Hashable] = {source: source}
        queue = deque([source])
        while queue:
            v = queue.popleft()
            if 2 * dist[v] + 1 >= best:
                break
            for w in adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    queue.append(w)
                elif parent[v] != w:
                    best = min(best, dist[v] + dist[w] + 1)
    return best


def _column_overlaps(H: BinaryMatrix) -> np.ndarray:
    bits = H.bits.astype(np.int64)
    overlap = bits.T @ bits
    np.fill_diagonal(overlap, 0)
    return overlap


def has_four_cycle(H: BinaryMatrix) -> bool:
    """Two columns sharing two or more rows close a four-cycle."""
    return bool((_column_overlaps(H) >= 2).any())


def four_cycle_count(H: BinaryMatrix) -> int:
    overlap = np.triu(_column_overlaps(H), k=1)
    return int((overlap * (overlap - 1) // 2).sum())


def is_tree(g: TannerGraph) -> bool:
    """Acyclic, i.e. |E| = |V| - #components."""
    graph = g.graph
    return graph.number_of_edges() == graph.number_of_nodes() - nx.number_connected_components(graph)


def bit_distance(g: TannerGraph, i: int, i2: int) -> Distance:
    try:
        return nx.shortest_path_length(g.graph, g._bit(i), g._bit(i2))
    except nx.NetworkXNoPath:
        return math.inf


def count_perfect_matchings(g: TannerGraph) -> int:
    """Perfect matchings by backtracking over check nodes, fewest choices first."""
    if g.n_checks != g.n_bits:
        raise ShapeError(f"sides differ: {g.n_checks} checks vs {g.n_bits} bits", code="shape.not_square")
    adjacency = [g.check_neighbors(j) for j in range(g.n_checks)]
    order = sorted(range(g.n_checks), key=lambda j: len(adjacency[j]))
    used: set[int] = set()

    def extend(k: int) -> int:
        if k == len(order):
            return 1
        total = 0
        for i in adjacency[order[k]]:
            if i not in used:
                used.add(i)
                total += extend(k + 1)
                used.discard(i)
        return total

    return extend(0)


# ── Canonical completion ────────────────────────────────────────


def _bit_levels(g: TannerGraph, root: int) -> dict[Hashable, int]:
    source = g._bit(root)
    if not nx.is_connected(g.graph):
        raise ContractError("canonical completion needs a connected Tanner graph", code="graph.disconnected")
    return nx.single_source_shortest_path_length(g.graph, source)


def _level_divisors(g: TannerGraph, dist: dict[Hashable, int]) -> dict[int, int]:
    degrees: dict[int, int] = {}
    for j in range(g.n_checks):
        level = dist[check_node(j)]
        deg = g.check_degree(j)
        if degrees.setdefault(level, deg) != deg:
            raise ContractError(
                f"check nodes at distance {level} have degrees {degrees[level]} and {deg}",
                code="completion.level_degree",
            )
    return {level: deg - 1 for level, deg in degrees.items()}


def canonical_completion(g: TannerGraph, root: int) -> IntVector:
    """Breadth-first completion from ``root``, as the smallest integer vector.

    The root gets 1; crossing a check node of degree d on the way out divides
    by d-1. Check nodes at equal distance from the root must share a degree.
    """
    dist = _bit_levels(g, root)
    divisors = _level_divisors(g, dist)
    values = []
    for i in range(g.n_bits):
        value = Fraction(1)
        for level in range(1, dist[bit_node(i)], 2):
            value /= divisors[level]
        values.append(value)
    scale = math.lcm(*(v.denominator for v in values))
    omega = tuple(int(v * scale) for v in values)
    logger.debug("Completion rooted at X_%d scaled by %d: %s", root, scale, omega)
    return omega


def verify_signed_completion(H: BinaryMatrix, root: int) -> CompletionResult:
    """Sign the completion by distance mod 4 and check it against H_{J',I}."""
    g = build_tanner(H)
    omega = canonical_completion(g, root)
    dist = _bit_levels(g, root)
    nu = tuple(w if dist[bit_node(i)] % 4 == 0 else -w for i, w in enumerate(omega))
    jprime = tuple(
        j
        for j in range(H.m)
        if sum(1 for i in H.row_support(j) if dist[bit_node(i)] < dist[check_node(j)]) == 1
    )
    verified = all(sum(nu[i] for i in H.row_support(j)) == 0 for j in jprime)
    return CompletionResult(root=root, omega=omega, nu=nu, jprime=jprime, verified=verified)
