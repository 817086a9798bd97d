"""Exact minimum-weight matching on the cross-response graph.

The graph has one vertex per summand (standard order, 1-based), an edge
(i, j), i < j, with strictly negative integer weight wherever Right can
improve on responding locally, and an implicit zero-weight loop at every
vertex ("stay local").  Loops are never materialized: an unmatched
vertex simply contributes 0, so only negative edges are ever selected
and the optimum is always <= 0.

``min_weight_matching`` is exact: subset DP over vertex bitmasks up to
20 vertices, blossom-based search (networkx) on negated weights above
that.  ``brute_force_matching`` is the independent enumeration oracle.
Ties are broken by the lexicographically smallest sorted pair list.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidPositionError, SizeLimitError

_DP_MAX = 20
_BRUTE_MAX = 12


@dataclass(frozen=True)
class AuxGraph:
    """Weighted graph on summand indices 1..n; listed edges are negative."""

    n: int
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        seen: set[tuple[int, int]] = set()
        for i, j, w in self.edges:
            if not (1 <= i < j <= self.n):
                raise InvalidPositionError(f"edge ({i},{j}) out of range for n={self.n}")
            if w >= 0:
                raise InvalidPositionError(f"edge ({i},{j}) must have negative weight, got {w}")
            if (i, j) in seen:
                raise InvalidPositionError(f"duplicate edge ({i},{j})")
            seen.add((i, j))


@dataclass(frozen=True)
class Matching:
    """A vertex-disjoint edge set with its total weight."""

    pairs: tuple[tuple[int, int], ...]
    total_weight: int

    def __post_init__(self):
        used: set[int] = set()
        for i, j in self.pairs:
            if i in used or j in used:
                raise InvalidPositionError("matching pairs must be vertex-disjoint")
            used.update((i, j))

    def partner(self, vertex: int) -> int | None:
        for i, j in self.pairs:
            if vertex == i:
                return j
            if vertex == j:
                return i
        return None


def build_aux_graph(games: Sequence) -> AuxGraph:
    """Cross-response graph of normalized simple hot games in standard order.

    ``games`` must all have same-round option 0 and be sorted by a - c
    descending.  Edge (i, j), i < j, exists iff a_i + c_j < 0 and then
    carries weight a_i + c_j (the change versus local play).
    """
    for g in games:
        if g.b != 0:
            raise InvalidPositionError(f"game {g} is not normalized (b != 0)")
    diffs = [g.a - g.c for g in games]
    if any(diffs[i] < diffs[i + 1] for i in range(len(diffs) - 1)):
        raise InvalidPositionError("games are not in standard index order")
    edges = []
    for i in range(len(games)):
        for j in range(i + 1, len(games)):
            w = games[i].a + games[j].c
            if w < 0:
                edges.append((i + 1, j + 1, w))
    return AuxGraph(len(games), tuple(edges))


def _better(a: tuple[int, tuple], b: tuple[int, tuple]) -> bool:
    return a < b


def _dp_matching(graph: AuxGraph) -> Matching:
    weight = {}
    neighbors: dict[int, list[int]] = {v: [] for v in range(graph.n)}
    for i, j, w in graph.edges:
        weight[(i - 1, j - 1)] = w
        neighbors[i - 1].append(j - 1)
        neighbors[j - 1].append(i - 1)
    for v in neighbors:
        neighbors[v].sort()

    memo: dict[int, tuple[int, tuple]] = {0: (0, ())}

    def best(mask: int) -> tuple[int, tuple]:
        cached = memo.get(mask)
        if cached is not None:
            return cached
        v = (mask & -mask).bit_length() - 1
        result = best(mask & ~(1 << v))  # leave v unmatched (weight-0 loop)
        for u in neighbors[v]:
            if u > v and (mask >> u) & 1:
                w = weight[(v, u)]
                sub_w, sub_pairs = best(mask & ~(1 << v) & ~(1 << u))
                cand = (w + sub_w, ((v + 1, u + 1), *sub_pairs))
                if _better(cand, result):
                    result = cand
        memo[mask] = result
        return result

    total, pairs = best((1 << graph.n) - 1)
    return Matching(pairs, total)


def _blossom_weight(edges: list[tuple[int, int, int]]) -> tuple[int, set[tuple[int, int]]]:
    import networkx as nx

    g = nx.Graph()
    for i, j, w in edges:
        g.add_edge(i, j, weight=-w)
    mate = nx.max_weight_matching(g, maxcardinality=False)
    pairs = {tuple(sorted(e)) for e in mate}
    total = -sum(g[i][j]["weight"] for i, j in pairs)
    return total, pairs


def _blossom_matching(graph: AuxGraph) -> Matching:
    # Exact optimum from blossom augmentation, then a greedy pass that
    # re-solves reduced graphs to pin the lexicographically smallest
    # optimal pair list.
    edges = [(i, j, w) for i, j, w in graph.edges]
    target, _ = _blossom_weight(edges) if edges else (0, set())
    chosen: list[tuple[int, int]] = []
    chosen_w = 0
    used: set[int] = set()
    for i, j, w in sorted(edges):
        if chosen_w == target:
            break
        if i in used or j in used:
            continue
        rest = [
            e for e in edges if not {e[0], e[1]} & (used | {i, j})
        ]
        rest_w = _blossom_weight(rest)[0] if rest else 0
        if chosen_w + w + rest_w == target:
            chosen.append((i, j))
            chosen_w += w
            used.update((i, j))
    return Matching(tuple(chosen), chosen_w)


def min_weight_matching(graph: AuxGraph) -> Matching:
    """Exact minimum-weight matching of ``graph`` (deterministic tie-break)."""
    if graph.n <= _DP_MAX:
        return _dp_matching(graph)
    return _blossom_matching(graph)


def brute_force_matching(graph: AuxGraph) -> Matching:
    """Exhaustive enumeration oracle; enforced to n <= 12."""
    if graph.n > _BRUTE_MAX:
        raise SizeLimitError(f"brute-force matching is capped at n={_BRUTE_MAX}")
    adj = {}
    for i, j, w in graph.edges:
        adj.setdefault(i, []).append((j, w))
    best: tuple[int, tuple] = (0, ())

    def walk(v: int, used: frozenset[int], total: int, pairs: tuple):
        nonlocal best
        if v > graph.n:
            cand = (total, pairs)
            if _better(cand, best):
                best = cand
            return
        walk(v + 1, used, total, pairs)
        if v not in used:
            for u, w in sorted(adj.get(v, ())):
                if u not in used:
                    walk(v + 1, used | {v, u}, total + w, pairs + ((v, u),))

    walk(1, frozenset(), 0, ())
    return Matching(best[1], best[0])


def matching_to_obj(graph: AuxGraph, matching: Matching) -> dict:
    return {
        "n": graph.n,
        "edges": [[i, j, w] for i, j, w in graph.edges],
        "matching": [[i, j] for i, j in matching.pairs],
        "weight": matching.total_weight,
    }


def matching_to_json(graph: AuxGraph, matching: Matching) -> str:
    return json.dumps(matching_to_obj(graph, matching), separators=(",", ":"))


def dot_export(graph: AuxGraph, matching: Matching | None = None, labels: Sequence[str] | None = None) -> str:
    """DOT text of the graph with matched edges highlighted."""
    matched = set(matching.pairs) if matching else set()
    lines = ["graph cross_response {"]
    for v in range(1, graph.n + 1):
        label = labels[v - 1] if labels else str(v)
        lines.append(f'  {v} [label="{label}"];')
    for i, j, w in graph.edges:
        style = ' style=bold color=red penwidth=2' if (i, j) in matched else ""
        lines.append(f'  {i} -- {j} [label="{w}"{style}];')
    lines.append("}")
    return "\n".join(lines)
