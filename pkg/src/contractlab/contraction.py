"""Edge-contraction semantics: quotient graphs, induced distances, and verifiers.

Contracting an edge set C merges the connected components of (V, C) into
supernodes; the induced distance between two original vertices is the
shortest-path distance between their supernodes.  Equivalently (and this is
what the hot paths use) it is the shortest-path distance in the original
graph with every contracted edge's weight set to zero.

Validity of a contraction set against a tolerance (alpha, beta) means
``d_C(u, v) >= d(u, v)/alpha - beta``:

* strong mode checks every vertex pair, merged pairs included;
* weak mode additionally requires C to be a proper subset of the edges and
  only checks pairs that were not merged (``d_C != 0``).

All comparisons are carried out in scaled integer arithmetic, so verdicts are
exact; ties at equality count as valid.
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

from .graphs import (
    DisconnectedGraphError,
    DistanceMatrix,
    Graph,
    is_connected,
    shortest_distances,
)


@dataclass(frozen=True)
class Tolerance:
    """The pair (alpha, beta) a contraction is validated against.

    alpha must be positive and beta non-negative.  alpha >= 1 is the intended
    regime (with alpha < 1 even the empty set can fail); values below 1 are
    accepted because the inequality stays meaningful.
    """

    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        a = Fraction(self.alpha)
        b = Fraction(self.beta)
        if a <= 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if b < 0:
            raise ValueError(f"beta must be non-negative, got {self.beta}")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)


def normalize_edge_ids(g: Graph, edge_ids: Iterable[int]) -> tuple[int, ...]:
    """Deduplicate, sort and range-check a contraction set for ``g``."""
    ids = sorted(set(edge_ids))
    for e in ids:
        if not 0 <= e < g.edge_count:
            raise ValueError(f"edge id {e} out of range [0,{g.edge_count})")
    return tuple(ids)


def _partition_labels(g: Graph, ids: Iterable[int]) -> tuple[list[int], int]:
    """Label each vertex with the minimum vertex of its (V, C)-component,
    then renumber labels by first appearance.  Returns (labels, block count)."""
    n = g.vertex_count
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in ids:
        u, v, _ = g.edges[e]
        ru, rv = find(u), find(v)
        if ru != rv:
            if ru > rv:
                ru, rv = rv, ru
            parent[rv] = ru
    label: list[int] = [0] * n
    seen: dict[int, int] = {}
    for v in range(n):
        r = find(v)
        if r not in seen:
            seen[r] = len(seen)
        label[v] = seen[r]
    return label, len(seen)


@dataclass(frozen=True)
class QuotientGraph:
    """Result of contracting an edge set: partition, collapsed edges, distances.

    ``partition[v]`` is the supernode id of original vertex v (ids numbered by
    first appearance, so vertex 0's block is supernode 0).  Parallel quotient
    edges are collapsed to the minimum weight and self-loops dropped; the
    distances are unaffected by either.
    """

    source: Graph
    contracted: tuple[int, ...]
    partition: tuple[int, ...]
    supernode_count: int
    quotient: Graph
    contracted_distances: DistanceMatrix

    def distance(self, u: int, v: int) -> Fraction | float:
        """Induced distance between two original vertices."""
        return self.contracted_distances[self.partition[u], self.partition[v]]


def contract(g: Graph, edge_ids: Iterable[int]) -> QuotientGraph:
    """Contract the given edges and compute the full quotient picture."""
    ids = normalize_edge_ids(g, edge_ids)
    label, k = _partition_labels(g, ids)
    best: dict[tuple[int, int], Fraction] = {}
    for u, v, w in g.edges:
        a, b = label[u], label[v]
        if a == b:
            continue
        if a > b:
            a, b = b, a
        cur = best.get((a, b))
        if cur is None or w < cur:
            best[(a, b)] = w
    quotient = Graph(k, tuple((a, b, w) for (a, b), w in sorted(best.items())))
    return QuotientGraph(
        source=g,
        contracted=ids,
        partition=tuple(label),
        supernode_count=k,
        quotient=quotient,
        contracted_distances=shortest_distances(quotient),
    )


def contracted_distance(g: Graph, edge_ids: Iterable[int], u: int, v: int) -> Fraction | float:
    """Induced distance between u and v after contracting the given edges."""
    n = g.vertex_count
    if not (0 <= u < n) or not (0 <= v < n):
        raise ValueError(f"vertex out of range [0,{n}): ({u},{v})")
    return contract(g, edge_ids).distance(u, v)


class ViolationWitness(NamedTuple):
    """Why a contraction set fails.  kind is 'pair' or 'not-proper-subset'.

    For a pair witness, (u, v) is the lexicographically smallest violating
    pair with its original and induced distances.
    """

    kind: str
    u: int | None = None
    v: int | None = None
    distance: Fraction | None = None
    contracted_distance: Fraction | None = None

    def to_json_dict(self) -> dict:
        if self.kind != "pair":
            return {"kind": self.kind}
        return {
            "kind": "pair",
            "u": self.u,
            "v": self.v,
            "distance": str(self.distance),
            "contracted_distance": str(self.contracted_distance),
        }


class ToleranceCheck:
    """Scaled-integer evaluation of the tolerance inequality over edge subsets.

    Weights are multiplied by the lcm L of their denominators so distances are
    integers; with alpha = p/q and beta = r/s the test
    ``d_C >= d/alpha - beta`` becomes ``p*s*D_C >= q*s*D - p*r*L`` where D and
    D_C are scaled distances.  One instance precomputes base distances and the
    per-pair right-hand sides; subsets are passed as bitmasks over edge ids.

    This class is also the search engine the exact solvers drive: it exposes
    induced distances, validity, the first failing pair, and all failing
    pairs for a subset.
    """

    def __init__(self, g: Graph, tolerance: Tolerance):
        if not is_connected(g):
            raise DisconnectedGraphError("tolerance checks require a connected graph")
        self.graph = g
        self.tolerance = tolerance
        n = g.vertex_count
        m = g.edge_count
        self.n = n
        self.m = m
        self.full_mask = (1 << m) - 1

        scale = math.lcm(1, *(w.denominator for _, _, w in g.edges))
        self.scale = scale
        self.int_weights = [int(w * scale) for _, _, w in g.edges]
        uniq = set(self.int_weights)
        self._uniform = uniq.pop() if len(uniq) == 1 else None

        # adjacency as flat lists: (neighbor, edge_id)
        self._adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for eid, (u, v, _) in enumerate(g.edges):
            self._adj[u].append((v, eid))
            self._adj[v].append((u, eid))

        base = self._all_pairs(0)
        self.base_scaled = base

        a, b = tolerance.alpha.numerator, tolerance.alpha.denominator
        r, s = tolerance.beta.numerator, tolerance.beta.denominator
        self._lhs_coeff = a * s
        offset = a * r * scale
        self._rhs = [[b * s * base[u][v] - offset for v in range(n)] for u in range(n)]
        self.pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]

    # -- distances ------------------------------------------------------

    def _sssp(self, src: int, cmask: int) -> list[int]:
        """Scaled distances from src with contracted edges costing zero."""
        n = self.n
        if self._uniform is not None:
            # 0-1 BFS over hop counts, scaled up afterwards
            w = self._uniform
            dist = [-1] * n
            dist[src] = 0
            dq = deque([src])
            while dq:
                u = dq.popleft()
                du = dist[u]
                for v, eid in self._adj[u]:
                    cost = 0 if (cmask >> eid) & 1 else 1
                    nd = du + cost
                    if dist[v] == -1 or nd < dist[v]:
                        dist[v] = nd
                        if cost == 0:
                            dq.appendleft(v)
                        else:
                            dq.append(v)
            return [d * w for d in dist]
        weights = self.int_weights
        inf = math.inf
        dist = [inf] * n
        dist[src] = 0
        heap = [(0, src)]
        while heap:
            d, u = heapq.heappop(heap)
            if d > dist[u]:
                continue
            for v, eid in self._adj[u]:
                nd = d + (0 if (cmask >> eid) & 1 else weights[eid])
                if nd < dist[v]:
                    dist[v] = nd
                    heapq.heappush(heap, (nd, v))
        return [int(d) for d in dist]

    def _all_pairs(self, cmask: int) -> list[list[int]]:
        return [self._sssp(src, cmask) for src in range(self.n)]

    def induced_scaled(self, cmask: int) -> list[list[int]]:
        """Scaled induced distance table for the subset (bitmask)."""
        return self._all_pairs(cmask)

    # -- verdicts ---------------------------------------------------------

    def first_violation(self, cmask: int, weak: bool) -> tuple[int, int, int] | str | None:
        """None if valid; 'not-proper-subset'; or the lexicographically first
        failing pair as (u, v, scaled induced distance)."""
        if weak and cmask == self.full_mask:
            return "not-proper-subset"
        lhs = self._lhs_coeff
        rhs = self._rhs
        dc = self._all_pairs(cmask)
        for u, v in self.pairs:
            d = dc[u][v]
            if weak and d == 0:
                continue
            if lhs * d < rhs[u][v]:
                return (u, v, d)
        return None

    def is_valid(self, cmask: int, weak: bool) -> bool:
        return self.first_violation(cmask, weak) is None

    def failing_pairs(self, cmask: int, weak: bool, dc: list[list[int]] | None = None) -> list[tuple[int, int]]:
        """All pairs violating the inequality (exempting merged pairs in weak mode)."""
        if dc is None:
            dc = self._all_pairs(cmask)
        lhs = self._lhs_coeff
        rhs = self._rhs
        out = []
        for u, v in self.pairs:
            d = dc[u][v]
            if weak and d == 0:
                continue
            if lhs * d < rhs[u][v]:
                out.append((u, v))
        return out

    def unscale(self, value: int) -> Fraction:
        return Fraction(value, self.scale)


def _verdict(g: Graph, edge_ids: Iterable[int], tolerance: Tolerance, weak: bool) -> bool:
    ids = normalize_edge_ids(g, edge_ids)
    check = ToleranceCheck(g, tolerance)
    mask = 0
    for e in ids:
        mask |= 1 << e
    return check.is_valid(mask, weak)


def is_contraction(g: Graph, edge_ids: Iterable[int], tolerance: Tolerance) -> bool:
    """True iff contracting the set keeps every pair within tolerance.

    Merged pairs are not exempt here: they need ``0 >= d(u,v)/alpha - beta``,
    so with beta = 0 only the empty set qualifies.
    """
    return _verdict(g, edge_ids, tolerance, weak=False)


def is_weak_contraction(g: Graph, edge_ids: Iterable[int], tolerance: Tolerance) -> bool:
    """True iff the set is a proper subset of the edges and every unmerged
    pair stays within tolerance."""
    return _verdict(g, edge_ids, tolerance, weak=True)


def violation_witness(
    g: Graph, edge_ids: Iterable[int], tolerance: Tolerance, weak: bool
) -> ViolationWitness | None:
    """None when the corresponding verifier accepts, else a deterministic witness.

    Pair witnesses pick the lexicographically smallest violating (u, v); a
    weak-mode set equal to all edges yields kind 'not-proper-subset'.
    """
    ids = normalize_edge_ids(g, edge_ids)
    check = ToleranceCheck(g, tolerance)
    mask = 0
    for e in ids:
        mask |= 1 << e
    hit = check.first_violation(mask, weak)
    if hit is None:
        return None
    if hit == "not-proper-subset":
        return ViolationWitness(kind="not-proper-subset")
    u, v, d = hit
    return ViolationWitness(
        kind="pair",
        u=u,
        v=v,
        distance=check.unscale(check.base_scaled[u][v]),
        contracted_distance=check.unscale(d),
    )
