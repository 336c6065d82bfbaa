"""Similarity graphs and threshold-based connected components.

A day's articles become nodes; every pair gets an undirected edge weighted
by cosine similarity (all-pairs is fine at daily scale). Dropping edges
below the threshold and taking connected components yields the candidate
event clusters; components smaller than the minimum size fall into the
singleton pool. The partition is independent of node and edge input order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from pressgauge.clustering.embeddings import EmbeddingVector, cosine_similarity


@dataclass(frozen=True)
class SimilarityGraph:
    nodes: tuple[str, ...]
    edges: tuple[tuple[str, str, float], ...]  # (a, b, weight), a < b, no self-edges

    def __post_init__(self):
        known = set(self.nodes)
        if len(known) != len(self.nodes):
            raise ValueError("duplicate node ids")
        for a, b, w in self.edges:
            if a == b:
                raise ValueError(f"self-edge on {a}")
            if a not in known or b not in known:
                raise ValueError(f"edge endpoint not in nodes: ({a}, {b})")
            if not (-1.0 <= w <= 1.0):
                raise ValueError(f"edge weight {w} outside [-1, 1]")


def build_graph(vectors: Sequence[EmbeddingVector]) -> SimilarityGraph:
    """All-pairs cosine similarity graph over the given vectors."""
    ordered = sorted(vectors, key=lambda v: v.id)
    edges = []
    for i, a in enumerate(ordered):
        for b in ordered[i + 1 :]:
            edges.append((a.id, b.id, cosine_similarity(a, b)))
    return SimilarityGraph(nodes=tuple(v.id for v in ordered), edges=tuple(edges))


class _UnionFind:
    def __init__(self, items: Sequence[str]):
        self.parent = {item: item for item in items}

    def find(self, item: str) -> str:
        root = item
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[item] != root:  # path compression
            self.parent[item], item = root, self.parent[item]
        return root

    def union(self, a: str, b: str) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # Deterministic: the lexicographically smaller root wins.
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def threshold_components(
    graph: SimilarityGraph,
    threshold: float,
    min_cluster_size: int = 2,
) -> tuple[list[frozenset[str]], frozenset[str]]:
    """Connected components of the subgraph with weight >= threshold.

    Returns (clusters, singleton pool): components of at least
    ``min_cluster_size`` nodes, ordered by size descending then smallest
    member id, plus everything else. Input order never affects the result.
    """
    uf = _UnionFind(sorted(graph.nodes))
    for a, b, w in sorted(graph.edges):
        if w >= threshold:
            uf.union(a, b)

    groups: dict[str, set[str]] = {}
    for node in graph.nodes:
        groups.setdefault(uf.find(node), set()).add(node)

    clusters = []
    singletons: set[str] = set()
    for members in groups.values():
        if len(members) >= min_cluster_size:
            clusters.append(frozenset(members))
        else:
            singletons.update(members)
    clusters.sort(key=lambda c: (-len(c), min(c)))
    return clusters, frozenset(singletons)
