"""Partition quality scoring.

total = closeness_mean - lambda_cut * cut_fraction - mu_small * small_share

closeness(C) is the intra-cluster tie density 2*T/(|C|*(|C|-1)) where T
counts active edges inside C; singletons score 0. closeness_mean is the
size-weighted mean over clusters, so it rewards covering many nodes with
dense clusters rather than farming tiny dense ones. cut_fraction is the
share of aggregated edge weight crossing clusters, which is where weights
(not just tie counts) enter. small_share penalizes fragments: it counts
connected parts below sigma_small nodes, so a stray node is penalized the
same whether it sits alone or is glued onto an unrelated cluster.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .errors import (
    ConfigInvalid,
    EmptyCluster,
    EmptyPartition,
    StaleSnapshot,
    UnknownNode,
)
from .graph import AttributeView, Partition


@dataclass(frozen=True)
class FitnessParams:
    """Weights of the three fitness terms. All must be finite and >= 0."""

    lambda_cut: float = 2.5
    mu_small: float = 0.5
    sigma_small: int = 2

    def __post_init__(self):
        for name in ("lambda_cut", "mu_small"):
            v = float(getattr(self, name))
            if not math.isfinite(v) or v < 0:
                raise ConfigInvalid(f"{name} must be finite and >= 0, got {v!r}")
            object.__setattr__(self, name, v)
        if int(self.sigma_small) < 0:
            raise ConfigInvalid(f"sigma_small must be >= 0, got {self.sigma_small!r}")
        object.__setattr__(self, "sigma_small", int(self.sigma_small))


@dataclass(frozen=True)
class FitnessValue:
    """Scored partition: total plus its three components, for logging."""

    total: float
    closeness_mean: float
    cut_fraction: float
    small_count: int


def closeness(cluster: Iterable[int], view: AttributeView) -> float:
    """Intra-cluster tie density in [0, 1]; singletons score 0."""
    members = tuple(cluster)
    if not members:
        raise EmptyCluster("closeness of an empty cluster")
    inside = set(members)
    size = len(members)
    ties = 0
    for node in members:
        for other, _ in view.neighbors(node):  # raises UnknownNode for foreigners
            if other in inside:
                ties += 1
    if size == 1:
        return 0.0
    return ties / (size * (size - 1))  # ties double-counted, so this is 2T/(s(s-1))


def fitness(
    partition: Partition, view: AttributeView, params: FitnessParams | None = None
) -> FitnessValue:
    """Score a partition against the view it was built from.

    The partition must carry the view's snapshot version (StaleSnapshot
    otherwise) and must cover the view's active nodes exactly.
    """
    if params is None:
        params = FitnessParams()
    if partition.source_version != view.version:
        raise StaleSnapshot(
            f"partition is from snapshot version {partition.source_version}, "
            f"view is at {view.version}"
        )
    clusters = partition.clusters
    if not clusters:
        raise EmptyPartition("fitness of a partition with no clusters")

    node_index = view.node_index
    n = len(view.nodes)
    member_of = [-1] * n
    covered = 0
    for ci, cluster in enumerate(clusters):
        for node in cluster:
            ix = node_index.get(node)
            if ix is None:
                raise UnknownNode(f"node {node} is not active in this view")
            member_of[ix] = ci
            covered += 1
    if covered != n:
        raise ValueError(f"partition covers {covered} of {n} active nodes")

    k = len(clusters)
    ties_in = [0] * k
    weight_in = [0] * k
    ea, eb, weights = view.ea, view.eb, view.weights
    intra = [False] * len(weights)
    for i in range(len(weights)):
        ca = member_of[ea[i]]
        if ca == member_of[eb[i]]:
            ties_in[ca] += 1
            weight_in[ca] += weights[i]
            intra[i] = True

    if partition.connected:
        small = sum(1 for c in clusters if len(c) < params.sigma_small)
    else:
        small = _small_parts(view, intra, params.sigma_small)

    weighted = 0.0
    for ci, cluster in enumerate(clusters):
        s = len(cluster)
        if s > 1:
            # size * density telescopes to 2T/(s-1)
            weighted += 2.0 * ties_in[ci] / (s - 1)
    closeness_mean = weighted / covered

    total_weight = view.total_weight
    if total_weight > 0:
        cut_fraction = (total_weight - sum(weight_in)) / total_weight
    else:
        cut_fraction = 0.0

    total = (
        closeness_mean
        - params.lambda_cut * cut_fraction
        - params.mu_small * (small / k)
    )
    return FitnessValue(total, closeness_mean, cut_fraction, small)


def _small_parts(view: AttributeView, intra: list[bool], sigma: int) -> int:
    """Count connected parts (components inside clusters) below sigma nodes."""
    parent = list(range(len(view.nodes)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, inside in enumerate(intra):
        if inside:
            ra, rb = find(view.ea[i]), find(view.eb[i])
            if ra != rb:
                parent[rb] = ra

    size: dict[int, int] = {}
    for ix in range(len(parent)):
        r = find(ix)
        size[r] = size.get(r, 0) + 1
    return sum(1 for s in size.values() if s < sigma)
