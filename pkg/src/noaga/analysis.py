"""Cluster analysis on top of partitions: Node-of-Attraction tracking,
linkage nodes, partition overlays, and merge signals.

The NoA of a cluster is its most active member: most intra-cluster ties,
ties broken by larger intra-cluster weight, then by smallest id. Tracking
NoAs across a run gives a stable handle on "the same community" while
membership churns.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ConfigInvalid, EmptyCluster, StaleSnapshot
from .graph import (
    AppliedEvent,
    AttributeView,
    EventKind,
    Pair,
    Partition,
)


@dataclass(frozen=True)
class NoARecord:
    """One cluster observed at one tick: members, NoA, intra edge stats."""

    tick: int
    attrs: tuple[str, ...]
    members: tuple[int, ...]
    noa: int
    edge_count: int
    total_weight: int


@dataclass(frozen=True)
class LinkageEntry:
    """A node with at least one edge leaving its cluster."""

    node: int
    cluster: int
    foreign_clusters: tuple[int, ...]
    bridge_edges: tuple[Pair, ...]


@dataclass(frozen=True)
class LinkageReport:
    nodes: tuple[int, ...]
    entries: tuple[LinkageEntry, ...]


@dataclass(frozen=True)
class OverlayCell:
    """Nonempty intersection of cluster a_index of one partition with
    cluster b_index of the other."""

    a_index: int
    b_index: int
    members: tuple[int, ...]


@dataclass(frozen=True)
class OverlayReport:
    """Cross-tabulation of two partitions over the union of their nodes.

    overlap_nodes are members of cells where neither cluster contains the
    other, i.e. nodes whose community genuinely differs between the two.
    """

    cells: tuple[OverlayCell, ...]
    overlap_nodes: tuple[int, ...]


@dataclass(frozen=True)
class MergeSignal:
    """Members of source_cluster began interacting with target_cluster's NoA."""

    source_cluster: int
    target_cluster: int
    target_noa: int
    witnesses: tuple[int, ...]
    strength: int
    window: tuple[int, int]


def find_noa(cluster: Iterable[int], view: AttributeView) -> int:
    """Most intra-active member; ties fall to intra weight, then smallest id."""
    members = tuple(sorted(cluster))
    if not members:
        raise EmptyCluster("NoA of an empty cluster")
    inside = set(members)
    best = members[0]
    best_key = (-1, -1)
    for node in members:  # ascending ids, strict > keeps the smallest on ties
        key = view.weighted_degree(node, inside)
        if key > best_key:
            best, best_key = node, key
    return best


def noa_records(partition: Partition, view: AttributeView, tick: int) -> tuple[NoARecord, ...]:
    """One record per cluster, in cluster order."""
    if partition.source_version != view.version:
        raise StaleSnapshot(
            f"partition from version {partition.source_version}, view at {view.version}"
        )
    out = []
    for cluster in partition.clusters:
        inside = set(cluster)
        ties = 0
        weight = 0
        for node in cluster:
            for other, w in view.neighbors(node):
                if other in inside:
                    ties += 1
                    weight += w
        out.append(
            NoARecord(
                tick=tick,
                attrs=view.attrs,
                members=tuple(cluster),
                noa=find_noa(cluster, view),
                edge_count=ties // 2,  # each intra edge counted from both ends
                total_weight=weight // 2,
            )
        )
    return tuple(out)


def append_noa_history(
    history: Sequence[NoARecord], partition: Partition, view: AttributeView, tick: int
) -> list[NoARecord]:
    """Pure append: returns a new list, the input is untouched."""
    return list(history) + list(noa_records(partition, view, tick))


def linkage_nodes(partition: Partition, view: AttributeView) -> LinkageReport:
    """Nodes incident to at least one inter-cluster edge."""
    if partition.source_version != view.version:
        raise StaleSnapshot(
            f"partition from version {partition.source_version}, view at {view.version}"
        )
    member = partition.membership()
    foreign: dict[int, set[int]] = {}
    bridges: dict[int, list[Pair]] = {}
    for a, b in view.pairs:
        ca, cb = member[a], member[b]
        if ca == cb:
            continue
        foreign.setdefault(a, set()).add(cb)
        bridges.setdefault(a, []).append((a, b))
        foreign.setdefault(b, set()).add(ca)
        bridges.setdefault(b, []).append((a, b))
    entries = tuple(
        LinkageEntry(
            node=node,
            cluster=member[node],
            foreign_clusters=tuple(sorted(foreign[node])),
            bridge_edges=tuple(sorted(bridges[node])),
        )
        for node in sorted(foreign)
    )
    return LinkageReport(nodes=tuple(sorted(foreign)), entries=entries)


def overlay(pa: Partition, pb: Partition) -> OverlayReport:
    """Cross-tabulate two partitions.

    Nodes present on only one side count as singleton clusters on the other,
    so the report always covers the union. Cells are ordered by
    (a_index, b_index).
    """
    nodes_a = set(pa.members())
    nodes_b = set(pb.members())
    clusters_a = list(pa.clusters) + [(n,) for n in sorted(nodes_b - nodes_a)]
    clusters_b = list(pb.clusters) + [(n,) for n in sorted(nodes_a - nodes_b)]
    in_b: dict[int, int] = {}
    for j, cluster in enumerate(clusters_b):
        for n in cluster:
            in_b[n] = j
    cells: list[OverlayCell] = []
    overlap: set[int] = set()
    for i, cluster in enumerate(clusters_a):
        hits: dict[int, list[int]] = {}
        for n in cluster:
            hits.setdefault(in_b[n], []).append(n)
        set_a = set(cluster)
        for j in sorted(hits):
            members = tuple(sorted(hits[j]))
            cells.append(OverlayCell(i, j, members))
            set_b = set(clusters_b[j])
            if not (set_a <= set_b or set_b <= set_a):
                overlap.update(members)
    return OverlayReport(cells=tuple(cells), overlap_nodes=tuple(sorted(overlap)))


def merge_signals(
    history: Sequence[NoARecord],
    applied_events: Sequence[AppliedEvent],
    partition: Partition,
    view: AttributeView,
    *,
    theta: int = 2,
    window: int = 1000,
) -> tuple[MergeSignal, ...]:
    """Detect clusters leaning toward a merge.

    A witness is a member of one cluster who, inside the tick window ending
    at the view's snapshot tick, gained a new edge to another cluster's NoA
    or had an existing one increase in aggregated weight (decreases never
    count). A signal fires when a source cluster has >= theta distinct
    witnesses toward the same target.

    The target NoA comes from the most recent history record whose member
    set matches the cluster, falling back to a fresh computation.
    """
    if theta < 1:
        raise ConfigInvalid(f"theta must be >= 1, got {theta}")
    if window < 1:
        raise ConfigInvalid(f"window must be >= 1, got {window}")
    if partition.source_version != view.version:
        raise StaleSnapshot(
            f"partition from version {partition.source_version}, view at {view.version}"
        )

    now = view.base.tick
    lo = now - window + 1
    member = partition.membership()

    recorded: dict[tuple[int, ...], int] = {}
    for rec in history:  # later records win: iterate in order
        if rec.attrs == view.attrs:
            recorded[rec.members] = rec.noa
    noas: list[int] = []
    for cluster in partition.clusters:
        hit = recorded.get(tuple(cluster))
        noas.append(hit if hit is not None else find_noa(cluster, view))

    names = view.base.schema.names
    ixs = tuple(names.index(a) for a in view.attrs)
    combine = max if view.aggregation == "max" else sum

    def agg(vec: tuple[int, ...] | None) -> int:
        if vec is None:
            return 0
        return combine(vec[i] for i in ixs)

    witnesses: dict[tuple[int, int], set[int]] = {}
    for ap in applied_events:
        if ap.tick < lo or ap.pair is None:
            continue
        kind = ap.event.kind
        if kind is EventKind.ADD_EDGE:
            increased = agg(ap.new_weights) > 0
        elif kind is EventKind.UPDATE_WEIGHT:
            increased = agg(ap.new_weights) > agg(ap.old_weights)
        else:
            increased = False
        if not increased:
            continue
        a, b = ap.pair
        for actor, touched in ((a, b), (b, a)):
            ca = member.get(actor)
            cb = member.get(touched)
            if ca is None or cb is None or ca == cb:
                continue
            if noas[cb] == touched:
                witnesses.setdefault((ca, cb), set()).add(actor)

    signals = []
    for (src, tgt) in sorted(witnesses):
        who = tuple(sorted(witnesses[(src, tgt)]))
        if len(who) >= theta:
            signals.append(
                MergeSignal(
                    source_cluster=src,
                    target_cluster=tgt,
                    target_noa=noas[tgt],
                    witnesses=who,
                    strength=len(who),
                    window=(lo, now),
                )
            )
    return tuple(signals)
