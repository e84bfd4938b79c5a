"""Versioned multi-attribute weighted graph model.

A snapshot is immutable; applying an update event yields a successor with
version + 1. An attribute view projects a snapshot onto a subset of
attributes and aggregates each edge's weight vector into one number; an edge
is active in the view iff that aggregate is positive. Views precompute their
edge list and adjacency so clustering code can treat them as read-only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    ConfigInvalid,
    DuplicateEdge,
    DuplicateNode,
    EmptyCluster,
    ForeignEdge,
    UnknownEdge,
    UnknownNode,
)

Pair = tuple[int, int]
Label = int | str


def edge_key(a: int, b: int) -> Pair:
    """Normalized (low, high) form of an undirected pair. Self-loops are invalid."""
    if a == b:
        raise ValueError(f"self-loop on node {a}")
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class AttributeSchema:
    """Ordered, unique attribute names; every edge carries one weight per name."""

    names: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if not self.names:
            raise ConfigInvalid("schema needs at least one attribute")
        if len(set(self.names)) != len(self.names):
            raise ConfigInvalid("attribute names must be unique")

    @property
    def arity(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ConfigInvalid(f"unknown attribute {name!r}") from None


@dataclass(frozen=True)
class Edge:
    """Undirected weighted edge; endpoints normalize to a < b on construction."""

    a: int
    b: int
    weights: tuple[int, ...]

    def __post_init__(self):
        lo, hi = edge_key(self.a, self.b)
        object.__setattr__(self, "a", lo)
        object.__setattr__(self, "b", hi)
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if any(w < 0 for w in self.weights):
            raise ValueError(f"negative weight on edge {(lo, hi)}")
        # all-zero weight vectors mean "no edge"; reject rather than store
        if not any(self.weights):
            raise ValueError(f"edge {(lo, hi)} needs at least one positive weight")

    @property
    def key(self) -> Pair:
        return (self.a, self.b)


class EventKind(str, Enum):
    ADD_NODE = "add_node"
    ADD_EDGE = "add_edge"
    UPDATE_WEIGHT = "update_weight"
    REMOVE_EDGE = "remove_edge"


@dataclass(frozen=True)
class UpdateEvent:
    """One change to the graph at a given tick.

    Nodes are referenced by label: plain ints (or all-digit strings) are node
    ids, any other string goes through the snapshot's name table. Unused
    fields stay None; the factory classmethods fill in the right ones.
    """

    tick: int
    kind: EventKind
    node: Label | None = None
    a: Label | None = None
    b: Label | None = None
    weights: tuple[int, ...] | None = None
    attr: str | None = None
    value: int | None = None

    @classmethod
    def add_node(cls, tick: int, node: Label) -> "UpdateEvent":
        return cls(tick, EventKind.ADD_NODE, node=node)

    @classmethod
    def add_edge(cls, tick: int, a: Label, b: Label, weights: Sequence[int]) -> "UpdateEvent":
        return cls(tick, EventKind.ADD_EDGE, a=a, b=b, weights=tuple(int(w) for w in weights))

    @classmethod
    def update_weight(cls, tick: int, a: Label, b: Label, attr: str, value: int) -> "UpdateEvent":
        return cls(tick, EventKind.UPDATE_WEIGHT, a=a, b=b, attr=attr, value=int(value))

    @classmethod
    def remove_edge(cls, tick: int, a: Label, b: Label) -> "UpdateEvent":
        return cls(tick, EventKind.REMOVE_EDGE, a=a, b=b)


@dataclass(frozen=True)
class AppliedEvent:
    """An event plus what it actually did: resolved ids and before/after weights.

    Raw events do not carry previous weights, so anything that needs to know
    whether a weight went up (merge-signal detection) consumes these instead.
    """

    event: UpdateEvent
    node: int | None = None
    pair: Pair | None = None
    old_weights: tuple[int, ...] | None = None
    new_weights: tuple[int, ...] | None = None

    @property
    def tick(self) -> int:
        return self.event.tick


@dataclass(frozen=True, eq=False)
class GraphSnapshot:
    """Immutable graph state: node set, edge weight vectors, name table, version.

    `names` maps non-numeric external labels to ids; numeric labels are their
    own ids and are not stored. `node_ticks` records when each node first
    appeared, which rendering uses to mark recent arrivals.
    """

    schema: AttributeSchema
    nodes: frozenset[int]
    edges: Mapping[Pair, tuple[int, ...]]
    names: Mapping[str, int] = field(default_factory=dict)
    node_ticks: Mapping[int, int] = field(default_factory=dict)
    version: int = 0
    tick: int = 0

    def __post_init__(self):
        object.__setattr__(self, "_labels_by_id", {v: k for k, v in self.names.items()})

    @classmethod
    def build(
        cls,
        schema: AttributeSchema,
        edges: Iterable[Edge],
        extra_nodes: Iterable[int] = (),
        names: Mapping[str, int] | None = None,
        tick: int = 0,
    ) -> "GraphSnapshot":
        """Version-0 snapshot from an edge collection plus optional isolated nodes."""
        edict: dict[Pair, tuple[int, ...]] = {}
        nodes = set(extra_nodes)
        for e in edges:
            if len(e.weights) != schema.arity:
                raise ConfigInvalid(
                    f"edge {e.key} has {len(e.weights)} weights, schema arity is {schema.arity}"
                )
            if e.key in edict:
                raise DuplicateEdge(f"duplicate edge {e.key}")
            edict[e.key] = e.weights
            nodes.add(e.a)
            nodes.add(e.b)
        return cls(
            schema=schema,
            nodes=frozenset(nodes),
            edges=edict,
            names=dict(names or {}),
            node_ticks={n: tick for n in nodes},
            version=0,
            tick=tick,
        )

    def resolve(self, label: Label) -> int:
        """Label to node id; raises UnknownNode when it names nothing."""
        if isinstance(label, int) and not isinstance(label, bool):
            nid = label
        elif isinstance(label, str) and label.isdigit():
            nid = int(label)
        elif isinstance(label, str):
            if label not in self.names:
                raise UnknownNode(f"unknown label {label!r}")
            return self.names[label]
        else:
            raise UnknownNode(f"bad label {label!r}")
        if nid not in self.nodes:
            raise UnknownNode(f"unknown node {nid}")
        return nid

    def label_of(self, node: int) -> str:
        """External label for a node id; ids without a stored label print as digits."""
        return self._labels_by_id.get(node, str(node))

    def apply(self, event: UpdateEvent) -> "GraphSnapshot":
        return self.apply_traced(event)[0]

    def apply_traced(self, event: UpdateEvent) -> tuple["GraphSnapshot", AppliedEvent]:
        """Apply one event; returns the successor and a trace with old weights.

        Ticks may repeat but never go backwards. An update that zeroes every
        weight on an edge drops the edge, same as removal.
        """
        if event.tick < self.tick:
            raise ValueError(
                f"tick went backwards: event {event.tick}, snapshot at {self.tick}"
            )
        if event.kind is EventKind.ADD_NODE:
            return self._apply_add_node(event)
        if event.kind is EventKind.ADD_EDGE:
            return self._apply_add_edge(event)
        if event.kind is EventKind.UPDATE_WEIGHT:
            return self._apply_update_weight(event)
        if event.kind is EventKind.REMOVE_EDGE:
            return self._apply_remove_edge(event)
        raise ValueError(f"unknown event kind {event.kind!r}")

    def _successor(self, *, nodes=None, edges=None, names=None, node_ticks=None, tick):
        return GraphSnapshot(
            schema=self.schema,
            nodes=self.nodes if nodes is None else nodes,
            edges=self.edges if edges is None else edges,
            names=self.names if names is None else names,
            node_ticks=self.node_ticks if node_ticks is None else node_ticks,
            version=self.version + 1,
            tick=tick,
        )

    def _apply_add_node(self, event):
        label = event.node
        names = self.names
        if isinstance(label, str) and not label.isdigit():
            if label in self.names:
                raise DuplicateNode(f"label {label!r} already exists")
            # fresh labels get the next free id, so "X" on a 15-node graph is 16
            nid = max(self.nodes) + 1 if self.nodes else 0
            names = {**self.names, label: nid}
        else:
            nid = int(label)
            if nid < 0:
                raise ValueError(f"negative node id {nid}")
            if nid in self.nodes:
                raise DuplicateNode(f"node {nid} already exists")
        snap = self._successor(
            nodes=self.nodes | {nid},
            names=names,
            node_ticks={**self.node_ticks, nid: event.tick},
            tick=event.tick,
        )
        return snap, AppliedEvent(event, node=nid)

    def _apply_add_edge(self, event):
        key = edge_key(self.resolve(event.a), self.resolve(event.b))
        if key in self.edges:
            raise DuplicateEdge(f"edge {key} already exists")
        w = Edge(key[0], key[1], event.weights).weights
        if len(w) != self.schema.arity:
            raise ConfigInvalid(
                f"edge {key} has {len(w)} weights, schema arity is {self.schema.arity}"
            )
        snap = self._successor(edges={**self.edges, key: w}, tick=event.tick)
        return snap, AppliedEvent(event, pair=key, new_weights=w)

    def _apply_update_weight(self, event):
        key = edge_key(self.resolve(event.a), self.resolve(event.b))
        old = self.edges.get(key)
        if old is None:
            raise UnknownEdge(f"no edge {key}")
        idx = self.schema.index(event.attr)
        value = int(event.value)
        if value < 0:
            raise ValueError(f"negative weight {value} for edge {key}")
        new = old[:idx] + (value,) + old[idx + 1 :]
        edges = {k: v for k, v in self.edges.items() if k != key}
        if any(new):
            edges[key] = new
        snap = self._successor(edges=edges, tick=event.tick)
        return snap, AppliedEvent(event, pair=key, old_weights=old, new_weights=new)

    def _apply_remove_edge(self, event):
        key = edge_key(self.resolve(event.a), self.resolve(event.b))
        old = self.edges.get(key)
        if old is None:
            raise UnknownEdge(f"no edge {key}")
        edges = {k: v for k, v in self.edges.items() if k != key}
        snap = self._successor(edges=edges, tick=event.tick)
        return snap, AppliedEvent(event, pair=key, old_weights=old)


class AttributeView:
    """Read-only projection of a snapshot onto some attributes.

    Active nodes are the endpoints of active edges plus nodes that have no
    edges at all in the snapshot (just-added isolates). Nodes whose every
    incident edge is zero under the chosen attributes are not in the view.
    """

    def __init__(
        self,
        base: GraphSnapshot,
        attrs: Sequence[str] | None = None,
        aggregation: str = "sum",
    ):
        if aggregation not in ("sum", "max"):
            raise ConfigInvalid(f"aggregation must be sum or max, got {aggregation!r}")
        names = base.schema.names
        chosen = tuple(attrs) if attrs is not None else names
        if not chosen:
            raise ConfigInvalid("view needs at least one attribute")
        if len(set(chosen)) != len(chosen):
            raise ConfigInvalid("duplicate attribute in view")
        for a in chosen:
            if a not in names:
                raise ConfigInvalid(f"unknown attribute {a!r}")
        self.base = base
        self.attrs = chosen
        self.aggregation = aggregation
        self.version = base.version

        ix = tuple(names.index(a) for a in chosen)
        combine = max if aggregation == "max" else sum
        pairs: list[Pair] = []
        weights: list[int] = []
        ever_touched: set[int] = set()
        active_touched: set[int] = set()
        for key in sorted(base.edges):
            ever_touched.update(key)
            vec = base.edges[key]
            w = combine(vec[i] for i in ix)
            if w > 0:
                pairs.append(key)
                weights.append(w)
                active_touched.update(key)
        self.pairs: tuple[Pair, ...] = tuple(pairs)
        self.weights: tuple[int, ...] = tuple(weights)
        self.total_weight = sum(weights)
        self.nodes: tuple[int, ...] = tuple(
            sorted(active_touched | (base.nodes - ever_touched))
        )
        self.node_index = {n: i for i, n in enumerate(self.nodes)}
        self.pair_index = {p: i for i, p in enumerate(pairs)}
        # endpoint index arrays, the decode hot path walks these
        self.ea = [self.node_index[a] for a, _ in pairs]
        self.eb = [self.node_index[b] for _, b in pairs]
        adj: dict[int, list[tuple[int, int]]] = {}
        for (a, b), w in zip(pairs, weights):
            adj.setdefault(a, []).append((b, w))
            adj.setdefault(b, []).append((a, w))
        self._adj = {n: tuple(nbrs) for n, nbrs in adj.items()}

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return len(self.pairs)

    def has_node(self, node: int) -> bool:
        return node in self.node_index

    def is_active(self, a: int, b: int) -> bool:
        return edge_key(a, b) in self.pair_index

    def weight_of(self, a: int, b: int) -> int:
        """Aggregated weight of an active edge; ForeignEdge if not active here."""
        idx = self.pair_index.get(edge_key(a, b))
        if idx is None:
            raise ForeignEdge(f"edge {edge_key(a, b)} is not active in this view")
        return self.weights[idx]

    def neighbors(self, node: int) -> tuple[tuple[int, int], ...]:
        """(neighbor, aggregated weight) pairs; empty for isolated actives."""
        if node not in self.node_index:
            raise UnknownNode(f"node {node} is not active in this view")
        return self._adj.get(node, ())

    def weighted_degree(
        self, node: int, within: Iterable[int] | None = None
    ) -> tuple[int, int]:
        """(tie count, summed aggregated weight), optionally only counting
        neighbors inside `within`."""
        nbrs = self.neighbors(node)
        if within is None:
            return len(nbrs), sum(w for _, w in nbrs)
        inside = within if isinstance(within, (set, frozenset)) else set(within)
        count = 0
        weight = 0
        for other, w in nbrs:
            if other in inside:
                count += 1
                weight += w
        return count, weight


@dataclass(frozen=True)
class Partition:
    """Disjoint clusters covering a view's active nodes.

    Clusters are sorted tuples ordered by smallest member, so equal
    partitions compare equal. `connected` marks partitions produced as
    connected components, letting fitness skip per-cluster component work.
    """

    clusters: tuple[tuple[int, ...], ...]
    attrs: tuple[str, ...]
    source_version: int
    connected: bool = False

    def __post_init__(self):
        normalized = tuple(sorted(tuple(sorted(c)) for c in self.clusters))
        object.__setattr__(self, "clusters", normalized)
        object.__setattr__(self, "attrs", tuple(self.attrs))
        seen: set[int] = set()
        total = 0
        for cluster in normalized:
            if not cluster:
                raise EmptyCluster("empty cluster in partition")
            seen.update(cluster)
            total += len(cluster)
        if len(seen) != total:
            raise ValueError("clusters are not disjoint")

    @property
    def node_count(self) -> int:
        return sum(len(c) for c in self.clusters)

    @property
    def cluster_count(self) -> int:
        return len(self.clusters)

    def members(self) -> Iterator[int]:
        for cluster in self.clusters:
            yield from cluster

    def membership(self) -> dict[int, int]:
        """node -> cluster index."""
        out: dict[int, int] = {}
        for i, cluster in enumerate(self.clusters):
            for n in cluster:
                out[n] = i
        return out

    def cluster_of(self, node: int) -> int:
        for i, cluster in enumerate(self.clusters):
            if node in cluster:
                return i
        raise UnknownNode(f"node {node} is in no cluster")


def connected_components(view: AttributeView, removed: Iterable[Pair] = ()) -> Partition:
    """Partition of the view's active nodes after deleting `removed` edges.

    Every entry of `removed` must be active in the view (ForeignEdge
    otherwise); isolated actives come out as singleton clusters.
    """
    skip = [False] * len(view.pairs)
    for p in removed:
        key = edge_key(*p)
        idx = view.pair_index.get(key)
        if idx is None:
            raise ForeignEdge(f"edge {key} is not active in this view")
        skip[idx] = True

    parent = list(range(len(view.nodes)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, (a, b) in enumerate(zip(view.ea, view.eb)):
        if skip[i]:
            continue
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    groups: dict[int, list[int]] = {}
    for i, node in enumerate(view.nodes):
        groups.setdefault(find(i), []).append(node)
    clusters = tuple(tuple(g) for g in groups.values())
    return Partition(
        clusters=clusters,
        attrs=view.attrs,
        source_version=view.version,
        connected=True,
    )
