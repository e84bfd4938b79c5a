"""Exhaustive partition search for small views.

Enumerates every set partition of the node list in restricted-growth-string
order. Bell numbers grow fast (Bell(10) = 115,975), so a hard node cap
protects callers; anything bigger raises TooLarge. This is the ground truth
the GA is checked against.
"""

from __future__ import annotations

from typing import Iterator, Sequence

from .errors import TooLarge
from .fitness import FitnessParams, FitnessValue, fitness
from .graph import AttributeView, Partition

DEFAULT_N_MAX = 10


def bell_number(n: int) -> int:
    """Number of set partitions of n elements, via the Bell triangle."""
    if n < 0:
        raise ValueError(f"bell_number of {n}")
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


def enumerate_partitions(
    nodes: Sequence[int],
    *,
    n_max: int = DEFAULT_N_MAX,
    attrs: Sequence[str] = (),
    source_version: int = 0,
) -> Iterator[Partition]:
    """All partitions of `nodes`, in restricted-growth-string order.

    The first partition is the single cluster, the last is all singletons.
    attrs/source_version stamp the yielded Partition objects so they can be
    scored against a matching view.
    """
    members = tuple(nodes)
    n = len(members)
    if n == 0:
        raise ValueError("no nodes to partition")
    if n > n_max:
        raise TooLarge(
            f"{n} nodes exceeds the enumeration cap {n_max} "
            f"(Bell({n_max}) = {bell_number(n_max)})"
        )
    rgs = [0] * n
    while True:
        k = max(rgs) + 1
        blocks: list[list[int]] = [[] for _ in range(k)]
        for member, b in zip(members, rgs):
            blocks[b].append(member)
        yield Partition(
            clusters=tuple(tuple(b) for b in blocks),
            attrs=tuple(attrs),
            source_version=source_version,
        )
        # odometer: bump the rightmost digit allowed to grow, zero the rest
        for i in range(n - 1, 0, -1):
            if rgs[i] <= max(rgs[:i]):
                rgs[i] += 1
                for j in range(i + 1, n):
                    rgs[j] = 0
                break
        else:
            return


def optimal_partition(
    view: AttributeView,
    params: FitnessParams | None = None,
    n_max: int = DEFAULT_N_MAX,
) -> tuple[Partition, FitnessValue]:
    """Brute-force best partition of the view's active nodes.

    Exact ties fall to fewer clusters, then lexicographic cluster order, so
    the answer is unique and stable.
    """
    if params is None:
        params = FitnessParams()
    best: Partition | None = None
    best_value: FitnessValue | None = None
    for part in enumerate_partitions(
        view.nodes, n_max=n_max, attrs=view.attrs, source_version=view.version
    ):
        value = fitness(part, view, params)
        if best is None:
            best, best_value = part, value
            continue
        if value.total > best_value.total:
            best, best_value = part, value
        elif value.total == best_value.total and (
            part.cluster_count,
            part.clusters,
        ) < (best.cluster_count, best.clusters):
            best, best_value = part, value
    return best, best_value
