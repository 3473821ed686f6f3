"""Randomized low-diameter decomposition of the live subgraph.

Every live vertex v draws an exponential shift with rate 2*ln(max(N,2))/delta,
conditioned on shift < delta/2 (inverse CDF, so the cap carries no atom).
Vertex u joins the center c minimizing dist_live(c, u) - shift[c]; ties go to
the smallest center id.  Along a shortest path the set of minimizing centers
can only shrink, so parts are connected, and membership forces
dist_live(c, u) <= shift[c] < delta/2, so each part has strong radius < delta/2
around its center and weak diameter <= delta.

The boundary is every live vertex with a live neighbor assigned elsewhere.
Removing it disconnects distinct parts from each other.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .graph import Graph, VertexMask
from .rng import SplitMix64, truncated_exponential

__all__ = ["Partition", "LddResult", "padded_partition", "ldd"]


@dataclass(frozen=True)
class Partition:
    """Assignment of each live vertex to its center; -1 outside the mask."""

    center: np.ndarray
    shift: dict

    def parts(self) -> list:
        """(center, member ids ascending) pairs, sorted by center id."""
        live = np.flatnonzero(self.center >= 0)
        order = np.argsort(self.center[live], kind="stable")
        grouped = {}
        for v in live[order].tolist():
            grouped.setdefault(int(self.center[v]), []).append(v)
        return [(c, np.array(vs, dtype=np.int64)) for c, vs in sorted(grouped.items())]


@dataclass(frozen=True)
class LddResult:
    partition: Partition
    boundary: VertexMask


def padded_partition(g: Graph, live: VertexMask, delta: float, rng: SplitMix64) -> Partition:
    if delta <= 0:
        raise InputError("delta must be positive")
    ids = live.ids()
    n_live = ids.size
    center = np.full(g.n, -1, dtype=np.int64)
    if n_live == 0:
        return Partition(center, {})
    rate = 2.0 * math.log(max(n_live, 2)) / delta
    shifts = truncated_exponential(rng.block_floats(n_live), rate, delta / 2.0)
    shift_of = dict(zip(ids.tolist(), shifts.tolist()))

    in_live = live.bits
    # lazy Dijkstra; tuple order resolves key ties toward the smallest center
    heap = [(-s, int(v), int(v)) for v, s in zip(ids.tolist(), shifts.tolist())]
    heapq.heapify(heap)
    indptr, indices = g.indptr, g.indices
    settled = 0
    while settled < n_live:
        key, c, v = heapq.heappop(heap)
        if center[v] >= 0:
            continue
        center[v] = c
        settled += 1
        for w in indices[indptr[v]:indptr[v + 1]].tolist():
            if in_live[w] and center[w] < 0:
                heapq.heappush(heap, (key + 1.0, c, w))
    return Partition(center, shift_of)


def ldd(g: Graph, live: VertexMask, delta: float, rng: SplitMix64) -> LddResult:
    part = padded_partition(g, live, delta, rng)
    center = part.center
    src = np.repeat(np.arange(g.n, dtype=np.int64), np.diff(g.indptr))
    tgt = g.indices
    cross = (center[src] >= 0) & (center[tgt] >= 0) & (center[src] != center[tgt])
    bits = np.zeros(g.n, dtype=bool)
    bits[src[cross]] = True
    return LddResult(part, VertexMask(bits))
