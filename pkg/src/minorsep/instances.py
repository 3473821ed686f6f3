"""Instance families and the plain-text edge-list format.

The text format is one header line ``p <n> <m>`` followed by m lines
``u v`` with 0-indexed endpoints; ``#`` starts a comment (whole-line or
trailing) and blank lines are ignored.  Writing is canonical: edges are
emitted with u < v in lexicographic order, so equal graphs serialize to
identical bytes.

Seeded families (gnp, tree) draw from a SplitMix64 sub-stream named after
the family; all other families ignore the seed.  gnp iterates the vertex
pairs (0,1), (0,2), ..., (n-2,n-1) in lexicographic order against the
stream, one uniform per pair, which pins the exact edge set for a seed.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .graph import Graph, build_graph
from .rng import stream

__all__ = [
    "InstanceSpec",
    "FAMILIES",
    "generate",
    "read_edge_list",
    "write_edge_list",
    "graph_to_text",
]


@dataclass(frozen=True)
class InstanceSpec:
    family: str
    params: tuple = ()
    seed: int = 0


def _grid_edges(rows: int, cols: int, wrap: bool):
    edges = []
    for i in range(rows):
        for j in range(cols):
            v = i * cols + j
            if j + 1 < cols:
                edges.append((v, v + 1))
            elif wrap:
                edges.append((v, i * cols))
            if i + 1 < rows:
                edges.append((v, v + cols))
            elif wrap:
                edges.append((v, j))
    return edges


def _gen_grid(rows: int, cols: int) -> Graph:
    if rows < 1 or cols < 1:
        raise InputError("grid needs rows, cols >= 1")
    return build_graph(rows * cols, _grid_edges(rows, cols, wrap=False))


def _gen_torus(rows: int, cols: int) -> Graph:
    # wraparound on a side of length < 3 collapses to parallel edges
    if rows < 3 or cols < 3:
        raise InputError("torus needs rows, cols >= 3")
    return build_graph(rows * cols, _grid_edges(rows, cols, wrap=True))


def _gen_path(n: int) -> Graph:
    if n < 1:
        raise InputError("path needs n >= 1")
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def _gen_cycle(n: int) -> Graph:
    if n < 3:
        raise InputError("cycle needs n >= 3")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def _gen_star(leaves: int) -> Graph:
    if leaves < 0:
        raise InputError("star needs leaves >= 0")
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def _gen_complete(k: int) -> Graph:
    if k < 1:
        raise InputError("complete needs k >= 1")
    return build_graph(k, [(i, j) for i in range(k) for j in range(i + 1, k)])


def _gen_gnp(n: int, p: float, seed: int) -> Graph:
    if n < 1:
        raise InputError("gnp needs n >= 1")
    if not (0.0 <= p <= 1.0):
        raise InputError("gnp needs 0 <= p <= 1")
    rng = stream(seed, "gnp")
    total = n * (n - 1) // 2
    u = rng.block_floats(total)
    us, vs = np.triu_indices(n, k=1)
    keep = u < p
    return build_graph(n, np.column_stack([us[keep], vs[keep]]))


def _gen_tree(n: int, seed: int) -> Graph:
    """Random recursive tree: vertex k attaches to a uniform vertex < k."""
    if n < 1:
        raise InputError("tree needs n >= 1")
    rng = stream(seed, "tree")
    edges = [(rng.next_below(k), k) for k in range(1, n)]
    return build_graph(n, edges)


def _gen_subdivided_clique(h: int, t: int) -> Graph:
    """K_h with every edge subdivided t times.

    Original vertices keep ids 0..h-1; the t interior vertices of edge
    number e (edges ordered lexicographically) are h+e*t .. h+e*t+t-1,
    in order from the smaller endpoint to the larger.
    """
    if h < 2 or t < 0:
        raise InputError("subdivided_clique needs h >= 2, t >= 0")
    edges = []
    nxt = h
    for i in range(h):
        for j in range(i + 1, h):
            chain = [i] + list(range(nxt, nxt + t)) + [j]
            nxt += t
            edges.extend(zip(chain, chain[1:]))
    return build_graph(nxt, edges)


FAMILIES = {
    "grid": (2, _gen_grid),
    "torus": (2, _gen_torus),
    "path": (1, _gen_path),
    "cycle": (1, _gen_cycle),
    "star": (1, _gen_star),
    "complete": (1, _gen_complete),
    "gnp": (2, _gen_gnp),
    "tree": (1, _gen_tree),
    "subdivided_clique": (2, _gen_subdivided_clique),
}

_SEEDED = {"gnp", "tree"}


def generate(spec: InstanceSpec) -> Graph:
    """Build the graph described by `spec`; pure in (family, params, seed)."""
    if spec.family not in FAMILIES:
        raise InputError(f"unknown family {spec.family!r}; know {sorted(FAMILIES)}")
    arity, fn = FAMILIES[spec.family]
    if len(spec.params) != arity:
        raise InputError(f"{spec.family} takes {arity} parameter(s), got {len(spec.params)}")
    if spec.family in _SEEDED:
        return fn(*spec.params, spec.seed)
    return fn(*spec.params)


def read_edge_list(source) -> Graph:
    """Parse the ``p n m`` edge-list format; errors carry 1-based line numbers."""
    if isinstance(source, (str, bytes)):
        with open(source, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    else:
        lines = source.readlines()
    header = None
    edges = []
    declared_m = 0
    for lineno, raw in enumerate(lines, start=1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        parts = text.split()
        if header is None:
            if parts[0] != "p" or len(parts) != 3:
                raise InputError(f"line {lineno}: expected header 'p <n> <m>'")
            try:
                n, declared_m = int(parts[1]), int(parts[2])
            except ValueError:
                raise InputError(f"line {lineno}: header fields must be integers") from None
            if n < 0 or declared_m < 0:
                raise InputError(f"line {lineno}: header fields must be nonnegative")
            header = (n, declared_m)
            continue
        if len(parts) != 2:
            raise InputError(f"line {lineno}: expected 'u v'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise InputError(f"line {lineno}: endpoints must be integers") from None
        n = header[0]
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"line {lineno}: endpoint out of range 0..{n - 1}")
        if u == v:
            raise InputError(f"line {lineno}: self-loop at vertex {u}")
        edges.append((u, v))
    if header is None:
        raise InputError("line 1: missing header 'p <n> <m>'")
    if len(edges) != declared_m:
        raise InputError(f"header declares {declared_m} edges but file has {len(edges)}")
    return build_graph(header[0], edges)


def graph_to_text(g: Graph) -> str:
    us, vs = g.edges()
    out = io.StringIO()
    out.write(f"p {g.n} {us.size}\n")
    for u, v in zip(us.tolist(), vs.tolist()):
        out.write(f"{u} {v}\n")
    return out.getvalue()


def write_edge_list(g: Graph, path: str) -> None:
    """Write canonical bytes: header, then edges with u < v in lex order."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(graph_to_text(g))
