"""Immutable simple graphs, standard families, the four graph products, and text I/O.

Vertices are dense integer ids ``0..n-1``.  Edges are stored canonically as
``(min, max)`` pairs.  Product graphs carry per-vertex ``(g, h)`` pair labels
with the row-major encoding ``g * |V(H)| + h`` so that certificates written
against products are byte-stable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional


class GraphFormatError(ValueError):
    """A graph text document violates the ``p toi`` format."""


@dataclass(frozen=True)
class PairIndex:
    """Row-major encoding of product vertices: ``encode(g, h) = g * n_h + h``."""

    n_h: int

    def encode(self, g: int, h: int) -> int:
        return g * self.n_h + h

    def decode(self, v: int) -> tuple[int, int]:
        return divmod(v, self.n_h)


@dataclass(frozen=True)
class Graph:
    """A finite, simple, loopless undirected graph.

    Immutable after construction; all product operations allocate fresh
    graphs, so instances are safe to share across concurrent tasks.
    """

    n: int
    edges: frozenset
    labels: Optional[tuple] = None
    name: str = ""

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        for e in self.edges:
            u, v = e
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge {e} is not canonical or out of range")
        if self.labels is not None:
            if len(self.labels) != self.n:
                raise ValueError("labels must cover every vertex")
            n_h = max(h for _, h in self.labels) + 1 if self.n else 0
            seen = set()
            for v, (g, h) in enumerate(self.labels):
                if g * n_h + h != v:
                    raise ValueError(f"label {(g, h)} of vertex {v} breaks row-major encoding")
                seen.add((g, h))
            if len(seen) != self.n:
                raise ValueError("labels are not a bijection")

    @cached_property
    def adjacency(self) -> tuple:
        """Per-vertex neighbor tuples, ascending."""
        adj = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(nbrs)) for nbrs in adj)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def neighbors(self, v: int) -> tuple:
        return self.adjacency[v]

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    @property
    def pair_index(self) -> Optional[PairIndex]:
        if self.labels is None:
            return None
        n_h = max(h for _, h in self.labels) + 1 if self.n else 0
        return PairIndex(n_h)


def _make(n: int, edge_iter: Iterable, name: str = "", labels=None) -> Graph:
    edges = frozenset((min(u, v), max(u, v)) for u, v in edge_iter)
    return Graph(n=n, edges=edges, labels=labels, name=name)


def complete_graph(t: int) -> Graph:
    if t < 1:
        raise ValueError("complete graph needs at least one vertex")
    return _make(t, itertools.combinations(range(t), 2), name=f"K{t}")


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least three vertices")
    return _make(n, (((i, (i + 1) % n)) for i in range(n)), name=f"C{n}")


def path_graph(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs at least one vertex")
    return _make(n, ((i, i + 1) for i in range(n - 1)), name=f"P{n}")


def _product_labels(ng: int, nh: int) -> tuple:
    return tuple((g, h) for g in range(ng) for h in range(nh))


def _check_factors(g: Graph, h: Graph):
    if g.n == 0 or h.n == 0:
        raise ValueError("product factors must be nonempty")


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """(g1,h1) ~ (g2,h2) iff they agree in one coordinate and step in the other."""
    _check_factors(g, h)
    nh = h.n
    edges = []
    for gv in range(g.n):
        for a, b in h.edges:
            edges.append((gv * nh + a, gv * nh + b))
    for hv in range(h.n):
        for a, b in g.edges:
            edges.append((a * nh + hv, b * nh + hv))
    return _make(g.n * nh, edges, name=f"{g.name}[]{h.name}",
                 labels=_product_labels(g.n, nh))


def direct_product(g: Graph, h: Graph) -> Graph:
    """(g1,h1) ~ (g2,h2) iff both coordinates step along factor edges."""
    _check_factors(g, h)
    nh = h.n
    edges = []
    for a, b in g.edges:
        for c, d in h.edges:
            edges.append((a * nh + c, b * nh + d))
            edges.append((a * nh + d, b * nh + c))
    return _make(g.n * nh, edges, name=f"{g.name}x{h.name}",
                 labels=_product_labels(g.n, nh))


def lexicographic_product(g: Graph, h: Graph) -> Graph:
    """(g1,h1) ~ (g2,h2) iff g1g2 is an edge, or g1=g2 and h1h2 is an edge."""
    _check_factors(g, h)
    nh = h.n
    edges = []
    for a, b in g.edges:
        for c in range(nh):
            for d in range(nh):
                edges.append((a * nh + c, b * nh + d))
    for gv in range(g.n):
        for c, d in h.edges:
            edges.append((gv * nh + c, gv * nh + d))
    return _make(g.n * nh, edges, name=f"{g.name}o{h.name}",
                 labels=_product_labels(g.n, nh))


def strong_product(g: Graph, h: Graph) -> Graph:
    """Union of the Cartesian and direct edge sets."""
    _check_factors(g, h)
    cart = cartesian_product(g, h)
    direct = direct_product(g, h)
    return _make(g.n * h.n, cart.edges | direct.edges, name=f"{g.name}*{h.name}",
                 labels=_product_labels(g.n, h.n))


def is_bipartite(g: Graph):
    """Return ``(True, None)`` or ``(False, odd_cycle)``.

    The witness is a simple odd cycle given as a vertex sequence (consecutive
    vertices adjacent, last adjacent to first).  Deterministic: BFS from the
    lowest unvisited vertex, neighbors ascending; the witness comes from the
    lexicographically first conflicting edge.
    """
    color = [-1] * g.n
    parent = [-1] * g.n
    for root in range(g.n):
        if color[root] != -1:
            continue
        color[root] = 0
        queue = [root]
        while queue:
            v = queue.pop(0)
            for w in g.adjacency[v]:
                if color[w] == -1:
                    color[w] = color[v] ^ 1
                    parent[w] = v
                    queue.append(w)
    for u, v in sorted(g.edges):
        if color[u] == color[v]:
            pu = [u]
            while parent[pu[-1]] != -1:
                pu.append(parent[pu[-1]])
            anc = set(pu)
            pv = [v]
            while pv[-1] not in anc:
                pv.append(parent[pv[-1]])
            lca = pv[-1]
            pu = pu[:pu.index(lca) + 1]
            cycle = pu + pv[-2::-1]
            return False, cycle
    return True, None


def find_p3_center(h: Graph):
    """Return ``(center, nb1, nb2)`` for the lowest vertex of degree >= 2, or None."""
    for v in range(h.n):
        nbrs = h.adjacency[v]
        if len(nbrs) >= 2:
            return v, nbrs[0], nbrs[1]
    return None


def write_graph_text(g: Graph) -> str:
    lines = [f"p toi {g.n} {g.m}"]
    for u, v in sorted(g.edges):
        lines.append(f"e {u} {v}")
    if g.labels is not None:
        for v, (a, b) in enumerate(g.labels):
            lines.append(f"l {v} {a} {b}")
    return "\n".join(lines) + "\n"


def read_graph_text(text: str) -> Graph:
    n = m = None
    edges = []
    label_map = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise GraphFormatError(f"line {lineno}: duplicate problem line")
            if len(parts) != 4 or parts[1] != "toi":
                raise GraphFormatError(f"line {lineno}: expected 'p toi <n> <m>'")
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: non-integer counts") from None
        elif parts[0] == "e":
            if n is None:
                raise GraphFormatError(f"line {lineno}: edge before problem line")
            if len(parts) != 3:
                raise GraphFormatError(f"line {lineno}: expected 'e <u> <v>'")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: non-integer endpoints") from None
            if not (0 <= u < v < n):
                raise GraphFormatError(f"line {lineno}: edge ({u}, {v}) out of range or not ordered")
            edges.append((u, v))
        elif parts[0] == "l":
            if len(parts) != 4:
                raise GraphFormatError(f"line {lineno}: expected 'l <v> <g> <h>'")
            try:
                v, a, b = int(parts[1]), int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: non-integer label") from None
            label_map[v] = (a, b)
        else:
            raise GraphFormatError(f"line {lineno}: unknown record '{parts[0]}'")
    if n is None:
        raise GraphFormatError("missing problem line")
    if len(edges) != m:
        raise GraphFormatError(f"problem line declares {m} edges, found {len(edges)}")
    labels = None
    if label_map:
        if sorted(label_map) != list(range(n)):
            raise GraphFormatError("label lines must cover every vertex exactly once")
        labels = tuple(label_map[v] for v in range(n))
    try:
        return Graph(n=n, edges=frozenset(edges), labels=labels)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None
