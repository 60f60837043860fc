"""Executable constructions of totally odd strong immersions in graph products.

Every function here builds a :class:`~toi.certificates.Certificate` by
manipulating terminal/route indices of factor certificates, never factor-graph
structure, so the constructions apply to arbitrary hosts.  Correctness is
defined by the verifier: callers (and the test suite) re-verify every output.

Index convention: the closed-form route tables below are written with 1-based
grid coordinates ``(i, j)`` and converted to 0-based vertex ids at exactly one
boundary (the ``_enc1`` helpers), to avoid off-by-one drift.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

from .certificates import Certificate, Route, concatenate_routes, verify
from .graphs import (Graph, complete_graph, direct_product, find_p3_center,
                     is_bipartite)


class EdgeClass(NamedTuple):
    """Translation class of a non-terminal edge of K_{2t} x K_s."""

    parity: int   # first index of the lower-column endpoint, mod 2
    di: int       # first-index difference, lower-column endpoint minus the other
    dj: int       # column difference, always positive


@dataclass(frozen=True)
class FactorImmersion:
    """A host graph together with a fully verified totally odd strong K_t certificate."""

    host: Graph
    cert: Certificate

    def __post_init__(self):
        report = verify(self.host, self.cert)
        if not report.all_ok:
            raise ValueError(
                f"factor certificate fails verification: {report.first_violation}")

    @classmethod
    def identity(cls, host: Graph) -> "FactorImmersion":
        from .certificates import identity_certificate
        return cls(host, identity_certificate(host))

    @property
    def size(self) -> int:
        return self.cert.clique_size

    def terminal(self, a: int) -> int:
        return self.cert.terminals[a]

    def route(self, a: int, b: int) -> tuple:
        """Route vertices oriented from terminal index ``a`` to ``b``."""
        if a == b:
            raise ValueError("no route from a terminal to itself")
        lo, hi = min(a, b), max(a, b)
        verts = self.cert.connections[(lo, hi)].vertices
        if verts[0] != self.cert.terminals[lo]:
            verts = tuple(reversed(verts))
        return verts if a == lo else tuple(reversed(verts))


# ---------------------------------------------------------------------------
# Direct product: lifting a base immersion of K_t x K_s into G x H
# ---------------------------------------------------------------------------

def build_m_pair(p, q, n_h) -> tuple:
    """Build the two odd, vertex-disjoint connector routes in a direct product.

    ``p`` is an odd route ``u - a_1 - ... - a_k - u'`` in the first factor and
    ``q`` an odd route ``v - b_1 - ... - b_l - v'`` in the second.  Returns
    routes joining ``(u,v)`` to ``(u',v')`` and ``(u,v')`` to ``(u',v)`` in
    the direct product, with product vertices encoded row-major by ``n_h``.
    """
    p = tuple(p)
    q = tuple(q)
    k = len(p) - 2
    l = len(q) - 2
    if (k + 1) % 2 == 0 or (l + 1) % 2 == 0:
        raise ValueError("both factor routes must have odd edge count")

    def enc(a, b):
        return a * n_h + b

    u, up = p[0], p[-1]
    v, vp = q[0], q[-1]

    if k == l:
        # pure diagonal (covers k = l = 0: two single product edges)
        m1 = [enc(p[m], q[m]) for m in range(k + 2)]
        m2 = [enc(p[m], q[k + 1 - m]) for m in range(k + 2)]
    elif k == 0:
        # first coordinate alternates between u' and u along q
        m1 = [enc(u, v)]
        m1 += [enc(up if m % 2 == 1 else u, q[m]) for m in range(1, l + 1)]
        m1.append(enc(up, vp))
        m2 = [enc(u, vp)]
        m2 += [enc(up if m % 2 == 0 else u, q[m]) for m in range(l, 0, -1)]
        m2.append(enc(up, v))
    elif l == 0:
        # second coordinate alternates between v' and v along p
        m1 = [enc(u, v)]
        m1 += [enc(p[m], vp if m % 2 == 1 else v) for m in range(1, k + 1)]
        m1.append(enc(up, vp))
        m2 = [enc(u, vp)]
        m2 += [enc(p[m], v if m % 2 == 1 else vp) for m in range(1, k + 1)]
        m2.append(enc(up, v))
    elif k < l:
        # diagonal for k steps, then alternate a_k / u' while q finishes
        m1 = [enc(p[m], q[m]) for m in range(k + 1)]
        m1 += [enc(up if (m - k) % 2 == 1 else p[k], q[m]) for m in range(k + 1, l + 1)]
        m1.append(enc(up, vp))
        m2 = [enc(u, vp)]
        m2 += [enc(p[m], q[l + 1 - m]) for m in range(1, k + 1)]
        m2 += [enc(up if m % 2 == 0 else p[k], q[m]) for m in range(l - k, 0, -1)]
        m2.append(enc(up, v))
    else:  # l < k
        m1 = [enc(p[m], q[m]) for m in range(l + 1)]
        m1 += [enc(p[m], vp if (m - l) % 2 == 1 else q[l]) for m in range(l + 1, k + 1)]
        m1.append(enc(up, vp))
        m2 = [enc(u, vp)]
        m2 += [enc(p[m], q[l + 1 - m]) for m in range(1, l + 1)]
        m2 += [enc(p[m], v if (m - l) % 2 == 1 else q[1]) for m in range(l + 1, k + 1)]
        m2.append(enc(up, v))
    return Route(tuple(m1)), Route(tuple(m2))


def _m_route(fg: FactorImmersion, fh: FactorImmersion, a, b) -> Route:
    """Connector route from grid cell ``a = (i, j)`` to ``b = (i', j')``,
    terminal indices 0-based, differing in both coordinates."""
    (i, j), (i2, j2) = a, b
    ilo, ihi = min(i, i2), max(i, i2)
    jlo, jhi = min(j, j2), max(j, j2)
    p = fg.route(ilo, ihi)
    q = fh.route(jlo, jhi)
    m1, m2 = build_m_pair(p, q, fh.host.n)
    if (i < i2) == (j < j2):
        route = m1  # runs (ilo, jlo) -> (ihi, jhi)
        return route if i < i2 else route.reversed()
    route = m2      # runs (ilo, jhi) -> (ihi, jlo)
    return route if i < i2 else route.reversed()


def direct_lift(fg: FactorImmersion, fh: FactorImmersion,
                base: Certificate) -> Certificate:
    """Lift a K_r certificate of K_t x K_s to G x H.

    Every base route is replayed edge by edge: each base edge, which joins
    grid cells differing in both coordinates, is replaced by its connector
    route; the pieces are concatenated.  A base pair joined by a single edge
    therefore receives exactly its single connector.
    """
    t, s = fg.size, fh.size
    if t < 3 or s < 3:
        raise ValueError("direct lifting requires both factor cliques of size >= 3")
    grid = direct_product(complete_graph(t), complete_graph(s))
    report = verify(grid, base)
    if not report.satisfies("totally-odd"):
        raise ValueError(
            f"base certificate is not a totally odd immersion: {report.first_violation}")

    def decode(v):
        return divmod(v, s)

    n_h = fh.host.n

    def phi(cell):
        i, j = cell
        return fg.terminal(i) * n_h + fh.terminal(j)

    terminals = tuple(phi(decode(v)) for v in base.terminals)
    connections = {}
    for (a, b), route in base.connections.items():
        cells = [decode(v) for v in route.vertices]
        pieces = [_m_route(fg, fh, cells[m], cells[m + 1])
                  for m in range(len(cells) - 1)]
        lifted = concatenate_routes(pieces)
        if base.terminals[a] != route.vertices[0]:
            lifted = lifted.reversed()
        connections[(a, b)] = lifted
    return Certificate(base.clique_size, terminals, connections)


# ---------------------------------------------------------------------------
# The K_{ts} certificate in K_{2t} x K_s
# ---------------------------------------------------------------------------

def edge_class(t: int, s: int, u: int, v: int) -> EdgeClass:
    """Translation class of an edge of K_{2t} x K_s (vertex ids, row-major by s).

    Defined only on edges not joining two terminals (odd 1-based rows);
    orientation fixed by the smaller column.
    """
    i, j = divmod(u, s)
    i2, j2 = divmod(v, s)
    i, j, i2, j2 = i + 1, j + 1, i2 + 1, j2 + 1  # 1-based grid coordinates
    if not (1 <= i <= 2 * t and 1 <= i2 <= 2 * t and u != v):
        raise ValueError("not a vertex pair of the product grid")
    if i == i2 or j == j2:
        raise ValueError(f"({u}, {v}) is not a direct-product edge")
    if i % 2 == 1 and i2 % 2 == 1:
        raise ValueError(f"({u}, {v}) joins two terminals; no class defined")
    if j > j2:
        i, j, i2, j2 = i2, j2, i, j
    return EdgeClass(i % 2, i - i2, j2 - j)


def is_translation(t: int, s: int, e, e2) -> bool:
    """Whether two grid edges differ by a (2a, b) shift of both endpoints."""

    def norm(edge):
        u, v = edge
        i, j = divmod(u, s)
        i2, j2 = divmod(v, s)
        if (j, i) > (j2, i2):
            i, j, i2, j2 = i2, j2, i, j
        return i, j, i2, j2

    i, j, i2, j2 = norm(e)
    k, l, k2, l2 = norm(e2)
    return (k - i) % 2 == 0 and k - i == k2 - i2 and l - j == l2 - j2


def _kts_pattern_routes(t: int, s: int):
    """Yield ``(cell_a, cell_b, verts, tag)`` for every same-row/same-column
    terminal pair, 1-based grid coordinates, in a fixed deterministic order."""
    # same-row pairs
    for i in range(1, t + 1):
        r = 2 * i - 1
        for j in range(1, s + 1):
            for j2 in range(j + 1, s + 1):
                if i <= t - 1:
                    verts = [(r, j), (2 * i, j2), (2 * i + 2, j), (r, j2)]
                    tag = "row"
                else:
                    verts = [(r, j), (2 * t, j2), (2, j), (r, j2)]
                    tag = "row-wrap"
                yield (r, j), (r, j2), verts, tag
    # same-column pairs
    for j in range(1, s + 1):
        for i in range(1, t + 1):
            for i2 in range(i + 1, t + 1):
                r, r2 = 2 * i - 1, 2 * i2 - 1
                if i2 == i + 1:
                    if j <= s - 2:
                        verts = [(r, j), (2 * i + 2, j + 2), (2 * i, j + 1), (r2, j)]
                        tag = "col-adjacent"
                    elif i <= t - 3:
                        verts = [(r, j), (2 * i, j - 1), (2 * i + 6, j - (s - 2)), (r2, j)]
                        tag = "col-adjacent-wrap-low"
                    else:
                        verts = [(r, j), (2 * i - 4, j - (s - 2)), (2 * i, j - (s - 3)), (r2, j)]
                        tag = "col-adjacent-wrap-high"
                else:
                    if j <= s - 2:
                        verts = [(r, j), (2 * i2, j + 1), (2 * i, j + 2), (r2, j)]
                        tag = "col-skip"
                    elif i == 1 and i2 == t:
                        verts = [(r, j), (2 * t, j - 1), (2 * t - 6, j - 2), (r2, j)]
                        tag = "col-skip-extreme"
                    elif j == s - 1:
                        verts = [(r, j), (2 * i2, s), (2 * i, 1), (r2, j)]
                        tag = "col-skip-wrap-a"
                    else:
                        verts = [(r, j), (2 * i2, 1), (2 * i, 2), (r2, j)]
                        tag = "col-skip-wrap-b"
                yield (r, j), (r2, j), verts, tag


def _grid_edges(verts, enc):
    ids = [enc(c) for c in verts]
    return [(min(a, b), max(a, b)) for a, b in zip(ids, ids[1:])]


def direct_kts_routes(t: int, s: int):
    """All connector routes of the K_{ts} certificate in K_{2t} x K_s.

    Returns ``(singles, paths)`` where ``singles`` are the terminal-terminal
    edges and ``paths`` is a list of ``(cell_a, cell_b, verts, tag)`` with
    1-based grid cells.  Routes whose literal index pattern collides with
    edges already claimed are re-routed through fresh even-row interior
    vertices and tagged with a ``+reroute`` suffix.
    """
    if t < 6 or s < 5:
        raise ValueError("requires t >= 6 and s >= 5")

    def enc(cell):
        i, j = cell
        return (i - 1) * s + (j - 1)

    used = set()
    singles = []
    for i in range(1, t + 1):
        for j in range(1, s + 1):
            for i2 in range(i + 1, t + 1):
                for j2 in range(1, s + 1):
                    if j2 == j:
                        continue
                    a, b = (2 * i - 1, j), (2 * i2 - 1, j2)
                    e = (min(enc(a), enc(b)), max(enc(a), enc(b)))
                    if e not in used:
                        used.add(e)
                        singles.append((a, b))

    paths = []
    deferred = []
    for a, b, verts, tag in _kts_pattern_routes(t, s):
        edges = _grid_edges(verts, enc)
        if any(e in used for e in edges) or len(set(edges)) != len(edges):
            deferred.append((a, b))
            continue
        used.update(edges)
        paths.append((a, b, verts, tag))

    for a, b in deferred:
        verts = _reroute(a, b, t, s, used, enc)
        used.update(_grid_edges(verts, enc))
        paths.append((a, b, verts, "col-skip-wrap+reroute"))
    return singles, paths


def _reroute(a, b, t, s, used, enc):
    """Deterministic replacement length-3 route through two even-row interiors."""
    (ia, ja), (ib, jb) = a, b
    for ex in range(2, 2 * t + 1, 2):
        for jx in range(1, s + 1):
            if jx == ja:
                continue
            e1 = tuple(sorted((enc(a), enc((ex, jx)))))
            if e1 in used:
                continue
            for ey in range(2, 2 * t + 1, 2):
                if ey == ex:
                    continue
                for jy in range(1, s + 1):
                    if jy == jx or jy == jb:
                        continue
                    e2 = tuple(sorted((enc((ex, jx)), enc((ey, jy)))))
                    e3 = tuple(sorted((enc((ey, jy)), enc(b))))
                    if e2 in used or e3 in used or e2 == e1 or e3 in (e1, e2):
                        continue
                    return [a, (ex, jx), (ey, jy), b]
    raise RuntimeError(f"no replacement route between {a} and {b}")


def direct_kts(t: int, s: int) -> Certificate:
    """K_{ts} totally odd strong immersion certificate in K_{2t} x K_s.

    Terminals are the odd-row grid cells; cross pairs are single product
    edges and same-row/column pairs get length-3 routes through even rows.
    Requires t >= 6 and s >= 5.
    """
    singles, paths = direct_kts_routes(t, s)

    def enc(cell):
        i, j = cell
        return (i - 1) * s + (j - 1)

    cells = [(2 * i - 1, j) for i in range(1, t + 1) for j in range(1, s + 1)]
    index = {enc(c): pos for pos, c in enumerate(cells)}
    terminals = tuple(enc(c) for c in cells)

    connections = {}

    def put(a, b, verts):
        pa, pb = index[enc(a)], index[enc(b)]
        ids = tuple(enc(c) for c in verts)
        if pa > pb:
            pa, pb = pb, pa
            ids = tuple(reversed(ids))
        connections[(pa, pb)] = Route(ids)

    for a, b in singles:
        put(a, b, [a, b])
    for a, b, verts, _tag in paths:
        put(a, b, verts)
    return Certificate(t * s, terminals, connections)


def toi_lower_bound_product(op: str, t: int, s: int) -> int:
    """Provable lower bound on toi of a product of graphs with toi values t, s."""
    if t < 1 or s < 1:
        raise ValueError("toi values are at least 1")
    if op == "cartesian":
        if min(t, s) == 1:
            return max(t, s)
        if max(t, s) >= 4:
            return t + s - 1
        if t == 3 and s == 3:
            return 4
        if {t, s} == {2, 3}:
            return 3
        return 2  # t = s = 2: the product of bipartite factors stays bipartite
    if op in ("lexicographic", "lex", "strong"):
        return t * s
    if op == "direct":
        if min(t, s) >= 3:
            return min(t, s)  # diagonal clique of K_t x K_s
        if min(t, s) >= 2:
            return 2
        return 1
    raise ValueError(f"unknown product kind {op!r}")


# ---------------------------------------------------------------------------
# Cartesian product constructions
# ---------------------------------------------------------------------------

def _lift_into_h_fiber(q_verts, g_vertex, n_h):
    return [g_vertex * n_h + x for x in q_verts]


def _lift_into_g_copy(p_verts, h_vertex, n_h):
    return [x * n_h + h_vertex for x in p_verts]


def cartesian_large(fg: FactorImmersion, fh: FactorImmersion) -> Certificate:
    """K_{t+s-1} certificate in G [] H when the second factor clique has s >= 4.

    Terminals are the first row ``(u_1, v_j)`` and first column ``(u_i, v_1)``.
    A cross pair ``(u_1, v_j) - (u_i, v_1)`` with ``i, j >= 2`` walks the
    ``v_j`` copy of the first-factor route, then detours inside the ``u_i``
    fiber through two second-factor routes back to ``v_1``; the last
    second-factor terminal reuses the first two routes in reverse.
    """
    t, s = fg.size, fh.size
    if s < 4:
        raise ValueError("requires s >= 4")
    if t < 2:
        raise ValueError("requires t >= 2")
    n_h = fh.host.n
    u = fg.cert.terminals
    v = fh.cert.terminals

    # terminal order: (u_1, v_1) .. (u_1, v_s), then (u_2, v_1) .. (u_t, v_1)
    terminals = tuple(u[0] * n_h + v[j] for j in range(s)) \
        + tuple(u[i] * n_h + v[0] for i in range(1, t))

    def detour_target(j):
        return j + 1 if j < s - 1 else 1

    connections = {}
    for j in range(s):
        for j2 in range(j + 1, s):
            connections[(j, j2)] = Route(tuple(
                _lift_into_h_fiber(fh.route(j, j2), u[0], n_h)))
    for i in range(1, t):
        for i2 in range(i + 1, t):
            connections[(s + i - 1, s + i2 - 1)] = Route(tuple(
                _lift_into_g_copy(fg.route(i, i2), v[0], n_h)))
    for i in range(1, t):
        b = s + i - 1
        # (u_1, v_1) - (u_i, v_1): first-factor route in the v_1 copy
        connections[(0, b)] = Route(tuple(
            _lift_into_g_copy(fg.route(0, i), v[0], n_h)))
        for j in range(1, s):
            w = detour_target(j)
            segs = [Route(tuple(_lift_into_g_copy(fg.route(0, i), v[j], n_h))),
                    Route(tuple(_lift_into_h_fiber(fh.route(j, w), u[i], n_h))),
                    Route(tuple(_lift_into_h_fiber(fh.route(w, 0), u[i], n_h)))]
            connections[(j, b)] = concatenate_routes(segs)
    return Certificate(t + s - 1, terminals, connections)


def cartesian_33(fg: FactorImmersion, fh: FactorImmersion) -> Certificate:
    """K_4 certificate in G [] H from two K_3 factor immersions."""
    if fg.size != 3 or fh.size != 3:
        raise ValueError("both factor certificates must be K_3 certificates")
    n_h = fh.host.n
    u = fg.cert.terminals
    v = fh.cert.terminals
    # terminals: (u_1, v_1), (u_2, v_1), (u_3, v_1), (u_1, v_2)
    terminals = (u[0] * n_h + v[0], u[1] * n_h + v[0],
                 u[2] * n_h + v[0], u[0] * n_h + v[1])
    connections = {}
    for a, b in ((0, 1), (0, 2), (1, 2)):
        connections[(a, b)] = Route(tuple(
            _lift_into_g_copy(fg.route(a, b), v[0], n_h)))
    connections[(0, 3)] = Route(tuple(
        _lift_into_h_fiber(fh.route(0, 1), u[0], n_h)))
    for a in (1, 2):
        # (u_1, v_2) -> row to (u_a, v_2) -> fiber detour v_2 -> v_3 -> v_1
        segs = [Route(tuple(_lift_into_g_copy(fg.route(0, a), v[1], n_h))),
                Route(tuple(_lift_into_h_fiber(fh.route(1, 2), u[a], n_h))),
                Route(tuple(_lift_into_h_fiber(fh.route(2, 0), u[a], n_h)))]
        connections[(a, 3)] = concatenate_routes(segs).reversed()
    return Certificate(4, terminals, connections)


def _canonical_cycle(cycle):
    """Rotate/reflect so the cycle starts at its lowest vertex and moves
    toward the smaller of that vertex's two cycle neighbors."""
    k = cycle.index(min(cycle))
    cyc = cycle[k:] + cycle[:k]
    if cyc[1] > cyc[-1]:
        cyc = [cyc[0]] + cyc[:0:-1]
    return cyc


def cartesian_32(g: Graph, h: Graph) -> Certificate:
    """K_4 certificate in G [] H for non-bipartite G and H with a degree-2 vertex.

    Embeds the explicit odd-cycle-times-three-path construction onto an odd
    cycle of G and a center-plus-two-neighbors star of H.
    """
    bip, cycle = is_bipartite(g)
    if bip:
        raise ValueError("requires a non-bipartite first factor (no odd cycle found)")
    star = find_p3_center(h)
    if star is None:
        raise ValueError("requires a second factor with a vertex of degree >= 2")
    c = _canonical_cycle(cycle)
    center, nb1, nb2 = star
    v1, v2, v3 = nb1, center, nb2
    n_h = h.n

    def enc(ci, hv):
        return c[ci] * n_h + hv

    L = len(c)  # odd, >= 3
    terminals = (enc(0, v1), enc(1, v1), enc(2, v1), enc(0, v2))
    connections = {
        (0, 1): Route((enc(0, v1), enc(1, v1))),
        (1, 2): Route((enc(1, v1), enc(2, v1))),
        (0, 3): Route((enc(0, v1), enc(0, v2))),
        # around the v1 cycle, the long way
        (0, 2): Route(tuple(enc(m % L, v1) for m in range(2, L + 1))),
        # up to v2, then around the v2 cycle back to column 1
        (1, 3): Route((enc(1, v1),) + tuple(enc(m % L, v2) for m in range(1, L + 1))),
        # through the v3 cycle: v2, v3, two steps, back down to v1
        (2, 3): Route((enc(0, v2), enc(0, v3), enc(1, v3), enc(2, v3),
                       enc(2, v2), enc(2, v1))),
    }
    return Certificate(4, terminals, connections)
