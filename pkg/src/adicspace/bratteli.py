"""Ordered Bratteli diagrams with Markov measures, at finite depth.

A diagram is a leveled multigraph: level n holds the vertex set V_n (V_0 is
a singleton root), and E_n is the set of edges from V_n to V_{n+1}.  Every
non-root vertex carries an explicit total order on its incoming edges; no
default order is assumed, because the worked families use orders that are
not left-to-right.  Each edge carries a transition probability p(e) > 0 and
the probabilities out of any vertex sum to 1 (exactly in rational mode, or
as an interval containing 1 in enclosure mode).

Depth is fixed at construction.  Operations act on finite paths
(e_0, ..., e_n) from the root; the successor operation below is the finite
restriction of the adic transformation: it fixes the terminal vertex.

JSON interchange format::

    {"levels": [["v0"], ["a", "b"], ...],
     "edges":  [[{"id": "e0", "src": 0, "dst": 0, "p": "1/2"}, ...], ...],
     "orders": {"<level>/<vertex-index>": ["edgeId", ...], ...}}

``src``/``dst`` are indices into the adjacent level lists; rationals are
"num/den" strings; the order key for vertex i of V_n is ``"n/i"`` and lists
the ids of the E_{n-1} edges into that vertex, minimal first.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import BadInput, BadMeasure, BadOrder, DepthExceeded, EmptyFiber, MissingRoot
from .intervals import RatInterval


@dataclass(frozen=True)
class Edge:
    id: str
    level: int
    src: int
    dst: int
    p: object  # Fraction or RatInterval, > 0


@dataclass(frozen=True)
class FinitePath:
    """A path (e_0, ..., e_n) from the root; r(e_k) = s(e_{k+1})."""

    edges: tuple

    def __len__(self):
        return len(self.edges)

    @property
    def terminal(self):
        last = self.edges[-1]
        return (last.level + 1, last.dst)

    def ids(self):
        return tuple(e.id for e in self.edges)


class OrderedBratteliDiagram:
    """Validated diagram; immutable after construction.

    ``levels[n]`` are the vertex labels of V_n; ``edges[n]`` the E_n edge
    tuple; ``in_edges[(n+1, v)]`` the edges into vertex v of V_{n+1} in
    their total order; ``out_edges[(n, v)]`` the edges out of v in id order.
    """

    def __init__(self, levels, edges, orders):
        self.levels = tuple(tuple(l) for l in levels)
        self.edges = tuple(tuple(e) for e in edges)
        self.in_edges = {}
        self.out_edges = {}
        for n, level_edges in enumerate(self.edges):
            for v in range(len(self.levels[n])):
                self.out_edges[(n, v)] = tuple(e for e in level_edges if e.src == v)
            by_id = {e.id: e for e in level_edges}
            for v in range(len(self.levels[n + 1])):
                try:
                    order = orders[(n + 1, v)]
                    self.in_edges[(n + 1, v)] = tuple(by_id[i] for i in order)
                except KeyError as exc:
                    raise BadOrder(f"order at vertex {n + 1}/{v} references {exc}") from exc
        self._validate()

    @property
    def depth(self) -> int:
        """Number of edge levels; paths have length at most depth."""
        return len(self.edges)

    def k(self, n: int) -> int:
        return len(self.levels[n])

    def edge_order_index(self, e: Edge) -> int:
        return self.in_edges[(e.level + 1, e.dst)].index(e)

    def _validate(self):
        if len(self.levels) != len(self.edges) + 1:
            raise BadInput("need exactly one more vertex level than edge level")
        if len(self.levels[0]) != 1:
            raise MissingRoot(f"V_0 must be a singleton, got {len(self.levels[0])} vertices")
        seen_ids = set()
        for n, level_edges in enumerate(self.edges):
            kn, kn1 = len(self.levels[n]), len(self.levels[n + 1])
            for e in level_edges:
                if e.id in seen_ids:
                    raise BadInput(f"duplicate edge id {e.id!r}")
                seen_ids.add(e.id)
                if not (0 <= e.src < kn and 0 <= e.dst < kn1):
                    raise BadInput(f"edge {e.id!r} endpoints out of range")
                if isinstance(e.p, RatInterval):
                    if e.p.lo <= 0:
                        raise BadMeasure(f"edge {e.id!r} probability not certainly positive")
                elif e.p <= 0:
                    raise BadMeasure(f"edge {e.id!r} has p <= 0")
            for v in range(kn):
                if not self.out_edges[(n, v)]:
                    raise EmptyFiber(f"vertex {n}/{v} has no outgoing edge")
                total = Fraction(0)
                for e in self.out_edges[(n, v)]:
                    total = total + e.p if not isinstance(e.p, RatInterval) else e.p + total
                if isinstance(total, RatInterval):
                    if not total.contains(1):
                        raise BadMeasure(f"source sums at vertex {n}/{v} exclude 1")
                elif total != 1:
                    raise BadMeasure(f"source sums at vertex {n}/{v} equal {total}, not 1")
            for v in range(kn1):
                incoming = [e for e in level_edges if e.dst == v]
                if not incoming:
                    raise EmptyFiber(f"vertex {n + 1}/{v} has no incoming edge")
                order = self.in_edges[(n + 1, v)]
                if sorted(e.id for e in order) != sorted(e.id for e in incoming):
                    raise BadOrder(f"order at vertex {n + 1}/{v} is not a permutation of its fiber")


def validate_diagram(spec: dict) -> OrderedBratteliDiagram:
    """Build a diagram from the JSON interchange dict, or raise a coded error."""
    try:
        levels = spec["levels"]
        raw_edges = spec["edges"]
        raw_orders = spec.get("orders", {})
    except (KeyError, TypeError) as exc:
        raise BadInput(f"malformed diagram spec: {exc}") from exc
    if not levels or not levels[0]:
        raise MissingRoot("empty level list")
    edges = []
    for n, level in enumerate(raw_edges):
        parsed = []
        for e in level:
            try:
                parsed.append(
                    Edge(id=str(e["id"]), level=n, src=int(e["src"]), dst=int(e["dst"]),
                         p=Fraction(e["p"]))
                )
            except (KeyError, ValueError, ZeroDivisionError, TypeError) as exc:
                raise BadInput(f"malformed edge in E_{n}: {exc}") from exc
        edges.append(parsed)
    orders = {}
    for key, ids in raw_orders.items():
        try:
            lvl, v = key.split("/")
            orders[(int(lvl), int(v))] = [str(i) for i in ids]
        except ValueError as exc:
            raise BadInput(f"malformed order key {key!r}") from exc
    # Missing order entries are rejected via BadOrder with a clear message.
    for n in range(len(edges)):
        if n + 1 >= len(levels):
            raise BadInput("edge level beyond declared vertex levels")
        for v in range(len(levels[n + 1])):
            if (n + 1, v) not in orders:
                raise BadOrder(f"no order given for vertex {n + 1}/{v}")
    return OrderedBratteliDiagram(levels, edges, orders)


def diagram_to_json(d: OrderedBratteliDiagram) -> dict:
    out_edges = []
    for level_edges in d.edges:
        out_edges.append(
            [{"id": e.id, "src": e.src, "dst": e.dst, "p": str(e.p)} for e in level_edges]
        )
    orders = {}
    for (n, v), es in d.in_edges.items():
        orders[f"{n}/{v}"] = [e.id for e in es]
    return {"levels": [list(l) for l in d.levels], "edges": out_edges, "orders": orders}


# -- path machinery ----------------------------------------------------------


def minimal_path_into(d: OrderedBratteliDiagram, level: int, vertex: int) -> FinitePath:
    """The adic-minimal path from the root into the given vertex."""
    edges = []
    v = vertex
    for n in range(level - 1, -1, -1):
        e = d.in_edges[(n + 1, v)][0]
        edges.append(e)
        v = e.src
    return FinitePath(tuple(reversed(edges)))


def maximal_path_into(d: OrderedBratteliDiagram, level: int, vertex: int) -> FinitePath:
    edges = []
    v = vertex
    for n in range(level - 1, -1, -1):
        e = d.in_edges[(n + 1, v)][-1]
        edges.append(e)
        v = e.src
    return FinitePath(tuple(reversed(edges)))


def enumerate_paths(d: OrderedBratteliDiagram, n: int, v: Optional[int] = None) -> list:
    """All paths (e_0, ..., e_n), in adic order.

    The adic order compares the latest differing edge via the order at its
    range vertex.  When ``v`` is given only paths with r(e_n) = v are
    produced; otherwise paths are grouped by terminal vertex in level order
    (the adic order is only a partial order across distinct terminals).
    """
    if n >= d.depth:
        raise DepthExceeded(f"level {n} >= depth {d.depth}")
    if v is not None:
        return [FinitePath(p) for p in _paths_into(d, n + 1, v)]
    out = []
    for vtx in range(d.k(n + 1)):
        out.extend(FinitePath(p) for p in _paths_into(d, n + 1, vtx))
    return out


def _paths_into(d, level, vertex):
    if level == 0:
        return [()]
    result = []
    for e in d.in_edges[(level, vertex)]:
        for prefix in _paths_into(d, level - 1, e.src):
            result.append(prefix + (e,))
    return result


def count_paths_into(d: OrderedBratteliDiagram, level: int, vertex: int) -> int:
    counts = {(0, 0): 1}
    for n in range(level):
        for v in range(d.k(n + 1)):
            counts[(n + 1, v)] = sum(counts[(n, e.src)] for e in d.in_edges[(n + 1, v)])
    return counts[(level, vertex)]


def check_path(d: OrderedBratteliDiagram, p: FinitePath):
    if not p.edges:
        raise BadInput("empty path")
    if p.edges[0].level != 0 or p.edges[0].src != 0:
        raise BadInput("path must start at the root")
    for a, b in itertools.pairwise(p.edges):
        if b.level != a.level + 1 or b.src != a.dst:
            raise BadInput(f"edges {a.id!r}, {b.id!r} are not consecutive")


def successor(d: OrderedBratteliDiagram, p: FinitePath) -> Optional[FinitePath]:
    """The next path in adic order with the same terminal vertex.

    Returns None when p is the adic-maximal path into its terminal vertex.
    """
    check_path(d, p)
    for m, e in enumerate(p.edges):
        fiber = d.in_edges[(e.level + 1, e.dst)]
        idx = fiber.index(e)
        if idx + 1 < len(fiber):
            nxt = fiber[idx + 1]
            prefix = minimal_path_into(d, m, nxt.src).edges if m > 0 else ()
            return FinitePath(prefix + (nxt,) + p.edges[m + 1 :])
    return None


def predecessor(d: OrderedBratteliDiagram, p: FinitePath) -> Optional[FinitePath]:
    """Inverse of :func:`successor`; None on the adic-minimal path."""
    check_path(d, p)
    for m, e in enumerate(p.edges):
        fiber = d.in_edges[(e.level + 1, e.dst)]
        idx = fiber.index(e)
        if idx > 0:
            prv = fiber[idx - 1]
            prefix = maximal_path_into(d, m, prv.src).edges if m > 0 else ()
            return FinitePath(prefix + (prv,) + p.edges[m + 1 :])
    return None


def cylinder_measure(d: OrderedBratteliDiagram, p: FinitePath):
    """Product of the edge probabilities along the path, exact."""
    check_path(d, p)
    total = Fraction(1)
    for e in p.edges:
        total = total * e.p if not isinstance(e.p, RatInterval) else e.p * total
    return total


def maximal_path_count(d: OrderedBratteliDiagram, n: int) -> int:
    """Number of adic-maximal paths of length n+1 (one per terminal vertex)."""
    if n >= d.depth:
        raise DepthExceeded(f"level {n} >= depth {d.depth}")
    return d.k(n + 1)


# -- bundled example families -------------------------------------------------


def odometer_diagram(depth: int) -> OrderedBratteliDiagram:
    """Dyadic odometer: one vertex per level, two edges e0 < e1, p = 1/2."""
    levels = [["v"] for _ in range(depth + 1)]
    edges, orders = [], {}
    for n in range(depth):
        e0 = Edge(f"e{n}_0", n, 0, 0, Fraction(1, 2))
        e1 = Edge(f"e{n}_1", n, 0, 0, Fraction(1, 2))
        edges.append([e0, e1])
        orders[(n + 1, 0)] = [e0.id, e1.id]
    return OrderedBratteliDiagram(levels, edges, orders)


def circulant_diagram(k: int, depth: int) -> OrderedBratteliDiagram:
    """The k-cycle family: loops stay, shifts move v_i to v_{i+1 mod k}.

    Level 0 is the root fanning out with p = 1/k.  From level 1 on, vertex
    i emits a loop edge and a shift edge, p = 1/2 each; the order at every
    vertex puts the loop edge first.  k = 2 is the Morse diagram (there the
    order at the second vertex is the crossed one, which is exactly what
    the loop-first rule produces).
    """
    if k < 2:
        raise BadInput("k must be at least 2")
    levels = [["root"]] + [[f"v{n}_{i}" for i in range(k)] for n in range(1, depth + 1)]
    edges, orders = [], {}
    root_edges = [Edge(f"e0_{i}", 0, 0, i, Fraction(1, k)) for i in range(k)]
    edges.append(root_edges)
    for i in range(k):
        orders[(1, i)] = [root_edges[i].id]
    for n in range(1, depth):
        level_edges = []
        loops = [Edge(f"e{n}_{i}_{i}", n, i, i, Fraction(1, 2)) for i in range(k)]
        shifts = [Edge(f"e{n}_{i}_{(i + 1) % k}", n, i, (i + 1) % k, Fraction(1, 2)) for i in range(k)]
        level_edges.extend(loops)
        level_edges.extend(shifts)
        edges.append(level_edges)
        for i in range(k):
            orders[(n + 1, i)] = [loops[i].id, shifts[(i - 1) % k].id]
    return OrderedBratteliDiagram(levels, edges, orders)


def morse_diagram(depth: int) -> OrderedBratteliDiagram:
    """Two vertices per level, the crossed incoming orders, p = 1/2."""
    return circulant_diagram(2, depth)
