"""Continued fractions with certified enclosures, and the rotation diagram.

The irrational angle is never entered as a float.  A :class:`CFExpansion`
holds finitely many positive partial quotients a(1), ..., a(D); the angle
alpha they determine (for any infinite continuation) lies strictly between
the depth-D convergent p(D)/q(D) and the mediant
(p(D)+p(D-1))/(q(D)+q(D-1)), which gives a certified rational enclosure of
width 1/(q(D)(q(D)+q(D-1))).  All derived quantities alpha(n) =
|q(n) alpha - p(n)| are intervals computed from that enclosure, and every
claimed strict inequality is checked on interval endpoints; operations
raise InsufficientDepth instead of silently widening a verdict.

The two-vertex rotation diagram carries the explicit labeling
b(e^n_{1,2}) = 0, b(e^n_{2,1}) = a(n+1) q(n), b(e^n_{1,1}(k)) = (k-1) q(n),
with the parallel edges ordered by k and the cross edge last; the generic
inductive labeling reproduces exactly these values (compare with
:func:`compare_labelings`).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .bratteli import Edge, OrderedBratteliDiagram
from .errors import BadInput, InsufficientDepth, RangeError
from .intervals import RatInterval
from .labeling import EdgeLabeling, tables_from_b
from .laurent import LaurentMatrix, LaurentPoly


class CFExpansion:
    """Finite truncation a(1), .., a(D) of a continued fraction expansion."""

    def __init__(self, terms: Sequence[int]):
        terms = tuple(int(a) for a in terms)
        if not terms or any(a < 1 for a in terms):
            raise BadInput("continued fraction terms must be positive integers")
        self.terms = terms
        # p(-1) = 1, q(-1) = 0, p(0) = 0, q(0) = 1 head the recurrences.
        ps, qs = [1, 0], [0, 1]
        for a in terms:
            ps.append(a * ps[-1] + ps[-2])
            qs.append(a * qs[-1] + qs[-2])
        self._ps, self._qs = ps, qs

    @property
    def depth(self) -> int:
        return len(self.terms)

    def a(self, n: int) -> int:
        """Partial quotient a(n), 1-based."""
        if not (1 <= n <= self.depth):
            raise RangeError(f"a({n}) outside 1..{self.depth}")
        return self.terms[n - 1]

    def p(self, n: int) -> int:
        if not (-1 <= n <= self.depth):
            raise RangeError(f"p({n}) outside -1..{self.depth}")
        return self._ps[n + 1]

    def q(self, n: int) -> int:
        if not (-1 <= n <= self.depth):
            raise RangeError(f"q({n}) outside -1..{self.depth}")
        return self._qs[n + 1]

    def alpha(self) -> RatInterval:
        """Certified enclosure of the angle, valid for any infinite tail."""
        d = self.depth
        end1 = Fraction(self.p(d), self.q(d))
        end2 = Fraction(self.p(d) + self.p(d - 1), self.q(d) + self.q(d - 1))
        return RatInterval(min(end1, end2), max(end1, end2))


def convergents(cf: CFExpansion, n: int) -> Tuple[int, int]:
    """The exact pair (p(n), q(n)); always coprime."""
    return cf.p(n), cf.q(n)


def alpha_n(cf: CFExpansion, n: int) -> RatInterval:
    """Enclosure of alpha(n) = |q(n) alpha - p(n)|.

    Requires n <= depth - 2 so the enclosure can be certified to lie
    strictly inside the open interval (1/(q(n)+q(n+1)), 1/q(n+1)).
    """
    if n < 0:
        raise RangeError("alpha(n) needs n >= 0")
    if n > cf.depth - 2:
        raise InsufficientDepth(f"alpha({n}) needs two spare terms beyond {n}")
    enc = abs(cf.q(n) * cf.alpha() - cf.p(n))
    lo_bound = Fraction(1, cf.q(n) + cf.q(n + 1))
    hi_bound = Fraction(1, cf.q(n + 1))
    if not enc.strictly_inside(lo_bound, hi_bound):
        raise InsufficientDepth(f"alpha({n}) enclosure fails the strict bracket")
    return enc


@dataclass(frozen=True)
class GrowthRule:
    """Declared lower bound on the partial quotients, used for tail bounds.

    kind "linear":    a(n) >= c * n for all n.
    kind "geometric": a(n) >= c * g**n for all n, with g > 1.
    """

    kind: str
    c: Fraction
    g: Fraction = Fraction(1)

    def holds_for(self, cf: CFExpansion) -> bool:
        if self.kind == "linear":
            return all(cf.a(n) >= self.c * n for n in range(1, cf.depth + 1))
        if self.kind == "geometric":
            return self.g > 1 and all(cf.a(n) >= self.c * self.g ** n for n in range(1, cf.depth + 1))
        raise BadInput(f"unknown growth rule {self.kind!r}")

    def tail_bound(self, start: int) -> Fraction:
        """Certified bound on the sum of 1/(a(n)a(n+1)) over n >= start."""
        if self.kind == "linear":
            # sum 1/(c^2 n (n+1)) over n >= start telescopes to 1/(c^2 start)
            return Fraction(1) / (self.c ** 2 * start)
        if self.kind == "geometric":
            r = self.g ** -2
            return (self.c ** -2) * (self.g ** (-2 * start - 1)) / (1 - r)
        raise BadInput(f"unknown growth rule {self.kind!r}")


@dataclass(frozen=True)
class SummabilityReport:
    partial_sum: Fraction
    verdict: str  # "CONVERGENT_CERTIFIED" | "INCONCLUSIVE"
    tail_bound: Optional[Fraction]

    @property
    def total_bound(self) -> Optional[Fraction]:
        if self.tail_bound is None:
            return None
        return self.partial_sum + self.tail_bound


def summability_report(cf: CFExpansion, rule: Optional[GrowthRule] = None) -> SummabilityReport:
    """Partial sum of 1/(a(n)a(n+1)) plus a tail verdict.

    The verdict is CONVERGENT_CERTIFIED only when a declared growth rule
    both holds on the supplied terms and has a summable tail; otherwise the
    report is INCONCLUSIVE with the partial sum alone.
    """
    partial = sum(Fraction(1, cf.a(n) * cf.a(n + 1)) for n in range(1, cf.depth))
    if rule is not None and rule.holds_for(cf):
        return SummabilityReport(partial, "CONVERGENT_CERTIFIED", rule.tail_bound(cf.depth))
    return SummabilityReport(partial, "INCONCLUSIVE", None)


# -- the rotation diagram ------------------------------------------------------


def _edge_id_parallel(n: int, k: int) -> str:
    return f"e{n}_11_{k}"


def rotation_diagram(cf: CFExpansion, depth: int) -> Tuple[OrderedBratteliDiagram, EdgeLabeling]:
    """The two-vertex diagram of the rotation, with its explicit labeling.

    Level n >= 1 has vertices (v_1, v_2); E_n consists of a(n+1) parallel
    edges v_1 -> v_1 (ordered by k), one edge v_2 -> v_1 (last in the
    order), and one edge v_1 -> v_2.  Probabilities are enclosures derived
    from the alpha(n); the v_2 -> v_1 edge has exact probability 1.
    """
    if depth < 1:
        raise BadInput("depth must be >= 1")
    if depth > cf.depth - 2:
        raise InsufficientDepth(f"depth {depth} needs cf depth >= {depth + 2}")
    levels = [["v0"]] + [[f"v{n}_1", f"v{n}_2"] for n in range(1, depth + 1)]
    edges, orders, b = [], {}, {}
    alphas = [alpha_n(cf, n) for n in range(depth + 1)]
    # E_0: a(1) parallel edges into v_1 plus one edge into v_2.
    e0 = []
    for k in range(1, cf.a(1) + 1):
        eid = _edge_id_parallel(0, k)
        e0.append(Edge(eid, 0, 0, 0, alphas[0]))
        b[eid] = (k - 1) * cf.q(0)
    e0.append(Edge("e0_12", 0, 0, 1, alphas[1]))
    b["e0_12"] = 0
    edges.append(e0)
    orders[(1, 0)] = [_edge_id_parallel(0, k) for k in range(1, cf.a(1) + 1)]
    orders[(1, 1)] = ["e0_12"]
    for n in range(1, depth):
        a_next = cf.a(n + 1)
        ratio_stay = alphas[n] / alphas[n - 1]
        ratio_out = alphas[n + 1] / alphas[n - 1]
        level_edges = []
        for k in range(1, a_next + 1):
            eid = _edge_id_parallel(n, k)
            level_edges.append(Edge(eid, n, 0, 0, ratio_stay))
            b[eid] = (k - 1) * cf.q(n)
        cross = Edge(f"e{n}_21", n, 1, 0, Fraction(1))
        level_edges.append(cross)
        b[cross.id] = a_next * cf.q(n)
        down = Edge(f"e{n}_12", n, 0, 1, ratio_out)
        level_edges.append(down)
        b[down.id] = 0
        edges.append(level_edges)
        orders[(n + 1, 0)] = [_edge_id_parallel(n, k) for k in range(1, a_next + 1)] + [cross.id]
        orders[(n + 1, 1)] = [down.id]
    diagram = OrderedBratteliDiagram(levels, edges, orders)
    return diagram, tables_from_b(diagram, b)


def compare_labelings(cf: CFExpansion, depth: int) -> dict:
    """Generic inductive labeling vs the explicit rotation labeling.

    Reports agreement edge by edge; nothing is asserted here.
    """
    from .labeling import label_edges

    diagram, explicit = rotation_diagram(cf, depth)
    generic = label_edges(diagram)
    mismatches = {
        eid: (explicit.b[eid], generic.b[eid])
        for eid in explicit.b
        if explicit.b[eid] != generic.b[eid]
    }
    return {"agree": not mismatches, "mismatches": mismatches}


# -- rank-one structure --------------------------------------------------------


def rotation_matrix(cf: CFExpansion, n: int) -> LaurentMatrix:
    """M_n of the rotation diagram (2x1 for n = 0, else 2x2), enclosure-valued."""
    if n == 0:
        col = LaurentPoly({k: alpha_n(cf, 0) for k in range(cf.a(1))})
        return LaurentMatrix([[col], [LaurentPoly({0: alpha_n(cf, 1)})]])
    stay = alpha_n(cf, n) / alpha_n(cf, n - 1)
    out = alpha_n(cf, n + 1) / alpha_n(cf, n - 1)
    a_next, q = cf.a(n + 1), cf.q(n)
    top_left = LaurentPoly({k * q: stay for k in range(a_next)})
    return LaurentMatrix(
        [
            [top_left, LaurentPoly.x(a_next * q)],
            [LaurentPoly({0: out}), LaurentPoly.zero()],
        ]
    )


def rank_one_polys(cf: CFExpansion, count: int, rule: Optional[GrowthRule] = None) -> List[LaurentPoly]:
    """P_n = (1/a(n+1)) (1 + x^{q(n)} + ... + x^{(a(n+1)-1) q(n)}), n < count."""
    if count > cf.depth:
        raise InsufficientDepth(f"need {count} terms, have {cf.depth}")
    report = summability_report(cf, rule)
    if report.verdict != "CONVERGENT_CERTIFIED":
        warnings.warn("summability not certified; the rank-one identification is heuristic",
                      stacklevel=2)
    out = []
    for n in range(count):
        a_next, q = cf.a(n + 1), cf.q(n)
        out.append(LaurentPoly({k * q: Fraction(1, a_next) for k in range(a_next)}))
    return out


@dataclass(frozen=True)
class GapReport:
    """The l1 distance between M_n and its displayed rank-one approximant."""

    n: int
    gap: RatInterval                 # exact enclosure of the full l1 gap
    first_entry_component: RatInterval
    corner_component: RatInterval
    two_alpha_ratio: RatInterval     # 2 alpha(n+1)/alpha(n-1)
    tail_bound: Optional[Fraction]   # 2/(a(n+1) a(n+2)) when available


def rank_one_gap(cf: CFExpansion, n: int) -> GapReport:
    """Entrywise l1 gap between M_n and the column-row product approximant.

    The approximant replaces the first-column ratio alpha(n)/alpha(n-1) by
    1/a(n+1) and drops the corner entry alpha(n+1)/alpha(n-1); the two error
    components are equal, so the gap equals 2 alpha(n+1)/alpha(n-1) exactly
    (up to enclosure width).
    """
    if n < 1:
        raise RangeError("rank_one_gap needs n >= 1")
    m = rotation_matrix(cf, n)
    a_next, q = cf.a(n + 1), cf.q(n)
    row = [
        LaurentPoly({k * q: Fraction(1, a_next) for k in range(a_next)}),
        LaurentPoly.x(a_next * q),
    ]
    approx = [[row[0], row[1]], [LaurentPoly.zero(), LaurentPoly.zero()]]
    gap = RatInterval(0)
    for i in range(2):
        for j in range(2):
            gap = gap + (m.entries[i][j] - approx[i][j]).one_norm()
    first = (m.entries[0][0] - approx[0][0]).one_norm()
    corner = m.entries[1][0].one_norm()
    two_ratio = 2 * (alpha_n(cf, n + 1) / alpha_n(cf, n - 1))
    tail = None
    if n + 2 <= cf.depth:
        tail = Fraction(2, cf.a(n + 1) * cf.a(n + 2))
    first = first if isinstance(first, RatInterval) else RatInterval.point(first)
    corner = corner if isinstance(corner, RatInterval) else RatInterval.point(corner)
    return GapReport(n=n, gap=RatInterval.coerce(gap), first_entry_component=first,
                     corner_component=corner, two_alpha_ratio=two_ratio, tail_bound=tail)


def parse_rule(text: str) -> GrowthRule:
    """Parse CLI rule syntax: "linear:c=1" or "geometric:c=1,g=2"."""
    try:
        kind, _, params = text.partition(":")
        kv = dict(item.split("=") for item in params.split(",")) if params else {}
        c = Fraction(kv.get("c", "1"))
        g = Fraction(kv.get("g", "2"))
        rule = GrowthRule(kind=kind, c=c, g=g)
        if kind not in ("linear", "geometric"):
            raise ValueError(kind)
        return rule
    except (ValueError, TypeError) as exc:
        raise BadInput(f"cannot parse growth rule {text!r}") from exc
