"""Dimension-space matrices synthesized from a labeled diagram.

M_n is the k(n+1) x k(n) Laurent matrix whose (i, j) entry collects
p(e) x^{b(e)} over the edges from vertex j of V_n to vertex i of V_{n+1}.
Columns are stochastic at x = 1.  The direct limit along the M_n is never
materialized; what is computed is the matrix sequence, partial products,
states against harmonic row vectors, and norms at a finite horizon (the
norm of a pushed-forward vector is nonincreasing in the horizon, so any
finite horizon certifies an upper bound).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .bratteli import OrderedBratteliDiagram
from .errors import DimensionMismatch, RangeError
from .intervals import RatInterval
from .labeling import EdgeLabeling
from .laurent import LaurentMatrix, LaurentPoly, mat_mul, weighted_one_norm


@dataclass(frozen=True)
class DimensionSpace:
    matrices: Tuple[LaurentMatrix, ...]
    dims: Tuple[int, ...]  # dims[n] = k(n); len(dims) = len(matrices) + 1

    @property
    def depth(self) -> int:
        return len(self.matrices)


def build_matrices(d: OrderedBratteliDiagram, labeling: EdgeLabeling) -> DimensionSpace:
    mats = []
    for n in range(d.depth):
        rows = []
        for i in range(d.k(n + 1)):
            row = []
            for j in range(d.k(n)):
                acc = LaurentPoly.zero()
                for e in d.out_edges[(n, j)]:
                    if e.dst == i:
                        acc = acc + LaurentPoly.monomial(e.p, labeling.b[e.id])
                row.append(acc)
            rows.append(row)
        mats.append(LaurentMatrix(rows))
    return DimensionSpace(matrices=tuple(mats), dims=tuple(d.k(n) for n in range(d.depth + 1)))


def from_matrices(mats: Sequence[LaurentMatrix]) -> DimensionSpace:
    for a, b in zip(mats, mats[1:]):
        if b.cols != a.rows:
            raise DimensionMismatch("consecutive matrices do not chain")
    dims = tuple([mats[0].cols] + [m.rows for m in mats])
    return DimensionSpace(matrices=tuple(mats), dims=dims)


def partial_product(space: DimensionSpace, start: int, stop: int) -> LaurentMatrix:
    """M_{stop-1} ... M_{start}, exact; requires start < stop <= depth."""
    if not (0 <= start < stop <= space.depth):
        raise RangeError(f"need 0 <= {start} < {stop} <= {space.depth}")
    acc = space.matrices[start]
    for n in range(start + 1, stop):
        acc = mat_mul(space.matrices[n], acc)
    return acc


@dataclass(frozen=True)
class HarmonicReport:
    residuals: Tuple[Tuple[object, ...], ...]  # per level, per coordinate
    ok: bool


def check_harmonic(space: DimensionSpace, mus: Sequence[Sequence]) -> HarmonicReport:
    """Residuals mu_{n+1} M_n(1) - mu_n; pass iff all are (or enclose) zero."""
    if len(mus) != space.depth + 1:
        raise DimensionMismatch("need one row vector per level")
    for n, mu in enumerate(mus):
        if len(mu) != space.dims[n]:
            raise DimensionMismatch(f"mu_{n} has length {len(mu)}, expected {space.dims[n]}")
    residuals = []
    ok = True
    for n, m in enumerate(space.matrices):
        ones = m.eval_at_one()
        nxt = mus[n + 1]
        row = []
        for j in range(m.cols):
            acc = Fraction(0)
            for i in range(m.rows):
                term = ones[i][j] * nxt[i] if isinstance(ones[i][j], RatInterval) else nxt[i] * ones[i][j]
                acc = acc + term if not isinstance(term, RatInterval) else term + acc
            res = acc - mus[n][j]
            row.append(res)
            if isinstance(res, RatInterval):
                ok = ok and res.contains(0)
            else:
                ok = ok and res == 0
        residuals.append(tuple(row))
    return HarmonicReport(residuals=tuple(residuals), ok=ok)


def state_eval(f: Sequence[LaurentPoly], mu: Sequence) -> object:
    """The bounded state: sum over coordinates of mu_i times the coefficient sum."""
    if len(f) != len(mu):
        raise DimensionMismatch(f"vector length {len(f)} != state length {len(mu)}")
    acc = Fraction(0)
    for fi, mi in zip(f, mu):
        val = fi.eval_at_one()
        term = val * mi if isinstance(val, RatInterval) else mi * val
        acc = acc + term if not isinstance(term, RatInterval) else term + acc
    return acc


def push_forward(space: DimensionSpace, f: Sequence[LaurentPoly], n: int, m: int) -> List[LaurentPoly]:
    """M_{m-1} ... M_n f, the level-m representative of [f, n]."""
    if not (0 <= n <= m <= space.depth):
        raise RangeError(f"need 0 <= {n} <= {m} <= {space.depth}")
    if len(f) != space.dims[n]:
        raise DimensionMismatch(f"vector length {len(f)} != k({n}) = {space.dims[n]}")
    vec = list(f)
    for lvl in range(n, m):
        vec = space.matrices[lvl].mul_vector(vec)
    return vec


def horizon_norm(space: DimensionSpace, f: Sequence[LaurentPoly], n: int, m: int) -> object:
    """One-norm of the pushed-forward vector at level m, all-ones weights.

    For vectors with nonnegative coefficients this is independent of m; in
    general it is nonincreasing in m, so the value at any finite horizon is
    an upper bound certificate for the limit norm.
    """
    vec = push_forward(space, f, n, m)
    return weighted_one_norm(vec, [Fraction(1)] * len(vec))


def stochastic_report(space: DimensionSpace) -> dict:
    """Column sums of every M_n at x = 1, plus positivity of stored coefficients."""
    sums, positive = [], True
    for m in space.matrices:
        sums.append(m.column_sums_at_one())
        for row in m.entries:
            for entry in row:
                for _, c in entry.items():
                    if isinstance(c, RatInterval):
                        positive = positive and c.lo > 0
                    else:
                        positive = positive and c > 0
    ok = True
    for row in sums:
        for s in row:
            if isinstance(s, RatInterval):
                ok = ok and s.contains(1)
            else:
                ok = ok and s == 1
    return {"column_sums": sums, "stochastic": ok, "entries_positive": positive}
