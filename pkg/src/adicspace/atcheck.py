"""Circulant matrix products and nonnegative rank-one l1 approximation.

The circulant family has M_n = (1/2)(I + x^(2^n) P) with P the k-cycle.
Because every factor is circulant, a product is determined by its class
vector (a_0, ..., a_{k-1}) with entry (r, c) = a_{(r-c) mod k}; the product
over the block index set {8Mj, ..., 8Mj+4M : j < N} collects one monomial
per subset of the block digits, and the digit count mod k selects the
class.  All of this is exact; sizes beyond the monomial budget are
rejected, never approximated.

The explicit k = 4 rank-one candidate pairs a column (phi_0..phi_3) whose
monomials carry one optional digit at the bottom of each block with a row
(g_0, g_3, g_2, g_1) whose monomials are products of per-block basic
monomials: either the full lower half-block (weight 2^{-3M}) or an
arbitrary pattern avoiding the block's bottom digit (weight 1 - 2^{-7M}),
all scaled by 2^{N+2} / 2^{(4M+1)N}.  A generic alternating
weighted-median descent provides a baseline candidate for comparison.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .errors import BadInput, BudgetExceeded, DimensionMismatch
from .laurent import LaurentMatrix, LaurentPoly

DEFAULT_BUDGET = 1 << 20


@dataclass(frozen=True)
class RankOneCandidate:
    column: Tuple[LaurentPoly, ...]
    row: Tuple[LaurentPoly, ...]


def _check_budget(k: int, M: int, N: int, budget: int):
    monomials = 1 << ((4 * M + 1) * N)
    if k * monomials > budget:
        raise BudgetExceeded(
            f"k * 2^((4M+1)N) = {k * monomials} exceeds the budget {budget}"
        )


def block_indices(M: int, N: int) -> List[int]:
    """The exponent indices {8Mj, ..., 8Mj + 4M} over the N blocks."""
    out = []
    for j in range(N):
        out.extend(range(8 * M * j, 8 * M * j + 4 * M + 1))
    return out


def circulant_classes(k: int, M: int, N: int, budget: int = DEFAULT_BUDGET) -> List[LaurentPoly]:
    """Class vector of the product over the block index set, exact."""
    if k < 1:
        raise BadInput("k must be >= 1")
    _check_budget(k, M, N, budget)
    half = Fraction(1, 2)
    classes = [LaurentPoly.one()] + [LaurentPoly.zero()] * (k - 1)
    for i in block_indices(M, N):
        shift = 1 << i
        classes = [
            (classes[p] + classes[(p - 1) % k].shift(shift)).scale(half)
            for p in range(k)
        ]
    return classes


def circulant_product(k: int, M: int, N: int, budget: int = DEFAULT_BUDGET) -> LaurentMatrix:
    """The full k x k product matrix; entry (r, c) is class (r - c) mod k."""
    classes = circulant_classes(k, M, N, budget)
    if k == 1:
        return LaurentMatrix([[classes[0]]])
    return LaurentMatrix([[classes[(r - c) % k] for c in range(k)] for r in range(k)])


def phi_polys(M: int, N: int) -> List[LaurentPoly]:
    """The four column polynomials: one optional bottom digit per block."""
    coeff = Fraction(1, 2 ** N)
    terms = [dict() for _ in range(4)]
    for bits in itertools.product((0, 1), repeat=N):
        exp = sum(a << (8 * M * j) for j, a in enumerate(bits))
        cls = sum(bits) % 4
        terms[cls][exp] = terms[cls].get(exp, Fraction(0)) + coeff
    return [LaurentPoly(t) for t in terms]


def f_polys(M: int, N: int, budget: int = DEFAULT_BUDGET) -> List[LaurentPoly]:
    """The four unnormalized row polynomials from the basic-monomial sums."""
    _check_budget(4, M, N, budget)
    full_low = sum(1 << i for i in range(4 * M))  # digits 0 .. 4M-1 of a block
    half_cubed = Fraction(1, 2 ** (3 * M))
    near_one = 1 - Fraction(1, 2 ** (7 * M))
    # Per-block choices: (digit count, exponent within block, uses form-full)
    choices = [(4 * M, full_low, True)]
    for pattern in range(1 << (4 * M)):
        exp = pattern << 1  # digits 1 .. 4M only: the bottom digit stays clear
        choices.append((bin(pattern).count("1"), exp, False))
    scale = Fraction(2 ** (N + 2))
    terms = [dict() for _ in range(4)]
    for combo in itertools.product(range(len(choices)), repeat=N):
        exp, count, fulls = 0, 0, 0
        for j, c in enumerate(combo):
            dc, block_exp, is_full = choices[c]
            exp += block_exp << (8 * M * j)
            count += dc
            fulls += is_full
        coeff = scale * half_cubed ** fulls * near_one ** (N - fulls)
        cls = count % 4
        terms[cls][exp] = terms[cls].get(exp, Fraction(0)) + coeff
    return [LaurentPoly(t) for t in terms]


def g_polys(M: int, N: int, budget: int = DEFAULT_BUDGET) -> List[LaurentPoly]:
    norm = Fraction(1, 2 ** ((4 * M + 1) * N))
    return [f.scale(norm) for f in f_polys(M, N, budget)]


def explicit_rank_one(M: int, N: int, budget: int = DEFAULT_BUDGET):
    """The explicit k = 4 construction: (phi columns, g rows)."""
    return phi_polys(M, N), g_polys(M, N, budget)


def explicit_candidate(M: int, N: int, budget: int = DEFAULT_BUDGET) -> RankOneCandidate:
    phis, gs = explicit_rank_one(M, N, budget)
    return RankOneCandidate(column=tuple(phis), row=(gs[0], gs[3], gs[2], gs[1]))


def approximation_error(a: LaurentMatrix, cand: RankOneCandidate) -> Fraction:
    """Entrywise l1 distance between the matrix and the column-row product."""
    if a.rows != len(cand.column) or a.cols != len(cand.row):
        raise DimensionMismatch("candidate shape does not match the matrix")
    total = Fraction(0)
    for i in range(a.rows):
        for j in range(a.cols):
            total += (a.entries[i][j] - cand.column[i] * cand.row[j]).one_norm()
    return total


# -- alternating weighted-median descent ---------------------------------------


def _weighted_median(points: List[Tuple[Fraction, Fraction]]) -> Fraction:
    """Lower weighted median: the l1 minimizer of sum w |v - x|."""
    points.sort(key=lambda vw: vw[0])
    total = sum(w for _, w in points)
    acc = Fraction(0)
    for v, w in points:
        acc += w
        if 2 * acc >= total:
            return v
    return points[-1][0]


def _optimize_vector(targets, partners, vector):
    """One in-place pass over the coefficients of each entry of ``vector``.

    targets[i][j] is the polynomial the product vector[i] * partners[j] is
    meant to match.  Every coefficient is set to the nonnegative weighted
    median of its compatible residual ratios; each step is the exact 1-D
    l1 minimizer, so the global objective never increases.
    """
    k = len(vector)
    for i in range(k):
        support = set(vector[i].support())
        for j, r in enumerate(partners):
            for s in targets[i][j].support():
                for tau in r.support():
                    support.add(s - tau)
        for t in sorted(support):
            base = vector[i] + LaurentPoly.monomial(-vector[i].coeff(t), t)
            points = []
            for j, r in enumerate(partners):
                if r.is_zero():
                    continue
                res = targets[i][j] - base * r
                for tau, w in r.items():
                    points.append((res.coeff(t + tau) / w, abs(w)))
            if not points:
                continue
            gamma = max(Fraction(0), _weighted_median(points))
            vector[i] = base + LaurentPoly.monomial(gamma, t)
    return vector


def greedy_rank_one(a: LaurentMatrix, iters: int) -> RankOneCandidate:
    """Alternating coordinatewise descent for a nonnegative rank-one fit.

    Initialization: the row entries are the column-sum polynomials of the
    matrix scaled to unit coefficient mass, the column entries are the
    constant 1.  Each iteration sweeps all column coefficients, then all
    row coefficients; the approximation error is nonincreasing and the
    result is deterministic.
    """
    if iters < 1:
        raise BadInput("iters must be >= 1")
    k = a.rows
    if a.cols != k:
        raise DimensionMismatch("greedy fit expects a square matrix")
    row = []
    for j in range(k):
        colsum = LaurentPoly.zero()
        for i in range(k):
            colsum = colsum + a.entries[i][j]
        mass = colsum.one_norm()
        row.append(colsum.scale(1 / mass) if mass else LaurentPoly.zero())
    col = [LaurentPoly.one() for _ in range(k)]
    col_targets = [[a.entries[i][j] for j in range(k)] for i in range(k)]
    row_targets = [[a.entries[i][j] for i in range(k)] for j in range(k)]
    for _ in range(iters):
        col = _optimize_vector(col_targets, row, col)
        row = _optimize_vector(row_targets, col, row)
    return RankOneCandidate(column=tuple(col), row=tuple(row))
