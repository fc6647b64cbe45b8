from fractions import Fraction
from itertools import combinations
from math import comb

import pytest

from adicspace import atcheck as AT
from adicspace.errors import BadInput, BudgetExceeded, DimensionMismatch
from adicspace.laurent import LaurentMatrix, LaurentPoly


def g_norm_counting_oracle(M, N):
    """Sum of |coefficients| of g_0+..+g_3 by block-type counting alone.

    Terms with S full lower half-blocks number C(N, S) 2^{4M(N-S)}, each
    with weight 2^{N+2} 2^{-3MS} (1 - 2^{-7M})^{N-S}; no two terms share an
    exponent, so the counted total equals the expanded coefficient mass.
    """
    eps = Fraction(1, 2 ** (7 * M))
    total = Fraction(0)
    for s in range(N + 1):
        total += (comb(N, s) * 2 ** (4 * M * (N - s))
                  * 2 ** (N + 2) * Fraction(1, 2 ** (3 * M * s)) * (1 - eps) ** (N - s))
    return total / 2 ** ((4 * M + 1) * N)


def test_circulant_product_k1_is_dyadic_telescoping():
    a = AT.circulant_product(1, 1, 1)
    assert a.entries[0][0] == LaurentPoly({e: Fraction(1, 32) for e in range(32)})


def test_circulant_product_small_golden():
    a = AT.circulant_product(4, 1, 1)
    # class 0 collects subset sizes 0 and 4 of the five indices {0..4}
    a0 = a.entries[0][0]
    assert a0.num_terms() == comb(5, 0) + comb(5, 4)
    expected = {0: Fraction(1, 32)}
    for subset in combinations((1, 2, 4, 8, 16), 4):
        expected[sum(subset)] = Fraction(1, 32)
    assert a0 == LaurentPoly(expected)


def test_circulant_product_columns_stochastic():
    for k in (2, 3, 4):
        a = AT.circulant_product(k, 1, 1)
        assert a.column_sums_at_one() == [Fraction(1)] * k


def test_circulant_residue_class_support():
    for k in (3, 4):
        a = AT.circulant_product(k, 1, 1)
        for r in range(k):
            for c in range(k):
                for e, _ in a.entries[r][c].items():
                    assert bin(e).count("1") % k == (r - c) % k


def test_budget_gate():
    with pytest.raises(BudgetExceeded):
        AT.circulant_product(4, 2, 2, budget=1 << 19)
    with pytest.raises(BudgetExceeded):
        AT.f_polys(3, 2, budget=1 << 20)
    AT.circulant_product(4, 2, 2, budget=1 << 20)  # exactly at the cap


def test_phi_structure():
    phis = AT.phi_polys(1, 2)
    assert [p.one_norm() for p in phis] == [Fraction(1, 4), Fraction(1, 2),
                                            Fraction(1, 4), Fraction(0)]
    assert phis[1] == LaurentPoly({1: Fraction(1, 4), 256: Fraction(1, 4)})
    assert all(p.is_nonnegative() for p in phis)


def test_g_norm_expansion_matches_counting_oracle():
    for M, N in ((1, 1), (2, 1), (1, 2)):
        gs = AT.g_polys(M, N)
        gsum = gs[0] + gs[1] + gs[2] + gs[3]
        assert all(g.is_nonnegative() for g in gs)
        assert gsum.one_norm() == g_norm_counting_oracle(M, N) == 4


def test_cross_class_products_land_in_their_class():
    phis, gs = AT.explicit_rank_one(1, 1)
    for i, phi in enumerate(phis):
        for j, g in enumerate(gs):
            for e, _ in (phi * g).items():
                assert bin(e).count("1") % 4 == (i + j) % 4


def test_regrouping_identity():
    # with per-class supports disjoint, the per-entry error sum collapses
    for M, N in ((1, 1), (1, 2)):
        a = AT.circulant_product(4, M, N)
        phis, gs = AT.explicit_rank_one(M, N)
        cand = AT.explicit_candidate(M, N)
        total = AT.approximation_error(a, cand)
        gsum = gs[0] + gs[1] + gs[2] + gs[3]
        asum = LaurentPoly.zero()
        for r in range(4):
            asum = asum + a.entries[r][0]
        regrouped = sum(((phi * gsum) - asum).one_norm() for phi in phis)
        assert total == regrouped


def test_explicit_errors_frozen():
    values = {(1, 1): Fraction(95, 16), (2, 1): Fraction(12287, 2048),
              (1, 2): Fraction(24067, 4096)}
    for (M, N), expected in values.items():
        a = AT.circulant_product(4, M, N)
        assert AT.approximation_error(a, AT.explicit_candidate(M, N)) == expected


def test_phi_mass_quarter_deviation_sharp_bound():
    # the masses are binomial residue-class sums: their worst gap from 1/4
    # is at most 1/(2 sqrt(2)^N), with equality direction checked squared
    for M, N in ((1, 1), (2, 1), (1, 2), (1, 3)):
        masses = [p.one_norm() for p in AT.phi_polys(M, N)]
        assert sum(masses) == 1
        worst = max(abs(m - Fraction(1, 4)) for m in masses)
        assert 4 * worst ** 2 <= Fraction(1, 2 ** N)


def test_approximation_error_trivials():
    p = LaurentPoly({0: Fraction(1, 2), 3: Fraction(1, 2)})
    rank_one = LaurentMatrix([[p]])
    cand = AT.RankOneCandidate(column=(p,), row=(LaurentPoly.one(),))
    assert AT.approximation_error(rank_one, cand) == 0
    a = AT.circulant_product(4, 1, 1)
    zero = AT.RankOneCandidate(column=(LaurentPoly.zero(),) * 4,
                               row=(LaurentPoly.zero(),) * 4)
    assert AT.approximation_error(a, zero) == 4
    with pytest.raises(DimensionMismatch):
        AT.approximation_error(a, cand)


def test_greedy_recovers_rank_one_scalar():
    p = LaurentPoly({e: Fraction(1, 8) for e in range(8)})
    a = LaurentMatrix([[p]])
    cand = AT.greedy_rank_one(a, 1)
    assert AT.approximation_error(a, cand) == 0


def test_greedy_error_nonincreasing_and_beats_explicit():
    a = AT.circulant_product(4, 1, 1)
    errors = [AT.approximation_error(a, AT.greedy_rank_one(a, it)) for it in (1, 2, 3)]
    assert errors[0] >= errors[1] >= errors[2]
    explicit_err = AT.approximation_error(a, AT.explicit_candidate(1, 1))
    assert errors[-1] <= explicit_err
    cand = AT.greedy_rank_one(a, 2)
    assert all(c.is_nonnegative() for c in cand.column)
    assert all(r.is_nonnegative() for r in cand.row)


def test_greedy_rejects_zero_iters():
    a = AT.circulant_product(2, 1, 1)
    with pytest.raises(BadInput):
        AT.greedy_rank_one(a, 0)
