import random
from fractions import Fraction
from itertools import combinations

import pytest

from adicspace import bratteli as B
from adicspace import dimspace as D
from adicspace.errors import DimensionMismatch, RangeError
from adicspace.labeling import label_edges
from adicspace.laurent import LaurentMatrix, LaurentPoly
from conftest import random_diagram

HALF = Fraction(1, 2)


def space_for(d):
    return D.build_matrices(d, label_edges(d))


def odometer_closed(n):
    return LaurentMatrix([[LaurentPoly({0: HALF, 2 ** n: HALF})]])


def circulant_closed(k, n):
    rows = []
    for r in range(k):
        row = [LaurentPoly.zero()] * k
        row[r] = LaurentPoly({0: HALF})
        row[(r - 1) % k] = LaurentPoly({2 ** n: HALF})
        rows.append(row)
    return LaurentMatrix(rows)


def test_odometer_matrices_golden():
    sp = space_for(B.odometer_diagram(8))
    for n in range(8):
        assert sp.matrices[n] == odometer_closed(n)


def test_morse_matrices_golden():
    # the root fans out as a 2x1 column; from there the closed form holds
    sp = space_for(B.morse_diagram(8))
    assert sp.matrices[0] == LaurentMatrix([[LaurentPoly({0: HALF})],
                                            [LaurentPoly({0: HALF})]])
    for n in range(7):
        assert sp.matrices[n + 1] == circulant_closed(2, n)


def test_circulant_matrices_golden():
    for k in (3, 4, 5):
        sp = space_for(B.circulant_diagram(k, 6))
        for n in range(5):
            assert sp.matrices[n + 1] == circulant_closed(k, n)


def test_partial_product_telescopes_odometer():
    sp = space_for(B.odometer_diagram(12))
    for n in (3, 8, 12):
        prod = D.partial_product(sp, 0, n)
        assert prod.entries[0][0] == LaurentPoly(
            {j: Fraction(1, 2 ** n) for j in range(2 ** n)}
        )


def test_partial_product_single_factor_and_range_guard():
    sp = space_for(B.morse_diagram(4))
    assert D.partial_product(sp, 2, 3) == sp.matrices[2]
    with pytest.raises(RangeError):
        D.partial_product(sp, 3, 3)
    with pytest.raises(RangeError):
        D.partial_product(sp, 0, 9)


def test_circulant_partial_product_subset_oracle():
    # product of the first three closed-form factors for k = 4: each class
    # collects the subsets of {1, 2, 4} whose size is congruent to it mod 4
    k = 4
    prod = circulant_closed(k, 0)
    for n in (1, 2):
        from adicspace.laurent import mat_mul
        prod = mat_mul(circulant_closed(k, n), prod)
    classes = {p: {} for p in range(k)}
    for size in range(4):
        for subset in combinations((1, 2, 4), size):
            classes[size % k][sum(subset)] = Fraction(1, 8)
    for r in range(k):
        for c in range(k):
            assert prod.entries[r][c] == LaurentPoly(classes[(r - c) % k])


def test_generated_matrices_are_stochastic_and_positive():
    rng = random.Random(17)
    for _ in range(10):
        sp = space_for(random_diagram(rng, depth=4))
        rep = D.stochastic_report(sp)
        assert rep["stochastic"] and rep["entries_positive"]


def test_check_harmonic_all_ones_passes():
    for d in (B.odometer_diagram(5), B.morse_diagram(5), B.circulant_diagram(4, 5)):
        sp = space_for(d)
        mus = [[Fraction(1)] * sp.dims[n] for n in range(sp.depth + 1)]
        assert D.check_harmonic(sp, mus).ok


def test_check_harmonic_reports_residual_pattern():
    sp = space_for(B.morse_diagram(3))
    mus = [[Fraction(1)] * sp.dims[0]] + [[Fraction(1), Fraction(2)]] * 3
    rep = D.check_harmonic(sp, mus)
    assert not rep.ok
    # (1,2) * (1/2)J = (3/2, 3/2); residual against (1,2) is (+1/2, -1/2)
    assert rep.residuals[1] == (HALF, -HALF)


def test_state_eval_and_compatibility():
    sp = space_for(B.circulant_diagram(4, 5))
    ones = [Fraction(1)] * 4
    unit = [LaurentPoly.one()] + [LaurentPoly.zero()] * 3
    assert D.state_eval(unit, ones) == 1
    rng = random.Random(8)
    f = [LaurentPoly({rng.randint(-3, 3): Fraction(rng.randint(-5, 5), 3)})
         for _ in range(4)]
    pushed = sp.matrices[2].mul_vector(f)
    assert D.state_eval(pushed, ones) == D.state_eval(f, ones)
    with pytest.raises(DimensionMismatch):
        D.state_eval(unit[:2], ones)


def test_stochastic_column_state_is_one():
    sp = space_for(B.morse_diagram(4))
    m = sp.matrices[2]
    col = [m.entries[i][0] for i in range(m.rows)]
    assert D.state_eval(col, [Fraction(1)] * m.rows) == 1


def test_horizon_norm_telescoping_cancellation():
    sp = space_for(B.odometer_diagram(6))
    f = [LaurentPoly({0: Fraction(1), 1: Fraction(-1)})]
    assert D.horizon_norm(sp, f, 0, 3) == Fraction(1, 4)
    assert D.horizon_norm(sp, f, 0, 0) == 2


def test_horizon_norm_constant_for_nonnegative():
    sp = space_for(B.circulant_diagram(3, 6))
    f = [LaurentPoly({1: Fraction(2, 3)}), LaurentPoly({0: Fraction(1, 3)}),
         LaurentPoly.zero()]
    values = [D.horizon_norm(sp, f, 1, m) for m in range(1, 7)]
    assert all(v == values[0] for v in values)


def test_horizon_norm_nonincreasing():
    sp = space_for(B.morse_diagram(6))
    f = [LaurentPoly({0: Fraction(1)}), LaurentPoly({0: Fraction(-1)})]
    values = [D.horizon_norm(sp, f, 1, m) for m in range(1, 7)]
    assert all(a >= b for a, b in zip(values, values[1:]))
    rng = random.Random(31)
    for _ in range(5):
        d = random_diagram(rng, depth=5)
        sp = space_for(d)
        f = [LaurentPoly({rng.randint(-2, 2): Fraction(rng.randint(-4, 4))})
             for _ in range(sp.dims[0])]
        values = [D.horizon_norm(sp, f, 0, m) for m in range(sp.depth + 1)]
        assert all(a >= b for a, b in zip(values, values[1:]))


def test_check_harmonic_rotation_encloses_zero():
    from adicspace import rotation as R

    cf = R.CFExpansion([n + 1 for n in range(1, 11)])
    d, lab = R.rotation_diagram(cf, 5)
    sp = D.build_matrices(d, lab)
    mus = [[Fraction(1)] * sp.dims[n] for n in range(sp.depth + 1)]
    assert D.check_harmonic(sp, mus).ok
