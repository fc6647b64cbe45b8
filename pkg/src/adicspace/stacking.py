"""Cutting-and-stacking towers and the skyscraper over the product odometer.

Stage 1 cuts [0, 1) into a(1) equal intervals and stacks them in order.
Stage n -> n+1 cuts the column into a(n+1) sub-columns of equal width,
appends q(n-2) spacer intervals on top of each sub-column (q(-1) = 0, so
stage 2 adds none), and restacks the sub-columns left to right.  Heights
follow q(n+1) = a(n+1) q(n) + q(n-1): each sub-column reaches q(n) levels
and the new stack has a(n+1) q(n).

Spacers are freshly allocated mass: the space starts as [0, 1) and grows to
[0, L_n), L_n = q(n-1) / (a(1) ... a(n-1)), every endpoint an exact
rational.  The limit L_infinity is finite exactly when the partial
quotients satisfy the summability condition; a declared growth rule yields
a certified enclosure for it.  No rescaling is applied to the stored
endpoints, so the stage maps stay exact translations; comparisons against
the rotation angle fold translations mod 1.

The skyscraper has base the product odometer on prod {1..a(n)} and height
function h(x) = cocycle increment of the odometer under the slot labeling
b(k at slot n) = (k-1) q(n-1); on the cylinder where the first n-1 digits
are maximal and digit n is not, h = 1 + q(0) + ... + q(n-3).  The tower's
accumulated spacers realize exactly these column heights, which is what the
itinerary mirror test below checks.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import (BadInput, InsufficientDepth, PointOutsideTower, TopLevel,
                     TruncationBoundary)
from .intervals import RatInterval
from .rotation import CFExpansion, GrowthRule, summability_report

Word = Tuple[int, ...]


@dataclass(frozen=True)
class Tower:
    """A stack of disjoint equal-width intervals with exact endpoints.

    ``labels[i]`` is the depth-``stage`` digit word of the cylinder that
    level i carves, or None for a spacer level.
    """

    stage: int
    intervals: Tuple[Tuple[Fraction, Fraction], ...]
    labels: Tuple[Optional[Word], ...]
    width: Fraction
    total_space: Fraction  # the space is [0, total_space)

    @property
    def height(self) -> int:
        return len(self.intervals)


def build_tower(cf: CFExpansion, stage: int) -> Tower:
    if stage < 1:
        raise BadInput("stage must be >= 1")
    if stage > cf.depth:
        raise InsufficientDepth(f"stage {stage} needs {stage} partial quotients")
    width = Fraction(1, cf.a(1))
    intervals = [(k * width, (k + 1) * width) for k in range(cf.a(1))]
    labels: List[Optional[Word]] = [(k + 1,) for k in range(cf.a(1))]
    next_free = Fraction(1)
    for n in range(1, stage):
        cuts = cf.a(n + 1)
        new_width = width / cuts
        spacers = cf.q(n - 2)
        new_intervals, new_labels = [], []
        for k in range(cuts):
            for (lo, _hi), word in zip(intervals, labels):
                new_intervals.append((lo + k * new_width, lo + (k + 1) * new_width))
                new_labels.append(word + (k + 1,) if word is not None else None)
            for _ in range(spacers):
                new_intervals.append((next_free, next_free + new_width))
                new_labels.append(None)
                next_free += new_width
        intervals, labels, width = new_intervals, new_labels, new_width
    return Tower(stage=stage, intervals=tuple(intervals), labels=tuple(labels),
                 width=width, total_space=next_free)


def level_translations(t: Tower) -> List[Fraction]:
    """Translation moving level i onto level i+1, for i < height - 1."""
    return [t.intervals[i + 1][0] - t.intervals[i][0] for i in range(t.height - 1)]


def locate(t: Tower, x: Fraction) -> int:
    """Index of the level containing x, or PointOutsideTower."""
    for i, (lo, hi) in enumerate(t.intervals):
        if lo <= x < hi:
            return i
    raise PointOutsideTower(f"{x} is not inside any level")


def tower_map(t: Tower, x: Fraction) -> Fraction:
    """The stage map: translate x one level up; TopLevel on the last level."""
    x = Fraction(x)
    i = locate(t, x)
    if i == t.height - 1:
        raise TopLevel(f"{x} lies on the top level")
    return x + (t.intervals[i + 1][0] - t.intervals[i][0])


def limit_space_enclosure(cf: CFExpansion, rule: GrowthRule) -> RatInterval:
    """Certified enclosure of L_infinity = lim q(n-1)/(a(1)...a(n-1)).

    Uses L_N <= L_inf and the subset-sum domination
    prod (1 + x_i) <= 1/(1 - sum x_i) for sum x_i < 1 on the tail factors
    x_m = 1/(a(m) a(m+1)).
    """
    report = summability_report(cf, rule)
    if report.verdict != "CONVERGENT_CERTIFIED":
        raise BadInput("limit space needs a certified growth rule")
    d = cf.depth
    prod = Fraction(1)
    for n in range(1, d):
        prod *= cf.a(n)
    l_lo = Fraction(cf.q(d - 1), prod)
    tail = rule.tail_bound(d - 1)
    if tail >= 1:
        raise InsufficientDepth("tail bound too large to enclose the limit space")
    return RatInterval(l_lo, l_lo / (1 - tail))


# -- the skyscraper over the product odometer ----------------------------------


@dataclass(frozen=True)
class SkyscraperPoint:
    word: Word   # digits x_n in {1..a(n)}, one per available partial quotient
    height: int  # 0 <= height < column_height(word)


def check_word(cf: CFExpansion, word: Word):
    if len(word) != cf.depth:
        raise BadInput(f"word length {len(word)} != cf depth {cf.depth}")
    for n, digit in enumerate(word, start=1):
        if not (1 <= digit <= cf.a(n)):
            raise BadInput(f"digit {digit} outside 1..{cf.a(n)} at slot {n}")


def odometer_step(cf: CFExpansion, word: Word) -> Word:
    """Add one with carry on prod {1..a(n)}; TruncationBoundary past the end."""
    check_word(cf, word)
    digits = list(word)
    for n in range(len(digits)):
        if digits[n] < cf.a(n + 1):
            digits[n] += 1
            return tuple(digits)
        digits[n] = 1
    raise TruncationBoundary("odometer increment past the all-maximal word")


def slot_label(cf: CFExpansion, slot: int, digit: int) -> int:
    """The integer label (digit - 1) q(slot - 1) of a digit value at a slot."""
    return (digit - 1) * cf.q(slot - 1)


def column_height(cf: CFExpansion, word: Word) -> int:
    """Cocycle increment of the odometer at this word.

    Equals 1 + q(0) + ... + q(m-3) where m is the first slot whose digit is
    below its maximum; the all-maximal word takes the m = depth value (its
    true height depends on digits beyond the truncation).
    """
    check_word(cf, word)
    m = len(word)
    for n, digit in enumerate(word, start=1):
        if digit < cf.a(n):
            m = n
            break
    return 1 + sum(cf.q(t) for t in range(m - 2))


def skyscraper_step(cf: CFExpansion, p: SkyscraperPoint) -> SkyscraperPoint:
    """Go up the column, or apply the odometer at the top."""
    h = column_height(cf, p.word)
    if not (0 <= p.height < h):
        raise BadInput(f"height {p.height} outside 0..{h - 1}")
    if p.height + 1 < h:
        return SkyscraperPoint(p.word, p.height + 1)
    return SkyscraperPoint(odometer_step(cf, p.word), 0)


def skyscraper_orbit_codes(cf: CFExpansion, stage: int) -> List[Optional[Word]]:
    """Codes of the full orbit from ((1,..,1), 0) through the stage-sized base.

    Words are truncated to ``stage`` digits; heights above ground code as
    None, mirroring the tower's spacer levels.
    """
    if stage > cf.depth:
        raise InsufficientDepth(f"stage {stage} needs {stage} partial quotients")
    sub = CFExpansion(cf.terms[:stage])
    codes: List[Optional[Word]] = []
    word: Optional[Word] = tuple([1] * stage)
    while word is not None:
        h = column_height(sub, word)
        codes.append(word)
        codes.extend([None] * (h - 1))
        try:
            word = odometer_step(sub, word)
        except TruncationBoundary:
            word = None
    return codes


# -- comparison against the rotation -------------------------------------------


def circle_distance(value: Fraction, alpha: RatInterval) -> RatInterval:
    """Enclosure of the circle distance min(|value - alpha|, 1 - |value - alpha|)."""
    d = abs(RatInterval.point(value % 1) - alpha)
    if d.hi <= Fraction(1, 2):
        return d
    if d.lo >= Fraction(1, 2):
        return RatInterval(1 - d.hi, 1 - d.lo)
    return RatInterval(min(d.lo, 1 - d.hi), Fraction(1, 2))


@dataclass(frozen=True)
class TranslationStat:
    value: Fraction          # translation mod 1
    level_count: int
    grid_mass: int
    distance: RatInterval    # circle distance to the angle enclosure


@dataclass(frozen=True)
class RotationComparison:
    stage: int
    grid: int
    counted: int             # grid points outside the top level
    tolerance: Fraction
    stats: Tuple[TranslationStat, ...]
    in_mass: int

    @property
    def out_fraction(self) -> Fraction:
        if self.counted == 0:
            return Fraction(0)
        return Fraction(self.counted - self.in_mass, self.counted)


def compare_with_rotation(t: Tower, cf: CFExpansion, grid: int,
                          tolerance: Fraction) -> RotationComparison:
    """Distribution of T(x) - x (mod 1) over an equispaced grid, against alpha.

    A grid point is in tolerance when the circle distance of its level's
    translation to the angle enclosure is certified <= tolerance; points on
    the top level are excluded from the denominator.
    """
    if grid < 1:
        raise BadInput("grid must be >= 1")
    alpha = cf.alpha()
    translations = level_translations(t)
    # Equispaced points over [0, total_space); map each to its level index.
    index = sorted((lo, hi, i) for i, (lo, hi) in enumerate(t.intervals))
    los = [lo for lo, _, _ in index]
    per_level = [0] * t.height
    step = t.total_space / grid
    for g in range(grid):
        x = g * step
        pos = bisect.bisect_right(los, x) - 1
        lo, hi, i = index[pos]
        if not (lo <= x < hi):
            raise PointOutsideTower(f"grid point {x} escaped the levels")
        per_level[i] += 1
    by_value = {}
    top = t.height - 1
    counted = sum(c for i, c in enumerate(per_level) if i != top)
    for i, delta in enumerate(translations):
        v = delta % 1
        mass, levels = by_value.get(v, (0, 0))
        by_value[v] = (mass + per_level[i], levels + 1)
    stats = []
    in_mass = 0
    for v in sorted(by_value):
        mass, levels = by_value[v]
        dist = circle_distance(v, alpha)
        if dist.hi <= tolerance:
            in_mass += mass
        stats.append(TranslationStat(value=v, level_count=levels, grid_mass=mass, distance=dist))
    return RotationComparison(stage=t.stage, grid=grid, counted=counted,
                              tolerance=Fraction(tolerance), stats=tuple(stats),
                              in_mass=in_mass)
