"""The group-invariant matrix-valued random walk on Z attached to (M_n).

A state is (position m, vertex i, level n).  One step from vertex i reads
column i of M_n: each term c x^b of entry (j, i) moves the walker to
(m + b, j) with probability c.  Since only the displacement p - m enters,
the walk commutes with the Z-shift of the position coordinate.

The simulator draws from a counter-based generator: three chained rounds of
the SplitMix64 finalizer over (seed, trial, step).  Trajectories are thus
indexed by (seed, trial), independent, and reproducible in any order.
Sampling compares a uniform draw u/2^64 against exact cumulative
probabilities, so the per-step sampling bias is below 2^-64.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from .dimspace import DimensionSpace, partial_product
from .errors import BadInput, DepthExceeded, RangeError
from .intervals import RatInterval

_MASK = (1 << 64) - 1


def _mix64(z: int) -> int:
    z &= _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def _draw(seed: int, trial: int, step: int) -> int:
    """64-bit output of the (seed, trial, step) counter."""
    z = _mix64(seed ^ 0x9E3779B97F4A7C15)
    z = _mix64(z + trial)
    return _mix64(z + step)


@dataclass(frozen=True)
class WalkState:
    position: int
    vertex: int
    level: int


@dataclass(frozen=True)
class DisplacementHistogram:
    """Mass per (terminal vertex, displacement); exact or empirical."""

    kind: str  # "exact" | "empirical"
    masses: Dict[int, Dict[int, object]]
    trials: int = 0

    def normalized(self) -> Dict[int, Dict[int, Fraction]]:
        if self.kind == "exact":
            return self.masses
        return {
            j: {d: Fraction(c, self.trials) for d, c in row.items()}
            for j, row in self.masses.items()
        }

    def total_mass(self):
        total = Fraction(0)
        for row in self.masses.values():
            for c in row.values():
                total = total + c if not isinstance(c, RatInterval) else c + total
        return total


def step_distribution(space: DimensionSpace, s: WalkState) -> List[Tuple[WalkState, object]]:
    """All positive-probability successors of s, with their probabilities."""
    if s.level >= space.depth:
        raise DepthExceeded(f"level {s.level} >= depth {space.depth}")
    if not (0 <= s.vertex < space.dims[s.level]):
        raise BadInput(f"vertex {s.vertex} outside level {s.level}")
    m = space.matrices[s.level]
    out = []
    for j in range(m.rows):
        for exp, c in m.entries[j][s.vertex].items():
            out.append((WalkState(s.position + exp, j, s.level + 1), c))
    return out


def exact_distribution(space: DimensionSpace, n: int, start: WalkState) -> DisplacementHistogram:
    """Distribution after walking from level start.level to level n, exactly.

    The mass at (d, j) is the coefficient of x^(d - start.position) in entry
    (j, start.vertex) of the partial product of the traversed matrices.
    """
    if not (0 <= n <= space.depth):
        raise RangeError(f"level {n} outside 0..{space.depth}")
    if n < start.level:
        raise RangeError("target level before start level")
    if n == start.level:
        return DisplacementHistogram("exact", {start.vertex: {start.position: Fraction(1)}})
    prod = partial_product(space, start.level, n)
    masses: Dict[int, Dict[int, object]] = {}
    for j in range(prod.rows):
        entry = prod.entries[j][start.vertex]
        if entry.is_zero():
            continue
        masses[j] = {start.position + exp: c for exp, c in entry.items()}
    return DisplacementHistogram("exact", masses)


def simulate(space: DimensionSpace, n: int, trials: int, seed: int,
             start: WalkState | None = None) -> DisplacementHistogram:
    """Empirical histogram over `trials` independent trajectories.

    Requires exact rational probabilities (enclosure-mode spaces cannot be
    sampled without widening the verdicts).
    """
    if trials < 1:
        raise BadInput("trials must be >= 1")
    if not (0 <= n <= space.depth):
        raise RangeError(f"level {n} outside 0..{space.depth}")
    start = start or WalkState(0, 0, 0)
    if n < start.level:
        raise RangeError("target level before start level")
    # Per (level, vertex): outcome list [(displacement, vertex)] and exact
    # cumulative thresholds scaled to 2^64 for integer comparison.
    tables = {}
    for lvl in range(start.level, n):
        m = space.matrices[lvl]
        for v in range(m.cols):
            outcomes, cum, acc = [], [], Fraction(0)
            for j in range(m.rows):
                for exp, c in m.entries[j][v].items():
                    if isinstance(c, RatInterval):
                        raise BadInput("simulate needs exact rational probabilities")
                    outcomes.append((exp, j))
                    acc += c
                    cum.append(acc)
            tables[(lvl, v)] = (outcomes, cum)
    two64 = 1 << 64
    masses: Dict[int, Dict[int, int]] = {}
    for trial in range(trials):
        pos, vtx = start.position, start.vertex
        for step, lvl in enumerate(range(start.level, n)):
            u = Fraction(_draw(seed, trial, step), two64)
            outcomes, cum = tables[(lvl, vtx)]
            lo, hi = 0, len(cum) - 1
            while lo < hi:
                mid = (lo + hi) // 2
                if u < cum[mid]:
                    hi = mid
                else:
                    lo = mid + 1
            exp, vtx = outcomes[lo]
            pos += exp
        row = masses.setdefault(vtx, {})
        row[pos] = row.get(pos, 0) + 1
    return DisplacementHistogram("empirical", masses, trials=trials)


def tv_distance(a: DisplacementHistogram, b: DisplacementHistogram) -> Fraction:
    """Total variation distance between two histograms (after normalizing)."""
    pa, pb = a.normalized(), b.normalized()
    keys = set()
    for j, row in pa.items():
        keys.update((j, d) for d in row)
    for j, row in pb.items():
        keys.update((j, d) for d in row)
    total = Fraction(0)
    for j, d in keys:
        va = pa.get(j, {}).get(d, Fraction(0))
        vb = pb.get(j, {}).get(d, Fraction(0))
        if isinstance(va, RatInterval) or isinstance(vb, RatInterval):
            raise BadInput("tv_distance needs exact masses")
        total += abs(va - vb)
    return total / 2


def histogram_to_json(h: DisplacementHistogram) -> dict:
    rows = {}
    for j in sorted(h.masses):
        rows[str(j)] = {str(d): str(c) for d, c in sorted(h.masses[j].items())}
    out = {"kind": h.kind, "masses": rows}
    if h.kind == "empirical":
        out["trials"] = h.trials
    return out
