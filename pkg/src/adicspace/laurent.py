"""Sparse Laurent polynomials over exact rationals, and matrices of them.

A polynomial is a finite map exponent -> coefficient.  Exponents are plain
Python ints (arbitrary precision; exponents like 2**(8*M*N) occur in the
circulant products).  Coefficients are ``Fraction`` in the default exact
mode, or :class:`adicspace.intervals.RatInterval` in certified-enclosure
mode; the two kinds mix freely inside one polynomial.

Canonical form: zero coefficients are never stored, so ``==`` on the term
maps is semantic equality.  Iteration and serialization are ordered by
exponent, making every derived report deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import DimensionMismatch
from .intervals import RatInterval, is_exact_zero, is_nonnegative

Coeff = Union[Fraction, int, RatInterval]


def _norm_coeff(c: Coeff):
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, (Fraction, RatInterval)):
        return c
    raise TypeError(f"unsupported coefficient {c!r}")


class LaurentPoly:
    """An element of the Laurent polynomial algebra over the rationals."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, Coeff] | None = None):
        clean = {}
        if terms:
            for exp, c in terms.items():
                c = _norm_coeff(c)
                if not is_exact_zero(c):
                    clean[int(exp)] = c
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly()

    @staticmethod
    def one() -> "LaurentPoly":
        return LaurentPoly({0: Fraction(1)})

    @staticmethod
    def monomial(coeff: Coeff, exp: int) -> "LaurentPoly":
        return LaurentPoly({exp: coeff})

    @staticmethod
    def x(exp: int = 1) -> "LaurentPoly":
        return LaurentPoly({exp: Fraction(1)})

    # -- inspection --------------------------------------------------------

    def items(self):
        """Terms as (exponent, coefficient) pairs, ascending exponent."""
        return sorted(self._terms.items())

    def coeff(self, exp: int):
        return self._terms.get(exp, Fraction(0))

    def support(self):
        return tuple(sorted(self._terms))

    def num_terms(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_nonnegative(self) -> bool:
        return all(is_nonnegative(c) for c in self._terms.values())

    def eval_at_one(self):
        """Sum of all coefficients (the image under x -> 1)."""
        total = Fraction(0)
        for c in self._terms.values():
            total = total + c if not isinstance(c, RatInterval) else c + total
        return total

    def one_norm(self):
        """Sum of absolute values of the coefficients."""
        total = Fraction(0)
        for c in self._terms.values():
            a = abs(c)
            total = total + a if not isinstance(a, RatInterval) else a + total
        return total

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        terms = dict(self._terms)
        for exp, c in other._terms.items():
            acc = terms.get(exp)
            if acc is None:
                terms[exp] = c
            else:
                s = acc + c
                if is_exact_zero(s):
                    del terms[exp]
                else:
                    terms[exp] = s
        out = LaurentPoly.__new__(LaurentPoly)
        object.__setattr__(out, "_terms", terms)
        return out

    def __neg__(self):
        out = LaurentPoly.__new__(LaurentPoly)
        object.__setattr__(out, "_terms", {e: -c for e, c in self._terms.items()})
        return out

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RatInterval)):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        terms: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                p = c1 * c2
                acc = terms.get(e)
                terms[e] = p if acc is None else acc + p
        for e in [e for e, c in terms.items() if is_exact_zero(c)]:
            del terms[e]
        out = LaurentPoly.__new__(LaurentPoly)
        object.__setattr__(out, "_terms", terms)
        return out

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, RatInterval)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c: Coeff) -> "LaurentPoly":
        c = _norm_coeff(c)
        if is_exact_zero(c):
            return LaurentPoly.zero()
        return LaurentPoly({e: c * v for e, v in self._terms.items()})

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by x**k."""
        out = LaurentPoly.__new__(LaurentPoly)
        object.__setattr__(out, "_terms", {e + k: c for e, c in self._terms.items()})
        return out

    # -- equality / display --------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(tuple(self.items()))

    def __repr__(self):
        if not self._terms:
            return "LaurentPoly(0)"
        bits = [f"({c})x^{e}" for e, c in self.items()]
        return "LaurentPoly(" + " + ".join(bits) + ")"

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        out = {}
        for e, c in self.items():
            if isinstance(c, RatInterval):
                out[str(e)] = [str(c.lo), str(c.hi)]
            else:
                out[str(e)] = str(c)
        return out

    @staticmethod
    def from_json(data: Mapping[str, object]) -> "LaurentPoly":
        terms = {}
        for e, c in data.items():
            if isinstance(c, list):
                terms[int(e)] = RatInterval(Fraction(c[0]), Fraction(c[1]))
            else:
                terms[int(e)] = Fraction(c)
        return LaurentPoly(terms)


def lp_arith(op: str, f: LaurentPoly, g) -> LaurentPoly:
    """Dispatch form of the ring operations: op in {"add", "mul", "scale"}."""
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "scale":
        return f.scale(g)
    raise ValueError(f"unknown op {op!r}")


class LaurentMatrix:
    """A rectangular matrix of Laurent polynomials; rows index the target."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence[LaurentPoly]]):
        rows = len(entries)
        if rows == 0:
            raise ValueError("matrix needs at least one row")
        cols = len(entries[0])
        if cols == 0 or any(len(r) != cols for r in entries):
            raise ValueError("ragged or empty matrix")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", tuple(tuple(r) for r in entries))

    def __setattr__(self, name, value):
        raise AttributeError("LaurentMatrix is immutable")

    @staticmethod
    def identity(k: int) -> "LaurentMatrix":
        one, zero = LaurentPoly.one(), LaurentPoly.zero()
        return LaurentMatrix([[one if i == j else zero for j in range(k)] for i in range(k)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        return mat_mul(self, other)

    def mul_vector(self, f: Sequence[LaurentPoly]) -> list:
        if len(f) != self.cols:
            raise DimensionMismatch(f"vector length {len(f)} != cols {self.cols}")
        out = []
        for i in range(self.rows):
            acc = LaurentPoly.zero()
            for j in range(self.cols):
                acc = acc + self.entries[i][j] * f[j]
            out.append(acc)
        return out

    def eval_at_one(self) -> list:
        return [[e.eval_at_one() for e in row] for row in self.entries]

    def column_sums_at_one(self) -> list:
        ones = self.eval_at_one()
        return [sum_coeffs(ones[i][j] for i in range(self.rows)) for j in range(self.cols)]

    def __eq__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __repr__(self):
        return f"LaurentMatrix({self.rows}x{self.cols})"

    def to_json(self) -> list:
        return [[e.to_json() for e in row] for row in self.entries]

    @staticmethod
    def from_json(data) -> "LaurentMatrix":
        return LaurentMatrix([[LaurentPoly.from_json(e) for e in row] for row in data])


def sum_coeffs(values: Iterable):
    total = Fraction(0)
    for v in values:
        total = total + v if not isinstance(v, RatInterval) else v + total
    return total


def mat_mul(mb: LaurentMatrix, ma: LaurentMatrix) -> LaurentMatrix:
    """Exact product mb @ ma; mb is applied after ma."""
    if mb.cols != ma.rows:
        raise DimensionMismatch(f"inner dimensions {mb.cols} != {ma.rows}")
    out = []
    for i in range(mb.rows):
        row = []
        for j in range(ma.cols):
            acc = LaurentPoly.zero()
            for t in range(mb.cols):
                acc = acc + mb.entries[i][t] * ma.entries[t][j]
            row.append(acc)
        out.append(row)
    return LaurentMatrix(out)


def weighted_one_norm(f: Sequence[LaurentPoly], w: Sequence) -> object:
    """Sum over coordinates of (weight * sum of |coefficients|)."""
    if len(f) != len(w):
        raise DimensionMismatch(f"vector length {len(f)} != weights length {len(w)}")
    total = Fraction(0)
    for fi, wi in zip(f, w):
        norm = fi.one_norm()
        term = norm * wi if isinstance(norm, RatInterval) else wi * norm
        total = total + term if not isinstance(term, RatInterval) else term + total
    return total
