"""Named algebras: M_0, positive Witt algebra, Witt subalgebras, random tables.

Witt constants are not hard-coded.  They are read off by realizing ``a`` and
``e_1`` as polynomial vector fields ``p(x) d/dx``, generating ``e_{i+1} = [a, e_i]``
and decomposing ``[e_j, e_{j+1}]`` in that basis.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .algebra import DomainError, Element, ParamTable
from .automorphism import MetabelianSeq

__all__ = [
    "VectorField", "f", "witt_rule", "FieldRealization",
    "m0", "witt_positive", "witt_subalgebra", "random_metabelian", "random_table",
]


class VectorField:
    """``sum_p coeffs[p] * x^p d/dx`` with exact coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {p: Fraction(c) for p, c in sorted((coeffs or {}).items()) if c}

    def __eq__(self, other):
        return isinstance(other, VectorField) and self.coeffs == other.coeffs

    def __add__(self, other):
        out = dict(self.coeffs)
        for p, c in other.coeffs.items():
            out[p] = out.get(p, 0) + c
        return VectorField(out)

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, k):
        return VectorField({p: c * k for p, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.coeffs)

    def low(self):
        return next(iter(self.coeffs), None)

    def bracket(self, other):
        # [P d, Q d] = (P Q' - Q P') d
        out = {}
        for p, c in self.coeffs.items():
            for q, d in other.coeffs.items():
                out[p + q - 1] = out.get(p + q - 1, 0) + c * d * (q - p)
        return VectorField(out)

    def __repr__(self):
        return f"VectorField({self.coeffs!r})"


def f(i):
    """The Witt generator ``x^{i+1} d/dx``."""
    return VectorField({i + 1: 1})


def witt_rule(i, j):
    """``[f_i, f_j] = (j - i) f_{i+j}`` as ``(coefficient, index)``."""
    return j - i, i + j


class FieldRealization:
    """A filiform basis ``a, e_1, e_2, ...`` realized inside polynomial vector fields."""

    def __init__(self, a, e1, trunc):
        self.a = a
        self.trunc = trunc
        fields = [None, e1]
        # one extra generator marks where degree N+1 starts
        for _ in range(trunc):
            fields.append(a.bracket(fields[-1]))
        self.e = fields
        lows = [v.low() for v in fields[1:]]
        if any(lo is None for lo in lows) or lows != sorted(set(lows)):
            raise DomainError("realization is not filiform: e_i must have increasing order")
        self._cutoff = fields[trunc + 1].low()

    def decompose(self, field):
        """Express ``field`` as an Element in the e-basis, modulo ``e_{>N}``."""
        rest = VectorField(field.coeffs)
        out = {}
        by_low = {self.e[i].low(): i for i in range(1, self.trunc + 1)}
        while rest and rest.low() < self._cutoff:
            p = rest.low()
            i = by_low.get(p)
            if i is None:
                raise DomainError(f"x^{p} d/dx is outside the span of e_1..e_{self.trunc}")
            c = rest.coeffs[p] / self.e[i].coeffs[p]
            out[i] = c
            rest = rest - self.e[i] * c
        return Element(self.trunc, 0, out)

    def bracket(self, k, m):
        return self.decompose(self.e[k].bracket(self.e[m]))

    def table(self):
        entries = {}
        for j in range(1, self.trunc + 1):
            if 2 * j + 2 > self.trunc:
                break
            el = self.bracket(j, j + 1)
            for i, c in el.coeffs_e.items():
                s = i - 2 * j - 1
                if s < 1:
                    raise DomainError(f"[e_{j}, e_{j+1}] has a component on e_{i}")
                entries[(j, s)] = c
        return ParamTable(entries)


def m0(trunc=None):
    """The naturally graded algebra: every e-bracket vanishes."""
    return ParamTable()


def witt_positive(trunc):
    """Filiform table of the Witt subalgebra spanned by ``x^{i+1} d/dx``, ``i >= 1``.

    Basis ``a = f_1``, ``e_1 = f_2``; only column ``s = 1`` is populated.
    """
    return FieldRealization(f(1), f(2), trunc).table()


def witt_subalgebra(k, trunc):
    """Table for the subalgebra generated by ``x^2 d/dx`` and ``x^{i+1} d/dx``, ``i >= k``."""
    if k < 2:
        raise DomainError(f"k must be >= 2, got {k}")
    return FieldRealization(f(1), f(k), trunc).table()


def _random_rational(rng, bound):
    num = 0
    while num == 0:
        num = rng.randint(-bound, bound)
    return Fraction(num, rng.randint(1, bound))


def random_metabelian(seed, support, bound):
    """Deterministic nonzero rationals with |num|, den <= bound on ``support``."""
    rng = random.Random(seed)
    return MetabelianSeq({s: _random_rational(rng, bound) for s in sorted(support)})


def random_table(seed, trunc, bound=3, density=0.3):
    """Random finite table, entries only where they are visible at ``trunc``."""
    rng = random.Random(seed)
    entries = {}
    for j in range(1, trunc + 1):
        for s in range(1, trunc + 1):
            if 2 * j + 1 + s > trunc:
                break
            if rng.random() < density:
                entries[(j, s)] = _random_rational(rng, bound)
    return ParamTable(entries)
