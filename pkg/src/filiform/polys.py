"""Sparse polynomials of degree at most two in the table variables x_{js}.

These are the coefficient ring for symbolic Jacobi evaluation: every
structure constant is a single variable, so a bracket of brackets is
quadratic at most.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = ["QuadPoly"]


class QuadPoly:
    """Immutable sparse polynomial; monomials are sorted tuples of variables.

    A variable is any orderable hashable key, here the pair ``(j, s)``.
    ``()`` is the constant monomial.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        for mono, coeff in (terms or {}).items():
            mono = tuple(sorted(mono))
            if len(mono) > 2:
                raise ValueError(f"monomial {mono} has degree > 2")
            coeff = Fraction(coeff)
            if coeff:
                clean[mono] = clean.get(mono, 0) + coeff
        self._terms = {m: c for m, c in sorted(clean.items()) if c}
        self._hash = None

    @classmethod
    def var(cls, key):
        return cls({(key,): 1})

    @classmethod
    def const(cls, value):
        return cls({(): value})

    @property
    def terms(self):
        return dict(self._terms)

    def degree(self):
        return max((len(m) for m in self._terms), default=-1)

    def variables(self):
        return sorted({v for m in self._terms for v in m})

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, QuadPoly):
            return self._terms == other._terms
        if isinstance(other, Rational):
            return self._terms == QuadPoly.const(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def _coerce(self, other):
        if isinstance(other, QuadPoly):
            return other
        if isinstance(other, Rational):
            return QuadPoly.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return QuadPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return QuadPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Rational):
            return QuadPoly({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, QuadPoly):
            return NotImplemented
        out = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = tuple(sorted(m1 + m2))
                out[mono] = out.get(mono, 0) + c1 * c2
        return QuadPoly(out)

    __rmul__ = __mul__

    def evaluate(self, values):
        """Substitute ``values[key]`` (missing keys read as 0)."""
        total = Fraction(0)
        for mono, c in self._terms.items():
            term = c
            for v in mono:
                term *= values.get(v, 0)
                if not term:
                    break
            total += term
        return total

    def substitute_zero(self, predicate):
        """Drop every monomial containing a variable for which ``predicate`` holds."""
        return QuadPoly({m: c for m, c in self._terms.items()
                         if not any(predicate(v) for v in m)})

    def monic(self):
        """Scale so the first coefficient in monomial order is 1."""
        if not self._terms:
            return self
        lead = next(iter(self._terms.values()))
        return self * (1 / lead)

    def sort_key(self):
        return tuple(self._terms.items())

    def __repr__(self):
        return f"QuadPoly({self._terms!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for mono, c in self._terms.items():
            names = "*".join(f"x{j}_{s}" for j, s in mono)
            mag = abs(c)
            if not names:
                body = str(mag)
            elif mag == 1:
                body = names
            else:
                body = f"{mag}*{names}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("- " if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out
