"""Normal forms and isomorphism testing for the metabelian family over C.

Normalization order: scale the first nonzero entry ``lambda_r`` to 1, shift
with ``nu(1, c, 1)`` to clear index ``2r``, then scale the next nonzero entry
``lambda_s`` to 1 with ``nu(c0, 0, c0^{r+1})``.  Answers are exact for indices up
to ``N - 3``; anything above that is unseen.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import gmpy2

from .algebra import DomainError, format_rational
from .automorphism import MetabelianSeq, horizon, nu, transform

__all__ = [
    "Zero", "Single", "General", "RootObstruction", "rational_root",
    "shift_normalize", "canonicalize", "iso_equivalent", "realize",
]


@dataclass(frozen=True)
class Zero:
    horizon: int | None = field(default=None, compare=False)

    def __str__(self):
        return "Zero"


@dataclass(frozen=True)
class Single:
    r: int
    horizon: int | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.r < 1:
            raise DomainError(f"Single needs r >= 1, got {self.r}")

    def __str__(self):
        return f"Single r={self.r}"


@dataclass(frozen=True)
class General:
    r: int
    s: int
    tail: tuple = ()
    horizon: int | None = field(default=None, compare=False)

    def __post_init__(self):
        tail = tuple(sorted((int(t), Fraction(v)) for t, v in dict(self.tail).items()))
        object.__setattr__(self, "tail", tail)
        if not 1 <= self.r < self.s or self.s == 2 * self.r:
            raise DomainError(f"General needs 1 <= r < s, s != 2r; got r={self.r}, s={self.s}")
        for t, v in tail:
            if t <= self.s or t == 2 * self.r or not v:
                raise DomainError(f"bad tail entry {t}: {v}")
        if _sign_twist(self.r, self.s, dict(tail)) != dict(tail):
            raise DomainError("tail breaks the sign convention; use its twin")

    def __str__(self):
        body = ", ".join(f"{t}: {format_rational(v)}" for t, v in self.tail)
        return f"General r={self.r} s={self.s} tail={{{body}}}"


@dataclass(frozen=True)
class RootObstruction:
    """Scaling ``lambda_s`` to 1 over Q needs a root of ``x^degree - radicand``."""

    degree: int
    radicand: Fraction

    def __post_init__(self):
        if self.degree < 2:
            raise DomainError("obstruction degree must be >= 2")
        if rational_root(self.radicand, self.degree) is not None:
            raise DomainError(f"{self.radicand} has a rational root of degree {self.degree}")

    def __str__(self):
        return f"RootObstruction degree={self.degree} radicand={format_rational(self.radicand)}"


def rational_root(q, g):
    """A rational ``x`` with ``x**g == q`` (the positive one for even g), or None."""
    q = Fraction(q)
    if q < 0 and g % 2 == 0:
        return None
    num, exact_n = gmpy2.iroot(abs(q.numerator), g)
    den, exact_d = gmpy2.iroot(q.denominator, g)
    if not (exact_n and exact_d):
        return None
    root = Fraction(int(num), int(den))
    return -root if q < 0 else root


def shift_normalize(seq, trunc):
    """Make the first nonzero entry 1 and clear index ``2t``."""
    h = horizon(trunc)
    seq = seq.truncate(h)
    t = seq.first()
    if t is None:
        raise DomainError("zero sequence has no shift normal form")
    out = transform(nu(1, 0, 1 / seq[t]), seq, trunc)
    if 2 * t <= h and out[2 * t]:
        out = transform(nu(1, out[2 * t] / (1 + t), 1), out, trunc)
    return out


def _sign_twist(r, s, tail):
    """Fix the sign ambiguity from ``c0 -> -c0``-type roots of unity.

    With ``G = gcd(t - r)`` over the support, the normal forms with rational
    entries are ``tail`` and ``t -> (-1)^((t-r)/G) tail_t`` when ``(s-r)/G`` is
    even.  Pick the one whose first entry with odd ``(t-r)/G`` is positive.
    """
    G = gcd(s - r, *(t - r for t in tail))
    if ((s - r) // G) % 2:
        return tail
    for t, v in tail.items():
        if ((t - r) // G) % 2:
            if v > 0:
                return tail
            return {u: (-w if ((u - r) // G) % 2 else w) for u, w in tail.items()}
    return tail


def canonicalize(seq, trunc):
    """Normal form of ``seq`` as ``Zero``, ``Single`` or ``General``, or a ``RootObstruction``."""
    h = horizon(trunc)
    seq = seq.truncate(h)
    if not seq:
        return Zero(horizon=h)
    norm = shift_normalize(seq, trunc)
    r = norm.first()
    rest = [t for t in norm.support() if t > r]
    if not rest:
        return Single(r, horizon=h)
    s = rest[0]
    q = norm[s]
    c0 = rational_root(q, s - r)
    if c0 is None:
        return RootObstruction(s - r, q)
    if c0 != 1:
        norm = transform(nu(c0, 0, c0 ** (r + 1)), norm, trunc)
    assert norm[r] == 1 and norm[s] == 1 and not norm[2 * r]
    tail = {t: v for t, v in norm.items() if t > s}
    return General(r, s, tuple(_sign_twist(r, s, tail).items()), horizon=h)


def _bezout(values):
    """``(g, coeffs)`` with ``sum(c * v) == g == gcd(values)``."""
    g, coeffs = 0, []
    for v in values:
        # extended Euclid on (g, v)
        old_r, r = g, v
        old_s, s = 1, 0
        old_t, t = 0, 1
        while r:
            k = old_r // r
            old_r, r = r, old_r - k * r
            old_s, s = s, old_s - k * s
            old_t, t = t, old_t - k * t
        if old_r < 0:
            old_r, old_s, old_t = -old_r, -old_s, -old_t
        coeffs = [c * old_s for c in coeffs] + [old_t]
        g = old_r
    return g, coeffs


def iso_equivalent(seq1, seq2, trunc):
    """Whether ``L_(seq1)`` and ``L_(seq2)`` agree up to isomorphism over C.

    Certain for indices up to ``N - 3`` only.  After shift normalization
    both sequences must share support; the ratios ``q_t = lambda_t / lambda'_t``
    must then be ``c0^(t-r)`` for one complex ``c0``, which is checked with
    rational arithmetic through ``w = c0^g``, ``g = gcd(t - r)``.
    """
    h = horizon(trunc)
    a, b = seq1.truncate(h), seq2.truncate(h)
    if not a or not b:
        return not a and not b
    a, b = shift_normalize(a, trunc), shift_normalize(b, trunc)
    if a.support() != b.support():
        return False
    r = a.first()
    ts = [t for t in a.support() if t > r]
    if not ts:
        return True
    q = {t: a[t] / b[t] for t in ts}
    g, ms = _bezout([t - r for t in ts])
    w = Fraction(1)
    for t, m in zip(ts, ms):
        w *= q[t] ** m
    return all(q[t] == w ** ((t - r) // g) for t in ts)


def realize(canon, trunc=None):
    """The sequence a canonical form stands for, cut at the horizon of ``trunc`` if given."""
    if isinstance(canon, Zero):
        seq = MetabelianSeq()
    elif isinstance(canon, Single):
        seq = MetabelianSeq({canon.r: 1})
    elif isinstance(canon, General):
        out = {canon.r: 1, canon.s: 1}
        out.update(dict(canon.tail))
        seq = MetabelianSeq(out)
    else:
        raise DomainError(f"cannot realize {canon!r}")
    return seq if trunc is None else seq.truncate(horizon(trunc))
