"""Basis changes of the metabelian algebras ``L_(lambda)``.

``L_(lambda)`` has ``[a, e_i] = e_{i+1}``, ``[e_1, e_i] = sum_j lambda_j e_{1+i+j}``
for ``i >= 2`` and ``[e_i, e_j] = 0`` for ``i, j >= 2``.  A filtered
automorphism is fixed by the images of ``a`` and ``e_1``; the rest of the new
basis follows from ``phi(e_{i+1}) = [phi(a), phi(e_i)]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType

from .algebra import A, DomainError, Element, ParamTable, bracket, format_rational

__all__ = [
    "MetabelianSeq", "AutoSpec", "InvalidAutomorphism", "TransformError",
    "lift", "nu", "sigma", "tau", "phi_images", "transform", "compose", "horizon",
]


class InvalidAutomorphism(DomainError):
    pass


class TransformError(RuntimeError):
    """The new basis does not reproduce a metabelian structure (internal inconsistency)."""


class MetabelianSeq:
    """Finitely supported ``s -> lambda_s`` (the row ``lambda_{1s}``), nonzero values."""

    __slots__ = ("_entries",)

    def __init__(self, entries=None):
        clean = {}
        for s, v in dict(entries or {}).items():
            if int(s) != s or s < 1:
                raise DomainError(f"sequence index {s} must be a positive integer")
            v = Fraction(v)
            if v:
                clean[int(s)] = v
        self._entries = dict(sorted(clean.items()))

    @property
    def entries(self):
        return MappingProxyType(self._entries)

    def __getitem__(self, s):
        return self._entries.get(s, Fraction(0))

    def support(self):
        return list(self._entries)

    def first(self):
        return next(iter(self._entries), None)

    def truncate(self, h):
        """Entries with index ``<= h``."""
        return MetabelianSeq({s: v for s, v in self._entries.items() if s <= h})

    def items(self):
        return self._entries.items()

    def __len__(self):
        return len(self._entries)

    def __bool__(self):
        return bool(self._entries)

    def __eq__(self, other):
        if not isinstance(other, MetabelianSeq):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self):
        return hash(tuple(self._entries.items()))

    def __repr__(self):
        body = ", ".join(f"{s}: {format_rational(v)}" for s, v in self._entries.items())
        return f"MetabelianSeq({{{body}}})"


def lift(seq):
    """The parameter table with row 1 equal to ``seq``."""
    return ParamTable({(1, s): v for s, v in seq.items()})


def horizon(trunc):
    """Largest sequence index readable from ``[e_1, e_2]`` at truncation ``trunc``."""
    return trunc - 3


@dataclass(frozen=True)
class AutoSpec:
    """Images ``phi(a) = c_0 a + sum c_i e_i`` and ``phi(e_1) = sum d_i e_i``."""

    c: tuple
    d: tuple

    def __init__(self, c, d):
        c = {int(i): Fraction(v) for i, v in dict(c).items() if v}
        d = {int(i): Fraction(v) for i, v in dict(d).items() if v}
        if not c.get(0):
            raise InvalidAutomorphism("c_0 must be nonzero")
        if 0 in d:
            raise InvalidAutomorphism("phi(e_1) may not involve a (d_0 must be 0)")
        if not d.get(1):
            raise InvalidAutomorphism("d_1 must be nonzero")
        if any(i < 0 for i in c) or any(i < 1 for i in d):
            raise InvalidAutomorphism("negative index in automorphism data")
        object.__setattr__(self, "c", tuple(sorted(c.items())))
        object.__setattr__(self, "d", tuple(sorted(d.items())))

    @property
    def c0(self):
        return dict(self.c)[0]

    @property
    def d1(self):
        return dict(self.d)[1]

    def image_a(self, trunc):
        c = dict(self.c)
        return Element(trunc, c.pop(0), c)

    def image_e1(self, trunc):
        return Element(trunc, 0, dict(self.d))


def nu(c0, c1, d1):
    return AutoSpec({0: c0, 1: c1}, {1: d1})


def sigma(d, k):
    if k < 2:
        raise InvalidAutomorphism(f"sigma needs k >= 2, got {k}")
    return AutoSpec({0: 1}, {1: 1, k: d})


def tau(c, k):
    if k < 2:
        raise InvalidAutomorphism(f"tau needs k >= 2, got {k}")
    return AutoSpec({0: 1, k: c}, {1: 1})


def phi_images(auto, seq, trunc):
    """``[phi(a), phi(e_1), ..., phi(e_N)]`` inside ``L_(seq)`` modulo ``L^{N+1}``."""
    table = lift(seq)
    pa = auto.image_a(trunc)
    imgs = [pa, auto.image_e1(trunc)]
    for _ in range(trunc - 1):
        imgs.append(bracket(pa, imgs[-1], table))
    return imgs


def _expand(target, imgs, offset):
    """Solve ``target = sum_j x_j phi(e_{offset+j})`` by back-substitution."""
    rem = target
    out = {}
    while rem:
        if rem.coeff_a:
            raise TransformError("bracket has a component on a")
        m = rem.lowest()
        j = m - offset
        if j < 1:
            raise TransformError(f"component on e_{m} below the filiform range")
        lead = imgs[m].coeff(m)
        x = rem.coeff(m) / lead
        out[j] = x
        rem = rem - imgs[m] * x
    return out


def transform(auto, seq, trunc, check=True):
    """The sequence ``lambda'`` of ``L_(seq)`` in the basis ``phi(a), phi(e_i)``.

    Only indices up to ``horizon(trunc)`` are determined; entries of ``seq``
    beyond that are inert.  With ``check`` the row ``[phi(e_1), phi(e_i)]``
    is re-expanded for every ``i > 2`` and must match ``lambda'``.
    """
    if trunc < 4:
        raise DomainError("transform needs trunc >= 4")
    table = lift(seq)
    imgs = phi_images(auto, seq, trunc)
    c0, d1 = auto.c0, auto.d1
    for i in range(1, trunc + 1):
        if imgs[i].lowest() != i or imgs[i].coeff(i) != c0 ** (i - 1) * d1:
            raise TransformError(f"phi(e_{i}) does not start with c_0^{i-1} d_1 e_{i}")
    lam = _expand(bracket(imgs[1], imgs[2], table), imgs, 3)
    if check:
        for i in range(3, trunc + 1):
            got = _expand(bracket(imgs[1], imgs[i], table), imgs, i + 1)
            want = {j: v for j, v in lam.items() if i + 1 + j <= trunc}
            if got != want:
                raise TransformError(f"[phi(e_1), phi(e_{i})] disagrees with lambda'")
        for i in range(2, trunc):
            if bracket(imgs[i], imgs[i + 1], table):
                raise TransformError(f"[phi(e_{i}), phi(e_{i+1})] is nonzero")
    return MetabelianSeq(lam)


def compose(first, second, seq, trunc):
    """The single basis change of ``L_(seq)`` equal to ``first`` followed by ``second``.

    ``second`` is read in the basis produced by ``first``, so that
    ``transform(compose(f, g, seq, N), seq, N) == transform(g, transform(f, seq, N), N)``.
    """
    imgs = phi_images(first, seq, trunc)

    def combine(coeffs):
        out = Element.zero(trunc)
        for i, v in coeffs:
            out = out + imgs[i] * v
        return out

    pa = combine(second.c)
    pe = combine(second.d)
    c = {0: pa.coeff_a}
    c.update(pa.coeffs_e)
    if pe.coeff(A):
        raise InvalidAutomorphism("composed image of e_1 involves a")
    return AutoSpec(c, dict(pe.coeffs_e))
