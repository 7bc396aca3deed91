"""Bracket engine for truncated infinite filiform Lie algebras.

An algebra is given by a basis ``a, e_1, e_2, ...`` with ``[a, e_j] = e_{j+1}``
and ``[e_j, e_{j+1}] = sum_s lambda_{js} e_{2j+1+s}``.  Everything here lives in
the quotient ``L / L^{N+1}``: basis vectors ``e_i`` with ``i > N`` are dropped.

Basis symbols are integers, with ``A = 0`` standing for ``a``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from types import MappingProxyType

from .polys import QuadPoly

__all__ = [
    "A", "DomainError", "Element", "ParamTable", "ResidualReport", "Span",
    "AbelianCheck", "basis", "bracket_basis", "bracket", "bracket_basis_oracle",
    "jacobi_residual", "jacobi_check", "jacobi_polynomials",
    "jacobi_residual_polynomials", "derived_series", "is_abelian_from",
    "format_rational", "symbol_name",
]

A = 0


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


def format_rational(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def symbol_name(i):
    return "a" if i == A else f"e_{i}"


def _coerce(value):
    return value if isinstance(value, QuadPoly) else Fraction(value)


class Element:
    """A vector ``coeff_a * a + sum_i coeffs_e[i] * e_i`` modulo ``L^{N+1}``.

    Components with index above ``trunc`` are discarded on construction,
    which is the quotient map.  Coefficients are Fractions, or QuadPolys
    during symbolic evaluation.
    """

    __slots__ = ("trunc", "coeff_a", "_e")

    def __init__(self, trunc, coeff_a=0, coeffs_e=None):
        if trunc < 1:
            raise DomainError(f"truncation must be positive, got {trunc}")
        self.trunc = trunc
        self.coeff_a = _coerce(coeff_a)
        e = {}
        for i, c in (coeffs_e or {}).items():
            if i < 1:
                raise DomainError(f"basis index must be >= 1, got {i}")
            if i <= trunc and c:
                e[i] = _coerce(c)
        self._e = dict(sorted(e.items()))

    @classmethod
    def _raw(cls, trunc, coeff_a, e):
        # trusted constructor: e already clean (nonzero, in range)
        self = object.__new__(cls)
        self.trunc = trunc
        self.coeff_a = coeff_a
        self._e = dict(sorted(e.items()))
        return self

    @classmethod
    def zero(cls, trunc):
        return cls(trunc)

    @classmethod
    def basis(cls, i, trunc):
        if i == A:
            return cls(trunc, 1)
        return cls(trunc, 0, {i: 1})

    @property
    def coeffs_e(self):
        return MappingProxyType(self._e)

    def coeff(self, i):
        if i == A:
            return self.coeff_a
        return self._e.get(i, 0)

    def items(self):
        """Nonzero ``(index, coeff)`` pairs in basis order, ``a`` first."""
        out = [(A, self.coeff_a)] if self.coeff_a else []
        out.extend(self._e.items())
        return out

    def support(self):
        return [i for i, _ in self.items()]

    def lowest(self):
        """Smallest e-index present (ignores ``a``), or None."""
        return next(iter(self._e), None)

    def restrict(self, trunc):
        """Image in ``L / L^{trunc+1}`` for ``trunc <= self.trunc``."""
        if trunc > self.trunc:
            raise DomainError("cannot restrict to a larger truncation")
        return Element._raw(trunc, self.coeff_a,
                            {i: c for i, c in self._e.items() if i <= trunc})

    def _check(self, other):
        if self.trunc != other.trunc:
            raise DomainError(f"truncation mismatch: {self.trunc} vs {other.trunc}")

    def __bool__(self):
        return bool(self.coeff_a) or bool(self._e)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return (self.trunc == other.trunc and self.coeff_a == other.coeff_a
                and self._e == other._e)

    def __hash__(self):
        return hash((self.trunc, self.coeff_a, tuple(self._e.items())))

    def __add__(self, other):
        self._check(other)
        e = dict(self._e)
        for i, c in other._e.items():
            v = e.get(i, 0) + c
            if v:
                e[i] = v
            else:
                e.pop(i, None)
        return Element._raw(self.trunc, self.coeff_a + other.coeff_a, e)

    def __neg__(self):
        return Element._raw(self.trunc, -self.coeff_a,
                            {i: -c for i, c in self._e.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        scalar = _coerce(scalar)
        if not scalar:
            return Element.zero(self.trunc)
        e = {}
        for i, c in self._e.items():
            v = c * scalar
            if v:
                e[i] = v
        return Element._raw(self.trunc, self.coeff_a * scalar, e)

    __rmul__ = __mul__

    def __repr__(self):
        return f"Element({self.trunc}, {self.coeff_a!r}, {self._e!r})"

    def __str__(self):
        terms = self.items()
        if not terms:
            return "0"
        out = []
        for k, (i, c) in enumerate(terms):
            name = symbol_name(i)
            if isinstance(c, QuadPoly):
                body, neg = f"({c}) {name}", False
            else:
                neg = c < 0
                mag = abs(c)
                body = name if mag == 1 else f"{format_rational(mag)} {name}"
            if k == 0:
                out.append(f"- {body}" if neg else body)
            else:
                out.append(f"{'-' if neg else '+'} {body}")
        return " ".join(out)


def basis(trunc):
    """The basis ``a, e_1, ..., e_N`` as Elements."""
    return [Element.basis(i, trunc) for i in range(trunc + 1)]


class ParamTable:
    """Finitely supported table ``(j, s) -> lambda_{js}`` with nonzero values.

    Entries whose target index ``2j+1+s`` exceeds a given truncation are kept;
    they are simply inert at that truncation.
    """

    __slots__ = ("_entries", "_rows", "_hash")

    def __init__(self, entries=None):
        clean = {}
        for (j, s), v in dict(entries or {}).items():
            if int(j) != j or int(s) != s or j < 1 or s < 1:
                raise DomainError(f"table index ({j}, {s}) must be positive integers")
            v = _coerce(v)
            if v:
                clean[(int(j), int(s))] = v
        self._entries = dict(sorted(clean.items()))
        rows = {}
        for (j, s), v in self._entries.items():
            rows.setdefault(j, {})[s] = v
        self._rows = rows
        self._hash = None

    @property
    def entries(self):
        return MappingProxyType(self._entries)

    def get(self, j, s):
        return self._entries.get((j, s), 0)

    def row(self, j):
        return MappingProxyType(self._rows.get(j, {}))

    def rows(self):
        return sorted(self._rows)

    def restrict(self, trunc):
        """Drop entries that are inert at truncation ``trunc``."""
        return ParamTable({(j, s): v for (j, s), v in self._entries.items()
                           if 2 * j + 1 + s <= trunc})

    def __len__(self):
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries.items())

    def __bool__(self):
        return bool(self._entries)

    def __eq__(self, other):
        if not isinstance(other, ParamTable):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._entries.items()))
        return self._hash

    def __repr__(self):
        return f"ParamTable({self._entries!r})"


# -- structure constants -------------------------------------------------

def _closed_form(k, m, table, trunc):
    """Coefficients of [e_k, e_m] for k < m as a dict index -> coeff."""
    out = {}
    # j runs over k <= j with j - k <= m - j - 1
    for j in range(k, (m + k - 1) // 2 + 1):
        row = table.row(j)
        if not row:
            continue
        sign = -1 if (j - k) % 2 else 1
        b = sign * comb(m - j - 1, j - k)
        for s, lam in row.items():
            idx = m + k + s
            if idx > trunc:
                break
            out[idx] = out.get(idx, 0) + b * lam
    return {i: c for i, c in sorted(out.items()) if c}


class _Structure:
    """Memoized ``[e_k, e_m]`` for one table at one truncation."""

    def __init__(self, table, trunc):
        self.table = table
        self.trunc = trunc
        self._pairs = {}

    def pair(self, k, m):
        key = (k, m)
        got = self._pairs.get(key)
        if got is None:
            if k + m + 1 > self.trunc:
                got = {}
            else:
                got = _closed_form(k, m, self.table, self.trunc)
            self._pairs[key] = got
        return got


@lru_cache(maxsize=256)
def _structure(table, trunc):
    return _Structure(table, trunc)


def _check_index(i, trunc):
    if i != A and not 1 <= i <= trunc:
        raise DomainError(f"basis index {i} outside 1..{trunc}")


def bracket_basis(k, m, table, trunc):
    """``[x_k, x_m]`` for basis symbols (``A`` for ``a``) at truncation ``trunc``."""
    _check_index(k, trunc)
    _check_index(m, trunc)
    if k == m:
        return Element.zero(trunc)
    if k == A:
        return Element(trunc, 0, {m + 1: 1})
    if m == A:
        return Element(trunc, 0, {k + 1: -1})
    if k < m:
        return Element._raw(trunc, 0, _structure(table, trunc).pair(k, m))
    return -Element._raw(trunc, 0, _structure(table, trunc).pair(m, k))


def _bracket_raw(xa, xe, ya, ye, st):
    trunc = st.trunc
    out = {}

    def add(i, c):
        v = out.get(i, 0) + c
        if v:
            out[i] = v
        else:
            out.pop(i, None)

    if xa:
        for i, c in ye.items():
            if i + 1 <= trunc:
                add(i + 1, xa * c)
    if ya:
        for i, c in xe.items():
            if i + 1 <= trunc:
                add(i + 1, -(ya * c))
    for i, ci in xe.items():
        for j, cj in ye.items():
            if i == j or i + j + 1 > trunc:
                continue
            if i < j:
                pc, sign = st.pair(i, j), 1
            else:
                pc, sign = st.pair(j, i), -1
            if not pc:
                continue
            w = ci * cj if sign > 0 else -(ci * cj)
            for idx, c in pc.items():
                add(idx, w * c)
    return out


def bracket(x, y, table):
    """Bilinear, antisymmetric extension of :func:`bracket_basis`."""
    x._check(y)
    st = _structure(table, x.trunc)
    raw = _bracket_raw(x.coeff_a, x._e, y.coeff_a, y._e, st)
    return Element._raw(x.trunc, 0, raw)


def bracket_basis_oracle(k, m, table, trunc):
    """[e_k, e_m], k < m, by recursion on m - k through ad_a.

    Uses only the consecutive brackets and the rearrangement
    ``[e_k, e_m] = [a, [e_k, e_{m-1}]] - [e_{k+1}, e_{m-1}]``.
    """
    if not 1 <= k < m <= trunc:
        raise DomainError(f"oracle needs 1 <= k < m <= {trunc}, got ({k}, {m})")
    memo = {}

    def go(k, m):
        if k == m:
            return {}
        if (k, m) in memo:
            return memo[(k, m)]
        if m == k + 1:
            out = {}
            for s, lam in table.row(k).items():
                if 2 * k + 1 + s <= trunc:
                    out[2 * k + 1 + s] = lam
        else:
            shifted = {i + 1: c for i, c in go(k, m - 1).items() if i + 1 <= trunc}
            out = dict(shifted)
            if k + 1 < m - 1:
                for i, c in go(k + 1, m - 1).items():
                    out[i] = out.get(i, 0) - c
        out = {i: c for i, c in out.items() if c}
        memo[(k, m)] = out
        return out

    return Element(trunc, 0, go(k, m))


def jacobi_residual(x, y, z, table):
    """``[x,[y,z]] + [y,[z,x]] + [z,[x,y]]``; zero exactly when Jacobi holds."""
    return (bracket(x, bracket(y, z, table), table)
            + bracket(y, bracket(z, x, table), table)
            + bracket(z, bracket(x, y, table), table))


def _basis_raw(i):
    return (1, {}) if i == A else (0, {i: 1})


def _residual_raw(i, j, k, st):
    """Residual for a basis triple as an index -> coeff dict."""
    total = {}
    for p, q, r in ((i, j, k), (j, k, i), (k, i, j)):
        qa, qe = _basis_raw(q)
        ra, re = _basis_raw(r)
        inner = _bracket_raw(qa, qe, ra, re, st)
        if not inner:
            continue
        pa, pe = _basis_raw(p)
        for idx, c in _bracket_raw(pa, pe, 0, inner, st).items():
            total[idx] = total.get(idx, 0) + c
    return {idx: c for idx, c in sorted(total.items()) if c}


def _triples(trunc):
    # e-triples first: they carry all the constraints, a-triples vanish
    for i in range(1, trunc + 1):
        for j in range(i + 1, trunc + 1):
            if i + j + 1 > trunc:
                break
            for k in range(j + 1, trunc + 1):
                if i + j + k + 2 > trunc:
                    break
                yield (i, j, k)
    for i in range(1, trunc + 1):
        for j in range(i + 1, trunc + 1):
            if i + j + 2 > trunc:
                break
            yield (A, i, j)


@dataclass(frozen=True)
class ResidualReport:
    """Nonzero Jacobi residuals keyed by basis triple (``A`` sorts first)."""

    trunc: int
    violations: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok

    def restrict(self, trunc):
        out = {}
        for key, el in self.violations.items():
            r = el.restrict(trunc)
            if r:
                out[key] = r
        return ResidualReport(trunc, out)

    def lines(self):
        if self.ok:
            return [f"OK up to degree {self.trunc}"]
        out = []
        for key, el in self.violations.items():
            names = ", ".join(symbol_name(i) for i in key)
            out.append(f"J({names}) = {el}")
        return out


def jacobi_check(table, trunc, limit=None):
    """Evaluate the Jacobi residual on every basis triple below ``trunc``.

    Triples whose residual must land above degree ``trunc`` are skipped.
    With ``limit`` set, stop after that many violations.
    """
    if trunc < 3:
        raise DomainError("jacobi_check needs trunc >= 3")
    st = _structure(table, trunc)
    found = {}
    for triple in _triples(trunc):
        res = _residual_raw(*triple, st)
        if res:
            found[triple] = Element._raw(trunc, 0, res)
            if limit is not None and len(found) >= limit:
                break
    return ResidualReport(trunc, dict(sorted(found.items())))


def _symbolic_table(trunc):
    return ParamTable({(j, s): QuadPoly.var((j, s))
                       for j in range(1, trunc + 1)
                       for s in range(1, trunc + 1)
                       if 2 * j + 1 + s <= trunc})


def jacobi_residual_polynomials(trunc):
    """``{(triple, degree): QuadPoly}`` for the generic table at ``trunc``."""
    if trunc < 3:
        raise DomainError("needs trunc >= 3")
    st = _Structure(_symbolic_table(trunc), trunc)
    out = {}
    for triple in _triples(trunc):
        for idx, poly in _residual_raw(*triple, st).items():
            out[(triple, idx)] = poly
    return dict(sorted(out.items()))


def jacobi_polynomials(trunc):
    """The quadratic conditions on ``lambda_{js}`` visible below ``trunc``.

    Each residual coefficient is made monic and duplicates are removed.
    """
    seen = {p.monic() for p in jacobi_residual_polynomials(trunc).values()}
    return sorted(seen, key=lambda p: (p.degree(), p.sort_key()))


# -- series --------------------------------------------------------------

def _echelon(vectors, trunc):
    """Reduced row echelon basis of the span, pivots at the lowest index."""
    rows = []  # (pivot, dict) in pivot order
    for v in vectors:
        vec = dict(v.items())
        for piv, row in rows:
            c = vec.get(piv)
            if c:
                for i, rc in row.items():
                    nv = vec.get(i, 0) - c * rc
                    if nv:
                        vec[i] = nv
                    else:
                        vec.pop(i, None)
        if not vec:
            continue
        piv = min(vec)
        lead = vec[piv]
        vec = {i: c / lead for i, c in vec.items()}
        for k, (p, row) in enumerate(rows):
            c = row.get(piv)
            if c:
                for i, vc in vec.items():
                    nv = row.get(i, 0) - c * vc
                    if nv:
                        row[i] = nv
                    else:
                        row.pop(i, None)
        rows.append((piv, vec))
        rows.sort(key=lambda t: t[0])
    out = []
    for piv, row in rows:
        coeff_a = row.pop(A, 0)
        out.append(Element(trunc, coeff_a, row))
    return out


@dataclass(frozen=True)
class Span:
    """A subspace of ``L / L^{N+1}`` given by a reduced echelon basis."""

    trunc: int
    basis: tuple

    @property
    def dim(self):
        return len(self.basis)

    @property
    def threshold(self):
        """``i`` when the span is ``span{e_i, ..., e_N}``, else None."""
        if not self.basis:
            return self.trunc + 1
        idx = [b.support() for b in self.basis]
        if any(len(s) != 1 for s in idx):
            return None
        flat = [s[0] for s in idx]
        lo = flat[0]
        if lo != A and flat == list(range(lo, self.trunc + 1)):
            return lo
        return None

    def __str__(self):
        if not self.basis:
            return "0"
        if len(self.basis) == self.trunc + 1:
            return "L"
        t = self.threshold
        if t is not None:
            return f"span{{e_{t}..e_{self.trunc}}}"
        return "span{" + ", ".join(str(b) for b in self.basis) + "}"


def derived_series(table, trunc):
    """Derived series of ``L / L^{N+1}``: L, [L,L], ... until zero or stable."""
    st = _structure(table, trunc)
    current = _echelon(basis(trunc), trunc)
    series = [Span(trunc, tuple(current))]
    while current:
        gens = []
        for p in range(len(current)):
            x = current[p]
            for q in range(p + 1, len(current)):
                y = current[q]
                raw = _bracket_raw(x.coeff_a, x._e, y.coeff_a, y._e, st)
                if raw:
                    gens.append(Element._raw(trunc, 0, raw))
        nxt = _echelon(gens, trunc)
        if len(nxt) == len(current):
            break
        current = nxt
        series.append(Span(trunc, tuple(current)))
    return series


@dataclass(frozen=True)
class AbelianCheck:
    abelian: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.abelian


def is_abelian_from(table, trunc, k):
    """Whether ``[e_i, e_j] = 0`` for all ``k <= i < j <= N``; else a witness pair."""
    if not 2 <= k <= trunc:
        raise DomainError(f"k must lie in 2..{trunc}, got {k}")
    st = _structure(table, trunc)
    for i in range(k, trunc + 1):
        for j in range(i + 1, trunc + 1):
            if i + j + 1 > trunc:
                break
            if st.pair(i, j):
                return AbelianCheck(False, (i, j))
    return AbelianCheck(True)
