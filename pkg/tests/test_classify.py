import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from filiform import DomainError
from filiform.automorphism import AutoSpec, MetabelianSeq, horizon, nu, transform
from filiform.classify import (_sign_twist, General, RootObstruction, Single, Zero, canonicalize,
                               iso_equivalent, rational_root, realize, shift_normalize)

from conftest import autos, small_q

M = MetabelianSeq
N = 14


def test_rational_root():
    assert rational_root(Fraction(4, 9), 2) == Fraction(2, 3)
    assert rational_root(Fraction(-8, 27), 3) == Fraction(-2, 3)
    assert rational_root(-4, 2) is None
    assert rational_root(2, 2) is None
    assert rational_root(7, 1) == 7


def test_form_validation():
    with pytest.raises(DomainError):
        General(2, 4)
    with pytest.raises(DomainError):
        General(1, 3, ((2, 1),))
    with pytest.raises(DomainError):
        General(1, 3, ((4, -2),))  # twin of tail {4: 2}
    with pytest.raises(DomainError):
        RootObstruction(2, Fraction(9, 4))
    with pytest.raises(DomainError):
        Single(0)


def test_shift_normalize_examples():
    got = shift_normalize(M({1: 1, 2: 4}), N)
    assert got[1] == 1 and got[2] == 0
    assert got == transform(nu(1, 2, 1), M({1: 1, 2: 4}), N)
    assert shift_normalize(M({2: 1, 3: 1}), N) == M({2: 1, 3: 1})
    with pytest.raises(DomainError):
        shift_normalize(M(), N)


@settings(max_examples=30)
@given(st.dictionaries(st.integers(1, 9), small_q, min_size=1, max_size=5))
def test_shift_normalize_idempotent(entries):
    once = shift_normalize(M(entries), N)
    assert shift_normalize(once, N) == once


def test_canonicalize_examples():
    assert canonicalize(M(), N) == Zero()
    assert canonicalize(M({3: 5}), N) == Single(3)
    assert canonicalize(M({1: 1, 3: 4}), N) == General(1, 3)
    assert canonicalize(M({1: 1, 3: 2}), N) == RootObstruction(2, Fraction(2))
    assert canonicalize(M({1: 1, 3: 4}), N).horizon == horizon(N)


def test_general_round_trip_by_transform():
    # General(1, 3) comes from {1: 1, 3: 4} through nu(2, 0, 4)
    assert transform(nu(2, 0, 4), M({1: 1, 3: 4}), N) == M({1: 1, 3: 1})


def test_realize():
    assert realize(Zero()) == M()
    assert realize(Single(4)) == M({4: 1})
    assert realize(General(1, 3)) == M({1: 1, 3: 1})
    assert realize(General(2, 3, ((5, 7),))) == M({2: 1, 3: 1, 5: 7})
    with pytest.raises(DomainError):
        realize("General")


def _random_form(rng, h):
    kind = rng.random()
    if kind < 0.1:
        return Zero()
    r = rng.randint(1, 4)
    if kind < 0.25:
        return Single(r)
    s = rng.choice([v for v in range(r + 1, h - 1) if v != 2 * r])
    tail = {t: Fraction(rng.choice([-3, -1, 1, 2, 5]), rng.randint(1, 3))
            for t in range(s + 1, h + 1) if t != 2 * r and rng.random() < 0.4}
    return General(r, s, tuple(_sign_twist(r, s, tail).items()))


@pytest.mark.parametrize("seed", range(30))
def test_canonicalize_realize_fixed_point(seed):
    rng = random.Random(seed)
    form = _random_form(rng, horizon(N))
    assert canonicalize(realize(form), N) == form


def test_twin_tails_collapse():
    base = M({1: 1, 3: 1, 4: 2, 6: Fraction(1, 3)})
    twin = transform(nu(-1, 0, 1), base, N)
    assert twin != base
    assert canonicalize(twin, N) == canonicalize(base, N) == General(1, 3, ((4, 2), (6, Fraction(1, 3))))


@settings(max_examples=30, deadline=None)
@given(autos(top=4), st.integers(0, 10**6))
def test_canonicalize_invariant(auto, seed):
    rng = random.Random(seed)
    form = _random_form(rng, horizon(N))
    seq = realize(form)
    assert canonicalize(transform(auto, seq, N), N) == form


def test_iso_examples():
    assert iso_equivalent(M({1: 1, 3: 4}), M({1: 1, 3: 4}), N)
    assert iso_equivalent(M({1: 1, 3: 4}), M({1: 1, 3: 1}), N)
    assert iso_equivalent(M({1: 1, 3: -1}), M({1: 1, 3: 1}), N)
    assert not iso_equivalent(M({1: 1, 2: 1}), M({1: 1, 3: 1}), N)
    assert iso_equivalent(M(), M(), N)
    assert not iso_equivalent(M(), M({2: 1}), N)


def test_complex_only_witness_has_no_rational_canonical_match():
    a, b = M({1: 1, 3: -1}), M({1: 1, 3: 1})
    assert isinstance(canonicalize(a, N), RootObstruction)
    assert canonicalize(b, N) == General(1, 3)


def test_class_separation():
    reps = [M(), M({1: 1}), M({2: 1}), M({1: 1, 3: 1}), M({1: 1, 4: 1}), M({2: 1, 3: 1})]
    for x, y in itertools.combinations(reps, 2):
        assert not iso_equivalent(x, y, N)


@settings(max_examples=40, deadline=None)
@given(autos(top=4), st.dictionaries(st.integers(1, 8), small_q, max_size=4))
def test_iso_sound(auto, entries):
    seq = M(entries)
    assert iso_equivalent(seq, transform(auto, seq, N), N)


def test_iso_brute_force_agreement():
    """Completeness at desk scale against a grid search over nu(c0, c1, d1)."""
    grid = sorted({Fraction(p, q) for p in range(-2, 3) if p for q in (1, 2)})
    rng = random.Random(4)
    M_ = 10
    h = horizon(M_)
    for _ in range(12):
        x = M({s: Fraction(rng.choice([-2, -1, 1, 2]), rng.choice([1, 2]))
               for s in rng.sample(range(1, 7), 3)})
        c0, c1 = rng.choice(grid), rng.choice(grid + [Fraction(0)])
        y = transform(nu(c0, c1, rng.choice(grid)), x, M_)
        z = M({s: Fraction(rng.choice([-2, -1, 1, 2])) for s in rng.sample(range(1, 7), 3)})
        for target in (y, z):
            witness = False
            for a, b in itertools.product(grid, grid + [Fraction(0)]):
                first = x.first()
                if first is None or target.first() != first:
                    break
                probe = transform(nu(a, b, 1), x, M_)
                d1 = target[first] / probe[first]
                if transform(nu(a, b, d1), x, M_) == target.truncate(h):
                    witness = True
                    break
            got = iso_equivalent(x, target, M_)
            if witness:
                assert got
            if x.first() != target.first():
                assert not got
