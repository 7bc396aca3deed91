from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from filiform import ParamTable, jacobi_check
from filiform.automorphism import (AutoSpec, InvalidAutomorphism, MetabelianSeq, compose,
                                   horizon, lift, nu, phi_images, sigma, tau, transform)

from conftest import autos, seqs, small_q

N = 14


def test_lift():
    assert lift(MetabelianSeq()) == ParamTable()
    assert lift(MetabelianSeq({2: Fraction(1, 3)})) == ParamTable({(1, 2): Fraction(1, 3)})


@settings(max_examples=25)
@given(seqs(top=20))
def test_lift_always_jacobi(seq):
    assert jacobi_check(lift(seq), 22).ok


def test_constructors():
    assert nu(1, 0, 1) == AutoSpec({0: 1}, {1: 1})
    assert sigma(3, 2) == AutoSpec({0: 1}, {1: 1, 2: 3})
    assert tau(5, 4) == AutoSpec({0: 1, 4: 5}, {1: 1})
    for bad in (lambda: nu(0, 1, 1), lambda: nu(1, 1, 0), lambda: sigma(1, 1),
                lambda: AutoSpec({0: 1}, {0: 1, 1: 1})):
        with pytest.raises(InvalidAutomorphism):
            bad()


def test_identity_images():
    seq = MetabelianSeq({1: 2, 4: -1})
    imgs = phi_images(nu(1, 0, 1), seq, N)
    assert [str(x) for x in imgs[:3]] == ["a", "e_1", "e_2"]
    assert all(imgs[i].items() == [(i, 1)] for i in range(1, N + 1))


@pytest.mark.parametrize("k", [2, 3, 5])
def test_sigma_images(k):
    d = Fraction(-3, 2)
    seq = MetabelianSeq({1: 1, 2: 5, 6: Fraction(1, 7)})
    imgs = phi_images(sigma(d, k), seq, N)
    for i in range(1, N + 1):
        want = {i: 1}
        if k + i - 1 <= N:
            want[k + i - 1] = d
        assert dict(imgs[i].coeffs_e) == want


@pytest.mark.parametrize("k", [2, 3, 5])
def test_tau_images(k):
    c = Fraction(2, 3)
    lam = {1: Fraction(1), 2: Fraction(5), 6: Fraction(1, 7)}
    imgs = phi_images(tau(c, k), MetabelianSeq(lam), N)
    for j in range(2, N + 1):
        want = {j: Fraction(1)}
        for r, v in lam.items():
            idx = k + j - 1 + r
            if idx <= N:
                want[idx] = want.get(idx, 0) - c * v
        assert dict(imgs[j].coeffs_e) == {i: v for i, v in want.items() if v}


@settings(max_examples=40)
@given(autos(), seqs())
def test_leading_coefficients(auto, seq):
    imgs = phi_images(auto, seq, 12)
    for i in range(1, 13):
        assert imgs[i].lowest() == i
        assert imgs[i].coeff(i) == auto.c0 ** (i - 1) * auto.d1


@settings(max_examples=40)
@given(seqs(), st.integers(2, 7), small_q)
def test_sigma_tau_invariance(seq, k, v):
    want = seq.truncate(horizon(N))
    assert transform(sigma(v, k), seq, N) == want
    assert transform(tau(v, k), seq, N) == want


@settings(max_examples=40)
@given(seqs(), small_q, small_q)
def test_nu_scaling_law(seq, c0, d1):
    got = transform(nu(c0, 0, d1), seq, N)
    want = MetabelianSeq({i: d1 * v / c0 ** (i + 1) for i, v in seq.items() if i <= horizon(N)})
    assert got == want


def test_nu_example():
    assert transform(nu(2, 0, 3), MetabelianSeq({1: 1, 2: 1}), 10) == \
        MetabelianSeq({1: Fraction(3, 4), 2: Fraction(3, 8)})


@pytest.mark.parametrize("t", [1, 2, 3, 4])
def test_shift_law(t):
    c = Fraction(-5, 3)
    lam = {t: 1, t + 1: Fraction(2), 2 * t: Fraction(7), 2 * t + 2: Fraction(1, 2)}
    got = transform(nu(1, c, 1), MetabelianSeq(lam), 20)
    assert got[t] == 1
    for i in range(t + 1, 2 * t):
        assert got[i] == lam.get(i, 0)
    assert got[2 * t] == lam[2 * t] - (1 + t) * c


@settings(max_examples=25)
@given(autos(), autos(), seqs())
def test_composition(first, second, seq):
    M = 12
    lhs = transform(second, transform(first, seq, M), M)
    rhs = transform(compose(first, second, seq, M), seq, M)
    assert lhs == rhs


@settings(max_examples=15)
@given(autos(), seqs(top=8))
def test_transform_keeps_lie(auto, seq):
    assert jacobi_check(lift(transform(auto, seq, 14)), 14).ok


@settings(max_examples=20)
@given(autos(), seqs(), st.integers(5, 13))
def test_transform_truncation_coherent(auto, seq, M):
    assert transform(auto, seq, 16).truncate(horizon(M)) == transform(auto, seq, M)
