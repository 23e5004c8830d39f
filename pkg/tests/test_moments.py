import math
from fractions import Fraction as F

import pytest

from charex.errors import Inconsistent, InsufficientMoments, InsufficientSeeds, MissingSeed, ValidationError
from charex.mixture import Family, MuVector, check_condition, theta_exponential, theta_laplace
from charex.moments import (
    MomentSeq,
    classify_from_seed,
    forward_moments,
    moment_of_sum,
    reconstruct_moments,
    recursion_denominator,
)
from charex.symfunc import compositions, multinomial

from conftest import LAMBDAS, mixed_battery, positive_battery


def brute_moment_of_sum(mu, moments, m):
    total = F(0)
    for c in compositions(len(mu), m):
        term = F(multinomial(c))
        for a, k in zip(mu, c):
            term *= a**k * moments[k]
        total += term
    return total


def test_moment_of_sum_example():
    mu = MuVector([1, 2])
    exp_moments = [1, 1, 2]
    assert moment_of_sum(mu, exp_moments, 2) == 14
    # Var(X1 + 2 X2) + E^2 = (1 + 4) + 3^2 for unit exponentials
    assert moment_of_sum(mu, exp_moments, 2) == 5 + 9
    assert moment_of_sum(mu, exp_moments, 0) == 1
    assert moment_of_sum(mu, [1, F(2, 7)], 1) == F(2, 7) * 3


def test_moment_of_sum_against_composition_enumeration():
    for mu in mixed_battery(15, seed=3):
        moments = forward_moments("exp", F(3, 2), 9).values
        for m in range(10):
            assert moment_of_sum(mu, moments, m) == brute_moment_of_sum(mu.entries, moments, m)


def test_moment_of_sum_needs_moments():
    with pytest.raises(InsufficientMoments):
        moment_of_sum([1, 2], [1, 1], 2)


def test_forward_moments():
    assert forward_moments("exp", 1, 4).values == (1, 1, 2, 6, 24)
    assert forward_moments("laplace", 1, 4).values == (1, 0, 2, 0, 24)
    assert forward_moments(Family.EXPONENTIAL, 2, 2).values == (1, F(1, 2), F(1, 2))
    with pytest.raises(ValidationError):
        forward_moments("exp", 0, 3)


def test_moment_seq_invariants():
    with pytest.raises(ValidationError):
        MomentSeq((2, 1))
    with pytest.raises(ValidationError):
        MomentSeq((1, 2, 3), Family.EXPONENTIAL)


def test_reconstruct_exponential():
    mu = MuVector([1, 2])
    seq, steps = reconstruct_moments(mu, theta_exponential(mu), {1: 1}, 10)
    assert seq.values == tuple(F(math.factorial(m)) for m in range(11))
    assert all(s.outcome == "Solved" for s in steps)
    assert seq.values == forward_moments("exp", 1, 10).values


def test_reconstruct_degenerate_seed():
    mu = MuVector([1, 2])
    seq, _ = reconstruct_moments(mu, theta_exponential(mu), {1: 0}, 10)
    assert seq.values == (1,) + (0,) * 10


def test_reconstruct_laplace_singular_step():
    mu = MuVector([1, 2], Family.LAPLACE)
    seq, steps = reconstruct_moments(mu, theta_laplace(mu), {1: 0, 2: 2}, 4)
    assert steps[0].to_json() == {"m": 2, "D": "0", "R": "0", "outcome": "SingularConsistent"}
    # D_4 = h_2(1, 4) - p_4 = 21 - 17 and R_4 = 6 mu1^2 mu2^2 M_2^2 = 96
    assert (steps[2].denominator, steps[2].rhs) == (4, 96)
    assert seq.values == (1, 0, 2, 0, 24) == forward_moments("laplace", 1, 4).values


def test_laplace_missing_seed_and_inconsistency():
    mu = MuVector([1, 2], Family.LAPLACE)
    with pytest.raises(MissingSeed) as info:
        reconstruct_moments(mu, theta_laplace(mu), {1: 0}, 4)
    assert info.value.m == 2
    with pytest.raises(Inconsistent) as info:
        reconstruct_moments(mu, theta_laplace(mu), {1: 1}, 4)
    assert info.value.m == 2 and info.value.rhs == 4


def test_first_seed_required():
    mu = MuVector([1, 2])
    with pytest.raises(InsufficientSeeds):
        reconstruct_moments(mu, theta_exponential(mu), {2: 2}, 4)


def test_forward_consistency_of_each_step():
    for mu in mixed_battery(20, seed=5):
        theta = theta_exponential(mu)
        for lam in (F(1, 2), F(3)):
            moments = forward_moments("exp", lam, 16).values
            for m in range(17):
                lhs = moment_of_sum(mu, moments, m)
                rhs = sum((t * a**m for t, a in zip(theta, mu)), F(0)) * moments[m]
                assert lhs == rhs


def test_denominator_vanishes_exactly_where_condition_fails():
    battery = mixed_battery(40, seed=9) + [MuVector([1, -1]), MuVector([1, 2, F(-2, 3)]), MuVector([3, -3, 1])]
    for mu in battery:
        theta = theta_exponential(mu)
        zeros = [m for m in range(2, 17) if recursion_denominator(theta, m) == 0]
        rep = check_condition(mu, 16)
        if zeros:
            assert (rep.verdict, rep.m) == ("FailAt", zeros[0])
        else:
            assert rep.passed


def test_uniqueness_for_random_mu():
    for mu, lam in zip(mixed_battery(10, seed=21), LAMBDAS * 2):
        if not check_condition(mu, 12).passed:
            continue
        seq, _ = reconstruct_moments(mu, theta_exponential(mu), {1: 1 / lam}, 12)
        assert seq.values == forward_moments("exp", lam, 12).values
        assert seq[2] * seq[0] >= seq[1] ** 2
    for mu, lam in zip(positive_battery(8, seed=22), LAMBDAS * 2):
        seq, _ = reconstruct_moments(mu.with_family("laplace"), theta_laplace(mu), {1: 0, 2: 2 / lam**2}, 12)
        assert seq.values == forward_moments("laplace", lam, 12).values


def test_inconsistency_for_nonzero_laplace_mean():
    for mu in positive_battery(8, seed=23):
        with pytest.raises(Inconsistent) as info:
            reconstruct_moments(mu, theta_laplace(mu), {1: F(1, 5)}, 6)
        assert info.value.m == 2


def test_classify_from_seed():
    assert classify_from_seed(0).kind == "Degenerate"
    assert classify_from_seed(F(1, 3)) == ("ExponentialWith", 3)
    assert classify_from_seed(-2) == ("NegExponentialWith", F(1, 2))
