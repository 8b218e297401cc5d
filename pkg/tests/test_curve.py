import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_curves
from seacount.arith import primes_in
from seacount.curve import (INFINITY, CurveOverFp, RationalCurve, TraceCertificate, add, is_supersingular,
                            j_invariant, naive_count, negate, points, random_point, reduce, scalar_mul)
from seacount.errors import BadReductionError, InvalidArgumentError, ResourceLimitError


def exhaustive_count(E):
    return 1 + sum(1 for x in range(E.p) for y in range(E.p) if (y * y - E.rhs(x)) % E.p == 0)


def test_point_examples():
    E = CurveOverFp(5, 1, 1)
    assert add(E, (0, 1), (0, 1)) == (4, 2)
    assert scalar_mul(E, 1, (0, 1)) == (0, 1)
    assert add(E, (0, 1), negate(E, (0, 1))) is INFINITY
    assert scalar_mul(E, 0, (0, 1)) is INFINITY


def test_off_curve_point_rejected():
    E = CurveOverFp(5, 1, 1)
    with pytest.raises(InvalidArgumentError):
        add(E, (0, 2), (0, 1))
    with pytest.raises(InvalidArgumentError):
        scalar_mul(E, 3, (1, 1))


def test_singular_curve_rejected():
    with pytest.raises(InvalidArgumentError):
        CurveOverFp(5, 0, 0)
    with pytest.raises(InvalidArgumentError):
        RationalCurve(-3, 2)
    with pytest.raises(InvalidArgumentError):
        CurveOverFp(3, 1, 1)


@pytest.mark.parametrize("p,a,b,N,t", [(5, 1, 1, 9, -3), (5, 0, 1, 6, 0), (7, 0, 1, 12, -4)])
def test_naive_count_examples(p, a, b, N, t):
    c = naive_count(CurveOverFp(p, a, b))
    assert (c.N, c.t, c.D, c.method) == (N, t, t * t - 4 * p, "naive")


def test_naive_count_matches_enumeration(rng):
    for p in (5, 7, 11, 13, 101, 211):
        for E in random_curves(p, 10, rng):
            assert naive_count(E).N == exhaustive_count(E)


def test_naive_count_budget():
    with pytest.raises(ResourceLimitError):
        naive_count(CurveOverFp(10007, 1, 1), limit=1000)


def test_j_invariant_examples():
    assert j_invariant(CurveOverFp(101, 0, 3)) == 0
    assert j_invariant(CurveOverFp(101, 7, 0)) == 1728 % 101
    assert j_invariant(CurveOverFp(5, 1, 1)) == 2


def test_reduce_examples():
    EQ = RationalCurve(1, 1)
    assert EQ.disc == -496
    assert reduce(EQ, 5) == CurveOverFp(5, 1, 1)
    for p in (31, 2, 3):
        with pytest.raises(BadReductionError) as exc:
            reduce(EQ, p)
        assert exc.value.p == p


def test_supersingular_examples():
    assert is_supersingular(CurveOverFp(5, 0, 1), random.Random(1))
    assert not is_supersingular(CurveOverFp(5, 1, 1), random.Random(1))
    assert not is_supersingular(CurveOverFp(7, 0, 1), random.Random(1))


def test_supersingular_independent_of_rng(rng):
    for p in (101, 103, 1009):
        for E in random_curves(p, 5, rng) + [CurveOverFp(p, 0, 1), CurveOverFp(p, 1, 0)]:
            want = naive_count(E).t == 0
            assert is_supersingular(E, random.Random(1)) == want == is_supersingular(E, random.Random(2))


def test_lagrange(rng):
    ps = primes_in(5, 1 << 12)
    for _ in range(100):
        p = rng.choice(ps)
        E = random_curves(p, 1, rng)[0]
        N = naive_count(E).N
        for _ in range(10):
            assert scalar_mul(E, N, random_point(E, rng)) is INFINITY


def test_isomorphic_curves_share_counts(rng):
    for p in (101, 4093, 65537):
        for E in random_curves(p, 5, rng):
            u = rng.randrange(1, p)
            F = CurveOverFp(p, E.a * u ** 4, E.b * u ** 6)
            assert naive_count(E).N == naive_count(F).N


@settings(deadline=None, max_examples=50)
@given(st.integers(0, 10 ** 6))
def test_group_law_associative(seed):
    r = random.Random(seed)
    E = random_curves(r.choice([101, 1009, 4093]), 1, r)[0]
    P, Q, R = (random_point(E, r) for _ in range(3))
    assert add(E, add(E, P, Q), R) == add(E, P, add(E, Q, R))


def test_points_enumeration():
    E = CurveOverFp(5, 1, 1)
    assert len(points(E)) + 1 == 9
    with pytest.raises(ResourceLimitError):
        points(CurveOverFp(10007, 1, 1))


def test_certificate_invariants():
    c = TraceCertificate.from_trace(5, -3, "naive")
    assert (c.N, c.D) == (9, -11)
    with pytest.raises(InvalidArgumentError):
        TraceCertificate.from_trace(5, 5, "naive")      # Hasse
    with pytest.raises(InvalidArgumentError):
        TraceCertificate(5, 8, -3, -11, "naive")       # N inconsistent
    with pytest.raises(InvalidArgumentError):
        TraceCertificate.from_trace(5, -3, "guess")
    from seacount.arith import ResidueSystem
    with pytest.raises(InvalidArgumentError):
        TraceCertificate.from_trace(5, -3, "schoof", ResidueSystem.from_pairs([(3, 1)]))
