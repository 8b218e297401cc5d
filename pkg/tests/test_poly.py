import random

import pytest
from hypothesis import given, settings, strategies as st

from seacount.arith import primes_in
from seacount.errors import InvalidArgumentError
from seacount.poly import (FpPolynomial, ModulusSplit, ResidueRing, equal_degree_factors, gcd, has_root,
                           modexp, modinv, mul, pmul, rem, roots_in_fp)

P = 10007
small_primes = st.sampled_from([5, 7, 11, 13, 101, 10007, (1 << 61) - 1])


def poly(p, *coeffs):
    return FpPolynomial(p, coeffs)


def polys(p, max_deg=12, nonzero=False):
    s = st.lists(st.integers(0, p - 1), min_size=1, max_size=max_deg + 1).map(lambda c: FpPolynomial(p, c))
    return s.filter(lambda f: not f.is_zero()) if nonzero else s


def schoolbook(a, b, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return FpPolynomial(p, out)


def test_representation_is_normalised():
    assert poly(5, 1, 2, 0, 5).coeffs == (1, 2)
    assert poly(5).is_zero() and poly(5).coeffs == ()
    assert poly(7, -1).coeffs == (6,)


def test_ring_examples():
    assert gcd(poly(7, -1, 0, 1), poly(7, -1, 1)) == poly(7, 6, 1)
    assert mul(poly(5, 1, 1), poly(5, 4, 1)) == poly(5, 4, 0, 1)
    assert rem(poly(5, 0, 0, 0, 1), poly(5, 1, 0, 1)) == poly(5, 0, 4)


def test_modulus_mismatch_and_division_by_zero():
    with pytest.raises(InvalidArgumentError):
        mul(poly(5, 1, 1), poly(7, 1, 1))
    with pytest.raises(InvalidArgumentError):
        rem(poly(5, 1, 1), poly(5))


def test_gcd_with_zero_is_monic():
    assert gcd(poly(7, 2, 4), poly(7)) == poly(7, 4, 1)


def test_modexp_examples():
    assert modexp(poly(5, 0, 1), 5, poly(5, 1, 0, 1)) == poly(5, 0, 1)
    assert modexp(poly(5, 3, 2, 1), 0, poly(5, 1, 0, 1)) == poly(5, 1)
    assert modexp(poly(5, 0, 1), 5, poly(5, -2, 1)) == poly(5, 2)


def test_modinv_examples():
    assert modinv(poly(5, 0, 1), poly(5, 1, 0, 1)) == poly(5, 0, 4)
    m = poly(11, 3, 4, 5, 1)
    assert modinv(poly(11, 1), m) == poly(11, 1)
    with pytest.raises(ModulusSplit) as exc:
        modinv(poly(7, -1, 1), poly(7, -1, 0, 1))
    assert exc.value.factor == poly(7, 6, 1)


def test_modinv_of_zero_residue():
    with pytest.raises(InvalidArgumentError):
        modinv(poly(5, 1, 0, 1), poly(5, 1, 0, 1))


def test_roots_examples():
    assert roots_in_fp(poly(5, 1, 0, 1)) == [2, 3]
    assert roots_in_fp(poly(7, 1, 0, 1)) == []
    assert roots_in_fp(poly(P, -1234, 1)) == [1234]
    assert roots_in_fp(poly(P, 0, 0, 1)) == [0]
    assert not has_root(poly(7, 1, 0, 1)) and has_root(poly(5, 1, 0, 1))


def test_roots_of_zero_polynomial():
    with pytest.raises(InvalidArgumentError):
        roots_in_fp(poly(5))


@settings(deadline=None)
@given(small_primes.flatmap(lambda p: st.tuples(polys(p), polys(p), polys(p, nonzero=True))))
def test_mul_compatible_with_rem(fgh):
    f, g, h = fgh
    assert rem(f * g, h) == rem(rem(f, h) * rem(g, h), h)


@settings(deadline=None)
@given(small_primes.flatmap(lambda p: st.tuples(polys(p, 80), polys(p, 80))))
def test_kronecker_matches_schoolbook(fg):
    f, g = fg
    assert f * g == schoolbook(list(f.coeffs), list(g.coeffs), f.p)


def test_kronecker_large_degree():
    r = random.Random(1)
    p = (1 << 61) - 1
    a = [r.randrange(p) for _ in range(300)]
    b = [r.randrange(p) for _ in range(250)]
    assert FpPolynomial(p, pmul(a, b, p)) == schoolbook(a, b, p)


@settings(deadline=None)
@given(small_primes.flatmap(lambda p: st.tuples(polys(p, 10, True), polys(p, 10, True), polys(p, 4, True))))
def test_gcd_divides_both(fgc):
    f, g, c = fgc
    f, g = f * c, g * c
    d = gcd(f, g)
    assert d.lc == 1
    assert rem(f, d).is_zero() and rem(g, d).is_zero()
    assert rem(d, c.monic()).is_zero()


@settings(deadline=None)
@given(small_primes.flatmap(lambda p: st.tuples(polys(p, 8), st.integers(0, 64), polys(p, 6, True)
                                                 .filter(lambda m: m.degree >= 1))))
def test_modexp_matches_iterated_mul(args):
    f, e, m = args
    want = poly(f.p, 1)
    for _ in range(e):
        want = rem(want * f, m)
    assert modexp(f, e, m) == rem(want, m)


@settings(deadline=None, max_examples=60)
@given(st.sampled_from(primes_in(5, 10 ** 4)), st.data())
def test_roots_match_exhaustive_evaluation(p, data):
    f = data.draw(polys(p, 8, nonzero=True))
    want = [x for x in range(p) if f(x) == 0] if f.degree > 0 else []
    assert roots_in_fp(f, random.Random(1)) == want
    assert roots_in_fp(f, random.Random(2)) == want


def test_roots_of_split_polynomial():
    r = random.Random(5)
    p = (1 << 61) - 1
    rs = sorted({r.randrange(p) for _ in range(40)})
    f = FpPolynomial.from_roots(p, rs + rs[:5])
    assert roots_in_fp(f, r) == rs


def test_residue_ring_reduce_and_inverse():
    r = random.Random(7)
    p = 10007
    m = [r.randrange(p) for _ in range(60)] + [1]
    R = ResidueRing(m, p)
    a = [r.randrange(p) for _ in range(150)]
    assert FpPolynomial(p, R.reduce(a)) == rem(FpPolynomial(p, a), FpPolynomial(p, m))
    b = [r.randrange(p) for _ in range(60)]
    try:
        inv = R.inv(b)
    except ModulusSplit:
        return
    assert R.mul(inv, b) == [1]


def test_equal_degree_factors():
    from seacount.arith import jacobi
    p = 103
    r = random.Random(3)
    fs = []
    while len(fs) < 4:
        b, c = r.randrange(p), r.randrange(p)
        if jacobi(b * b - 4 * c, p) == -1 and [c, b, 1] not in fs:
            fs.append([c, b, 1])
    f = [1]
    for g in fs:
        f = pmul(f, g, p)
    assert sorted(equal_degree_factors(f, 2, p, r)) == sorted(fs)
