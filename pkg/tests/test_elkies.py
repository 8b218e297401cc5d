import pytest

from conftest import random_curves
from seacount.arith import jacobi, primes_in
from seacount.curve import CurveOverFp, is_supersingular, j_invariant, naive_count
from seacount.divpoly import psi, torsion_scan_oracle
from seacount.elkies import (PrimeClass, eigenvalue, elkies_trace, is_elkies,
                             kernel_polynomial, weierstrass_coefficients)
from seacount.errors import DegenerateIsogenyError, InvalidArgumentError
from seacount.poly import rem, roots_in_fp
from seacount.schoof import trace_mod_ell

E5 = CurveOverFp(5, 1, 1)


@pytest.mark.parametrize("ell,want", [(3, PrimeClass.ELKIES), (7, PrimeClass.ATKIN), (11, PrimeClass.ELKIES)])
def test_is_elkies_examples(ell, want):
    assert is_elkies(E5, ell) is want


def test_prime_class_str():
    assert str(PrimeClass.ELKIES) == "Elkies" and str(PrimeClass.ATKIN) == "Atkin"


def test_kernel_example():
    kp = kernel_polynomial(E5, 3)
    assert kp.h.degree == 1
    assert rem(psi(E5, 3).psi, kp.h).is_zero()
    assert elkies_trace(E5, 3, kp) == 0


def test_j_zero_rejected():
    with pytest.raises(DegenerateIsogenyError):
        kernel_polynomial(CurveOverFp(7, 0, 1), 3)


def test_atkin_prime_has_no_kernel():
    with pytest.raises(InvalidArgumentError):
        kernel_polynomial(E5, 7)


def test_weierstrass_coefficients_small():
    # c2 = -a/5, c3 = -b/7, c4 = c2^2/3
    p = 101
    c = weierstrass_coefficients(3, 7, 4, p)
    assert c[0] == -3 * pow(5, -1, p) % p
    assert c[1] == -7 * pow(7, -1, p) % p
    assert c[2] == c[0] * c[0] * pow(3, -1, p) % p


def ordinary_generic(p, count, rng):
    out = []
    while len(out) < count:
        E = random_curves(p, 1, rng)[0]
        if j_invariant(E) not in (0, 1728 % p) and not is_supersingular(E):
            out.append(E)
    return out


def test_classification_matches_discriminant(rng):
    ps = primes_in(67, 1 << 12)
    for _ in range(60):
        p = rng.choice(ps)
        E = ordinary_generic(p, 1, rng)[0]
        D = naive_count(E).D
        for ell in (3, 5, 7, 11, 13, 17, 19, 23):
            want = PrimeClass.ELKIES if jacobi(D, ell) >= 0 else PrimeClass.ATKIN
            assert is_elkies(E, ell) is want


def test_kernel_polynomials_on_sweep(rng):
    ps = primes_in(67, 1 << 12)
    done = 0
    for _ in range(80):
        p = rng.choice(ps)
        E = ordinary_generic(p, 1, rng)[0]
        t = naive_count(E).t
        for ell in (3, 5, 7, 11, 13):
            if is_elkies(E, ell) is PrimeClass.ATKIN:
                continue
            kp = kernel_polynomial(E, ell, rng)
            assert kp.h.degree == (ell - 1) // 2 and kp.h.lc == 1
            assert rem(psi(E, ell).psi, kp.h).is_zero()
            lam = eigenvalue(E, ell, kp)
            r = elkies_trace(E, ell, kp)
            assert r == t % ell == trace_mod_ell(E, ell)
            assert (lam * lam - r * lam + p) % ell == 0
            done += 1
    assert done > 100


def test_rational_kernel_roots_are_torsion(rng):
    """Every F_p-rational kernel abscissa with a rational y is an ell-torsion x."""
    hits = 0
    for p in (1009, 2003, 4049):
        for E in ordinary_generic(p, 15, rng):
            for ell in (3, 5, 7):
                if is_elkies(E, ell) is PrimeClass.ATKIN:
                    continue
                scan = torsion_scan_oracle(E, ell)
                for x in roots_in_fp(kernel_polynomial(E, ell, rng).h, rng):
                    y2 = (x ** 3 + E.a * x + E.b) % p
                    if pow(y2, (p - 1) // 2, p) == 1:
                        assert x in scan
                        hits += 1
    assert hits > 0


def test_large_prime_agrees_with_schoof(rng):
    p = (1 << 61) - 1
    for E in ordinary_generic(p, 3, rng):
        for ell in (3, 5, 7, 11):
            if is_elkies(E, ell) is PrimeClass.ELKIES:
                assert elkies_trace(E, ell, kernel_polynomial(E, ell, rng)) == trace_mod_ell(E, ell)


def test_degenerate_without_fallback():
    # F_5 (1, 1) at ell = 3: the modular route meets a repeated root
    with pytest.raises(DegenerateIsogenyError):
        kernel_polynomial(E5, 3, torsion_fallback=False)
