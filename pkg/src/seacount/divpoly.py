"""Division polynomials of y^2 = x^3 + a x + b.

With y^2 eliminated, psi_k for odd k is a polynomial in x alone and
psi_k = 2y * f_k for even k.  Writing F = 16 (x^3 + a x + b)^2 = (2y)^4, the
f_k satisfy

    f_{2m+1} = F f_{m+2} f_m^3 - f_{m-1} f_{m+1}^3        (m even)
    f_{2m+1} = f_{m+2} f_m^3 - F f_{m-1} f_{m+1}^3        (m odd)
    f_{2m}   = f_m (f_{m+2} f_{m-1}^2 - f_{m-2} f_{m+1}^2)

so f_n needs only the indices m-2 .. m+2 with m = n // 2.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import is_prime
from .curve import CurveOverFp, INFINITY, points, scalar_mul
from .errors import InvalidArgumentError, ResourceLimitError
from .poly import FpPolynomial, pmul, psqr, psub, pscale


@dataclass(frozen=True)
class DivisionPolynomial:
    ell: int
    psi: FpPolynomial


def _f_table(E: CurveOverFp, n: int) -> list[int]:
    p, a, b = E.p, E.a, E.b
    memo: dict[int, list[int]] = {
        0: [],
        1: [1],
        2: [1],
        3: [(-a * a) % p, (12 * b) % p, (6 * a) % p, 0, 3 % p],
        4: [(-8 * b * b - a ** 3) % p, (-4 * a * b) % p, (-5 * a * a) % p,
            (20 * b) % p, (5 * a) % p, 0, 1],
    }
    memo[4] = [(2 * c) % p for c in memo[4]]
    while memo[4] and not memo[4][-1]:
        memo[4].pop()
    g = [b % p, a % p, 0, 1]
    F = pscale(psqr(g, p), 16, p)

    def f(k):
        if k in memo:
            return memo[k]
        m = k // 2
        if k % 2:
            t1 = pmul(f(m + 2), pmul(f(m), psqr(f(m), p), p), p)
            t2 = pmul(f(m - 1), pmul(f(m + 1), psqr(f(m + 1), p), p), p)
            if m % 2 == 0:
                t1 = pmul(F, t1, p)
            else:
                t2 = pmul(F, t2, p)
            out = psub(t1, t2, p)
        else:
            inner = psub(pmul(f(m + 2), psqr(f(m - 1), p), p),
                         pmul(f(m - 2), psqr(f(m + 1), p), p), p)
            out = pmul(f(m), inner, p)
        memo[k] = out
        return out

    return f(n)


def psi(E: CurveOverFp, ell: int) -> DivisionPolynomial:
    """The ell-th division polynomial, ell an odd prime different from p."""
    if ell < 3 or ell % 2 == 0 or not is_prime(ell):
        raise InvalidArgumentError(f"ell must be an odd prime, got {ell}")
    if ell == E.p:
        raise InvalidArgumentError("ell must differ from the characteristic")
    return DivisionPolynomial(ell, FpPolynomial(E.p, _f_table(E, ell)))


def torsion_scan_oracle(E: CurveOverFp, ell: int, limit: int = 1 << 12) -> set[int]:
    """x-coordinates of rational points Q != O with ell*Q = O, by exhaustive scan."""
    if ell < 2 or not is_prime(ell):
        raise InvalidArgumentError(f"ell must be prime, got {ell}")
    if E.p > limit:
        raise ResourceLimitError("p", E.p, limit)
    return {Q[0] for Q in points(E, limit) if scalar_mul(E, ell, Q, check=False) is INFINITY}
