"""Elkies primes: detection, kernel polynomials, and the eigenvalue search."""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from math import factorial

from .curve import CurveOverFp, j_invariant
from .errors import DegenerateIsogenyError, InvalidArgumentError
from .divpoly import psi
from .modpoly import instantiate, instantiate_partials, load
from .poly import (FpPolynomial, ModulusSplit, ResidueRing, equal_degree_factors, has_root, padd,
                   pderiv, pdivmod, pgcd, pmonic, pmul, psub, roots_in_fp)
from .schoof import CostMeter, TorsionContext, _shrink, endo_add, frobenius, identity, search_multiple


class PrimeClass(enum.Enum):
    ELKIES = "Elkies"
    ATKIN = "Atkin"
    RAMIFIED = "Ramified"
    EXCLUDED = "Excluded"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class KernelPolynomial:
    ell: int
    h: FpPolynomial
    jtilde: int


def _check_ell(E, ell):
    if ell < 3 or ell % 2 == 0:
        raise InvalidArgumentError(f"ell must be an odd prime, got {ell}")
    if ell == E.p:
        raise InvalidArgumentError("ell must differ from the characteristic")


def modular_instance(E: CurveOverFp, ell: int, data_dir=None) -> FpPolynomial:
    """phi_ell(Y) = Phi_ell(j(E), Y) over F_p."""
    return instantiate(load(ell, data_dir), j_invariant(E), E.p)


def is_elkies(E: CurveOverFp, ell: int, rng: random.Random | None = None,
              data_dir=None, meter: CostMeter | None = None) -> PrimeClass:
    """ELKIES iff Phi_ell(j(E), Y) has a root in F_p, else ATKIN."""
    _check_ell(E, ell)
    phi = modular_instance(E, ell, data_dir)
    if meter is not None:
        # X^p mod phi: about 1.5 log2 p products at degree ell + 1
        meter.units += int(1.5 * E.p.bit_length()) * (ell + 1)
    return PrimeClass.ELKIES if has_root(phi) else PrimeClass.ATKIN


def weierstrass_coefficients(a: int, b: int, count: int, p: int) -> list[int]:
    """c_1 .. c_count of the Laurent expansion z^-2 + sum c_k z^(2k) of the
    Weierstrass function of y^2 = x^3 + a x + b."""
    c = [0] * (count + 1)
    if count >= 1:
        c[1] = -a * pow(5, -1, p) % p
    if count >= 2:
        c[2] = -b * pow(7, -1, p) % p
    for k in range(3, count + 1):
        s = sum(c[h] * c[k - 1 - h] for h in range(1, k - 1))
        c[k] = 3 * s * pow((k - 2) * (2 * k + 3), -1, p) % p
    return c[1:]


def _inv(x, p, what):
    if x % p == 0:
        raise DegenerateIsogenyError(f"{what} vanishes")
    return pow(x, -1, p)


def _isogenous_data(E, ell, phi_data, jt):
    """Coefficients (at, bt) of the normalised isogenous curve and the sum of
    the abscissae of the ell - 1 nonzero kernel points."""
    p = E.p
    j = j_invariant(E)
    part = instantiate_partials(phi_data, j, jt, p)
    e4 = -E.a * pow(3, -1, p) % p
    e6 = -E.b * pow(2, -1, p) % p
    dj = -e6 * j * _inv(e4, p, "E4") % p
    djt = -dj * part.dX * _inv(ell * part.dY, p, "Phi_Y(j, jt)") % p
    e4t = djt * djt * _inv(jt * (jt - 1728), p, "jt (jt - 1728)") % p
    e6t = -e4t * djt * _inv(jt, p, "jt") % p
    at = -3 * pow(ell, 4, p) * e4t % p
    bt = -2 * pow(ell, 6, p) * e6t % p
    big_j = -(dj * dj * part.dXX + 2 * ell * dj * djt * part.dXY
              + ell * ell * djt * djt * part.dYY) * _inv(dj * part.dX, p, "j' Phi_X") % p
    p1 = (ell * big_j * pow(2, -1, p)
          + ell * pow(4, -1, p) * (e4 * e4 * _inv(e6, p, "E6")
                                   - ell * e4t * e4t * _inv(e6t, p, "isogenous E6"))
          + ell * pow(3, -1, p) * (e6 * _inv(e4, p, "E4")
                                   - ell * e6t * _inv(e4t, p, "isogenous E4"))) % p
    # p1 is in the modular-form normalisation; rescale to abscissae of E
    return at, bt, -12 * p1 % p


def kernel_from_isogeny(E: CurveOverFp, ell: int, at: int, bt: int, xsum: int) -> FpPolynomial:
    """Kernel polynomial from the codomain (at, bt) and the sum xsum of the
    abscissae of the ell - 1 nonzero kernel points.

    Comparing the expansions of the two Weierstrass functions gives the power
    sums of the (ell - 1)/2 kernel abscissae; Newton's identities finish.
    """
    p = E.p
    d = (ell - 1) // 2
    c = weierstrass_coefficients(E.a, E.b, d - 1, p)
    ct = weierstrass_coefficients(at, bt, d - 1, p)
    sums = [d % p, xsum * pow(2, -1, p) % p]
    # q = T^n(x) with T g = 4 f_E g'' + (6 x^2 + 2 a) g'
    four_f = [4 * E.b % p, 4 * E.a % p, 0, 4]
    dterm = [2 * E.a % p, 0, 6]
    q = [0, 1]
    for n in range(1, d):
        dq = pderiv(q, p)
        q = padd(pmul(four_f, pderiv(dq, p), p), pmul(dterm, dq, p), p)
        rhs = factorial(2 * n) * pow(2, -1, p) * (ct[n - 1] - c[n - 1]) % p
        known = sum(q[k] * sums[k] for k in range(min(len(q), n + 1)))
        lead = q[n + 1] if len(q) > n + 1 else 0
        sums.append((rhs - known) * _inv(lead, p, "leading power-sum coefficient") % p)
    # Newton's identities: k e_k = sum_{i=1}^k (-1)^(i-1) e_{k-i} S_i
    e = [1]
    for k in range(1, d + 1):
        acc = sum((-1) ** (i - 1) * e[k - i] * sums[i] for i in range(1, k + 1))
        e.append(acc * pow(k, -1, p) % p)
    h = [0] * (d + 1)
    for k in range(d + 1):
        h[d - k] = (-1) ** k * e[k] % p
    return FpPolynomial(p, h)


def kernel_polynomial(E: CurveOverFp, ell: int, rng: random.Random | None = None,
                      data_dir=None, meter: CostMeter | None = None,
                      torsion_fallback: bool = True) -> KernelPolynomial:
    """Kernel polynomial of a rational ell-isogeny from E.

    Roots of phi_ell are tried in ascending order, skipping repeated roots.
    When none of them gives a usable isogeny the kernel is searched for among
    the factors of psi_ell (``torsion_fallback``, as costly as Schoof's method
    for this ell); otherwise DegenerateIsogenyError is raised.
    """
    _check_ell(E, ell)
    p = E.p
    j = j_invariant(E)
    if j in (0, 1728 % p):
        raise DegenerateIsogenyError("j(E) is 0 or 1728")
    rng = rng or random.Random(0)
    data = load(ell, data_dir)
    phi = instantiate(data, j, p)
    roots = roots_in_fp(phi, rng)
    if meter is not None:
        meter.units += 2 * int(1.5 * p.bit_length()) * (ell + 1)
    if not roots:
        raise InvalidArgumentError(f"{ell} is not an Elkies prime for this curve")
    try:
        return _kernel_from_modular(E, ell, data, phi, roots)
    except DegenerateIsogenyError:
        if not torsion_fallback:
            raise
    h, jt = _kernel_from_torsion(E, ell, rng)
    return KernelPolynomial(ell, h, jt)


def _kernel_from_modular(E, ell, data, phi, roots):
    p = E.p
    if p < ell:
        # the expansion divides by integers up to ell
        raise DegenerateIsogenyError(f"p = {p} too small for the expansion at ell = {ell}")
    dphi = phi.derivative()
    last = None
    for jt in roots:
        if dphi(jt) == 0:
            last = DegenerateIsogenyError(f"j~ = {jt} is a repeated root")
            continue
        try:
            at, bt, xsum = _isogenous_data(E, ell, data, jt)
            h = kernel_from_isogeny(E, ell, at, bt, xsum)
        except DegenerateIsogenyError as exc:
            last = exc
            continue
        if h.degree != (ell - 1) // 2:
            last = DegenerateIsogenyError("kernel polynomial has the wrong degree")
            continue
        return KernelPolynomial(ell, h, jt)
    raise last or DegenerateIsogenyError("no usable isogenous j-invariant")


def _subgroup_polynomial(E, g, ell):
    """prod_{k=1}^{d} (Z - x(kP)) for P a point with x(P) a root of the
    irreducible g, or None when the coefficients are not all in F_p (the
    subgroup generated by P is not rational)."""
    p = E.p
    ctx = TorsionContext(E, g)
    R = ctx.ring
    P = identity(ctx)
    cur = P
    h = [[1]]                       # coefficients in F_p[X]/(g), lowest first
    for k in range(1, (ell - 1) // 2 + 1):
        if k > 1:
            cur = endo_add(cur, P)
        if cur.is_zero:
            return None
        # multiply h by (Z - alpha)
        nxt = [[]] + h
        for i, c in enumerate(h):
            nxt[i] = R.sub(nxt[i], R.mul(c, cur.alpha))
        h = nxt
    if any(len(c) > 1 for c in h):
        return None
    return FpPolynomial(p, [c[0] if c else 0 for c in h])


def _isogenous_j(E, h):
    """j-invariant of the codomain, by Velu's formulas from the kernel abscissae."""
    p = E.p
    c = h.coeffs
    d = len(c) - 1
    e = [1] + [(-1) ** k * c[d - k] % p for k in range(1, d + 1)] + [0, 0, 0]
    sums = [d]
    for k in range(1, 4):
        acc = (-1) ** (k - 1) * k * e[k]
        for i in range(1, k):
            acc += (-1) ** (i - 1) * e[i] * sums[k - i]
        sums.append(acc % p)
    t = 6 * sums[2] + 2 * d * E.a
    w = 10 * sums[3] + 6 * E.a * sums[1] + 4 * d * E.b
    return j_invariant(CurveOverFp(p, E.a - 5 * t, E.b - 7 * w))


def _kernel_from_torsion(E, ell, rng):
    """A kernel polynomial read off the factorisation of psi_ell."""
    p = E.p
    d = (ell - 1) // 2
    F = pmonic(list(psi(E, ell).psi.coeffs), p)
    ring = ResidueRing(F, p)
    xq = [0, 1]
    for r in range(1, d + 1):
        xq = ring.pow(xq, p)
        G = pgcd(F, psub(xq, [0, 1], p), p)
        if len(G) > 1:
            if d % r == 0:
                for g in equal_degree_factors(G, r, p, rng):
                    h = _subgroup_polynomial(E, g, ell)
                    if h is not None:
                        return h, _isogenous_j(E, h)
            F = pdivmod(F, G, p)[0]
            if len(F) == 1:
                break
            ring = ResidueRing(F, p)
            xq = ring.reduce(xq)
    raise DegenerateIsogenyError(f"no rational {ell}-isogeny kernel found in psi_{ell}")


def eigenvalue(E: CurveOverFp, ell: int, kp: KernelPolynomial,
               meter: CostMeter | None = None) -> int:
    """lambda with Frobenius acting as [lambda] on the isogeny kernel."""
    m = list(kp.h.coeffs)
    while True:
        ctx = TorsionContext(E, m)
        before = ctx.ring.ops
        try:
            return search_multiple(frobenius(E, ctx), identity(ctx), ell)
        except ModulusSplit as split:
            m = _shrink(ctx.ring, split)
        finally:
            if meter is not None:
                meter.charge(ctx.ring, before)


def elkies_trace(E: CurveOverFp, ell: int, kp: KernelPolynomial,
                 meter: CostMeter | None = None) -> int:
    """t mod ell as lambda + p / lambda."""
    lam = eigenvalue(E, ell, kp, meter)
    return (lam + E.p * pow(lam, -1, ell)) % ell
