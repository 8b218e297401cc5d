"""Schoof's algorithm on End(E[ell]).

An endomorphism of E[ell] (or of the part of it cut out by a factor of the
division polynomial) is stored as a pair of residues (alpha, beta) standing for
(alpha(X), beta(X) * Y) in F_p[X, Y] / (m(X), Y^2 - f_E(X)), or as the zero
endomorphism.  Sums use the affine group law; a zero divisor met while
inverting raises :class:`ModulusSplit`, and the search restarts on the factor.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .arith import ResidueSystem, crt_balanced
from .curve import CurveOverFp, INFINITY, TraceCertificate
from .divpoly import psi
from .errors import InternalDefectError, InvalidArgumentError, ResourceLimitError
from .poly import FpPolynomial, ModulusSplit, ResidueRing, pdivmod, peval, pgcd, pscale

MAX_ELL = 257


class CostMeter:
    """Counts modular multiplications weighted by the modulus degree."""

    __slots__ = ("units",)

    def __init__(self):
        self.units = 0

    def charge(self, ring: ResidueRing, before: int):
        self.units += (ring.ops - before) * ring.n


class TorsionContext:
    """The ring F_p[X]/(m) together with the curve it acts on."""

    def __init__(self, E: CurveOverFp, modulus):
        if isinstance(modulus, FpPolynomial):
            modulus = list(modulus.coeffs)
        self.E = E
        self.ring = ResidueRing(modulus, E.p)
        self.f = self.ring.reduce(list(E.rhs_coeffs()))

    @property
    def modulus(self) -> FpPolynomial:
        return FpPolynomial(self.E.p, self.ring.m)


@dataclass(eq=False)
class TorsionEndomorphism:
    ctx: TorsionContext
    alpha: list | None = None       # None means the zero endomorphism
    beta: list | None = None

    @property
    def is_zero(self) -> bool:
        return self.alpha is None

    def __eq__(self, other):
        if not isinstance(other, TorsionEndomorphism):
            return NotImplemented
        return self.alpha == other.alpha and self.beta == other.beta


def zero(ctx: TorsionContext) -> TorsionEndomorphism:
    return TorsionEndomorphism(ctx)


def identity(ctx: TorsionContext) -> TorsionEndomorphism:
    return TorsionEndomorphism(ctx, ctx.ring.reduce([0, 1]), [1])


def negate(u: TorsionEndomorphism) -> TorsionEndomorphism:
    if u.is_zero:
        return u
    return TorsionEndomorphism(u.ctx, u.alpha, u.ctx.ring.neg(u.beta))


def _split_from(ring, diff):
    g = pgcd(ring.m, diff, ring.p)
    if 1 < len(g) < len(ring.m):
        return ModulusSplit(FpPolynomial(ring.p, g))
    return None


def endo_add(u: TorsionEndomorphism, v: TorsionEndomorphism) -> TorsionEndomorphism:
    """u + v via the chord/tangent law; may raise ModulusSplit."""
    if u.ctx is not v.ctx:
        if u.ctx.ring.m != v.ctx.ring.m or u.ctx.E != v.ctx.E:
            raise InvalidArgumentError("endomorphisms live on different torsion moduli")
    if u.is_zero:
        return v
    if v.is_zero:
        return u
    ctx = u.ctx
    R = ctx.ring
    if u.alpha == v.alpha:
        if R.add(u.beta, v.beta) == []:
            return zero(ctx)
        if u.beta != v.beta:
            # equal x everywhere, y agrees only on part of the torsion
            split = _split_from(R, R.sub(u.beta, v.beta))
            if split is None:
                raise InternalDefectError("alpha parts agree but beta parts are unrelated")
            raise split
        # tangent: lambda = (3 alpha^2 + a) / (2 beta f) * Y
        num = R.add(pscale(R.sqr(u.alpha), 3, R.p), [ctx.E.a] if ctx.E.a else [])
        den = R.mul(pscale(u.beta, 2, R.p), ctx.f)
        lam = R.mul(num, R.inv(den))
        x3 = R.sub(R.mul(R.sqr(lam), ctx.f), pscale(u.alpha, 2, R.p))
    else:
        lam = R.mul(R.sub(v.beta, u.beta), R.inv(R.sub(v.alpha, u.alpha)))
        x3 = R.sub(R.sub(R.mul(R.sqr(lam), ctx.f), u.alpha), v.alpha)
    y3 = R.sub(R.mul(lam, R.sub(u.alpha, x3)), u.beta)
    return TorsionEndomorphism(ctx, x3, y3)


def endo_scalar(k: int, u: TorsionEndomorphism) -> TorsionEndomorphism:
    if k < 0:
        return endo_scalar(-k, negate(u))
    result = zero(u.ctx)
    if k == 0:
        return result
    for bit in bin(k)[2:]:
        result = endo_add(result, result)
        if bit == "1":
            result = endo_add(result, u)
    return result


def frobenius(E: CurveOverFp, modulus) -> TorsionEndomorphism:
    """(X^p, f_E(X)^((p-1)/2) Y) modulo the given polynomial."""
    ctx = modulus if isinstance(modulus, TorsionContext) else TorsionContext(E, modulus)
    R = ctx.ring
    return TorsionEndomorphism(ctx, R.pow([0, 1], E.p), R.pow(ctx.f, (E.p - 1) // 2))


def frobenius_square(pi: TorsionEndomorphism) -> TorsionEndomorphism:
    """pi o pi: coefficients lie in F_p, so alpha(X^p) = alpha(X)^p."""
    R = pi.ctx.ring
    p = pi.ctx.E.p
    return TorsionEndomorphism(pi.ctx, R.pow(pi.alpha, p), R.mul(R.pow(pi.beta, p), pi.beta))


def endo_eval_oracle(u: TorsionEndomorphism, Q):
    """Image of a rational torsion point Q with m(x(Q)) = 0."""
    ctx = u.ctx
    p = ctx.E.p
    if Q is INFINITY:
        return INFINITY
    x0, y0 = Q
    if peval(ctx.ring.m, x0, p) != 0:
        raise InvalidArgumentError(f"x = {x0} is not a root of the torsion modulus")
    if u.is_zero:
        return INFINITY
    return (peval(u.alpha, x0, p), peval(u.beta, x0, p) * y0 % p)


def _shrink(ring, split: ModulusSplit):
    g = list(split.factor.coeffs)
    h = pdivmod(ring.m, g, ring.p)[0]
    return g if len(g) <= len(h) else h


def search_multiple(target: TorsionEndomorphism, step: TorsionEndomorphism, ell: int) -> int:
    """The residue m mod ell with target = m * step, looking at m = 1 .. (ell-1)/2
    and resolving the sign from the beta parts."""
    R = target.ctx.ring
    cur = step
    for m in range(1, (ell - 1) // 2 + 1):
        if m > 1:
            cur = endo_add(cur, step)
        if cur.alpha == target.alpha:
            if cur.beta == target.beta:
                return m
            if R.add(cur.beta, target.beta) == []:
                return ell - m
            split = _split_from(R, R.sub(cur.beta, target.beta))
            if split is not None:
                raise split
            raise InternalDefectError("matching abscissa with unrelated ordinate")
    raise InternalDefectError(f"no multiple matched modulo {ell}")


def _trace_on(E, ell, modulus, meter):
    ctx = TorsionContext(E, modulus)
    before = ctx.ring.ops
    try:
        pi = frobenius(E, ctx)
        pi2 = frobenius_square(pi)
        w = endo_add(pi2, endo_scalar(E.p % ell, identity(ctx)))
        if w.is_zero:
            return 0
        return search_multiple(w, pi, ell)
    finally:
        if meter is not None:
            meter.charge(ctx.ring, before)


def trace_mod_ell(E: CurveOverFp, ell: int, rng: random.Random | None = None,
                  modulus=None, meter: CostMeter | None = None,
                  max_ell: int = MAX_ELL) -> int:
    """t mod ell from the characteristic equation of Frobenius on E[ell].

    ``modulus`` defaults to psi_ell; any nonconstant factor of it gives the
    same answer.  The search restarts on a factor whenever a zero divisor is
    met.  ``rng`` is accepted for interface symmetry and not consumed.
    """
    if ell > max_ell:
        raise ResourceLimitError("ell", ell, max_ell)
    m = list(psi(E, ell).psi.coeffs) if modulus is None else (
        list(modulus.coeffs) if isinstance(modulus, FpPolynomial) else list(modulus))
    while True:
        try:
            return _trace_on(E, ell, m, meter)
        except ModulusSplit as split:
            ring = ResidueRing(m, E.p)
            m = _shrink(ring, split)


def characteristic_residual(E: CurveOverFp, ell: int, t: int, modulus=None):
    """pi^2 - t pi + p evaluated in End(E[ell]); zero iff t is right mod ell.

    On a zero divisor the computation restarts on a factor of the modulus.
    """
    m = psi(E, ell).psi if modulus is None else modulus
    m = list(m.coeffs) if isinstance(m, FpPolynomial) else list(m)
    while True:
        ctx = TorsionContext(E, m)
        try:
            pi = frobenius(E, ctx)
            lhs = endo_add(frobenius_square(pi), endo_scalar(E.p % ell, identity(ctx)))
            return endo_add(lhs, negate(endo_scalar(t % ell, pi)))
        except ModulusSplit as split:
            m = _shrink(ResidueRing(m, E.p), split)


def odd_primes_for(p: int, start: int = 3):
    ell = start
    while True:
        if ell != p and all(ell % q for q in range(3, math.isqrt(ell) + 1, 2)):
            yield ell
        ell += 2


def enough(product: int, p: int) -> bool:
    """product > 4 sqrt(p)."""
    return product * product > 16 * p


def schoof_trace(E: CurveOverFp, rng: random.Random | None = None,
                 meter: CostMeter | None = None) -> TraceCertificate:
    rs = ResidueSystem()
    for ell in odd_primes_for(E.p):
        if enough(rs.product(), E.p):
            break
        rs = rs.with_residue(ell, trace_mod_ell(E, ell, rng, meter=meter))
    return TraceCertificate.from_trace(E.p, crt_balanced(rs), "schoof", rs)
