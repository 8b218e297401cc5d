"""Short Weierstrass curves y^2 = x^3 + a x + b over F_p and over Q."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np

from .arith import ResidueSystem, sqrt_mod_prime
from .errors import BadReductionError, InvalidArgumentError, ResourceLimitError

NAIVE_LIMIT = 1 << 22
SUPERSINGULAR_TRIALS = 20

# The point at infinity; affine points are (x, y) tuples.
INFINITY = None

METHODS = ("naive", "schoof", "sea", "cm-j0", "cm-j1728", "supersingular")


@dataclass(frozen=True)
class CurveOverFp:
    p: int
    a: int
    b: int

    def __post_init__(self):
        if self.p <= 3:
            raise InvalidArgumentError(f"characteristic must exceed 3, got {self.p}")
        object.__setattr__(self, "a", self.a % self.p)
        object.__setattr__(self, "b", self.b % self.p)
        if (4 * self.a ** 3 + 27 * self.b ** 2) % self.p == 0:
            raise InvalidArgumentError(
                f"y^2 = x^3 + {self.a}x + {self.b} is singular over F_{self.p}")

    def rhs(self, x: int) -> int:
        """f_E(x) = x^3 + a x + b."""
        return (x * x * x + self.a * x + self.b) % self.p

    def rhs_coeffs(self) -> list[int]:
        return [self.b, self.a, 0, 1]

    def contains(self, P) -> bool:
        if P is INFINITY:
            return True
        x, y = P
        return 0 <= x < self.p and 0 <= y < self.p and (y * y - self.rhs(x)) % self.p == 0

    def __str__(self):
        return f"y^2 = x^3 + {self.a}x + {self.b} over F_{self.p}"


@dataclass(frozen=True)
class RationalCurve:
    """Integral model y^2 = x^3 + a x + b over Q."""

    a: int
    b: int
    disc: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "disc", -16 * (4 * self.a ** 3 + 27 * self.b ** 2))
        if self.disc == 0:
            raise InvalidArgumentError(f"y^2 = x^3 + {self.a}x + {self.b} is singular")

    def has_good_reduction(self, p: int) -> bool:
        return p > 3 and self.disc % p != 0


def reduce(E: RationalCurve, p: int) -> CurveOverFp:
    """Reduction of an integral model modulo a good prime p."""
    if p <= 3:
        raise BadReductionError(p, "primes 2 and 3 are excluded")
    if E.disc % p == 0:
        raise BadReductionError(p, f"p divides the model discriminant {E.disc}")
    return CurveOverFp(p, E.a, E.b)


@dataclass(frozen=True)
class TraceCertificate:
    """Frobenius data for one curve; validated on construction."""

    p: int
    N: int
    t: int
    D: int
    method: str
    residue_log: ResidueSystem = field(default_factory=ResidueSystem)

    def __post_init__(self):
        if self.method not in METHODS:
            raise InvalidArgumentError(f"unknown method {self.method!r}")
        if self.N != self.p + 1 - self.t or self.D != self.t * self.t - 4 * self.p:
            raise InvalidArgumentError("inconsistent certificate fields")
        if self.t * self.t > 4 * self.p:
            raise InvalidArgumentError(f"trace {self.t} violates the Hasse bound for p = {self.p}")
        for m, r in zip(self.residue_log.moduli, self.residue_log.residues):
            if (self.t - r) % m:
                raise InvalidArgumentError(f"trace {self.t} disagrees with residue {r} mod {m}")

    @classmethod
    def from_trace(cls, p, t, method, residue_log=None):
        return cls(p, p + 1 - t, t, t * t - 4 * p, method, residue_log or ResidueSystem())


# ---------------------------------------------------------------------------
# group law


def negate(E: CurveOverFp, P):
    if P is INFINITY:
        return P
    return (P[0], (-P[1]) % E.p)


def add(E: CurveOverFp, P, Q, check: bool = True):
    if check and not (E.contains(P) and E.contains(Q)):
        raise InvalidArgumentError("point not on curve")
    if P is INFINITY:
        return Q
    if Q is INFINITY:
        return P
    p = E.p
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if (y1 + y2) % p == 0:
            return INFINITY
        lam = (3 * x1 * x1 + E.a) * pow(2 * y1, -1, p) % p
    else:
        lam = (y2 - y1) * pow(x2 - x1, -1, p) % p
    x3 = (lam * lam - x1 - x2) % p
    return (x3, (lam * (x1 - x3) - y1) % p)


def scalar_mul(E: CurveOverFp, k: int, P, check: bool = True):
    if check and not E.contains(P):
        raise InvalidArgumentError("point not on curve")
    if k < 0:
        return scalar_mul(E, -k, negate(E, P), check=False)
    R = INFINITY
    Q = P
    while k:
        if k & 1:
            R = add(E, R, Q, check=False)
        Q = add(E, Q, Q, check=False)
        k >>= 1
    return R


def lift_x(E: CurveOverFp, x: int):
    """A point with abscissa x, or None when f_E(x) is not a square."""
    y = sqrt_mod_prime(E.rhs(x), E.p)
    return None if y is None else (x % E.p, y)


def random_point(E: CurveOverFp, rng: random.Random):
    while True:
        P = lift_x(E, rng.randrange(E.p))
        if P is not None:
            if rng.random() < 0.5:
                P = negate(E, P)
            return P


def points(E: CurveOverFp, limit: int = 1 << 12):
    """All affine points, by exhaustive scan (small p only)."""
    if E.p > limit:
        raise ResourceLimitError("p", E.p, limit)
    p = E.p
    roots: dict[int, list[int]] = {}
    for y in range(p):
        roots.setdefault(y * y % p, []).append(y)
    return [(x, y) for x in range(p) for y in roots.get(E.rhs(x), [])]


# ---------------------------------------------------------------------------
# invariants and counting


def j_invariant(E: CurveOverFp) -> int:
    p = E.p
    a3 = 4 * pow(E.a, 3, p)
    return 1728 * a3 * pow(a3 + 27 * E.b * E.b, -1, p) % p


def naive_count(E: CurveOverFp, limit: int = NAIVE_LIMIT) -> TraceCertificate:
    """N = p + 1 + sum_x chi(f_E(x)) using a table of squares mod p."""
    p = E.p
    if p > limit:
        raise ResourceLimitError("p for naive counting", p, limit)
    xs = np.arange(p, dtype=np.int64)
    sq = xs * xs % p
    is_square = np.zeros(p, dtype=bool)
    is_square[sq] = True
    vals = (sq * xs + E.a * xs + E.b) % p
    nonzero = vals != 0
    residues = int(np.count_nonzero(is_square[vals] & nonzero))
    chi_sum = 2 * residues - int(np.count_nonzero(nonzero))
    return TraceCertificate.from_trace(p, -chi_sum, "naive")


def is_supersingular(E: CurveOverFp, rng: random.Random | None = None,
                     trials: int = SUPERSINGULAR_TRIALS) -> bool:
    """True iff t = 0: random points must all have order dividing p + 1,
    and a passing curve is confirmed by Schoof's algorithm."""
    rng = rng or random.Random(0)
    for _ in range(trials):
        if scalar_mul(E, E.p + 1, random_point(E, rng), check=False) is not INFINITY:
            return False
    from .schoof import schoof_trace

    return schoof_trace(E).t == 0


def hasse_bound(p: int) -> int:
    return math.isqrt(4 * p)
