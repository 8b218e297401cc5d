"""Integer arithmetic: Jacobi symbols, primes, CRT and Cornacchia."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgumentError, ResourceLimitError

SIEVE_LIMIT = 1 << 40
SEGMENT = 1 << 20
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def jacobi(k: int, m: int) -> int:
    """Jacobi symbol (k/m) for odd m >= 3."""
    if m < 3 or m % 2 == 0:
        raise InvalidArgumentError(f"Jacobi symbol needs odd m >= 3, got {m}")
    k %= m
    result = 1
    while k:
        while k % 2 == 0:
            k //= 2
            if m % 8 in (3, 5):
                result = -result
        k, m = m, k
        if k % 4 == 3 and m % 4 == 3:
            result = -result
        k %= m
    return result if m == 1 else 0


def is_prime(n: int, rounds: int = 20) -> bool:
    """Miller-Rabin; deterministic below 2^64 (and well beyond)."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    def witness(a):
        x = pow(a, d, n)
        if x in (1, n - 1):
            return False
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                return False
        return True

    if any(witness(a) for a in _MR_BASES):
        return False
    if n < 1 << 64:
        return True
    rng = random.Random(n)
    return not any(witness(rng.randrange(2, n - 1)) for _ in range(rounds))


def next_prime(n: int) -> int:
    """Smallest prime >= n."""
    n = max(n, 2)
    while not is_prime(n):
        n += 1
    return n


def _small_primes(limit):
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i::i] = False
    return np.nonzero(sieve)[0]


def primes_in(lo: int, hi: int, limit: int = SIEVE_LIMIT) -> list[int]:
    """Primes in the closed interval [lo, hi], via a segmented sieve."""
    if lo < 0 or hi < lo:
        if hi < lo:
            return []
        raise InvalidArgumentError(f"bad interval [{lo}, {hi}]")
    if hi > limit:
        raise ResourceLimitError("sieve bound", hi, limit)
    base = _small_primes(math.isqrt(hi) + 1)
    out: list[int] = []
    start = max(lo, 2)
    while start <= hi:
        stop = min(start + SEGMENT, hi + 1)
        seg = np.ones(stop - start, dtype=bool)
        for q in base:
            q = int(q)
            if q * q >= stop:
                break
            first = max(q * q, -(-start // q) * q)
            seg[first - start::q] = False
        out.extend((np.nonzero(seg)[0] + start).tolist())
        start = stop
    return out


def pi(x: int) -> int:
    """Number of primes <= x."""
    return len(primes_in(0, x)) if x >= 2 else 0


def odd_primes_upto(x: int) -> list[int]:
    return [q for q in primes_in(3, x)] if x >= 3 else []


@dataclass(frozen=True)
class ResidueSystem:
    """Congruences x = residues[i] (mod moduli[i])."""

    moduli: tuple[int, ...] = field(default_factory=tuple)
    residues: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "moduli", tuple(self.moduli))
        object.__setattr__(self, "residues", tuple(self.residues))
        if len(self.moduli) != len(self.residues):
            raise InvalidArgumentError("moduli and residues differ in length")
        for m, r in zip(self.moduli, self.residues):
            if m < 1 or not 0 <= r < m:
                raise InvalidArgumentError(f"residue {r} out of range mod {m}")
        for i, m in enumerate(self.moduli):
            for n in self.moduli[:i]:
                if math.gcd(m, n) != 1:
                    raise InvalidArgumentError(f"moduli {n} and {m} are not coprime")

    @classmethod
    def from_pairs(cls, pairs) -> "ResidueSystem":
        pairs = list(pairs.items() if isinstance(pairs, dict) else pairs)
        return cls(tuple(m for m, _ in pairs), tuple(r % m for m, r in pairs))

    def with_residue(self, m: int, r: int) -> "ResidueSystem":
        return ResidueSystem(self.moduli + (m,), self.residues + (r % m,))

    def product(self) -> int:
        return math.prod(self.moduli)

    def as_dict(self) -> dict[int, int]:
        return dict(zip(self.moduli, self.residues))

    def __len__(self):
        return len(self.moduli)


def crt_balanced(rs: ResidueSystem) -> int:
    """The solution x of rs with -M/2 < x <= M/2."""
    x, M = 0, 1
    for m, r in zip(rs.moduli, rs.residues):
        if math.gcd(M, m) != 1:
            raise InvalidArgumentError(f"modulus {m} is not coprime to the others")
        # x' = x + M*k with x' = r (mod m)
        k = (r - x) * pow(M, -1, m) % m if m > 1 else 0
        x += M * k
        M *= m
    x %= M
    if 2 * x > M:
        x -= M
    return x


def sqrt_mod_prime(a: int, q: int) -> int | None:
    """A square root of a modulo the prime q (Tonelli-Shanks), or None."""
    a %= q
    if a == 0 or q == 2:
        return a
    if pow(a, (q - 1) // 2, q) != 1:
        return None
    if q % 4 == 3:
        return pow(a, (q + 1) // 4, q)
    s, e = q - 1, 0
    while s % 2 == 0:
        s //= 2
        e += 1
    z = 2
    while pow(z, (q - 1) // 2, q) != q - 1:
        z += 1
    x = pow(a, (s + 1) // 2, q)
    b = pow(a, s, q)
    g = pow(z, s, q)
    r = e
    while b != 1:
        t, m = b, 0
        while t != 1:
            t = t * t % q
            m += 1
        gs = pow(g, 1 << (r - m - 1), q)
        g = gs * gs % q
        x = x * gs % q
        b = b * g % q
        r = m
    return x


def _factor_for_norm(n):
    """Factor n by trial division, allowing one large prime cofactor."""
    fac: dict[int, int] = {}
    for q in (2, 3):
        while n % q == 0:
            fac[q] = fac.get(q, 0) + 1
            n //= q
    q = 5
    while q * q <= n and q < 1 << 20:
        for c in (q, q + 2):
            while n % c == 0:
                fac[c] = fac.get(c, 0) + 1
                n //= c
        q += 6
    if n > 1:
        if not is_prime(n):
            raise InvalidArgumentError(
                "norm equation modulus has a composite cofactor without small factors")
        fac[n] = fac.get(n, 0) + 1
    return fac


def _sqrt_neg_d_prime_power(d, q, e):
    mod = q ** e
    if mod <= 64:
        return [x for x in range(mod) if (x * x + d) % mod == 0]
    if d % q == 0 or q == 2:
        # -d is never a square mod 8 or mod 9 for d in {1, 3}
        return []
    r = sqrt_mod_prime(-d, q)
    if r is None:
        return []
    # Hensel lift
    qk = q
    for _ in range(1, e):
        qk2 = qk * q
        f = (r * r + d) // qk
        r = (r - f * pow(2 * r, -1, q) * qk) % qk2
        qk = qk2
    return sorted({r % mod, (-r) % mod})


def _sqrt_neg_d(d, fac):
    roots, mod = [0], 1
    for q, e in fac.items():
        qe = q ** e
        local = _sqrt_neg_d_prime_power(d, q, e)
        if not local:
            return []
        inv = pow(mod, -1, qe)
        roots = [x + mod * ((y - x) * inv % qe) for x in roots for y in local]
        mod *= qe
    return roots


def _primitive_solutions(d, n, fac):
    found = set()
    bound = math.isqrt(n)
    for r in _sqrt_neg_d(d, fac):
        a, b = n, r
        while b > bound:
            a, b = b, a % b
        rest = n - b * b
        if rest % d:
            continue
        v2 = rest // d
        v = math.isqrt(v2)
        if v * v == v2 and math.gcd(b, v) == 1:
            found.add((b, v))
            if d == 1:
                found.add((v, b))
    if n == 1:
        found.add((1, 0))
    return found


def solve_norm_equation(d: int, m: int) -> list[tuple[int, int]]:
    """All (t, v) with t, v >= 0 and t^2 + d v^2 = m, sorted by t.

    Cornacchia's descent over every square root of -d modulo m/g^2, for each
    square divisor g^2 of m.
    """
    if d not in (1, 3):
        raise InvalidArgumentError(f"d must be 1 or 3, got {d}")
    if m < 1:
        raise InvalidArgumentError(f"m must be positive, got {m}")
    fac = _factor_for_norm(m)
    out = set()
    gs = [1]
    for q, e in fac.items():
        gs = [g * q ** k for g in gs for k in range(e // 2 + 1)]
    for g in gs:
        n = m // (g * g)
        nfac = {q: e - 2 * _val(g, q) for q, e in fac.items()}
        nfac = {q: e for q, e in nfac.items() if e}
        for t, v in _primitive_solutions(d, n, nfac):
            out.add((g * t, g * v))
    return sorted(out)


def _val(n, q):
    k = 0
    while n % q == 0:
        n //= q
        k += 1
    return k
