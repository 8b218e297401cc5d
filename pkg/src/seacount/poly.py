"""Dense univariate polynomials over F_p.

Coefficient lists are stored lowest degree first with no trailing zeros; the
zero polynomial is the empty list.  The list-level helpers (names starting
with ``p``) are what the point-counting code uses on its hot paths; the
:class:`FpPolynomial` wrapper gives a checked, immutable value type on top.

Products of degree >= ``KRONECKER_THRESHOLD`` go through Kronecker
substitution: both operands are packed into one big integer each, the
integers are multiplied, and the product is unpacked again.
"""

from __future__ import annotations

import random
from typing import Iterable, Sequence

from .arith import sqrt_mod_prime
from .errors import InternalDefectError, InvalidArgumentError, SeaError

KRONECKER_THRESHOLD = 32
ROOT_RETRIES = 64


class ModulusSplit(SeaError):
    """Raised when an inversion modulo m meets a zero divisor.

    ``factor`` is the monic gcd, a proper nontrivial factor of the modulus.
    """

    def __init__(self, factor: "FpPolynomial"):
        self.factor = factor
        super().__init__(f"modulus splits off a factor of degree {factor.degree}")


# ---------------------------------------------------------------------------
# list-level arithmetic


def pnorm(a: list[int]) -> list[int]:
    while a and not a[-1]:
        a.pop()
    return a


def padd(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return pnorm(out)


def psub(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return pnorm(out)


def pneg(a, p):
    return [(-c) % p for c in a]


def pscale(a, c, p):
    c %= p
    if not c:
        return []
    return [(x * c) % p for x in a]


def _school(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return [c % p for c in out]


def _pack(a, w):
    return int.from_bytes(b"".join(c.to_bytes(w, "little") for c in a), "little")


def _unpack(n, w, count, p):
    raw = n.to_bytes(w * count, "little")
    return [int.from_bytes(raw[i:i + w], "little") % p for i in range(0, w * count, w)]


def _slot(p, n):
    return (2 * (p - 1).bit_length() + n.bit_length() + 8) // 8


def pmul(a, b, p):
    if not a or not b:
        return []
    if min(len(a), len(b)) < KRONECKER_THRESHOLD:
        return pnorm(_school(a, b, p))
    w = _slot(p, min(len(a), len(b)))
    n = len(a) + len(b) - 1
    return pnorm(_unpack(_pack(a, w) * _pack(b, w), w, n, p))


def psqr(a, p):
    if len(a) < KRONECKER_THRESHOLD:
        return pmul(a, a, p)
    w = _slot(p, len(a))
    pa = _pack(a, w)
    return pnorm(_unpack(pa * pa, w, 2 * len(a) - 1, p))


def pdivmod(a, b, p):
    """Schoolbook division with remainder."""
    if not b:
        raise InvalidArgumentError("division by the zero polynomial")
    if len(a) < len(b):
        return [], list(a)
    inv = pow(b[-1], -1, p)
    rem = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = rem[k] * inv % p
        if c:
            q[k - db] = c
            base = k - db
            for j in range(db):
                rem[base + j] = (rem[base + j] - c * b[j]) % p
        rem[k] = 0
    return pnorm(q), pnorm(rem[:db])


def prem(a, b, p):
    return pdivmod(a, b, p)[1]


def pmonic(a, p):
    if not a or a[-1] == 1:
        return list(a)
    return pscale(a, pow(a[-1], -1, p), p)


def pgcd(a, b, p):
    """Monic gcd; gcd(a, 0) is a made monic."""
    a, b = list(a), list(b)
    while b:
        a, b = b, prem(a, b, p)
    return pmonic(a, p)


def pxgcd_inverse(a, m, p):
    """Return (g, s) with g = gcd(a, m) monic and s*a = g (mod m)."""
    r0, r1 = list(m), prem(a, m, p)
    s0, s1 = [], [1]
    while r1:
        q, r = pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, psub(s0, pmul(q, s1, p), p)
    if not r0:
        return [], []
    inv = pow(r0[-1], -1, p)
    return pscale(r0, inv, p), pscale(s0, inv, p)


def pderiv(a, p):
    return pnorm([(i * c) % p for i, c in enumerate(a)][1:])


def peval(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def pcompose_mod(f, g, ring):
    """f(g) reduced in ``ring`` (Horner)."""
    acc: list[int] = []
    for c in reversed(f):
        acc = ring.mul(acc, g) if acc else []
        if c:
            acc = padd(acc, [c], ring.p)
    return acc


def _series_inverse(a, n, p):
    """Inverse of the power series a (a[0] != 0) modulo x^n."""
    inv = [pow(a[0], -1, p)]
    k = 1
    while k < n:
        k = min(2 * k, n)
        e = pmul(a[:k], inv, p)[:k]
        e = pneg(e, p)
        if e:
            e[0] = (e[0] + 2) % p
        else:
            e = [2]
        inv = pmul(inv, e, p)[:k]
    return pnorm(inv)


class ResidueRing:
    """Arithmetic in F_p[X]/(m) on reduced coefficient lists.

    Reduction of products uses a precomputed inverse of the reversed modulus
    (Newton division) once the modulus is large enough for Kronecker
    products to pay off.
    """

    __slots__ = ("p", "m", "n", "_rinv", "_mrev_inv_ok", "ops")

    def __init__(self, m: Sequence[int], p: int):
        m = pnorm(list(m))
        if len(m) < 2:
            raise InvalidArgumentError("residue ring modulus must have degree >= 1")
        self.p = p
        self.m = pmonic(m, p)
        self.n = len(self.m) - 1
        self._rinv = None
        self.ops = 0
        if self.n >= KRONECKER_THRESHOLD:
            rev = self.m[::-1]
            self._rinv = _series_inverse(rev, self.n - 1 or 1, p)

    def reduce(self, a):
        n = self.n
        if len(a) <= n:
            return a
        if self._rinv is None or len(a) > 2 * n - 1:
            return prem(a, self.m, self.p)
        p = self.p
        k = len(a) - 1            # deg a, n <= k <= 2n - 2
        qlen = k - n + 1
        rq = pmul(a[::-1][:qlen], self._rinv[:qlen], p)[:qlen]
        rq = rq + [0] * (qlen - len(rq))
        q = pnorm(rq[::-1])
        low = pmul(q, self.m, p)[:n]
        return psub(a[:n], low, p)

    def mul(self, a, b):
        self.ops += 1
        return self.reduce(pmul(a, b, self.p))

    def sqr(self, a):
        self.ops += 1
        return self.reduce(psqr(a, self.p))

    def pow(self, a, e):
        if e < 0:
            raise InvalidArgumentError("negative exponent")
        base = self.reduce(list(a))
        if e == 0:
            return [1]
        result = base
        for bit in bin(e)[3:]:
            result = self.sqr(result)
            if bit == "1":
                result = self.mul(result, base)
        return result

    def inv(self, a):
        """Inverse of a, raising ModulusSplit on a zero divisor."""
        a = self.reduce(list(a))
        if not a:
            raise InvalidArgumentError("zero is not invertible")
        self.ops += 4
        g, s = pxgcd_inverse(a, self.m, self.p)
        if len(g) > 1:
            raise ModulusSplit(FpPolynomial(self.p, g))
        return s

    def add(self, a, b):
        return padd(a, b, self.p)

    def sub(self, a, b):
        return psub(a, b, self.p)

    def neg(self, a):
        return pneg(a, self.p)


# ---------------------------------------------------------------------------
# value type


class FpPolynomial:
    """Immutable polynomial over F_p, coefficients lowest degree first."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Iterable[int] = ()):
        self.p = p
        self.coeffs = tuple(pnorm([c % p for c in coeffs]))

    @classmethod
    def x(cls, p):
        return cls(p, (0, 1))

    @classmethod
    def constant(cls, p, c):
        return cls(p, (c,))

    @classmethod
    def from_roots(cls, p, roots):
        f = [1]
        for r in roots:
            f = pmul(f, [(-r) % p, 1], p)
        return cls(p, f)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def monic(self) -> "FpPolynomial":
        return FpPolynomial(self.p, pmonic(list(self.coeffs), self.p))

    def derivative(self) -> "FpPolynomial":
        return FpPolynomial(self.p, pderiv(list(self.coeffs), self.p))

    def __call__(self, x: int) -> int:
        return peval(self.coeffs, x, self.p)

    def _check(self, other):
        if isinstance(other, int):
            return [other % self.p] if other % self.p else []
        if not isinstance(other, FpPolynomial):
            return NotImplemented
        if other.p != self.p:
            raise InvalidArgumentError(f"modulus mismatch: {self.p} vs {other.p}")
        return list(other.coeffs)

    def __add__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return FpPolynomial(self.p, padd(list(self.coeffs), o, self.p))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return FpPolynomial(self.p, psub(list(self.coeffs), o, self.p))

    def __rsub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return FpPolynomial(self.p, psub(o, list(self.coeffs), self.p))

    def __neg__(self):
        return FpPolynomial(self.p, pneg(list(self.coeffs), self.p))

    def __mul__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return FpPolynomial(self.p, pmul(list(self.coeffs), o, self.p))

    __rmul__ = __mul__

    def __divmod__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        q, r = pdivmod(list(self.coeffs), o, self.p)
        return FpPolynomial(self.p, q), FpPolynomial(self.p, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, int):
            return self.coeffs == tuple(pnorm([other % self.p]))
        if not isinstance(other, FpPolynomial):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return f"FpPolynomial({self.p}, 0)"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            if c == 1 and mono:
                terms.append(mono)
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return f"FpPolynomial({self.p}, {' + '.join(terms)})"


def _require_same(f, g):
    if f.p != g.p:
        raise InvalidArgumentError(f"modulus mismatch: {f.p} vs {g.p}")


def add(f: FpPolynomial, g: FpPolynomial) -> FpPolynomial:
    return f + g


def sub(f: FpPolynomial, g: FpPolynomial) -> FpPolynomial:
    return f - g


def mul(f: FpPolynomial, g: FpPolynomial) -> FpPolynomial:
    return f * g


def rem(f: FpPolynomial, g: FpPolynomial) -> FpPolynomial:
    return f % g


def gcd(f: FpPolynomial, g: FpPolynomial) -> FpPolynomial:
    _require_same(f, g)
    return FpPolynomial(f.p, pgcd(list(f.coeffs), list(g.coeffs), f.p))


def modexp(base: FpPolynomial, e: int, m: FpPolynomial) -> FpPolynomial:
    """base^e mod m by square and multiply."""
    _require_same(base, m)
    if m.degree < 1:
        raise InvalidArgumentError("modulus must have degree >= 1")
    ring = ResidueRing(m.coeffs, m.p)
    out = ring.pow(list(base.coeffs), e)
    # ResidueRing works modulo the monic associate, which has the same ideal
    return FpPolynomial(m.p, out)


def modinv(f: FpPolynomial, m: FpPolynomial) -> FpPolynomial:
    """Inverse of f modulo m; raises ModulusSplit if gcd(f, m) is nontrivial."""
    _require_same(f, m)
    if m.degree < 1:
        raise InvalidArgumentError("modulus must have degree >= 1")
    ring = ResidueRing(m.coeffs, m.p)
    return FpPolynomial(m.p, ring.inv(list(f.coeffs)))


def _split_roots(g, p, rng, out):
    """Collect the roots of g, a monic product of distinct linear factors."""
    d = len(g) - 1
    if d == 0:
        return
    if d == 1:
        out.append((-g[0]) % p)
        return
    if d == 2:
        c, b = g[0], g[1]
        disc = (b * b - 4 * c) % p
        s = sqrt_mod_prime(disc, p)
        if s is None:
            raise InternalDefectError("split quadratic without rational roots")
        inv2 = pow(2, -1, p)
        out.extend({(-b + s) * inv2 % p, (-b - s) * inv2 % p})
        return
    ring = ResidueRing(g, p)
    e = (p - 1) // 2
    for _ in range(ROOT_RETRIES):
        a = rng.randrange(p)
        h = ring.pow([a, 1], e)
        h = psub(h, [1], p)
        f = pgcd(g, h, p)
        if 1 < len(f) < len(g):
            _split_roots(f, p, rng, out)
            _split_roots(pdivmod(g, f, p)[0], p, rng, out)
            return
    raise InternalDefectError(f"root splitting did not succeed after {ROOT_RETRIES} tries")


def equal_degree_factors(g, r: int, p: int, rng: random.Random) -> list[list[int]]:
    """Irreducible factors of g, a monic product of distinct irreducibles of
    degree r, by Cantor-Zassenhaus splitting (odd p)."""
    g = pmonic(list(g), p)
    n = len(g) - 1
    if n % r:
        raise InvalidArgumentError(f"degree {n} is not a multiple of {r}")
    if n == r:
        return [g]
    if n == 0:
        return []
    ring = ResidueRing(g, p)
    e = (p ** r - 1) // 2
    for _ in range(ROOT_RETRIES):
        a = pnorm([rng.randrange(p) for _ in range(n)])
        if len(a) < 2:
            continue
        f = pgcd(g, psub(ring.pow(a, e), [1], p), p)
        if 1 < len(f) < len(g):
            return (equal_degree_factors(f, r, p, rng)
                    + equal_degree_factors(pdivmod(g, f, p)[0], r, p, rng))
    raise InternalDefectError(f"equal-degree splitting did not succeed after {ROOT_RETRIES} tries")


def roots_in_fp(f: FpPolynomial, rng: random.Random | None = None) -> list[int]:
    """Distinct roots of f in F_p, ascending."""
    if f.is_zero():
        raise InvalidArgumentError("the zero polynomial has every element as a root")
    p = f.p
    fm = pmonic(list(f.coeffs), p)
    if len(fm) == 1:
        return []
    rng = rng or random.Random(0)
    if p < 3:
        return [x for x in range(p) if peval(fm, x, p) == 0]
    ring = ResidueRing(fm, p)
    xp = ring.pow([0, 1], p)
    g = pgcd(fm, psub(xp, [0, 1], p), p)
    roots: list[int] = []
    if len(g) > 1 and g[0] == 0:
        roots.append(0)
        g = g[1:]
    _split_roots(g, p, rng, roots)
    return sorted(set(roots))


def has_root(f: FpPolynomial) -> bool:
    """Whether f has a root in F_p, via gcd(X^p - X, f)."""
    p = f.p
    fm = pmonic(list(f.coeffs), p)
    if len(fm) <= 1:
        return False
    ring = ResidueRing(fm, p)
    xp = ring.pow([0, 1], p)
    return len(pgcd(fm, psub(xp, [0, 1], p), p)) > 1
