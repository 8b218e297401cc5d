"""Generate the bundled classical modular polynomial tables.

Phi_l(X, j(q)) is the polynomial whose roots are j(zeta^k q^(1/l)) for
k = 0..l-1 together with j(q^l).  Power sums of the first l conjugates are
l times every l-th coefficient of j(x)^i (x = q^(1/l)); Newton's identities
give the elementary symmetric functions, which are then rewritten as
polynomials in j(q) by cancelling poles.  Everything is done modulo a prime
larger than twice the known height bound 6 l log l + 18 l, followed by a
balanced lift.

Every table is checked before writing: symmetry, the Kronecker congruence
mod l, and vanishing of Phi_l(j(q), j(q^l)) as a q-series modulo an
unrelated 61-bit prime.

Usage: python tools/gen_modpoly.py OUTDIR ELL [ELL ...]
"""

import math
import sys
import time
from pathlib import Path

try:
    import gmpy2

    def _bigmul(a, b):
        return int(gmpy2.mpz(a) * gmpy2.mpz(b))

    def _next_prime(n):
        return int(gmpy2.next_prime(n))

except ImportError:  # pragma: no cover - slow fallback
    def _bigmul(a, b):
        return a * b

    def _next_prime(n):
        from sympy import nextprime
        return int(nextprime(n))


def smul(a, b, n, mod):
    """Truncated product of two power series (coefficient lists) mod `mod`."""
    a = a[:n]
    b = b[:n]
    if not a or not b:
        return []
    w = (2 * mod.bit_length() + max(len(a), len(b)).bit_length() + 8) // 8 + 1
    pa = int.from_bytes(b"".join(c.to_bytes(w, "little") for c in a), "little")
    pb = int.from_bytes(b"".join(c.to_bytes(w, "little") for c in b), "little")
    raw = _bigmul(pa, pb).to_bytes(w * (len(a) + len(b)), "little")
    m = min(n, len(a) + len(b) - 1)
    return [int.from_bytes(raw[i * w:(i + 1) * w], "little") % mod for i in range(m)]


def sinv(a, n, mod):
    """Inverse of a power series with unit constant term, Newton iteration."""
    inv = [pow(a[0], -1, mod)]
    k = 1
    while k < n:
        k = min(2 * k, n)
        e = smul(a, inv, k, mod)
        e = [(-c) % mod for c in e]
        e[0] = (e[0] + 2) % mod
        inv = smul(inv, e, k, mod)
    return inv


def qj_series(n, mod):
    """Coefficients of q*j(q) = E4^3 / prod(1-q^k)^24, first n terms, mod `mod`."""
    sig = [0] * n
    for d in range(1, n):
        d3 = d ** 3
        for m in range(d, n, d):
            sig[m] += d3
    e4 = [1] + [(240 * s) % mod for s in sig[1:]]
    # Euler's pentagonal series for prod(1 - q^k)
    eta = [0] * n
    k = 0
    while True:
        g1 = k * (3 * k - 1) // 2
        if g1 >= n:
            break
        s = 1 if k % 2 == 0 else mod - 1
        eta[g1] = s
        g2 = k * (3 * k + 1) // 2
        if g2 < n:
            eta[g2] = s
        k += 1
    e2 = smul(eta, eta, n, mod)
    e4b = smul(e2, e2, n, mod)
    e8 = smul(e4b, e4b, n, mod)
    e16 = smul(e8, e8, n, mod)
    e24 = smul(e16, e8, n, mod)
    e4c = smul(smul(e4, e4, n, mod), e4, n, mod)
    return smul(e4c, sinv(e24, n, mod), n, mod)


class Laurent:
    """Truncated Laurent series: coeffs[i] is the coefficient of q^(val + i),
    known exactly for exponents < val + len(coeffs)."""

    __slots__ = ("val", "c")

    def __init__(self, val, c):
        self.val = val
        self.c = c

    @property
    def prec(self):
        return self.val + len(self.c)

    def coef(self, e):
        i = e - self.val
        return self.c[i] if 0 <= i < len(self.c) else 0


def lmul(a, b, mod):
    val = a.val + b.val
    prec = min(a.prec + b.val, b.prec + a.val)
    n = prec - val
    if n <= 0:
        return Laurent(val, [])
    out = [0] * n
    ac, bc = a.c, b.c
    for i, x in enumerate(ac):
        if x == 0 or i >= n:
            continue
        lim = min(len(bc), n - i)
        for k in range(lim):
            y = bc[k]
            if y:
                out[i + k] += x * y
    return Laurent(val, [v % mod for v in out])


def ladd(a, b, mod, sb=1):
    val = min(a.val, b.val)
    prec = min(a.prec, b.prec)
    return Laurent(val, [(a.coef(e) + sb * b.coef(e)) % mod for e in range(val, prec)])


def modular_polynomial_mod(ell, mod):
    """Return {(i, k): c} with Phi_ell = sum c X^i Y^k, coefficients mod `mod`."""
    nq = ell + 4                          # q-precision target
    nx = ell * nq + ell + 2               # x-precision for powers of x*j(x)
    qj = qj_series(max(nx, 2 * ell + 4), mod)
    base = qj[:nx]
    # power sums P_i over the l conjugates, i = 1..l
    psums = [None]
    cur = [1]
    for i in range(1, ell + 1):
        cur = smul(cur, base, nx, mod)
        # j(x)^i = x^-i * cur; keep exponents e = k*ell, e >= -i
        kmin = -1 if i >= ell else 0
        coeffs = []
        k = kmin
        while k * ell + i < len(cur):
            coeffs.append((ell * cur[k * ell + i]) % mod)
            k += 1
        psums.append(Laurent(kmin, coeffs))
    # Newton identities for elementary symmetric E_m of the l conjugates
    el = [Laurent(0, [1] + [0] * (nq + 2))]
    for m in range(1, ell + 1):
        acc = None
        for i in range(1, m + 1):
            term = lmul(el[m - i], psums[i], mod)
            if i % 2 == 0:
                term = Laurent(term.val, [(-c) % mod for c in term.c])
            acc = term if acc is None else ladd(acc, term, mod)
        inv_m = pow(m, -1, mod)
        el.append(Laurent(acc.val, [(c * inv_m) % mod for c in acc.c]))
    # y_l = j(q^l) = q^-l + 744 + O(q^l): only the polar and constant parts matter
    # for coefficients up to q^0 since E_m has pole order <= 1
    jq_pow = [Laurent(0, [1] + [0] * (ell + 2))]
    qjt = Laurent(-1, qj[: 2 * ell + 4])
    for k in range(1, ell + 2):
        jq_pow.append(lmul(jq_pow[-1], qjt, mod))
    yl = Laurent(-ell, [1] + [0] * (ell - 1) + [744 % mod] + [0] * (ell - 1) + [qj[2] % mod])
    coeffs = {}
    for m in range(0, ell + 2):
        em = el[m] if m <= ell else Laurent(0, [0] * (nq + 2))
        if m == 0:
            series = Laurent(0, [1] + [0] * (ell + 2))
        else:
            series = ladd(em, lmul(yl, el[m - 1], mod), mod)
        if series.prec < 1:
            raise RuntimeError(f"precision loss at m={m}")
        # rewrite as polynomial in j(q)
        rest = series
        poly = [0] * (ell + 2)
        for k in range(ell + 1, 0, -1):
            c = rest.coef(-k)
            if c:
                poly[k] = c
                sub = Laurent(jq_pow[k].val, [(c * v) % mod for v in jq_pow[k].c])
                rest = ladd(rest, sub, mod, sb=-1)
        for e in range(rest.val, 0):
            if rest.coef(e):
                raise RuntimeError(f"pole order too large at m={m}")
        poly[0] = rest.coef(0)
        sign = 1 if m % 2 == 0 else -1
        for k, c in enumerate(poly):
            c = (sign * c) % mod
            if c:
                coeffs[(ell + 1 - m, k)] = c
    return coeffs


def height_bits(ell):
    return math.ceil((6 * ell * math.log(ell) + 18 * ell) / math.log(2))


def modular_polynomial(ell):
    mod = _next_prime(1 << (height_bits(ell) + 64))
    raw = modular_polynomial_mod(ell, mod)
    half = mod // 2
    return {key: (c - mod if c > half else c) for key, c in raw.items()}


def verify(ell, coeffs):
    for (i, k), c in coeffs.items():
        if coeffs.get((k, i)) != c:
            raise RuntimeError(f"asymmetric at {(i, k)}")
    # Kronecker congruence: (X^l - Y)(X - Y^l) = X^(l+1) - X^l Y^l - X Y + Y^(l+1)
    want = {(ell + 1, 0): 1, (0, ell + 1): 1, (ell, ell): -1, (1, 1): -1}
    for i in range(ell + 2):
        for k in range(ell + 2):
            if (coeffs.get((i, k), 0) - want.get((i, k), 0)) % ell:
                raise RuntimeError(f"Kronecker congruence fails at {(i, k)}")
    # Phi(j(q), j(q^l)) == 0 modulo an unrelated prime
    mod = (1 << 61) - 1
    top = (ell + 1) * ell + 12
    n = top + ell + 4
    qj = qj_series(n, mod)
    jpow = [Laurent(0, [1] + [0] * (n + ell + 2))]
    for _ in range(ell + 1):
        jpow.append(Laurent(jpow[-1].val - 1, smul(jpow[-1].c, qj, n + ell + 2, mod)))
    # j(q^l)^b as a series in q: inflate (q j)^b by l
    total = [0] * (top + (ell + 1) ** 2 + 1)
    off = (ell + 1) ** 2
    qjb = [1]
    for b in range(ell + 2):
        if b:
            qjb = smul(qjb, qj, top // ell + ell + 4, mod)
        ab = [0] * (top + off + 1)
        for a in range(ell + 2):
            c = coeffs.get((a, b))
            if not c:
                continue
            c %= mod
            jp = jpow[a]
            for idx, v in enumerate(jp.c):
                e = jp.val + idx
                if e > top:
                    break
                ab[e + off] = (ab[e + off] + c * v) % mod
        # multiply ab by q^(-b l) * sum qjb[s] q^(s l)
        for s, v in enumerate(qjb):
            if v == 0:
                continue
            shift = -b * ell + s * ell
            for idx in range(len(ab)):
                e = idx - off + shift
                if e > top - (ell + 1) * ell:
                    break
                if ab[idx]:
                    total[e + off] = (total[e + off] + v * ab[idx]) % mod
    for e in range(-off, top - (ell + 1) * ell + 1):
        if total[e + off]:
            raise RuntimeError(f"Phi(j(q), j(q^l)) has nonzero coefficient at q^{e}")


def write_table(path, ell, coeffs):
    lines = [f"ell {ell}"]
    for (i, k) in sorted(coeffs, reverse=True):
        if i >= k:
            lines.append(f"{i} {k} {coeffs[(i, k)]}")
    path.write_text("\n".join(lines) + "\n")


def main(argv):
    out = Path(argv[1])
    out.mkdir(parents=True, exist_ok=True)
    for ell in map(int, argv[2:]):
        t0 = time.time()
        coeffs = modular_polynomial(ell)
        t1 = time.time()
        verify(ell, coeffs)
        write_table(out / f"phi_{ell}.txt", ell, coeffs)
        print(f"ell={ell}: {len(coeffs)} terms, built {t1 - t0:.1f}s, "
              f"verified {time.time() - t1:.1f}s", flush=True)


if __name__ == "__main__":
    main(sys.argv)
