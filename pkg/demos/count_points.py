"""
Counting points three ways
==========================

Take y^2 = x^3 + x + 1 and count its points modulo primes of growing size.
Small fields are counted directly; past that Schoof's method and the SEA
driver take over.  For every odd prime ell used along the way we also print
whether it was an Elkies prime (a rational ell-isogeny exists) or an Atkin
prime.
"""

import time

from seacount import CurveOverFp, naive_count, schoof_trace, sea_trace
from seacount.arith import next_prime
from seacount.elkies import is_elkies
from seacount.sea import SeaConfig

a, b = 1, 1

# A small field first: all three methods must agree exactly.
p = 10007
E = CurveOverFp(p, a, b)
print("p =", p)
print("  naive :", naive_count(E).N)
print("  schoof:", schoof_trace(E).N)
print("  sea   :", sea_trace(E, SeaConfig(naive_cutoff=0)).N)

# Now larger primes.  The naive count is out of reach here.
for bits in (32, 48, 64):
    p = next_prime(1 << (bits - 1))
    E = CurveOverFp(p, a, b)

    t0 = time.perf_counter()
    cert = sea_trace(E)
    dt = time.perf_counter() - t0

    print(f"\n{bits}-bit p = {p}")
    print(f"  N = {cert.N}   t = {cert.t}   ({dt:.2f} s)")
    for ell, r in sorted(cert.residue_log.as_dict().items()):
        print(f"    t = {r:3d} mod {ell:2d}   {is_elkies(E, ell)}")

# Schoof alone at 64 bits, for comparison.  Expect a few seconds.
t0 = time.perf_counter()
assert schoof_trace(E).t == cert.t
print(f"\nschoof at 64 bits agrees, {time.perf_counter() - t0:.1f} s")
