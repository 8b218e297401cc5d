"""
How many Elkies primes?
=======================

Fix the rational curve y^2 = x^3 + x + 1.  For every prime p in [P, 2P]
compute the Frobenius discriminant D_p = t_p^2 - 4p and count the primes ell
in [L, 2L] for which D_p is a square mod ell.  If the Jacobi symbols behaved
like independent fair coins, the count would be binomial with k trials and
probability 1/2.  Below we set the observed histogram next to that model.
"""

import math

import numpy as np

from seacount import RationalCurve
from seacount.elkies import PrimeClass
from seacount.stats import survey

P, L = 20000, 50
EQ = RationalCurve(1, 1)

res = survey(EQ, P, L)
k = res.records[0].k
R = np.array([r.R_e for r in res.records])
print(f"{len(R)} primes in [{P}, {2 * P}], k = {k} primes ell in [{L}, {2 * L}]")

observed = np.bincount(R, minlength=k + 1) / len(R)
model = np.array([math.comb(k, i) for i in range(k + 1)]) / 2 ** k

print("\n R_e   observed   binomial")
for i in range(k + 1):
    bar = "#" * int(round(60 * observed[i]))
    print(f"{i:3d}   {observed[i]:8.4f}   {model[i]:8.4f}  {bar}")

# Second moment around k/2 and the share of p with few Elkies primes.
m = res.moment(1, PrimeClass.ELKIES, "strict")
print(f"\nmean (R_e - k/2)^2 = {float(m.mean_moment):.3f}   (model {k / 4:.3f})")
print(f"fraction with R_e < k/3 = {float(m.deficient_fraction):.4f}   "
      f"(model {model[: math.ceil(k / 3)].sum():.4f})")

# ramified primes are rare but not absent
print("records with some ell | D_p:", int(np.sum([r.R_ram > 0 for r in res.records])))
