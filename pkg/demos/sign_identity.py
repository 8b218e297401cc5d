"""
A sign-vector identity and a character sum
==========================================

For four distinct odd primes the weighted counts A_{+1} and A_{-1} of sign
vectors differ by exactly prod (-1/ell) ell.  We check this over every
quadruple below 40, then look at the Jacobi-symbol sum of D_p against its
predicted main term.
"""

import itertools
import math

from seacount import RationalCurve
from seacount.arith import odd_primes_upto
from seacount.stats import char_sum, identity_check

quads = list(itertools.combinations(odd_primes_upto(37), 4))
print(len(quads), "quadruples,", sum(identity_check(q)[2] for q in quads), "satisfy the identity")
print("example:", (3, 5, 7, 11), "->", identity_check((3, 5, 7, 11)))

EQ = RationalCurve(1, 1)
for ells in [(3, 5), (3, 7), (5, 13), (3, 5, 7, 11)]:
    rep = char_sum(EQ, ells, 20000)
    print(f"ells={ells}: S = {rep.S:5d}   main term = {float(rep.main_term):8.2f}   "
          f"sqrt(count) = {math.sqrt(rep.count_p):.1f}")
