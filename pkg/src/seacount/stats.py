"""Elkies/Atkin statistics over the reductions of a fixed rational curve.

Intervals are closed: ``P`` stands for p in [P, 2P] and ``L`` for ell in
[L, 2L].  All averages are exact fractions.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .arith import jacobi, odd_primes_upto, primes_in
from .curve import RationalCurve, reduce
from .elkies import PrimeClass
from .errors import InternalDefectError, InvalidArgumentError
from .sea import SeaConfig, curve_rng, sea_trace

STARS = (PrimeClass.ATKIN, PrimeClass.ELKIES)
CONVENTIONS = ("strict", "merge-ramified")


def classify(D: int, ell: int, p: int) -> PrimeClass:
    if ell == 2 or ell == p:
        return PrimeClass.EXCLUDED
    s = jacobi(D, ell)
    if s == 0:
        return PrimeClass.RAMIFIED
    return PrimeClass.ELKIES if s > 0 else PrimeClass.ATKIN


# ---------------------------------------------------------------------------
# traces over a range of primes


@dataclass(frozen=True)
class TraceTable:
    """Traces t_p for every good prime in [pmin, pmax], ascending in p."""

    curve: RationalCurve
    pmin: int
    pmax: int
    traces: tuple            # ((p, t), ...)
    skipped: int             # bad-reduction primes and p <= 3

    def restrict(self, pmin: int, pmax: int) -> "TraceTable":
        if pmin < self.pmin or pmax > self.pmax:
            raise InvalidArgumentError("restriction must lie inside the computed range")
        rows = tuple((p, t) for p, t in self.traces if pmin <= p <= pmax)
        bad = sum(1 for p in primes_in(pmin, pmax) if p <= 3 or not self.curve.has_good_reduction(p))
        return TraceTable(self.curve, pmin, pmax, rows, bad)


def _trace_one(EQ, p, cfg):
    E = reduce(EQ, p)
    return sea_trace(E, cfg, curve_rng(cfg.seed, E)).t


def trace_table(EQ: RationalCurve, pmin: int, pmax: int, cfg: SeaConfig | None = None,
                threads: int = 1) -> TraceTable:
    cfg = cfg or SeaConfig()
    if pmin > pmax:
        raise InvalidArgumentError(f"empty range [{pmin}, {pmax}]")
    ps = primes_in(pmin, pmax)
    good = [p for p in ps if p > 3 and EQ.has_good_reduction(p)]
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            ts = list(pool.map(lambda p: _trace_one(EQ, p, cfg), good))
    else:
        ts = [_trace_one(EQ, p, cfg) for p in good]
    return TraceTable(EQ, pmin, pmax, tuple(zip(good, ts)), len(ps) - len(good))


# ---------------------------------------------------------------------------
# survey


@dataclass(frozen=True)
class SurveyRecord:
    p: int
    t: int
    D: int
    k: int
    R_e: int
    R_a: int
    R_ram: int
    excluded_hit: bool

    def __post_init__(self):
        if self.R_e + self.R_a + self.R_ram + int(self.excluded_hit) != self.k:
            raise InternalDefectError(f"accounting identity fails at p = {self.p}")

    def count(self, star: PrimeClass, convention: str) -> int:
        if star is PrimeClass.ELKIES:
            return self.R_e + (self.R_ram if convention == "merge-ramified" else 0)
        return self.R_a


@dataclass(frozen=True)
class MomentReport:
    nu: int
    star: PrimeClass
    convention: str
    mean_moment: Fraction
    deficient_fraction: Fraction


@dataclass(frozen=True)
class SurveyResult:
    pmin: int
    pmax: int
    lmin: int
    lmax: int
    records: tuple
    moments: tuple
    skipped: int

    def moment(self, nu, star, convention) -> MomentReport:
        for m in self.moments:
            if (m.nu, m.star, m.convention) == (nu, star, convention):
                return m
        raise KeyError((nu, star, convention))


def make_record(p: int, t: int, ells) -> SurveyRecord:
    D = t * t - 4 * p
    counts = {c: 0 for c in PrimeClass}
    for ell in ells:
        counts[classify(D, ell, p)] += 1
    return SurveyRecord(p, t, D, len(ells), counts[PrimeClass.ELKIES], counts[PrimeClass.ATKIN],
                        counts[PrimeClass.RAMIFIED], counts[PrimeClass.EXCLUDED] > 0)


def moments(records, nus=(1, 2)) -> tuple:
    out = []
    n = len(records)
    for nu in nus:
        for star in STARS:
            for conv in CONVENTIONS:
                if n == 0:
                    out.append(MomentReport(nu, star, conv, Fraction(0), Fraction(0)))
                    continue
                total = Fraction(0)
                deficient = 0
                for r in records:
                    x = r.count(star, conv)
                    total += abs(Fraction(x) - Fraction(r.k, 2)) ** (2 * nu)
                    deficient += 3 * x < r.k
                out.append(MomentReport(nu, star, conv, total / n, Fraction(deficient, n)))
    return tuple(out)


def survey(EQ: RationalCurve, P: int | None = None, L: int | None = None,
           cfg: SeaConfig | None = None, *, pmin=None, pmax=None, lmin=None, lmax=None,
           include_supersingular: bool = True, threads: int = 1,
           traces: TraceTable | None = None) -> SurveyResult:
    """One record per good prime p in the range, plus moments for nu = 1, 2."""
    pmin, pmax = _range(P, pmin, pmax, "P")
    lmin, lmax = _range(L, lmin, lmax, "L")
    if pmin < 5 and pmax < 5:
        raise InvalidArgumentError("the prime range must reach p >= 5")
    if lmin < 3:
        raise InvalidArgumentError("L must be at least 3")
    table = _table(EQ, pmin, pmax, cfg, threads, traces)
    ells = primes_in(lmin, lmax)
    records = tuple(make_record(p, t, ells) for p, t in table.traces
                    if include_supersingular or t != 0)
    return SurveyResult(pmin, pmax, lmin, lmax, records, moments(records), table.skipped)


def dyadic_ranges(P: int):
    """[2^k, 2^(k+1)] pieces covering [5, P]."""
    k = 2
    while (1 << k) <= P:
        yield max(1 << k, 5), min((1 << (k + 1)), P)
        k += 1


def _range(X, lo, hi, name):
    if X is not None:
        if lo is not None or hi is not None:
            raise InvalidArgumentError(f"give either {name} or an explicit range, not both")
        return X, 2 * X
    if lo is None or hi is None:
        raise InvalidArgumentError(f"{name} range is missing")
    if lo > hi:
        raise InvalidArgumentError(f"empty range [{lo}, {hi}]")
    return lo, hi


def _table(EQ, pmin, pmax, cfg, threads, traces):
    if traces is None:
        return trace_table(EQ, pmin, pmax, cfg, threads)
    if traces.curve != EQ:
        raise InvalidArgumentError("trace table belongs to a different curve")
    if (traces.pmin, traces.pmax) == (pmin, pmax):
        return traces
    return traces.restrict(pmin, pmax)


# ---------------------------------------------------------------------------
# character sums


@dataclass(frozen=True)
class CharSumReport:
    ells: tuple
    P: int
    count_p: int
    S: int
    main_term: Fraction
    deviation: Fraction


def main_term(count_p: int, ells) -> Fraction:
    out = Fraction(count_p)
    for ell in ells:
        out *= Fraction(jacobi(-1, ell), ell * ell - 1)
    return out


def char_sum(EQ: RationalCurve, ells, P: int, cfg: SeaConfig | None = None,
             threads: int = 1, traces: TraceTable | None = None) -> CharSumReport:
    """S = sum over good p in [P, 2P] of the Jacobi symbol (D_p / prod ells)."""
    ells = tuple(ells)
    if len(ells) not in (2, 4):
        raise InvalidArgumentError("ells must hold 2 or 4 primes")
    if len(set(ells)) != len(ells):
        raise InvalidArgumentError(f"ells must be distinct, got {ells}")
    if any(ell < 3 or ell % 2 == 0 for ell in ells):
        raise InvalidArgumentError("ells must be odd primes")
    if P < 5:
        raise InvalidArgumentError("P must be at least 5")
    table = _table(EQ, P, 2 * P, cfg, threads, traces)
    modulus = math.prod(ells)
    S = 0
    for p, t in table.traces:
        D = t * t - 4 * p
        s = jacobi(D, modulus)
        if s != math.prod(jacobi(D, ell) for ell in ells):
            raise InternalDefectError(f"Jacobi symbol not multiplicative at p = {p}")
        S += s
    count_p = len(table.traces)
    mt = main_term(count_p, ells)
    return CharSumReport(ells, P, count_p, S, mt, S - mt)


# ---------------------------------------------------------------------------
# sign-vector combinatorics


def c_ell(ell: int, xi: int) -> int:
    base = (ell ** 3 - ell ** 2) // 2
    if (xi == 1 and ell % 4 == 1) or (xi == -1 and ell % 4 == 3):
        return base - ell
    return base


def a_xi(ells, xi: int) -> int:
    ells = tuple(ells)
    if len(ells) != 4 or len(set(ells)) != 4:
        raise InvalidArgumentError("a_xi needs 4 distinct odd primes")
    total = 0
    for gammas in itertools.product((1, -1), repeat=4):
        if math.prod(gammas) == xi:
            total += math.prod(c_ell(ell, g) for ell, g in zip(ells, gammas))
    return total


def identity_check(ells) -> tuple[int, int, bool]:
    """(A_1 - A_{-1}, prod (-1/ell) ell, equal?)."""
    lhs = a_xi(ells, 1) - a_xi(ells, -1)
    rhs = math.prod(jacobi(-1, ell) * ell for ell in ells)
    return lhs, rhs, lhs == rhs


# ---------------------------------------------------------------------------
# divisor statistics and the Elkies-count diagnostic


def omega(d: int, L: int | None = None, *, lmin=None, lmax=None) -> int:
    """Number of primes in [L, 2L] dividing d."""
    lmin, lmax = _range(L, lmin, lmax, "L")
    return sum(1 for ell in primes_in(lmin, lmax) if d % ell == 0)


def omega_stats(EQ: RationalCurve, P: int, L: int, nu: int, cfg: SeaConfig | None = None,
                threads: int = 1, traces: TraceTable | None = None) -> Fraction:
    """Average of omega_L(D_p)^nu over good p in [P, 2P]."""
    if nu not in (1, 2, 3, 4):
        raise InvalidArgumentError(f"nu must be 1..4, got {nu}")
    table = _table(EQ, P, 2 * P, cfg, threads, traces)
    if not table.traces:
        return Fraction(0)
    ells = primes_in(L, 2 * L)
    total = sum(sum(1 for ell in ells if (t * t - 4 * p) % ell == 0) ** nu
                for p, t in table.traces)
    return Fraction(total, len(table.traces))


@dataclass(frozen=True)
class DiagnosticRecord:
    D: int
    L: int
    R: int
    R0: int
    threshold: float
    passed: bool


def elkies_count_diagnostic(D: int, L: int) -> DiagnosticRecord:
    if D >= 0:
        raise InvalidArgumentError("D must be negative")
    if L < 3:
        raise InvalidArgumentError("L must be at least 3")
    R = R0 = 0
    for ell in odd_primes_upto(L):
        s = jacobi(D, ell)
        R += s == 1
        R0 += s == 0
    threshold = L / (5 * math.log(L))
    return DiagnosticRecord(D, L, R, R0, threshold, R >= threshold)
