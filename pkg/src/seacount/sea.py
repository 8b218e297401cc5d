"""The Schoof-Elkies-Atkin driver.

Order of business for one curve: supersingular test, CM shortcuts for
j = 0 and j = 1728, then the main loop.  The main loop works through odd
primes ell != p, using Elkies' method where Phi_ell(j, Y) has a root and
parking the other primes in a stale set S.  The hybrid rule sends min(S) to
Schoof as soon as next_ell^(3/4) > c * min(S).  A cost meter tracks the work
spent on the Elkies path; past a budget tied to a model of a plain Schoof
run, every remaining residue is computed with Schoof.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .arith import ResidueSystem, crt_balanced, solve_norm_equation
from .curve import (INFINITY, NAIVE_LIMIT, CurveOverFp, TraceCertificate, is_supersingular,
                    j_invariant, naive_count, random_point, scalar_mul)
from .elkies import PrimeClass, elkies_trace, is_elkies, kernel_polynomial
from .errors import DataNotFoundError, DegenerateIsogenyError, InvalidArgumentError, ResourceLimitError
from .schoof import MAX_ELL, CostMeter, enough, odd_primes_for, schoof_trace, trace_mod_ell

CM_TRIALS = 40


@dataclass(frozen=True)
class SeaConfig:
    hybrid_c: float = 1
    fallback_budget_multiplier: float = 8
    max_ell: int = MAX_ELL
    naive_cutoff: int = NAIVE_LIMIT
    seed: int = 0
    modpoly_dir: str | None = None

    def __post_init__(self):
        if not self.hybrid_c > 0 or not self.fallback_budget_multiplier > 0:
            raise InvalidArgumentError("hybrid_c and fallback_budget_multiplier must be positive")
        if self.max_ell < 3:
            raise InvalidArgumentError("max_ell must be at least 3")
        if self.naive_cutoff < 0:
            raise InvalidArgumentError("naive_cutoff must be non-negative")


def curve_rng(seed: int, E: CurveOverFp) -> random.Random:
    """Per-curve generator, a function of (seed, p, a, b) only."""
    return random.Random(f"{seed}:{E.p}:{E.a}:{E.b}")


# ---------------------------------------------------------------------------
# hybrid schedule


@dataclass(frozen=True)
class RunElkies:
    ell: int


@dataclass(frozen=True)
class RunSchoof:
    ell: int


@dataclass(frozen=True)
class Stop:
    pass


@dataclass
class SeaState:
    p: int
    next_ell: int
    hybrid_c: float = 1
    residues: ResidueSystem = field(default_factory=ResidueSystem)
    stale: set = field(default_factory=set)


def hybrid_schedule(state: SeaState):
    if enough(state.residues.product(), state.p):
        return Stop()
    if state.stale:
        ell0 = min(state.stale)
        if state.next_ell ** 0.75 > state.hybrid_c * ell0:
            return RunSchoof(ell0)
    return RunElkies(state.next_ell)


def schoof_cost_model(p: int) -> int:
    """Meter units a plain Schoof run is expected to spend: per ell, about
    3 log2 p + 2 ell products at degree (ell^2 - 1)/2."""
    total = 0
    product = 1
    for ell in odd_primes_for(p):
        if enough(product, p):
            break
        total += (3 * p.bit_length() + 2 * ell) * (ell * ell - 1) // 2
        product *= ell
    return total


# ---------------------------------------------------------------------------
# CM curves


def cm_candidates(E: CurveOverFp) -> set[int]:
    """Every trace compatible with the norm equation for j = 0 or j = 1728."""
    p = E.p
    j = j_invariant(E)
    out = set()
    if j == 0:
        for t, v in solve_norm_equation(3, 4 * p):
            for s in (t, (t + 3 * v) // 2 if (t + 3 * v) % 2 == 0 else None,
                      (t - 3 * v) // 2 if (t - 3 * v) % 2 == 0 else None):
                if s is not None:
                    out.update((s, -s))
    elif j == 1728 % p:
        for t, v in solve_norm_equation(1, 4 * p):
            out.update((t, -t, v, -v))
    else:
        raise InvalidArgumentError("curve does not have j = 0 or 1728")
    return {t for t in out if t * t <= 4 * p}


def cm_disambiguate(E: CurveOverFp, candidates, rng: random.Random | None = None,
                    trials: int = CM_TRIALS) -> int:
    """The candidate t with (p + 1 - t) Q = O on random points Q; Schoof
    settles anything still ambiguous after ``trials`` points."""
    alive = sorted(set(candidates))
    if not alive:
        raise InvalidArgumentError("empty candidate set")
    rng = rng or random.Random(0)
    for _ in range(trials):
        if len(alive) == 1:
            return alive[0]
        Q = random_point(E, rng)
        alive = [t for t in alive if scalar_mul(E, E.p + 1 - t, Q, check=False) is INFINITY]
    if len(alive) == 1:
        return alive[0]
    return schoof_trace(E, rng).t


# ---------------------------------------------------------------------------
# driver


def _elkies_residue(E, ell, rng, cfg, meter):
    """t mod ell by Elkies, or None when ell is Atkin.  Degenerate kernels
    are handed to Schoof."""
    if is_elkies(E, ell, rng, cfg.modpoly_dir, meter) is PrimeClass.ATKIN:
        return None
    try:
        kp = kernel_polynomial(E, ell, rng, cfg.modpoly_dir, meter, torsion_fallback=False)
    except DegenerateIsogenyError:
        return trace_mod_ell(E, ell, rng, max_ell=cfg.max_ell)
    return elkies_trace(E, ell, kp, meter)


def _main_loop(E: CurveOverFp, cfg: SeaConfig, rng: random.Random) -> ResidueSystem:
    p = E.p
    primes = odd_primes_for(p)
    state = SeaState(p, next(primes), cfg.hybrid_c)
    meter = CostMeter()
    budget = cfg.fallback_budget_multiplier * schoof_cost_model(p)
    fallback = False
    while True:
        if not fallback and meter.units > budget:
            fallback = True
        action = hybrid_schedule(state)
        if isinstance(action, Stop):
            return state.residues
        if fallback:
            # Schoof on the smaller of min(S) and the next fresh prime
            ell = min(state.stale | {state.next_ell})
            action = RunSchoof(ell)
            if ell == state.next_ell:
                state.next_ell = next(primes)
        elif isinstance(action, RunElkies):
            ell = action.ell
            if ell > cfg.max_ell:
                if not state.stale:
                    raise ResourceLimitError("ell", ell, cfg.max_ell)
                action = RunSchoof(min(state.stale))
            else:
                try:
                    r = _elkies_residue(E, ell, rng, cfg, meter)
                except DataNotFoundError:
                    if not state.stale:
                        raise
                    action = RunSchoof(min(state.stale))
                else:
                    state.next_ell = next(primes)
                    if r is None:
                        state.stale.add(ell)
                    else:
                        state.residues = state.residues.with_residue(ell, r)
                    continue
        ell = action.ell
        state.stale.discard(ell)
        state.residues = state.residues.with_residue(
            ell, trace_mod_ell(E, ell, rng, max_ell=cfg.max_ell))


def sea_trace(E: CurveOverFp, cfg: SeaConfig | None = None,
              rng: random.Random | None = None) -> TraceCertificate:
    cfg = cfg or SeaConfig()
    rng = rng or curve_rng(cfg.seed, E)
    p = E.p
    if p <= cfg.naive_cutoff:
        return naive_count(E, max(cfg.naive_cutoff, p))
    if is_supersingular(E, rng):
        return TraceCertificate.from_trace(p, 0, "supersingular")
    j = j_invariant(E)
    if j == 0:
        return TraceCertificate.from_trace(p, cm_disambiguate(E, cm_candidates(E), rng), "cm-j0")
    if j == 1728 % p:
        return TraceCertificate.from_trace(p, cm_disambiguate(E, cm_candidates(E), rng), "cm-j1728")
    rs = _main_loop(E, cfg, rng)
    return TraceCertificate.from_trace(p, crt_balanced(rs), "sea", rs)
