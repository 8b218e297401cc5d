"""Classical modular polynomials Phi_ell(X, Y) read from coefficient tables.

File format (``phi_<ell>.txt``): a header line ``ell <ell>`` followed by lines
``i j c`` with i >= j, standing for c (X^i Y^j + X^j Y^i) when i > j and
c X^i Y^i when i = j, sorted descending by (i, j).

Tables are looked up in, in order: the directory passed explicitly, the
``SEA_MODPOLY_DIR`` environment variable, and the tables shipped with the
package.  Every table is validated when loaded.
"""

from __future__ import annotations

import math
import os
import threading
from dataclasses import dataclass
from pathlib import Path

from .arith import is_prime
from .errors import CorruptDataError, DataNotFoundError, InvalidArgumentError
from .poly import FpPolynomial

ENV_VAR = "SEA_MODPOLY_DIR"
BUNDLED_DIR = Path(__file__).with_name("data")

# generous constant for the coefficient-size sanity check, bits <= C ell log2 ell
HEIGHT_CONSTANT = 12


@dataclass(frozen=True)
class ModularPolynomial:
    ell: int
    terms: dict          # (i, j) with i >= j  ->  integer coefficient

    def coefficient(self, i: int, j: int) -> int:
        return self.terms.get((i, j) if i >= j else (j, i), 0)

    def full_terms(self):
        """Iterate (i, j, c) over every monomial, both orientations."""
        for (i, j), c in self.terms.items():
            yield i, j, c
            if i != j:
                yield j, i, c

    def max_bits(self) -> int:
        return max(abs(c).bit_length() for c in self.terms.values())


def search_path(data_dir=None) -> list[Path]:
    dirs = []
    if data_dir is not None:
        dirs.append(Path(data_dir))
    env = os.environ.get(ENV_VAR)
    if env:
        dirs.append(Path(env))
    dirs.append(BUNDLED_DIR)
    return dirs


def available_levels(data_dir=None) -> list[int]:
    levels = set()
    for d in search_path(data_dir):
        if d.is_dir():
            for f in d.glob("phi_*.txt"):
                try:
                    levels.add(int(f.stem[4:]))
                except ValueError:
                    pass
    return sorted(levels)


def parse(text: str, ell: int, source: str = "<string>") -> ModularPolynomial:
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != ["ell", str(ell)]:
        raise CorruptDataError(f"{source}: header must be 'ell {ell}'")
    terms = {}
    prev = None
    for n, fields in enumerate(lines[1:], start=2):
        if len(fields) != 3:
            raise CorruptDataError(f"{source}:{n}: expected 'i j c'")
        try:
            i, j, c = (int(x) for x in fields)
        except ValueError:
            raise CorruptDataError(f"{source}:{n}: non-integer field") from None
        if i < j or j < 0:
            raise CorruptDataError(f"{source}:{n}: exponents must satisfy i >= j >= 0")
        if prev is not None and (i, j) >= prev:
            raise CorruptDataError(f"{source}:{n}: lines not strictly descending by (i, j)")
        prev = (i, j)
        terms[(i, j)] = c
    phi = ModularPolynomial(ell, terms)
    validate(phi, source)
    return phi


def validate(phi: ModularPolynomial, source: str = "<data>") -> None:
    """Degree, monicity, Kronecker congruence and coefficient size."""
    ell = phi.ell
    top = max(i for i, _ in phi.terms)
    if top != ell + 1:
        raise CorruptDataError(f"{source}: degree {top}, expected {ell + 1} in each variable")
    if (ell + 1, ell + 1) in phi.terms:
        raise CorruptDataError(f"{source}: the X^{ell + 1} Y^{ell + 1} term must be absent")
    if phi.terms.get((ell + 1, 0)) != 1 or any(
            i == ell + 1 and j > 0 for i, j in phi.terms):
        raise CorruptDataError(f"{source}: not monic of degree {ell + 1} in X")
    # Phi = (X^l - Y)(X - Y^l) mod l
    want = {(ell + 1, 0): 1, (ell, ell): -1, (1, 1): -1}
    for key in set(phi.terms) | set(want):
        if (phi.terms.get(key, 0) - want.get(key, 0)) % ell:
            raise CorruptDataError(f"{source}: Kronecker congruence fails at X^{key[0]} Y^{key[1]}")
    bits = phi.max_bits()
    if bits > HEIGHT_CONSTANT * ell * math.log2(ell) + 64:
        raise CorruptDataError(f"{source}: coefficient of {bits} bits is implausibly large")


_cache: dict = {}
_lock = threading.Lock()


def load(ell: int, data_dir=None) -> ModularPolynomial:
    if ell < 3 or ell % 2 == 0 or not is_prime(ell):
        raise InvalidArgumentError(f"modular polynomials are supported for odd primes, got {ell}")
    dirs = search_path(data_dir)
    for d in dirs:
        path = d / f"phi_{ell}.txt"
        if path.is_file():
            key = (ell, str(path.resolve()))
            with _lock:
                if key not in _cache:
                    _cache[key] = parse(path.read_text(), ell, str(path))
                return _cache[key]
    raise DataNotFoundError(
        f"no modular polynomial for ell = {ell}; searched {', '.join(map(str, dirs))}. "
        f"Add phi_{ell}.txt to one of these directories (see tools/gen_modpoly.py) "
        f"or set {ENV_VAR}.")


def _reduced_rows(phi, j, p):
    """For each power of Y, the coefficient as a polynomial in X evaluated at j."""
    deg = phi.ell + 1
    jp = [1] * (deg + 1)
    for k in range(1, deg + 1):
        jp[k] = jp[k - 1] * j % p
    return jp


def instantiate(phi: ModularPolynomial, j: int, p: int) -> FpPolynomial:
    """Phi(j, Y) as a polynomial in Y over F_p."""
    if p <= 3:
        raise InvalidArgumentError("p must exceed 3")
    jp = _reduced_rows(phi, j % p, p)
    out = [0] * (phi.ell + 2)
    for i, k, c in phi.full_terms():
        out[k] += c * jp[i]
    return FpPolynomial(p, out)


@dataclass(frozen=True)
class Partials:
    dX: int
    dY: int
    dXX: int
    dXY: int
    dYY: int


def instantiate_partials(phi: ModularPolynomial, j: int, jt: int, p: int) -> Partials:
    """First and second partial derivatives of Phi at (X, Y) = (j, jt) in F_p."""
    deg = phi.ell + 1
    j, jt = j % p, jt % p
    xp = [1] * (deg + 1)
    yp = [1] * (deg + 1)
    for k in range(1, deg + 1):
        xp[k] = xp[k - 1] * j % p
        yp[k] = yp[k - 1] * jt % p
    dx = dy = dxx = dxy = dyy = 0
    for i, k, c in phi.full_terms():
        c %= p
        if i >= 1:
            dx += c * i * xp[i - 1] * yp[k]
            if k >= 1:
                dxy += c * i * k * xp[i - 1] * yp[k - 1]
        if k >= 1:
            dy += c * k * xp[i] * yp[k - 1]
        if i >= 2:
            dxx += c * i * (i - 1) * xp[i - 2] * yp[k]
        if k >= 2:
            dyy += c * k * (k - 1) * xp[i] * yp[k - 2]
    return Partials(dx % p, dy % p, dxx % p, dxy % p, dyy % p)
