"""Exact integer arithmetic: factorization, divisor enumeration, and the
classical arithmetic functions (Mobius mu, omega, divisor count, greatest
prime factor).

All functions are pure and deterministic; factorization is plain trial
division, sized for desk-scale inputs (n up to ~10^7).  Python integers
never wrap, so results are exact; the 64-bit input bound below is a
resource guard, not an overflow guard.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np

from . import _accel

MAX_INPUT = 2**64 - 1

#: Largest table a sieve call may allocate.
MAX_SIEVE = 50_000_000


class ResourceLimitError(ValueError):
    """Raised when a request exceeds the configured desk-scale ceilings."""


def _check_positive(n, name: str = "n") -> int:
    if not isinstance(n, (int, np.integer)):
        raise TypeError(f"{name} must be an integer, got {type(n).__name__}")
    n = int(n)
    if n < 1:
        raise ValueError(f"{name} must be >= 1, got {n}")
    if n > MAX_INPUT:
        raise ResourceLimitError(f"{name} exceeds the 64-bit input bound")
    return n


@dataclass(frozen=True)
class Factorization:
    """Prime-power decomposition n = prod p_i^r_i with p_1 < p_2 < ...

    The factor list is empty exactly when n = 1.
    """

    n: int
    factors: tuple[tuple[int, int], ...]

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)


def factorize(n: int) -> Factorization:
    """Deterministic trial-division factorization of n >= 1."""
    n = _check_positive(n)
    m = n
    factors = []
    for p in (2, 3):
        if m % p == 0:
            r = 0
            while m % p == 0:
                m //= p
                r += 1
            factors.append((p, r))
    p = 5
    while p * p <= m:
        # candidates 6k +- 1 only
        for q in (p, p + 2):
            if m % q == 0:
                r = 0
                while m % q == 0:
                    m //= q
                    r += 1
                factors.append((q, r))
        p += 6
    if m > 1:
        factors.append((m, 1))
    return Factorization(n, tuple(factors))


def is_prime(n: int) -> bool:
    n = _check_positive(n)
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    p = 5
    while p * p <= n:
        if n % p == 0 or n % (p + 2) == 0:
            return False
        p += 6
    return True


def mobius(n: int) -> int:
    """Mobius function: 1 at n=1, (-1)^j on a product of j distinct primes,
    0 when a squared prime divides n."""
    n = _check_positive(n)
    if n == 1:
        return 1
    j = 0
    for _, r in factorize(n):
        if r >= 2:
            return 0
        j += 1
    return -1 if j % 2 else 1


def mobius_sieve(n: int) -> np.ndarray:
    """Table of mu(1..n), returned 1-indexed (length n+1, slot 0 unused)."""
    n = _check_positive(n, "N")
    if n > MAX_SIEVE:
        raise ResourceLimitError(f"sieve length {n} exceeds ceiling {MAX_SIEVE}")
    return _accel.mobius_table(n)


def divisors(n: int) -> list[int]:
    """All divisors of n in ascending order."""
    n = _check_positive(n)
    divs = [1]
    for p, r in factorize(n):
        pk = 1
        ext = []
        for _ in range(r):
            pk *= p
            ext.extend(d * pk for d in divs)
        divs.extend(ext)
    divs.sort()
    return divs


def gpf(n: int) -> int:
    """Greatest prime factor; defined for n >= 2 only."""
    n = _check_positive(n)
    if n < 2:
        raise ValueError("gpf is undefined for n = 1")
    return factorize(n).factors[-1][0]


def omega(n: int) -> int:
    """Number of distinct prime factors; omega(1) = 0."""
    return len(factorize(n).factors)


def big_omega(n: int) -> int:
    """Number of prime factors counted with multiplicity."""
    return sum(r for _, r in factorize(n))


def divisor_count(n: int) -> int:
    """Number of divisors, prod (r_i + 1) over the factorization."""
    out = 1
    for _, r in factorize(n):
        out *= r + 1
    return out


def primes_up_to(n: int) -> np.ndarray:
    n = _check_positive(n, "N")
    if n > MAX_SIEVE:
        raise ResourceLimitError(f"sieve length {n} exceeds ceiling {MAX_SIEVE}")
    return _accel.primes_up_to(n)


def first_primes(count: int) -> list[int]:
    """The increasing enumeration p_1 = 2, p_2 = 3, ... up to p_count."""
    count = _check_positive(count, "count")
    # p_k < k (ln k + ln ln k) for k >= 6
    bound = 15
    while True:
        ps = primes_up_to(bound)
        if len(ps) >= count:
            return [int(p) for p in ps[:count]]
        bound *= 4


def factorizations_up_to(n_max: int):
    """Yield (n, ((p, r), ...)) for n = 1..n_max using a smallest-prime-factor
    table; much faster than per-n trial division over a full range."""
    n_max = _check_positive(n_max, "n_max")
    if n_max > MAX_SIEVE:
        raise ResourceLimitError(f"sieve length {n_max} exceeds ceiling {MAX_SIEVE}")
    spf = _accel.spf_table(n_max)
    yield 1, ()
    for n in range(2, n_max + 1):
        m = n
        factors = []
        while m > 1:
            p = int(spf[m])
            r = 0
            while m % p == 0:
                m //= p
                r += 1
            factors.append((p, r))
        yield n, tuple(factors)
