"""Exact integer number theory for the bipartite witness parameter pipeline.

Everything here is exact: prime products are arbitrary-precision integers and
all window boundaries (square roots, tenths) are decided by integer
comparisons, never floats.  The only floating-point quantity is the search
threshold in smallest_t, which is guarded by an explicit ambiguity band.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import (
    AmbiguousThreshold,
    InvalidInput,
    NoSuchPower,
    NotCoprime,
)

SIEVE_LIMIT = 10**8

# relative slop around the smallest_t threshold that we refuse to resolve
THRESHOLD_AMBIGUITY = Fraction(1, 10**9)


@dataclass(frozen=True)
class PrimeTable:
    limit: int
    primes: tuple[int, ...]


@lru_cache(maxsize=32)
def _sieve(limit: int) -> tuple[int, ...]:
    if limit < 2:
        return ()
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(flags[p * p :: p]))
    return tuple(i for i in range(2, limit + 1) if flags[i])


def primes_up_to(x: int) -> PrimeTable:
    """All primes <= x, by Eratosthenes."""
    if x < 0:
        raise InvalidInput("x must be non-negative")
    if x > SIEVE_LIMIT:
        raise InvalidInput(f"sieve limit is {SIEVE_LIMIT}")
    return PrimeTable(limit=x, primes=_sieve(int(x)))


def prime_pi(x: float) -> int:
    """Number of primes <= x."""
    if x < 0:
        raise InvalidInput("x must be non-negative")
    return len(primes_up_to(math.floor(x)).primes)


def product_primes_in(lo: float, hi: float) -> int:
    """Exact product of primes p with lo < p <= hi (empty product = 1)."""
    if not 0 <= lo <= hi:
        raise InvalidInput("need 0 <= lo <= hi")
    out = 1
    for p in primes_up_to(math.floor(hi)).primes:
        if p > lo:
            out *= p
    return out


def s_of_l(l: int) -> int:
    """The squared-window prime product: primes in (sqrt(l)/10, sqrt(l)]
    squared, times primes in (sqrt(l), l].

    Window membership is decided exactly: p <= sqrt(l) iff p*p <= l and
    p > sqrt(l)/10 iff 100*p*p > l.
    """
    if l < 1:
        raise InvalidInput("l must be >= 1")
    out = 1
    for p in _sieve(l):
        if p * p > l:
            out *= p
        elif 100 * p * p > l:
            out *= p * p
    return out


def smallest_t(m: int) -> int:
    """Smallest t with s(t) strictly above m * (log m)^(1/4) / 2.

    The threshold is evaluated in double precision; if some s(t) lands
    within 1e-9 relative distance of it the search refuses to resolve.
    """
    if m < 3:
        raise InvalidInput("m must be >= 3")
    thr = Fraction(m * math.log(m) ** 0.25 / 2)
    t = 2
    while True:
        s = s_of_l(t)
        if thr > 0 and abs(s - thr) / thr < THRESHOLD_AMBIGUITY:
            raise AmbiguousThreshold(f"s({t}) = {s} within slop of threshold")
        if s > thr:
            return t
        t += 1


def check_pnt_bound(which: str, s: float) -> bool:
    """Truthful evaluation of one of the two prime-window inequalities at
    this s (no asymptotic claim).

    which="window": product of primes in (s/10, s] vs (s/10)^(0.5 s / log s).
    which="ratio":  that product over the product of primes <= s/10, vs s^40.
    """
    if s <= 10:
        raise InvalidInput("s must be > 10")
    num = product_primes_in(s / 10, s)
    if which == "window":
        rhs_log = (0.5 * s / math.log(s)) * math.log(s / 10)
        return math.log(num) > rhs_log
    if which == "ratio":
        den = product_primes_in(0, s / 10)
        return math.log(num) - math.log(den) > 40 * math.log(s)
    raise InvalidInput(f"unknown bound {which!r}")


def mod_inverse(a: int, q: int) -> int:
    """Inverse of a modulo q, in [0, q)."""
    if q < 1:
        raise InvalidInput("q must be >= 1")
    try:
        return pow(a, -1, q)
    except ValueError:
        raise NotCoprime(f"gcd({a}, {q}) != 1") from None


def solve_x(n: int, a: int, q: int) -> int:
    """Unique x in [0, q) with n*x == a (mod q)."""
    return (a % q) * mod_inverse(n % q, q) % q


def select_prime_power(s_t: int, t: int, c: int, m: int) -> tuple[int, int, int, int]:
    """Pick the smallest prime whose full power inside s(t) does not divide
    c - m.  Returns (p1, eps, n, r_resid) with n = p1**eps and r_resid the
    smallest positive r <= t such that n divides c - r.
    """
    if c <= m:
        raise InvalidInput("need c > m")
    diff = c - m
    for p in _sieve(t):
        if p * p > t:
            eps = 1
        elif 100 * p * p > t:
            eps = 2
        else:
            continue  # p not a factor of s(t)
        n = p**eps
        assert s_t % n == 0 and (s_t // n) % p != 0, "power mismatch vs s(t)"
        if diff % n != 0:
            r = c % n
            if r == 0:
                r = n
            assert 1 <= r <= t and (c - r) % n == 0
            assert (m - r) % n != 0  # follows from n | c-r and n ∤ c-m
            return p, eps, n, r
    raise NoSuchPower(f"every prime power in s({t}) divides {diff}")
