"""Primality, factorization and squarefreeness for arbitrary-size integers."""

from __future__ import annotations

from functools import lru_cache
from math import gcd, isqrt

from ..errors import FactorizationError

__all__ = [
    "is_square",
    "small_primes",
    "is_prime",
    "factorize",
    "is_squarefree",
    "TRIAL_DIVISION_LIMIT",
    "DEFAULT_FACTOR_BUDGET",
]

TRIAL_DIVISION_LIMIT = 10**6
DEFAULT_FACTOR_BUDGET = 1 << 20

# Deterministic Miller-Rabin for n < 3.317e24 (Sorenson & Webster).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_DETERMINISTIC_BOUND = 3317044064679887385961981
_MR_EXTRA_BASES = (43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113)


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


@lru_cache(maxsize=None)
def small_primes(limit: int = TRIAL_DIVISION_LIMIT) -> tuple[int, ...]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytes(len(range(p * p, limit + 1, p)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def _mr_round(n: int, d: int, s: int, a: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.3e24, strong probable-prime test above."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = _MR_BASES if n < _MR_DETERMINISTIC_BOUND else _MR_BASES + _MR_EXTRA_BASES
    return all(_mr_round(n, d, s, a) for a in bases)


def _brent(n: int, c: int, budget: int) -> tuple[int | None, int]:
    """One Pollard-Brent run with polynomial x^2 + c. Returns (factor or None, iterations used)."""
    y, r, q, g = 2, 1, 1, 1
    m = 128
    used = 0
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            used += min(m, r - k)
            g = gcd(q, n)
            k += m
            if used >= budget:
                return None, used
        r *= 2
    if g == n:
        # backtrack one step at a time
        while True:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
            if g > 1:
                break
    return (g if g != n else None), used


def _split(n: int, budget: list[int]) -> int:
    c = 1
    while budget[0] > 0:
        f, used = _brent(n, c, budget[0])
        budget[0] -= used
        if f is not None:
            return f
        c += 1
    raise FactorizationError(n)


def factorize(n: int, budget: int = DEFAULT_FACTOR_BUDGET, trial_limit: int = TRIAL_DIVISION_LIMIT) -> dict[int, int]:
    """Prime factorization of ``n >= 1`` as ``{prime: exponent}``.

    Trial division up to ``trial_limit`` is followed by Pollard-Brent
    splitting; when the total number of splitter iterations exceeds
    ``budget`` a :class:`FactorizationError` is raised rather than returning
    a partial answer.
    """
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    out: dict[int, int] = {}
    root = isqrt(n)
    for p in small_primes(trial_limit):
        if p > root:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
            root = isqrt(n)
    if n == 1:
        return out
    remaining = [budget]
    stack = [n]
    try:
        while stack:
            m = stack.pop()
            if m == 1:
                continue
            if m <= trial_limit * trial_limit or is_prime(m):
                # every factor below the trial limit is already gone
                if m > 1:
                    out[m] = out.get(m, 0) + 1
                continue
            r = isqrt(m)
            if r * r == m:
                stack.extend((r, r))
                continue
            f = _split(m, remaining)
            stack.extend((f, m // f))
    except FactorizationError as exc:
        raise FactorizationError(exc.n, partial=dict(out)) from None
    return dict(sorted(out.items()))


def is_squarefree(n: int, budget: int = DEFAULT_FACTOR_BUDGET) -> bool:
    if n < 1:
        raise ValueError("is_squarefree needs n >= 1")
    return all(e == 1 for e in factorize(n, budget).values())
