"""Square roots modulo composite moduli: Tonelli-Shanks, Hensel lifting, CRT."""

from __future__ import annotations

from itertools import product

from ..errors import NonResidueError, RootCountError
from .ntheory import DEFAULT_FACTOR_BUDGET, factorize

__all__ = [
    "tonelli_shanks",
    "sqrt_mod_prime_power",
    "sqrt_mod_all",
    "sqrt_mod_min",
    "DEFAULT_ROOT_CAP",
]

DEFAULT_ROOT_CAP = 1 << 16


def tonelli_shanks(a: int, p: int) -> int:
    """A root of x^2 = a (mod p) for an odd prime p; the caller checks residuosity."""
    a %= p
    if a == 0:
        return 0
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def _unit_roots_odd(d: int, p: int, e: int) -> list[int]:
    """Roots of y^2 = d (mod p^e) with p odd and p not dividing d."""
    if pow(d % p, (p - 1) // 2, p) != 1:
        return []
    y = tonelli_shanks(d, p)
    mod = p
    for _ in range(1, e):
        mod *= p
        # Newton/Hensel: y <- y - (y^2 - d) / (2y)
        y = (y - (y * y - d) * pow(2 * y, -1, mod)) % mod
    return sorted({y % mod, (-y) % mod})


def _unit_roots_two(d: int, e: int) -> list[int]:
    """Roots of y^2 = d (mod 2^e) with d odd."""
    if e == 1:
        return [1]
    if e == 2:
        return [1, 3] if d % 4 == 1 else []
    if d % 8 != 1:
        return []
    y = 1
    for k in range(3, e):
        # y^2 = d (mod 2^k); fix bit k-1 so that it also holds mod 2^(k+1)
        if (y * y - d) % (1 << (k + 1)):
            y += 1 << (k - 1)
    mod = 1 << e
    half = 1 << (e - 1)
    return sorted({y % mod, (-y) % mod, (y + half) % mod, (-y + half) % mod})


def sqrt_mod_prime_power(a: int, p: int, e: int) -> list[int]:
    """All roots of x^2 = a (mod p^e), sorted."""
    mod = p**e
    a %= mod
    if a == 0:
        step = p ** ((e + 1) // 2)
        return list(range(0, mod, step))
    k = 0
    while a % p == 0:
        a //= p
        k += 1
    if k % 2:
        return []
    h = k // 2
    sub = p ** (e - k)
    base = _unit_roots_two(a, e - k) if p == 2 else _unit_roots_odd(a, p, e - k)
    # x = p^h * y with y known mod p^(e-k); y is free mod p^(e-h)
    lift = p ** (e - h)
    roots = set()
    for y0 in base:
        for j in range(p**h):
            y = y0 + j * sub
            if y < lift:
                roots.add((p**h * y) % mod)
    return sorted(roots)


def sqrt_mod_all(a: int, n: int, budget: int = DEFAULT_FACTOR_BUDGET, cap: int = DEFAULT_ROOT_CAP) -> list[int]:
    """Every residue x in [0, n) with x^2 = a (mod n), sorted ascending."""
    if n < 1:
        raise ValueError("modulus must be positive")
    if n == 1:
        return [0]
    parts = []
    total = 1
    for p, e in factorize(n, budget).items():
        roots = sqrt_mod_prime_power(a, p, e)
        if not roots:
            return []
        parts.append((p**e, roots))
        total *= len(roots)
        if total > cap:
            raise RootCountError(f"{total}+ square roots of {a} mod {n} exceed cap {cap}")
    out = []
    for combo in product(*(roots for _, roots in parts)):
        x, m = 0, 1
        for (mod, _), r in zip(parts, combo):
            # CRT merge of x (mod m) with r (mod mod)
            t = (r - x) * pow(m, -1, mod) % mod
            x += m * t
            m *= mod
        out.append(x % m)
    return sorted(out)


def sqrt_mod_min(a: int, n: int, budget: int = DEFAULT_FACTOR_BUDGET, cap: int = DEFAULT_ROOT_CAP) -> int:
    """Smallest ``x >= 0`` with ``x^2 = a (mod n)``; :class:`NonResidueError` if none."""
    roots = sqrt_mod_all(a, n, budget, cap)
    if not roots:
        raise NonResidueError(f"{a} is not a square modulo {n}")
    return roots[0]
