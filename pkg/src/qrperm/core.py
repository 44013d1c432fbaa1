"""Modular arithmetic primitives modulo an odd prime.

Everything here is a pure function of its inputs.  The prime travels in a
small immutable context object so that ``n = (p - 1) / 2`` and ``p mod 8``
are computed once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, isqrt


# Deterministic Miller-Rabin bases for n < 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(limit: int) -> list[int]:
    """Sieve of Eratosthenes; primes ``<= limit`` in ascending order."""
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for q in range(2, isqrt(limit) + 1):
        if flags[q]:
            flags[q * q :: q] = bytes(len(range(q * q, limit + 1, q)))
    return [i for i, f in enumerate(flags) if f]


def odd_primes_between(lo: int, hi: int) -> list[int]:
    return [q for q in primes_up_to(hi) if q >= max(lo, 3)]


def prime_factors(m: int) -> list[int]:
    """Distinct prime divisors of ``m`` by trial division, ascending."""
    out = []
    q = 2
    while q * q <= m:
        if m % q == 0:
            out.append(q)
            while m % q == 0:
                m //= q
        q += 1 if q == 2 else 2
    if m > 1:
        out.append(m)
    return out


@dataclass(frozen=True)
class PrimeCtx:
    """An odd prime ``p`` together with ``n = (p-1)/2`` and ``p mod 8``."""

    p: int
    n: int = field(init=False)
    cls8: int = field(init=False)

    def __post_init__(self):
        if self.p < 3 or self.p % 2 == 0 or not is_prime(self.p):
            raise ValueError(f"{self.p} is not an odd prime")
        object.__setattr__(self, "n", (self.p - 1) // 2)
        object.__setattr__(self, "cls8", self.p % 8)

    @property
    def cls4(self) -> int:
        return self.p % 4


def centered(a: int, ctx: PrimeCtx) -> int:
    """The representative of ``a`` mod p strictly between -p/2 and p/2."""
    r = a % ctx.p
    return r - ctx.p if r > ctx.n else r


def legendre(a: int, ctx: PrimeCtx) -> int:
    # Euler's criterion
    t = pow(a, ctx.n, ctx.p)
    return -1 if t == ctx.p - 1 else t


def mod_pow(a: int, e: int, ctx: PrimeCtx) -> int:
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    return pow(a, e, ctx.p)


def mod_inv(a: int, ctx: PrimeCtx) -> int:
    if a % ctx.p == 0:
        raise ZeroDivisionError(f"{a} is divisible by {ctx.p}, no inverse")
    return pow(a, -1, ctx.p)


def is_primitive_root(g: int, ctx: PrimeCtx) -> bool:
    p = ctx.p
    if g % p == 0:
        return False
    return all(pow(g, (p - 1) // q, p) != 1 for q in prime_factors(p - 1))


def smallest_primitive_root(ctx: PrimeCtx) -> int:
    g = 1
    while True:
        g += 1
        if is_primitive_root(g, ctx):
            return g


def all_primitive_roots(ctx: PrimeCtx) -> list[int]:
    p = ctx.p
    g0 = smallest_primitive_root(ctx)
    return sorted(pow(g0, k, p) for k in range(1, p) if gcd(k, p - 1) == 1)


def sorted_qrs(ctx: PrimeCtx) -> list[int]:
    """The quadratic residues ``a_1 < ... < a_n`` in ``[1, p-1]``."""
    return sorted({k * k % ctx.p for k in range(1, ctx.n + 1)})


def factorial_mod(m: int, ctx: PrimeCtx) -> int:
    acc = 1
    for k in range(2, m + 1):
        acc = acc * k % ctx.p
    return acc


def discrete_log_table(g: int, ctx: PrimeCtx) -> dict[int, int]:
    """Map residue ``g**k mod p`` to ``k`` for ``0 <= k < p-1``."""
    if not is_primitive_root(g, ctx):
        raise ValueError(f"{g} is not a primitive root mod {ctx.p}")
    table = {}
    x = 1
    for k in range(ctx.p - 1):
        table[x] = k
        x = x * g % ctx.p
    return table
