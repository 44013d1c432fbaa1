"""Arithmetic invariants of Q(sqrt(p)) and Q(sqrt(-p)).

Class numbers are obtained by counting reduced binary quadratic forms, so
every value is an exact integer.  The fundamental unit comes from the
continued fraction of sqrt(p) with arbitrary-precision convergents.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .core import PrimeCtx, legendre


@dataclass(frozen=True)
class FundamentalUnit:
    """``(u + v*sqrt(p)) / 2`` with ``u**2 - p*v**2 == norm4``."""

    p: int
    u: int
    v: int
    norm4: int

    def __post_init__(self):
        assert self.u * self.u - self.p * self.v * self.v == self.norm4
        assert self.norm4 in (4, -4)

    @property
    def u_mod_p(self) -> int:
        return self.u % self.p

    @property
    def v_mod_p(self) -> int:
        return self.v % self.p


@dataclass(frozen=True)
class QuadInvariants:
    p: int
    h_real: int
    h_imag: int
    unit: FundamentalUnit
    s_p_mod_p: int
    r_star: int

    @property
    def u_mod_p(self) -> int:
        return self.unit.u_mod_p

    @property
    def v_mod_p(self) -> int:
        return self.unit.v_mod_p


def _require_1mod4(ctx: PrimeCtx) -> None:
    if ctx.p % 4 != 1:
        raise ValueError(f"requires p = 1 mod 4, got p = {ctx.p}")


def _icbrt(x: int) -> int:
    """Floor of the real cube root of a nonnegative integer."""
    lo, hi = 0, 1
    while hi ** 3 <= x:
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid ** 3 <= x:
            lo = mid
        else:
            hi = mid
    return lo


def pell_minus_one(p: int) -> tuple[int, int]:
    """Minimal ``(x, y)`` with ``x**2 - p*y**2 == -1``.

    Runs the continued fraction of sqrt(p) through one period.  The period
    is odd for primes ``p = 1 mod 4``; anything else means a bug.
    """
    a0 = isqrt(p)
    P, Q, a = 0, 1, a0
    h_prev, h = 1, a0
    k_prev, k = 0, 1
    period = 0
    while True:
        P = a * Q - P
        Q = (p - P * P) // Q
        a = (a0 + P) // Q
        period += 1
        if Q == 1:
            break
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
    assert period % 2 == 1, f"even period {period} for p = {p}"
    assert h * h - p * k * k == -1, f"no norm -1 solution found for p = {p}"
    return h, k


def fundamental_unit(ctx: PrimeCtx) -> FundamentalUnit:
    _require_1mod4(ctx)
    p = ctx.p
    x1, y1 = pell_minus_one(p)
    # If an odd pair (u, v) exists, ((u + v*sqrt p)/2)**3 = x1 + y1*sqrt p,
    # which forces u**3 + 3u = 2*x1.
    if p % 8 == 5:
        u = _icbrt(2 * x1)
        while u ** 3 + 3 * u > 2 * x1:
            u -= 1
        if u ** 3 + 3 * u == 2 * x1 and u % 2 == 1:
            v2, rem = divmod(u * u + 4, p)
            v = isqrt(v2)
            if rem == 0 and v * v == v2:
                return FundamentalUnit(p, u, v, -4)
    return FundamentalUnit(p, 2 * x1, 2 * y1, -4)


def _lt_sqrt(x: int, d: int) -> bool:
    """``x < sqrt(d)`` for a non-square ``d > 0``."""
    return x < 0 or x * x < d


def _gt_sqrt(x: int, d: int) -> bool:
    return x > 0 and x * x > d


def reduced_indefinite_forms(d: int) -> list[tuple[int, int, int]]:
    """Reduced primitive forms ``(a, b, c)`` of non-square discriminant ``d > 0``.

    Reduced means ``0 < b < sqrt d`` and ``sqrt d - b < 2|a| < sqrt d + b``.
    """
    s = isqrt(d)
    assert s * s != d
    forms = []
    for b in range(d % 2 or 2, s + 1, 2):
        if not _lt_sqrt(b, d):
            continue
        ac = (b * b - d) // 4
        for a_abs in range(1, (s + b) // 2 + 1):
            two_a = 2 * a_abs
            if not (_gt_sqrt(two_a + b, d) and _lt_sqrt(two_a - b, d)):
                continue
            if ac % a_abs:
                continue
            for a in (a_abs, -a_abs):
                c = ac // a
                if gcd(gcd(a, b), c) == 1:
                    forms.append((a, b, c))
    return forms


def rho(form: tuple[int, int, int], d: int) -> tuple[int, int, int]:
    """Reduction operator: ``(a, b, c) -> (c, b', (b'^2 - d) / 4c)``."""
    _, b, c = form
    s = isqrt(d)
    m = 2 * abs(c)
    b2 = s - (s + b) % m
    return c, b2, (b2 * b2 - d) // (4 * c)


def form_cycles(d: int) -> list[list[tuple[int, int, int]]]:
    forms = reduced_indefinite_forms(d)
    pool = set(forms)
    seen = set()
    cycles = []
    for f in forms:
        if f in seen:
            continue
        cyc = [f]
        seen.add(f)
        g = rho(f, d)
        while g != f:
            assert g in pool, f"rho left the reduced set at {g}"
            cyc.append(g)
            seen.add(g)
            g = rho(g, d)
        cycles.append(cyc)
    return cycles


def class_number_real(ctx: PrimeCtx) -> int:
    """h(p) for prime ``p = 1 mod 4``.

    Counts cycles of reduced forms, which gives the narrow class number.
    The fundamental unit has norm -1 here, so narrow and wide agree.
    """
    _require_1mod4(ctx)
    assert fundamental_unit(ctx).norm4 == -4
    return len(form_cycles(ctx.p))


def class_number_imag(d: int) -> int:
    """Number of reduced primitive positive definite forms of discriminant d."""
    if d >= 0 or d % 4 not in (0, 1):
        raise ValueError(f"invalid negative discriminant {d}")
    D = -d
    h = 0
    bmax = isqrt(D // 3)
    for b in range(D % 2, bmax + 1, 2):
        ac = (b * b + D) // 4
        a = max(b, 1)
        while a * a <= ac:
            if ac % a == 0:
                c = ac // a
                if gcd(gcd(a, b), c) == 1:
                    # (a, b, c) always counts; (a, -b, c) only if not on the boundary
                    h += 1
                    if 0 < b < a < c:
                        h += 1
            a += 1
    return h


def s_p(ctx: PrimeCtx) -> int:
    """Product of the nonresidues in ``[1, n]``, reduced mod p."""
    acc = 1
    for k in range(1, ctx.n + 1):
        if legendre(k, ctx) == -1:
            acc = acc * k % ctx.p
    return acc


def r_star(ctx: PrimeCtx) -> int:
    """Ordered pairs ``(x, y)`` of residues with ``x + y <= n``."""
    n = ctx.n
    qr = [x for x in range(1, n + 1) if legendre(x, ctx) == 1]
    # prefix[m] = number of residues in [1, m]
    prefix = [0] * (n + 1)
    for x in range(1, n + 1):
        prefix[x] = prefix[x - 1] + (legendre(x, ctx) == 1)
    return sum(prefix[n - x] for x in qr)


def quad_invariants(ctx: PrimeCtx) -> QuadInvariants:
    _require_1mod4(ctx)
    return QuadInvariants(
        p=ctx.p,
        h_real=class_number_real(ctx),
        h_imag=class_number_imag(-4 * ctx.p),
        unit=fundamental_unit(ctx),
        s_p_mod_p=s_p(ctx),
        r_star=r_star(ctx),
    )
