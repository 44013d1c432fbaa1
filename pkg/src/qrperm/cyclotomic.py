"""Products over (p-1)-th roots of unity and the Dirichlet character matrices.

Arguments are tracked as exact rational multiples of pi, so equality of
angles is decided without tolerance.  Only magnitudes are floating point
(natural logs accumulated with ``math.fsum``).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .core import PrimeCtx, discrete_log_table
from .identities import CheckResult, theorem12_sign_5mod8
from .invariants import QuadInvariants
from .perm import sigma_sign

DET_MAX_N = 100


@dataclass(frozen=True)
class PolarExact:
    """``exp(log_mag) * exp(i * pi * arg_over_pi)`` with ``arg_over_pi`` in [0, 2)."""

    log_mag: float
    arg_over_pi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "arg_over_pi", Fraction(self.arg_over_pi) % 2)

    def __mul__(self, other: PolarExact) -> PolarExact:
        return PolarExact(self.log_mag + other.log_mag, self.arg_over_pi + other.arg_over_pi)

    @property
    def is_real(self) -> bool:
        return self.arg_over_pi in (0, 1)

    @property
    def real_sign(self) -> int:
        if not self.is_real:
            raise ValueError(f"argument {self.arg_over_pi}*pi is not real")
        return 1 if self.arg_over_pi == 0 else -1

    def to_complex(self) -> complex:
        return cmath.rect(math.exp(self.log_mag), math.pi * float(self.arg_over_pi))


def vandermonde_product_polar(ctx: PrimeCtx) -> PolarExact:
    """``prod_{1<=i<j<=n} (z^{2j} - z^{2i})`` with ``z = exp(2 pi i/(p-1))``.

    Each factor equals ``z^{i+j} * 2i * sin(2 pi (j-i)/(p-1))`` and the sine is
    positive because ``j - i < n``.  Factors are grouped by ``d = j - i``.
    """
    p, n = ctx.p, ctx.n
    if p <= 3:
        raise ValueError("requires p > 3")
    logs = []
    sum_ij = 0
    for d in range(1, n):
        mult = n - d
        s = math.sin(2 * math.pi * d / (p - 1))
        assert s > 0
        logs.append(mult * math.log(2 * s))
        # sum over i = 1..n-d of (i + (i + d))
        sum_ij += mult * (mult + 1) + d * mult
    npairs = n * (n - 1) // 2
    arg = Fraction(2 * sum_ij, p - 1) + Fraction(npairs, 2)
    return PolarExact(math.fsum(logs), arg)


@dataclass(frozen=True)
class ClosedForm:
    polar: PolarExact
    exact: int | None  # set when the product is a rational integer (p = 5 mod 8)


def lemma24_closed_form(ctx: PrimeCtx) -> ClosedForm:
    n = ctx.n
    if ctx.p <= 3:
        raise ValueError("requires p > 3")
    polar = PolarExact(n / 2 * math.log(n), Fraction(3 * n * n - n - 2, 4))
    exact = None
    if ctx.cls8 == 5:
        exact = n ** (n // 2) * (-1 if ((n - 2) // 4) % 2 else 1)
    return ClosedForm(polar, exact)


class Which(Enum):
    M = "M"
    N = "N"


@dataclass(frozen=True)
class CharMatrix:
    """Entry ``(r, c)`` is ``z**exps[r-1][c-1]`` with ``z = exp(2 pi i/(p-1))``."""

    which: Which
    p: int
    g: int
    exps: tuple[tuple[int, ...], ...]

    def to_array(self) -> np.ndarray:
        e = np.array(self.exps, dtype=float)
        return np.exp(2j * np.pi * e / (self.p - 1))


def build_char_matrix(ctx: PrimeCtx, which: Which | str, g: int) -> CharMatrix:
    """Rows are chi, chi^2, ..., chi^n with chi(g) = z.

    M has columns chi^r(k^2), N has columns chi^r(g^(2k)), k = 1..n.
    """
    which = Which(which)
    p, n = ctx.p, ctx.n
    if p < 5:
        raise ValueError("requires p >= 5")
    ind = discrete_log_table(g, ctx)
    if which is Which.M:
        cols = [ind[k * k % p] for k in range(1, n + 1)]
    else:
        cols = [2 * k for k in range(1, n + 1)]
    exps = tuple(tuple(r * c % (p - 1) for c in cols) for r in range(1, n + 1))
    return CharMatrix(which, p, g, exps)


def lu_det(a: np.ndarray) -> complex:
    """Determinant by LU with partial pivoting.

    Rounding error grows roughly like ``n**3 * eps * |det|``.
    """
    a = np.array(a, dtype=complex)
    m = a.shape[0]
    det = 1.0 + 0j
    for col in range(m):
        piv = col + int(np.argmax(np.abs(a[col:, col])))
        if a[piv, col] == 0:
            return 0j
        if piv != col:
            a[[col, piv]] = a[[piv, col]]
            det = -det
        det *= a[col, col]
        f = a[col + 1 :, col] / a[col, col]
        a[col + 1 :, col:] -= np.outer(f, a[col, col:])
    return complex(det)


def det_complex(m: CharMatrix, max_n: int = DET_MAX_N) -> complex:
    n = len(m.exps)
    if n > max_n:
        raise ValueError(f"matrix size {n} exceeds the bound {max_n}")
    return lu_det(m.to_array())


def corollary_det_formula(ctx: PrimeCtx, inv: QuadInvariants) -> int:
    """Exact det(M_p) for ``p = 5 mod 8``."""
    n = ctx.n
    if ctx.cls8 != 5:
        raise ValueError(f"requires p = 5 mod 8, got {ctx.p}")
    sign = -1 if ((n + 2) // 4) % 2 else 1
    return n ** (n // 2) * sign * theorem12_sign_5mod8(ctx, inv)


def _rel_close(a: complex, b: complex, rel_tol: float) -> bool:
    return abs(a - b) <= rel_tol * max(abs(a), abs(b))


def remark21_check(ctx: PrimeCtx, g: int, rel_tol: float = 1e-6, max_n: int = DET_MAX_N) -> CheckResult:
    """det(N) = -prod(z^{2j} - z^{2i}) and det(M) = sgn(sigma_{0,2}) det(N)."""
    if ctx.p % 4 != 1:
        raise ValueError(f"requires p = 1 mod 4, got {ctx.p}")
    prod = vandermonde_product_polar(ctx).to_complex()
    det_n = det_complex(build_char_matrix(ctx, Which.N, g), max_n)
    det_m = det_complex(build_char_matrix(ctx, Which.M, g), max_n)
    sgn = sigma_sign(ctx, 0, 2, g)
    ok_n = _rel_close(det_n, -prod, rel_tol)
    ok_m = _rel_close(det_m, sgn * det_n, rel_tol)
    return CheckResult(
        "remark2.1",
        ctx.p,
        det_n,
        -prod,
        ok_n and ok_m,
        {"g": g, "det_M": det_m, "sigma02": sgn, "det_N_relation": ok_n, "det_M_relation": ok_m},
    )


def corollary_check(
    ctx: PrimeCtx, inv: QuadInvariants, g: int, rel_tol: float = 1e-6, log_tol: float = 1e-9, max_n: int = DET_MAX_N
) -> CheckResult:
    """Corollary value against det_complex(M) when small, and always against
    the polar product combined with the sigma_{0,2} sign."""
    formula = corollary_det_formula(ctx, inv)
    polar = vandermonde_product_polar(ctx)
    sgn = sigma_sign(ctx, 0, 2, g)
    # det(M) = sgn * det(N) = -sgn * product
    path_sign = -sgn * polar.real_sign if polar.is_real else 0
    log_f = math.log(abs(formula))
    ok_sign = path_sign == (1 if formula > 0 else -1)
    ok_log = abs(log_f - polar.log_mag) <= log_tol * abs(log_f)
    witness = {"g": g, "sigma02": sgn, "polar_arg": str(polar.arg_over_pi), "polar_sign_ok": ok_sign, "log_ok": ok_log}
    rhs: object = f"{path_sign}*exp({polar.log_mag!r})"
    ok_det = True
    if ctx.n <= max_n:
        det_m = det_complex(build_char_matrix(ctx, Which.M, g), max_n)
        ok_det = _rel_close(complex(formula), det_m, rel_tol)
        witness["det_complex_ok"] = ok_det
        rhs = det_m
    return CheckResult("cor1.1", ctx.p, formula, rhs, ok_sign and ok_log and ok_det, witness)


def lemma24_check(ctx: PrimeCtx, log_tol: float = 1e-9) -> CheckResult:
    polar = vandermonde_product_polar(ctx)
    closed = lemma24_closed_form(ctx)
    n = ctx.n
    ok_arg = polar.arg_over_pi == closed.polar.arg_over_pi
    ok_log = abs(polar.log_mag - closed.polar.log_mag) <= log_tol * abs(closed.polar.log_mag)
    ok_sq = (2 * polar.arg_over_pi) % 2 == Fraction((n * n + n + 2) // 2) % 2
    ok_exact = True
    if closed.exact is not None:
        ok_exact = (
            polar.is_real
            and polar.real_sign == (1 if closed.exact > 0 else -1)
            and abs(polar.log_mag - math.log(abs(closed.exact))) <= log_tol * math.log(abs(closed.exact))
        )
    witness = {"arg_ok": ok_arg, "log_ok": ok_log, "square_ok": ok_sq, "exact_ok": ok_exact}
    if closed.exact is not None:
        witness["exact"] = closed.exact
    return CheckResult(
        "lemma2.4",
        ctx.p,
        f"{polar.arg_over_pi}pi|{polar.log_mag!r}",
        f"{closed.polar.arg_over_pi}pi|{closed.polar.log_mag!r}",
        ok_arg and ok_log and ok_sq and ok_exact,
        witness,
    )
