"""The sequences A0, A1, A2 of centered quadratic residues and the
permutations between them.

Orientation: ``sigma`` is defined by ``S[k] = T[sigma(k)]``.  A permutation
and its inverse have the same sign, so the choice does not affect any sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .core import PrimeCtx, centered, is_primitive_root, mod_inv, sorted_qrs


class Kind(Enum):
    A0 = 0
    A1 = 1
    A2 = 2


@dataclass(frozen=True)
class CenteredSeq:
    kind: Kind
    p: int
    g: int | None
    values: tuple[int, ...]


@dataclass(frozen=True)
class PermutationMap:
    """1-based images ``image[k-1] = sigma(k)`` and the sign."""

    image: tuple[int, ...]
    sign: int


def build_sequence(kind: Kind | int, ctx: PrimeCtx, g: int | None = None) -> CenteredSeq:
    kind = Kind(kind)
    p, n = ctx.p, ctx.n
    if kind is Kind.A0:
        vals = [centered(k * k, ctx) for k in range(1, n + 1)]
        g = None
    elif kind is Kind.A1:
        vals = [centered(a, ctx) for a in sorted_qrs(ctx)]
        g = None
    else:
        if g is None or not is_primitive_root(g, ctx):
            raise ValueError(f"{g} is not a primitive root mod {p}")
        g2 = g * g % p
        vals, x = [], 1
        for _ in range(n):
            x = x * g2 % p
            vals.append(centered(x, ctx))
    return CenteredSeq(kind, p, g, tuple(vals))


def count_inversions(seq) -> int:
    """Number of pairs ``i < j`` with ``seq[i] > seq[j]``, by merge sort."""

    def sort_count(a):
        if len(a) <= 1:
            return a, 0
        mid = len(a) // 2
        left, inv_l = sort_count(a[:mid])
        right, inv_r = sort_count(a[mid:])
        merged = []
        inv = inv_l + inv_r
        i = j = 0
        while i < len(left) and j < len(right):
            if left[i] <= right[j]:
                merged.append(left[i])
                i += 1
            else:
                merged.append(right[j])
                inv += len(left) - i
                j += 1
        merged.extend(left[i:])
        merged.extend(right[j:])
        return merged, inv

    return sort_count(list(seq))[1]


def permutation_sign(seq) -> int:
    return -1 if count_inversions(seq) % 2 else 1


def permutation_between(S: CenteredSeq, T: CenteredSeq) -> PermutationMap:
    if S.p != T.p:
        raise ValueError("sequences belong to different primes")
    pos = {v: k for k, v in enumerate(T.values, start=1)}
    if len(pos) != len(T.values) or set(S.values) != set(pos) or len(S.values) != len(pos):
        raise ValueError("sequences do not have the same value set")
    image = tuple(pos[v] for v in S.values)
    return PermutationMap(image, permutation_sign(image))


def vandermonde_mod(values, p: int) -> int:
    """``prod_{i<j} (v_j - v_i) mod p``."""
    acc = 1
    vals = list(values)
    for j in range(1, len(vals)):
        vj = vals[j]
        for i in range(j):
            acc = acc * (vj - vals[i]) % p
    return acc


def sign_by_modular_ratio(S: CenteredSeq, T: CenteredSeq) -> int:
    """Sign as the ratio of the two difference products, read mod p."""
    if S.p != T.p or set(S.values) != set(T.values):
        raise ValueError("sequences do not have the same value set")
    ctx = PrimeCtx(S.p)
    if ctx.n == 1:
        return 1
    num = vandermonde_mod(S.values, ctx.p)
    den = vandermonde_mod(T.values, ctx.p)
    r = num * mod_inv(den, ctx) % ctx.p
    assert r in (1, ctx.p - 1), f"modular ratio {r} is not +-1 mod {ctx.p}"
    return 1 if r == 1 else -1


def sigma_sign(ctx: PrimeCtx, i: int, j: int, g: int | None = None) -> int:
    """Sign of sigma_{i,j}, the permutation taking A_i to A_j."""
    if i == j or not {i, j} <= {0, 1, 2}:
        raise ValueError(f"invalid sequence pair ({i}, {j})")
    if 2 in (i, j) and g is None:
        raise ValueError("a primitive root g is required for A2")
    S = build_sequence(i, ctx, g)
    T = build_sequence(j, ctx, g)
    return permutation_between(S, T).sign
