import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from oracles import direct_vandermonde
from qrperm.core import PrimeCtx, primes_up_to, smallest_primitive_root
from qrperm.cyclotomic import (
    PolarExact,
    Which,
    build_char_matrix,
    corollary_check,
    corollary_det_formula,
    det_complex,
    lemma24_check,
    lemma24_closed_form,
    lu_det,
    remark21_check,
    vandermonde_product_polar,
)
from qrperm.invariants import quad_invariants


def test_polar_exact_arithmetic():
    a = PolarExact(1.0, Fraction(3, 2))
    b = PolarExact(0.5, Fraction(5, 4))
    c = a * b
    assert c.arg_over_pi == Fraction(3, 4)
    assert c.log_mag == 1.5
    assert PolarExact(0.0, Fraction(-1, 2)).arg_over_pi == Fraction(3, 2)
    assert PolarExact(0.0, 3).real_sign == -1
    with pytest.raises(ValueError):
        PolarExact(0.0, Fraction(1, 2)).real_sign


def test_vandermonde_p13():
    v = vandermonde_product_polar(PrimeCtx(13))
    assert v.arg_over_pi == 1
    assert abs(v.log_mag - math.log(216)) < 1e-9
    assert abs(v.to_complex() - direct_vandermonde(13)) < 1e-9


def test_vandermonde_p5():
    v = vandermonde_product_polar(PrimeCtx(5))
    # single factor i^4 - i^2 = 2
    assert v.arg_over_pi == 0
    assert abs(v.to_complex() - 2) < 1e-12


def test_vandermonde_rejects_p3():
    with pytest.raises(ValueError):
        vandermonde_product_polar(PrimeCtx(3))


def test_vandermonde_matches_direct_product():
    for p in primes_up_to(120)[2:]:
        polar = vandermonde_product_polar(PrimeCtx(p)).to_complex()
        direct = direct_vandermonde(p)
        assert abs(polar - direct) <= 1e-9 * abs(direct)


def test_closed_form_values():
    assert lemma24_closed_form(PrimeCtx(13)).exact == -216
    assert lemma24_closed_form(PrimeCtx(5)).exact == 2
    assert lemma24_closed_form(PrimeCtx(29)).exact == -105413504
    assert lemma24_closed_form(PrimeCtx(17)).exact is None


def test_lemma24_arg_exact_and_square():
    for p in primes_up_to(400)[2:]:
        c = PrimeCtx(p)
        n = c.n
        v = vandermonde_product_polar(c)
        assert v.arg_over_pi == Fraction(3 * n * n - n - 2, 4) % 2
        assert (2 * v.arg_over_pi) % 2 == Fraction((n * n + n + 2) // 2) % 2
        assert lemma24_check(c).passed


def test_char_matrix_entries():
    c = PrimeCtx(5)
    N = build_char_matrix(c, Which.N, 2)
    assert N.exps == ((2, 0), (0, 0))
    M = build_char_matrix(PrimeCtx(13), "M", 2)
    # row 1: ind_2(k^2) for k = 1..6: 1,4,9,3,12,10 -> logs 0,2,8,4,6,10
    assert M.exps[0] == (0, 2, 8, 4, 6, 10)
    with pytest.raises(ValueError):
        build_char_matrix(PrimeCtx(13), "N", 4)


def test_char_matrix_column_permutation():
    c = PrimeCtx(29)
    M = build_char_matrix(c, "M", 2).exps
    N = build_char_matrix(c, "N", 2).exps
    assert sorted(zip(*M)) == sorted(zip(*N))


def test_det_p5_closed_form():
    N = build_char_matrix(PrimeCtx(5), "N", 2).to_array()
    want = N[0, 0] * N[1, 1] - N[0, 1] * N[1, 0]
    assert abs(det_complex(build_char_matrix(PrimeCtx(5), "N", 2)) - want) < 1e-12


def test_lu_det_against_numpy():
    rng = np.random.default_rng(7)
    for m in (1, 3, 8, 25):
        a = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
        want = np.linalg.det(a)
        assert abs(lu_det(a) - want) <= 1e-10 * abs(want)
    a = rng.normal(size=(6, 6)) + 0j
    swapped = a[[1, 0, 2, 3, 4, 5]]
    assert abs(lu_det(swapped) + lu_det(a)) <= 1e-10 * abs(lu_det(a))
    assert lu_det(np.zeros((3, 3))) == 0


def test_det_p13_M():
    d = det_complex(build_char_matrix(PrimeCtx(13), "M", 2))
    assert abs(d - (-216)) <= 1e-6 * 216


def test_det_bound():
    with pytest.raises(ValueError):
        det_complex(build_char_matrix(PrimeCtx(29), "M", 2), max_n=10)


@pytest.mark.parametrize("p,want", [(13, -216), (5, 2)])
def test_corollary_formula_examples(p, want):
    assert corollary_det_formula(PrimeCtx(p), quad_invariants(PrimeCtx(p))) == want


def test_corollary_formula_p29():
    c = PrimeCtx(29)
    val = corollary_det_formula(c, quad_invariants(c))
    assert abs(val) == 14 ** 7
    d = det_complex(build_char_matrix(c, "M", 2))
    assert abs(d - val) <= 1e-6 * abs(val)


def test_corollary_rejects_1mod8():
    with pytest.raises(ValueError):
        corollary_det_formula(PrimeCtx(17), quad_invariants(PrimeCtx(17)))


def test_corollary_check_paths():
    for p in (5, 13, 29, 37, 53):
        c = PrimeCtx(p)
        assert corollary_check(c, quad_invariants(c), 2).passed


@pytest.mark.parametrize("p,g", [(13, 2), (5, 2), (29, 2), (17, 3), (41, 6)])
def test_remark21(p, g):
    r = remark21_check(PrimeCtx(p), g)
    assert r.passed


def test_remark21_p13_values():
    r = remark21_check(PrimeCtx(13), 2)
    assert abs(r.lhs - 216) < 1e-6
    assert abs(r.rhs - 216) < 1e-6


def test_det_N_matches_vandermonde_times_column_product():
    # det[x_c^r] = prod(x_c) * prod_{i<j}(x_j - x_i), x_c = z^(2c)
    for p in (13, 17, 29, 41):
        c = PrimeCtx(p)
        z = cmath.exp(2j * math.pi / (p - 1))
        colprod = np.prod([z ** (2 * k) for k in range(1, c.n + 1)])
        want = colprod * direct_vandermonde(p)
        got = det_complex(build_char_matrix(c, "N", smallest_primitive_root(c)))
        assert abs(got - want) <= 1e-8 * abs(want)
