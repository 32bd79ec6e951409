import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import charpoly_coeffs, compound, leibniz_det, random_matrix
from wedgemaps.kernel import (
    Matrix,
    NotAPerfectPower,
    Poly,
    PowerSeries,
    RationalFunction,
    char_poly,
    cyclotomic,
    cyclotomic_factorization,
    determinant,
    divisors,
    exact,
    exterior_power,
    format_poly,
    integer_nth_root,
    mobius,
    mobius_transform,
    poly_gcd,
    power_sums,
    ratfunc_normalize,
    ratfunc_nth_root,
    series_exp_log,
    series_nth_root,
    totient,
    trace_power,
)


def square_matrices(max_n=4, lo=-4, hi=4):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n))


# ---------------------------------------------------------------- scalars


def test_exact_normalizes_integral_fractions():
    assert exact(Fraction(6, 3)) == 2 and type(exact(Fraction(6, 3))) is int
    assert exact("3/6") == Fraction(1, 2)
    assert exact("-12") == -12
    with pytest.raises(TypeError):
        exact(0.5)
    with pytest.raises(TypeError):
        exact(True)


# ---------------------------------------------------------------- number theory


def test_mobius_small_values():
    assert [mobius(m) for m in range(1, 13)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]


def test_mobius_matches_sympy():
    for m in range(1, 400):
        assert mobius(m) == sympy.mobius(m)
        assert totient(m) == sympy.totient(m)
        assert list(divisors(m)) == sympy.divisors(m)


def test_arith_rejects_nonpositive():
    for fn in (mobius, divisors, totient):
        with pytest.raises(ValueError):
            fn(0)


@given(st.lists(st.integers(-10**6, 10**6), min_size=1, max_size=40))
def test_mobius_round_trip(values):
    # l = mu * L, then summing l over divisors recovers L
    ell = [mobius_transform(values, m) for m in range(1, len(values) + 1)]
    for m in range(1, len(values) + 1):
        assert sum(ell[r - 1] for r in divisors(m)) == values[m - 1]


def test_mobius_transform_accepts_callables():
    L = lambda m: 1 - 3 ** m  # circle map of degree 3
    assert mobius_transform(L, 1) == -2
    assert mobius_transform(L, 2) == (1 - 9) - (1 - 3)


@given(st.integers(-10**9, 10**9), st.integers(1, 7))
def test_integer_nth_root(x, n):
    r = integer_nth_root(x, n)
    if r is None:
        assert all(y ** n != x for y in range(-2000, 2001)) or abs(x) > 2000 ** n
    else:
        assert r ** n == x


def test_integer_nth_root_perfect_powers():
    assert integer_nth_root(3 ** 40, 8) == 243
    assert integer_nth_root(-27, 3) == -3
    assert integer_nth_root(-16, 4) is None
    assert integer_nth_root(17, 2) is None


# ---------------------------------------------------------------- determinants and char polys


@settings(max_examples=80, deadline=None)
@given(square_matrices(max_n=5))
def test_determinant_matches_leibniz(rows):
    assert determinant(Matrix(rows)) == leibniz_det(rows)


@settings(max_examples=80, deadline=None)
@given(square_matrices(max_n=5))
def test_char_poly_matches_sympy(rows):
    p = char_poly(Matrix(rows))
    assert list(p.coeffs) == charpoly_coeffs(rows)


def test_char_poly_rational_entries():
    rows = [[Fraction(1, 2), 1], [Fraction(-1, 3), 2]]
    p = char_poly(Matrix(rows))
    expected = Poly(charpoly_coeffs(rows))
    # rational input is reported up to a scalar: compare monic forms
    assert p.monic() == expected.monic()


def test_char_poly_examples():
    assert char_poly(Matrix([[0, 1], [1, 0]])) == Poly([-1, 0, 1])
    assert char_poly(Matrix.identity(3)) == Poly([-1, 1]) ** 3
    assert char_poly(Matrix([[0, 0, 3], [1, 0, 0], [0, 1, 0]])) == Poly([-3, 0, 0, 1])


@settings(max_examples=40, deadline=None)
@given(square_matrices(max_n=4, lo=-3, hi=3), st.integers(1, 10))
def test_trace_power_methods_agree(rows, m):
    A = Matrix(rows)
    direct = (sympy.Matrix(rows) ** m).trace()
    assert trace_power(A, m) == direct
    assert trace_power(A, m, method="newton") == direct


def test_power_sums_newton():
    A = Matrix([[2, 1, 0], [0, 1, -1], [3, 0, 1]])
    assert power_sums(A, 8) == [(A ** m).trace() for m in range(1, 9)]


# ---------------------------------------------------------------- exterior powers


@settings(max_examples=60, deadline=None)
@given(square_matrices(max_n=4), st.integers(1, 4))
def test_exterior_power_is_compound_matrix(rows, k):
    if k > len(rows):
        return
    assert exterior_power(Matrix(rows), k).tolist() == compound(rows, k)


def test_exterior_power_rectangular():
    A = Matrix([[1, 2, 0], [0, 1, 3]])
    assert exterior_power(A, 2).tolist() == compound(A.tolist(), 2)
    assert exterior_power(A, 3).shape == (0, 1)


def test_exterior_power_swap_gives_minus_one():
    assert exterior_power(Matrix([[0, 1], [1, 0]]), 2) == Matrix([[-1]])


def test_exterior_power_functoriality_and_det_identity():
    rng = random.Random(9)
    for _ in range(40):
        n = rng.randint(1, 4)
        A, B = Matrix(random_matrix(rng, n, n)), Matrix(random_matrix(rng, n, n))
        for k in range(1, n + 1):
            assert exterior_power(A @ B, k) == exterior_power(A, k) @ exterior_power(B, k)
        alt = 1 + sum((-1) ** k * exterior_power(A, k).trace() for k in range(1, n + 1))
        assert alt == determinant(Matrix.identity(n) - A)


# ---------------------------------------------------------------- polynomials


def test_poly_arithmetic_and_division():
    a = Poly([1, 2, 1])
    b = Poly([1, 1])
    assert a.exact_div(b) == b
    q, r = divmod(Poly([1, 0, 0, 1]), Poly([1, 1]))
    assert q * Poly([1, 1]) + r == Poly([1, 0, 0, 1]) and r.is_zero()
    with pytest.raises(ArithmeticError):
        Poly([1, 0, 1]).exact_div(Poly([1, 1]))


def test_poly_gcd_is_primitive():
    g = poly_gcd(Poly([2, 4, 2]), Poly([-3, 0, 3]))
    assert g == Poly([1, 1])


def test_format_poly():
    assert format_poly([1, -1, 0, 2]) == "1 - t + 2*t^3"
    assert format_poly([0]) == "0"
    assert str(Poly([-1, 0, 1])) == "-1 + t^2"


def test_cyclotomic_polynomials():
    for d in range(1, 40):
        assert list(cyclotomic(d).coeffs) == [int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(d, sympy.Symbol("x"))).all_coeffs())]


def test_cyclotomic_factorization():
    found, e, rest = cyclotomic_factorization(Poly([1, 0, 2, 0, 1]))  # (t^2 + 1)^2
    assert found == {4: 2} and e == 0 and rest.degree == 0
    found, e, rest = cyclotomic_factorization(Poly([0, 0, -1, 0, 1]))  # t^2 (t^2 - 1)
    assert found == {1: 1, 2: 1} and e == 2
    found, _, rest = cyclotomic_factorization(Poly([-3, 0, 0, 1]))
    assert found == {} and rest.degree == 3


# ---------------------------------------------------------------- rational functions


def test_ratfunc_canonical_form():
    # (1 - t^4)^2 / ((1 - t)(1 - t^2)^3) reduces to (1 + t^2)^2 / ((1 - t)(1 - t^2))
    num = Poly([1, 0, 0, 0, -1]) ** 2
    den = Poly([1, -1]) * Poly([1, 0, -1]) ** 3
    F = ratfunc_normalize(num, den)
    G = RationalFunction(Poly([1, 0, 1]) ** 2, Poly([1, -1]) * Poly([1, 0, -1]))
    assert F == G
    assert F.num == Poly([1, 0, 2, 0, 1]) and F.den == Poly([1, -1, -1, 1])


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=5),
       st.lists(st.integers(-5, 5), min_size=1, max_size=5))
def test_normalize_idempotent(num, den):
    if not any(den):
        return
    F = ratfunc_normalize(Poly(num), Poly(den))
    assert ratfunc_normalize(F.num, F.den) == F
    assert F.num == ratfunc_normalize(F.num, F.den).num
    # same value as the unnormalized quotient
    x = sympy.Symbol("x")
    lhs = sum(c * x ** i for i, c in enumerate(F.num.coeffs)) / sum(c * x ** i for i, c in enumerate(F.den.coeffs))
    rhs = sum(c * x ** i for i, c in enumerate(num)) / sum(c * x ** i for i, c in enumerate(den))
    assert sympy.simplify(lhs - rhs) == 0


def test_ratfunc_arithmetic():
    F = RationalFunction(Poly([1, 1]), Poly([1, -1]))
    assert F * (1 / F) == RationalFunction.one()
    assert (F ** -2) * F ** 2 == RationalFunction.one()
    assert F - F == RationalFunction(Poly([0]))
    assert F.substitute_power(2) == RationalFunction(Poly([1, 0, 1]), Poly([1, 0, -1]))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=0, max_size=3),
       st.lists(st.integers(-3, 3), min_size=0, max_size=3), st.integers(1, 4))
def test_ratfunc_root_round_trip(a, b, s):
    G = RationalFunction(Poly([1] + a), Poly([1] + b))
    assert ratfunc_nth_root(G ** s, s) == G


def test_ratfunc_root_failures():
    with pytest.raises(NotAPerfectPower):
        ratfunc_nth_root(RationalFunction(Poly([1, 1]) ** 3), 2)
    with pytest.raises(ValueError):
        ratfunc_nth_root(RationalFunction(Poly([2, 1])), 2)


# ---------------------------------------------------------------- power series


def test_series_exp_of_geometric_log():
    # exp(sum t^m / m) = 1 / (1 - t)
    S = PowerSeries([0] + [Fraction(1, m) for m in range(1, 6)], 5)
    assert series_exp_log(S, "exp") == PowerSeries([1] * 6, 5)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=1, max_size=8))
def test_series_exp_log_round_trip(tail):
    S = PowerSeries([1] + tail, len(tail))
    assert S.log().exp() == S
    T = PowerSeries([0] + tail, len(tail))
    assert T.exp().log() == T


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=1, max_size=8), st.integers(1, 5))
def test_series_nth_root_round_trip(tail, s):
    S = PowerSeries([1] + tail, len(tail))
    R = series_nth_root(S, s)
    assert R ** s == S
    assert series_nth_root(S ** s, s) == S


def test_series_inverse_and_substitution():
    S = Poly([1, -1]).series(6)
    assert S * S.inverse() == PowerSeries.one(6)
    assert S.substitute_power(2) == Poly([1, 0, -1]).series(6)


def test_series_domain_errors():
    with pytest.raises(ValueError):
        PowerSeries([1, 1], 3).exp()
    with pytest.raises(ValueError):
        PowerSeries([2, 1], 3).log()
