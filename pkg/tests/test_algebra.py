import json
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from qschubert.algebra import (
    LinearForm,
    Monomial,
    NotDivisible,
    Polynomial,
    RankMismatch,
    add,
    exact_divide_by_linear,
    lambda_homogeneous_components,
    linear_dictionary,
    mul,
    parse_polynomial,
    substitute_linear,
    to_scalar,
)

R = 2
L1, L2 = Polynomial.lam(R, 1), Polynomial.lam(R, 2)
Q1, Q2 = Polynomial.q(R, 1), Polynomial.q(R, 2)
X1, X2 = 2 * L1 - L2, L2

SYM_L = sympy.symbols("l1 l2")
SYM_Q = sympy.symbols("q1 q2")


def to_sympy(f):
    expr = sympy.Integer(0)
    for mono, c in f.terms():
        term = sympy.Rational(c.numerator, c.denominator)
        for v, e in zip(SYM_L + SYM_Q, mono.lam + mono.q):
            term *= v ** e
        expr += term
    return sympy.expand(expr)


# strategies

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=6)
exps = st.tuples(st.integers(0, 3), st.integers(0, 3))


@st.composite
def polys(draw, with_q=True, max_terms=5):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        lam = draw(exps)
        q = draw(exps) if with_q else (0, 0)
        terms[(lam, q)] = draw(coeffs)
    return Polynomial(R, terms)


@st.composite
def forms(draw):
    c = draw(st.tuples(st.integers(-3, 3), st.integers(-3, 3)).filter(any))
    return LinearForm(c)


# scalars


def test_scalar_normalization():
    assert to_scalar(Fraction(4, 2)) == 2 and type(to_scalar(Fraction(4, 2))) is int
    assert to_scalar("3/6") == Fraction(1, 2)
    with pytest.raises(TypeError):
        to_scalar(0.5)
    with pytest.raises(TypeError):
        to_scalar(True)


# add / mul


def test_add_identity_and_inverse():
    f = X1 ** 2 + Q1 * L2
    assert f + Polynomial.zero(R) == f
    assert L1 + (-L1) == 0
    assert not (L1 - L1)


def test_add_dictionary_example():
    # x1^2 + x2^2 in fundamental weights
    got = add(X1 ** 2, X2 ** 2)
    assert got == 4 * L1 ** 2 - 4 * L1 * L2 + 2 * L2 ** 2
    assert to_sympy(got) == sympy.expand((2 * SYM_L[0] - SYM_L[1]) ** 2 + SYM_L[1] ** 2)


def test_mul_basic():
    f = L1 * Q2 + 3
    assert mul(f, Polynomial.one(R)) == f
    assert (L1 - L2) * (L1 + L2) == L1 ** 2 - L2 ** 2


def test_mul_top_class_expansion():
    top = (X1 - X2) ** 3 * (X1 + X2) / 16
    # (x1-x2) = 2(l1-l2), (x1+x2) = 2 l1
    assert top == L1 * (L1 - L2) ** 3
    l1, l2 = SYM_L
    x1, x2 = 2 * l1 - l2, l2
    assert to_sympy(top) == sympy.expand((x1 - x2) ** 3 * (x1 + x2) / 16)


def test_rank_mismatch():
    with pytest.raises(RankMismatch):
        L1 + Polynomial.lam(3, 1)
    with pytest.raises(RankMismatch):
        Polynomial.monomial(2, (1,), (0, 0))


@given(polys(), polys(), polys())
def test_ring_axioms(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert f + g == g + f
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f
    assert f * (g + h) == f * g + f * h


@given(polys(), polys())
def test_products_match_sympy(f, g):
    assert to_sympy(f * g) == sympy.expand(to_sympy(f) * to_sympy(g))
    assert to_sympy(f - g) == sympy.expand(to_sympy(f) - to_sympy(g))


@given(polys(), polys())
def test_canonical_form(f, g):
    for h in (f + g, f * g, f - f):
        assert all(c != 0 for c in h.raw_terms().values())
    assert json.dumps((f * g).to_json()) == json.dumps((g * f).to_json())


def test_grading():
    m = Monomial((1, 2), (0, 1))
    assert m.degree == 2 * 3 + 4 * 1
    f = L1 ** 2 + Q1
    assert f.is_homogeneous() and f.degree() == 4
    assert not (L1 + Q1).is_homogeneous()


# substitution


def test_substitute_identity():
    f = X1 ** 3 * Q1 - L2
    assert substitute_linear(f, [LinearForm([1, 0]), LinearForm([0, 1])]) == f


def test_substitute_b2_reflections():
    # s1: l1 -> l1 - alpha1 = -l1 + l2, l2 -> l2 ; s2: l2 -> l2 - alpha2 = 2 l1 - l2
    s1 = [LinearForm([-1, 1]), LinearForm([0, 1])]
    s2 = [LinearForm([1, 0]), LinearForm([2, -1])]
    assert substitute_linear(X1, s1) == -X1
    assert substitute_linear(X2, s1) == X2
    assert substitute_linear(X1 * X2, s2) == X1 * X2
    assert substitute_linear(X1, s2) == X2
    # q variables are inert
    assert substitute_linear(Q1 * X1, s1) == -Q1 * X1


@given(polys(), forms(), forms())
def test_substitute_matches_sympy(f, a, b):
    got = substitute_linear(f, [a, b])
    l1, l2 = SYM_L
    sub = {l1: a.coefficients[0] * l1 + a.coefficients[1] * l2,
           l2: b.coefficients[0] * l1 + b.coefficients[1] * l2}
    assert to_sympy(got) == sympy.expand(to_sympy(f).subs(sub, simultaneous=True))


# division


def test_divide_examples():
    assert exact_divide_by_linear(Polynomial.zero(R), LinearForm([1, 0])) == 0
    assert exact_divide_by_linear(L1 ** 2 - L2 ** 2, LinearForm([1, -1])) == L1 + L2
    # numerator of Delta_{s1}(4 c_{s2 s1}) in B2
    num = (X1 + X2) ** 2 - (-X1 + X2) ** 2
    assert exact_divide_by_linear(num, LinearForm([2, -1])) == 4 * X2


def test_divide_random_points():
    num = (X1 + X2) ** 2 - (-X1 + X2) ** 2
    quo = exact_divide_by_linear(num, LinearForm([2, -1]))
    rng = random.Random(7)
    for _ in range(20):
        pt = [Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(2)]
        assert quo.evaluate(pt) * (2 * pt[0] - pt[1]) == num.evaluate(pt)


def test_divide_errors():
    with pytest.raises(NotDivisible):
        exact_divide_by_linear(L1 + 1, LinearForm([1, 0]))
    with pytest.raises(NotDivisible):
        exact_divide_by_linear(L1 * L2 + L2 ** 2 + L1, LinearForm([1, 1]))
    with pytest.raises(ZeroDivisionError):
        exact_divide_by_linear(L1, LinearForm([0, 0]))


@given(polys(), forms())
def test_divide_inverts_multiplication(g, form):
    assert exact_divide_by_linear(g * form.as_polynomial(), form) == g


@given(polys(max_terms=3), forms())
def test_divide_rejects_non_multiples(g, form):
    f = g * form.as_polynomial() + Polynomial.constant(R, 1)
    with pytest.raises(NotDivisible):
        exact_divide_by_linear(f, form)


# homogeneous components


def test_components():
    assert lambda_homogeneous_components(L1 + Q1) == {1: L1, 0: Q1}
    f = X1 ** 2 - X1 * X2
    assert lambda_homogeneous_components(f) == {2: f}
    assert lambda_homogeneous_components(Polynomial.zero(R)) == {}


@given(polys())
def test_components_sum_back(f):
    comps = lambda_homogeneous_components(f)
    total = Polynomial.zero(R)
    for d, c in comps.items():
        assert all(sum(m.lam) == d for m, _ in c.terms())
        total = total + c
    assert total == f


# parsing and serialization


def test_parse():
    names = linear_dictionary(2, {"x1": "2*l1 - l2", "x2": "l2"})
    assert parse_polynomial("(x1-x2)^3*(x1+x2)/16", 2, names) == (X1 - X2) ** 3 * (X1 + X2) / 16
    assert parse_polynomial("q1*λ2 - 1/2", 2) == Q1 * L2 - Fraction(1, 2)
    for bad in ("l1 / l2", "l1 ** -1", "open('x')", "l3", "l1 +"):
        with pytest.raises(ValueError):
            parse_polynomial(bad, 2)


def test_linear_dictionary_rejects_nonlinear():
    with pytest.raises(ValueError):
        linear_dictionary(2, {"x1": "l1^2", "x2": "l2"})


@given(polys())
def test_json_round_trip(f):
    data = f.to_json()
    assert Polynomial.from_json(R, json.loads(json.dumps(data))) == f
    for item in data:
        num, den = item["coeff"].split("/")
        assert int(den) > 0


def test_json_format():
    f = Fraction(-3, 4) * L1 * Q2 + 2
    assert f.to_json() == [
        {"lambda": [1, 0], "q": [0, 1], "coeff": "-3/4"},
        {"lambda": [0, 0], "q": [0, 0], "coeff": "2/1"},
    ]


@given(polys(), polys())
def test_integral_coefficients_are_ints(f, g):
    for h in (f + g, f * g, (f - g) * 6, f * Fraction(3, 3)):
        for c in h.raw_terms().values():
            assert type(c) is int or c.denominator > 1
