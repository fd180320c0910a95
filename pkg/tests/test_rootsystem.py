import pytest

from qschubert.algebra import LinearForm, Monomial
from qschubert.rootsystem import (
    InvalidCartan,
    UnknownType,
    build_root_system,
    cartan_matrix,
    pairing,
    positive_root_count,
    q_key,
    q_monomial,
    root_as_linear_form,
    validate_cartan,
)
from qschubert.weylgroup import weyl_group

from conftest import group

LABELS = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "D5", "G2", "F4", "E6"]


def test_b2_roots():
    d = build_root_system("B2")
    assert [r.root_coords for r in d.positive_roots] == [(1, 0), (0, 1), (1, 1), (2, 1)]
    coroots = {r.root_coords: r.coroot_coords for r in d.positive_roots}
    assert coroots == {(1, 0): (1, 0), (0, 1): (0, 1), (1, 1): (1, 2), (2, 1): (1, 1)}


def test_a1_and_a2():
    (a,) = build_root_system("A1").positive_roots
    assert a.coroot_coords == (1,) and a.height == 1
    d = build_root_system("A2")
    # closure under s1, s2 by hand: a1, a2, a1 + a2
    assert [r.root_coords for r in d.positive_roots] == [(1, 0), (0, 1), (1, 1)]
    assert [r.height for r in d.positive_roots] == [1, 1, 2]


@pytest.mark.parametrize("label", LABELS)
def test_root_counts(label):
    d = build_root_system(label)
    assert len(d) == positive_root_count(label)
    assert all(min(r.coroot_coords) >= 0 and min(r.root_coords) >= 0 for r in d.positive_roots)


@pytest.mark.parametrize("label", ["A3", "B3", "C3", "G2", "F4"])
def test_closure_is_idempotent(label):
    d = build_root_system(label)
    a = d.cartan
    n = d.rank
    roots = {r.root_coords for r in d.positive_roots}
    for r in roots:
        for i in range(n):
            p = sum(r[k] * a[i][k] for k in range(n))
            image = list(r)
            image[i] -= p
            image = tuple(image)
            assert image in roots or image == tuple(-int(k == i) for k in range(n))


@pytest.mark.parametrize("label", ["A2", "B3", "C3", "G2", "D4"])
def test_weights_are_cartan_columns(label):
    d = build_root_system(label)
    for j, alpha in enumerate(d.simple_roots):
        assert alpha.weight_coords == tuple(row[j] for row in d.cartan)
        assert root_as_linear_form(alpha) == LinearForm([row[j] for row in d.cartan])


def test_b2_linear_forms():
    d = build_root_system("B2")
    assert root_as_linear_form(d.root((1, 0))) == LinearForm([2, -1])   # x1
    assert root_as_linear_form(d.root((1, 1))) == LinearForm([0, 1])    # x2


def test_pairing():
    d = build_root_system("B2")
    for i in range(2):
        for j, a in enumerate(d.simple_roots):
            lam = [int(k == i) for k in range(2)]
            assert pairing(lam, a) == int(i == j)
    a3, a4 = d.root((1, 1)), d.root((2, 1))
    assert pairing([1, 0], a3) == 1
    assert pairing([2, -1], a4) == 1      # x1 on (2a1+a2)^vee: the q1*q2 coefficient of X1
    with pytest.raises(ValueError):
        pairing([1], a3)


def test_q_monomials():
    d = build_root_system("B2")
    assert q_monomial(d.simple_root(1)) == Monomial((0, 0), (1, 0))
    assert q_monomial(d.root((2, 1))) == Monomial((0, 0), (1, 1))
    assert q_monomial(d.root((1, 1))) == Monomial((0, 0), (1, 2))
    assert q_key(d.root((1, 1))) == (1 << 32) | (2 << 48)


@pytest.mark.parametrize("label", ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "D4", "F4"])
def test_height_inequality_and_tilde(label):
    g = group(label) if label != "F4" else weyl_group("F4")
    d = g.datum
    for a in d.positive_roots:
        assert a.reflection_length <= 2 * a.height - 1
        assert a.is_tilde == (a.reflection_length == 2 * a.height - 1)
    for a in d.simple_roots:
        assert a.height == 1 and a.reflection_length == 1 and a.is_tilde
    assert len(d) == g.longest.length


def test_b2_tilde():
    d = group("B2").datum
    assert sorted(r.root_coords for r in d.tilde_roots) == [(0, 1), (1, 0), (2, 1)]


def test_tilde_needs_group():
    with pytest.raises(RuntimeError):
        build_root_system("A2").tilde_roots


def test_invalid_cartan():
    with pytest.raises(InvalidCartan):
        validate_cartan([[2, -1], [-1]])
    with pytest.raises(InvalidCartan):
        validate_cartan([[2, 1], [1, 2]])
    with pytest.raises(InvalidCartan):
        validate_cartan([[2, -1], [0, 2]])
    with pytest.raises(InvalidCartan):
        validate_cartan([[2, -2], [-2, 2]])          # affine A1
    with pytest.raises(InvalidCartan):
        validate_cartan([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])   # affine A2
    with pytest.raises(InvalidCartan):
        validate_cartan([[3, -1], [-1, 2]])


def test_unknown_type():
    for bad in ("X2", "E5", "G3", "B1", "hello"):
        with pytest.raises(UnknownType):
            cartan_matrix(bad)


def test_custom_matrix_matches_label():
    d = build_root_system([[2, -1], [-3, 2]])
    assert len(d) == 6 and d.type_label is None
    assert d.to_json() == {"cartan": [[2, -1], [-3, 2]]}
