import itertools
import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qschubert.algebra import Polynomial
from qschubert.rootsystem import build_root_system
from qschubert.weylgroup import (
    SizeLimitExceeded,
    generate,
    inversion_count,
    load_group,
    weyl_group,
)

from conftest import group

SIZES = {"A1": (2, 1), "A2": (6, 3), "A3": (24, 6), "B2": (8, 4), "B3": (48, 9),
         "C3": (48, 9), "G2": (12, 6), "D4": (192, 12)}


@pytest.mark.parametrize("label", sorted(SIZES))
def test_order_and_longest(label):
    g = group(label)
    order, top = SIZES[label]
    assert len(g) == order
    assert g.longest.length == top
    assert sum(1 for w in g if w.length == top) == 1


def test_b2_longest_word():
    assert group("B2").longest.word == (1, 2, 1, 2)


def test_a3_against_permutations():
    # S4 model: s_i is the transposition (i, i+1); length = inversions
    g = group("A3")

    def perm(word):
        p = list(range(4))
        for i in word:
            p[i - 1], p[i] = p[i], p[i - 1]
        return tuple(p)

    def inv(p):
        return sum(1 for a, b in itertools.combinations(range(4), 2) if p[a] > p[b])

    images = {perm(w.word): w for w in g}
    assert len(images) == 24 == len(set(itertools.permutations(range(4))))
    for p, w in images.items():
        assert inv(p) == w.length
    rng = random.Random(1)
    for _ in range(50):
        u, v = rng.choice(g.elements), rng.choice(g.elements)
        assert perm(g.multiply(u, v).word) == perm(u.word + v.word)


@pytest.mark.parametrize("label", ["A2", "B2", "G2", "A3", "B3"])
def test_words_and_lengths(label):
    g = group(label)
    for w in g:
        assert g.from_word(w.word) == w
        assert len(w.word) == w.length == inversion_count(g, w)
    assert g.identity.word == () and g.identity.length == 0
    # ordering: by length, then word
    keys = [(w.length, w.word) for w in g]
    assert keys == sorted(keys)


@pytest.mark.parametrize("label", ["A2", "B2", "G2", "A3"])
def test_group_laws(label):
    g = group(label)
    e = g.identity
    for i in range(1, g.rank + 1):
        assert g.multiply(g.s(i), g.s(i)) == e
    for u in g:
        assert g.multiply(u, e) == u
        assert g.multiply(u, g.inverse(u)) == e
        for v in g:
            uv = g.multiply(u, v)
            assert uv.length <= u.length + v.length
            assert (uv.length - u.length - v.length) % 2 == 0


def _det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * _det([row[:j] + row[j + 1:] for row in m[1:]]) for j in range(n))


@pytest.mark.parametrize("label", ["B2", "G2", "A3"])
def test_parity_is_determinant(label):
    for w in group(label):
        assert _det([list(r) for r in w.matrix]) == (-1) ** w.length


def test_b2_multiply():
    g = group("B2")
    s12 = g.parse("s1s2")
    w = g.multiply(s12, s12)
    assert w == g.longest and w.length == 4


@pytest.mark.parametrize("label", ["B2", "G2", "A3", "B3"])
def test_reflections(label):
    g = group(label)
    for alpha in g.datum.positive_roots:
        s = g.reflection_element(alpha)
        assert g.multiply(s, s) == g.identity
        assert g.act_on_weight(s, alpha.weight_coords) == tuple(-x for x in alpha.weight_coords)
        # fixes the kernel of alpha^vee: weights with zero pairing
        for beta in g.datum.positive_roots:
            if sum(a * b for a, b in zip(beta.weight_coords, alpha.coroot_coords)) == 0:
                assert g.act_on_weight(s, beta.weight_coords) == beta.weight_coords
        if alpha.is_simple:
            assert s.length == 1


def test_b2_reflection_lengths():
    g = group("B2")
    d = g.datum
    a3, a4 = d.root((1, 1)), d.root((2, 1))
    assert g.reflection_element(a4).word == (1, 2, 1) and a4.is_tilde
    assert g.reflection_element(a3).word == (2, 1, 2) and not a3.is_tilde


def test_act_on_polynomial_b2():
    g = group("B2")
    l1, l2 = Polynomial.lam(2, 1), Polynomial.lam(2, 2)
    x1, x2 = 2 * l1 - l2, l2
    assert g.act_on_polynomial(g.s(1), x1) == -x1
    assert g.act_on_polynomial(g.s(2), x1) == x2
    top = (x1 - x2) ** 3 * (x1 + x2) / 16
    step = top
    for i in (2, 1, 2, 1):
        step = g.act_on_polynomial(g.s(i), step)
    assert g.act_on_polynomial(g.longest, top) == step == top


@st.composite
def small_poly(draw, rank):
    terms = {}
    for _ in range(draw(st.integers(1, 4))):
        lam = tuple(draw(st.integers(0, 2)) for _ in range(rank))
        q = tuple(draw(st.integers(0, 1)) for _ in range(rank))
        terms[(lam, q)] = draw(st.integers(-4, 4))
    return Polynomial(rank, terms)


@given(st.data())
def test_left_action(data):
    g = group(data.draw(st.sampled_from(["A2", "B2", "G2"])))
    f = data.draw(small_poly(g.rank))
    u = data.draw(st.sampled_from(g.elements))
    v = data.draw(st.sampled_from(g.elements))
    lhs = g.act_on_polynomial(g.multiply(u, v), f)
    assert lhs == g.act_on_polynomial(u, g.act_on_polynomial(v, f))


def test_parse_forms():
    g = group("B2")
    w = g.parse("s1s2s1")
    assert g.parse("s1*s2*s1") == w == g.parse("1,2,1")
    assert g.parse("e") == g.identity == g.parse("id")
    assert g.parse("s2s2") == g.identity
    with pytest.raises(ValueError):
        g.parse("t1")
    with pytest.raises(ValueError):
        g.parse("s3")


def test_reduced_words():
    g = group("B2")
    assert g.reduced_words(g.longest) == [(1, 2, 1, 2), (2, 1, 2, 1)]
    g = group("A3")
    # w0 of A3 has 16 reduced words
    assert len(g.reduced_words(g.longest)) == 16


def test_size_limit():
    with pytest.raises(SizeLimitExceeded):
        generate(build_root_system("B3"), size_limit=10)


def test_json_round_trip(tmp_path):
    g = group("G2")
    data = g.to_json()
    assert data["elements"][3] == {"word": list(g.elements[3].word), "length": g.elements[3].length}
    path = tmp_path / "g2.json"
    path.write_text(json.dumps(data))
    h = load_group(path)
    assert [w.matrix for w in h] == [w.matrix for w in g]
    assert [a.is_tilde for a in h.datum.positive_roots] == [a.is_tilde for a in g.datum.positive_roots]


def test_f4():
    g = weyl_group("F4")
    assert len(g) == 1152 and g.longest.length == 24
