"""Divided differences, the BGG family ``c_w`` and expansion in the Schubert basis.

Everything here is linear over ``R[q]``: the q variables ride along as
coefficients, so the same code serves classical and quantum computations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .algebra import (
    Polynomial,
    Scalar,
    _norm,
    exact_divide_by_linear,
    lambda_homogeneous_components,
)
from .rootsystem import Root, pairing, root_as_linear_form
from .weylgroup import WeylElement, WeylGroup


class InvalidTopClass(ValueError):
    pass


# divided differences


def _simple_dd_table(group: WeylGroup, i: int) -> dict[int, dict[int, Scalar]]:
    return group.cache.setdefault(("dd", i), {})


def _simple_dd_monomial(group: WeylGroup, i: int, lam_key: int) -> dict[int, Scalar]:
    table = _simple_dd_table(group, i)
    out = table.get(lam_key)
    if out is None:
        r = group.rank
        m = Polynomial._raw(r, {lam_key: 1})
        num = m - group.act_on_polynomial(group.s(i), m)
        alpha = group.datum.simple_root(i)
        out = exact_divide_by_linear(num, root_as_linear_form(alpha)).raw_terms()
        table[lam_key] = out
    return out


def simple_divided_difference(group: WeylGroup, i: int, f: Polynomial) -> Polynomial:
    """``Delta_{alpha_i}``, computed monomial by monomial with a per-group memo."""
    mask = f.lambda_mask
    out: dict[int, Scalar] = {}
    get = out.get
    for key, c in f.raw_terms().items():
        lk = key & mask
        if not lk:
            continue
        qk = key - lk
        for k2, c2 in _simple_dd_monomial(group, i, lk).items():
            k = k2 + qk
            out[k] = get(k, 0) + c * c2
    return Polynomial._raw(f.rank, {k: _norm(c) for k, c in out.items() if c})


def divided_difference(group: WeylGroup, alpha: Root, f: Polynomial) -> Polynomial:
    """``Delta_alpha(f) = (f - s_alpha f) / alpha`` for a positive root ``alpha``."""
    if alpha.is_simple:
        i = alpha.root_coords.index(1) + 1
        return simple_divided_difference(group, i, f)
    s = group.reflection_element(alpha)
    return exact_divide_by_linear(f - group.act_on_polynomial(s, f), root_as_linear_form(alpha))


def delta_w(group: WeylGroup, w: WeylElement, f: Polynomial,
            word: Iterable[int] | None = None) -> Polynomial:
    """``Delta_w = Delta_{i1} o ... o Delta_{ik}`` along a reduced word (``ik`` acts first).

    ``word`` defaults to the canonical word of ``w``; passing another reduced
    word must give the same answer.
    """
    word = tuple(w.word if word is None else word)
    if word and group.from_word(word) != w:
        raise ValueError(f"word {word} does not spell {w!r}")
    if len(word) != w.length:
        raise ValueError(f"word {word} is not reduced for {w!r}")
    for i in reversed(word):
        if not f:
            break
        f = simple_divided_difference(group, i, f)
    return f


def delta_w_memo(group: WeylGroup, w: WeylElement, f: Polynomial) -> Polynomial:
    """:func:`delta_w` with the image of every l-monomial memoized on the group."""
    table = group.cache.setdefault(("delta", w.index), {})
    mask = f.lambda_mask
    out: dict[int, Scalar] = {}
    get = out.get
    for key, c in f.raw_terms().items():
        lk = key & mask
        image = table.get(lk)
        if image is None:
            image = delta_w(group, w, Polynomial._raw(f.rank, {lk: 1})).raw_terms()
            table[lk] = image
        if not image:
            continue
        qk = key - lk
        for k2, c2 in image.items():
            k = k2 + qk
            out[k] = get(k, 0) + c * c2
    return Polynomial._raw(f.rank, {k: _norm(c) for k, c in out.items() if c})


def all_deltas(group: WeylGroup, f: Polynomial, max_length: int | None = None) -> dict[WeylElement, Polynomial]:
    """``{v: Delta_v(f)}`` for every ``v`` with ``l(v) <= max_length``.

    Uses ``Delta_v = Delta_{i} o Delta_{s_i v}`` where ``i`` is the first letter
    of the canonical word of ``v``, so each value costs one simple operator.
    """
    top = group.longest.length if max_length is None else max_length
    out = {group.identity: f}
    for v in group.elements[1:]:
        if v.length > top:
            break
        prev = out[group.multiply(group.s(v.word[0]), v)]
        out[v] = simple_divided_difference(group, v.word[0], prev) if prev else prev
    return out


# BGG family


def default_top_class(group: WeylGroup) -> Polynomial:
    """``(1/|W|) * prod of the positive roots``."""
    r = group.rank
    prod = Polynomial.one(r)
    for alpha in group.datum.positive_roots:
        prod = prod * root_as_linear_form(alpha).as_polynomial()
    return prod / len(group)


@dataclass(eq=False)
class BGGFamily:
    group: WeylGroup
    top: Polynomial
    members: dict[WeylElement, Polynomial]

    def __getitem__(self, w: WeylElement) -> Polynomial:
        return self.members[w]

    def __iter__(self):
        return iter(self.group.elements)


def validate_top_class(group: WeylGroup, top: Polynomial) -> None:
    n = group.longest.length
    if not top.is_q_free():
        raise InvalidTopClass("top class must not involve q")
    comps = lambda_homogeneous_components(top)
    if set(comps) != {n}:
        raise InvalidTopClass(f"top class must be homogeneous of degree {n}, "
                              f"has components in degrees {sorted(comps)}")
    value = delta_w(group, group.longest, top)
    if value != 1:
        raise InvalidTopClass(f"Delta_w0(top) = {value}, expected 1")


def bgg_family(top: Polynomial, group: WeylGroup) -> BGGFamily:
    """``c_w = Delta_{w^-1 w0}(top)`` for every ``w``.

    Built from the top down: if ``l(w s_i) = l(w) + 1`` then
    ``c_w = Delta_i(c_{w s_i})``.
    """
    validate_top_class(group, top)
    members = {group.longest: top}
    for w in reversed(group.elements[:-1]):
        for i in range(1, group.rank + 1):
            up = group.multiply(w, group.s(i))
            if up.length == w.length + 1:
                members[w] = simple_divided_difference(group, i, members[up])
                break
    return BGGFamily(group, top, {w: members[w] for w in group.elements})


# expansions in the Schubert basis


class SchubertExpansion:
    """Finite map ``w -> coefficient in R[q]``; zero coefficients are dropped."""

    def __init__(self, group: WeylGroup, coords: Mapping[WeylElement, Polynomial] | None = None):
        self.group = group
        self.coords: dict[WeylElement, Polynomial] = {}
        for w, c in (coords or {}).items():
            if not isinstance(c, Polynomial):
                c = Polynomial.constant(group.rank, c)
            if c:
                self.coords[w] = c

    def __getitem__(self, w: WeylElement) -> Polynomial:
        return self.coords.get(w, Polynomial.zero(self.group.rank))

    def __contains__(self, w):
        return w in self.coords

    def __len__(self):
        return len(self.coords)

    def __bool__(self):
        return bool(self.coords)

    def items(self):
        return sorted(self.coords.items(), key=lambda kv: kv[0].index)

    def __eq__(self, other):
        if not isinstance(other, SchubertExpansion):
            return NotImplemented
        return self.coords == other.coords

    def __add__(self, other: "SchubertExpansion") -> "SchubertExpansion":
        out = dict(self.coords)
        for w, c in other.coords.items():
            out[w] = out.get(w, Polynomial.zero(self.group.rank)) + c
        return SchubertExpansion(self.group, out)

    def __sub__(self, other: "SchubertExpansion") -> "SchubertExpansion":
        return self + SchubertExpansion(self.group, {w: -c for w, c in other.coords.items()})

    def combine(self, basis: Mapping[WeylElement, Polynomial]) -> Polynomial:
        """``sum coords[w] * basis[w]``."""
        total = Polynomial.zero(self.group.rank)
        for w, c in self.coords.items():
            total = total + c * basis[w]
        return total

    def format(self) -> str:
        if not self.coords:
            return "0"
        parts = []
        for w, c in self.items():
            coeff = c.format()
            if c == 1:
                parts.append(f"σ[{w.name()}]")
            elif len(c) == 1:
                parts.append(f"{coeff}*σ[{w.name()}]")
            else:
                parts.append(f"({coeff})*σ[{w.name()}]")
        return " + ".join(parts)

    def __repr__(self):
        return f"SchubertExpansion({self.format()})"

    def to_json(self) -> dict:
        return {
            "schema": "qschubert/1",
            "basis": "schubert",
            "coords": [{"word": list(w.word), "coeff_poly_q": c.to_json()} for w, c in self.items()],
        }

    @classmethod
    def from_json(cls, group: WeylGroup, data: Mapping) -> "SchubertExpansion":
        if data.get("basis") != "schubert":
            raise ValueError("not a Schubert-basis expansion")
        coords = {}
        for item in data["coords"]:
            w = group.from_word(item["word"])
            coords[w] = Polynomial.from_json(group.rank, item["coeff_poly_q"])
        return cls(group, coords)


def classical_normal_form(f: Polynomial, family: BGGFamily) -> SchubertExpansion:
    """Coordinates of ``f`` modulo ``I_W (x) R[q]`` in the basis ``{c_w}``.

    For each l-homogeneous component ``f_d``, the coefficient of ``c_w``
    (``l(w) = d``) is ``Delta_w(f_d)``, a polynomial in q alone.  Components
    of degree above ``l(w0)`` lie in the ideal.
    """
    group = family.group
    n = group.longest.length
    coords: dict[WeylElement, Polynomial] = {}
    for d, comp in lambda_homogeneous_components(f).items():
        if d > n:
            continue
        deltas = all_deltas(group, comp, d)
        for w in group.by_length(d):
            c = deltas[w]
            if c:
                if not c.is_lambda_free():
                    raise ArithmeticError(f"Delta_w of a degree-{d} component kept l-degree")
                coords[w] = c
    return SchubertExpansion(group, coords)


def classical_product(family: BGGFamily, u: WeylElement, v: WeylElement) -> SchubertExpansion:
    """Cup product ``sigma_u sigma_v`` via ``c_u c_v``."""
    return classical_normal_form(family[u] * family[v], family)


def classical_chevalley(group: WeylGroup, i: int, w: WeylElement) -> SchubertExpansion:
    """``sigma_{s_i} sigma_w`` by the Chevalley formula."""
    r = group.rank
    lam_i = [int(k == i - 1) for k in range(r)]
    coords: dict[WeylElement, Scalar] = {}
    for alpha in group.datum.positive_roots:
        v = group.multiply(w, group.reflection_element(alpha))
        if v.length == w.length + 1:
            c = pairing(lam_i, alpha)
            if c:
                coords[v] = coords.get(v, 0) + c
    return SchubertExpansion(group, {v: Polynomial.constant(r, c) for v, c in coords.items()})


def check_commutation_identity(group: WeylGroup, i: int, w: WeylElement, f: Polynomial) -> bool:
    """Commutation identity between ``Delta_w`` and multiplication by ``l_i``.

    ``Delta_w(l_i f) - w(l_i) Delta_w(f) == sum_{beta: l(w s_beta) = l(w)-1} l_i(beta^vee) Delta_{w s_beta}(f)``
    """
    r = group.rank
    lam = Polynomial.lam(r, i)
    w_lam = group.act_on_polynomial(w, lam)
    lhs = delta_w(group, w, lam * f) - w_lam * delta_w(group, w, f)
    lam_i = [int(k == i - 1) for k in range(r)]
    rhs = Polynomial.zero(r)
    for beta in group.datum.positive_roots:
        v = group.multiply(w, group.reflection_element(beta))
        if v.length == w.length - 1:
            rhs = rhs + delta_w(group, v, f) * pairing(lam_i, beta)
    return lhs == rhs
