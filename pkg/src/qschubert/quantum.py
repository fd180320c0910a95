"""The quantum operators Lambda_i, the quantization map and quantum Schubert representatives.

``Lambda_i = l_i + sum over tilde roots of l_i(alpha^vee) q^{alpha^vee} Delta_{s_alpha}``,
where ``Delta_{s_alpha}`` is the operator of the *reduced word* of the
reflection ``s_alpha`` (not the single divided difference by ``alpha``).

``psi(f) = f(Lambda_1, ..., Lambda_r)(1)`` and ``c_hat_w = psi^{-1}(c_w)``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .algebra import (
    EXP_BITS,
    Polynomial,
    Scalar,
    _norm,
    lambda_homogeneous_components,
    pack,
    unpack,
)
from .classical import (
    BGGFamily,
    SchubertExpansion,
    classical_chevalley,
    classical_normal_form,
    delta_w_memo,
)
from .rootsystem import Root, pairing, q_key
from .weylgroup import WeylElement, WeylGroup


@dataclass(frozen=True)
class TildeTerm:
    root: Root
    coefficient: Scalar
    q_key: int
    reflection: WeylElement


class QuantumOperatorSet:
    """The operators ``Lambda_1..Lambda_r`` of a Weyl group, with a memo for ``psi``."""

    def __init__(self, group: WeylGroup, tilde_terms: list[list[TildeTerm]]):
        self.group = group
        self.datum = group.datum
        self.rank = group.rank
        self.tilde_terms = tilde_terms
        self._psi_cache: dict[tuple[int, ...], Polynomial] = {}
        self._lock = threading.Lock()

    def terms(self, i: int) -> list[TildeTerm]:
        return self.tilde_terms[i - 1]

    def describe(self, i: int) -> list[tuple[str, Scalar, tuple[int, ...], tuple[int, ...]]]:
        """``[(root label, coefficient, q exponents, reduced word of s_alpha)]``."""
        r = self.rank
        return [(t.root.label(), t.coefficient, unpack(t.q_key >> (EXP_BITS * r), r), t.reflection.word)
                for t in self.terms(i)]


def build_operators(group: WeylGroup) -> QuantumOperatorSet:
    datum = group.datum
    r = group.rank
    for alpha in datum.positive_roots:
        if alpha.reflection_length is None:
            raise RuntimeError("root data not filled; build the group with weylgroup.generate")
        if alpha.reflection_length > 2 * alpha.height - 1:
            raise AssertionError(f"height inequality fails for {alpha!r}")
    per_index = []
    for i in range(1, r + 1):
        lam_i = [int(k == i - 1) for k in range(r)]
        terms = []
        for alpha in datum.tilde_roots:
            c = pairing(lam_i, alpha)
            if c:
                terms.append(TildeTerm(alpha, c, q_key(alpha), group.reflection_element(alpha)))
        per_index.append(terms)
    return QuantumOperatorSet(group, per_index)


def apply_lambda_op(ops: QuantumOperatorSet, i: int, f: Polynomial) -> Polynomial:
    """``Lambda_i(f)``."""
    out = Polynomial.lam(ops.rank, i) * f
    for t in ops.terms(i):
        d = delta_w_memo(ops.group, t.reflection, f)
        if d:
            out = out + d.times_key(t.q_key) * t.coefficient
    return out


def lambda_monomial_image(ops: QuantumOperatorSet, exponents: Sequence[int]) -> Polynomial:
    """``Lambda_1^{b_1} ... Lambda_r^{b_r}(1)``; ``Lambda_r`` acts first.

    Memoized per exponent vector on ``ops``.
    """
    b = tuple(exponents)
    cached = ops._psi_cache.get(b)
    if cached is not None:
        return cached
    if not any(b):
        value = Polynomial.one(ops.rank)
    else:
        i = next(k for k, e in enumerate(b) if e)
        rest = list(b)
        rest[i] -= 1
        value = apply_lambda_op(ops, i + 1, lambda_monomial_image(ops, rest))
    with ops._lock:
        ops._psi_cache.setdefault(b, value)
    return value


def quantize(ops: QuantumOperatorSet, f: Polynomial) -> Polynomial:
    """``psi(f) = f(Lambda_1, ..., Lambda_r)(1)``; linear over ``R[q]``."""
    r = ops.rank
    mask = f.lambda_mask
    out: dict[int, Scalar] = {}
    get = out.get
    for key, c in f.raw_terms().items():
        lk = key & mask
        qk = key - lk
        image = lambda_monomial_image(ops, unpack(lk, r))
        for k2, c2 in image.raw_terms().items():
            k = k2 + qk
            out[k] = get(k, 0) + c * c2
    return Polynomial._raw(r, {k: _norm(c) for k, c in out.items() if c})


def apply_polynomial_op(ops: QuantumOperatorSet, f: Polynomial, g: Polynomial) -> Polynomial:
    """``f(Lambda_1, ..., Lambda_r)(g)``; ``psi(f)`` is the case ``g = 1``.

    Monomials of ``f`` share their prefixes: the image for exponent vector
    ``b`` is ``Lambda_i`` applied to the image for ``b - e_i``.
    """
    r = ops.rank
    images: dict[tuple[int, ...], Polynomial] = {(0,) * r: g}

    def image(b: tuple[int, ...]) -> Polynomial:
        got = images.get(b)
        if got is None:
            i = next(k for k, e in enumerate(b) if e)
            rest = b[:i] + (b[i] - 1,) + b[i + 1:]
            got = images[b] = apply_lambda_op(ops, i + 1, image(rest))
        return got

    out: dict[int, Scalar] = {}
    get = out.get
    for qk, lam_part in f.q_slices().items():
        for lk, c in lam_part.raw_terms().items():
            for k2, c2 in image(unpack(lk, r)).raw_terms().items():
                k = k2 + qk
                out[k] = get(k, 0) + c * c2
    return Polynomial._raw(r, {k: _norm(c) for k, c in out.items() if c})


def quantize_in_order(ops: QuantumOperatorSet, f: Polynomial, order: Sequence[int]) -> Polynomial:
    """``psi`` with operators applied in a caller-chosen index order (no memo).

    ``order`` lists the indices in the order they act; used to test that the
    result does not depend on it.
    """
    r = ops.rank
    total = Polynomial.zero(r)
    for mono, c in f.terms():
        g = Polynomial.one(r)
        for i in order:
            for _ in range(mono.lam[i - 1]):
                g = apply_lambda_op(ops, i, g)
        total = total + g * Polynomial.monomial(r, (0,) * r, mono.q, c)
    return total


def dequantize(ops: QuantumOperatorSet, f: Polynomial) -> Polynomial:
    """``psi^{-1}(f)`` by triangular solve.

    ``psi`` agrees with the identity on the top l-degree component, so peel that
    component off, subtract its image and repeat on what is left.
    """
    result = Polynomial.zero(ops.rank)
    residual = f
    while residual:
        d = residual.lambda_degree()
        top = lambda_homogeneous_components(residual)[d]
        result = result + top
        residual = residual - quantize(ops, top)
    return result


def dequantize_binomial(ops: QuantumOperatorSet, f: Polynomial) -> Polynomial:
    """``psi^{-1}`` through the binomial expansion of ``(I - (I - psi)^d) / psi``.

    Applied separately to each l-homogeneous component, with ``d`` its degree:
    ``sum_{k=1..d} (-1)^{k-1} C(d, k) psi^{k-1}(f_d)``.
    """
    result = Polynomial.zero(ops.rank)
    for d, comp in lambda_homogeneous_components(f).items():
        if d == 0:
            result = result + comp
            continue
        power = comp
        for k in range(1, d + 1):
            result = result + power * ((-1) ** (k - 1) * comb(d, k))
            if k < d:
                power = quantize(ops, power)
    return result


@dataclass(eq=False)
class QuantumFamily:
    ops: QuantumOperatorSet
    classical: BGGFamily
    hat_members: dict[WeylElement, Polynomial] = field(default_factory=dict)
    _matrices: list | None = field(default=None, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def group(self) -> WeylGroup:
        return self.classical.group

    def __getitem__(self, w: WeylElement) -> Polynomial:
        return self.hat_members[w]

    def correction(self, w: WeylElement) -> Polynomial:
        """``c_hat_w - c_w``."""
        return self.hat_members[w] - self.classical[w]


def quantum_family(ops: QuantumOperatorSet, classical: BGGFamily) -> QuantumFamily:
    hats = {w: dequantize(ops, classical[w]) for w in classical.group.elements}
    return QuantumFamily(ops, classical, hats)


def quantum_chevalley(group: WeylGroup, i: int, w: WeylElement) -> SchubertExpansion:
    """``sigma_{s_i} o sigma_w`` by the quantum Chevalley formula."""
    r = group.rank
    lam_i = [int(k == i - 1) for k in range(r)]
    out = classical_chevalley(group, i, w)
    extra: dict[WeylElement, Polynomial] = {}
    for alpha in group.datum.positive_roots:
        v = group.multiply(w, group.reflection_element(alpha))
        if v.length == w.length - 2 * alpha.height + 1:
            if not alpha.is_tilde:
                raise AssertionError(f"{alpha!r} contributes a quantum term but is not a tilde root")
            c = pairing(lam_i, alpha)
            if c:
                term = Polynomial.monomial(r, (0,) * r, alpha.coroot_coords, c)
                extra[v] = extra.get(v, Polynomial.zero(r)) + term
    return out + SchubertExpansion(group, extra)


def quantum_normal_form(ops: QuantumOperatorSet, classical: BGGFamily, f: Polynomial) -> SchubertExpansion:
    """Coordinates of ``f`` modulo the quantum ideal in the basis ``{c_hat_w}``."""
    return classical_normal_form(quantize(ops, f), classical)


def lambda_matrices(qf: QuantumFamily) -> list[dict[WeylElement, dict[WeylElement, Polynomial]]]:
    """Matrices of ``Lambda_1..Lambda_r`` on the quotient, in the basis ``{c_w}``.

    ``Lambda_i`` is linear over W-invariants, so it maps ``I_W (x) R[q]`` into
    itself and acts on the quotient; column ``w`` is the normal form of
    ``Lambda_i(c_w)``.  Computed once per family.
    """
    with qf._lock:
        if qf._matrices is None:
            fam, ops = qf.classical, qf.ops
            qf._matrices = [
                {w: classical_normal_form(apply_lambda_op(ops, i, fam[w]), fam).coords
                 for w in qf.group.elements}
                for i in range(1, qf.group.rank + 1)
            ]
        return qf._matrices


def quantum_product(qf: QuantumFamily, u: WeylElement, v: WeylElement) -> SchubertExpansion:
    """``sigma_u o sigma_v``: the normal form of ``psi(c_hat_u * c_hat_v)``.

    The operators commute, so ``psi(c_hat_u c_hat_v) = c_hat_u(Lambda)(c_v)``,
    and since they act on the quotient this is ``c_hat_u`` evaluated at the
    operator matrices, applied to the basis vector of ``v``.  The shorter
    class plays the role of ``u``.  :func:`quantum_product_direct` computes
    the same thing from the polynomial product.
    """
    if u.length > v.length:
        u, v = v, u
    mats = lambda_matrices(qf)
    r = qf.group.rank
    zero = Polynomial.zero(r)
    images: dict[tuple[int, ...], dict[WeylElement, Polynomial]] = {(0,) * r: {v: Polynomial.one(r)}}

    def image(b):
        got = images.get(b)
        if got is None:
            i = next(k for k, e in enumerate(b) if e)
            vec = image(b[:i] + (b[i] - 1,) + b[i + 1:])
            got = {}
            for w, a in vec.items():
                for x, m in mats[i][w].items():
                    got[x] = got.get(x, zero) + a * m
            got = images[b] = {x: c for x, c in got.items() if c}
        return got

    by_lam: dict[int, dict[int, Scalar]] = {}
    mask = qf[u].lambda_mask
    for k, c in qf[u].raw_terms().items():
        by_lam.setdefault(k & mask, {})[k & ~mask] = c
    out: dict[WeylElement, Polynomial] = {}
    for lk, qpart in by_lam.items():
        coeff = Polynomial._raw(r, qpart)
        for w, a in image(unpack(lk, r)).items():
            out[w] = out.get(w, zero) + coeff * a
    return SchubertExpansion(qf.group, {w: c for w, c in out.items() if c})


def quantum_product_direct(qf: QuantumFamily, u: WeylElement, v: WeylElement) -> SchubertExpansion:
    """``sigma_u o sigma_v`` as ``quantum_normal_form(c_hat_u * c_hat_v)``, quantizing the full product."""
    return quantum_normal_form(qf.ops, qf.classical, qf[u] * qf[v])


def gw_invariant(qf: QuantumFamily, u: WeylElement, v: WeylElement, w: WeylElement,
                 d: Sequence[int], product: SchubertExpansion | None = None) -> Scalar:
    """Coefficient of ``q^d sigma_w`` in ``sigma_u o sigma_v``."""
    r = qf.group.rank
    if len(d) != r or min(d) < 0:
        raise ValueError("degree vector must have rank-many non-negative entries")
    if u.length + v.length != w.length + 2 * sum(d):
        return 0
    product = product if product is not None else quantum_product(qf, u, v)
    return product[w].coefficient((0,) * r, d)


def gw_terms(product: SchubertExpansion) -> list[tuple[WeylElement, tuple[int, ...], Scalar]]:
    """Flatten an expansion into ``(w, d, value)`` triples."""
    out = []
    for w, c in product.items():
        for mono, value in c.terms():
            out.append((w, mono.q, value))
    return out


@dataclass
class RelationReport:
    membership: bool
    free_term_matches: bool
    exact_equality: bool
    residual: SchubertExpansion | None = None

    def to_json(self) -> dict:
        return {
            "schema": "qschubert/1",
            "membership": self.membership,
            "free_term_matches": self.free_term_matches,
            "exact_equality": self.exact_equality,
        }


def verify_relation_quantization(ops: QuantumOperatorSet, classical: BGGFamily,
                                 relation: Polynomial, free_term: Polynomial) -> RelationReport:
    """Check that ``psi(R)`` lies in ``I_W (x) R[q]`` with q-free part ``u``."""
    image = quantize(ops, relation)
    nf = classical_normal_form(image, classical)
    return RelationReport(
        membership=not nf,
        free_term_matches=image.q_free_part() == free_term,
        exact_equality=image == free_term,
        residual=nf,
    )


def q_degree_key(rank: int, d: Sequence[int]) -> int:
    return pack((0,) * rank + tuple(d))


def weight_operator_terms(ops: QuantumOperatorSet, weight: Sequence[Scalar]) -> list[tuple[Scalar, tuple[int, ...], tuple[int, ...]]]:
    """Quantum terms of ``sum_i weight[i] * Lambda_i`` as ``(coeff, q exponents, word)``.

    Terms with the same reflection are merged; zero terms are dropped.
    """
    r = ops.rank
    acc: dict[tuple, Scalar] = {}
    for i, m in enumerate(weight, start=1):
        if not m:
            continue
        for t in ops.terms(i):
            key = (unpack(t.q_key >> (EXP_BITS * r), r), t.reflection.word)
            acc[key] = acc.get(key, 0) + m * t.coefficient
    return sorted((_norm(c), q, w) for (q, w), c in acc.items() if c)
