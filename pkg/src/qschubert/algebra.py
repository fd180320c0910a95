"""Exact sparse polynomials in the variables l1..lr (fundamental weights) and q1..qr.

Coefficients are exact rationals: integral values are kept as ``int`` (much
faster than ``Fraction`` in the inner loops), everything else as
:class:`fractions.Fraction`; the two compare and hash consistently.

A monomial is stored as a single packed integer: the exponent of ``l_k``
sits in bit field ``k`` and the exponent of ``q_k`` in field ``r + k``, each field ``EXP_BITS`` wide.  Multiplying two
monomials is then integer addition, which keeps the inner loops cheap.

Grading: ``deg l_k = 2`` and ``deg q_k = 4``.
"""

from __future__ import annotations

import ast
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence, Union

EXP_BITS = 16
_FIELD = (1 << EXP_BITS) - 1

Scalar = Union[int, Fraction]
Number = Scalar


class RankMismatch(ValueError):
    pass


class NotDivisible(ArithmeticError):
    """Raised when an exact division leaves a nonzero remainder."""


def to_scalar(value) -> Scalar:
    """Coerce ints, Fractions and ``"p/q"`` strings to a normalized exact scalar."""
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"unsupported coefficient {value!r}")
    if isinstance(value, int):
        return value
    if not isinstance(value, Fraction):
        value = Fraction(value)
    return value.numerator if value.denominator == 1 else value


def _norm(c: Scalar) -> Scalar:
    # Fraction arithmetic can land on an integer; keep the int representation canonical
    if c.__class__ is Fraction and c.denominator == 1:
        return c.numerator
    return c


def divide(a: Scalar, b: Scalar) -> Scalar:
    """Exact quotient of two scalars."""
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        return q if not r else Fraction(a, b)
    return to_scalar(Fraction(a) / b)


def scalar_to_str(c: Scalar) -> str:
    return f"{c.numerator}/{c.denominator}"


class Monomial(NamedTuple):
    lam: tuple[int, ...]
    q: tuple[int, ...]

    @property
    def degree(self) -> int:
        return 2 * sum(self.lam) + 4 * sum(self.q)

    @property
    def lambda_degree(self) -> int:
        return sum(self.lam)


def pack(exponents: Sequence[int]) -> int:
    key = 0
    for k, e in enumerate(exponents):
        if e < 0 or e > _FIELD:
            raise ValueError(f"exponent {e} out of range")
        key |= e << (EXP_BITS * k)
    return key


def unpack(key: int, n: int) -> tuple[int, ...]:
    return tuple((key >> (EXP_BITS * k)) & _FIELD for k in range(n))


class Polynomial:
    """Immutable sparse polynomial over the rationals.

    ``Polynomial(rank, terms)`` accepts a mapping from packed keys (ints) or
    :class:`Monomial` values to coefficients; zero coefficients are dropped.
    """

    __slots__ = ("rank", "_terms", "_hash")

    def __init__(self, rank: int, terms: Mapping | None = None):
        if rank < 1:
            raise ValueError("rank must be positive")
        self.rank = rank
        clean: dict[int, Scalar] = {}
        if terms:
            for key, c in terms.items():
                if isinstance(key, tuple):
                    key = _key_from_tuple(key)
                c = to_scalar(c)
                if c:
                    clean[key] = clean.get(key, 0) + c
            clean = {k: c for k, c in clean.items() if c}
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, rank: int, terms: dict[int, Scalar]) -> "Polynomial":
        # caller guarantees: no zero coefficients, exact scalar values
        obj = cls.__new__(cls)
        obj.rank = rank
        obj._terms = terms
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def zero(cls, rank: int) -> "Polynomial":
        return cls._raw(rank, {})

    @classmethod
    def constant(cls, rank: int, c: Number) -> "Polynomial":
        c = to_scalar(c)
        return cls._raw(rank, {0: c} if c else {})

    @classmethod
    def one(cls, rank: int) -> "Polynomial":
        return cls.constant(rank, 1)

    @classmethod
    def lam(cls, rank: int, i: int) -> "Polynomial":
        """The fundamental weight variable ``l_i`` (1-based)."""
        _check_index(i, rank)
        return cls._raw(rank, {1 << (EXP_BITS * (i - 1)): 1})

    @classmethod
    def q(cls, rank: int, i: int) -> "Polynomial":
        """The quantum parameter ``q_i`` (1-based)."""
        _check_index(i, rank)
        return cls._raw(rank, {1 << (EXP_BITS * (rank + i - 1)): 1})

    @classmethod
    def monomial(cls, rank: int, lam: Sequence[int], q: Sequence[int] | None = None,
                 coeff: Number = 1) -> "Polynomial":
        q = q if q is not None else (0,) * rank
        if len(lam) != rank or len(q) != rank:
            raise RankMismatch("exponent vectors must have length rank")
        return cls(rank, {pack(tuple(lam) + tuple(q)): coeff})

    # accessors

    @property
    def lambda_mask(self) -> int:
        return (1 << (EXP_BITS * self.rank)) - 1

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def raw_terms(self) -> dict[int, Scalar]:
        """The packed-key term dict.  Do not mutate."""
        return self._terms

    def monomial_of(self, key: int) -> Monomial:
        e = unpack(key, 2 * self.rank)
        return Monomial(e[: self.rank], e[self.rank:])

    def terms(self) -> Iterator[tuple[Monomial, Scalar]]:
        """Terms in canonical order (see :func:`canonical_key`)."""
        n = 2 * self.rank
        for key in sorted(self._terms, key=lambda k: canonical_key(k, self.rank)):
            e = unpack(key, n)
            yield Monomial(e[: self.rank], e[self.rank:]), self._terms[key]

    def coefficient(self, lam: Sequence[int], q: Sequence[int] | None = None) -> Scalar:
        q = q if q is not None else (0,) * self.rank
        return self._terms.get(pack(tuple(lam) + tuple(q)), 0)

    def constant_term(self) -> Scalar:
        return self._terms.get(0, 0)

    def lambda_degree(self) -> int:
        """Maximal total degree in the l variables; -1 for the zero polynomial."""
        mask = self.lambda_mask
        return max((_field_sum(k & mask) for k in self._terms), default=-1)

    def degree(self) -> int:
        """Maximal total degree with deg l = 2, deg q = 4; -1 for zero."""
        return max((self.monomial_of(k).degree for k in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {self.monomial_of(k).degree for k in self._terms}
        return len(degs) <= 1

    def is_lambda_free(self) -> bool:
        mask = self.lambda_mask
        return all(not (k & mask) for k in self._terms)

    def is_q_free(self) -> bool:
        mask = self.lambda_mask
        return all(not (k & ~mask) for k in self._terms)

    def is_constant(self) -> bool:
        return all(k == 0 for k in self._terms)

    # arithmetic

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.rank != self.rank:
                raise RankMismatch(f"rank {self.rank} vs {other.rank}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.rank, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k)
            if s is None:
                out[k] = c
            else:
                s += c
                if s:
                    out[k] = _norm(s)
                else:
                    del out[k]
        return Polynomial._raw(self.rank, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.rank, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = to_scalar(other)
            if not c:
                return Polynomial.zero(self.rank)
            return Polynomial._raw(self.rank, {k: _norm(v * c) for k, v in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[int, Scalar] = {}
        get = out.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        return Polynomial._raw(self.rank, {k: _norm(c) for k, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            c = to_scalar(other)
            if not c:
                raise ZeroDivisionError("division by zero scalar")
            return Polynomial._raw(self.rank, {k: divide(v, c) for k, v in self._terms.items()})
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = Polynomial.one(self.rank)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.rank, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.rank == other.rank and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rank, frozenset(self._terms.items())))
        return self._hash

    # slicing by degree

    def q_slices(self) -> dict[int, "Polynomial"]:
        """Split by q-monomial: maps the packed q-part to the l-polynomial coefficient."""
        mask = self.lambda_mask
        out: dict[int, dict[int, Scalar]] = {}
        for k, c in self._terms.items():
            out.setdefault(k & ~mask, {})[k & mask] = c
        return {qk: Polynomial._raw(self.rank, t) for qk, t in out.items()}

    def q_free_part(self) -> "Polynomial":
        mask = self.lambda_mask
        return Polynomial._raw(self.rank, {k: c for k, c in self._terms.items() if not k & ~mask})

    def lambda_free_part(self) -> "Polynomial":
        mask = self.lambda_mask
        return Polynomial._raw(self.rank, {k: c for k, c in self._terms.items() if not k & mask})

    def q_coefficient(self, d: Sequence[int]) -> "Polynomial":
        """The l-polynomial multiplying ``q^d``."""
        if len(d) != self.rank:
            raise RankMismatch("degree vector must have length rank")
        qk = pack((0,) * self.rank + tuple(d))
        mask = self.lambda_mask
        return Polynomial._raw(self.rank, {k & mask: c for k, c in self._terms.items()
                                           if k & ~mask == qk})

    def times_key(self, key: int) -> "Polynomial":
        """Multiply by the monomial with packed key ``key``."""
        return Polynomial._raw(self.rank, {k + key: c for k, c in self._terms.items()})

    def evaluate(self, lam: Sequence[Number], q: Sequence[Number] | None = None) -> Scalar:
        q = q if q is not None else (0,) * self.rank
        point = [to_scalar(v) for v in lam] + [to_scalar(v) for v in q]
        total: Scalar = 0
        for k, c in self._terms.items():
            term = c
            for v, e in zip(point, unpack(k, 2 * self.rank)):
                if e:
                    term *= v ** e
            total += term
        return to_scalar(total)

    # rendering

    def format(self, lam_names: Sequence[str] | None = None,
               q_names: Sequence[str] | None = None) -> str:
        lam_names = lam_names or [f"l{i + 1}" for i in range(self.rank)]
        q_names = q_names or [f"q{i + 1}" for i in range(self.rank)]
        names = list(lam_names) + list(q_names)
        if not self._terms:
            return "0"
        parts = []
        for mono, c in self.terms():
            factors = []
            for name, e in zip(names, tuple(mono.lam) + tuple(mono.q)):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Polynomial({self.rank}, '{self.format()}')"

    # serialization

    def to_json(self) -> list[dict]:
        return [{"lambda": list(m.lam), "q": list(m.q), "coeff": scalar_to_str(c)}
                for m, c in self.terms()]

    @classmethod
    def from_json(cls, rank: int, data: Iterable[Mapping]) -> "Polynomial":
        terms: dict[int, Scalar] = {}
        for item in data:
            lam, q = item["lambda"], item["q"]
            if len(lam) != rank or len(q) != rank:
                raise RankMismatch("term exponent vectors do not match rank")
            key = pack(tuple(lam) + tuple(q))
            terms[key] = terms.get(key, 0) + to_scalar(item["coeff"])
        return cls(rank, terms)


def _key_from_tuple(key: tuple) -> int:
    if len(key) == 2 and isinstance(key[0], tuple):
        return pack(tuple(key[0]) + tuple(key[1]))
    return pack(key)


def _check_index(i: int, rank: int) -> None:
    if not 1 <= i <= rank:
        raise IndexError(f"variable index {i} outside 1..{rank}")


def _field_sum(key: int) -> int:
    s = 0
    while key:
        s += key & _FIELD
        key >>= EXP_BITS
    return s


def canonical_key(key: int, rank: int) -> tuple:
    """Sort key: total degree descending, then exponents (l block, q block) descending."""
    e = unpack(key, 2 * rank)
    deg = 2 * sum(e[:rank]) + 4 * sum(e[rank:])
    return (-deg, tuple(-x for x in e))


@dataclass(frozen=True)
class LinearForm:
    """``sum_k coefficients[k] * l_{k+1}``."""

    coefficients: tuple[Scalar, ...]

    def __init__(self, coefficients: Iterable[Number]):
        object.__setattr__(self, "coefficients", tuple(to_scalar(c) for c in coefficients))

    @property
    def rank(self) -> int:
        return len(self.coefficients)

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def as_polynomial(self) -> Polynomial:
        r = self.rank
        return Polynomial(r, {1 << (EXP_BITS * k): c for k, c in enumerate(self.coefficients) if c})


def add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f + g


def mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def substitute_linear(f: Polynomial, images: Sequence[LinearForm]) -> Polynomial:
    """Replace each ``l_i`` by ``images[i-1]``; q variables pass through."""
    if len(images) != f.rank:
        raise RankMismatch(f"need {f.rank} images, got {len(images)}")
    for form in images:
        if form.rank != f.rank:
            raise RankMismatch("image rank mismatch")
    r = f.rank
    mask = f.lambda_mask
    polys = [form.as_polynomial() for form in images]
    powers: list[list[Polynomial]] = [[Polynomial.one(r)] for _ in range(r)]

    def power(i: int, e: int) -> Polynomial:
        cache = powers[i]
        while len(cache) <= e:
            cache.append(cache[-1] * polys[i])
        return cache[e]

    # group by l-monomial so each image product is expanded once
    by_lam: dict[int, dict[int, Scalar]] = {}
    for k, c in f.raw_terms().items():
        by_lam.setdefault(k & mask, {})[k & ~mask] = c
    out: dict[int, Scalar] = {}
    get = out.get
    for lk, qpart in by_lam.items():
        image = Polynomial.one(r)
        for i, e in enumerate(unpack(lk, r)):
            if e:
                image = image * power(i, e)
        for ik, ic in image.raw_terms().items():
            for qk, qc in qpart.items():
                k = ik + qk
                out[k] = get(k, 0) + ic * qc
    return Polynomial._raw(r, {k: _norm(c) for k, c in out.items() if c})


def exact_divide_by_linear(f: Polynomial, form: LinearForm) -> Polynomial:
    """Return ``g`` with ``form * g == f``; raises :class:`NotDivisible` otherwise.

    Pivots on the first variable with nonzero coefficient and eliminates that
    variable's highest power level by level.
    """
    if form.rank != f.rank:
        raise RankMismatch("divisor rank mismatch")
    if form.is_zero():
        raise ZeroDivisionError("division by the zero linear form")
    if not f:
        return f
    coeffs = form.coefficients
    p = next(k for k, c in enumerate(coeffs) if c)
    shift = EXP_BITS * p
    unit_p = 1 << shift
    lead = coeffs[p]
    others = [(1 << (EXP_BITS * j), c) for j, c in enumerate(coeffs) if c and j != p]

    levels: dict[int, dict[int, Scalar]] = {}
    for k, c in f.raw_terms().items():
        levels.setdefault((k >> shift) & _FIELD, {})[k] = c
    quotient: dict[int, Scalar] = {}
    for e in range(max(levels), 0, -1):
        level = levels.pop(e, None)
        if not level:
            continue
        below = levels.setdefault(e - 1, {})
        for k, c in level.items():
            if not c:
                continue
            g = divide(c, lead)
            gk = k - unit_p
            quotient[gk] = g
            for unit, lc in others:
                t = gk + unit
                v = below.get(t, 0) - lc * g
                below[t] = v
    if any(levels.get(0, {}).values()):
        raise NotDivisible("remainder is nonzero")
    return Polynomial._raw(f.rank, quotient)


def lambda_homogeneous_components(f: Polynomial) -> dict[int, Polynomial]:
    mask = f.lambda_mask
    out: dict[int, dict[int, Scalar]] = {}
    for k, c in f.raw_terms().items():
        out.setdefault(_field_sum(k & mask), {})[k] = c
    return {d: Polynomial._raw(f.rank, t) for d, t in sorted(out.items())}


# parsing

_ALLOWED_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)


def parse_polynomial(text: str, rank: int, names: Mapping[str, Polynomial] | None = None) -> Polynomial:
    """Parse an arithmetic expression such as ``"(x1-x2)^3*(x1+x2)/16"``.

    Variables ``l1..lr`` and ``q1..qr`` are always defined; ``names`` adds or
    overrides bindings (for instance an ``x``-coordinate dictionary).
    """
    env: dict[str, Polynomial] = {}
    for i in range(1, rank + 1):
        env[f"l{i}"] = Polynomial.lam(rank, i)
        env[f"q{i}"] = Polynomial.q(rank, i)
    if names:
        env.update(names)
    src = text.replace("^", "**").replace("λ", "l")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse polynomial {text!r}: {exc.msg}") from None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Polynomial.constant(rank, node.value)
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise ValueError(f"unknown variable {node.id!r} in {text!r}")
            return env[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and isinstance(node.op, _ALLOWED_BINOPS):
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                if not b.is_constant() or not b:
                    raise ValueError(f"division by a non-constant or zero in {text!r}")
                return a / b.constant_term()
            if not b.is_constant() or b.constant_term().denominator != 1 or b.constant_term() < 0:
                raise ValueError(f"exponent must be a non-negative integer in {text!r}")
            return a ** int(b.constant_term())
        raise ValueError(f"unsupported syntax in {text!r}")

    return ev(tree)


_NAME_RE = re.compile(r"^[A-Za-z_]\w*$")


def linear_dictionary(rank: int, dictionary: Mapping[str, str]) -> dict[str, Polynomial]:
    """Parse ``{"x1": "2*l1 - l2", ...}`` into name bindings of linear l-forms."""
    out = {}
    for name, expr in dictionary.items():
        if not _NAME_RE.match(name):
            raise ValueError(f"bad variable name {name!r}")
        poly = parse_polynomial(expr, rank)
        if poly.lambda_degree() != 1 or not poly.is_q_free() or poly.constant_term():
            raise ValueError(f"{name} = {expr!r} is not a linear form in l1..l{rank}")
        out[name] = poly
    return out


def polynomial_to_linear_form(poly: Polynomial) -> LinearForm:
    r = poly.rank
    coeffs: list[Scalar] = [0] * r
    for k, c in poly.raw_terms().items():
        e = unpack(k, 2 * r)
        if sum(e) != 1 or any(e[r:]):
            raise ValueError("not a linear form in the l variables")
        coeffs[e.index(1)] = c
    return LinearForm(coeffs)
