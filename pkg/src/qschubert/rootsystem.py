"""Root data built from a Cartan matrix.

Convention: ``A[i][j] = alpha_j(alpha_i^vee)``.  With it the simple root
``alpha_j`` has fundamental-weight coordinates given by column ``j`` of ``A``
and ``s_i(l_j) = l_j - delta_ij * alpha_i``.

Type labels follow Bourbaki numbering, except that ``B2`` uses the numbering in
which ``alpha_1`` is the short root (positive roots ``a1, a2, a1+a2, 2a1+a2``).
That makes ``B2`` and ``C2`` the same Cartan matrix.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import EXP_BITS, LinearForm, Monomial, Number, Scalar, to_scalar

Cartan = tuple[tuple[int, ...], ...]


class InvalidCartan(ValueError):
    pass


class UnknownType(ValueError):
    pass


def _chain(n: int) -> list[list[int]]:
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
        if i + 1 < n:
            a[i][i + 1] = a[i + 1][i] = -1
    return a


def _dynkin(n: int, edges: Sequence[tuple[int, int]]) -> list[list[int]]:
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        a[i - 1][j - 1] = a[j - 1][i - 1] = -1
    return a


def cartan_matrix(label: str) -> Cartan:
    """Cartan matrix for a finite type label such as ``"A3"`` or ``"G2"``."""
    m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", label)
    if not m:
        raise UnknownType(f"cannot parse type label {label!r}")
    kind, n = m.group(1).upper(), int(m.group(2))
    if kind == "A" and n >= 1:
        a = _chain(n)
    elif kind == "B" and n == 2:
        a = [[2, -2], [-1, 2]]
    elif kind == "B" and n >= 3:
        a = _chain(n)
        a[n - 1][n - 2] = -2
    elif kind == "C" and n >= 2:
        a = _chain(n)
        a[n - 2][n - 1] = -2
    elif kind == "D" and n >= 3:
        a = _dynkin(n, [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)])
    elif kind == "E" and n in (6, 7, 8):
        a = _dynkin(n, [(1, 3), (3, 4), (4, 5), (2, 4)] + [(i, i + 1) for i in range(5, n)])
    elif kind == "F" and n == 4:
        a = _chain(4)
        a[2][1] = -2
    elif kind == "G" and n == 2:
        a = [[2, -3], [-1, 2]]
    else:
        raise UnknownType(f"no finite root system of type {label!r}")
    return tuple(tuple(row) for row in a)


def _determinant(rows: Sequence[Sequence[int]]) -> int:
    # fraction-free Bareiss elimination
    m = [list(r) for r in rows]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def validate_cartan(entries: Sequence[Sequence[int]]) -> Cartan:
    a = tuple(tuple(int(x) for x in row) for row in entries)
    n = len(a)
    if n == 0 or any(len(row) != n for row in a):
        raise InvalidCartan("Cartan matrix must be square and non-empty")
    for i in range(n):
        if a[i][i] != 2:
            raise InvalidCartan(f"diagonal entry A[{i}][{i}] = {a[i][i]} != 2")
        for j in range(n):
            if i != j:
                if a[i][j] > 0:
                    raise InvalidCartan(f"off-diagonal entry A[{i}][{j}] is positive")
                if (a[i][j] == 0) != (a[j][i] == 0):
                    raise InvalidCartan(f"A[{i}][{j}] and A[{j}][{i}] must vanish together")
    for k in range(1, n + 1):
        if _determinant([row[:k] for row in a[:k]]) <= 0:
            raise InvalidCartan(f"leading principal minor of size {k} is not positive; "
                                "matrix is not of finite type")
    return a


@dataclass(eq=False)
class Root:
    """A positive root stored in three coordinate systems.

    ``reflection_length`` and ``is_tilde`` stay ``None`` until the Weyl group
    is generated.
    """

    index: int
    root_coords: tuple[int, ...]
    weight_coords: tuple[int, ...]
    coroot_coords: tuple[int, ...]
    reflection_length: int | None = None
    is_tilde: bool | None = None

    @property
    def height(self) -> int:
        """Height of the coroot, ``m_1 + ... + m_l``."""
        return sum(self.coroot_coords)

    @property
    def is_simple(self) -> bool:
        return sum(self.root_coords) == 1

    def label(self) -> str:
        parts = []
        for k, n in enumerate(self.root_coords, start=1):
            if n == 1:
                parts.append(f"a{k}")
            elif n:
                parts.append(f"{n}a{k}")
        return "+".join(parts)

    def __repr__(self):
        return f"Root({self.label()}, coroot={self.coroot_coords})"


@dataclass(eq=False)
class RootDatum:
    rank: int
    cartan: Cartan
    positive_roots: list[Root]
    type_label: str | None = None
    _by_root_coords: dict = field(default_factory=dict, repr=False)
    _by_weight: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for r in self.positive_roots:
            self._by_root_coords[r.root_coords] = r
            self._by_weight[r.weight_coords] = r

    def simple_root(self, i: int) -> Root:
        """``alpha_i`` (1-based)."""
        e = [0] * self.rank
        e[i - 1] = 1
        return self._by_root_coords[tuple(e)]

    @property
    def simple_roots(self) -> list[Root]:
        return [self.simple_root(i) for i in range(1, self.rank + 1)]

    def root(self, root_coords: Sequence[int]) -> Root:
        return self._by_root_coords[tuple(root_coords)]

    def root_by_weight(self, weight: Sequence[int]) -> Root | None:
        return self._by_weight.get(tuple(weight))

    def is_positive_root_weight(self, weight: Sequence[int]) -> bool:
        return tuple(weight) in self._by_weight

    @property
    def tilde_roots(self) -> list[Root]:
        if any(r.is_tilde is None for r in self.positive_roots):
            raise RuntimeError("reflection lengths are filled in by weylgroup.generate()")
        return [r for r in self.positive_roots if r.is_tilde]

    def __len__(self):
        return len(self.positive_roots)

    def to_json(self) -> dict:
        out = {"cartan": [list(r) for r in self.cartan]}
        if self.type_label:
            out["type"] = self.type_label
        return out


def build_root_system(spec) -> RootDatum:
    """Build the positive roots from a type label or a Cartan matrix.

    The simple roots are saturated under simple reflections, tracking the root
    and its coroot together; only vectors with non-negative coordinates are kept.
    """
    if isinstance(spec, str):
        label = spec.strip().upper()
        a = validate_cartan(cartan_matrix(label))
    else:
        label = None
        a = validate_cartan(spec)
    n = len(a)

    def reflect(i: int, root: tuple[int, ...], coroot: tuple[int, ...]):
        # s_i(alpha) = alpha - alpha(alpha_i^vee) alpha_i
        p = sum(root[k] * a[i][k] for k in range(n))
        # s_i(alpha^vee) = alpha^vee - alpha_i(alpha^vee) alpha_i^vee
        c = sum(coroot[k] * a[k][i] for k in range(n))
        r2 = list(root)
        r2[i] -= p
        c2 = list(coroot)
        c2[i] -= c
        return tuple(r2), tuple(c2)

    units = [tuple(int(k == i) for k in range(n)) for i in range(n)]
    found: dict[tuple[int, ...], tuple[int, ...]] = {u: u for u in units}
    frontier = list(units)
    while frontier:
        nxt = []
        for root in frontier:
            coroot = found[root]
            for i in range(n):
                r2, c2 = reflect(i, root, coroot)
                if min(r2) < 0:
                    continue
                if r2 not in found:
                    if min(c2) < 0:
                        raise InvalidCartan("root and coroot positivity disagree")
                    found[r2] = c2
                    nxt.append(r2)
        frontier = nxt

    def order(item):
        root = item[0]
        return (sum(root), tuple(-x for x in root))

    roots = []
    for idx, (root, coroot) in enumerate(sorted(found.items(), key=order)):
        weight = tuple(sum(a[i][k] * root[k] for k in range(n)) for i in range(n))
        roots.append(Root(idx, root, weight, coroot))
    return RootDatum(n, a, roots, label)


def pairing(weight: Sequence[Number], alpha: Root) -> Scalar:
    """``mu(alpha^vee)`` for ``mu`` given in fundamental-weight coordinates."""
    if len(weight) != len(alpha.coroot_coords):
        raise ValueError("weight length does not match rank")
    return to_scalar(sum(to_scalar(w) * m for w, m in zip(weight, alpha.coroot_coords)))


def root_as_linear_form(alpha: Root) -> LinearForm:
    return LinearForm(alpha.weight_coords)


def q_monomial(alpha: Root) -> Monomial:
    """``q^{alpha^vee}``."""
    n = len(alpha.coroot_coords)
    return Monomial((0,) * n, tuple(alpha.coroot_coords))


def q_key(alpha: Root) -> int:
    """Packed key of ``q^{alpha^vee}`` (see :mod:`qschubert.algebra`)."""
    n = len(alpha.coroot_coords)
    key = 0
    for k, m in enumerate(alpha.coroot_coords):
        key |= m << (EXP_BITS * (n + k))
    return key


def positive_root_count(label: str) -> int:
    """Known ``|Phi^+|`` for a type label, independent of the enumeration."""
    kind, n = label[0].upper(), int(label[1:])
    return {
        "A": n * (n + 1) // 2,
        "B": n * n,
        "C": n * n,
        "D": n * (n - 1),
        "E": {6: 36, 7: 63, 8: 120}.get(n, 0),
        "F": 24,
        "G": 6,
    }[kind]
