"""Finite Weyl groups by explicit enumeration.

Elements are integer matrices acting on the weight lattice in
fundamental-weight coordinates: column ``j`` holds ``w(l_j)``.  An element is
identified by its matrix; its canonical word is the lexicographically smallest
reduced word, found by repeatedly stripping the smallest left descent.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .algebra import LinearForm, Polynomial, substitute_linear
from .rootsystem import Root, RootDatum, build_root_system

Matrix = tuple[tuple[int, ...], ...]

DEFAULT_SIZE_LIMIT = 100_000


class SizeLimitExceeded(RuntimeError):
    pass


class NonFiniteGroup(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class WeylElement:
    matrix: Matrix
    length: int
    word: tuple[int, ...]
    index: int = field(compare=False)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __lt__(self, other):
        return self.index < other.index

    def name(self, sep: str = "") -> str:
        """``"s1s2s1"`` (or ``"e"`` for the identity)."""
        return sep.join(f"s{i}" for i in self.word) if self.word else "e"

    def __repr__(self):
        return f"<{self.name('*')}>"

    def to_json(self) -> dict:
        return {"word": list(self.word), "length": self.length}


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def _apply(m: Matrix, v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def _identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


class WeylGroup:
    """All elements of the Weyl group of ``datum``, sorted by (length, word)."""

    def __init__(self, datum: RootDatum, elements: list[WeylElement]):
        self.datum = datum
        self.rank = datum.rank
        self.elements = elements
        self._by_matrix = {w.matrix: w for w in elements}
        self.identity = elements[0]
        self.longest = max(elements, key=lambda w: w.length)
        self._simple = [self._by_matrix[self._simple_matrix(i)] for i in range(1, self.rank + 1)]
        self._mul_cache: dict[tuple[int, int], WeylElement] = {}
        self._reflections: dict[int, WeylElement] = {}
        # per-group memo tables used by the divided-difference code
        self.cache: dict = {}

    # construction helpers

    def _simple_matrix(self, i: int) -> Matrix:
        # s_i(l_j) = l_j - delta_ij alpha_i; alpha_i has weight coords = column i of A
        a = self.datum.cartan
        n = self.rank
        return tuple(tuple(int(r == c) - (a[r][i - 1] if c == i - 1 else 0) for c in range(n))
                     for r in range(n))

    def __len__(self):
        return len(self.elements)

    def __iter__(self) -> Iterator[WeylElement]:
        return iter(self.elements)

    def s(self, i: int) -> WeylElement:
        return self._simple[i - 1]

    @property
    def simple_reflections(self) -> list[WeylElement]:
        return list(self._simple)

    def by_length(self, k: int) -> list[WeylElement]:
        return [w for w in self.elements if w.length == k]

    def element(self, matrix: Matrix) -> WeylElement:
        return self._by_matrix[matrix]

    def multiply(self, u: WeylElement, v: WeylElement) -> WeylElement:
        key = (u.index, v.index)
        w = self._mul_cache.get(key)
        if w is None:
            w = self._by_matrix[_matmul(u.matrix, v.matrix)]
            self._mul_cache[key] = w
        return w

    def inverse(self, w: WeylElement) -> WeylElement:
        return self.from_word(reversed(w.word))

    def from_word(self, word) -> WeylElement:
        """The product ``s_{i1} s_{i2} ...``; the word need not be reduced."""
        w = self.identity
        for i in word:
            if not 1 <= i <= self.rank:
                raise ValueError(f"simple reflection index {i} outside 1..{self.rank}")
            w = self.multiply(w, self._simple[i - 1])
        return w

    def parse(self, text: str) -> WeylElement:
        """Accepts ``"s1s2s1"``, ``"s1*s2*s1"``, ``"1,2,1"``, ``"e"`` or ``"id"``."""
        t = text.strip().replace(" ", "")
        if t in ("", "e", "id"):
            return self.identity
        if re.fullmatch(r"(s\d+\*?)+", t):
            word = [int(x) for x in re.findall(r"s(\d+)", t)]
        elif re.fullmatch(r"\d+(,\d+)*", t):
            word = [int(x) for x in t.split(",")]
        else:
            raise ValueError(f"cannot parse Weyl group element {text!r}")
        return self.from_word(word)

    # action

    def act_on_weight(self, w: WeylElement, weight: Sequence[int]) -> tuple[int, ...]:
        return _apply(w.matrix, weight)

    def weight_images(self, w: WeylElement) -> list[LinearForm]:
        """``[w(l_1), ..., w(l_r)]`` as linear forms."""
        cols = list(zip(*w.matrix))
        return [LinearForm(col) for col in cols]

    def act_on_polynomial(self, w: WeylElement, f: Polynomial) -> Polynomial:
        """Substitute ``l_j -> w(l_j)``; a left action, ``(vw).f = v.(w.f)``."""
        if w.length == 0:
            return f
        return substitute_linear(f, self.weight_images(w))

    def is_positive_image(self, w: WeylElement, root: Root) -> bool:
        return self.datum.is_positive_root_weight(_apply(w.matrix, root.weight_coords))

    def reflection_element(self, alpha: Root) -> WeylElement:
        """``s_alpha``: ``mu -> mu - mu(alpha^vee) alpha``."""
        w = self._reflections.get(alpha.index)
        if w is None:
            n = self.rank
            aw, m = alpha.weight_coords, alpha.coroot_coords
            mat = tuple(tuple(int(r == c) - aw[r] * m[c] for c in range(n)) for r in range(n))
            w = self._by_matrix[mat]
            self._reflections[alpha.index] = w
        return w

    def reduced_words(self, w: WeylElement) -> list[tuple[int, ...]]:
        """All reduced words of ``w``, lexicographically sorted."""
        if w.length == 0:
            return [()]
        out = []
        for i in range(1, self.rank + 1):
            v = self.multiply(self._simple[i - 1], w)
            if v.length < w.length:
                out.extend((i,) + tail for tail in self.reduced_words(v))
        return sorted(out)

    # serialization

    def to_json(self) -> dict:
        return {
            "schema": "qschubert/1",
            "kind": "weyl_group",
            "root_datum": self.datum.to_json(),
            "elements": [w.to_json() for w in self.elements],
        }

    @classmethod
    def from_json(cls, data: dict) -> "WeylGroup":
        """Rebuild from :meth:`to_json` output; words are trusted, matrices recomputed."""
        rd = data["root_datum"]
        datum = build_root_system(rd.get("type") or rd["cartan"])
        probe = cls.__new__(cls)
        probe.datum, probe.rank = datum, datum.rank
        simple = [probe._simple_matrix(i) for i in range(1, datum.rank + 1)]
        elements = []
        for idx, item in enumerate(data["elements"]):
            m = _identity(datum.rank)
            for i in item["word"]:
                m = _matmul(m, simple[i - 1])
            elements.append(WeylElement(m, item["length"], tuple(item["word"]), idx))
        group = cls(datum, elements)
        _fill_root_data(group)
        return group


def _inversions(datum: RootDatum, m: Matrix) -> int:
    return sum(1 for r in datum.positive_roots
               if not datum.is_positive_root_weight(_apply(m, r.weight_coords)))


def generate(datum: RootDatum, size_limit: int = DEFAULT_SIZE_LIMIT) -> WeylGroup:
    """Enumerate the Weyl group breadth-first and fill reflection data on ``datum``."""
    n = datum.rank
    probe = WeylGroup.__new__(WeylGroup)
    probe.datum, probe.rank = datum, n
    simple = [probe._simple_matrix(i) for i in range(1, n + 1)]
    ident = _identity(n)

    # BFS by left multiplication; distance in the Cayley graph is the length
    seen = {ident}
    layers = [[ident]]
    while layers[-1]:
        nxt = []
        for m in layers[-1]:
            for i in range(n):
                m2 = _matmul(simple[i], m)
                if m2 not in seen:
                    seen.add(m2)
                    nxt.append(m2)
            if len(seen) > size_limit:
                raise SizeLimitExceeded(f"Weyl group has more than {size_limit} elements")
        layers.append(nxt)
    layers.pop()

    # canonical word: smallest left descent first, then canonical word of the rest
    words: dict[Matrix, tuple[int, ...]] = {ident: ()}
    lengths: dict[Matrix, int] = {}
    for k, layer in enumerate(layers):
        for m in layer:
            lengths[m] = _inversions(datum, m)
            if lengths[m] != k:
                raise NonFiniteGroup("inversion count disagrees with word length; "
                                     "the Cartan matrix is not of finite type")
    for layer in layers[1:]:
        for m in layer:
            for i in range(n):
                m2 = _matmul(simple[i], m)
                if lengths[m2] < lengths[m]:
                    words[m] = (i + 1,) + words[m2]
                    break

    ordered = sorted(seen, key=lambda m: (lengths[m], words[m]))
    elements = [WeylElement(m, lengths[m], words[m], idx) for idx, m in enumerate(ordered)]
    top = elements[-1].length
    if top != len(datum.positive_roots) or sum(1 for w in elements if w.length == top) != 1:
        raise NonFiniteGroup("longest element inconsistent with the positive roots")
    group = WeylGroup(datum, elements)
    _fill_root_data(group)
    return group


def _fill_root_data(group: WeylGroup) -> None:
    for alpha in group.datum.positive_roots:
        s = group.reflection_element(alpha)
        alpha.reflection_length = s.length
        bound = 2 * alpha.height - 1
        if s.length > bound:
            raise AssertionError(f"l(s_alpha) = {s.length} exceeds 2|alpha^vee|-1 = {bound} "
                                 f"for {alpha!r}")
        alpha.is_tilde = s.length == bound


def weyl_group(spec, size_limit: int = DEFAULT_SIZE_LIMIT) -> WeylGroup:
    """Shortcut: ``generate(build_root_system(spec))``."""
    return generate(build_root_system(spec), size_limit)


def inversion_count(group: WeylGroup, w: WeylElement) -> int:
    return _inversions(group.datum, w.matrix)


def load_group(path) -> WeylGroup:
    with open(path) as fh:
        return WeylGroup.from_json(json.load(fh))
