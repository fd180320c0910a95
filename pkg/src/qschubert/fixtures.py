"""Bundled reference data and coordinate dictionaries.

Fixture polynomials are written in whatever coordinates are convenient (the B2
data uses orthogonal coordinates ``x1, x2``); each file carries a dictionary
expressing those names as linear forms in ``l1..lr``, so comparisons always
happen in the fundamental-weight basis.
"""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from typing import Mapping

from .algebra import (
    LinearForm,
    Polynomial,
    linear_dictionary,
    parse_polynomial,
    polynomial_to_linear_form,
    substitute_linear,
    to_scalar,
)


def load_data(name: str) -> dict:
    """Read ``qschubert/data/<name>`` (``.json`` is appended when missing)."""
    if not name.endswith(".json"):
        name += ".json"
    with resources.files("qschubert").joinpath("data", name).open("r", encoding="utf-8") as fh:
        return json.load(fh)


def _invert(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(rows)
    m = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            raise ValueError("coordinate dictionary is not invertible")
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return [row[n:] for row in m]


class Coordinates:
    """A change of variables ``name_k = linear form in l1..lr``.

    ``parse`` reads expressions in the named variables (``q1..qr`` stay
    available) and returns l-polynomials; ``render`` goes the other way.
    """

    def __init__(self, rank: int, dictionary: Mapping[str, str]):
        self.rank = rank
        self.dictionary = dict(dictionary)
        self.names = list(self.dictionary)
        if len(self.names) != rank:
            raise ValueError(f"dictionary has {len(self.names)} names, rank is {rank}")
        self.bindings = linear_dictionary(rank, self.dictionary)
        forms = [polynomial_to_linear_form(self.bindings[n]) for n in self.names]
        # column k of the inverse expresses l_k in the named variables
        matrix = [[Fraction(f.coefficients[k]) for f in forms] for k in range(rank)]
        inv = _invert(matrix)
        self._to_names = [LinearForm([to_scalar(inv[j][k]) for j in range(rank)]) for k in range(rank)]

    def parse(self, text: str) -> Polynomial:
        return parse_polynomial(text, self.rank, self.bindings)

    def render(self, poly: Polynomial) -> str:
        """Format ``poly`` with its l-variables rewritten in the named coordinates."""
        return substitute_linear(poly, self._to_names).format(lam_names=self.names)

    def __repr__(self):
        return f"Coordinates({self.dictionary!r})"


def identity_coordinates(rank: int) -> Coordinates:
    return Coordinates(rank, {f"l{i}": f"l{i}" for i in range(1, rank + 1)})


def load_top_class(source, rank: int) -> Polynomial:
    """Top class from a JSON document (path, file object or parsed dict).

    Accepted shapes: ``{"polynomial": "...", "dictionary": {...}}`` with the
    expression in the dictionary's names, or ``{"polynomial": [terms...]}``
    in the serialized term format.
    """
    if isinstance(source, Mapping):
        data = source
    elif hasattr(source, "read"):
        data = json.load(source)
    else:
        with open(source, encoding="utf-8") as fh:
            data = json.load(fh)
    body = data.get("polynomial")
    if body is None:
        raise ValueError("top-class document has no 'polynomial' field")
    if isinstance(body, list):
        return Polynomial.from_json(rank, body)
    if "dictionary" in data:
        return Coordinates(rank, data["dictionary"]).parse(body)
    return parse_polynomial(body, rank)


class B2Reference:
    """The worked B2 example, parsed into l-coordinates.

    Every entry that has a ``"corrected"`` value exposes both readings:
    ``printed(...)`` and ``expected(...)`` (the corrected value when one exists).
    """

    def __init__(self, data: dict | None = None):
        self.data = data if data is not None else load_data("b2_reference")
        self.coords = Coordinates(2, self.data["dictionary"])
        self.top = self.coords.parse(self.data["top_class"])

    def parse(self, text: str) -> Polynomial:
        return self.coords.parse(text)

    def _entry(self, key):
        if isinstance(key, str):
            return self.data[key]
        return key

    def printed(self, key) -> Polynomial:
        return self.parse(self._entry(key)["printed"])

    def expected(self, key) -> Polynomial:
        e = self._entry(key)
        return self.parse(e.get("corrected", e["printed"]))

    def classical_rows(self) -> list[tuple[tuple[int, ...], Polynomial]]:
        return [(_word(r["word"]), self.parse(r["c_w"])) for r in self.data["classical"]]

    def correction_rows(self) -> list[dict]:
        return [dict(r, word=_word(r["word"])) for r in self.data["quantum_corrections"]]

    def relations(self) -> list[dict]:
        return self.data["relations"]

    def errata(self) -> list[dict]:
        """Entries whose printed value differs from the corrected one."""
        out = []

        def visit(label, entry):
            if isinstance(entry, dict) and "corrected" in entry:
                out.append({"entry": label, "printed": entry["printed"],
                            "corrected": entry["corrected"], "reason": entry.get("reason", "")})

        for key in ("psi_top_minus_top", "a1", "a2"):
            visit(key, self.data[key])
        for row in self.data["quantum_corrections"]:
            visit(f"c_hat[{row['word']}] - c", row)
        for rel in self.data["relations"]:
            visit(f"relation {rel['name']}", rel["R"])
        return out


def _word(text: str) -> tuple[int, ...]:
    return tuple(int(ch) for ch in text.replace("s", " ").split())


def operator_table(data: dict) -> dict[str, tuple[str, list[tuple]]]:
    """``{name: (weight, [(coeff, q exponents, word), ...])}`` from a fixture."""
    out = {}
    for name, op in data["operators"].items():
        terms = sorted((to_scalar(t["coeff"]), tuple(t["q"]), tuple(t["word"])) for t in op["terms"])
        out[name] = (op["weight"], terms)
    return out
