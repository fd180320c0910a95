"""Self-checking property suite and the B2 reference comparison.

Each check returns a :class:`Check`; nothing here raises on a failed
identity, so a report always lists every result.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .algebra import Polynomial, polynomial_to_linear_form
from .classical import (
    BGGFamily,
    SchubertExpansion,
    all_deltas,
    bgg_family,
    check_commutation_identity,
    classical_chevalley,
    classical_normal_form,
    default_top_class,
    delta_w,
    simple_divided_difference,
)
from .fixtures import B2Reference, operator_table
from .quantum import (
    QuantumFamily,
    apply_lambda_op,
    build_operators,
    dequantize,
    dequantize_binomial,
    quantize,
    quantize_in_order,
    quantum_chevalley,
    quantum_family,
    quantum_product,
    quantum_product_direct,
    lambda_matrices,
    verify_relation_quantization,
    weight_operator_terms,
)
from .weylgroup import DEFAULT_SIZE_LIMIT, WeylElement, WeylGroup, weyl_group

BASE_TYPES = ("A1", "A2", "A3", "B2", "B3", "G2")
EXTENDED_TYPES = ("C3", "D4", "F4")


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def to_json(self, timings: bool = False) -> dict:
        out = {"name": self.name, "passed": self.passed, "detail": self.detail}
        if timings:
            out["seconds"] = round(self.seconds, 3)
        return out


@dataclass
class Report:
    type_label: str
    checks: list[Check] = field(default_factory=list)
    errata: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "schema": "qschubert/1",
            "kind": "verification",
            "type": self.type_label,
            "passed": self.passed,
            "checks": [c.to_json(timings) for c in self.checks],
        }
        if self.errata:
            out["errata"] = self.errata
        return out


def _run(name: str, fn: Callable[[], tuple[bool, str]]) -> Check:
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failed check, not a crashed report
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return Check(name, bool(ok), detail, time.perf_counter() - t0)


# random inputs


def random_polynomial(rank: int, rng: random.Random, max_degree: int = 3, n_terms: int = 4,
                      with_q: bool = False) -> Polynomial:
    terms = {}
    for _ in range(n_terms):
        lam = [0] * rank
        for _ in range(rng.randint(0, max_degree)):
            lam[rng.randrange(rank)] += 1
        q = [0] * rank
        if with_q and rng.random() < 0.5:
            q[rng.randrange(rank)] += 1
        c = rng.choice([-3, -2, -1, 1, 2, 3])
        key = (tuple(lam), tuple(q))
        terms[key] = terms.get(key, 0) + c
    return Polynomial(rank, terms)


def random_reduced_word(group: WeylGroup, w: WeylElement, rng: random.Random) -> tuple[int, ...]:
    """A uniformly-chosen-descent reduced word (not uniform over all words)."""
    word = []
    while w.length:
        desc = [i for i in range(1, group.rank + 1)
                if group.multiply(group.s(i), w).length < w.length]
        i = rng.choice(desc)
        word.append(i)
        w = group.multiply(group.s(i), w)
    return tuple(word)


# property suite


@dataclass
class Engine:
    group: WeylGroup
    family: BGGFamily
    quantum: QuantumFamily

    @property
    def ops(self):
        return self.quantum.ops


def build_engine(spec, top: Polynomial | None = None, size_limit: int = DEFAULT_SIZE_LIMIT) -> Engine:
    group = weyl_group(spec, size_limit) if not isinstance(spec, WeylGroup) else spec
    fam = bgg_family(top if top is not None else default_top_class(group), group)
    ops = build_operators(group)
    return Engine(group, fam, quantum_family(ops, fam))


def _sample(seq, k, rng):
    seq = list(seq)
    return seq if len(seq) <= k else rng.sample(seq, k)


def property_checks(engine: Engine, seed: int = 0, samples: int = 12) -> list[Check]:
    g, fam, qf = engine.group, engine.family, engine.quantum
    ops = qf.ops
    r = g.rank
    rng = random.Random(seed)
    n = g.longest.length
    checks = []

    def roots():
        bad = [a for a in g.datum.positive_roots if a.reflection_length > 2 * a.height - 1]
        tilde_ok = all(a.is_tilde == (a.reflection_length == 2 * a.height - 1)
                       for a in g.datum.positive_roots)
        simple_ok = all(a.is_tilde and a.reflection_length == 1 for a in g.datum.simple_roots)
        count_ok = len(g.datum.positive_roots) == n
        return (not bad and tilde_ok and simple_ok and count_ok,
                f"{len(g.datum.positive_roots)} roots, {len(g.datum.tilde_roots)} tilde, l(w0)={n}")

    def reduced_words():
        f = fam.top
        tested = 0
        for w in g.elements:
            if w.length < 2:
                continue
            ref = delta_w(g, w, f)
            words = {random_reduced_word(g, w, rng) for _ in range(3)}
            for word in words:
                tested += 1
                if delta_w(g, w, f, word) != ref:
                    return False, f"{w.name()} disagrees along {word}"
        return True, f"{tested} words"

    def composition():
        f = fam.top + random_polynomial(r, rng, n, 3)
        pairs = [(rng.choice(g.elements), rng.choice(g.elements)) for _ in range(4 * samples)]
        pairs += [(g.s(i), g.s(i)) for i in range(1, r + 1)]
        for u, v in pairs:
            lhs = delta_w(g, u, delta_w(g, v, f))
            uv = g.multiply(u, v)
            rhs = delta_w(g, uv, f) if uv.length == u.length + v.length else Polynomial.zero(r)
            if lhs != rhs:
                return False, f"u={u.name()} v={v.name()}"
        for i in range(1, r + 1):
            h = random_polynomial(r, rng, 4, 5, with_q=True)
            if simple_divided_difference(g, i, simple_divided_difference(g, i, h)):
                return False, f"Delta_{i}^2 != 0"
        return True, f"{len(pairs)} pairs"

    def dual_basis():
        for w in g.elements:
            deltas = all_deltas(g, fam[w], w.length)
            for v in g.by_length(w.length):
                if deltas[v] != (1 if v == w else 0):
                    return False, f"Delta_{v.name()}(c_{w.name()}) = {deltas[v]}"
            c = fam[w]
            if not (c.is_q_free() and c.is_homogeneous() and c.lambda_degree() == w.length):
                return False, f"c_{w.name()} not homogeneous of degree {w.length}"
        return True, f"{len(g)} classes"

    def commutation_identity():
        cases = [(rng.randint(1, r), rng.choice(g.elements), random_polynomial(r, rng, 3, 4))
                 for _ in range(samples)]
        cases.append((1, g.longest, fam.top))
        for i, w, f in cases:
            if not check_commutation_identity(g, i, w, f):
                return False, f"i={i} w={w.name()}"
        return True, f"{len(cases)} cases"

    def chevalley():
        # Lambda_i on the quotient, from the operator definition, against the closed formula
        mats = lambda_matrices(qf)
        direct = set(_sample([(i, w) for i in range(1, r + 1) for w in g.elements], 4 * samples, rng))
        for i in range(1, r + 1):
            lam = Polynomial.lam(r, i)
            for w in g.elements:
                if classical_chevalley(g, i, w) != classical_normal_form(lam * fam[w], fam):
                    return False, f"classical i={i} w={w.name()}"
                qc = quantum_chevalley(g, i, w)
                if SchubertExpansion(g, mats[i - 1][w]) != qc:
                    return False, f"operator action i={i} w={w.name()}"
                if quantum_product(qf, g.s(i), w) != qc:
                    return False, f"quantum product i={i} w={w.name()}"
                if (i, w) in direct and quantum_product_direct(qf, g.s(i), w) != qc:
                    return False, f"direct quantum product i={i} w={w.name()}"
        return True, f"{r * len(g)} pairs, {len(direct)} by the direct route"

    def commutativity():
        inputs = _sample([fam[w] for w in g.elements], samples, rng)
        inputs += [random_polynomial(r, rng, 3, 4, with_q=True) for _ in range(samples)]
        for f in inputs:
            for i in range(1, r + 1):
                for j in range(i + 1, r + 1):
                    a = apply_lambda_op(ops, i, apply_lambda_op(ops, j, f))
                    b = apply_lambda_op(ops, j, apply_lambda_op(ops, i, f))
                    if a != b:
                        return False, f"Lambda_{i} Lambda_{j} on {f}"
        order_f = random_polynomial(r, rng, 3, 3)
        if r > 1 and quantize_in_order(ops, order_f, list(range(r, 0, -1))) != quantize(ops, order_f):
            return False, "psi depends on operator order"
        return True, f"{len(inputs)} inputs"

    def round_trip():
        inputs = [random_polynomial(r, rng, min(n, 4), 4, with_q=True) for _ in range(samples)]
        for f in inputs:
            if quantize(ops, dequantize(ops, f)) != f or dequantize(ops, quantize(ops, f)) != f:
                return False, f"round trip fails on {f}"
        classes = _sample(g.elements, 4 * samples, rng)
        for w in classes:
            c = fam[w]
            if dequantize_binomial(ops, c) != qf[w]:
                return False, f"binomial inverse disagrees on c_{w.name()}"
        for f in inputs[:3]:
            if dequantize_binomial(ops, f) != dequantize(ops, f):
                return False, f"binomial inverse disagrees on {f}"
        return True, f"{len(inputs)} random + {len(classes)} classes"

    def quantum_classes():
        for w in g.elements:
            h = qf[w]
            if h.degree() != 2 * w.length or not h.is_homogeneous():
                return False, f"c_hat_{w.name()} not homogeneous of degree {2 * w.length}"
            corr = qf.correction(w)
            if corr and corr.lambda_degree() >= w.length:
                return False, f"c_hat_{w.name()} - c_w has l-degree {corr.lambda_degree()}"
            if quantize(ops, h) != fam[w]:
                return False, f"psi(c_hat_{w.name()}) != c_{w.name()}"
        if qf[g.identity] != 1:
            return False, "c_hat_e != 1"
        return True, f"{len(g)} classes"

    def products():
        pairs = _sample([(u, v) for u in g.elements for v in g.elements], 4 * samples, rng)
        for n_direct, (u, v) in enumerate(pairs):
            prod = quantum_product(qf, u, v)
            if n_direct < max(1, samples // 4) and prod != quantum_product_direct(qf, u, v):
                return False, f"{u.name()}*{v.name()}: operator matrices and direct route disagree"
            classical = classical_normal_form(fam[u] * fam[v], fam)
            q0 = {w: c.q_free_part() for w, c in prod.items()}
            if {w: c for w, c in q0.items() if c} != classical.coords:
                return False, f"q=0 slice of {u.name()}*{v.name()} is not the cup product"
            for w, c in prod.items():
                for mono, value in c.terms():
                    if sum(mono.lam):
                        return False, "coefficient involves l"
                    if u.length + v.length != w.length + 2 * sum(mono.q):
                        return False, f"grading fails for {u.name()}*{v.name()} at {w.name()}"
                    if value < 0 or getattr(value, "denominator", 1) != 1:
                        return False, f"coefficient {value} at {w.name()} q^{mono.q}"
        return True, f"{len(pairs)} pairs"

    for name, fn in [
        ("roots: reflection lengths and tilde set", roots),
        ("Delta_w independent of reduced word", reduced_words),
        ("composition rule for Delta", composition),
        ("dual basis Delta_v(c_w)", dual_basis),
        ("commutation identity for Delta_w and l_i", commutation_identity),
        ("Chevalley formulas vs normal form", chevalley),
        ("Lambda operators commute", commutativity),
        ("psi round trips and binomial inverse", round_trip),
        ("quantum classes: degrees and psi", quantum_classes),
        ("products: grading, integrality, positivity", products),
    ]:
        checks.append(_run(name, fn))
    return checks


# B2 reference comparison


def b2_reference_checks(ref: B2Reference | None = None) -> tuple[list[Check], list[dict]]:
    """Compare against the bundled B2 data; returns (checks, errata).

    Entries with a corrected value are checked against the correction.  The
    errata list reports, for each such entry, whether the printed value indeed
    disagrees with what the engine computes.
    """
    ref = ref or B2Reference()
    g = weyl_group("B2")
    checks: list[Check] = []
    state: dict = {}

    def classical():
        fam = bgg_family(ref.top, g)
        state["fam"] = fam
        for word, c in ref.classical_rows():
            if fam[g.from_word(word)] != c:
                return False, f"row {word}"
        return fam[g.identity] == 1, "7 rows + identity"

    def operators():
        ops = build_operators(g)
        state["ops"] = ops
        tilde = sorted(tuple(a.root_coords) for a in g.datum.tilde_roots)
        if tilde != sorted(tuple(t) for t in ref.data["tilde_roots"]):
            return False, f"tilde roots {tilde}"
        for name, (weight, terms) in operator_table(ref.data).items():
            lf = polynomial_to_linear_form(ref.parse(weight))
            got = weight_operator_terms(ops, lf.coefficients)
            if got != terms:
                return False, f"{name}: {got}"
        return True, "X1, X2 and tilde roots"

    def quantum():
        fam, ops = state["fam"], state["ops"]
        qf = quantum_family(ops, fam)
        state["qf"] = qf
        top_image = quantize(ops, ref.top) - ref.top
        if top_image != ref.expected("psi_top_minus_top"):
            return False, "psi(c_w0) - c_w0"
        for row in ref.correction_rows():
            w = g.from_word(row["word"])
            if qf.correction(w) != ref.expected(row):
                return False, f"correction for {w.name()}"
        a1 = top_image.q_coefficient((1, 0))
        a2 = top_image.q_coefficient((0, 1))
        if -a1 != ref.expected("a1") or -a2 != ref.expected("a2"):
            return False, "a1/a2"
        return True, "psi(c_w0), a1, a2 and 7 corrections"

    def relations():
        fam, ops = state["fam"], state["ops"]
        notes = []
        for rel in ref.relations():
            rep = verify_relation_quantization(ops, fam, ref.expected(rel["R"]), ref.parse(rel["u"]))
            notes.append(f"{rel['name']}: exact={rep.exact_equality}")
            if not (rep.membership and rep.free_term_matches):
                return False, f"{rel['name']}: membership={rep.membership} free={rep.free_term_matches}"
        return True, "; ".join(notes)

    def invariance():
        qf = state["qf"]
        alt = quantum_family(state["ops"], bgg_family(default_top_class(g), g))
        differ = sum(1 for w in g.elements if alt[w] != qf[w])
        for u in g.elements:
            for v in g.elements:
                if quantum_product(qf, u, v) != quantum_product(alt, u, v):
                    return False, f"{u.name()}*{v.name()}"
        return True, f"64 products agree; {differ} representatives differ"

    for name, fn in [
        ("B2 classical table", classical),
        ("B2 operators", operators),
        ("B2 quantum representatives", quantum),
        ("B2 quantum relations", relations),
        ("B2 top-class invariance", invariance),
    ]:
        checks.append(_run(name, fn))

    errata = []
    if "qf" in state:
        ops, fam, qf = state["ops"], state["fam"], state["qf"]
        image = quantize(ops, ref.top) - ref.top
        computed = {"psi_top_minus_top": image, "a1": -image.q_coefficient((1, 0)),
                    "a2": -image.q_coefficient((0, 1))}
        printed = {k: ref.printed(k) for k in computed}
        for row in ref.data["quantum_corrections"]:
            label = f"c_hat[{row['word']}] - c"
            computed[label] = qf.correction(g.parse(row["word"]))
            printed[label] = ref.printed(row)
        for item in ref.errata():
            key = item["entry"]
            if key in computed:
                disagrees = computed[key] != printed[key]
            else:
                rel = next(r for r in ref.relations() if f"relation {r['name']}" == key)
                rep = verify_relation_quantization(ops, fam, ref.printed(rel["R"]), ref.parse(rel["u"]))
                disagrees = not rep.membership
            errata.append(dict(item, printed_value_disagrees=disagrees))
    return checks, errata


def verify(spec, top: Polynomial | None = None, size_limit: int = DEFAULT_SIZE_LIMIT,
           seed: int = 0, samples: int = 12) -> Report:
    label = spec if isinstance(spec, str) else "custom"
    report = Report(label.upper() if isinstance(spec, str) else label)
    engine = build_engine(spec, top, size_limit)
    report.checks.extend(property_checks(engine, seed, samples))
    if isinstance(spec, str) and spec.strip().upper() in ("B2", "C2"):
        checks, errata = b2_reference_checks()
        report.checks.extend(checks)
        report.errata = errata
    return report


def verify_many(types: Iterable[str], **kw) -> list[Report]:
    return [verify(t, **kw) for t in types]
