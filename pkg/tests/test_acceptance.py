"""The eight acceptance criteria, each checked exactly as stated.

Every test records a single ``ACn PASS|FAIL ...`` line; the lines are printed
in the pytest terminal summary, or directly when this file is run as a script.
Criteria 2, 4 and 5 compare against printed B2 reference values that are known
to be inconsistent with the stated definitions; they are expected to fail.
"""

import contextlib
import itertools
import sys
import time

import pytest

from qschubert import B2Reference, Polynomial, weyl_group
from qschubert.classical import bgg_family, default_top_class
from qschubert.fixtures import operator_table
from qschubert.algebra import polynomial_to_linear_form
from qschubert.quantum import (
    build_operators,
    gw_terms,
    quantize,
    quantum_chevalley,
    quantum_family,
    quantum_product,
    verify_relation_quantization,
    weight_operator_terms,
)
from qschubert.verify import BASE_TYPES, EXTENDED_TYPES, verify

from conftest import ACCEPTANCE

REF = B2Reference()


@contextlib.contextmanager
def criterion(key, title):
    start = time.perf_counter()
    notes = []
    try:
        yield notes
    except AssertionError as exc:
        detail = str(exc).splitlines()[0] if str(exc) else "assertion failed"
        ACCEPTANCE[key] = f"{key} FAIL {title}: {detail}"
        raise
    else:
        extra = f" ({'; '.join(notes)})" if notes else ""
        ACCEPTANCE[key] = f"{key} PASS {title} [{time.perf_counter() - start:.2f}s]{extra}"
    finally:
        print(ACCEPTANCE.get(key, f"{key} FAIL {title}: error"))


def test_ac1_classical_table():
    with criterion("AC1", "B2 classical table"):
        start = time.perf_counter()
        g = weyl_group("B2")
        fam = bgg_family(REF.top, g)
        bad = [w for w, c in REF.classical_rows() if fam[g.from_word(w)] != c]
        elapsed = time.perf_counter() - start
        assert len(REF.classical_rows()) == 7
        assert not bad, f"rows differ: {bad}"
        assert elapsed < 1, f"took {elapsed:.2f}s"


def test_ac2_quantum_table():
    with criterion("AC2", "B2 quantum table"):
        start = time.perf_counter()
        g = weyl_group("B2")
        qf = quantum_family(build_operators(g), bgg_family(REF.top, g))
        elapsed = time.perf_counter() - start
        rows = REF.correction_rows()
        w0_row = next(r for r in rows if r["word"] == g.longest.word)
        others = [r for r in rows if r["word"] != g.longest.word]
        assert len(others) == 6
        bad = ["".join(f"s{i}" for i in r["word"]) for r in rows
               if qf.correction(g.from_word(r["word"])) != REF.printed(r)]
        assert elapsed < 1, f"took {elapsed:.2f}s"
        assert qf.correction(g.longest) == REF.printed(w0_row) and not bad, \
            f"printed corrections not reproduced for {bad}"


def test_ac3_operators():
    with criterion("AC3", "B2 operators and tilde roots"):
        g = weyl_group("B2")
        ops = build_operators(g)
        for name, (weight, terms) in operator_table(REF.data).items():
            form = polynomial_to_linear_form(REF.parse(weight))
            assert weight_operator_terms(ops, form.coefficients) == terms, f"{name} terms differ"
        for i in (1, 2):
            assert all(t.root.root_coords != (1, 1) for t in ops.terms(i)), "alpha_3 present"
        tilde = sorted(a.root_coords for a in g.datum.tilde_roots)
        assert tilde == sorted(tuple(r) for r in REF.data["tilde_roots"]), f"tilde set {tilde}"


def test_ac4_relations():
    with criterion("AC4", "B2 relations") as notes:
        g = weyl_group("B2")
        ops = build_operators(g)
        fam = bgg_family(REF.top, g)
        failures = []
        for rel in REF.relations():
            rep = verify_relation_quantization(ops, fam, REF.printed(rel["R"]), REF.parse(rel["u"]))
            notes.append(f"{rel['name']}: exact_equality={rep.exact_equality}")
            if not (rep.membership and rep.free_term_matches):
                failures.append(f"{rel['name']} membership={rep.membership} "
                                f"free_term={rep.free_term_matches} residual {rep.residual.format()}")
        assert not failures, "; ".join(failures)


def test_ac5_psi_display():
    with criterion("AC5", "B2 psi(c_w0) display and a1, a2"):
        g = weyl_group("B2")
        ops = build_operators(g)
        image = quantize(ops, REF.top)
        qf = quantum_family(ops, bgg_family(REF.top, g))
        corr = qf.correction(g.longest)
        a1, a2 = corr.q_coefficient((1, 0)), corr.q_coefficient((0, 1))
        problems = []
        if image != REF.top + REF.printed("psi_top_minus_top"):
            problems.append("psi(c_w0) - c_w0 = " + REF.coords.render(image - REF.top))
        if a1 != REF.printed("a1"):
            problems.append("a1 = " + REF.coords.render(a1))
        if a2 != REF.printed("a2"):
            problems.append("a2 = " + REF.coords.render(a2))
        assert not problems, "; ".join(problems)


def test_ac6_property_suite():
    with criterion("AC6", "property suite on base types") as notes:
        start = time.perf_counter()
        failed = []
        for label in BASE_TYPES:
            report = verify(label)
            failed += [f"{label}:{c.name}" for c in report.failures()]
        elapsed = time.perf_counter() - start
        notes.append(f"{len(BASE_TYPES)} types in {elapsed:.1f}s")
        assert not failed, f"failed checks {failed}"
        assert elapsed < 60, f"took {elapsed:.1f}s"


@pytest.mark.slow
@pytest.mark.parametrize("label", [t for t in EXTENDED_TYPES if t != "F4"])
def test_ac6_extended(label):
    report = verify(label, samples=4)
    assert report.passed, [c.name for c in report.failures()]


@pytest.mark.slow
def test_ac6_extended_f4_classical():
    # the quantum family of F4 is out of reach in pure Python (psi of
    # degree-24 classes); the root, group and classical layers are checked
    g = weyl_group("F4")
    assert len(g) == 1152 and g.longest.length == 24
    for a in g.datum.positive_roots:
        assert a.reflection_length <= 2 * a.height - 1
        assert a.is_tilde == (a.reflection_length == 2 * a.height - 1)
    fam = bgg_family(default_top_class(g), g)
    for w in g.by_length(1):
        assert fam[w] == Polynomial.lam(4, w.word[0])
    for w in g.elements[::97]:
        assert fam[w].is_homogeneous() and fam[w].lambda_degree() == w.length


def _check_table(label):
    g = weyl_group(label)
    qf = quantum_family(build_operators(g), bgg_family(default_top_class(g), g))
    for u, v in itertools.product(g.elements, repeat=2):
        prod = quantum_product(qf, u, v)
        for w, d, value in gw_terms(prod):
            assert isinstance(value, int), f"{label} non-integer {value} at {u.word} {v.word}"
            assert value > 0, f"{label} negative {value} at {u.word} {v.word}"
            assert u.length + v.length == w.length + 2 * sum(d), f"{label} grading at {u.word} {v.word}"
        if u.length == 1:
            assert prod == quantum_chevalley(g, u.word[0], v), f"{label} Chevalley row {u.word} {v.word}"
    return len(g) ** 2


def test_ac7_full_tables():
    with criterion("AC7", "full quantum tables for B2 and A2") as notes:
        n = _check_table("B2") + _check_table("A2")
        notes.append(f"{n} products")


def test_ac8_representative_invariance():
    with criterion("AC8", "B2 representative invariance"):
        g = weyl_group("B2")
        ops = build_operators(g)
        a = quantum_family(ops, bgg_family(REF.top, g))
        b = quantum_family(ops, bgg_family(default_top_class(g), g))
        assert any(a[w] != b[w] for w in g), "representatives coincide"
        diff = [(u.word, v.word) for u in g for v in g
                if quantum_product(a, u, v) != quantum_product(b, u, v)]
        assert not diff, f"products differ for {diff}"


if __name__ == "__main__":
    tests = [test_ac1_classical_table, test_ac2_quantum_table, test_ac3_operators, test_ac4_relations,
             test_ac5_psi_display, test_ac6_property_suite, test_ac7_full_tables,
             test_ac8_representative_invariance]
    failed = 0
    for t in tests:
        with contextlib.redirect_stdout(None):
            try:
                t()
            except AssertionError:
                failed += 1
    for key in sorted(ACCEPTANCE):
        print(ACCEPTANCE[key])
    sys.exit(1 if failed else 0)
