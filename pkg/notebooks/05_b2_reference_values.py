"""
The B2 worked example and its corrections
=========================================

The package ships a B2 reference fixture: the classical table, the quantum
operators, the quantum corrections, and two relations, each with the printed
value and, where the printed value is inconsistent with the definitions,
the value the definitions produce.  This script recomputes everything.
"""

from qschubert import B2Reference, bgg_family, build_operators, quantize, quantum_family
from qschubert import quantum_normal_form, verify_relation_quantization, weyl_group

ref = B2Reference()
W = weyl_group("B2")
ops = build_operators(W)
fam = bgg_family(ref.top, W)
qf = quantum_family(ops, fam)
show = ref.coords.render

for word, c in ref.classical_rows():
    print("".join(f"s{i}" for i in word), fam[W.from_word(word)] == c)

print("psi(top) - top =", show(quantize(ops, ref.top) - ref.top))

for row in ref.correction_rows():
    w = W.from_word(row["word"])
    got = qf.correction(w)
    status = "agrees" if got == ref.printed(row) else "differs from the printed value"
    print(f"{w.name():10s} {show(got):45s} {status}")

# the printed quartic relation is off by a constant 16 q1 q2
for rel in ref.relations():
    rep = verify_relation_quantization(ops, fam, ref.printed(rel["R"]), ref.parse(rel["u"]))
    print(rel["name"], rep.membership, rep.free_term_matches, rep.residual.format())
quartic = ref.relations()[1]
print(quantum_normal_form(ops, fam, ref.expected(quartic["R"])).format() or "0")

for e in ref.errata():
    print(e["entry"], ":", e["reason"])
