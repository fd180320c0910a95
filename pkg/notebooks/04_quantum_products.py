"""
Quantum products and Gromov-Witten invariants
=============================================

Quantizing every classical representative gives polynomials whose products,
reduced modulo the invariant ideal, are quantum products of Schubert classes.
The coefficient of q^d sigma_w in sigma_u * sigma_v is a 3-point invariant.
"""

import itertools

from qschubert import (build_operators, bgg_family, default_top_class, gw_invariant, gw_terms,
                       quantum_chevalley, quantum_family, quantum_product, weyl_group)

W = weyl_group("A2")
fam = bgg_family(default_top_class(W), W)
qf = quantum_family(build_operators(W), fam)

# the full multiplication table of the small quantum cohomology of SL3/B
for u, v in itertools.combinations_with_replacement(W.elements, 2):
    print(f"{u.name():8s} * {v.name():8s} = {quantum_product(qf, u, v).format()}")

# quantum Chevalley formula: an independent closed form for sigma_{s_i} * sigma_w
for w in W:
    assert quantum_product(qf, W.s(1), w) == quantum_chevalley(W, 1, w)

# the invariants themselves; they vanish unless l(u) + l(v) = l(w) + 2 (d1 + d2)
w0 = W.longest
print(gw_invariant(qf, W.s(1), W.s(1), W.identity, (1, 0)))
for w, d, value in gw_terms(quantum_product(qf, w0, w0)):
    print(f"<{w0.name()}, {w0.name()} | {w.name()}>_{d} =", value)

# a larger rank two example
G = weyl_group("G2")
gf = quantum_family(build_operators(G), bgg_family(default_top_class(G), G))
print(quantum_product(gf, G.longest, G.longest).format())
