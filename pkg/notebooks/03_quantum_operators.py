"""
The quantum operators and the quantization map
==============================================

Each fundamental weight l_i becomes an operator Lambda_i: multiplication by
l_i plus a sum over tilde roots alpha of l_i(alpha^vee) q^{alpha^vee} times
the divided difference operator of s_alpha.  The operators commute, so a
polynomial f(l) can be turned into f(Lambda)(1).
"""

from qschubert import (Polynomial, apply_lambda_op, build_operators, dequantize, quantize,
                       weyl_group)
from qschubert.fixtures import Coordinates

W = weyl_group("B2")
ops = build_operators(W)
for i in (1, 2):
    for label, c, q, word in ops.describe(i):
        print(f"Lambda_{i}: {c} * q^{q} * Delta[{word}]   (root {label})")

l1, l2 = Polynomial.lam(2, 1), Polynomial.lam(2, 2)

# commutativity on a sample polynomial
f = l1 ** 3 * l2
print(apply_lambda_op(ops, 1, apply_lambda_op(ops, 2, f)) ==
      apply_lambda_op(ops, 2, apply_lambda_op(ops, 1, f)))

# psi: evaluate at the operators and apply to 1.  It fixes the top
# l-degree part and adds lower-degree q-corrections.
xy = Coordinates(2, {"x1": "2*l1 - l2", "x2": "l2"})
inv = xy.parse("x1^2 + x2^2")
print(xy.render(quantize(ops, inv)))

# so the quadratic invariant quantizes to itself plus 4 q1 + 2 q2,
# and its inverse image is the quantum relation
rel = dequantize(ops, inv)
print(xy.render(rel))
print(quantize(ops, rel) == inv)
