"""
Divided differences and classical Schubert classes
==================================================

Polynomials live in the fundamental weights l1, ..., lr (and quantum
parameters q1, ..., qr).  Starting from a top-degree class, the divided
difference operators produce one representative per Weyl group element.
"""

from qschubert import (Polynomial, bgg_family, classical_normal_form, classical_product,
                       default_top_class, delta_w, divided_difference, weyl_group)
from qschubert.fixtures import Coordinates

W = weyl_group("B2")
l1, l2 = Polynomial.lam(2, 1), Polynomial.lam(2, 2)

# orthogonal coordinates for B2 make the formulas easier to read
xy = Coordinates(2, {"x1": "2*l1 - l2", "x2": "l2"})
x1, x2 = xy.parse("x1"), xy.parse("x2")

# Delta_alpha f = (f - s_alpha f) / alpha
for a in W.datum.positive_roots:
    print(a.label(), xy.render(divided_difference(W, a, x1 * x2 + x1 ** 2)))

# a top class: degree l(w0) with Delta_{w0}(top) = 1
top = (x1 - x2) ** 3 * (x1 + x2) / 16
print(delta_w(W, W.longest, top))

fam = bgg_family(top, W)
for w in reversed(W.elements):
    print(f"{w.name():10s}", xy.render(fam[w]))

# the default top class is the product of the positive roots over |W|;
# it gives a different family but the same cohomology classes
other = bgg_family(default_top_class(W), W)
print(xy.render(other[W.parse("s1s2")]), "vs", xy.render(fam[W.parse("s1s2")]))

# reduce any polynomial to the Schubert basis, modulo the invariant ideal
print(classical_normal_form(l1 * l1, fam).format())
print(classical_normal_form(x1 ** 2 + x2 ** 2, fam).format() or "0 (an invariant)")

# cup products
print(classical_product(fam, W.s(1), W.parse("s2s1")).format())
