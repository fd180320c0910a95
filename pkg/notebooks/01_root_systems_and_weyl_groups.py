"""
Root systems and Weyl groups
============================

Build a root datum from a type label or a Cartan matrix, list the positive
roots with their coroots, and walk through the Weyl group.
"""

from qschubert import build_root_system, weyl_group

# B2 with the convention A[i][j] = alpha_j(alpha_i^vee); alpha_1 is the short root
d = build_root_system("B2")
print(d.cartan)
for a in d.positive_roots:
    print(a.label(), "coroot", a.coroot_coords, "height", a.height)

# the group is generated by closing the simple reflections under multiplication
W = weyl_group("B2")
print(len(W), "elements; longest element", W.longest.name(), "of length", W.longest.length)

# elements come sorted by length, then by their lex-smallest reduced word
for w in W:
    print(w.length, w.name(), w.matrix)

# reduced words, products and inverses
w0 = W.longest
print(W.reduced_words(w0))
u = W.parse("s1s2")
print(W.multiply(u, u) == w0, W.inverse(u).name())

# reflections in non-simple roots, and which roots are "tilde" roots:
# those with l(s_alpha) = 2 ht(alpha) - 1
for a in W.datum.positive_roots:
    s = W.reflection_element(a)
    print(a.label(), s.name(), s.length, 2 * a.height - 1, a.is_tilde)

# any finite-type Cartan matrix works too, here G2 written out by hand
G = weyl_group([[2, -1], [-3, 2]])
print(len(G), G.longest.length)
