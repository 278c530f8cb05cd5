"""Frozen numeric/combinatorial tables used across the package.

Everything in this module was produced by the derivation scripts in
scripts/ (see README) and is locked in place by the test suite: the tables
are re-validated at test time against independent evaluations (modularity
of the generator forms, direct theta transformations, pullback identities).
"""

DEFAULT_EPS = 0.01  # enlargement of the fundamental domain used everywhere

# Signed syzygous-triple expansion of the weight-6 generator in fourth
# powers of even theta constants: h6 = sum coef * (th_i th_j th_k)^4.
H6_TRIPLES = []

# Goepel-quadruple expansion of the weight-12 generator:
# h12 = (1/H12_DENOM) * sum coef * (th_i th_j th_k th_l)^4.
H12_QUADS = []
H12_DENOM = 1
