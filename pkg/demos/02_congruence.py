"""Writing congruence-subgroup elements as products of conjugates.

Level 2 uses the single normal generator F(1); level d >= 3 uses E(1,2)^d.
Run: python demos/02_congruence.py
"""

import random

from urspkit import evaluate_word, factor_gamma2, factor_gammad, format_matrix, parse_word
from urspkit.sampling import random_normal_product

rng = random.Random(2)
g = 3

m = evaluate_word(parse_word("E(1,2)^2*E(2,3)^-4*F(3)*E(3,1)^2*F(2)"), g)
print("an element of Gamma_2(3):")
print(format_matrix(m))
cw = factor_gamma2(m)
print(f"as {len(cw)} conjugates of F(1): {cw}")
assert evaluate_word(cw, g) == m

for d in (3, 5):
    m = evaluate_word(random_normal_product(rng, "gamma", g, d, max_letters=8, max_conj_len=6), g)
    cw = factor_gammad(m, d)
    print(f"\nGamma_{d}(3) element with entries up to {max(abs(v) for r in m.rows for v in r)}:")
    print(format_matrix(m))
    print(f"{len(cw)} conjugates of E(1,2)^{d}; re-multiplies exactly: {evaluate_word(cw, g) == m}")
