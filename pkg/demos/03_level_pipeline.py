"""The urSp(2g)[d] pipeline: factor the A-block, embed it, then clear the S_g residual.

Run: python demos/03_level_pipeline.py
"""

import random

from urspkit import (evaluate_word, factor_Sg, factor_gammad, factor_ursp_level, format_matrix, is_in_Sg,
                     unimodular_inverse)
from urspkit.sampling import random_normal_product
from urspkit.symplectic import embed_word

rng = random.Random(3)
g, d = 3, 3
x = evaluate_word(random_normal_product(rng, "ursp", g, d, max_letters=8, max_conj_len=6), g, "urSp")
print("x in urSp(6)[3]:")
print(format_matrix(x))

a_word = factor_gammad(x.block("A"), d)
print(f"\nA-block as {len(a_word)} conjugates of E(1,2)^3")
emb = embed_word(a_word)
residual = x @ unimodular_inverse(evaluate_word(emb, g, "urSp"))
print("residual after removing the embedded A-part:")
print(format_matrix(residual))
print(f"residual in S_3[3]: {is_in_Sg(residual, d)}")
print(f"S_g part: {factor_Sg(residual, d)}")

full = factor_ursp_level(x, d)
print(f"\nfull factorization ({len(full)} letters): {full}")
print(f"verified: {evaluate_word(full, g) == x}")
