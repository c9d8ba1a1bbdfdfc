"""Handlebody mapping classes acting on homology and on the free group, with relations and lifts.

Run: python demos/04_handlebody.py
"""

import random

from urspkit import (eta, eta_homology, format_matrix, lift_ursp_to_mcg, membership, psi, verify_relation)
from urspkit.sampling import random_ursp
from urspkit.surface import RELATIONS, decompose_level_d
from urspkit.words import format_word

g = 3
print("psi(alpha), A-block is E(1,2) but the B-block is not zero:")
print(format_matrix(psi("alpha", g)))
print(f"eta(alpha): {eta('alpha', g)}")
print(f"eta(tC1*tC2^-1): {eta('tC1*tC2^-1', g)}")

w = "alpha*omega*tD2^2*sigma(1,3)"
print(f"\n{w}: eta on homology equals the D-block of psi: {eta_homology(w, g) == psi(w, g).block('D')}")

for name, (lhs, rhs) in RELATIONS.items():
    print(f"{name}: psi {verify_relation(lhs, rhs, g)}, eta {verify_relation(lhs, rhs, g, 'eta')}")

for text, d in [("alpha", 1), ("tC1*tC2^-1", 1), ("alpha^3", 3), ("tD2^5", 5)]:
    print(f"{text} at level {d}: {membership(text, g, d)}")

u = random_ursp(random.Random(4), g, 6)
lift = lift_ursp_to_mcg(u)
print(f"\nlift of a random urSp(6) element: {format_word(lift)}")
print(f"psi(lift) == u: {psi(lift, g) == u}")

normal, residual = decompose_level_d("alpha^3*bp12*tD1^3", g, 3)
print(f"\nlevel-3 split: normal = {format_word(normal)}")
print(f"residual = {format_word(residual)}, Torelli: {psi(residual, g).is_identity()}")
