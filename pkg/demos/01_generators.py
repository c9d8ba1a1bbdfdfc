"""Generator matrices of urSp(2g) and their level structure.

Run: python demos/01_generators.py
"""

from urspkit import Symbol, format_matrix, is_in_level, is_symplectic, is_ursp, make_generator

g = 2
for sym in [Symbol("X", (1, 2)), Symbol("Y", (1, 1)), Symbol("Y", (1, 2)), Symbol("Z", (1,)),
            Symbol("Atilde", (1, 2))]:
    m = make_generator(sym, g).matrix
    print(f"{sym}:")
    print(format_matrix(m))
    print(f"  symplectic={is_symplectic(m)} urSp={is_ursp(m)} level2={is_in_level(m, 2)}")

# powers fall into the level-d subgroup
x = make_generator(Symbol("X", (1, 2)), g).matrix
for d in range(2, 6):
    print(f"X(1,2)^{d} in level {d}: {is_in_level(x ** d, d)}, X(1,2)^{d - 1}: {is_in_level(x ** (d - 1), d)}")
