"""Decompose a 4x4 matrix with a rotation-scaled block and a Jordan block.

Prints the minimal polynomial, the spectral projectors, every witness
polynomial and the components they evaluate to, then the verification report.

    python3 demos/worked_example.py
"""

from jordan import SquareMatrix, additive_jordan, build_projectors, factor_minimal_polynomial, minimal_polynomial
from jordan import multiplicative_jordan, verify_additive, verify_multiplicative

T = SquareMatrix([[1, 1, 0, 0], [-1, 1, 0, 0], [0, 0, 2, 1], [0, 0, 0, 2]])

p = minimal_polynomial(T)
print("minimal polynomial:", p.pretty())
for label, root, m, pi in build_projectors(factor_minimal_polynomial(p)).labelled():
    print(f"  projector {label:7} root {root!s:>6} mult {m}: {pi.pretty()}")

add = additive_jordan(T)
print("\nadditive witnesses")
for name, w in add.witnesses().items():
    print(f"  {name}(x) = {w.pretty()}")
for name, M in add.components().items():
    print(f"  {name} = {M}")

mul = multiplicative_jordan(T)
print("\nmultiplicative witnesses")
for name, w in mul.witnesses().items():
    print(f"  {name}(x) = {w.pretty()}")
for name, M in mul.components().items():
    print(f"  {name} = {M}")

print()
print(verify_additive(T, add).summary())
print(verify_multiplicative(T, mul).summary())
