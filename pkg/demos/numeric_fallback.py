"""What happens when the spectrum leaves the exact scalar tower.

The companion matrix of x^3 - 2 has a real root 2^(1/3), so exact mode
refuses and names the factor, while auto mode switches to high-precision
numeric roots and still verifies every identity.

    python3 demos/numeric_fallback.py
"""

from jordan import ExactModeUnavailable, SquareMatrix, additive_jordan, verify_additive
from jordan import multiplicative_jordan, verify_multiplicative

C = SquareMatrix([[0, 0, 2], [1, 0, 0], [0, 1, 0]])

try:
    additive_jordan(C, "exact")
except ExactModeUnavailable as exc:
    print("exact mode:", exc)

d = additive_jordan(C)
print("auto mode used:", d.mode)
print(verify_additive(C, d).summary())

m = multiplicative_jordan(C)
print(verify_multiplicative(C, m).summary())
