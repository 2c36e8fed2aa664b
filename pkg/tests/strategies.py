"""Hypothesis strategies shared by the test modules."""

from fractions import Fraction

from hypothesis import strategies as st

from jordan import Poly, SquareMatrix
from jordan.scalars import _make

small_ints = st.integers(-6, 6)
rationals = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5))
nonzero_rationals = rationals.filter(lambda q: q != 0)
radicands = st.sampled_from([1, 2, 3, 5, 6, 7, 10])


@st.composite
def exact_scalars(draw, gaussian=True, radical=True, max_terms=3):
    terms = {}
    for _ in range(draw(st.integers(1, max_terms))):
        m = draw(radicands) if radical else 1
        e = draw(st.integers(0, 1)) if gaussian else 0
        terms[(m, e)] = draw(rationals)
    return _make(terms)


@st.composite
def rational_polys(draw, max_degree=4, monic=False):
    coeffs = draw(st.lists(rationals, min_size=1, max_size=max_degree + 1))
    if monic:
        coeffs = coeffs + [Fraction(1)]
    return Poly(coeffs)


@st.composite
def rational_matrices(draw, max_n=4, n=None):
    n = n or draw(st.integers(1, max_n))
    return SquareMatrix([[draw(rationals) for _ in range(n)] for _ in range(n)])
