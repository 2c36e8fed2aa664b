from fractions import Fraction

import mpmath
import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from jordan.corpus import block_form_sample
from jordan.errors import ClusterAmbiguity, ExactModeUnavailable
from jordan.exactmat import SquareMatrix, minimal_polynomial
from jordan.polyring import Poly
from jordan.scalars import Scalar, conj, sqrt_exact, to_mpc
from jordan.spectral import (
    aberth,
    classify_numeric,
    classify_operator,
    classify_spectrum,
    factor_minimal_polynomial,
    numeric_roots,
)

from conftest import I_, x
from test_exactmat import to_sympy


def roots_of(sd):
    return [(r.value, r.multiplicity) for r in sd.roots]


def test_factor_examples(example_p):
    assert roots_of(factor_minimal_polynomial(x - 1)) == [(1, 1)]
    sd = factor_minimal_polynomial(example_p, "exact")
    assert roots_of(sd) == [(Scalar.gaussian(1, 1), 1), (2, 2)]
    assert len(sd.complex_pairs) == 1 and sd.degree == 4


def test_cubic_needs_numeric_mode():
    with pytest.raises(ExactModeUnavailable, match=r"x\^3 - 2"):
        factor_minimal_polynomial(x**3 - 2, "exact")
    for mode in ("numeric", "auto"):
        sd = factor_minimal_polynomial(x**3 - 2, mode)
        assert sd.mode == "numeric"
        (pair,), (real,) = sd.complex_pairs, sd.real_roots
        assert abs(real.value - mpmath.cbrt(2)) < 1e-12
        assert abs(pair.value - mpmath.mpc(-0.6299605249474366, 1.0911236359717214)) < 1e-12
        for lam in (pair.value, real.value):
            assert abs(lam**3 - 2) < 1e-12


def test_exact_splitting_over_rationals_and_quadratic_fields():
    third = Fraction(1, 3)
    p = (x**2 - 2) * (x**2 + x + 1) * (x - third) * (x**2 - 3 * x + 1) ** 2 * (x**2 + 4)
    sd = factor_minimal_polynomial(p, "exact")
    assert sd.expand() == p
    assert {r.multiplicity for r in sd.roots} == {1, 2}
    assert sqrt_exact(2) in [r.value for r in sd.real_roots]


def test_exact_splitting_over_radical_coefficients():
    r2 = sqrt_exact(2)
    p = (x**2 - r2 * x + 1) * (x - 1)
    sd = factor_minimal_polynomial(p, "exact")
    (pair,), (one,) = sd.complex_pairs, sd.real_roots
    assert pair.value == Scalar.gaussian(0, 1) * r2 / 2 + r2 / 2 and one.value == 1


def test_canonical_ordering():
    p = (x - 3) * (x + 1) * (x**2 + 1) * (x**2 - 2 * x + 5) * (x**2 + 2 * x + 2)
    sd = factor_minimal_polynomial(p, "exact")
    assert [r.value for r in sd.real_roots] == [-1, 3]
    assert [(r.real, r.imag) for r in sd.complex_pairs] == [(-1, 1), (0, 1), (1, 2)]
    num = factor_minimal_polynomial(p, "numeric")
    for a, b in zip(num.roots, sd.roots):
        assert abs(a.value - to_mpc(b.value)) < 1e-12


def test_input_validation():
    with pytest.raises(ValueError):
        factor_minimal_polynomial(2 * x - 1)
    with pytest.raises(ValueError):
        factor_minimal_polynomial(Poly([3]))
    with pytest.raises(ValueError):
        factor_minimal_polynomial(x - 1, "fast")


def test_numeric_cluster_is_ambiguous():
    # two distinct roots far closer than the separation threshold
    with pytest.raises(ClusterAmbiguity):
        factor_minimal_polynomial(Poly([Fraction(-1), 0, 1]) * Poly([Fraction(-1) - Fraction(1, 10**14), 1]), "numeric")


def test_aberth_matches_numpy():
    coeffs = [mpmath.mpf(c) for c in (-6, 11, -6, 1)]
    got = sorted(complex(z).real for z in aberth(coeffs, 80))
    assert np.allclose(got, [1, 2, 3])


def test_classification_examples():
    rot = classify_operator(SquareMatrix([[0, 1], [-1, 0]])).to_json()
    assert rot == dict(semisimple=True, nilpotent=False, elliptic_add=True, hyperbolic_add=False,
                       elliptic_mult=True, hyperbolic_mult=False, unipotent=False)
    nil = classify_operator(SquareMatrix([[0, 1], [0, 0]]))
    assert nil.nilpotent and not nil.semisimple
    d = classify_operator(SquareMatrix.diag([2, Fraction(1, 2)]))
    assert d.semisimple and d.hyperbolic_add and d.hyperbolic_mult and not d.elliptic_mult


def test_zero_and_identity_are_both_kinds():
    z = classify_operator(SquareMatrix.zero(3))
    assert z.elliptic_add and z.hyperbolic_add and z.nilpotent
    i = classify_operator(SquareMatrix.identity(3))
    assert i.elliptic_mult and i.hyperbolic_mult and i.unipotent


@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=1, max_size=3))
def test_elliptic_and_hyperbolic_are_mutually_exclusive(parts):
    # spectra that are both purely imaginary and real can only be {0}; modulus one and positive only {1}
    p = Poly([1])
    for a, b in parts:
        p = p * ((x - a) if b == 0 else (x**2 - 2 * a * x + a * a + b * b))
    from jordan.polyring import squarefree_decomposition

    sqf = Poly([1])
    for f, _ in squarefree_decomposition(p):
        sqf = sqf * f
    c = classify_spectrum(factor_minimal_polynomial(sqf, "exact"))
    if c.elliptic_add and c.hyperbolic_add:
        assert sqf == x
    if c.elliptic_mult and c.hyperbolic_mult:
        assert sqf == x - 1


@given(st.integers(0, 10**6))
def test_reconstruction_and_conjugate_closure(seed):
    X = block_form_sample(seed, max_n=6).X
    p = minimal_polynomial(X)
    sd = factor_minimal_polynomial(p, "exact")
    assert sd.expand() == p and sd.degree == p.degree
    for r in sd.complex_pairs:
        assert p(conj(r.value)) == 0 and p(r.value) == 0
    num = factor_minimal_polynomial(p, "numeric")
    diff = num.expand() - p.map(to_mpc)
    assert all(abs(c) <= 1e-10 * max(1, max(abs(to_mpc(d)) for d in p.coeffs)) for c in diff.coeffs)


@given(st.integers(0, 10**6))
def test_classification_matches_sympy(seed):
    M = block_form_sample(seed, max_n=4).X
    c = classify_operator(M)
    S = to_sympy(M)
    eig = S.eigenvals()
    assert c.semisimple == S.is_diagonalizable()
    assert c.nilpotent == (set(eig) == {0})
    assert c.unipotent == (set(eig) == {1})
    if c.semisimple:
        assert c.hyperbolic_add == all(sympy.im(l) == 0 for l in eig)
        assert c.elliptic_add == all(sympy.re(l) == 0 for l in eig)
        assert c.elliptic_mult == all(sympy.simplify(sympy.Abs(l) - 1) == 0 for l in eig)


@given(st.integers(0, 10**6))
def test_numeric_classification_agrees_with_exact(seed):
    M = block_form_sample(seed, max_n=4).X
    assert classify_numeric(M.to_numeric()).to_json() == classify_operator(M).to_json()


def test_rational_quartic_splitting_over_a_quadratic_extension():
    # the elliptic part of a matrix with eigenvalues 1 +- 2/3 i and -3/2 +- i
    sd = factor_minimal_polynomial(x**4 - Fraction(10, 13) * x**2 + 1, "exact")
    r13 = sqrt_exact(13)
    got = {r.value for r in sd.complex_pairs}
    assert got == {(3 + 2 * I_) / r13, (-3 + 2 * I_) / r13}
    assert sd.expand() == x**4 - Fraction(10, 13) * x**2 + 1
