"""
Additive (X = E + H + N) and multiplicative (g = e h u) Jordan decompositions.

Every component is a real polynomial in the input, assembled from the
projector polynomials and reduced modulo the minimal polynomial.  Exact
inputs give exact witnesses: rational for E, H, N, u and over a real
radical field for e and h, since they involve moduli of eigenvalues.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from .errors import ExactModeUnavailable, InternalError, NotInvertible, ShapeError
from .exactmat import (
    SpectralLog,
    SquareMatrix,
    commutes,
    eval_poly_at_matrix,
    minimal_polynomial,
)
from .polyring import Poly, mod_reduce
from .projectors import ProjectorSet, build_projectors
from .scalars import (
    Scalar,
    im_part,
    is_exact,
    re_part,
    real_sign,
    sqrt_exact,
    term_count,
    to_mpc,
)
from .spectral import (
    DEFAULT_TOLERANCE,
    SpectralData,
    classify_operator,
    default_precision_bits,
    factor_minimal_polynomial,
)
from .verification import ReportBuilder, VerificationReport

__all__ = [
    "AdditiveDecomposition",
    "MultiplicativeDecomposition",
    "additive_jordan",
    "multiplicative_jordan",
    "verify_additive",
    "verify_multiplicative",
    "DEFAULT_TERM_BUDGET",
]

DEFAULT_TERM_BUDGET = 256
_I = Scalar.gaussian(0, 1)


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _real_witness(p: Poly, exact: bool) -> Poly:
    """Drop the imaginary parts of a witness after checking that they vanish."""
    if exact:
        if any(im_part(c) != 0 for c in p.coeffs):
            raise InternalError("witness polynomial has a non-real coefficient")
        return p.map(re_part)
    scale = max([abs(to_mpc(c)) for c in p.coeffs] + [mpmath.mpf(1)])
    worst = max([abs(to_mpc(c).imag) for c in p.coeffs] + [mpmath.mpf(0)])
    if worst > 1e-12 * scale * 1e3:
        raise InternalError(f"witness polynomial has imaginary residue {mpmath.nstr(worst, 3)}")
    return p.map(lambda c: to_mpc(c).real)


def _spectral_and_projectors(X: SquareMatrix, mode, tolerance, precision_bits):
    if not X.is_exact():
        raise ShapeError("decompositions take exact input matrices; numeric mode is selected with mode='numeric'")
    p = minimal_polynomial(X)
    sd = factor_minimal_polynomial(p, mode, tolerance, precision_bits)
    return sd, build_projectors(sd)


def _operand(X: SquareMatrix, sd: SpectralData) -> SquareMatrix:
    return X if sd.mode == "exact" else X.to_numeric()


def _eval(w: Poly, X: SquareMatrix, sd: SpectralData) -> SquareMatrix:
    A = _operand(X, sd)
    with mpmath.workprec(sd.precision_bits or 53):
        M = eval_poly_at_matrix(w, A)
    if sd.mode != "exact":
        M = M.map(lambda c: mpmath.mpc(mpmath.re(c)))
    return M


def _semisimple_witness(ps: ProjectorSet) -> Poly:
    sd = ps.spectral
    return ps.combine([r.value for r in sd.complex_pairs], [r.value for r in sd.real_roots])


def _nilpotent_witness(ps: ProjectorSet, w_S: Poly) -> Poly:
    return mod_reduce(Poly.x() - w_S, ps.modulus)


def _close(A: SquareMatrix, B: SquareMatrix, tol: float) -> tuple[bool, float]:
    if A.is_exact() and B.is_exact():
        same = A == B
        return same, 0.0 if same else A.distance(B)
    r = A.distance(B)
    return r <= tol, r


def _probe(dec, expected, names, tol) -> tuple[bool, float]:
    """Compare the named components of a re-decomposition with expectations."""
    good, worst = True, 0.0
    for name, want in zip(names, expected):
        ok, r = _close(getattr(dec, name), want, tol)
        good &= ok
        worst = max(worst, r)
    return good, worst


def _numeric_tol(X: SquareMatrix) -> float:
    return 1e-9 * X.n * max(1.0, X.frobenius_norm())


# ---------------------------------------------------------------------------
# additive
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AdditiveDecomposition:
    E: SquareMatrix
    H: SquareMatrix
    N: SquareMatrix
    witness_E: Poly
    witness_H: Poly
    witness_N: Poly
    spectral: SpectralData
    projectors: ProjectorSet | None = field(default=None, compare=False, repr=False)

    @property
    def mode(self) -> str:
        return self.spectral.mode

    @property
    def S(self) -> SquareMatrix:
        return self.E + self.H

    def components(self) -> dict:
        return {"E": self.E, "H": self.H, "N": self.N}

    def witnesses(self) -> dict:
        return {"E": self.witness_E, "H": self.witness_H, "N": self.witness_N}

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "minimal_polynomial": self.spectral.minpoly.to_json(),
            "spectral": self.spectral.to_json(),
            "components": {k: v.to_json() for k, v in self.components().items()},
            "witnesses": {k: _witness_json(v) for k, v in self.witnesses().items()},
        }


def _witness_json(w: Poly) -> dict:
    return {"ring": w.ring, "coefficients": w.to_json()}


def additive_jordan(
    X: SquareMatrix,
    mode: str = "auto",
    tolerance: float = DEFAULT_TOLERANCE,
    precision_bits: int | None = None,
) -> AdditiveDecomposition:
    """Split ``X`` into commuting elliptic, hyperbolic and nilpotent parts.

    >>> d = additive_jordan(SquareMatrix([[0, 1], [0, 0]]))
    >>> d.E.is_zero(), d.H.is_zero(), d.N == SquareMatrix([[0, 1], [0, 0]])
    (True, True, True)
    """
    sd, ps = _spectral_and_projectors(X, mode, tolerance, precision_bits)
    exact = sd.mode == "exact"
    with mpmath.workprec(sd.precision_bits or 53):
        i = _I if exact else mpmath.mpc(0, 1)
        w_E = ps.combine([i * r.imag for r in sd.complex_pairs], [0] * len(sd.real_roots))
        w_H = ps.combine([r.real for r in sd.complex_pairs], [r.value for r in sd.real_roots])
        w_S = _semisimple_witness(ps)
        w_N = _nilpotent_witness(ps, w_S)
        w_E, w_H, w_N = (_real_witness(w, exact) for w in (w_E, w_H, w_N))
    return AdditiveDecomposition(
        _eval(w_E, X, sd), _eval(w_H, X, sd), _eval(w_N, X, sd), w_E, w_H, w_N, sd, ps
    )


def verify_additive(
    X: SquareMatrix, d: AdditiveDecomposition, probes: bool = True, tolerance: float | None = None
) -> VerificationReport:
    """Reconstruction, commutation, classification and uniqueness probes."""
    if any(M.n != X.n for M in (d.E, d.H, d.N)):
        raise ShapeError("component sizes do not match the input")
    tol = _numeric_tol(X) if tolerance is None else tolerance
    rb = ReportBuilder("additive decomposition")
    ok, r = _close(d.E + d.H + d.N, X if d.E.is_exact() else X.to_numeric(), tol)
    rb.add("sum_reconstruction", ok, r)
    for a, b in (("E", "H"), ("E", "N"), ("H", "N")):
        c = commutes(getattr(d, a), getattr(d, b), None if d.E.is_exact() else tol)
        rb.add(f"commute_{a}{b}", c.passed, c.residual)
    rb.add("E_elliptic", classify_operator(d.E).elliptic_add)
    rb.add("H_hyperbolic", classify_operator(d.H).hyperbolic_add)
    rb.add("N_nilpotent", classify_operator(d.N).nilpotent)
    if probes and d.E.is_exact():
        zero = SquareMatrix.zero(X.n)
        pE = additive_jordan(d.E)
        rb.add("probe_E", *_probe(pE, (d.E, zero, zero), ("E", "H", "N"), tol))
        pH = additive_jordan(d.H)
        rb.add("probe_H", *_probe(pH, (zero, d.H, zero), ("E", "H", "N"), tol))
        pS = additive_jordan(d.E + d.H)
        rb.add("probe_S_has_no_nilpotent_part", *_probe(pS, (zero,), ("N",), tol))
        pN = additive_jordan(d.N)
        rb.add("probe_N", *_probe(pN, (zero, zero, d.N), ("E", "H", "N"), tol))
    return rb.build()


# ---------------------------------------------------------------------------
# multiplicative
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MultiplicativeDecomposition:
    e: SquareMatrix
    h: SquareMatrix
    u: SquareMatrix
    witness_e: Poly
    witness_h: Poly
    witness_u: Poly
    log_h: SpectralLog
    spectral: SpectralData
    numeric_fallback: bool = False
    # S and N of the input, kept for the u = I + N S^-1 cross-check
    witness_S: Poly | None = field(default=None, compare=False, repr=False)
    witness_N: Poly | None = field(default=None, compare=False, repr=False)

    @property
    def mode(self) -> str:
        return self.spectral.mode

    def components(self) -> dict:
        return {"e": self.e, "h": self.h, "u": self.u}

    def witnesses(self) -> dict:
        return {"e": self.witness_e, "h": self.witness_h, "u": self.witness_u}

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "numeric_fallback": self.numeric_fallback,
            "minimal_polynomial": self.spectral.minpoly.to_json(),
            "spectral": self.spectral.to_json(),
            "components": {k: v.to_json() for k, v in self.components().items()},
            "witnesses": {k: _witness_json(v) for k, v in self.witnesses().items()},
            "log_h": self.log_h.to_json(),
        }


class _BudgetExceeded(Exception):
    pass


def _moduli(sd: SpectralData):
    """|lambda| for every pair and real root, exact where representable."""
    if sd.mode != "exact":
        return [mpmath.sqrt(r.modulus_sq) for r in sd.complex_pairs], [abs(r.value) for r in sd.real_roots]
    pair_mod = []
    for r in sd.complex_pairs:
        if not isinstance(r.modulus_sq, (int, Fraction)):
            raise ExactModeUnavailable("modulus of a complex eigenvalue is not a square root of a rational")
        pair_mod.append(sqrt_exact(r.modulus_sq))
    real_mod = [r.value * real_sign(r.value) for r in sd.real_roots]
    return pair_mod, real_mod


def _multiplicative_witnesses(ps: ProjectorSet, budget: int):
    sd = ps.spectral
    exact = sd.mode == "exact"
    pair_mod, real_mod = _moduli(sd)
    pairs = [r.value for r in sd.complex_pairs]
    reals = [r.value for r in sd.real_roots]
    w_e = ps.combine([lam / m for lam, m in zip(pairs, pair_mod)], [lam / m for lam, m in zip(reals, real_mod)])
    w_h = ps.combine(pair_mod, real_mod)
    w_S = _semisimple_witness(ps)
    w_N = _nilpotent_witness(ps, w_S)
    w_inv = ps.combine([1 / lam for lam in pairs], [1 / lam for lam in reals])
    w_u = mod_reduce(Poly.constant(Fraction(1)) + w_N * w_inv, ps.modulus)
    out = tuple(_real_witness(w, exact) for w in (w_e, w_h, w_u, w_S, w_N))
    if exact and any(term_count(c) > budget for w in out for c in w.coeffs):
        raise _BudgetExceeded
    return out


def multiplicative_jordan(
    g: SquareMatrix,
    mode: str = "auto",
    tolerance: float = DEFAULT_TOLERANCE,
    precision_bits: int | None = None,
    term_budget: int = DEFAULT_TERM_BUDGET,
) -> MultiplicativeDecomposition:
    """Split an invertible ``g`` into commuting elliptic, hyperbolic and unipotent factors.

    In ``auto`` mode an exact computation whose radical coefficients would
    exceed ``term_budget`` terms is redone numerically, and the result is
    flagged with ``numeric_fallback``.
    """
    if not g.is_exact():
        raise ShapeError("decompositions take exact input matrices")
    p = minimal_polynomial(g)
    if p.coeffs[0] == 0:
        raise NotInvertible("0 is an eigenvalue; no multiplicative decomposition")
    sd = factor_minimal_polynomial(p, mode, tolerance, precision_bits)
    fallback = False
    try:
        ps = build_projectors(sd)
        with mpmath.workprec(sd.precision_bits or 53):
            w_e, w_h, w_u, w_S, w_N = _multiplicative_witnesses(ps, term_budget)
    except (_BudgetExceeded, ExactModeUnavailable):
        if mode == "exact":
            raise ExactModeUnavailable("exact multiplicative witnesses exceed the term budget") from None
        sd = factor_minimal_polynomial(p, "numeric", tolerance, precision_bits or default_precision_bits())
        ps = build_projectors(sd)
        fallback = True
        with mpmath.workprec(sd.precision_bits):
            w_e, w_h, w_u, w_S, w_N = _multiplicative_witnesses(ps, term_budget)

    mats = ps.matrices(g)
    terms = []
    idx = 0
    for r in sd.complex_pairs:
        P = mats[idx] + mats[idx + 1]
        idx += 2
        terms.append((r.modulus_sq, P.map(re_part) if sd.mode == "exact" else P.map(lambda c: mpmath.mpc(mpmath.re(c)))))
    for r in sd.real_roots:
        P = mats[idx]
        idx += 1
        terms.append((r.value * r.value, P if sd.mode == "exact" else P.map(lambda c: mpmath.mpc(mpmath.re(c)))))
    log_h = SpectralLog(tuple(terms), g.n)
    return MultiplicativeDecomposition(
        _eval(w_e, g, sd), _eval(w_h, g, sd), _eval(w_u, g, sd),
        w_e, w_h, w_u, log_h, sd, fallback, w_S, w_N,
    )


def verify_multiplicative(
    g: SquareMatrix, d: MultiplicativeDecomposition, probes: bool = True, tolerance: float | None = None
) -> VerificationReport:
    """Product reconstruction, commutation, classification, ``h = exp(log_h)``,
    the ``u = I + N S^-1`` cross-check and uniqueness probes."""
    if any(M.n != g.n for M in (d.e, d.h, d.u)):
        raise ShapeError("component sizes do not match the input")
    if minimal_polynomial(g).coeffs[0] == 0:
        raise NotInvertible("0 is an eigenvalue")
    n = g.n
    tol = _numeric_tol(g) if tolerance is None else tolerance
    exact = d.e.is_exact()
    G = g if exact else g.to_numeric()
    rb = ReportBuilder("multiplicative decomposition")
    ok, r = _close(d.e * d.h * d.u, G, tol)
    rb.add("product_reconstruction", ok, r)
    for a, b in (("e", "h"), ("e", "u"), ("h", "u")):
        c = commutes(getattr(d, a), getattr(d, b), None if exact else tol)
        rb.add(f"commute_{a}{b}", c.passed, c.residual)
    rb.add("e_elliptic", classify_operator(d.e).elliptic_mult)
    rb.add("h_hyperbolic", classify_operator(d.h).hyperbolic_mult)
    rb.add("u_unipotent", classify_operator(d.u).unipotent)

    bits = d.spectral.precision_bits or 53
    h_num = np.array([[complex(mpmath.mpc(x)) for x in row] for row in d.h.to_numeric().rows]).real
    expH = np.array(d.log_h.exp_numeric(bits).tolist(), dtype=float)
    res = float(np.linalg.norm(h_num - expH))
    rb.add("h_equals_exp_log_h", res <= 1e-9 * n * max(1.0, float(np.linalg.norm(h_num))), res)

    if d.witness_S is not None:
        S = _eval(d.witness_S, g, d.spectral)
        N = _eval(d.witness_N, g, d.spectral)
        alt = SquareMatrix.identity(n) + N * S.inverse()
        ok, r = _close(d.u, alt, tol)
        rb.add("u_matches_I_plus_N_Sinv", ok, r)

    if probes and exact:
        I = SquareMatrix.identity(n)
        names = ("e", "h", "u")
        rb.add("probe_e", *_probe(multiplicative_jordan(d.e), (d.e, I, I), names, tol))
        rb.add("probe_h", *_probe(multiplicative_jordan(d.h), (I, d.h, I), names, tol))
        rb.add("probe_u", *_probe(multiplicative_jordan(d.u), (I, I, d.u), names, tol))
    return rb.build()
