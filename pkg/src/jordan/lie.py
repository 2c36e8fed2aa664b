"""
Adjoint representations and closure checks for classical Lie algebras and groups.

``ad(X)`` and ``Ad(g)`` act on n x n matrices flattened row-major in the basis
``E_rs``; with that convention ``vec(A Y B) = (A kron B^T) vec(Y)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np
from scipy.optimize import linear_sum_assignment

from .corpus import symplectic_form
from .decompose import additive_jordan, multiplicative_jordan
from .errors import ExactModeUnavailable, NotInvertible, NotMember, NotSemisimple, ShapeError, SizeLimit
from .exactmat import SquareMatrix, characteristic_polynomial, kron
from .polyring import Poly
from .scalars import conj, to_mpc
from .spectral import ClassificationReport, classify_operator, factor_minimal_polynomial
from .verification import Check, ReportBuilder, VerificationReport

__all__ = [
    "LieStructure",
    "ad_operator",
    "Ad_operator",
    "ad_spectrum_check",
    "Ad_spectrum_check",
    "algebra_membership",
    "group_membership",
    "closure_check_algebra",
    "closure_check_group",
    "MAX_ADJOINT_DIM",
]

MAX_ADJOINT_DIM = 8
SPECTRUM_TOLERANCE = 1e-8


@dataclass(frozen=True)
class LieStructure:
    family: str
    n: int
    p: int | None = None
    q: int | None = None

    def __post_init__(self):
        if self.family not in ("sl", "so", "sp"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.n < 1:
            raise ValueError("dimension must be positive")
        if self.family == "sp" and self.n % 2:
            raise ValueError("sp needs an even matrix size")
        if self.family == "so" and (self.p is None or self.q is None or self.p + self.q != self.n):
            raise ValueError("so needs a signature (p, q) with p + q = n")

    @classmethod
    def sl(cls, n: int) -> "LieStructure":
        return cls("sl", n)

    @classmethod
    def so(cls, p: int, q: int) -> "LieStructure":
        return cls("so", p + q, p, q)

    @classmethod
    def sp(cls, n: int) -> "LieStructure":
        return cls("sp", n)

    @classmethod
    def from_json(cls, data: dict) -> "LieStructure":
        fam = data.get("family")
        if fam == "so":
            if "p" in data:
                return cls.so(int(data["p"]), int(data["q"]))
            raise ValueError("so structures take a signature {'p': int, 'q': int}")
        return cls(fam, int(data["n"]))

    def to_json(self) -> dict:
        if self.family == "so":
            return {"family": "so", "p": self.p, "q": self.q}
        return {"family": self.family, "n": self.n}

    @property
    def form(self) -> SquareMatrix | None:
        if self.family == "so":
            return SquareMatrix.diag([1] * self.p + [-1] * self.q)
        if self.family == "sp":
            return symplectic_form(self.n)
        return None

    @property
    def name(self) -> str:
        if self.family == "so":
            return f"so({self.p},{self.q})"
        return f"{self.family}({self.n})"


# ---------------------------------------------------------------------------
# adjoint operators
# ---------------------------------------------------------------------------

def _size_guard(X: SquareMatrix):
    if X.n > MAX_ADJOINT_DIM:
        raise SizeLimit(f"adjoint operators are limited to n <= {MAX_ADJOINT_DIM}")


def ad_operator(X: SquareMatrix) -> SquareMatrix:
    """Matrix of ``Y -> XY - YX``."""
    _size_guard(X)
    I = SquareMatrix.identity(X.n)
    return kron(X, I) - kron(I, X.transpose())


def Ad_operator(g: SquareMatrix) -> SquareMatrix:
    """Matrix of ``Y -> g Y g^-1``."""
    _size_guard(g)
    return kron(g, g.inverse().transpose())


def _eigen_multiset(S: SquareMatrix, mode: str):
    """Eigenvalues of ``S`` with algebraic multiplicity, and the mode used."""
    sd = factor_minimal_polynomial(characteristic_polynomial(S), mode)
    vals = []
    for r in sd.complex_pairs:
        vals += [r.value] * r.multiplicity + [conj(r.value)] * r.multiplicity
    for r in sd.real_roots:
        vals += [r.value] * r.multiplicity
    return vals, sd.mode


def _match(A: SquareMatrix, expected: list, exact: bool) -> Check:
    if exact:
        want = Poly.from_roots(expected)
        got = characteristic_polynomial(A)
        return Check("spectrum_matches", got == want, 0.0 if got == want else None)
    got = np.linalg.eigvals(A.to_numpy())
    want = np.array([complex(to_mpc(v)) for v in expected])
    cost = np.abs(got[:, None] - want[None, :])
    rows, cols = linear_sum_assignment(cost)
    res = float(cost[rows, cols].max()) if len(rows) else 0.0
    scale = max(1.0, float(np.abs(want).max()) if len(want) else 1.0)
    return Check("spectrum_matches", res <= SPECTRUM_TOLERANCE * scale, res)


def _implication(rb: ReportBuilder, name: str, premise: bool, conclusion: bool):
    rb.add(name, (not premise) or conclusion, detail=None if premise else "premise false")


def ad_spectrum_check(S: SquareMatrix, mode: str = "auto") -> VerificationReport:
    """Eigenvalues of ``ad(S)`` are the differences of eigenvalues of ``S``."""
    cls = classify_operator(S)
    if not cls.semisimple:
        raise NotSemisimple("ad spectrum relation is checked for semisimple input")
    vals, used = _eigen_multiset(S, mode)
    A = ad_operator(S)
    expected = [a - b for a in vals for b in vals]
    rb = ReportBuilder(f"ad spectrum ({used})")
    c = _match(A, expected, used == "exact")
    rb.add(c.name, c.passed, c.residual)
    acls = classify_operator(A)
    _implication(rb, "elliptic_implies_ad_elliptic", cls.elliptic_add, acls.elliptic_add)
    _implication(rb, "hyperbolic_implies_ad_hyperbolic", cls.hyperbolic_add, acls.hyperbolic_add)
    return rb.build()


def Ad_spectrum_check(s: SquareMatrix, mode: str = "auto") -> VerificationReport:
    """Eigenvalues of ``Ad(s)`` are the ratios of eigenvalues of ``s``.

    A unipotent argument takes a separate path that only asserts ``Ad(u)``
    is unipotent.
    """
    if s.det() == 0:
        raise NotInvertible("Ad needs an invertible matrix")
    cls = classify_operator(s)
    A = Ad_operator(s)
    if cls.unipotent and not s.is_identity():
        rb = ReportBuilder("Ad of a unipotent element")
        rb.add("Ad_unipotent", classify_operator(A).unipotent)
        return rb.build()
    if not cls.semisimple:
        raise NotSemisimple("Ad spectrum relation is checked for semisimple or unipotent input")
    vals, used = _eigen_multiset(s, mode)
    expected = [a / b for a in vals for b in vals]
    rb = ReportBuilder(f"Ad spectrum ({used})")
    c = _match(A, expected, used == "exact")
    rb.add(c.name, c.passed, c.residual)
    acls = classify_operator(A)
    _implication(rb, "elliptic_implies_Ad_elliptic", cls.elliptic_mult, acls.elliptic_mult)
    _implication(rb, "hyperbolic_implies_Ad_hyperbolic", cls.hyperbolic_mult, acls.hyperbolic_mult)
    return rb.build()


# ---------------------------------------------------------------------------
# membership
# ---------------------------------------------------------------------------

def _shape(X: SquareMatrix, L: LieStructure):
    if X.n != L.n:
        raise ShapeError(f"{L.name} acts on {L.n}-dimensional space, got a {X.n}x{X.n} matrix")


def _residual_check(name: str, M: SquareMatrix, tol: float) -> Check:
    """Zero test: exact for exact ``M``, Frobenius norm against ``tol`` otherwise."""
    if M.is_exact():
        ok = M.is_zero()
        return Check(name, ok, 0.0 if ok else M.frobenius_norm())
    r = M.frobenius_norm()
    return Check(name, r <= tol, r)


def _scalar_check(name: str, value, target, tol: float) -> Check:
    diff = value - target
    if not isinstance(diff, (mpmath.mpf, mpmath.mpc)):
        ok = diff == 0
        return Check(name, ok, 0.0 if ok else abs(complex(to_mpc(diff))))
    r = float(abs(diff))
    return Check(name, r <= tol, r)


def algebra_membership(X: SquareMatrix, L: LieStructure, tolerance: float = 1e-9) -> Check:
    """``tr X = 0`` for sl, ``X^T J + J X = 0`` for so and sp."""
    _shape(X, L)
    if L.family == "sl":
        return _scalar_check("trace_zero", X.trace(), 0, tolerance)
    J = L.form
    return _residual_check("preserves_form", X.transpose() * J + J * X, tolerance)


def group_membership(g: SquareMatrix, L: LieStructure, tolerance: float = 1e-9) -> Check:
    """``det g = 1``, plus ``g^T J g = J`` for so and sp."""
    _shape(g, L)
    det = _scalar_check("det_one", g.det(), 1, tolerance)
    if L.family == "sl":
        return det
    J = L.form
    form = _residual_check("preserves_form", g.transpose() * J * g - J, tolerance)
    ok = det.passed and form.passed
    res = max(det.residual or 0.0, form.residual or 0.0)
    return Check("group_member", ok, res)


def closure_check_algebra(X: SquareMatrix, L: LieStructure, mode: str = "auto", tolerance: float = 1e-9) -> VerificationReport:
    """The additive components of an algebra element lie in the algebra."""
    if not algebra_membership(X, L, tolerance):
        raise NotMember(f"input is not in {L.name}")
    d = additive_jordan(X, mode)
    rb = ReportBuilder(f"additive closure in {L.name} ({d.mode})")
    for name, M in d.components().items():
        c = algebra_membership(M, L, tolerance)
        rb.add(f"{name}_member", c.passed, c.residual)
    for name, M in d.components().items():
        c = _scalar_check("trace", M.trace(), 0, tolerance)
        rb.add(f"trace_{name}_zero", c.passed, c.residual)
    return rb.build()


def closure_check_group(g: SquareMatrix, L: LieStructure, mode: str = "auto", tolerance: float = 1e-9) -> VerificationReport:
    """The multiplicative components of a group element lie in the group."""
    if not group_membership(g, L, tolerance):
        raise NotMember(f"input is not in the group of {L.name}")
    d = multiplicative_jordan(g, mode)
    rb = ReportBuilder(f"multiplicative closure in {L.name} ({d.mode})")
    for name, M in d.components().items():
        c = group_membership(M, L, tolerance)
        rb.add(f"{name}_member", c.passed, c.residual)
    for name in ("e", "h"):
        c = _scalar_check("det", d.components()[name].det(), 1, tolerance)
        rb.add(f"det_{name}_one", c.passed, c.residual)
    return rb.build()
