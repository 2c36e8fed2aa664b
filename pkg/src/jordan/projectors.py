"""
Spectral projector polynomials.

For every root ``lam_k`` of the minimal polynomial ``p`` (multiplicity
``m_k``), the cofactor ``q_k = p / (x - lam_k)**m_k`` is inverted locally to
order ``m_k``; ``pi_k = a_k * q_k mod p`` then evaluates to the projector onto
the generalised eigenspace of ``lam_k``.  Complex pairs store only the
representative with positive imaginary part; the conjugate projector is the
coefficientwise conjugate polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .errors import InconsistentInput, InternalError
from .exactmat import SquareMatrix, eval_poly_at_matrix, minimal_polynomial
from .polyring import Poly, mod_reduce, series_inverse_at
from .scalars import conj, format_scalar, im_part, is_exact, re_part, to_mpc
from .spectral import SpectralData
from .verification import ReportBuilder, VerificationReport

__all__ = ["ProjectorSet", "build_projectors", "verify_projector_identities", "local_factor", "working_modulus"]


def local_factor(lam, m: int) -> Poly:
    return Poly.linear_root(lam) ** m


def working_modulus(sd: SpectralData) -> Poly:
    """The minimal polynomial in the arithmetic the projectors live in.

    Exact spectra use the exact polynomial.  Numeric spectra use the product
    of the numeric local factors, so that every ``q_k`` divides it exactly
    in floating point.
    """
    if sd.mode == "exact":
        return sd.minpoly
    p = Poly.constant(mpmath.mpc(1))
    for r in sd.complex_pairs:
        p = p * local_factor(r.value, r.multiplicity) * local_factor(mpmath.conj(r.value), r.multiplicity)
    for r in sd.real_roots:
        p = p * local_factor(r.value, r.multiplicity)
    return p


def _all_locals(sd: SpectralData) -> list:
    """(root value, multiplicity) for every distinct root, conjugates included."""
    out = []
    for r in sd.complex_pairs:
        out.append((r.value, r.multiplicity))
        out.append((conj(r.value), r.multiplicity))
    out.extend((r.value, r.multiplicity) for r in sd.real_roots)
    return out


@dataclass(frozen=True)
class ProjectorSet:
    spectral: SpectralData
    pair_projectors: tuple  # one Poly per complex pair representative
    real_projectors: tuple  # one Poly per real root
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def modulus(self) -> Poly:
        return working_modulus(self.spectral)

    def labelled(self) -> list:
        """(label, root value, multiplicity, Poly) for every projector, conjugates included."""
        out = []
        for k, (r, pi) in enumerate(zip(self.spectral.complex_pairs, self.pair_projectors)):
            out.append((f"pair{k}", r.value, r.multiplicity, pi))
            out.append((f"pair{k}*", conj(r.value), r.multiplicity, pi.conjugate()))
        for k, (r, pi) in enumerate(zip(self.spectral.real_roots, self.real_projectors)):
            out.append((f"real{k}", r.value, r.multiplicity, pi))
        return out

    def all_projectors(self) -> list:
        return [pi for *_, pi in self.labelled()]

    def combine(self, pair_coeffs, real_coeffs, conjugate_pairs: bool = True) -> Poly:
        """``sum(c_k pi_k + conj) + sum(d_k pi_k)`` reduced mod the minimal polynomial.

        With ``conjugate_pairs`` the conjugate coefficient is applied to the
        conjugate projector, which is what makes real combinations real.
        """
        acc = Poly()
        for c, pi in zip(pair_coeffs, self.pair_projectors):
            term = pi * c
            acc = acc + term + (term.conjugate() if conjugate_pairs else pi.conjugate() * c)
        for d, pi in zip(real_coeffs, self.real_projectors):
            acc = acc + pi * d
        return mod_reduce(acc, self.modulus)

    def matrices(self, T: SquareMatrix) -> list:
        """``pi(T)`` for every projector in :meth:`labelled` order (memoised per ``T``)."""
        key = T
        if key not in self._cache:
            A = T if self.spectral.mode == "exact" else T.to_numeric()
            self._cache[key] = [eval_poly_at_matrix(pi, A) for pi in self.all_projectors()]
        return self._cache[key]

    def to_json(self) -> dict:
        items = []
        for label, lam, m, pi in self.labelled():
            items.append(
                {"label": label, "root": format_scalar(lam), "multiplicity": m, "coefficients": pi.to_json()}
            )
        return {"mode": self.spectral.mode, "minimal_polynomial": self.spectral.minpoly.to_json(), "projectors": items}


def _realify(p: Poly, exact: bool) -> Poly:
    if exact:
        if any(im_part(c) != 0 for c in p.coeffs):
            raise InternalError("real-root projector has non-real coefficients")
        return p.map(re_part)
    scale = max([abs(to_mpc(c)) for c in p.coeffs] + [mpmath.mpf(1)])
    if any(abs(to_mpc(c).imag) > 1e-12 * scale * 1e3 for c in p.coeffs):
        raise InternalError("real-root projector has non-real coefficients")
    return p.map(lambda c: to_mpc(c).real)


def build_projectors(sd: SpectralData) -> ProjectorSet:
    """Projector polynomials for every root of ``sd``.

    >>> from jordan.spectral import factor_minimal_polynomial
    >>> x = Poly.x()
    >>> ps = build_projectors(factor_minimal_polynomial((x - 1) * (x - 2), "exact"))
    >>> [p.pretty() for p in ps.real_projectors]
    ['-x + 2', 'x - 1']
    """
    exact = sd.mode == "exact"
    p = working_modulus(sd)
    locals_ = _all_locals(sd)

    def project(idx: int) -> Poly:
        lam, m = locals_[idx]
        q = Poly.constant(Fraction(1) if exact else mpmath.mpc(1))
        for j, (mu, mj) in enumerate(locals_):
            if j != idx:
                q = q * local_factor(mu, mj)
        a = series_inverse_at(q, lam, m)
        return mod_reduce(a * q, p)

    with mpmath.workprec(sd.precision_bits or 53):
        pairs = tuple(project(2 * k) for k in range(len(sd.complex_pairs)))
        base = 2 * len(sd.complex_pairs)
        reals = tuple(_realify(project(base + k), exact) for k in range(len(sd.real_roots)))
    return ProjectorSet(sd, pairs, reals)


def _residual(M: SquareMatrix) -> float:
    return 0.0 if M.is_zero() else M.frobenius_norm()


def verify_projector_identities(
    ps: ProjectorSet, T: SquareMatrix, tolerance: float | None = None
) -> VerificationReport:
    """Partition of identity, mutual annihilation, idempotence and local nilpotency.

    Exact projector sets are checked exactly; numeric ones against a Frobenius
    residual bound (default ``1e-9 * n``).
    """
    if minimal_polynomial(T) != ps.spectral.minpoly:
        raise InconsistentInput("projector set was built for a different minimal polynomial")
    n = T.n
    exact = ps.spectral.mode == "exact"
    tol = 1e-9 * n if tolerance is None else tolerance
    A = T if exact else T.to_numeric()

    def ok(M: SquareMatrix) -> tuple[bool, float]:
        r = _residual(M)
        return (M.is_zero() if exact else r <= tol), r

    rb = ReportBuilder("projector identities")
    items = ps.labelled()
    mats = ps.matrices(T)
    I = SquareMatrix.identity(n)

    total = SquareMatrix.zero(n)
    for P in mats:
        total = total + P
    passed, r = ok(total - I)
    rb.add("partition_of_identity", passed, r)

    worst, good = 0.0, True
    for a in range(len(mats)):
        for b in range(len(mats)):
            if a != b:
                passed, r = ok(mats[a] * mats[b])
                good &= passed
                worst = max(worst, r)
    rb.add("mutual_annihilation", good, worst)

    worst, good = 0.0, True
    for P in mats:
        passed, r = ok(P * P - P)
        good &= passed
        worst = max(worst, r)
    rb.add("idempotence", good, worst)

    worst, good = 0.0, True
    for (_, lam, m, _), P in zip(items, mats):
        shift = A - I.scale(lam if exact else to_mpc(lam))
        passed, r = ok(shift**m * P)
        good &= passed
        worst = max(worst, r)
    rb.add("local_nilpotency", good, worst)
    return rb.build()
