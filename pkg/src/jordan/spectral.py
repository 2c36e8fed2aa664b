"""
Root data of a minimal polynomial, and operator classification.

Multiplicities always come from the exact square-free decomposition.  Each
square-free factor is then split either exactly (linear and quadratic
factors, roots in Q(i, sqrt(d), ...)) or numerically with an Aberth
iteration.  Exact splitting uses numeric roots only as *hints*: candidate
factors are recognised from high-precision approximations and accepted only
after exact polynomial division.
"""

from __future__ import annotations

import functools
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from .errors import ClusterAmbiguity, ExactModeUnavailable
from .exactmat import SquareMatrix, minimal_polynomial
from .polyring import Poly, squarefree_decomposition
from .scalars import (
    Scalar,
    _coprime_base,
    compare_real,
    conj,
    format_scalar,
    im_part,
    is_exact,
    re_part,
    real_sign,
    sqrt_exact,
    to_mpc,
)

__all__ = [
    "Root",
    "SpectralData",
    "ClassificationReport",
    "factor_minimal_polynomial",
    "exact_roots",
    "numeric_roots",
    "aberth",
    "classify_operator",
    "classify_numeric",
    "default_precision_bits",
    "DEFAULT_TOLERANCE",
]

DEFAULT_TOLERANCE = 1e-10


def default_precision_bits() -> int:
    return int(os.environ.get("JORDAN_PRECISION_BITS", "53"))


# ---------------------------------------------------------------------------
# data types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Root:
    """One eigenvalue with multiplicity in the minimal polynomial.

    For complex pairs ``value`` is the representative with positive
    imaginary part; its conjugate is implied.
    """

    value: object
    multiplicity: int
    real: object
    imag: object
    modulus_sq: object
    is_pair: bool

    @property
    def conjugate(self):
        return conj(self.value)

    def to_json(self) -> dict:
        return {
            "value": format_scalar(self.value),
            "multiplicity": self.multiplicity,
            "real": format_scalar(self.real),
            "imag": format_scalar(self.imag),
            "modulus_sq": format_scalar(self.modulus_sq),
        }


def _make_root(value, m: int, pair: bool) -> Root:
    if is_exact(value):
        u, v = re_part(value), im_part(value)
        return Root(value, m, u, v, u * u + v * v, pair)
    z = mpmath.mpc(value)
    if not pair:
        z = mpmath.mpf(z.real)
        return Root(z, m, z, mpmath.mpf(0), z * z, False)
    return Root(z, m, z.real, z.imag, z.real**2 + z.imag**2, True)


@dataclass(frozen=True)
class SpectralData:
    mode: str
    complex_pairs: tuple
    real_roots: tuple
    minpoly: Poly
    precision_bits: int | None = None
    tolerance: float = DEFAULT_TOLERANCE

    @property
    def roots(self) -> tuple:
        return self.complex_pairs + self.real_roots

    @property
    def degree(self) -> int:
        return sum(r.multiplicity * (2 if r.is_pair else 1) for r in self.roots)

    def eigenvalues(self) -> list:
        """Distinct eigenvalues, conjugates included."""
        out = []
        for r in self.complex_pairs:
            out.extend([r.value, r.conjugate])
        out.extend(r.value for r in self.real_roots)
        return out

    def expand(self) -> Poly:
        """Rebuild the minimal polynomial from the root data."""
        p = Poly.constant(Fraction(1))
        for r in self.complex_pairs:
            quad = Poly((r.modulus_sq, -2 * r.real, Fraction(1)))
            p = p * quad**r.multiplicity
        for r in self.real_roots:
            p = p * Poly.linear_root(r.value) ** r.multiplicity
        return p

    def to_json(self) -> dict:
        out = {
            "mode": self.mode,
            "minimal_polynomial": self.minpoly.to_json(),
            "complex_pairs": [r.to_json() for r in self.complex_pairs],
            "real_roots": [r.to_json() for r in self.real_roots],
        }
        if self.mode == "numeric":
            out["precision_bits"] = self.precision_bits
        return out


# ---------------------------------------------------------------------------
# numeric roots
# ---------------------------------------------------------------------------

def aberth(coeffs, prec: int, maxiter: int = 500) -> list:
    """All roots of a polynomial (coefficients lowest degree first).

    Simultaneous Aberth-Ehrlich iteration at ``prec`` bits, started from
    double-precision eigenvalue estimates when they are available.  Meant
    for square-free inputs, where it converges cubically.
    """
    with mpmath.workprec(prec + 20):
        cs = [to_mpc(c) for c in coeffs]
        lc = cs[-1]
        cs = [c / lc for c in cs]
        d = len(cs) - 1
        if d == 0:
            return []
        if d == 1:
            return [-cs[0]]
        try:
            start = np.roots([complex(c) for c in reversed(cs)])
            if not np.all(np.isfinite(start)) or len(start) != d:
                raise FloatingPointError
            z = [mpmath.mpc(complex(s)) for s in start]
            # jitter exact ties so the Aberth correction stays finite
            for k in range(d):
                for j in range(k):
                    if z[j] == z[k]:
                        z[k] += mpmath.mpc(1e-8 * (k + 1), 1e-8)
        except (FloatingPointError, ValueError, np.linalg.LinAlgError):
            radius = 1 + max(abs(c) for c in cs[:-1])
            z = [radius * mpmath.expj(2 * mpmath.pi * k / d + 0.4) for k in range(d)]
        dcs = [k * c for k, c in enumerate(cs)][1:]
        eps = mpmath.mpf(2) ** (-prec)
        for _ in range(maxiter):
            worst = mpmath.mpf(0)
            for k in range(d):
                zk = z[k]
                p = mpmath.polyval(cs[::-1], zk)
                dp = mpmath.polyval(dcs[::-1], zk)
                if p == 0:
                    continue
                ratio = p / dp if dp != 0 else mpmath.mpc(eps)
                s = mpmath.fsum(1 / (zk - z[j]) for j in range(d) if j != k and z[j] != zk)
                w = ratio / (1 - ratio * s)
                z[k] = zk - w
                worst = max(worst, abs(w) / max(1, abs(z[k])))
            if worst < eps:
                break
        return z


def _poly_scale(p: Poly, z) -> mpmath.mpf:
    az = abs(z)
    return mpmath.fsum(abs(to_mpc(c)) * az**k for k, c in enumerate(p.coeffs))


def numeric_roots(f: Poly, prec: int, tolerance: float) -> tuple[list, list]:
    """Split the roots of a real square-free ``f`` into (pair representatives, real roots)."""
    zs = aberth(f.coeffs, prec)
    with mpmath.workprec(prec):
        reals, uppers, lowers = [], [], []
        for z in zs:
            scale = max(1, abs(z))
            if abs(z.imag) <= tolerance * scale:
                reals.append(mpmath.mpf(z.real))
            elif z.imag > 0:
                uppers.append(z)
            else:
                lowers.append(z)
        if len(uppers) != len(lowers):
            raise ClusterAmbiguity(f"unpaired complex roots of {f!r}")
        pairs = []
        remaining = list(lowers)
        for z in uppers:
            j = min(range(len(remaining)), key=lambda j: abs(conj(remaining[j]) - z))
            w = remaining.pop(j)
            if abs(conj(w) - z) > 1e3 * tolerance * max(1, abs(z)):
                raise ClusterAmbiguity(f"roots of {f!r} are not conjugate-symmetric")
            pairs.append((z + conj(w)) / 2)
    return pairs, reals


def _check_numeric_roots(p: Poly, roots, tolerance: float):
    with mpmath.workprec(max(mpmath.mp.prec, 53)):
        for z in roots:
            res = abs(mpmath.polyval([to_mpc(c) for c in reversed(p.coeffs)], z))
            if res > 1e-12 * _poly_scale(p, z) * max(1, p.degree):
                raise ClusterAmbiguity(f"root {format_scalar(z)} has residual {float(res):.3g}")
        for a in range(len(roots)):
            for b in range(a):
                gap = abs(roots[a] - roots[b])
                if gap <= 10 * tolerance * max(1, abs(roots[a])):
                    raise ClusterAmbiguity(
                        f"roots {format_scalar(roots[a])} and {format_scalar(roots[b])} are not separated"
                    )


# ---------------------------------------------------------------------------
# exact splitting
# ---------------------------------------------------------------------------

def _field_basis(p: Poly):
    """Radicand basis of the real multiquadratic field holding ``p``'s coefficients."""
    rads = set()
    for c in p.coeffs:
        if isinstance(c, Scalar):
            if not c.is_real():
                raise ExactModeUnavailable("exact splitting needs real coefficients", factor=p)
            rads |= c.radicands
    gens = _coprime_base(rads)
    basis = [1]
    for g in gens:
        basis = basis + [b * g for b in basis]
    return basis


def _common_denominator(p: Poly) -> int:
    d = 1
    for c in p.coeffs:
        d = math.lcm(d, Fraction(c).denominator)
    return d


class _Recogniser:
    """Turns high-precision reals into exact elements of a fixed field."""

    def __init__(self, p: Poly):
        self.basis = _field_basis(p)
        self.den = _common_denominator(p) if len(self.basis) == 1 else None

    def __call__(self, value):
        found = self._in_field(value)
        return found if found is not None else self._root_of_rational(value)

    def _in_field(self, value):
        if self.den is not None:
            k = mpmath.nint(value * self.den)
            if abs(value * self.den - k) > mpmath.mpf("0.25"):
                return None
            return Fraction(int(k), self.den)
        vec = [value] + [mpmath.sqrt(b) for b in self.basis]
        rel = mpmath.pslq(vec, maxcoeff=10**15, maxsteps=20000)
        if rel is None or rel[0] == 0:
            return None
        acc = {}
        for b, c in zip(self.basis, rel[1:]):
            if c:
                acc[b] = Fraction(-c, rel[0])
        return Scalar.radical(acc) if acc else Fraction(0)

    @staticmethod
    def _root_of_rational(value):
        # factors of a rational polynomial may need a quadratic extension,
        # e.g. x^4 - 10/13 x^2 + 1 = (x^2 - 6/sqrt(13) x + 1)(x^2 + 6/sqrt(13) x + 1)
        sq = value * value
        q = Fraction(mpmath.nstr(sq, mpmath.mp.dps)).limit_denominator(10**12)
        if q == 0 or abs(sq - mpmath.mpf(q.numerator) / q.denominator) > mpmath.mpf(2) ** (-mpmath.mp.prec // 2):
            return None
        root = sqrt_exact(q)
        return root if value > 0 else -root


def _sqrt_in_field(d, recognise):
    """Exact square root of ``d`` if it lies in the scalar tower, else None."""
    if isinstance(d, Fraction):
        return sqrt_exact(d)
    s = real_sign(d)
    mag = d if s > 0 else -d
    with mpmath.workprec(256):
        cand = recognise(mpmath.sqrt(mpmath.re(to_mpc(mag))))
    if cand is None or cand * cand != mag:
        return None
    return cand if s > 0 else cand * Scalar.gaussian(0, 1)


def _quadratic_roots(b, c, recognise, factor):
    disc = b * b - 4 * c
    root = _sqrt_in_field(disc, recognise)
    if root is None:
        raise ExactModeUnavailable(
            f"square root of the discriminant of {factor.pretty()} is outside the exact scalar tower",
            factor=factor,
        )
    return [(-b + root) / 2, (-b - root) / 2]


def exact_roots(f: Poly, max_doublings: int = 3) -> list:
    """All roots of a square-free real polynomial whose factors have degree <= 2.

    Raises :class:`ExactModeUnavailable` naming the unsplit remainder when a
    factor of degree >= 3 is irreducible (or its roots leave the tower).
    """
    f = f.monic()
    recognise = _Recogniser(f)
    if f.degree == 1:
        return [-f.coeffs[0]]
    if f.degree == 2:
        return _quadratic_roots(f.coeffs[1], f.coeffs[0], recognise, f)
    height = max(abs(float(to_mpc(c).real)) for c in f.coeffs) + 1
    base_prec = 128 + 4 * int(math.log2(height)) + (4 * recognise.den.bit_length() if recognise.den else 0)
    roots: list = []
    rest = f
    prec = base_prec
    for _ in range(max_doublings + 1):
        if rest.degree <= 2:
            break
        with mpmath.workprec(prec):
            try:
                pairs, reals = numeric_roots(rest, prec, 2.0 ** (-prec / 2))
            except ClusterAmbiguity:
                prec *= 2
                continue
            leftovers = []
            for r in reals:
                cand = recognise(r)
                if cand is not None and rest(cand) == 0:
                    roots.append(cand)
                    rest = rest.exact_div(Poly.linear_root(cand))
                else:
                    leftovers.append(r)
            quads = [(-2 * z.real, z.real**2 + z.imag**2) for z in pairs]
            used = set()
            for i in range(len(leftovers)):
                for j in range(i + 1, len(leftovers)):
                    quads.append((-(leftovers[i] + leftovers[j]), leftovers[i] * leftovers[j], i, j))
            for q in quads:
                if rest.degree <= 2:
                    break
                if len(q) == 4 and (q[2] in used or q[3] in used):
                    continue
                b, c = recognise(q[0]), recognise(q[1])
                if b is None or c is None:
                    continue
                g = Poly((c, b, Fraction(1)))
                quo, rem = divmod(rest, g)
                if rem.is_zero():
                    roots.extend(_quadratic_roots(b, c, recognise, g))
                    rest = quo
                    if len(q) == 4:
                        used.update(q[2:])
        prec *= 2
    if rest.degree == 1:
        roots.append(-rest.coeffs[0])
    elif rest.degree == 2:
        roots.extend(_quadratic_roots(rest.coeffs[1], rest.coeffs[0], recognise, rest))
    elif rest.degree > 2:
        raise ExactModeUnavailable(
            f"irreducible factor of degree {rest.degree}: {rest.pretty()}", factor=rest
        )
    return roots


# ---------------------------------------------------------------------------
# factorization front end
# ---------------------------------------------------------------------------

def _exact_key(a, b) -> int:
    ua, ub = re_part(a.value), re_part(b.value)
    c = compare_real(ua, ub)
    if c:
        return c
    return compare_real(im_part(a.value), im_part(b.value))


def _canonical(roots: list, exact: bool) -> tuple[tuple, tuple]:
    pairs = [r for r in roots if r.is_pair]
    reals = [r for r in roots if not r.is_pair]
    if exact:
        key = functools.cmp_to_key(_exact_key)
        return tuple(sorted(pairs, key=key)), tuple(sorted(reals, key=key))
    return (
        tuple(sorted(pairs, key=lambda r: (r.real, r.imag))),
        tuple(sorted(reals, key=lambda r: r.real)),
    )


def _check_input(p: Poly):
    if p.is_zero() or p.degree < 1:
        raise ValueError("need a polynomial of degree >= 1")
    if p.lc != 1:
        raise ValueError("minimal polynomial must be monic")
    if not p.is_exact() or not p.is_real():
        raise ValueError("minimal polynomial must have exact real coefficients")


def _factor_exact(p: Poly) -> SpectralData:
    roots = []
    for f, m in squarefree_decomposition(p):
        for lam in exact_roots(f):
            v = im_part(lam)
            if v == 0:
                roots.append(_make_root(lam, m, False))
            elif real_sign(v) > 0:
                roots.append(_make_root(lam, m, True))
    pairs, reals = _canonical(roots, exact=True)
    return SpectralData("exact", pairs, reals, p)


def _factor_numeric(p: Poly, precision_bits: int, tolerance: float) -> SpectralData:
    roots = []
    with mpmath.workprec(precision_bits):
        for f, m in squarefree_decomposition(p):
            # iterate at extra precision, report at the configured one
            pairs, reals = numeric_roots(f, precision_bits + 32, tolerance)
            pairs = [+z for z in pairs]
            reals = [+r for r in reals]
            _check_numeric_roots(f, pairs + reals, tolerance)
            roots.extend(_make_root(z, m, True) for z in pairs)
            roots.extend(_make_root(r, m, False) for r in reals)
        everything = [r.value for r in roots] + [mpmath.conj(r.value) for r in roots if r.is_pair]
        for a in range(len(everything)):
            for b in range(a):
                if abs(everything[a] - everything[b]) <= 10 * tolerance * max(1, abs(everything[a])):
                    raise ClusterAmbiguity("roots of distinct square-free factors collide")
    pairs, reals = _canonical(roots, exact=False)
    return SpectralData("numeric", pairs, reals, p, precision_bits, tolerance)


def factor_minimal_polynomial(
    p: Poly,
    mode: str = "auto",
    tolerance: float = DEFAULT_TOLERANCE,
    precision_bits: int | None = None,
) -> SpectralData:
    """Root data of a monic real polynomial.

    ``mode`` is ``"exact"``, ``"numeric"`` or ``"auto"`` (exact when every
    irreducible real factor has degree <= 2, numeric otherwise).

    >>> x = Poly.x()
    >>> sd = factor_minimal_polynomial((x**2 - 2*x + 2) * (x - 2)**2, "exact")
    >>> [(r.value, r.multiplicity) for r in sd.roots]
    [(Scalar('1+i'), 1), (Fraction(2, 1), 2)]
    """
    _check_input(p)
    bits = precision_bits or default_precision_bits()
    if mode == "exact":
        return _factor_exact(p)
    if mode == "numeric":
        return _factor_numeric(p, bits, tolerance)
    if mode != "auto":
        raise ValueError(f"unknown mode {mode!r}")
    try:
        return _factor_exact(p)
    except ExactModeUnavailable:
        return _factor_numeric(p, bits, tolerance)


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClassificationReport:
    semisimple: bool
    nilpotent: bool
    elliptic_add: bool
    hyperbolic_add: bool
    elliptic_mult: bool
    hyperbolic_mult: bool
    unipotent: bool
    spectral: SpectralData | None = field(default=None, compare=False)

    FLAGS = (
        "semisimple",
        "nilpotent",
        "elliptic_add",
        "hyperbolic_add",
        "elliptic_mult",
        "hyperbolic_mult",
        "unipotent",
    )

    def to_json(self) -> dict:
        return {k: getattr(self, k) for k in self.FLAGS}


def _is_zero(x, tol) -> bool:
    if is_exact(x):
        return x == 0
    return abs(x) <= tol


def classify_spectrum(sd: SpectralData) -> ClassificationReport:
    tol = sd.tolerance * 100
    roots = sd.roots
    semisimple = all(r.multiplicity == 1 for r in roots)
    only = lambda target: len(roots) == 1 and not roots[0].is_pair and _is_zero(roots[0].value - target, tol)  # noqa: E731
    nilpotent = only(0)
    unipotent = only(1)
    elliptic_add = semisimple and all(_is_zero(r.real, tol) for r in roots)
    hyperbolic_add = semisimple and not sd.complex_pairs
    elliptic_mult = semisimple and all(_is_zero(r.modulus_sq - 1, tol) for r in roots)

    def positive(x):
        return real_sign(x) > 0 if is_exact(x) else x > tol

    hyperbolic_mult = hyperbolic_add and all(positive(r.value) for r in roots)
    return ClassificationReport(
        semisimple, nilpotent, elliptic_add, hyperbolic_add, elliptic_mult, hyperbolic_mult, unipotent, sd
    )


def classify_operator(T: SquareMatrix, mode: str = "auto", tolerance: float = DEFAULT_TOLERANCE) -> ClassificationReport:
    """Seven structural flags of an exact matrix, read off its spectral data.

    >>> classify_operator(SquareMatrix([[0, 1], [-1, 0]])).elliptic_add
    True
    """
    if not T.is_exact():
        return classify_numeric(T, tolerance=max(tolerance, 1e-9))
    sd = factor_minimal_polynomial(minimal_polynomial(T), mode, tolerance)
    return classify_spectrum(sd)


def classify_numeric(A: SquareMatrix, tolerance: float = 1e-9) -> ClassificationReport:
    """Residual-based classification of a numeric matrix.

    Eigenvalues come from LAPACK and are clustered; semisimplicity is judged
    by whether the product of ``(A - mu)`` over clusters is negligible.
    """
    arr = A.to_numpy()
    n = A.n
    scale = max(np.linalg.norm(arr), 1.0)
    eig = np.linalg.eigvals(arr)
    # a k-fold defective eigenvalue scatters by about eps**(1/k); n bounds k
    radius = scale * min(1e-3, max(1e3 * tolerance, 10 * 1e-15 ** (1 / n)))
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a in range(n):
        for b in range(a):
            if abs(eig[a] - eig[b]) <= radius:
                parent[find(a)] = find(b)
    groups: dict = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(eig[i])
    clusters = list(groups.values())
    centers = [complex(np.mean(c)) for c in clusters]
    prod = np.eye(n, dtype=complex)
    for mu in centers:
        prod = prod @ (arr - mu * np.eye(n))
    semisimple = bool(np.linalg.norm(prod) <= max(tolerance, 1e-9) * n * scale ** len(centers))
    nil_pow = np.linalg.matrix_power(arr, n)
    nilpotent = bool(np.linalg.norm(nil_pow) <= 1e-9 * n * scale**n)
    uni_pow = np.linalg.matrix_power(arr - np.eye(n), n)
    unipotent = bool(np.linalg.norm(uni_pow) <= 1e-9 * n * max(scale, 2.0) ** n)
    tol = 1e-7 * scale
    elliptic_add = semisimple and all(abs(mu.real) <= tol for mu in centers)
    hyperbolic_add = semisimple and all(abs(mu.imag) <= tol for mu in centers)
    elliptic_mult = semisimple and all(abs(abs(mu) - 1) <= tol for mu in centers)
    hyperbolic_mult = hyperbolic_add and all(mu.real > tol for mu in centers)
    return ClassificationReport(
        semisimple, nilpotent, elliptic_add, hyperbolic_add, elliptic_mult, hyperbolic_mult, unipotent, None
    )
