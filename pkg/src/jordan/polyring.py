"""
Dense univariate polynomials over the scalar tower.

Coefficients are stored lowest degree first.  Exact coefficients are
``Fraction`` or :class:`~jordan.scalars.Scalar`; numeric ones are mpmath
values.  Everything here is a pure function of immutable values.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import zip_longest

import mpmath

from .errors import DegenerateInput, SingularLocalInverse
from .scalars import (
    conj,
    exact,
    format_scalar,
    im_part,
    is_exact,
    is_real,
    parse_scalar,
    re_part,
    widest_ring,
)

__all__ = [
    "Poly",
    "poly_gcd",
    "poly_lcm",
    "poly_extended_gcd",
    "squarefree_decomposition",
    "conjugate_poly",
    "mod_reduce",
    "series_inverse_at",
    "taylor_coefficients",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _coerce(c):
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return exact(c)
    if isinstance(c, (float, mpmath.mpf)):
        # mpf lacks reflected arithmetic with Fraction; mpc has it
        return mpmath.mpc(c)
    return c


def _is_zero(c) -> bool:
    return c == 0


class Poly:
    """A polynomial with coefficients ``coeffs[0] + coeffs[1]*x + ...``.

    >>> p = Poly([2, -2, 1])
    >>> p
    Poly('x^2 - 2*x + 2')
    >>> p(1)
    Fraction(1, 1)
    >>> divmod(Poly([0, 0, 1]), Poly([0, 1]))
    (Poly('x'), Poly('0'))
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_coerce(c) for c in coeffs]
        end = len(cs)
        while end and _is_zero(cs[end - 1]):
            end -= 1
        self.coeffs = tuple(cs[:end])

    # constructors ---------------------------------------------------------
    @classmethod
    def x(cls) -> "Poly":
        return cls((_ZERO, _ONE))

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def linear_root(cls, root) -> "Poly":
        """Return ``x - root``."""
        return cls((-_coerce(root), _ONE))

    @classmethod
    def from_roots(cls, roots) -> "Poly":
        p = cls.constant(_ONE)
        for r in roots:
            p = p * cls.linear_root(r)
        return p

    # basic structure --------------------------------------------------------
    @property
    def degree(self):
        """Degree as an int; the zero polynomial has degree ``-inf``."""
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        if not self.coeffs:
            raise DegenerateInput("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def monic(self) -> "Poly":
        lc = self.lc
        if lc == 1:
            return self
        inv = 1 / lc
        return Poly(c * inv for c in self.coeffs)

    @property
    def ring(self) -> str:
        return widest_ring(self.coeffs) if self.coeffs else "rational"

    def is_exact(self) -> bool:
        return all(is_exact(c) for c in self.coeffs)

    def is_real(self) -> bool:
        return all(is_real(c) for c in self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else _ZERO

    # arithmetic -------------------------------------------------------------
    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return Poly(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=_ZERO))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return Poly(a - b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=_ZERO))

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            other = _coerce(other)
            if isinstance(other, Poly):  # pragma: no cover
                pass
            try:
                return Poly(c * other for c in self.coeffs)
            except TypeError:
                return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly((_ONE,)), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other: "Poly"):
        other = _as_poly(other)
        if other.is_zero():
            raise DegenerateInput("polynomial division by zero")
        rem = list(self.coeffs)
        dd = len(other.coeffs) - 1
        if len(rem) - 1 < dd:
            return Poly(), self
        inv = 1 / other.lc
        quot = [_ZERO] * (len(rem) - dd)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if _is_zero(c):
                continue
            c = c * inv
            quot[k - dd] = c
            for j, b in enumerate(other.coeffs[:-1]):
                rem[k - dd + j] = rem[k - dd + j] - c * b
            rem[k] = _ZERO
        return Poly(quot), Poly(rem[:dd])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError(f"{other!r} does not divide {self!r}")
        return q

    def __call__(self, x):
        """Horner evaluation at a scalar."""
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly(k * c for k, c in enumerate(self.coeffs) if k)

    def conjugate(self) -> "Poly":
        return Poly(conj(c) for c in self.coeffs)

    def real_part(self) -> "Poly":
        return Poly(re_part(c) for c in self.coeffs)

    def imag_part(self) -> "Poly":
        return Poly(im_part(c) for c in self.coeffs)

    def map(self, f) -> "Poly":
        return Poly(f(c) for c in self.coeffs)

    # comparison / display ---------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly((other,)).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({self.pretty()!r})"

    def pretty(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if _is_zero(c):
                continue
            mono = "" if k == 0 else var if k == 1 else f"{var}^{k}"
            if isinstance(c, Fraction):
                sign = "-" if c < 0 else "+"
                mag = abs(c)
                body = format_scalar(mag) if (mag != 1 or not mono) else ""
            else:
                sign, body = "+", f"({format_scalar(c)})"
            term = body + ("*" if body and mono else "") + mono
            parts.append((sign, term))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, term in parts[1:]:
            out += f" {sign} {term}"
        return out

    # serialization ----------------------------------------------------------
    def to_json(self) -> list:
        return [format_scalar(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data, numeric: bool = False) -> "Poly":
        return cls(parse_scalar(s, numeric=numeric) for s in data)


def _as_poly(other):
    if isinstance(other, Poly):
        return other
    try:
        return Poly((_coerce(other),))
    except TypeError:
        return NotImplemented


# ---------------------------------------------------------------------------
# gcd machinery
# ---------------------------------------------------------------------------

def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor over an exact field."""
    if a.is_zero() and b.is_zero():
        raise DegenerateInput("gcd of two zero polynomials")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        return Poly()
    return (a * b.exact_div(poly_gcd(a, b))).monic()


def poly_extended_gcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g`` and ``g`` monic.

    The cofactors come straight out of the Euclidean remainder sequence, so
    they are the minimal-degree ones.
    """
    if a.is_zero() and b.is_zero():
        raise DegenerateInput("extended gcd of two zero polynomials")
    one, zero = Poly.constant(_ONE), Poly()
    r0, r1 = a, b
    s0, s1 = one, zero
    t0, t1 = zero, one
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    inv = 1 / r0.lc
    return r0 * inv, s0 * inv, t0 * inv


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: ``p == lc(p) * prod(f**e)`` with square-free coprime ``f``."""
    if p.is_zero():
        raise DegenerateInput("square-free decomposition of zero")
    f = p.monic()
    if f.degree == 0:
        return []
    df = f.derivative()
    a = poly_gcd(f, df)
    b = f.exact_div(a)
    c = df.exact_div(a)
    d = c - b.derivative()
    out = []
    k = 1
    while b.degree > 0:
        g = poly_gcd(b, d)
        b = b.exact_div(g)
        c = d.exact_div(g)
        d = c - b.derivative()
        if g.degree > 0:
            out.append((g, k))
        k += 1
    return out


def conjugate_poly(p: Poly) -> Poly:
    return p.conjugate()


def mod_reduce(p: Poly, m: Poly) -> Poly:
    if m.is_zero():
        raise DegenerateInput("reduction modulo the zero polynomial")
    return p % m


# ---------------------------------------------------------------------------
# local expansions
# ---------------------------------------------------------------------------

def taylor_coefficients(q: Poly, lam, m: int) -> list:
    """First ``m`` coefficients of ``q`` expanded in powers of ``(x - lam)``."""
    coeffs = list(q.coeffs)
    out = []
    for _ in range(m):
        if not coeffs:
            out.append(_ZERO)
            continue
        # one synthetic division by (x - lam): remainder is the next coefficient
        acc = _ZERO
        quot = []
        for c in reversed(coeffs):
            acc = acc * lam + c
            quot.append(acc)
        out.append(quot.pop())
        coeffs = quot[::-1]
    return out


def series_inverse_at(q: Poly, lam, m: int) -> Poly:
    """Polynomial ``a`` of degree < m with ``a*q == 1 mod (x - lam)**m``.

    The result is returned expanded in powers of ``x``.
    """
    if m < 1:
        raise ValueError("order must be positive")
    c = taylor_coefficients(q, lam, m)
    if c[0] == 0:
        raise SingularLocalInverse(f"q vanishes at {format_scalar(lam)}")
    inv0 = 1 / c[0]
    b = [inv0]
    for k in range(1, m):
        acc = _ZERO
        for j in range(1, k + 1):
            acc = acc + c[j] * b[k - j]
        b.append(-acc * inv0)
    shift = Poly.linear_root(lam)
    a = Poly()
    for coef in reversed(b):
        a = a * shift + Poly.constant(coef)
    return a
