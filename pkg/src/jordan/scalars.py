"""
Exact scalars for the whole pipeline.

Rationals are plain :class:`fractions.Fraction` values.  Everything that is
not rational lives in :class:`Scalar`, a finite sum

    sum_j  q_j * i**e_j * sqrt(m_j)

with rational ``q_j``, square-free positive integers ``m_j`` and ``e_j`` in
``{0, 1}``.  This covers Gaussian rationals (``m = 1``), real radical
rationals (``e = 0``) and their products, and is closed under the four field
operations.  Arithmetic that lands back in the rationals returns a
``Fraction``, so rational-only work never pays for the general case.

Numeric ("complex-float") scalars are :mod:`mpmath` numbers; the helpers at
the bottom of the module convert and format them.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce

import mpmath

__all__ = [
    "Scalar",
    "exact",
    "is_exact",
    "is_numeric",
    "ring_of",
    "widest_ring",
    "conj",
    "re_part",
    "im_part",
    "is_real",
    "real_sign",
    "compare_real",
    "sqrt_exact",
    "to_mpc",
    "format_scalar",
    "parse_scalar",
    "term_count",
]

RING_ORDER = ("rational", "gaussian", "radical", "gaussian-radical", "complex-float")


# ---------------------------------------------------------------------------
# integer helpers
# ---------------------------------------------------------------------------

def _square_split(n: int) -> tuple[int, int]:
    """Write ``n > 0`` as ``s**2 * r`` with ``r`` square-free."""
    s, r = 1, 1
    p = 2
    limit = min(round(n ** (1 / 3)) + 2, 10**6)
    while p <= limit and n > 1:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                r *= p
        p += 1 if p == 2 else 2
    if n > 1:
        t = math.isqrt(n)
        if t * t == n:
            s *= t
        else:
            r *= n
    return s, r


def _coprime_base(nums) -> list[int]:
    # pairwise coprime integers > 1 such that every input is a product of them
    base: list[int] = []
    todo = [n for n in nums if n > 1]
    while todo:
        x = todo.pop()
        if x == 1:
            continue
        for j, b in enumerate(base):
            g = math.gcd(x, b)
            if g > 1:
                base.pop(j)
                todo.extend(v for v in (g, x // g, b // g) if v > 1)
                break
        else:
            base.append(x)
    return base


# ---------------------------------------------------------------------------
# the general exact element
# ---------------------------------------------------------------------------

def _terms_of(x) -> dict:
    if isinstance(x, Scalar):
        return x._terms
    if isinstance(x, (int, Fraction)):
        return {(1, 0): Fraction(x)} if x else {}
    raise TypeError(f"not an exact scalar: {x!r}")


def _make(terms: dict):
    terms = {k: v for k, v in terms.items() if v}
    if not terms:
        return Fraction(0)
    if len(terms) == 1 and (1, 0) in terms:
        return terms[(1, 0)]
    return Scalar._from_terms(terms)


class Scalar:
    """Exact element of Q(i, sqrt(2), sqrt(3), ...).

    Instances are immutable.  Construct them through :func:`exact`,
    :func:`sqrt_exact`, :func:`parse_scalar` or :meth:`Scalar.gaussian`;
    operations that produce a rational return a ``Fraction`` instead.

    >>> z = Scalar.gaussian(1, 1)
    >>> z * conj(z)
    Fraction(2, 1)
    >>> sqrt_exact(2) * sqrt_exact(6)
    Scalar('2*sqrt(3)')
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, *args, **kwargs):
        raise TypeError("use exact(), sqrt_exact() or Scalar.gaussian()")

    @classmethod
    def _from_terms(cls, terms: dict) -> "Scalar":
        obj = object.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @staticmethod
    def gaussian(re, im):
        """Return ``re + im*i`` for rationals ``re`` and ``im``."""
        return _make({(1, 0): Fraction(re), (1, 1): Fraction(im)})

    @staticmethod
    def radical(coeffs: dict):
        """Return ``sum q*sqrt(m)`` from a ``{m: q}`` map (``m`` need not be square-free)."""
        acc = {}
        for m, q in coeffs.items():
            s, r = _square_split(int(m))
            acc[(r, 0)] = acc.get((r, 0), 0) + Fraction(q) * s
        return _make(acc)

    # structure ------------------------------------------------------------
    @property
    def terms(self) -> tuple:
        """Sorted ``((radicand, i_power), coefficient)`` pairs."""
        return tuple(sorted(self._terms.items()))

    @property
    def radicands(self) -> frozenset:
        return frozenset(m for m, _ in self._terms if m > 1)

    def is_real(self) -> bool:
        return all(e == 0 for _, e in self._terms)

    @property
    def ring(self) -> str:
        has_i = any(e for _, e in self._terms)
        has_rad = any(m > 1 for m, _ in self._terms)
        if has_i and has_rad:
            return "gaussian-radical"
        return "radical" if has_rad else "gaussian"

    # arithmetic -------------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            acc = dict(self._terms)
            for k, v in _terms_of(other).items():
                acc[k] = acc.get(k, 0) + v
            return _make(acc)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Scalar._from_terms({k: -v for k, v in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Fraction(0)
            return Scalar._from_terms({k: v * other for k, v in self._terms.items()})
        if not isinstance(other, Scalar):
            return NotImplemented
        acc: dict = {}
        for (m1, e1), q1 in self._terms.items():
            for (m2, e2), q2 in other._terms.items():
                g = math.gcd(m1, m2)
                m = (m1 // g) * (m2 // g)
                q = q1 * q2 * g
                e = e1 + e2
                if e == 2:
                    e, q = 0, -q
                acc[(m, e)] = acc.get((m, e), 0) + q
        return _make(acc)

    __rmul__ = __mul__

    def inverse(self):
        """Exact reciprocal via repeated multiplication by Galois conjugates."""
        gens = _coprime_base(self.radicands)
        flips = [lambda k, b=b: k[0] % b == 0 for b in gens]
        if any(e for _, e in self._terms):
            flips.append(lambda k: k[1] == 1)
        y = self
        mult = Fraction(1)
        for flip in flips:
            if isinstance(y, Fraction):
                break
            c = _make({k: (-v if flip(k) else v) for k, v in y._terms.items()})
            mult = mult * c
            y = y * c
        if not isinstance(y, Fraction):  # pragma: no cover - algebraically impossible
            raise ArithmeticError("conjugate product did not reach the rationals")
        if not y:
            raise ZeroDivisionError("inverse of zero")
        return mult * (1 / y)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        if isinstance(other, Scalar):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Fraction(other) * self.inverse()
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = Fraction(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self):
        return _make({k: (-v if k[1] else v) for k, v in self._terms.items()})

    # comparison / hashing ---------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return False  # a Scalar is never rational by construction
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return True

    # numeric views ----------------------------------------------------------
    def _mpmath_(self, prec, rounding):
        with mpmath.workprec(prec + 10):
            re = mpmath.mpf(0)
            im = mpmath.mpf(0)
            for (m, e), q in self._terms.items():
                v = mpmath.mpf(q.numerator) / q.denominator * mpmath.sqrt(m)
                if e:
                    im += v
                else:
                    re += v
        return mpmath.mpc(re, im) if im else re

    def __complex__(self):
        return complex(self._mpmath_(53, "n"))

    def __float__(self):
        if not self.is_real():
            raise TypeError("complex value has no float()")
        return float(self._mpmath_(53, "n"))

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"

    __str__ = lambda self: format_scalar(self)  # noqa: E731


# ---------------------------------------------------------------------------
# generic helpers that accept Fraction, Scalar or mpmath values
# ---------------------------------------------------------------------------

def exact(x):
    """Coerce ``x`` to its canonical exact representation."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Scalar):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"cannot make an exact scalar from {type(x).__name__}")


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, Scalar))


def is_numeric(x) -> bool:
    return isinstance(x, (mpmath.mpf, mpmath.mpc, float, complex))


def ring_of(x) -> str:
    if isinstance(x, (int, Fraction)):
        return "rational"
    if isinstance(x, Scalar):
        return x.ring
    return "complex-float"


def widest_ring(values) -> str:
    tags = {ring_of(v) for v in values}
    if "complex-float" in tags:
        return "complex-float"
    if "gaussian-radical" in tags or ("gaussian" in tags and "radical" in tags):
        return "gaussian-radical"
    for tag in ("radical", "gaussian"):
        if tag in tags:
            return tag
    return "rational"


def conj(x):
    if isinstance(x, (int, Fraction, mpmath.mpf, float)):
        return x
    return x.conjugate()


def re_part(x):
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, Scalar):
        return _make({k: v for k, v in x._terms.items() if k[1] == 0})
    return mpmath.re(x)


def im_part(x):
    if isinstance(x, (int, Fraction)):
        return Fraction(0)
    if isinstance(x, Scalar):
        return _make({(m, 0): v for (m, e), v in x._terms.items() if e == 1})
    return mpmath.im(x)


def is_real(x) -> bool:
    if isinstance(x, (int, Fraction)):
        return True
    if isinstance(x, Scalar):
        return x.is_real()
    return mpmath.im(x) == 0


def real_sign(x) -> int:
    """Exact sign of a real exact scalar."""
    if isinstance(x, (int, Fraction)):
        return (x > 0) - (x < 0)
    if not x.is_real():
        raise ValueError("sign of a non-real scalar")
    terms = x._terms
    if len(terms) == 2 and (1, 0) in terms:
        # a + b*sqrt(m): compare a**2 with b**2 * m
        a = terms[(1, 0)]
        (m, _), b = next((k, v) for k, v in terms.items() if k != (1, 0))
        sa, sb = (a > 0) - (a < 0), (b > 0) - (b < 0)
        if sa == sb:
            return sa
        return sa if a * a > b * b * m else sb
    if len(terms) == 1:
        (_, _), q = next(iter(terms.items()))
        return (q > 0) - (q < 0)
    # value is nonzero, so enough precision always settles the sign
    prec = 64
    while True:
        v = x._mpmath_(prec, "n")
        mag = max(abs(q) for q in terms.values()) * max(m for m, _ in terms) + 1
        if abs(v) > mpmath.mpf(2) ** (-prec + 8) * mag:
            return 1 if v > 0 else -1
        prec *= 2


def compare_real(a, b) -> int:
    return real_sign(a - b) if a != b else 0


def sqrt_exact(q):
    """Exact square root of a rational ``q`` (``i*sqrt(-q)`` when negative)."""
    q = Fraction(q)
    if q == 0:
        return Fraction(0)
    neg = q < 0
    q = abs(q)
    s, r = _square_split(q.numerator * q.denominator)
    coef = Fraction(s, q.denominator)
    return _make({(r, 1 if neg else 0): coef})


def term_count(x) -> int:
    if isinstance(x, Scalar):
        return len(x._terms)
    return 1


def to_mpc(x):
    """Numeric value of any scalar at the current mpmath precision."""
    if isinstance(x, Fraction):
        return mpmath.mpc(mpmath.mpf(x.numerator) / x.denominator)
    if isinstance(x, int):
        return mpmath.mpc(x)
    if isinstance(x, Scalar):
        return mpmath.mpc(x._mpmath_(mpmath.mp.prec, "n"))
    return mpmath.mpc(x)


# ---------------------------------------------------------------------------
# text format:  "3/4", "1/2+3/4i", "1/4*sqrt(2)-1/2", "2*sqrt(3)i",
# numeric values as decimal strings ("1.25", "-0.5+1.0i")
# ---------------------------------------------------------------------------

def _fmt_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(x, digits: int = 17) -> str:
    if isinstance(x, (int, Fraction)):
        return _fmt_q(Fraction(x))
    if isinstance(x, Scalar):
        parts = []
        for (m, e), q in sorted(x._terms.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            body = _fmt_q(abs(q))
            if m > 1:
                body = f"sqrt({m})" if body == "1" else f"{body}*sqrt({m})"
            if e:
                body = "i" if body == "1" else body + "i"
            sign = "-" if q < 0 else "+"
            parts.append((sign, body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += sign + body
        return out
    z = mpmath.mpc(x)
    re = mpmath.nstr(z.real, digits, strip_zeros=False)
    if z.imag == 0:
        return re
    im = mpmath.nstr(abs(z.imag), digits, strip_zeros=False)
    return f"{re}{'-' if z.imag < 0 else '+'}{im}i"


_EXACT_TERM = re.compile(
    r"([+-]?)((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?(?:/(\d+))?(?:\*?sqrt\((\d+)\))?(i?)"
)


def parse_scalar(s: str, numeric: bool = False):
    """Inverse of :func:`format_scalar`.

    Every string is read exactly (decimals such as ``"0.25"`` or ``"1e-3"``
    become rationals); pass ``numeric=True`` to get an mpmath value at the
    current working precision instead.

    >>> parse_scalar("1/2-3/4i")
    Scalar('1/2-3/4i')
    >>> parse_scalar("0.125")
    Fraction(1, 8)
    """
    text = s.replace(" ", "")
    if not text:
        raise ValueError("empty scalar string")
    pos, acc = 0, {}
    while pos < len(text):
        m = _EXACT_TERM.match(text, pos)
        if m is None or m.end() == pos or (pos > 0 and not m.group(1)):
            raise ValueError(f"unrecognised scalar {s!r}")
        sign, num, den, rad, imag = m.groups()
        if num is None and not (rad or imag):
            raise ValueError(f"unrecognised scalar {s!r}")
        q = Fraction(num) if num is not None else Fraction(1)
        if den:
            q /= int(den)
        if sign == "-":
            q = -q
        sq, r = _square_split(int(rad)) if rad else (1, 1)
        key = (r, 1 if imag else 0)
        acc[key] = acc.get(key, 0) + q * sq
        pos = m.end()
    value = _make(acc)
    return to_mpc(value) if numeric else value


def product(values, start=Fraction(1)):
    return reduce(lambda a, b: a * b, values, start)
