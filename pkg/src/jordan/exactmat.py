"""
Square matrices over the scalar tower.

Exact matrices compare with ``==``; numeric (mpmath) matrices compare through
Frobenius residuals.  The minimal polynomial is computed from Krylov
sequences of the standard basis vectors, combined by lcm, so no
characteristic polynomial or root finding is involved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .errors import NotInvertible, NotNilpotent, NotUnipotent, ShapeError
from .polyring import Poly, poly_lcm
from .scalars import (
    Scalar,
    conj,
    exact,
    format_scalar,
    is_exact,
    is_numeric,
    parse_scalar,
    to_mpc,
    widest_ring,
)
from .verification import Check

__all__ = [
    "SquareMatrix",
    "SpectralLog",
    "minimal_polynomial",
    "characteristic_polynomial",
    "eval_poly_at_matrix",
    "matrix_exp_nilpotent",
    "matrix_log_unipotent",
    "commutes",
    "kron",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _coerce(c):
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return exact(c)
    if isinstance(c, float):
        return mpmath.mpf(c)
    if isinstance(c, complex):
        return mpmath.mpc(c)
    return c


class SquareMatrix:
    """Immutable n×n matrix.

    >>> T = SquareMatrix([[0, 1], [0, 0]])
    >>> T * T == SquareMatrix.zero(2)
    True
    """

    __slots__ = ("rows", "n", "_hash")

    def __init__(self, rows):
        rows = tuple(tuple(_coerce(c) for c in r) for r in rows)
        n = len(rows)
        if n < 1:
            raise ShapeError("matrix dimension must be at least 1")
        if any(len(r) != n for r in rows):
            raise ShapeError("matrix is not square")
        self.rows = rows
        self.n = n
        self._hash = None

    @classmethod
    def _raw(cls, rows) -> "SquareMatrix":
        obj = object.__new__(cls)
        obj.rows = rows
        obj.n = len(rows)
        obj._hash = None
        return obj

    # constructors -----------------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> "SquareMatrix":
        return cls._raw(tuple(tuple(_ONE if i == j else _ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, n: int) -> "SquareMatrix":
        return cls._raw(tuple((_ZERO,) * n for _ in range(n)))

    @classmethod
    def diag(cls, values) -> "SquareMatrix":
        values = [_coerce(v) for v in values]
        n = len(values)
        return cls._raw(tuple(tuple(values[i] if i == j else _ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def block_diag(cls, *blocks) -> "SquareMatrix":
        blocks = [b if isinstance(b, SquareMatrix) else SquareMatrix(b) for b in blocks]
        n = sum(b.n for b in blocks)
        rows = [[_ZERO] * n for _ in range(n)]
        off = 0
        for b in blocks:
            for i in range(b.n):
                for j in range(b.n):
                    rows[off + i][off + j] = b.rows[i][j]
            off += b.n
        return cls._raw(tuple(map(tuple, rows)))

    @classmethod
    def from_numpy(cls, arr) -> "SquareMatrix":
        return cls([[mpmath.mpc(complex(v)) for v in row] for row in np.asarray(arr)])

    # structure --------------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def entries(self):
        for r in self.rows:
            yield from r

    @property
    def ring(self) -> str:
        return widest_ring(self.entries())

    def is_exact(self) -> bool:
        return all(is_exact(c) for c in self.entries())

    def is_rational(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.entries())

    def is_real(self) -> bool:
        from .scalars import is_real

        return all(is_real(c) for c in self.entries())

    def _check_shape(self, other: "SquareMatrix"):
        if not isinstance(other, SquareMatrix):
            raise TypeError(f"expected SquareMatrix, got {type(other).__name__}")
        if other.n != self.n:
            raise ShapeError(f"dimension mismatch: {self.n} vs {other.n}")

    # arithmetic -------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        self._check_shape(other)
        return SquareMatrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        )

    def __sub__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        self._check_shape(other)
        return SquareMatrix._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        )

    def __neg__(self):
        return SquareMatrix._raw(tuple(tuple(-a for a in r) for r in self.rows))

    def scale(self, c) -> "SquareMatrix":
        c = _coerce(c)
        return SquareMatrix._raw(tuple(tuple(c * a for a in r) for r in self.rows))

    def __mul__(self, other):
        if isinstance(other, SquareMatrix):
            return self.matmul(other)
        if isinstance(other, (int, Fraction, Scalar, mpmath.mpf, mpmath.mpc)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Scalar, mpmath.mpf, mpmath.mpc)):
            return self.scale(other)
        return NotImplemented

    def matmul(self, other: "SquareMatrix") -> "SquareMatrix":
        self._check_shape(other)
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a != 0]
            row = []
            for col in cols:
                acc = _ZERO
                for k, a in nz:
                    b = col[k]
                    if b != 0:
                        acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return SquareMatrix._raw(tuple(out))

    __matmul__ = matmul

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = SquareMatrix.identity(self.n), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def apply(self, v) -> tuple:
        return tuple(_dot(r, v) for r in self.rows)

    def transpose(self) -> "SquareMatrix":
        return SquareMatrix._raw(tuple(zip(*self.rows)))

    T = property(transpose)

    def conjugate(self) -> "SquareMatrix":
        return SquareMatrix._raw(tuple(tuple(conj(a) for a in r) for r in self.rows))

    def map(self, f) -> "SquareMatrix":
        return SquareMatrix._raw(tuple(tuple(f(a) for a in r) for r in self.rows))

    def trace(self):
        acc = _ZERO
        for i in range(self.n):
            acc = acc + self.rows[i][i]
        return acc

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries())

    def is_identity(self) -> bool:
        return self == SquareMatrix.identity(self.n)

    # elimination ------------------------------------------------------------
    def _eliminate(self, augment=None):
        """Row-reduce ``[self | augment]``; return (rows, pivot columns, sign)."""
        n = self.n
        width = n + (augment.n if augment is not None else 0)
        rows = [list(r) + (list(augment.rows[i]) if augment is not None else []) for i, r in enumerate(self.rows)]
        numeric = not self.is_exact()
        pivots = []
        sign = 1
        row = 0
        for col in range(n):
            if row >= n:
                break
            if numeric:
                best = max(range(row, n), key=lambda i: abs(rows[i][col]))
                if abs(rows[best][col]) == 0:
                    continue
            else:
                best = next((i for i in range(row, n) if rows[i][col] != 0), None)
                if best is None:
                    continue
            if best != row:
                rows[row], rows[best] = rows[best], rows[row]
                sign = -sign
            inv = 1 / rows[row][col]
            prow = [a * inv for a in rows[row]]
            rows[row] = prow
            for i in range(n):
                if i != row and rows[i][col] != 0:
                    f = rows[i][col]
                    rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
            pivots.append((col, row))
            row += 1
        return rows, pivots, sign, width

    def det(self):
        n = self.n
        rows = [list(r) for r in self.rows]
        numeric = not self.is_exact()
        acc = _ONE
        for col in range(n):
            if numeric:
                best = max(range(col, n), key=lambda i: abs(rows[i][col]))
                if abs(rows[best][col]) == 0:
                    return _ZERO * rows[0][0]
            else:
                best = next((i for i in range(col, n) if rows[i][col] != 0), None)
                if best is None:
                    return _ZERO
            if best != col:
                rows[col], rows[best] = rows[best], rows[col]
                acc = -acc
            p = rows[col][col]
            acc = acc * p
            inv = 1 / p
            for i in range(col + 1, n):
                if rows[i][col] != 0:
                    f = rows[i][col] * inv
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[col])]
        return acc

    def inverse(self) -> "SquareMatrix":
        rows, pivots, _, _ = self._eliminate(SquareMatrix.identity(self.n))
        if len(pivots) < self.n:
            raise NotInvertible("matrix is singular")
        return SquareMatrix._raw(tuple(tuple(r[self.n:]) for r in rows))

    def rank(self, tol: float | None = None) -> int:
        if self.is_exact():
            return len(self._eliminate()[1])
        arr = self.to_numpy()
        return int(np.linalg.matrix_rank(arr, tol=tol))

    # numeric views ------------------------------------------------------------
    def to_numpy(self, dtype=complex) -> np.ndarray:
        return np.array([[complex(to_mpc(a)) for a in r] for r in self.rows], dtype=complex).astype(dtype)

    def to_numeric(self) -> "SquareMatrix":
        return self.map(to_mpc)

    def frobenius_norm(self) -> float:
        return float(math.sqrt(sum(abs(complex(to_mpc(a))) ** 2 for a in self.entries())))

    def distance(self, other: "SquareMatrix") -> float:
        self._check_shape(other)
        if self.is_exact() and other.is_exact() and self == other:
            return 0.0
        return (self - other).frobenius_norm()

    # comparison ---------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        body = ", ".join("[" + ", ".join(format_scalar(a, 8) for a in r) + "]" for r in self.rows)
        return f"SquareMatrix([{body}])"

    # serialization --------------------------------------------------------------
    def to_json(self) -> dict:
        return {"n": self.n, "entries": [[format_scalar(a) for a in r] for r in self.rows]}

    @classmethod
    def from_json(cls, data, numeric: bool = False) -> "SquareMatrix":
        n = data["n"]
        entries = data["entries"]
        if len(entries) != n or any(len(r) != n for r in entries):
            raise ShapeError(f"entries do not form a {n}x{n} matrix")
        return cls([[parse_scalar(str(s), numeric=numeric) for s in r] for r in entries])


def _dot(r, v):
    acc = _ZERO
    for a, b in zip(r, v):
        if a != 0 and b != 0:
            acc = acc + a * b
    return acc


def kron(A: SquareMatrix, B: SquareMatrix) -> SquareMatrix:
    """Kronecker product, row-major ordering of the product basis."""
    n, m = A.n, B.n
    rows = []
    for i in range(n):
        for k in range(m):
            rows.append(tuple(A.rows[i][j] * B.rows[k][l] for j in range(n) for l in range(m)))
    return SquareMatrix._raw(tuple(rows))


# ---------------------------------------------------------------------------
# minimal and characteristic polynomials
# ---------------------------------------------------------------------------

def _vector_annihilator(T: SquareMatrix, v) -> Poly:
    # echelon basis of the Krylov space of v: (pivot, vector, poly) with vector == poly(T) v
    basis = []
    w, pw = list(v), Poly.constant(_ONE)
    x = Poly.x()
    while True:
        for piv, bv, bp in basis:
            c = w[piv]
            if c != 0:
                w = [a - c * b for a, b in zip(w, bv)]
                pw = pw - bp * c
        piv = next((i for i, a in enumerate(w) if a != 0), None)
        if piv is None:
            return pw.monic()
        inv = 1 / w[piv]
        bv = [a * inv for a in w]
        bp = pw * inv
        basis.append((piv, bv, bp))
        w = list(T.apply(bv))
        pw = x * bp


def minimal_polynomial(T: SquareMatrix) -> Poly:
    """Monic generator of the annihilating ideal of an exact matrix.

    >>> minimal_polynomial(SquareMatrix([[0, 1], [0, 0]]))
    Poly('x^2')
    """
    if not T.is_exact():
        raise TypeError("minimal_polynomial needs exact entries")
    n = T.n
    p = Poly.constant(_ONE)
    for i in range(n):
        e = [_ONE if j == i else _ZERO for j in range(n)]
        if p.degree > 0 and eval_poly_at_vector(p, T, e) == tuple(_ZERO for _ in range(n)):
            continue
        p = poly_lcm(p, _vector_annihilator(T, e))
        if p.degree == n:
            break
    return p


def eval_poly_at_vector(p: Poly, T: SquareMatrix, v) -> tuple:
    acc = tuple(_ZERO for _ in v)
    for c in reversed(p.coeffs):
        acc = tuple(a + c * b for a, b in zip(T.apply(acc), v))
    return acc


def characteristic_polynomial(T: SquareMatrix) -> Poly:
    """det(x I - T) by the Faddeev-LeVerrier recursion (exact fields only)."""
    n = T.n
    coeffs = [_ZERO] * (n + 1)
    coeffs[n] = _ONE
    M = SquareMatrix.zero(n)
    I = SquareMatrix.identity(n)
    for k in range(1, n + 1):
        M = T * M + I.scale(coeffs[n - k + 1])
        coeffs[n - k] = -(T * M).trace() / k
    return Poly(coeffs)


# ---------------------------------------------------------------------------
# polynomial calculus
# ---------------------------------------------------------------------------

def _horner(coeffs, T: SquareMatrix) -> SquareMatrix:
    n = T.n
    if not coeffs:
        return SquareMatrix.zero(n)
    acc = SquareMatrix.diag([coeffs[-1]] * n)
    for c in reversed(coeffs[:-1]):
        acc = acc * T
        if c != 0:
            acc = SquareMatrix._raw(
                tuple(tuple(a + c if i == j else a for j, a in enumerate(r)) for i, r in enumerate(acc.rows))
            )
    return acc


def eval_poly_at_matrix(p: Poly, T: SquareMatrix) -> SquareMatrix:
    """``p(T)`` by Horner's rule.

    When ``T`` is rational and ``p`` has irrational coefficients, ``p`` is
    split along the basis ``i**e * sqrt(m)`` so that all matrix products stay
    rational.
    """
    coeffs = p.coeffs
    if T.is_rational() and any(isinstance(c, Scalar) for c in coeffs) and all(is_exact(c) for c in coeffs):
        parts: dict = {}
        for k, c in enumerate(coeffs):
            terms = c.terms if isinstance(c, Scalar) else (((1, 0), c),) if c != 0 else ()
            for key, q in terms:
                parts.setdefault(key, [_ZERO] * len(coeffs))[k] = q
        total = None
        for key in sorted(parts):
            unit = Scalar._from_terms({key: _ONE}) if key != (1, 0) else _ONE
            M = _horner(parts[key], T)
            M = M if unit == 1 else M.scale(unit)
            total = M if total is None else total + M
        return total if total is not None else SquareMatrix.zero(T.n)
    return _horner(coeffs, T)


def _nilpotency_power(N: SquareMatrix) -> SquareMatrix | None:
    P = N
    for _ in range(N.n - 1):
        P = P * N
    return P


def matrix_exp_nilpotent(N: SquareMatrix) -> SquareMatrix:
    """Finite exponential series of a nilpotent matrix."""
    if not (N ** N.n).is_zero():
        raise NotNilpotent("matrix is not nilpotent")
    result = SquareMatrix.identity(N.n)
    term = SquareMatrix.identity(N.n)
    for j in range(1, N.n):
        term = (term * N).scale(Fraction(1, j))
        if term.is_zero():
            break
        result = result + term
    return result


def matrix_log_unipotent(u: SquareMatrix) -> SquareMatrix:
    """Finite Mercator series of a unipotent matrix."""
    n = u.n
    D = u - SquareMatrix.identity(n)
    if not (D ** n).is_zero():
        raise NotUnipotent("u - I is not nilpotent")
    result = SquareMatrix.zero(n)
    power = SquareMatrix.identity(n)
    for j in range(1, n):
        power = power * D
        if power.is_zero():
            break
        result = result + power.scale(Fraction((-1) ** (j + 1), j))
    return result


def commutes(A: SquareMatrix, B: SquareMatrix, tol: float | None = None) -> Check:
    """Exact test of ``AB == BA``; numeric matrices use a Frobenius residual."""
    if not isinstance(A, SquareMatrix) or not isinstance(B, SquareMatrix) or A.n != B.n:
        raise ShapeError("commutes() needs two square matrices of equal size")
    C = A * B - B * A
    if A.is_exact() and B.is_exact():
        ok = C.is_zero()
        return Check("commutes", ok, 0.0 if ok else C.frobenius_norm())
    res = C.frobenius_norm()
    scale = max(A.frobenius_norm() * B.frobenius_norm(), 1.0)
    limit = (1e-9 * A.n if tol is None else tol) * scale
    return Check("commutes", res <= limit, res)


# ---------------------------------------------------------------------------
# spectral logarithm
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpectralLog:
    """``sum_k 1/2 * ln(modulus_sq_k) * projector_k`` kept in exact pieces.

    ``modulus_sq`` values are exact positive reals (rational for complex
    pairs, possibly radical for irrational real eigenvalues).
    """

    terms: tuple  # of (modulus_sq, SquareMatrix)
    n: int

    def dense(self, precision_bits: int = 53) -> "mpmath.matrix":
        with mpmath.workprec(precision_bits):
            H = mpmath.zeros(self.n, self.n)
            for msq, P in self.terms:
                w = mpmath.log(mpmath.re(to_mpc(msq))) / 2
                for i in range(self.n):
                    for j in range(self.n):
                        if P.rows[i][j] != 0:
                            H[i, j] += w * mpmath.re(to_mpc(P.rows[i][j]))
            return H

    def to_numpy(self) -> np.ndarray:
        return np.array(self.dense(53).tolist(), dtype=float)

    def exp_numeric(self, precision_bits: int = 53) -> np.ndarray:
        """Dense numeric exponential; scipy at double precision, mpmath above."""
        if precision_bits <= 53:
            from scipy.linalg import expm

            return expm(self.to_numpy())
        with mpmath.workprec(precision_bits):
            return mpmath.expm(self.dense(precision_bits))

    def to_json(self) -> list:
        return [{"modulus_sq": format_scalar(m), "projector": P.to_json()} for m, P in self.terms]


def is_numeric_matrix(A: SquareMatrix) -> bool:
    return any(is_numeric(a) for a in A.entries())
