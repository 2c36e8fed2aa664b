"""
Seeded random generators: matrices with known Jordan data, and elements of
classical Lie algebras and groups.

``block_form_sample`` builds ``X = P D P^-1`` where ``D`` is block diagonal
with rotation-scaled blocks, real scalars and (real or complex) Jordan
blocks, and ``P`` is a random unimodular integer matrix.  Because the blocks
are explicit, the elliptic, hyperbolic and nilpotent parts of ``X`` are known
independently of any polynomial machinery; that is the oracle.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .exactmat import SquareMatrix

__all__ = [
    "OracleSample",
    "block_form_sample",
    "semisimple_sample",
    "random_unimodular",
    "random_algebra_element",
    "random_group_element",
    "symplectic_form",
    "symplectic_transvection",
]


@dataclass(frozen=True)
class OracleSample:
    X: SquareMatrix
    P: SquareMatrix
    D: SquareMatrix
    E: SquareMatrix
    H: SquareMatrix
    N: SquareMatrix
    seed: int

    @property
    def invertible(self) -> bool:
        return self.D.det() != 0


def _small(rng: random.Random, lo=-3, hi=3, nonzero=False) -> Fraction:
    while True:
        v = Fraction(rng.randint(lo, hi), rng.choice((1, 1, 1, 2, 3)))
        if v or not nonzero:
            return v


def random_unimodular(n: int, rng: random.Random, steps: int | None = None) -> SquareMatrix:
    """Integer matrix with determinant +-1, from elementary row operations."""
    rows = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    order = list(range(n))
    rng.shuffle(order)
    rows = [rows[k] for k in order]
    for _ in range(steps if steps is not None else 2 * n):
        if n == 1:
            break
        i, j = rng.sample(range(n), 2)
        c = rng.choice((-2, -1, 1, 2))
        rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
    return SquareMatrix(rows)


def _place(big, block, off):
    for i, r in enumerate(block):
        for j, v in enumerate(r):
            big[off + i][off + j] = Fraction(v)


def _blocks(n: int, rng: random.Random, allow_nilpotent: bool = True, allow_zero: bool = True):
    """Random block list ``(kind, size, params)`` summing to ``n``."""
    out = []
    left = n
    while left:
        kinds = ["real"]
        if left >= 2:
            kinds += ["complex"]
            if allow_nilpotent:
                kinds += ["jordan"]
        if left >= 4 and allow_nilpotent:
            kinds += ["complex_jordan"]
        kind = rng.choice(kinds)
        lam = _small(rng, nonzero=not allow_zero)
        if kind == "real":
            out.append((kind, 1, (lam,)))
            left -= 1
        elif kind == "complex":
            out.append((kind, 2, (lam, _small(rng, nonzero=True))))
            left -= 2
        elif kind == "jordan":
            k = rng.randint(2, min(left, 3))
            out.append((kind, k, (lam,)))
            left -= k
        else:
            out.append((kind, 4, (lam, _small(rng, nonzero=True))))
            left -= 4
    return out


def _assemble(blocks, n):
    """Return (D, E_D, H_D, N_D) in block form."""
    D, E, H, N = ([[Fraction(0)] * n for _ in range(n)] for _ in range(4))
    off = 0
    for kind, k, par in blocks:
        if kind == "real":
            _place(D, [[par[0]]], off)
            _place(H, [[par[0]]], off)
        elif kind == "complex":
            a, b = par
            _place(D, [[a, b], [-b, a]], off)
            _place(E, [[0, b], [-b, 0]], off)
            _place(H, [[a, 0], [0, a]], off)
        elif kind == "jordan":
            lam = par[0]
            for i in range(k):
                D[off + i][off + i] = lam
                H[off + i][off + i] = lam
                if i + 1 < k:
                    D[off + i][off + i + 1] = Fraction(1)
                    N[off + i][off + i + 1] = Fraction(1)
        else:
            a, b = par
            for s in (0, 2):
                _place(D, [[a, b], [-b, a]], off + s)
                _place(E, [[0, b], [-b, 0]], off + s)
                _place(H, [[a, 0], [0, a]], off + s)
            for i in range(2):
                D[off + i][off + 2 + i] = Fraction(1)
                N[off + i][off + 2 + i] = Fraction(1)
        off += k
    return tuple(SquareMatrix(M) for M in (D, E, H, N))


def _conjugate(P, Pinv, *Ms):
    return tuple(P * M * Pinv for M in Ms)


def block_form_sample(seed: int, max_n: int = 6, n: int | None = None, invertible: bool = False) -> OracleSample:
    """One random matrix with its directly constructed Jordan components."""
    rng = random.Random(seed)
    n = n or rng.randint(1, max_n)
    D, E, H, N = _assemble(_blocks(n, rng, allow_zero=not invertible), n)
    P = random_unimodular(n, rng)
    Pinv = P.inverse()
    X, E, H, N = _conjugate(P, Pinv, D, E, H, N)
    return OracleSample(X, P, D, E, H, N, seed)


def semisimple_sample(seed: int, max_n: int = 4, invertible: bool = False) -> SquareMatrix:
    rng = random.Random(seed)
    n = rng.randint(1, max_n)
    D, *_ = _assemble(_blocks(n, rng, allow_nilpotent=False, allow_zero=not invertible), n)
    P = random_unimodular(n, rng)
    return P * D * P.inverse()


# ---------------------------------------------------------------------------
# classical algebras and groups
# ---------------------------------------------------------------------------

def symplectic_form(n: int) -> SquareMatrix:
    """``[[0, I], [-I, 0]]`` of size ``n`` (even)."""
    h = n // 2
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(h):
        rows[i][h + i] = Fraction(1)
        rows[h + i][i] = Fraction(-1)
    return SquareMatrix(rows)


def symplectic_transvection(v, t, omega: SquareMatrix) -> SquareMatrix:
    """``x -> x + t * omega(v, x) * v``; preserves ``omega``."""
    n = omega.n
    w = [sum(Fraction(v[k]) * omega.rows[k][j] for k in range(n)) for j in range(n)]
    return SquareMatrix([[Fraction(int(i == j)) + t * Fraction(v[i]) * w[j] for j in range(n)] for i in range(n)])


def _random_symplectic(n: int, rng: random.Random, steps: int = 3) -> SquareMatrix:
    omega = symplectic_form(n)
    g = SquareMatrix.identity(n)
    for _ in range(steps):
        v = [rng.randint(-1, 1) for _ in range(n)]
        if not any(v):
            v[rng.randrange(n)] = 1
        g = g * symplectic_transvection(v, Fraction(rng.choice((-2, -1, 1, 2)), rng.choice((1, 2))), omega)
    return g


def _sl_element(n: int, rng: random.Random) -> SquareMatrix:
    D, *_ = _assemble(_blocks(n, rng), n)
    shift = D.trace() / n
    X0 = D - SquareMatrix.identity(n).scale(shift)
    P = random_unimodular(n, rng)
    return P * X0 * P.inverse()


def _so21_element(rng: random.Random) -> SquareMatrix:
    a, b, c = (_small(rng) for _ in range(3))
    # basis: rotation in the (1,2) plane and boosts in (1,3), (2,3) for J = diag(1,1,-1)
    return SquareMatrix([[0, a, b], [-a, 0, c], [b, c, 0]])


def _sp_element(n: int, rng: random.Random) -> SquareMatrix:
    h = n // 2
    if rng.random() < 0.5:
        # Siegel parabolic [[A, B], [0, -A^T]] with B symmetric and A split
        A = [[_small(rng) if j >= i else Fraction(0) for j in range(h)] for i in range(h)]
        B = [[Fraction(0)] * h for _ in range(h)]
        for i in range(h):
            for j in range(i, h):
                B[i][j] = B[j][i] = _small(rng)
        rows = [[Fraction(0)] * n for _ in range(n)]
        for i in range(h):
            for j in range(h):
                rows[i][j] = A[i][j]
                rows[i][h + j] = B[i][j]
                rows[h + i][h + j] = -A[j][i]
        X = SquareMatrix(rows)
    else:
        # direct sum of sp(2) = sl(2) blocks acting on the planes (e_k, f_k)
        rows = [[Fraction(0)] * n for _ in range(n)]
        for k in range(h):
            a, b, c = _small(rng), _small(rng), _small(rng)
            rows[k][k], rows[k][h + k], rows[h + k][k], rows[h + k][h + k] = a, b, c, -a
        X = SquareMatrix(rows)
    g = _random_symplectic(n, rng)
    return g * X * g.inverse()


def random_algebra_element(family: str, n: int, seed: int) -> SquareMatrix:
    """A random exact element of sl(n), so(2,1) (``n == 3``) or sp(n)."""
    rng = random.Random(seed)
    if family == "sl":
        return _sl_element(n, rng)
    if family == "so":
        if n != 3:
            raise ValueError("random so elements are generated for so(2,1) only")
        return _so21_element(rng)
    if family == "sp":
        return _sp_element(n, rng)
    raise ValueError(f"unknown family {family!r}")


def _elementary(n, i, j, c):
    rows = [[Fraction(int(a == b)) for b in range(n)] for a in range(n)]
    rows[i][j] = Fraction(c)
    return SquareMatrix(rows)


def _pythagorean(rng):
    m, k = rng.randint(1, 4), rng.randint(0, 4)
    d = m * m + k * k
    return Fraction(m * m - k * k, d), Fraction(2 * m * k, d) * rng.choice((1, -1))


def _plane(n, i, j, c, s, hyperbolic):
    rows = [[Fraction(int(a == b)) for b in range(n)] for a in range(n)]
    rows[i][i] = rows[j][j] = c
    rows[i][j] = s
    rows[j][i] = s if hyperbolic else -s
    return SquareMatrix(rows)


def random_group_element(family: str, n: int, seed: int, steps: int = 3) -> SquareMatrix:
    """A random rational element of the identity component of SL(n), SO(2,1) or Sp(n)."""
    rng = random.Random(seed)
    g = SquareMatrix.identity(n)
    if family == "sl":
        for _ in range(steps):
            i, j = rng.sample(range(n), 2)
            g = g * _elementary(n, i, j, _small(rng, nonzero=True))
        return g
    if family == "sp":
        return _random_symplectic(n, rng, steps)
    if family == "so":
        if n != 3:
            raise ValueError("random SO elements are generated for SO(2,1) only")
        for _ in range(steps):
            kind = rng.choice(("rot", "boost13", "boost23"))
            if kind == "rot":
                c, s = _pythagorean(rng)
                g = g * _plane(3, 0, 1, c, s, False)
            else:
                t = Fraction(rng.randint(1, 4), rng.randint(1, 4))
                ch, sh = (t + 1 / t) / 2, (t - 1 / t) / 2
                g = g * _plane(3, 0 if kind == "boost13" else 1, 2, ch, sh, True)
        return g
    raise ValueError(f"unknown family {family!r}")
