"""Short Weierstrass curves y^2 = x^3 + A*x + B and their division polynomials.

Group law and the x-coordinate duplication map are written against the duck
typed element protocol (+, -, *, /, ==), so the same code serves prime fields,
extensions, quadratic lifts, and exact rationals.  Points are (x, y) tuples,
with None for the point at infinity — nothing projective is needed here.

Division polynomials live in their classical y-stripped form over F_p: for odd
index the polynomial is in x alone, for even index the stored polynomial is
the cofactor of y (so the 2-torsion cubic carries the remaining roots).
"""

from __future__ import annotations

import numpy as np

from .finitefield import poly_make_monic


class SingularCurveError(ValueError):
    pass


def discriminant(A, B):
    """-16(4A^3 + 27B^2), computed in whatever ring A and B live in."""
    return -16 * (4 * A ** 3 + 27 * B ** 2)


# ---------------------------------------------------------------------------
# group law (generic coordinates)
# ---------------------------------------------------------------------------

class EllipticCurve:
    """y^2 = x^3 + A x + B with A, B in a common field object."""

    def __init__(self, field, A, B):
        self.field = field
        self.A = A
        self.B = B
        d = (A * A * A) * field.from_int(64) + (B * B) * field.from_int(432)
        if not d:
            raise SingularCurveError("discriminant is zero")

    def f(self, x):
        """Right-hand side x^3 + A x + B."""
        return x * x * x + self.A * x + self.B

    def is_on_curve(self, P) -> bool:
        if P is None:
            return True
        x, y = P
        return y * y == self.f(x)

    def neg(self, P):
        if P is None:
            return None
        return (P[0], -P[1])

    def add(self, P, Q):
        if P is None:
            return Q
        if Q is None:
            return P
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2:
            if y1 == -y2:
                return None
            # tangent
            num = (x1 * x1 + x1 * x1 + x1 * x1) + self.A
            lam = num / (y1 + y1)
        else:
            lam = (y2 - y1) / (x2 - x1)
        x3 = lam * lam - x1 - x2
        y3 = lam * (x1 - x3) - y1
        return (x3, y3)

    def double(self, P):
        return self.add(P, P)

    def mul(self, P, k: int):
        if k < 0:
            return self.mul(self.neg(P), -k)
        R = None
        Q = P
        while k:
            if k & 1:
                R = self.add(R, Q)
            Q = self.add(Q, Q)
            k >>= 1
        return R

    def x_of_double(self, x):
        """x(2P) from x(P): (x^4 - 2A x^2 - 8B x + A^2) / (4(x^3 + A x + B)).

        Raises ValueError on 2-torsion abscissas (where 2P is at infinity).
        """
        den = self.f(x)
        if not den:
            raise ValueError("x is a 2-torsion abscissa; 2P is at infinity")
        sq = x * x - self.A
        num = sq * sq - (self.B * x) * self.field.from_int(8)
        return num / (den * self.field.from_int(4))


# ---------------------------------------------------------------------------
# F_p point enumeration / counting
# ---------------------------------------------------------------------------

ENUMERATION_CAP = 10 ** 6


def count_points_prime(p: int, A: int, B: int) -> int:
    """|E(F_p)| including infinity, by quadratic-character table."""
    xs = np.arange(p, dtype=np.int64)
    fx = (xs * xs % p * xs + A * xs + B) % p
    sq = np.zeros(p, dtype=bool)
    sq[(xs * xs) % p] = True
    zero = int((fx == 0).sum())
    on = int((sq[fx] & (fx != 0)).sum())
    return 1 + zero + 2 * on


def enumerate_points(curve: EllipticCurve):
    """All points of a curve over a PrimeField (None for infinity first).

    Refuses fields larger than the enumeration cap.
    """
    F = curve.field
    p = F.order()
    if p > ENUMERATION_CAP:
        raise ValueError("field too large to enumerate")
    pts = [None]
    for xv in range(p):
        x = F.from_int(xv)
        fx = curve.f(x)
        if not fx:
            pts.append((x, F.zero()))
            continue
        r = F.sqrt(fx)
        if r is not None:
            pts.append((x, r))
            pts.append((x, -r))
    return pts


# ---------------------------------------------------------------------------
# division polynomials over F_p
# ---------------------------------------------------------------------------

class DivisionPolynomials:
    """y-stripped division polynomials of y^2 = x^3 + Ax + B over F_p.

    self[m] is the polynomial in x: for odd m the full m-th division
    polynomial, for even m its cofactor after removing the factor 2y... more
    precisely the classical sequence with psi_2 = 2y stored as the constant 2.
    Indexing follows the usual recurrences with f(x)^2 patched in wherever a
    y^4 appeared.
    """

    def __init__(self, p: int, A: int, B: int):
        self.p = p
        self.A = A % p
        self.B = B % p
        f = np.array([self.B, self.A, 0, 1], dtype=np.int64)
        self.curve_poly = f
        self.f_sq = np.convolve(f, f) % p
        A2 = self.A * self.A % p
        psi3 = np.array([(-A2) % p, 12 * self.B % p, 6 * self.A % p, 0, 3], dtype=np.int64)
        psi4 = (4 * np.array(
            [
                (-8 * self.B * self.B - self.A * A2) % p,
                (-4 * self.A * self.B) % p,
                (-5 * A2) % p,
                (20 * self.B) % p,
                (5 * self.A) % p,
                0,
                1,
            ],
            dtype=np.int64,
        )) % p
        self._cache: dict[int, np.ndarray] = {
            -1: np.array([p - 1], dtype=np.int64),
            0: np.array([0], dtype=np.int64),
            1: np.array([1], dtype=np.int64),
            2: np.array([2], dtype=np.int64),
            3: psi3,
            4: psi4,
        }

    def __getitem__(self, m: int) -> np.ndarray:
        if m in self._cache:
            return self._cache[m]
        p = self.p
        if m % 2 == 1:
            k = (m - 1) // 2
            t1 = np.convolve(self[k + 2], np.convolve(self[k], np.convolve(self[k], self[k]) % p) % p) % p
            t2 = np.convolve(self[k - 1], np.convolve(self[k + 1], np.convolve(self[k + 1], self[k + 1]) % p) % p) % p
            if k % 2 == 0:
                t1 = np.convolve(t1, self.f_sq) % p
            else:
                t2 = np.convolve(t2, self.f_sq) % p
            width = max(len(t1), len(t2))
            out = np.zeros(width, dtype=np.int64)
            out[: len(t1)] += t1
            out[: len(t2)] -= t2
            out %= p
        else:
            k = m // 2
            a = np.convolve(self[k + 2], np.convolve(self[k - 1], self[k - 1]) % p) % p
            b = np.convolve(self[k - 2], np.convolve(self[k + 1], self[k + 1]) % p) % p
            width = max(len(a), len(b))
            diff = np.zeros(width, dtype=np.int64)
            diff[: len(a)] += a
            diff[: len(b)] -= b
            diff %= p
            out = np.convolve(self[k], diff) % p
            out = out * pow(2, p - 2, p) % p
        # trim
        nz = np.nonzero(out)[0]
        out = out[: nz[-1] + 1] if len(nz) else np.array([0], dtype=np.int64)
        self._cache[m] = out
        return out

    def torsion_x_polynomial(self, m: int):
        """(monic x-polynomial, has_two_torsion_part) for m >= 2.

        The roots of the returned polynomial are the abscissas of the
        m-torsion points P with 2P != O; when the flag is True (even m) the
        abscissas of the 2-torsion points — the roots of the curve cubic —
        complete the picture.
        """
        assert m >= 2
        if m == 2:
            return poly_make_monic(self.curve_poly, self.p), True
        return poly_make_monic(self[m], self.p), m % 2 == 0
