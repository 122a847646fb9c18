"""Finite field arithmetic: F_p, dense extensions F_{p^n}, quadratic liftings.

Everything here is sized for torsion-field work: base primes p < 2^8 and
extension degrees up to a couple hundred.  Polynomials are numpy int64
coefficient vectors (lowest degree first, reduced mod p), so convolution
products and reduction-matrix contractions stay far below 2^63 and a single
``% p`` at the end of each operation suffices.

The three field classes (PrimeField, ExtField, QuadExt) expose one duck-typed
protocol used by the curve/torsion layers:

    field.zero(), field.one(), field.from_int(k), field.nth_element(i)
    field.order(), field.degree, field.p
    field.sqrt(elt) -> elt | None          (canonical choice of root)
    field.frobenius_power(elt, k)          (elt -> elt^(p^k))
    field.fixed_by(elt, k)                 (elt^(p^k) == elt)

and elements support +, -, *, /, ==, bool, .encode() (a tuple of ints usable
as a sort key or dict key).
"""

from __future__ import annotations

import random

import numpy as np

# ---------------------------------------------------------------------------
# integer utilities
# ---------------------------------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for everything below 3.3 * 10^24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_in_range(lo: int, hi: int) -> list[int]:
    """All primes in [lo, hi], by sieve."""
    if hi < 2:
        return []
    sieve = np.ones(hi + 1, dtype=bool)
    sieve[:2] = False
    for q in range(2, int(hi ** 0.5) + 1):
        if sieve[q]:
            sieve[q * q :: q] = False
    return [int(q) for q in np.nonzero(sieve)[0] if q >= lo]


def sqrt_int(a: int, p: int) -> int | None:
    """Square root mod prime p (Tonelli-Shanks); None for nonresidues.

    Returns the canonical representative min(r, p - r).
    """
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
        return min(r, p - r)
    # general case
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, tt = 0, t
        while tt != 1:
            tt = tt * tt % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return min(r, p - r)


# ---------------------------------------------------------------------------
# dense polynomials over F_p
# ---------------------------------------------------------------------------

def poly_trim(a: np.ndarray) -> np.ndarray:
    """Strip trailing zero coefficients (zero polynomial -> length-1 [0])."""
    nz = np.nonzero(a)[0]
    if len(nz) == 0:
        return np.zeros(1, dtype=np.int64)
    return a[: nz[-1] + 1]


def poly_deg(a: np.ndarray) -> int:
    nz = np.nonzero(a)[0]
    return -1 if len(nz) == 0 else int(nz[-1])


def poly_mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return np.convolve(a, b) % p


def poly_make_monic(a: np.ndarray, p: int) -> np.ndarray:
    a = poly_trim(a % p)
    lead = int(a[-1])
    if lead == 1:
        return a
    return a * pow(lead, p - 2, p) % p


def poly_divmod(a: np.ndarray, g: np.ndarray, p: int):
    """Quotient and remainder by monic g."""
    a = poly_trim(a % p).copy()
    n = poly_deg(g)
    assert n >= 0 and int(g[n]) == 1
    if poly_deg(a) < n:
        return np.zeros(1, dtype=np.int64), a
    q = np.zeros(poly_deg(a) - n + 1, dtype=np.int64)
    while poly_deg(a) >= n:
        d = poly_deg(a)
        coef = int(a[d])
        q[d - n] = coef
        a[d - n : d + 1] = (a[d - n : d + 1] - coef * g[: n + 1]) % p
    return q, poly_trim(a)


def poly_mod(a: np.ndarray, g: np.ndarray, p: int) -> np.ndarray:
    return poly_divmod(a, g, p)[1]


def poly_gcd(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    a, b = poly_trim(a % p), poly_trim(b % p)
    while poly_deg(b) >= 0:
        a, b = b, poly_mod(a, poly_make_monic(b, p), p)
        # remainder taken against monic form; rescaling does not change gcd
    if poly_deg(a) < 0:
        return a
    return poly_make_monic(a, p)


def poly_eea_inverse(a: np.ndarray, g: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a modulo monic irreducible g (extended Euclid)."""
    r0, r1 = g.astype(np.int64), poly_trim(a % p)
    t0 = np.zeros(1, dtype=np.int64)
    t1 = np.ones(1, dtype=np.int64)
    while poly_deg(r1) > 0:
        m = poly_make_monic(r1, p)
        scale = pow(int(r1[poly_deg(r1)]), p - 2, p)
        q, r = poly_divmod(r0, m, p)
        q = q * scale % p
        r0, r1 = r1, r
        prod = np.convolve(q, t1) % p
        width = max(len(t0), len(prod))
        nt = np.zeros(width, dtype=np.int64)
        nt[: len(t0)] += t0
        nt[: len(prod)] -= prod
        t0, t1 = t1, poly_trim(nt % p)
    if poly_deg(r1) < 0:
        raise ZeroDivisionError("element not invertible")
    t1 = t1 * pow(int(r1[0]), p - 2, p) % p
    return poly_trim(t1)


def poly_pow_mod(a: np.ndarray, e: int, g: np.ndarray, p: int) -> np.ndarray:
    assert e >= 0
    result = np.ones(1, dtype=np.int64)
    base = poly_mod(a, g, p)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), g, p)
        base = poly_mod(poly_mul(base, base, p), g, p)
        e >>= 1
    return result


def poly_eval(a: np.ndarray, x: int, p: int) -> int:
    acc = 0
    for c in a[::-1]:
        acc = (acc * x + int(c)) % p
    return acc


_X = np.array([0, 1], dtype=np.int64)


def poly_is_irreducible(f: np.ndarray, p: int) -> bool:
    """Irreducibility over F_p: gcd(x^{p^i} - x, f) = 1 for i <= deg/2 and
    x^{p^deg} = x mod f."""
    f = poly_make_monic(f, p)
    k = poly_deg(f)
    if k <= 0:
        return False
    if k == 1:
        return True
    h = _X.copy()
    for i in range(1, k + 1):
        h = poly_pow_mod(h, p, f, p)
        if i <= k // 2:
            diff = h.copy().astype(np.int64)
            width = max(len(diff), 2)
            d = np.zeros(width, dtype=np.int64)
            d[: len(diff)] += diff
            d[1] -= 1
            if poly_deg(poly_gcd(d % p, f, p)) != 0:
                return False
    return poly_deg(h) == 1 and int(h[0]) == 0 and int(h[1]) == 1


def find_irreducible(p: int, k: int) -> np.ndarray:
    """First monic irreducible of degree k over F_p in lexicographic order.

    Coefficient tuples (c_{k-1}, ..., c_0) are scanned in ascending order, so
    find_irreducible(5, 2) is x^2 + 2.
    """
    assert k >= 1
    if k == 1:
        return np.array([0, 1], dtype=np.int64)
    for idx in range(p ** k):
        coeffs = np.zeros(k + 1, dtype=np.int64)
        coeffs[k] = 1
        rem = idx
        for pos in range(k):  # constant term varies fastest
            coeffs[pos] = rem % p
            rem //= p
        if poly_is_irreducible(coeffs, p):
            return coeffs
    raise RuntimeError("no irreducible found (unreachable)")


# ---------------------------------------------------------------------------
# squarefree factorization over F_p (distinct degree + Cantor-Zassenhaus)
# ---------------------------------------------------------------------------

def _poly_sub_x(h: np.ndarray) -> np.ndarray:
    d = np.zeros(max(len(h), 2), dtype=np.int64)
    d[: len(h)] += h
    d[1] -= 1
    return d


def factor_squarefree(g: np.ndarray, p: int, rng: random.Random) -> list[np.ndarray]:
    """Irreducible factors of a squarefree monic g over F_p.

    Returned factors are monic, sorted by (degree, coefficient tuple) so the
    factorization is deterministic even though the equal-degree splitting uses
    the supplied rng.
    """
    g = poly_make_monic(g, p)
    out: list[np.ndarray] = []
    h = _X.copy()
    rest = g
    d = 0
    while poly_deg(rest) > 0:
        d += 1
        if 2 * d > poly_deg(rest):
            out.append(rest)
            break
        h = poly_pow_mod(h, p, rest, p)
        part = poly_gcd(_poly_sub_x(h) % p, rest, p)
        if poly_deg(part) > 0:
            out.extend(_equal_degree_split(part, d, p, rng))
            rest = poly_divmod(rest, part, p)[0]
            rest = poly_make_monic(rest, p)
            h = poly_mod(h, rest, p)
    out.sort(key=lambda f: (poly_deg(f), tuple(int(c) for c in f)))
    return out


def _equal_degree_split(part: np.ndarray, d: int, p: int, rng: random.Random) -> list[np.ndarray]:
    n = poly_deg(part)
    if n == d:
        return [part]
    e = (p ** d - 1) // 2
    while True:
        r = np.array([rng.randrange(p) for _ in range(n)], dtype=np.int64)
        if poly_deg(r) < 1:
            continue
        cand = poly_gcd(r, part, p)
        if 0 < poly_deg(cand) < n:
            left, right = cand, poly_make_monic(poly_divmod(part, cand, p)[0], p)
            return _equal_degree_split(left, d, p, rng) + _equal_degree_split(right, d, p, rng)
        s = poly_pow_mod(r, e, part, p)
        s = s.copy()
        s[0] = (s[0] - 1) % p
        cand = poly_gcd(s, part, p)
        if 0 < poly_deg(cand) < n:
            left, right = cand, poly_make_monic(poly_divmod(part, cand, p)[0], p)
            return _equal_degree_split(left, d, p, rng) + _equal_degree_split(right, d, p, rng)


def poly_roots(g: np.ndarray, p: int) -> list[int]:
    """Roots in F_p of a squarefree g (no multiplicities), ascending."""
    g = poly_make_monic(g, p)
    xp = poly_pow_mod(_X, p, g, p)
    lin = poly_gcd(_poly_sub_x(xp) % p, g, p)
    deg = poly_deg(lin)
    if deg <= 0:
        return []
    if deg == 1:
        return [(-int(lin[0])) % p]
    roots = [x for x in range(p) if poly_eval(lin, x, p) == 0]
    return roots


# ---------------------------------------------------------------------------
# F_p as a field object
# ---------------------------------------------------------------------------

class PrimeField:
    """F_p for a prime p not in {2, 3}."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p in (2, 3):
            raise ValueError("characteristics 2 and 3 are not supported")
        self.p = p
        self.degree = 1

    def order(self) -> int:
        return self.p

    def elt(self, v: int) -> "PrimeFieldElement":
        return PrimeFieldElement(self, v % self.p)

    from_int = elt

    def nth_element(self, i: int) -> "PrimeFieldElement":
        return self.elt(i)

    def zero(self):
        return self.elt(0)

    def one(self):
        return self.elt(1)

    def sqrt(self, a: "PrimeFieldElement"):
        r = sqrt_int(a.v, self.p)
        return None if r is None else self.elt(r)

    def frobenius_power(self, a, k: int):
        return a

    def fixed_by(self, a, k: int) -> bool:
        return True

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"F_{self.p}"


class PrimeFieldElement:
    __slots__ = ("field", "v")

    def __init__(self, field: PrimeField, v: int):
        self.field = field
        self.v = v

    def __add__(self, other):
        return PrimeFieldElement(self.field, (self.v + other.v) % self.field.p)

    def __sub__(self, other):
        return PrimeFieldElement(self.field, (self.v - other.v) % self.field.p)

    def __neg__(self):
        return PrimeFieldElement(self.field, -self.v % self.field.p)

    def __mul__(self, other):
        return PrimeFieldElement(self.field, self.v * other.v % self.field.p)

    def inverse(self):
        if self.v == 0:
            raise ZeroDivisionError
        return PrimeFieldElement(self.field, pow(self.v, self.field.p - 2, self.field.p))

    def __truediv__(self, other):
        return self * other.inverse()

    def __eq__(self, other):
        return isinstance(other, PrimeFieldElement) and self.v == other.v and self.field.p == other.field.p

    def __bool__(self):
        return self.v != 0

    def __hash__(self):
        return hash((self.field.p, self.v))

    def encode(self) -> tuple[int, ...]:
        return (self.v,)

    def __repr__(self):
        return f"{self.v}"


# ---------------------------------------------------------------------------
# F_{p^n} = F_p[x]/(g)
# ---------------------------------------------------------------------------

class ExtField:
    """F_p[x]/(g) for monic irreducible g of degree n >= 2.

    Multiplication is convolution plus a contraction against the precomputed
    reduction matrix R (row i = x^{n+i} mod g); the p-power Frobenius is a
    precomputed n x n matrix so that subfield membership questions are single
    mat-vec products.
    """

    def __init__(self, p: int, modulus: np.ndarray, check_irreducible: bool = False):
        self.p = p
        g = poly_make_monic(modulus, p)
        self.modulus = g
        self.degree = poly_deg(g)
        assert self.degree >= 2
        if check_irreducible:
            assert poly_is_irreducible(g, p), "modulus must be irreducible"
        n = self.degree
        # reduction rows: x^{n+i} mod g for i = 0..n-2
        rows = np.zeros((n - 1, n), dtype=np.int64)
        top = (-g[:n]) % p  # x^n mod g
        cur = top.copy()
        rows[0] = cur
        for i in range(1, n - 1):
            nxt = np.zeros(n, dtype=np.int64)
            nxt[1:] = cur[: n - 1]
            nxt = (nxt + int(cur[n - 1]) * top) % p
            rows[i] = nxt
            cur = nxt
        self._red = rows
        self._frob_mats: dict[int, np.ndarray] = {}

    # -- element plumbing ---------------------------------------------------

    def elt(self, coeffs) -> "ExtFieldElement":
        c = np.asarray(coeffs, dtype=np.int64) % self.p
        if len(c) > self.degree:
            c = poly_mod(c, self.modulus, self.p)
        a = np.zeros(self.degree, dtype=np.int64)
        a[: len(c)] = c
        return ExtFieldElement(self, a)

    def from_int(self, k: int) -> "ExtFieldElement":
        return self.elt([k])

    def nth_element(self, i: int) -> "ExtFieldElement":
        digits = []
        for _ in range(self.degree):
            digits.append(i % self.p)
            i //= self.p
        return self.elt(digits)

    def gen(self) -> "ExtFieldElement":
        return self.elt([0, 1])

    def zero(self):
        return self.elt([])

    def one(self):
        return self.elt([1])

    def order(self) -> int:
        return self.p ** self.degree

    # -- arithmetic kernels -------------------------------------------------

    def _mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        c = np.convolve(a, b)
        n = self.degree
        res = c[:n].copy()
        if len(c) > n:
            res = res + c[n:] @ self._red
        return res % self.p

    def _inv(self, a: np.ndarray) -> np.ndarray:
        inv = poly_eea_inverse(poly_trim(a), self.modulus, self.p)
        out = np.zeros(self.degree, dtype=np.int64)
        out[: len(inv)] = inv
        return out

    # -- Frobenius ----------------------------------------------------------

    def frobenius_matrix(self) -> np.ndarray:
        return self.frobenius_power_matrix(1)

    def frobenius_power_matrix(self, k: int) -> np.ndarray:
        k %= self.degree
        if k in self._frob_mats:
            return self._frob_mats[k]
        n, p = self.degree, self.p
        if k == 0:
            m = np.eye(n, dtype=np.int64)
        elif 1 not in self._frob_mats:
            xp = poly_pow_mod(_X, p, self.modulus, p)
            m = np.zeros((n, n), dtype=np.int64)
            m[0, 0] = 1
            col = np.zeros(n, dtype=np.int64)
            col[0] = 1
            xp_full = np.zeros(n, dtype=np.int64)
            xp_full[: len(xp)] = xp
            for j in range(1, n):
                col = self._mul(col, xp_full)
                m[:, j] = col
            self._frob_mats[1] = m
            if k != 1:
                m = self.frobenius_power_matrix(k)
        else:
            base = self._frob_mats[1]
            m = np.eye(n, dtype=np.int64)
            e = k
            while e:
                if e & 1:
                    m = (m @ base) % self.p
                base = (base @ base) % self.p
                e >>= 1
        self._frob_mats[k] = m
        return m

    def frobenius_power(self, a: "ExtFieldElement", k: int) -> "ExtFieldElement":
        m = self.frobenius_power_matrix(k)
        return ExtFieldElement(self, (m @ a.c) % self.p)

    def fixed_by(self, a: "ExtFieldElement", k: int) -> bool:
        m = self.frobenius_power_matrix(k)
        return bool(np.array_equal((m @ a.c) % self.p, a.c))

    def sqrt(self, a: "ExtFieldElement"):
        return ts_sqrt(self, a)

    def __eq__(self, other):
        return (
            isinstance(other, ExtField)
            and other.p == self.p
            and np.array_equal(other.modulus, self.modulus)
        )

    def __hash__(self):
        return hash(("ExtField", self.p, tuple(int(c) for c in self.modulus)))

    def __repr__(self):
        return f"F_{self.p}^{self.degree}"


class ExtFieldElement:
    __slots__ = ("field", "c")

    def __init__(self, field: ExtField, c: np.ndarray):
        self.field = field
        self.c = c

    def __add__(self, other):
        return ExtFieldElement(self.field, (self.c + other.c) % self.field.p)

    def __sub__(self, other):
        return ExtFieldElement(self.field, (self.c - other.c) % self.field.p)

    def __neg__(self):
        return ExtFieldElement(self.field, (-self.c) % self.field.p)

    def __mul__(self, other):
        return ExtFieldElement(self.field, self.field._mul(self.c, other.c))

    def inverse(self):
        return ExtFieldElement(self.field, self.field._inv(self.c))

    def __truediv__(self, other):
        return self * other.inverse()

    def __eq__(self, other):
        return (
            isinstance(other, ExtFieldElement)
            and self.field.p == other.field.p
            and np.array_equal(self.c, other.c)
        )

    def __bool__(self):
        return bool(np.any(self.c))

    def __hash__(self):
        return hash(self.encode())

    def encode(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.c)

    def __repr__(self):
        return "poly" + str(self.encode())


# ---------------------------------------------------------------------------
# quadratic lift F(sqrt(t))
# ---------------------------------------------------------------------------

class QuadExt:
    """F(Y)/(Y^2 - t) over a PrimeField or ExtField base, t a nonsquare.

    Used when a torsion point's ordinate generates a quadratic extension of
    the field of its abscissa.  Frobenius acts componentwise twisted by
    s_k = Y^{p^k - 1} = t^{(p^k - 1)/2}, computed iteratively.
    """

    def __init__(self, base, t):
        self.base = base
        self.t = t
        self.p = base.p
        self.degree = 2 * base.degree
        self._s: dict[int, object] = {0: base.one()}

    def elt(self, a, b) -> "QuadExtElement":
        return QuadExtElement(self, a, b)

    def from_int(self, k: int):
        return self.elt(self.base.from_int(k), self.base.zero())

    def nth_element(self, i: int):
        q = self.base.order()
        return self.elt(self.base.nth_element(i % q), self.base.nth_element(i // q))

    def zero(self):
        return self.elt(self.base.zero(), self.base.zero())

    def one(self):
        return self.elt(self.base.one(), self.base.zero())

    def gen(self):
        """The adjoined square root Y itself."""
        return self.elt(self.base.zero(), self.base.one())

    def order(self) -> int:
        return self.base.order() ** 2

    def _s_k(self, k: int):
        k %= self.degree
        if k in self._s:
            return self._s[k]
        kk = max(i for i in self._s if i <= k)
        s = self._s[kk]
        if 1 not in self._s:
            self._s[1] = pow_elt(self.t, (self.p - 1) // 2)
        s1 = self._s[1]
        while kk < k:
            s = self.base.frobenius_power(s, 1) * s1
            kk += 1
            self._s[kk] = s
        return s

    def frobenius_power(self, x: "QuadExtElement", k: int):
        a = self.base.frobenius_power(x.a, k)
        b = self.base.frobenius_power(x.b, k) * self._s_k(k)
        return self.elt(a, b)

    def fixed_by(self, x: "QuadExtElement", k: int) -> bool:
        if not self.base.fixed_by(x.a, k):
            return False
        return self.base.frobenius_power(x.b, k) * self._s_k(k) == x.b

    def sqrt(self, x: "QuadExtElement"):
        """Square root by descent to the base field; None if x is nonsquare.

        For x = a + bY with Y^2 = t: a root s + uY needs s^2 + u^2 t = a and
        2su = b, so s^2 is a root of 4Z^2 - 4aZ + b^2 t, i.e. (a +- w)/2 with
        w^2 = a^2 - b^2 t = N(x).  The norm being a base square is necessary,
        and one of the two sign choices yields a base square for s^2.
        """
        base = self.base
        a, b = x.a, x.b
        if not x:
            return self.zero()
        if not b:
            r = base.sqrt(a)
            if r is not None:
                return self._canonical(self.elt(r, base.zero()))
            # a nonsquare in the base differs from t by a square factor
            r = base.sqrt(a / self.t)
            assert r is not None
            return self._canonical(self.elt(base.zero(), r))
        w = base.sqrt(a * a - b * b * self.t)
        if w is None:
            return None
        half = base.one() / base.from_int(2)
        for ww in (w, -w):
            s2 = (a + ww) * half
            s = base.sqrt(s2)
            if s is not None and s:
                u = b * half / s
                root = self.elt(s, u)
                if root * root == x:
                    return self._canonical(root)
        return None

    def _canonical(self, r: "QuadExtElement"):
        neg = -r
        return r if r.encode() <= neg.encode() else neg

    def __eq__(self, other):
        return isinstance(other, QuadExt) and other.base == self.base and other.t == self.t

    def __hash__(self):
        return hash(("QuadExt", self.base, self.t.encode()))

    def __repr__(self):
        return f"{self.base!r}(sqrt)"


class QuadExtElement:
    __slots__ = ("field", "a", "b")

    def __init__(self, field: QuadExt, a, b):
        self.field = field
        self.a = a
        self.b = b

    def __add__(self, other):
        return QuadExtElement(self.field, self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        return QuadExtElement(self.field, self.a - other.a, self.b - other.b)

    def __neg__(self):
        return QuadExtElement(self.field, -self.a, -self.b)

    def __mul__(self, other):
        t = self.field.t
        a = self.a * other.a + (self.b * other.b) * t
        b = self.a * other.b + self.b * other.a
        return QuadExtElement(self.field, a, b)

    def inverse(self):
        n = self.a * self.a - (self.b * self.b) * self.field.t
        ninv = n.inverse()
        return QuadExtElement(self.field, self.a * ninv, -(self.b * ninv))

    def __truediv__(self, other):
        return self * other.inverse()

    def __eq__(self, other):
        return isinstance(other, QuadExtElement) and self.a == other.a and self.b == other.b

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __hash__(self):
        return hash(self.encode())

    def encode(self) -> tuple[int, ...]:
        return self.a.encode() + self.b.encode()

    def __repr__(self):
        return f"({self.a!r}) + ({self.b!r})*Y"


# ---------------------------------------------------------------------------
# generic element helpers
# ---------------------------------------------------------------------------

def pow_elt(x, e: int):
    """x^e by binary powering, for any field element (e >= 0)."""
    result = x.field.one() if hasattr(x, "field") else None
    assert result is not None
    while e:
        if e & 1:
            result = result * x
        x = x * x
        e >>= 1
    return result


def is_square_elt(x) -> bool:
    """Euler criterion in the multiplicative group of x's field."""
    if not x:
        return True
    q = x.field.order()
    return pow_elt(x, (q - 1) // 2) == x.field.one()


def ts_sqrt(field, a):
    """Tonelli-Shanks in an arbitrary finite field object; None if nonsquare.

    The returned root is canonical: the one whose encode() tuple is smaller.
    """
    if not a:
        return field.zero()
    q = field.order()
    one = field.one()
    if pow_elt(a, (q - 1) // 2) != one:
        return None
    if q % 4 == 3:
        r = pow_elt(a, (q + 1) // 4)
    else:
        m0, s = q - 1, 0
        while m0 % 2 == 0:
            m0 //= 2
            s += 1
        z = getattr(field, "_ts_nonresidue", None)
        if z is None:
            # prime-subfield elements are all squares in even-degree
            # extensions, so start the scan at the generator-like elements
            i = field.p if q != field.p else 2
            while True:
                cand = field.nth_element(i)
                if cand and pow_elt(cand, (q - 1) // 2) != one:
                    z = cand
                    break
                i += 1
            field._ts_nonresidue = z
        m, c, t, r = s, pow_elt(z, m0), pow_elt(a, m0), pow_elt(a, (m0 + 1) // 2)
        while t != one:
            i, tt = 0, t
            while tt != one:
                tt = tt * tt
                i += 1
            b = pow_elt(c, 1 << (m - i - 1))
            m, c = i, b * b
            t, r = t * c, r * b
    assert r * r == a
    neg = -r
    return r if r.encode() <= neg.encode() else neg
