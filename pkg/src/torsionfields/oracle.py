"""Degree estimation for torsion fields from reduction data alone.

Everything here looks at a curve over Q only through its reductions mod
good primes ell: the trace of Frobenius, and how the torsion abscissa
polynomials factor over F_ell.  That is enough to recover, prime by
prime, the order n_ell of Frobenius acting on the m-torsion — without
ever building the torsion field of the reduction — and from the stream
of those local fingerprints to estimate the degree of the m-th torsion
field of the original curve.

Three estimation regimes, picked by m:

* m in {2, 3, 4}: match the observed fingerprints against the catalog of
  det-surjective subgroups of GL2(Z/m).  A fingerprint is a conjugation
  invariant of a single matrix, so the true mod-m image is always
  compatible; among compatible classes we keep the one whose fingerprint
  *frequencies* best explain the sample (two nested classes can share a
  fingerprint support, but never its equidistribution statistics).
* m prime, m >= 5: the trace/determinant surjectivity certificate; when
  it fires, the image is all of GL2(F_m) and the degree is |GL2(F_m)|.
* anything else: the lcm of the observed Frobenius orders, which is a
  lower bound (it divides the image's exponent) and is reported as such.

The per-prime order n_ell comes from a field-of-definition count: an
irreducible degree-d factor g of the abscissa polynomial carries 2d
torsion vectors; Frobenius^d fixes each abscissa, and fixes the points
themselves exactly when the curve cubic is a square in F_ell[x]/(g).
So each factor contributes orbits of size d, d (square) or 2d (not), the
2-torsion cubic contributes its own factor degrees, and n_ell is the lcm
of all orbit sizes.
"""

from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .curve import DivisionPolynomials, count_points_prime, discriminant
from .finitefield import (
    factor_squarefree,
    is_prime,
    poly_deg,
    poly_divmod,
    poly_pow_mod,
    poly_roots,
)
from .gl2 import (
    gl2_order,
    mat_det,
    mat_order,
    mat_trace,
    subgroup_catalog,
    surjectivity_heuristic,
)

CATALOG_MODULI = (2, 3, 4)
HEURISTIC_MODULI = (5, 7, 11, 13)
DEFAULT_BUDGET = 120
DEFAULT_WINDOW = 15
_PRIME_SCAN_CAP = 10**7


def _mod(q: Fraction, p: int) -> int:
    return q.numerator * pow(q.denominator, -1, p) % p


def good_primes(A: Fraction, B: Fraction, m: int):
    """Primes of good reduction usable for mod-m Frobenius sampling.

    Skips 2 and 3, divisors of m, divisors of either denominator, and
    divisors of the discriminant numerator.
    """
    den = A.denominator * B.denominator
    disc_num = abs(discriminant(A, B).numerator)
    ell = 5
    while ell < _PRIME_SCAN_CAP:
        if (
            is_prime(ell)
            and m % ell != 0
            and den % ell != 0
            and disc_num % ell != 0
        ):
            yield ell
        ell += 2


# ---------------------------------------------------------------------------
# per-prime fingerprints
# ---------------------------------------------------------------------------


def _is_square_in_factor_field(num, g, p: int) -> bool:
    """Is (num mod g) a square in the field F_p[x]/(g)?  num must not vanish."""
    d = poly_deg(g)
    e = (p**d - 1) // 2
    s = poly_pow_mod(poly_divmod(num, g, p)[1], e, g, p)
    return poly_deg(s) == 0 and int(s[0]) == 1


def frobenius_fingerprint(ell: int, A: Fraction, B: Fraction, m: int):
    """(trace a_ell, order n_ell, fingerprint tuple) of Frobenius mod ell.

    The fingerprint is (a mod m, ell mod m, n_ell, sorted factor degrees of
    the exact-order abscissa polynomial, sorted torsion-vector orbit sizes,
    sorted 2-torsion cubic factor degrees), with empty tuples for the parts
    that do not apply (no abscissa part for m = 2, no cubic part for odd m).
    """
    a_red, b_red = _mod(A, ell), _mod(B, ell)
    n_pts = count_points_prime(ell, a_red, b_red)
    a = ell + 1 - n_pts

    dp = DivisionPolynomials(ell, a_red, b_red)
    poly, has_two_part = dp.torsion_x_polynomial(m)

    main_degs: list[int] = []
    vec_degs: list[int] = []
    if m == 2:
        cubic = poly
    else:
        cubic = dp.curve_poly if has_two_part else None
        for g in factor_squarefree(poly, ell, random.Random(0)):
            d = poly_deg(g)
            main_degs.append(d)
            if _is_square_in_factor_field(dp.curve_poly, g, ell):
                vec_degs.extend((d, d))
            else:
                vec_degs.append(2 * d)

    if cubic is None:
        cub_degs: tuple[int, ...] = ()
    else:
        r = len(poly_roots(cubic, ell))
        cub_degs = {3: (1, 1, 1), 1: (1, 2), 0: (3,)}[r]

    n = 1
    for d in vec_degs:
        n = math.lcm(n, d)
    for d in cub_degs:
        n = math.lcm(n, d)

    fp = (a % m, ell % m, n, tuple(sorted(main_degs)), tuple(sorted(vec_degs)), cub_degs)
    return a, n, fp


# ---------------------------------------------------------------------------
# catalog signatures (the same invariants, computed from a matrix)
# ---------------------------------------------------------------------------


def _act(M, v, m):
    return ((M[0] * v[0] + M[1] * v[1]) % m, (M[2] * v[0] + M[3] * v[1]) % m)


@lru_cache(maxsize=None)
def _exact_vectors(m: int):
    return tuple(
        (v1, v2)
        for v1 in range(m)
        for v2 in range(m)
        if math.gcd(math.gcd(v1, v2), m) == 1
    )


@lru_cache(maxsize=None)
def _abscissa_classes(m: int):
    seen: set = set()
    reps = []
    for v in _exact_vectors(m):
        key = min(v, ((-v[0]) % m, (-v[1]) % m))
        if key not in seen:
            seen.add(key)
            reps.append(key)
    return tuple(reps)


def _orbit_sizes(step, points):
    seen: set = set()
    sizes = []
    for v in points:
        if v in seen:
            continue
        w, n = v, 0
        while w not in seen:
            seen.add(w)
            n += 1
            w = step(w)
        sizes.append(n)
    return tuple(sorted(sizes))


def matrix_fingerprint(M, m: int):
    """The fingerprint a Frobenius equal to M (column action) would produce."""
    if m == 2:
        main: tuple[int, ...] = ()
        vec: tuple[int, ...] = ()
    else:
        main = _orbit_sizes(
            lambda v: min(_act(M, v, m), _act(M, ((-v[0]) % m, (-v[1]) % m), m)),
            _abscissa_classes(m),
        )
        vec = _orbit_sizes(lambda v: _act(M, v, m), _exact_vectors(m))
    if m % 2 == 0:
        N = tuple(x % 2 for x in M)
        cub = _orbit_sizes(lambda v: _act(N, v, 2), ((0, 1), (1, 0), (1, 1)))
    else:
        cub = ()
    return (mat_trace(M, m), mat_det(M, m), mat_order(M, m), main, vec, cub)


@lru_cache(maxsize=None)
def _catalog_fingerprints(m: int):
    return tuple(
        (order, dict(Counter(matrix_fingerprint(M, m) for M in sub)))
        for order, sub in subgroup_catalog(m)
    )


def _catalog_estimate(m: int, observed: Counter) -> int:
    best = None
    for order, mult in _catalog_fingerprints(m):
        if any(fp not in mult for fp in observed):
            continue
        loglik = sum(
            cnt * (math.log(mult[fp]) - math.log(order))
            for fp, cnt in observed.items()
        )
        key = (-loglik, order)
        if best is None or key < best:
            best = key
    assert best is not None, "the full group is always compatible"
    return best[1]


# ---------------------------------------------------------------------------
# degree estimation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OracleEstimate:
    """Outcome of a Frobenius-order survey for one curve and one m."""

    A: Fraction
    B: Fraction
    m: int
    budget: int
    window: int
    primes: tuple[int, ...]
    orders: tuple[int, ...]
    lcms: tuple[int, ...]
    estimate: int
    stabilized: bool
    method: str

    @property
    def lcm(self) -> int:
        return self.lcms[-1] if self.lcms else 1

    def to_json(self) -> dict:
        return {
            "schema": "1",
            "A": str(self.A),
            "B": str(self.B),
            "m": self.m,
            "budget": self.budget,
            "window": self.window,
            "primes": list(self.primes),
            "orders": list(self.orders),
            "lcm": self.lcm,
            "estimate": self.estimate,
            "stabilized": self.stabilized,
            "method": self.method,
        }


def chebotarev_degree(
    A,
    B,
    m: int,
    budget: int = DEFAULT_BUDGET,
    window: int = DEFAULT_WINDOW,
) -> OracleEstimate:
    """Estimate [Q(E[m]) : Q] from Frobenius data at `budget` good primes.

    Deterministic in its arguments.  `stabilized` records whether the
    estimate was unchanged over the final `window` primes; for m in
    {2, 3, 4} a stabilized estimate is the degree the exact classifiers
    compute.  The running lcm of the n_ell is monotone and divides
    |GL2(Z/m)| whatever the method.
    """
    A, B = Fraction(A), Fraction(B)
    if not 2 <= m <= 13:
        raise ValueError(f"m must be between 2 and 13, got {m}")
    if budget < 1:
        raise ValueError("budget must be positive")
    if window < 1:
        raise ValueError("window must be positive")
    if discriminant(A, B) == 0:
        raise ValueError("singular curve")

    use_catalog = m in CATALOG_MODULI
    use_heuristic = m in HEURISTIC_MODULI

    observed: Counter = Counter()
    trace_samples: list[tuple[int, int]] = []
    primes: list[int] = []
    orders: list[int] = []
    lcms: list[int] = []
    history: list[int] = []
    running = 1
    method = "lcm"

    for ell in good_primes(A, B, m):
        if len(primes) >= budget:
            break
        a, n, fp = frobenius_fingerprint(ell, A, B, m)
        primes.append(ell)
        orders.append(n)
        running = math.lcm(running, n)
        lcms.append(running)

        if use_catalog:
            observed[fp] += 1
            estimate = _catalog_estimate(m, observed)
            method = "catalog"
        elif use_heuristic:
            trace_samples.append((a, ell))
            if surjectivity_heuristic(trace_samples, m) == "Full":
                estimate = gl2_order(m)
                method = "full-image"
            else:
                estimate = running
                method = "lcm"
        else:
            estimate = running
        history.append(estimate)

    if not primes:
        raise ValueError("no good primes available for this curve")

    stabilized = len(history) > window and all(
        h == history[-1] for h in history[-window - 1 :]
    )
    return OracleEstimate(
        A=A,
        B=B,
        m=m,
        budget=budget,
        window=window,
        primes=tuple(primes),
        orders=tuple(orders),
        lcms=tuple(lcms),
        estimate=history[-1],
        stabilized=stabilized,
        method=method,
    )


# ---------------------------------------------------------------------------
# mod-p image surjectivity from traces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ImageReport:
    """Verdict of the trace/determinant surjectivity certificate."""

    A: Fraction
    B: Fraction
    p: int
    samples: int
    used: int
    verdict: str

    def to_json(self) -> dict:
        return {
            "schema": "1",
            "A": str(self.A),
            "B": str(self.B),
            "p": self.p,
            "samples": self.samples,
            "used": self.used,
            "verdict": self.verdict,
        }


def image_report(A, B, p: int, samples: int = 40) -> ImageReport:
    """Try to certify that the mod-p image is all of GL2(F_p).

    Streams (a_ell, ell) pairs from good primes into the surjectivity
    certificate.  "Full" is proof; "Undecided" is abstention — CM curves,
    small images, and empty samples all land there.
    """
    A, B = Fraction(A), Fraction(B)
    if p < 5 or not is_prime(p):
        raise ValueError("p must be a prime >= 5")
    if samples < 0:
        raise ValueError("samples must be nonnegative")
    if discriminant(A, B) == 0:
        raise ValueError("singular curve")

    pairs: list[tuple[int, int]] = []
    for ell in good_primes(A, B, p):
        if len(pairs) >= samples:
            break
        a_red, b_red = _mod(A, ell), _mod(B, ell)
        a = ell + 1 - count_points_prime(ell, a_red, b_red)
        pairs.append((a, ell))

    verdict = "Full" if surjectivity_heuristic(pairs, p) == "Full" else "Undecided"
    return ImageReport(A=A, B=B, p=p, samples=samples, used=len(pairs), verdict=verdict)
