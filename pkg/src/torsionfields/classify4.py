"""Exact classification of the field generated over Q by the order-4 points
of y^2 = x^3 + A x + B.

The 2-torsion field K2 is the splitting field of the cubic x^3 + A x + B
(degree d' in {1,2,3,6}); on top of it the order-4 coordinates contribute an
elementary-abelian layer generated by square roots of the root differences
and of -1.  `two_torsion_split` builds an exact representation of K2 with
the cubic's roots alpha, beta, gamma; `conditions4` counts which of the four
square roots genuinely enlarge K2; `degree4`/`galois_structure4` turn that
into [K4:Q] and the semidirect-product shape of Gal(K4/Q).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .classify3 import ClassificationDefect
from .numberfield import (
    INCONCLUSIVE,
    SQUARE,
    CubicField,
    QuadTower,
    is_rational_square,
    multiquadratic_reduce,
    rational_cbrt,
    rational_sqrt,
)

RESIDUAL_BOUND = 1e-9

#: condition keys, in the order they are tested (each against the field
#: generated by the previously adjoined ones)
FLAG_KEYS_4 = ("alpha_beta", "alpha_gamma", "beta_gamma", "minus_one")

QUOTIENT_BY_DPRIME = {1: "1", 2: "Z2", 3: "Z3", 6: "S3"}


def _mp(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


# ---------------------------------------------------------------------------
# the 2-torsion field
# ---------------------------------------------------------------------------

@dataclass
class TwoTorsionSplit:
    """Splitting data of x^3 + A x + B over Q.

    `field` is None (Q itself), a QuadTower over None (one rational root),
    a CubicField (irreducible, square discriminant), or a QuadTower over a
    CubicField (irreducible, nonsquare discriminant).  alpha/beta/gamma are
    exact elements of `field`; when all three roots are real the labels are
    in decreasing order of the distinguished embedding, except that a
    rational root is always alpha.
    """

    A: Fraction
    B: Fraction
    shape: str                   # "three-rational" | "one-rational" | "irreducible"
    dprime: int
    field: object
    alpha: object
    beta: object
    gamma: object
    disc_cubic: Fraction

    def diffs(self):
        return (self.alpha - self.beta, self.alpha - self.gamma,
                self.beta - self.gamma)


def _lift4(field, x):
    if field is None:
        return Fraction(x)
    if isinstance(field, CubicField):
        return x if not isinstance(x, (int, Fraction)) else \
            field.from_rational(Fraction(x))
    if isinstance(x, (int, Fraction)):
        base = field.base
        return field.elt(_lift4(base, x),
                         Fraction(0) if base is None else base.zero())
    if getattr(x, "field", None) == field:
        return x
    return field.elt(_lift4(field.base, x), field.base.zero()
                     if field.base is not None else Fraction(0))


def _rational_roots(A: Fraction, B: Fraction):
    """All rational roots of x^3 + A x + B, found exactly.

    Any rational root has denominator dividing lcm(den A, den B), so the
    256-bit numeric roots recover it by integer rounding, and an exact
    evaluation confirms it.
    """
    den = math.lcm(A.denominator, B.denominator)
    roots = []
    with mpmath.workprec(256):
        for r in mpmath.polyroots([1, 0, _mp(A), _mp(B)],
                                  maxsteps=200, extraprec=80):
            if abs(mpmath.im(r)) > mpmath.mpf(10) ** -40:
                continue
            cand = Fraction(int(mpmath.nint(mpmath.re(r) * den)), den)
            if cand ** 3 + A * cand + B == 0 and cand not in roots:
                roots.append(cand)
    return sorted(roots, reverse=True)


def two_torsion_split(A, B) -> TwoTorsionSplit:
    """Exact splitting field of x^3 + A x + B with labelled roots."""
    A, B = Fraction(A), Fraction(B)
    if 4 * A ** 3 + 27 * B ** 2 == 0:
        raise ValueError("singular curve: 4A^3 + 27B^2 = 0")
    disc = -4 * A ** 3 - 27 * B ** 2
    rr = _rational_roots(A, B)

    if rr:
        r = rr[0]
        D = -3 * r * r - 4 * A          # discriminant of the cofactor
        sq = rational_sqrt(D)
        if sq is not None:              # fully split
            roots = sorted([r, (-r + sq) / 2, (-r - sq) / 2], reverse=True)
            a, b, g = roots
            split = TwoTorsionSplit(A, B, "three-rational", 1, None,
                                    a, b, g, disc)
        else:
            F = QuadTower(None, D)
            sD = F.gen()
            a = _lift4(F, r)
            b, g = (-a + sD) / 2, (-a - sD) / 2
            split = TwoTorsionSplit(A, B, "one-rational", 2, F, a, b, g, disc)
    else:
        F0 = CubicField(A, B)
        al = F0.gen()
        if is_rational_square(disc):
            # cyclic cubic: the other roots live in Q(alpha) already
            sd = rational_sqrt(disc)
            w = F0.from_rational(sd) * (al * al * 3 + F0.from_rational(A)).inverse()
            if _cubic_embed(F0, w) < 0:
                w = -w
            b, g = (-al + w) / 2, (-al - w) / 2
            split = TwoTorsionSplit(A, B, "irreducible", 3, F0, al, b, g, disc)
        else:
            delta = -al * al * 3 - F0.from_rational(4 * A)
            F = QuadTower(F0, delta)
            sd = F.gen()
            a = _lift4(F, al)
            b, g = (-a + sd) / 2, (-a - sd) / 2
            split = TwoTorsionSplit(A, B, "irreducible", 6, F, a, b, g, disc)

    _check_vieta(split)
    return split


def _cubic_embed(field: CubicField, x) -> float:
    """Value of x at the distinguished (largest-real) embedding."""
    roots = field.embeddings()
    real = [i for i in range(3) if abs(mpmath.im(roots[i])) < 1e-10]
    idx = max(real, key=lambda i: mpmath.re(roots[i]))
    return float(mpmath.re(x.embed(idx)))


def _check_vieta(split: TwoTorsionSplit) -> None:
    a, b, g = split.alpha, split.beta, split.gamma
    F = split.field
    zero = _lift4(F, 0)
    assert a + b + g == zero
    assert a * b + a * g + b * g == _lift4(F, split.A)
    assert a * b * g == _lift4(F, -split.B)


# ---------------------------------------------------------------------------
# order-4 points
# ---------------------------------------------------------------------------

@dataclass
class FourTorsionPoint:
    """One of the six order-4 points P with 2P = (root, 0), up to sign of y.

    x and y are exact elements of `tower` = K2(sqrt(r1))(sqrt(r2)) where
    r1, r2 are the differences (root - other1), (root - other2).  The curve
    identity y^2 = x^3 + A x + B holds exactly in the tower; the numeric
    values (256-bit, distinguished embedding) are kept for reporting and the
    duplication check.
    """

    halves: str                  # "alpha" | "beta" | "gamma"
    tower: object
    x: object
    y: object
    x_num: object
    y_num: object


def _value(field, x):
    """Distinguished embedding: largest real root of the cubic floor,
    principal square roots above."""
    if field is None:
        return _mp(Fraction(x))
    if isinstance(field, CubicField):
        roots = field.embeddings()
        real = [i for i in range(3) if abs(mpmath.im(roots[i])) < 1e-10]
        idx = max(real, key=lambda i: mpmath.re(roots[i]))
        return mpmath.mpc(x.embed(idx))
    r = mpmath.sqrt(mpmath.mpc(_value(field.base, field.radicand)))
    return _value(field.base, x.u) + _value(field.base, x.v) * r


def four_torsion_points(split: TwoTorsionSplit, precision: int = 256):
    """The six order-4 points (one per sign of the halved abscissa, modulo
    y -> -y), with exact tower coordinates and numeric verification."""
    A, B = split.A, split.B
    out = []
    labelled = [("alpha", split.alpha, split.beta, split.gamma),
                ("beta", split.beta, split.alpha, split.gamma),
                ("gamma", split.gamma, split.alpha, split.beta)]
    with mpmath.workprec(precision):
        for name, r0, r1, r2 in labelled:
            L1 = QuadTower(split.field, r0 - r1)
            s = L1.gen()
            L2 = QuadTower(L1, _lift4(L1, r0 - r2))
            t = L2.gen()
            s2, d1, d2 = _lift4(L2, s), _lift4(L2, r0 - r1), _lift4(L2, r0 - r2)
            root = _lift4(L2, r0)
            for sign in (1, -1):
                x = root + sign * s2 * t
                y = d1 * t + sign * d2 * s2
                lhs = y * y
                rhs = x * x * x + _lift4(L2, A) * x + _lift4(L2, B)
                assert lhs == rhs, "curve identity must hold exactly"
                xn, yn = _value(L2, x), _value(L2, y)
                fx = xn ** 3 + _mp(A) * xn + _mp(B)
                if abs(yn * yn - fx) > RESIDUAL_BOUND:
                    raise ClassificationDefect("numeric curve residual too large")
                # duplication: 2P must land on (r0, 0)
                dx = ((xn * xn - _mp(A)) ** 2 - 8 * _mp(B) * xn) / (4 * fx)
                if abs(dx - _value(split.field, r0)) > RESIDUAL_BOUND:
                    raise ClassificationDefect("P does not halve the expected "
                                               "2-torsion point")
                out.append(FourTorsionPoint(name, L2, x, y, xn, yn))
    return out


# ---------------------------------------------------------------------------
# the four conditions and the degree table
# ---------------------------------------------------------------------------

def conditions4(split: TwoTorsionSplit):
    """Which of sqrt(alpha-beta), sqrt(alpha-gamma), sqrt(beta-gamma),
    sqrt(-1) genuinely extend, each tested over K2 plus the previously
    adjoined ones (multiquadratic_reduce).  Returns (flags, confidence)."""
    d1, d2, d3 = split.diffs()
    thetas = [d1, d2, d3, _lift4(split.field, -1)]
    adjoined = []
    flags = {}
    unknown = False
    for key, theta in zip(FLAG_KEYS_4, thetas):
        status, _ = multiquadratic_reduce(split.field, adjoined, theta)
        flags[key] = status != SQUARE
        unknown = unknown or status == INCONCLUSIVE
        if flags[key]:
            adjoined.append(theta)
    return flags, ("monte-carlo" if unknown else "exact")


def degree4(flags: dict, dprime: int) -> int:
    """[K4:Q] = d' * 2^(#flags); (d'=1, no flags) is not a table row."""
    if dprime not in (1, 2, 3, 6):
        raise ValueError(f"invalid two-torsion degree {dprime}")
    i = sum(bool(flags[k]) for k in FLAG_KEYS_4)
    if dprime == 1 and i == 0:
        # would put sqrt(-1) in Q
        raise ClassificationDefect("trivial flags with rational 2-torsion")
    return dprime * 2 ** i


def galois_structure4(flags: dict, dprime: int) -> dict:
    """Gal(K4/Q) as (Z/2)^i extended by Gal(K2/Q)."""
    i = sum(bool(flags[k]) for k in FLAG_KEYS_4)
    quotient = QUOTIENT_BY_DPRIME[dprime]
    if i == 0:
        descriptor = quotient
    elif dprime == 1:
        descriptor = f"(Z/2)^{i}"
    else:
        descriptor = f"(Z/2)^{i} : {quotient}"
    return {"quotient": quotient, "kernel_rank": i,
            "order": dprime * 2 ** i, "descriptor": descriptor}


# ---------------------------------------------------------------------------
# shortcuts: the d = 96 criterion and the one-parameter families
# ---------------------------------------------------------------------------

def d96_criterion(A, B) -> bool:
    """Sufficient test for [K4:Q] = 96: cubic irreducible, curve
    discriminant positive and not a rational square."""
    A, B = Fraction(A), Fraction(B)
    disc_curve = -16 * (27 * B * B + 4 * A ** 3)
    if disc_curve <= 0 or is_rational_square(disc_curve):
        return False
    if 4 * A ** 3 + 27 * B ** 2 == 0 or _rational_roots(A, B):
        return False
    # positive discriminant must mean three distinct real roots
    with mpmath.workprec(128):
        roots = mpmath.polyroots([1, 0, _mp(A), _mp(B)], maxsteps=200,
                                 extraprec=60)
        if any(abs(mpmath.im(r)) > 1e-20 for r in roots):
            raise ClassificationDefect("positive discriminant with a "
                                       "non-real root")
    return True


def _is_fourth_power(q: Fraction) -> bool:
    if q <= 0:
        return False
    r = rational_sqrt(q)
    return r is not None and rational_sqrt(r) is not None


def special_cases4(A, B) -> int:
    """[K4:Q] for the one-parameter families A = 0 and B = 0, from the
    closed-form case list (independent of the general pipeline)."""
    A, B = Fraction(A), Fraction(B)
    if (A == 0) == (B == 0):
        raise ValueError("exactly one of A, B must be zero")
    if A == 0:
        return 8 if rational_cbrt(B) is not None else 24
    if _is_fourth_power(abs(A)) or _is_fourth_power(abs(A) / 4):
        return 4
    if rational_sqrt(abs(A) / 2) is not None or \
            rational_sqrt(abs(A)) is not None:
        return 8
    return 16


# ---------------------------------------------------------------------------
# top level
# ---------------------------------------------------------------------------

@dataclass
class Classification4Report:
    A: Fraction
    B: Fraction
    shape: str
    dprime: int
    flags: dict
    degree: int
    structure: dict
    confidence: str

    def to_json(self) -> dict:
        return {
            "schema": "1",
            "A": str(self.A),
            "B": str(self.B),
            "dprime": self.dprime,
            "flags": dict(self.flags),
            "degree": self.degree,
            "structure": dict(self.structure),
            "confidence": self.confidence,
        }


def classify4(A, B) -> Classification4Report:
    """Full classification of the order-4 coordinate field of
    y^2 = x^3 + A x + B over Q."""
    split = two_torsion_split(A, B)
    flags, confidence = conditions4(split)
    d = degree4(flags, split.dprime)
    structure = galois_structure4(flags, split.dprime)
    return Classification4Report(A=split.A, B=split.B, shape=split.shape,
                                 dprime=split.dprime, flags=flags, degree=d,
                                 structure=structure, confidence=confidence)
