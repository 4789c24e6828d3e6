"""Numerical lift of points of H back to the product of three curves.

Given (a, alpha, b, beta) on H, the relation u1 = (a^2 - b)/(a^2 - b^3)
(equivalently with alpha, beta) recovers u1 = x1^2; square roots then give
x1 and y1, and x2 = b x1, x3 = beta x1, y2 = a y1, y3 = alpha y1.  The lift
is correct iff all three points satisfy y^2 = x(x^2 - 1), and the four
images under g all map back to the same point of H.
"""

from __future__ import annotations

import json
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, log10

import mpmath
from mpmath import mpc, mpf

from .arith import GaussRat
from .pipeline import BadSampleError, UnirationalMap, build_phi, evaluate_phi

__all__ = [
    "ConditioningError",
    "LiftReport",
    "numeric_lift",
    "Sample",
    "sample_points",
    "draw_parameters",
    "residual_exponent",
]

DEFAULT_PREC = 128
SAMPLE_RANGE = 9


class ConditioningError(ArithmeticError):
    def __init__(self, what: str, magnitude):
        super().__init__(f"{what} is nearly zero (|{what}| = {mpmath.nstr(magnitude, 8)})")
        self.what = what
        self.magnitude = magnitude


def _to_mpc(x) -> mpc:
    if isinstance(x, GaussRat):
        return mpc(mpf(x.re.numerator) / x.re.denominator, mpf(x.im.numerator) / x.im.denominator)
    if isinstance(x, Fraction):
        return mpc(mpf(x.numerator) / x.denominator)
    if isinstance(x, int):
        return mpc(x)
    return mpc(x)


def _str(x, prec: int) -> str:
    return mpmath.nstr(x, max(2, ceil(prec * log10(2))), strip_zeros=False)


def _cstr(z, prec: int) -> list[str]:
    return [_str(z.real, prec), _str(z.imag, prec)]


def residual_exponent(r) -> float:
    """log2 of a residual, -inf for an exact zero."""
    return float("-inf") if r == 0 else float(mpmath.log(r, 2))


@dataclass
class LiftReport:
    prec: int
    point: tuple
    u1_from_a: mpc
    u1_from_alpha: mpc
    agreement_bits: float
    w1: mpc
    lam1: mpc
    x: tuple
    y: tuple
    residuals: tuple
    scaled_residuals: tuple
    orbit_consistent: bool
    orbit_deviation: mpf
    y1_flipped: bool

    @property
    def max_residual(self):
        return max(self.residuals)

    def to_dict(self) -> dict:
        p = self.prec
        return {
            "prec": p,
            "point": [_cstr(z, p) for z in self.point],
            "u1": [_cstr(self.u1_from_a, p), _cstr(self.u1_from_alpha, p)],
            "agreement_bits": None if self.agreement_bits == float("inf") else round(self.agreement_bits, 3),
            "w1": _cstr(self.w1, p),
            "lam1": _cstr(self.lam1, p),
            "x": [_cstr(z, p) for z in self.x],
            "y": [_cstr(z, p) for z in self.y],
            "residuals": [mpmath.nstr(r, 6) for r in self.residuals],
            "scaled_residuals": [mpmath.nstr(r, 6) for r in self.scaled_residuals],
            "orbit_consistent": self.orbit_consistent,
            "orbit_deviation": mpmath.nstr(self.orbit_deviation, 6),
            "y1_flipped": self.y1_flipped,
        }


def _curve_residual(x, y):
    return abs(y * y - x * (x * x - 1))


def _scaled_residual(x, y):
    # backward-error form: independent of how large the lifted point is
    return _curve_residual(x, y) / max(mpf(1), abs(y) ** 2, abs(x) ** 3)


def numeric_lift(pt, prec: int = DEFAULT_PREC) -> LiftReport:
    """Lift (a, alpha, b, beta) to (x1, x2, x3, y1, y2, y3) at ``prec`` bits."""
    with mpmath.workprec(prec):
        a, al, b, be = (_to_mpc(z) for z in pt)
        # relative threshold: half the working bits lost means the fractions are meaningless
        cutoff = mpf(2) ** (-(prec // 2))
        fracs = []
        for name, p, q in (("a^2-b^3", a, b), ("alpha^2-beta^3", al, be)):
            den = p * p - q ** 3
            scale = max(mpf(1), abs(p * p), abs(q ** 3))
            if abs(den) <= cutoff * scale:
                raise ConditioningError(name, abs(den))
            fracs.append((p * p - q) / den)
        u_a, u_al = fracs
        diff = abs(u_a - u_al)
        agree = float("inf") if diff == 0 else -float(mpmath.log(diff / max(mpf(1), abs(u_a)), 2))

        x1 = mpmath.sqrt(u_a)
        rhs = x1 * (x1 * x1 - 1)
        if abs(x1) <= cutoff or abs(rhs) <= cutoff:
            raise ConditioningError("x1(x1^2-1)", abs(rhs))
        y1 = mpmath.sqrt(rhs)
        flipped = _curve_residual(x1, -y1) < _curve_residual(x1, y1)
        if flipped:
            y1 = -y1
        xs = (x1, b * x1, be * x1)
        ys = (y1, a * y1, al * y1)
        residuals = tuple(_curve_residual(x, y) for x, y in zip(xs, ys))
        scaled = tuple(_scaled_residual(x, y) for x, y in zip(xs, ys))

        w1 = u_a * (u_a - 1) ** 2
        lam1 = u_a * (u_a - 1)

        images = []
        i = mpc(0, 1)
        for k in range(4):
            gx = [x * (-1) ** k for x in xs]
            gy = [y * i ** k for y in ys]
            images.append((gy[1] / gy[0], gy[2] / gy[0], gx[1] / gx[0], gx[2] / gx[0]))
        consistent = all(img == images[0] for img in images[1:])
        deviation = max(abs(u - v) for img in images for u, v in zip(img, (a, al, b, be)))

        return LiftReport(
            prec=prec,
            point=(a, al, b, be),
            u1_from_a=u_a,
            u1_from_alpha=u_al,
            agreement_bits=agree,
            w1=w1,
            lam1=lam1,
            x=xs,
            y=ys,
            residuals=residuals,
            scaled_residuals=scaled,
            orbit_consistent=consistent,
            orbit_deviation=deviation,
            y1_flipped=flipped,
        )


# sampling -------------------------------------------------------------------


@dataclass
class Sample:
    index: int
    params: tuple[Fraction, Fraction, Fraction]
    point: tuple
    lift: LiftReport

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "params": {n: str(x) for n, x in zip("stv", self.params)},
            "point": {n: x.encode() for n, x in zip(("a", "alpha", "b", "beta"), self.point)},
            "lift": self.lift.to_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def _rand_rat(rng: random.Random) -> Fraction:
    num = rng.randint(-SAMPLE_RANGE, SAMPLE_RANGE)
    den = 0
    while den == 0:
        den = rng.randint(-SAMPLE_RANGE, SAMPLE_RANGE)
    return Fraction(num, den)


def _acceptable(phi: UnirationalMap, params) -> tuple | None:
    s, t, v = params
    if s == 0 or t == 0 or s * s == t * t:
        return None
    try:
        a, al, b, be = evaluate_phi(phi, params)
    except BadSampleError:
        return None
    for p, q in ((a, b), (al, be)):
        if not (p * p - q ** 3) or not (p * p - q):
            return None
    u = (a * a - b) / (a * a - b ** 3)
    if u == 0 or u == 1:
        return None
    return a, al, b, be


def draw_parameters(n: int, seed: int, phi: UnirationalMap | None = None) -> list[tuple]:
    """n accepted (params, point) pairs, drawn in order from random.Random(seed)."""
    if n < 1:
        raise ValueError("need at least one sample")
    phi = phi or build_phi()
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        params = (_rand_rat(rng), _rand_rat(rng), _rand_rat(rng))
        point = _acceptable(phi, params)
        if point is not None:
            out.append((params, point))
    return out


def sample_points(n: int, seed: int, prec: int = DEFAULT_PREC, threads: int = 1,
                  phi: UnirationalMap | None = None) -> list[Sample]:
    drawn = draw_parameters(n, seed, phi)

    def work(item):
        idx, (params, point) = item
        return Sample(idx, params, point, numeric_lift(point, prec))

    if threads <= 1:
        return [work(it) for it in enumerate(drawn)]
    # mpmath precision is process-global; pin it so every worker's workprec
    # saves and restores the same value
    with mpmath.workprec(prec), ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(work, enumerate(drawn)))
