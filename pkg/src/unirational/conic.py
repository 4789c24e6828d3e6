"""Diagonal conics A*a^2 = B*alpha^2 + C over rational function fields.

Covers the generic fibre of the conic bundle H -> A^2 (coordinates b, beta),
its pullback along b = s^2, beta = t^2, the line-pencil parametrization
through a rational point, and the divisibility descent showing the original
fibre has no rational point.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import QI
from .poly import Poly, VarSet, gcd
from .ratfunc import RatFunc, as_ratfunc, substitute

__all__ = [
    "BASE_VARS",
    "PULLBACK_VARS",
    "ConicDiag",
    "ParamMap",
    "DegeneratePencilError",
    "NotASolutionError",
    "h_conic",
    "q_conic",
    "on_conic",
    "parametrize",
    "base_change",
    "CandidateTriple",
    "DivisibilityReport",
    "forced_divisibility",
    "descent_identity",
    "ParityCase",
    "parity_forcing",
]

BASE_VARS = VarSet(["b", "beta"])
PULLBACK_VARS = VarSet(["s", "t"])


class DegeneratePencilError(ValueError):
    """A - B*v^2 vanishes identically, so the pencil meets the conic nowhere else."""


class NotASolutionError(ValueError):
    pass


@dataclass
class ConicDiag:
    A: RatFunc
    B: RatFunc
    C: RatFunc

    def __post_init__(self):
        vs = self.A.vars
        self.A, self.B, self.C = (as_ratfunc(x, vs) for x in (self.A, self.B, self.C))
        if self.A.is_zero() or self.B.is_zero():
            raise ValueError("A and B must be nonzero")

    @property
    def vars(self) -> VarSet:
        return self.A.vars

    def residual(self, a, alpha) -> RatFunc:
        return self.A * a * a - self.B * alpha * alpha - self.C

    def to_dict(self) -> dict:
        return {"A": self.A.to_dict(), "B": self.B.to_dict(), "C": self.C.to_dict()}


def h_conic(field=QI) -> ConicDiag:
    """Generic fibre over k(b, beta): a^2 beta(1-beta^2) = alpha^2 b(1-b^2) + b beta(b^2-beta^2)."""
    b, be = BASE_VARS.gens(field)
    return ConicDiag(
        RatFunc(be * (1 - be ** 2)),
        RatFunc(b * (1 - b ** 2)),
        RatFunc(b * be * (b ** 2 - be ** 2)),
    )


def base_change(c: ConicDiag, assignment: dict | None = None, target: VarSet | None = None) -> ConicDiag:
    """Pull the coefficients back along ``assignment`` (default b -> s^2, beta -> t^2)."""
    if assignment is None:
        s, t = PULLBACK_VARS.gens(c.A.field)
        assignment = {"b": s ** 2, "beta": t ** 2}
        target = PULLBACK_VARS
    return ConicDiag(*(x.substitute(assignment, target) for x in (c.A, c.B, c.C)))


def q_conic(field=QI) -> ConicDiag:
    return base_change(h_conic(field))


def on_conic(c: ConicDiag, pt) -> bool:
    a0, al0 = (as_ratfunc(x, c.vars, c.A.field) for x in pt)
    return c.residual(a0, al0).is_zero()


@dataclass
class ParamMap:
    """Points (a(v), alpha(v)) of a conic, one for each slope v through a base point."""

    a: RatFunc
    alpha: RatFunc
    base_point: tuple[RatFunc, RatFunc]
    slope: str = "v"

    @property
    def vars(self) -> VarSet:
        return self.a.vars

    def slope_recovered(self) -> RatFunc:
        a0, al0 = self.base_point
        return (self.alpha - al0) / (self.a - a0)


def parametrize(c: ConicDiag, pt, slope: str = "v") -> ParamMap:
    """Second intersection of the line (a0 + w, alpha0 + v*w) with the conic.

    Expanding the conic along the line and using that (a0, alpha0) lies on it
    leaves w * (2(A a0 - B alpha0 v) + w (A - B v^2)) = 0, whose nonzero root is
    w = 2(B alpha0 v - A a0) / (A - B v^2).
    """
    if not on_conic(c, pt):
        raise ValueError("base point is not on the conic")
    vs = c.vars.extend(slope)
    A, B = c.A.embed(vs), c.B.embed(vs)
    a0, al0 = (as_ratfunc(x, c.vars, c.A.field).embed(vs) for x in pt)
    v = RatFunc.var(slope, vs, c.A.field)
    pencil = A - B * v * v
    if pencil.is_zero():
        raise DegeneratePencilError("A - B*v^2 is identically zero")
    w = 2 * (B * al0 * v - A * a0) / pencil
    return ParamMap(a0 + w, al0 + v * w, (a0, al0), slope)


# descent for the fibre over k(b, beta) ------------------------------------


@dataclass
class CandidateTriple:
    P: Poly
    Q: Poly
    R: Poly

    def __iter__(self):
        return iter((self.P, self.Q, self.R))

    def is_zero(self) -> bool:
        return self.P.is_zero() and self.Q.is_zero() and self.R.is_zero()

    def is_coprime(self) -> bool:
        return gcd(gcd(self.P, self.Q), self.R).is_constant()


def descent_identity(P: Poly, Q: Poly, R: Poly) -> Poly:
    """P^2 beta(1-beta^2) - R^2 b(1-b^2) - Q^2 b beta(b^2-beta^2), the cleared fibre equation."""
    b, be = (Poly.var(n, P.vars, P.field) for n in ("b", "beta"))
    return P ** 2 * be * (1 - be ** 2) - R ** 2 * b * (1 - b ** 2) - Q ** 2 * b * be * (b ** 2 - be ** 2)


def reduced_identity(P1: Poly, Q: Poly, R1: Poly) -> Poly:
    """P1^2 b(1-beta^2) - R1^2 beta(1-b^2) - Q^2 (b^2-beta^2), after dividing out b*beta."""
    b, be = (Poly.var(n, P1.vars, P1.field) for n in ("b", "beta"))
    return P1 ** 2 * b * (1 - be ** 2) - R1 ** 2 * be * (1 - b ** 2) - Q ** 2 * (b ** 2 - be ** 2)


@dataclass
class DivisibilityReport:
    b_divides_P: bool
    beta_divides_R: bool
    P1: Poly
    R1: Poly
    reduced_holds: bool
    # second round, read off the reduced identity
    b_divides_R1: bool
    b_divides_Q: bool
    beta_divides_P1: bool
    beta_divides_Q: bool
    b_slice: Poly
    beta_slice: Poly

    @property
    def bbeta_divides_all(self) -> bool:
        return all((self.b_divides_P, self.beta_divides_R, self.b_divides_R1, self.b_divides_Q,
                    self.beta_divides_P1, self.beta_divides_Q))


def forced_divisibility(t: CandidateTriple) -> DivisibilityReport:
    P, Q, R = t
    if not descent_identity(P, Q, R).is_zero():
        raise NotASolutionError("triple does not satisfy the cleared fibre equation")
    vs = P.vars
    b = Poly.var("b", vs, P.field)
    be = Poly.var("beta", vs, P.field)
    b_div_P = P.specialize({"b": 0}).is_zero()
    be_div_R = R.specialize({"beta": 0}).is_zero()
    P1 = P.divide_exact(b) if b_div_P else P
    R1 = R.divide_exact(be) if be_div_R else R
    reduced = reduced_identity(P1, Q, R1)
    # b = 0 leaves R1(0,beta)^2 beta - Q(0,beta)^2 beta^2; beta = 0 leaves the mirror image
    b_slice = reduced.specialize({"b": 0})
    beta_slice = reduced.specialize({"beta": 0})
    return DivisibilityReport(
        b_divides_P=b_div_P,
        beta_divides_R=be_div_R,
        P1=P1,
        R1=R1,
        reduced_holds=reduced.is_zero(),
        b_divides_R1=R1.specialize({"b": 0}).is_zero(),
        b_divides_Q=Q.specialize({"b": 0}).is_zero(),
        beta_divides_P1=P1.specialize({"beta": 0}).is_zero(),
        beta_divides_Q=Q.specialize({"beta": 0}).is_zero(),
        b_slice=b_slice,
        beta_slice=beta_slice,
    )


@dataclass
class ParityCase:
    """Top coefficient of r(z)^2 z - q(z)^2 z^2 when deg r = m, deg q = n (-1 for zero)."""

    deg_r: int
    deg_q: int
    top_degree: int
    top_coefficient: Poly

    @property
    def forces_zero(self) -> bool:
        # the top coefficient is +-(leading coeff)^2, nonzero by assumption
        if self.deg_r < 0 and self.deg_q < 0:
            return True
        tc = self.top_coefficient
        if len(tc.terms) != 1:
            return False
        (m, c), = tc.terms.items()
        return all(e % 2 == 0 for e in m) and sum(m) == 2 and bool(c)


def parity_forcing(dmax: int, field=QI) -> list[ParityCase]:
    """Check that r(z)^2 z = q(z)^2 z^2 forces r = q = 0 for degrees up to dmax.

    The coefficients of r and q are indeterminates r0..r_d, q0..q_d.  For every
    pair of exact degrees (m, n) we compute the coefficient of the highest
    power of z in r^2 z - q^2 z^2.  The two summands have degrees 2m+1 and
    2n+2, which never coincide, so that coefficient is r_m^2 or -q_n^2, a
    nonzero square; the equation then cannot hold unless both r and q vanish.
    Over k = k(sqrt(-1)) this replaces any sign argument: r^2 z + q^2 z^2 = 0
    would be handled identically.

    Applied with z = beta to the b = 0 slice of the reduced identity
    (r = R1(0, beta), q = Q(0, beta)) and with z = b to the beta = 0 slice
    (r = P1(b, 0), q = Q(b, 0)).
    """
    names = [f"r{k}" for k in range(dmax + 1)] + [f"q{k}" for k in range(dmax + 1)]
    cv = VarSet(names)
    gens = cv.gens(field)
    rs, qs = gens[: dmax + 1], gens[dmax + 1:]
    zero = Poly.zero(cv, field)
    cases = []
    for m in range(-1, dmax + 1):
        for n in range(-1, dmax + 1):
            r = rs[: m + 1]
            q = qs[: n + 1]
            top = max(2 * m + 1 if m >= 0 else -1, 2 * n + 2 if n >= 0 else -1)
            coeff = zero
            if top >= 0:
                # coefficient of z^top in r^2 z
                for i in range(len(r)):
                    k = top - 1 - i
                    if 0 <= k < len(r):
                        coeff = coeff + r[i] * r[k]
                for i in range(len(q)):
                    k = top - 2 - i
                    if 0 <= k < len(q):
                        coeff = coeff - q[i] * q[k]
            cases.append(ParityCase(m, n, top, coeff))
    return cases
