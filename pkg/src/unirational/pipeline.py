"""The explicit dominant map P^3 --> H and its exact certificates.

``build_phi`` pulls the conic bundle back along b = s^2, beta = t^2, where the
fibre acquires the rational point (a, alpha) = (s, t), and parametrizes that
fibre by the slope v of lines through it.  The result is four rational
functions of (s, t, v).  It lands on H identically (``verify_on_H``), v is
recovered from the image (``recover_v``, so P^3 --> Q is birational), and its
Jacobian has rank 3 at a rational point (``jacobian_rank``), which certifies
dominance onto the threefold H.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .arith import QI
from .conic import PULLBACK_VARS, on_conic, parametrize, q_conic
from .identities import IdentityReport, h_polynomial
from .poly import Poly, VarSet
from .ratfunc import RatFunc, substitute

__all__ = [
    "MAP_VARS",
    "UnirationalMap",
    "JacobianReport",
    "BadSampleError",
    "build_phi",
    "verify_on_H",
    "recover_v",
    "jacobian_rank",
    "exact_rank",
    "evaluate_phi",
    "fibre_check",
]

MAP_VARS = VarSet(["s", "t", "v"])
COMPONENTS = ("a", "alpha", "b", "beta")


class BadSampleError(ValueError):
    """A denominator vanishes at the requested point."""


@dataclass
class UnirationalMap:
    a: RatFunc
    alpha: RatFunc
    b: RatFunc
    beta: RatFunc

    def components(self) -> list[tuple[str, RatFunc]]:
        return [(n, getattr(self, n)) for n in COMPONENTS]

    def as_assignment(self) -> dict[str, RatFunc]:
        return dict(self.components())

    def to_dict(self) -> dict:
        out = {"vars": list(MAP_VARS.names)}
        for name, f in self.components():
            out[name] = f.to_dict(reduce=True)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data, field=QI) -> UnirationalMap:
        return cls(*(RatFunc.from_dict(data[n], field) for n in COMPONENTS))


def build_phi(field=QI) -> UnirationalMap:
    q = q_conic(field)
    s, t = (RatFunc.var(n, PULLBACK_VARS, field) for n in ("s", "t"))
    assert on_conic(q, (s, t))
    pm = parametrize(q, (s, t), slope="v")
    assert pm.vars == MAP_VARS
    sv, tv = (Poly.var(n, MAP_VARS, field) for n in ("s", "t"))
    return UnirationalMap(pm.a, pm.alpha, RatFunc(sv ** 2), RatFunc(tv ** 2))


def verify_on_H(phi: UnirationalMap) -> IdentityReport:
    """Substitute phi into the H-polynomial; passes iff the result is exactly zero."""
    w = substitute(h_polynomial(phi.a.field), phi.as_assignment(), MAP_VARS)
    return IdentityReport("phi-on-H", w)


def recover_v(phi: UnirationalMap) -> IdentityReport:
    """(alpha - t)/(a - s) = v, so the slope is a rational function of the image."""
    s, t, v = (RatFunc.var(n, MAP_VARS, phi.a.field) for n in MAP_VARS.names)
    w = (phi.alpha - t) / (phi.a - s) - v
    return IdentityReport("recover-v", w)


def evaluate_phi(phi: UnirationalMap, pt) -> tuple:
    """Exact image of (s, t, v); BadSampleError if a denominator vanishes."""
    field = phi.a.field
    pt = tuple(field(x) for x in pt)
    out = []
    for name, f in phi.components():
        try:
            out.append(f.evaluate(pt))
        except ZeroDivisionError:
            raise BadSampleError(f"denominator of {name} vanishes at {[str(x) for x in pt]}") from None
    return tuple(out)


def exact_rank(rows) -> int:
    """Rank over an exact field by Gaussian elimination."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    rank, ncols = 0, len(m[0])
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][col]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                f = m[r][col] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


@dataclass
class JacobianReport:
    point: tuple
    matrix: list[list]
    rank: int

    def to_dict(self) -> dict:
        return {
            "point": [x.encode() for x in self.point],
            "rows": list(COMPONENTS),
            "cols": list(MAP_VARS.names),
            "matrix": [[x.encode() for x in row] for row in self.matrix],
            "rank": self.rank,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def jacobian_rank(phi: UnirationalMap, pt) -> JacobianReport:
    field = phi.a.field
    pt = tuple(field(x) for x in pt)
    evaluate_phi(phi, pt)
    matrix = []
    for name, f in phi.components():
        row = []
        for var in MAP_VARS.names:
            try:
                row.append(f.diff(var).evaluate(pt))
            except ZeroDivisionError:
                raise BadSampleError(f"d{name}/d{var} has a pole at the point") from None
        matrix.append(row)
    return JacobianReport(pt, matrix, exact_rank(matrix))


def fibre_check(phi: UnirationalMap, s, t, v) -> dict:
    """Push (+-s, +-t, v) through phi: all four images must share (b, beta) and lie on H.

    The pullback b = s^2, beta = t^2 has degree 4, and these are its four
    preimages of one point of the base.
    """
    field = phi.a.field
    h = h_polynomial(field)
    images = []
    for es in (1, -1):
        for et in (1, -1):
            images.append(evaluate_phi(phi, (field(s) * es, field(t) * et, field(v))))
    base = {(img[2], img[3]) for img in images}
    return {
        "images": images,
        "same_fibre": len(base) == 1,
        "on_H": all(not h.evaluate(img) for img in images),
    }
