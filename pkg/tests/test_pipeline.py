import json
import random
from fractions import Fraction

import mpmath
import pytest

from unirational.arith import GaussRat
from unirational.identities import h_polynomial
from unirational.pipeline import (
    MAP_VARS,
    BadSampleError,
    UnirationalMap,
    build_phi,
    evaluate_phi,
    exact_rank,
    fibre_check,
    jacobian_rank,
    recover_v,
    verify_on_H,
)
from unirational.poly import Poly
from unirational.ratfunc import RatFunc

PHI = build_phi()


def phi_oracle(s, t, v):
    """Second intersection of the slope-v line through (s, t), done in plain Fractions."""
    s, t, v = Fraction(s), Fraction(t), Fraction(v)
    A = t ** 2 * (1 - t ** 4)
    B = s ** 2 * (1 - s ** 4)
    C = s ** 2 * t ** 2 * (s ** 4 - t ** 4)
    # substitute a = s + w, alpha = t + v w into A a^2 - B alpha^2 - C and solve the linear factor
    lin = 2 * A * s - 2 * B * t * v
    quad = A - B * v * v
    assert A * s * s - B * t * t - C == 0
    w = -lin / quad
    return s + w, t + v * w, s * s, t * t


def h_value(a, al, b, be):
    return a * a * be * (1 - be * be) - al * al * b * (1 - b * b) - b * be * (b * b - be * be)


def test_reference_point():
    img = evaluate_phi(PHI, (2, 3, 1))
    assert img == (GaussRat("-20/11"), GaussRat("-9/11"), GaussRat(4), GaussRat(9))
    assert tuple(x.re for x in img) == phi_oracle(2, 3, 1)
    assert h_value(*phi_oracle(2, 3, 1)) == 0


def test_matches_oracle_on_random_points():
    rng = random.Random(3)
    done = 0
    while done < 40:
        pt = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(3))
        try:
            img = evaluate_phi(PHI, pt)
        except BadSampleError:
            continue
        want = phi_oracle(*pt)
        assert tuple(x.re for x in img) == want
        assert h_value(*want) == 0
        done += 1


def test_slope_zero_gives_reflected_base_point():
    s, t = (RatFunc.var(n, MAP_VARS) for n in "st")
    at0 = {n: f.substitute({"s": s, "t": t, "v": 0}, MAP_VARS) for n, f in PHI.components()}
    assert at0["a"] == -s and at0["alpha"] == t


def test_lands_on_H():
    rep = verify_on_H(PHI)
    assert rep.ok and rep.label == "phi-on-H"


def test_mutated_map_is_caught():
    num = PHI.alpha.num
    m, c = next(iter(num.terms.items()))
    terms = dict(num.terms)
    terms[m] = -c
    bad = UnirationalMap(PHI.a, RatFunc(Poly(terms, num.vars), PHI.alpha.den), PHI.b, PHI.beta)
    assert not verify_on_H(bad).ok
    assert not recover_v(bad).ok


def test_negated_base_point_also_on_H():
    # (-s, -t) is another rational point of the pulled-back fibre
    s, t, v = (RatFunc.var(n, MAP_VARS) for n in MAP_VARS.names)
    flipped = {n: f.substitute({"s": -s, "t": -t, "v": v}, MAP_VARS) for n, f in PHI.components()}
    assert verify_on_H(UnirationalMap(**flipped)).ok


def test_recover_v():
    assert recover_v(PHI).ok


def test_jacobian_reference_point():
    rep = jacobian_rank(PHI, (2, 3, 1))
    assert rep.rank == 3
    # b = s^2 and beta = t^2 only depend on s and t
    assert rep.matrix[2] == [4, 0, 0]
    assert rep.matrix[3] == [0, 6, 0]
    d = json.loads(rep.to_json())
    assert d["rank"] == 3 and d["cols"] == ["s", "t", "v"]


def test_jacobian_seeded_points():
    rng = random.Random(17)
    hits = 0
    while hits < 8:
        pt = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(3))
        if pt[0] * pt[1] == 0:
            # b = s^2, beta = t^2 are ramified there and the rank genuinely drops
            assert pt[0] * pt[1] != 0 or _rank_or_none(pt) in (None, 0, 1, 2)
            continue
        try:
            rep = jacobian_rank(PHI, pt)
        except BadSampleError:
            continue
        assert rep.rank == 3
        assert rep.matrix[2] == [2 * pt[0], 0, 0]
        hits += 1


def test_jacobian_against_finite_differences():
    pt = (2, 3, 1)
    rep = jacobian_rank(PHI, pt)
    with mpmath.workdps(50):
        h = mpmath.mpf("1e-20")
        for col in range(3):
            hi = [mpmath.mpf(x) for x in pt]
            lo = list(hi)
            hi[col] += h
            lo[col] -= h
            fhi = [mpmath.mpf(x.numerator) / x.denominator for x in phi_oracle(*map(_frac, hi))]
            flo = [mpmath.mpf(x.numerator) / x.denominator for x in phi_oracle(*map(_frac, lo))]
            for row in range(4):
                fd = (fhi[row] - flo[row]) / (2 * h)
                exact = rep.matrix[row][col].re
                assert abs(fd - mpmath.mpf(exact.numerator) / exact.denominator) < mpmath.mpf("1e-15")


def _frac(x):
    man, exp = mpmath.mpf(x).man_exp
    return Fraction(int(man)) * Fraction(2) ** int(exp)


def _rank_or_none(pt):
    try:
        return jacobian_rank(PHI, pt).rank
    except BadSampleError:
        return None


def test_bad_sample():
    with pytest.raises(BadSampleError):
        evaluate_phi(PHI, (2, 2, 1))
    with pytest.raises(BadSampleError):
        jacobian_rank(PHI, (2, 2, 1))


def test_exact_rank():
    assert exact_rank([]) == 0
    assert exact_rank([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]) == 1
    assert exact_rank([[GaussRat(0, 1), GaussRat(1)], [GaussRat(1), GaussRat(0, -1)]]) == 1


def test_fibre_check():
    out = fibre_check(PHI, 2, 3, 1)
    assert out["same_fibre"] and out["on_H"]
    assert len({tuple(img) for img in out["images"]}) == 4


def test_json_roundtrip():
    text = PHI.to_json()
    again = UnirationalMap.from_dict(json.loads(text))
    assert again.to_json() == text
    assert verify_on_H(again).ok
    assert build_phi().to_json() == text


def test_h_polynomial_matches_plain_formula():
    rng = random.Random(1)
    h = h_polynomial()
    for _ in range(20):
        pt = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(4))
        assert h.evaluate(pt) == h_value(*pt)
