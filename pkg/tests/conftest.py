import random

import pytest

from unirational.arith import QI, GaussRat
from unirational.funcfield import CURVE_VARS, FieldElem, normal_form
from unirational.poly import Poly, VarSet

ACCEPTANCE_LINES: list[str] = []


def random_gauss(rng: random.Random, bound: int = 9, imag: bool = True) -> GaussRat:
    def q():
        return rng.randint(-bound, bound), rng.randint(1, bound)

    re_n, re_d = q()
    if not imag:
        return GaussRat(f"{re_n}/{re_d}")
    im_n, im_d = q()
    return GaussRat(f"{re_n}/{re_d}", f"{im_n}/{im_d}")


def random_poly(rng: random.Random, vars: VarSet, max_deg: int = 4, nterms: int = 4, field=QI,
                coef=None) -> Poly:
    n = len(vars)
    terms = {}
    for _ in range(nterms):
        left = rng.randint(0, max_deg)
        m = [0] * n
        for _ in range(left):
            m[rng.randrange(n)] += 1
        c = coef(rng) if coef else random_gauss(rng, imag=rng.random() < 0.3)
        terms[tuple(m)] = c
    return Poly(terms, vars, field)


def random_curve_elem(rng: random.Random, max_deg: int = 3, nterms: int = 3):
    return normal_form(random_poly(rng, CURVE_VARS, max_deg, nterms,
                                   coef=lambda r: GaussRat(r.randint(-5, 5), r.randint(-2, 2))))


def random_field_elem(rng: random.Random) -> FieldElem:
    num = random_curve_elem(rng)
    den = random_curve_elem(rng)
    while den.is_zero():
        den = random_curve_elem(rng)
    return FieldElem(num, den)


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def report_criterion():
    def record(number: int, text: str, ok: bool, seconds: float):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {text} ({seconds:.2f}s)")

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
