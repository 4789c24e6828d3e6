"""Bounded search for polynomial points on the generic fibre over F_p.

We look for (P, Q, R) in F_p[b, beta], total degree <= dmax, not all zero,
up to a common scalar, with

    P^2 beta(1 - beta^2) = R^2 b(1 - b^2) + Q^2 b beta(b^2 - beta^2).

Two residue tests are applied before anything is expanded: setting b = 0
kills every term but P(0, beta)^2 beta(1 - beta^2), so P(0, beta) = 0; setting
beta = 0 likewise forces R(b, 0) = 0.  Candidates are generated directly
inside those linear subspaces and counted against the full projective space.
Scalar multiples are removed by requiring the first nonzero coordinate to be 1.
The surviving candidates are expanded in numpy batches.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .arith import PrimeField
from .conic import BASE_VARS
from .poly import Poly

__all__ = ["BudgetExceeded", "SearchReport", "no_solution_search", "MAX_CANDIDATES", "monomials"]

MAX_CANDIDATES = 10 ** 9
_CHUNK = 1 << 15

Mono = tuple[int, int]


class BudgetExceeded(RuntimeError):
    def __init__(self, estimate: int):
        super().__init__(f"search would test {estimate} candidates (limit {MAX_CANDIDATES})")
        self.estimate = estimate


@dataclass
class SearchReport:
    prime: int
    dmax: int
    candidates_pruned: int
    candidates_tested: int
    solutions: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "prime": self.prime,
            "dmax": self.dmax,
            "candidates_pruned": self.candidates_pruned,
            "candidates_tested": self.candidates_tested,
            "solutions": self.solutions,
        }


def monomials(dmax: int) -> list[Mono]:
    """Exponents (i, j) of b^i beta^j with i + j <= dmax, graded-lex descending."""
    ms = [(i, d - i) for d in range(dmax + 1) for i in range(d + 1)]
    return sorted(ms, key=lambda m: (sum(m), m), reverse=True)


# fixed multipliers of P^2, R^2, Q^2 as {(i, j): coefficient}
FIBRE_MULTIPLIERS = {
    "P": {(0, 1): 1, (0, 3): -1},
    "R": {(1, 0): 1, (3, 0): -1},
    "Q": {(3, 1): 1, (1, 3): -1},
}


def _square_into(acc: dict, coeffs: np.ndarray, monos: list[Mono], mult: dict, sign: int, p: int):
    """acc += sign * (sum_k coeffs[:, k] b^i beta^j)^2 * mult, mod p."""
    n = len(monos)
    for x in range(n):
        cx = coeffs[:, x]
        for y in range(x, n):
            prod = cx * coeffs[:, y] % p
            if x != y:
                prod = 2 * prod % p
            mx, my = monos[x], monos[y]
            for (mi, mj), c in mult.items():
                key = (mx[0] + my[0] + mi, mx[1] + my[1] + mj)
                term = prod * ((sign * c) % p) % p
                if key in acc:
                    acc[key] = (acc[key] + term) % p
                else:
                    acc[key] = term


def _evaluate(batch: np.ndarray, layout, p: int, multipliers) -> np.ndarray:
    """Boolean mask of rows whose cleared fibre equation vanishes identically."""
    acc: dict = {}
    for name, sign in (("P", 1), ("R", -1), ("Q", -1)):
        cols, monos = layout[name]
        if cols:
            _square_into(acc, batch[:, cols], monos, multipliers[name], sign, p)
    ok = np.ones(batch.shape[0], dtype=bool)
    for arr in acc.values():
        ok &= arr == 0
    return ok


def _layout(dmax: int, prune: bool):
    """Free monomials per polynomial and their column positions in a candidate vector."""
    all_m = monomials(dmax)
    free = {
        "P": [m for m in all_m if not prune or m[0] >= 1],
        "Q": list(all_m),
        "R": [m for m in all_m if not prune or m[1] >= 1],
    }
    layout, col = {}, 0
    for name in ("P", "Q", "R"):
        monos = free[name]
        layout[name] = (list(range(col, col + len(monos))), monos)
        col += len(monos)
    return layout, col


def _projective_count(p: int, dim: int) -> int:
    return (p ** dim - 1) // (p - 1)


def _work_units(p: int, dim: int):
    """(pivot, start, stop): pivot coordinate is 1, earlier ones 0, tail indexes [start, stop)."""
    units = []
    for k in range(dim):
        total = p ** (dim - k - 1)
        for start in range(0, total, _CHUNK):
            units.append((k, start, min(start + _CHUNK, total)))
    return units


def _run_unit(unit, p: int, dim: int, layout, multipliers):
    k, start, stop = unit
    tail = dim - k - 1
    idx = np.arange(start, stop, dtype=np.int64)
    batch = np.zeros((stop - start, dim), dtype=np.int64)
    batch[:, k] = 1
    for pos in range(dim - 1, k, -1):
        batch[:, pos] = idx % p
        idx //= p
    assert tail >= 0
    mask = _evaluate(batch, layout, p, multipliers)
    return stop - start, [tuple(int(v) for v in row) for row in batch[mask]]


def _as_poly(vec, cols, monos, fld) -> Poly:
    terms = {m: vec[c] for c, m in zip(cols, monos)}
    return Poly(terms, BASE_VARS, fld)


def no_solution_search(p: int, dmax: int, threads: int = 1, *, prune: bool = True,
                       multipliers=None) -> SearchReport:
    """Exhaustively test every candidate triple of total degree <= dmax over F_p.

    ``prune=False`` skips the residue tests (only valid for the fibre
    equation itself anyway) and is there to cross-check them.  ``multipliers``
    swaps in other fixed factors for P^2, R^2, Q^2; pruning is then disabled.
    """
    fld = PrimeField(p)  # rejects p that is not prime or not 1 mod 4
    if dmax < 0:
        raise ValueError("dmax must be non-negative")
    if p >= 1 << 31:
        raise BudgetExceeded(p)
    if multipliers is None:
        multipliers = FIBRE_MULTIPLIERS
    else:
        prune = False
    layout, dim = _layout(dmax, prune)
    full_dim = 3 * len(monomials(dmax))
    tested = _projective_count(p, dim)
    if tested > MAX_CANDIDATES:
        raise BudgetExceeded(tested)
    units = _work_units(p, dim)
    threads = max(1, int(threads))
    if threads == 1:
        results = [_run_unit(u, p, dim, layout, multipliers) for u in units]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda u: _run_unit(u, p, dim, layout, multipliers), units))
    count = sum(n for n, _ in results)
    assert count == tested
    vectors = sorted(v for _, sols in results for v in sols)
    solutions = []
    for vec in vectors:
        solutions.append({
            name: _as_poly(vec, *layout[name], fld).to_dict() for name in ("P", "Q", "R")
        })
    return SearchReport(
        prime=p,
        dmax=dmax,
        candidates_pruned=_projective_count(p, full_dim) - tested,
        candidates_tested=tested,
        solutions=solutions,
    )
