"""Exact rational feasibility: is a vector a nonnegative combination of
generators?

Phase-one simplex over ``fractions.Fraction`` with Bland's rule (lowest
eligible index enters, lowest index leaves on ratio ties), so the decision
is exact and the pivot sequence deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import DomainError


def is_in_cone(v: Sequence, gens: Sequence[Sequence]) -> bool:
    """True iff v = sum(lambda_k * g_k) has a solution with all lambda_k >= 0."""
    m = len(v)
    for g in gens:
        if len(g) != m:
            raise DomainError("cone membership: dimension mismatch")
    target = [Fraction(x) for x in v]
    cols = [[Fraction(x) for x in g] for g in gens]
    if all(x == 0 for x in target):
        return True
    if not cols:
        return False
    return _phase_one(cols, target) == 0


def nonneg_solution_on_support(
    v: Sequence, gens: Sequence[Sequence], support: Sequence[int]
) -> list[Fraction] | None:
    """Try to certify membership using only the generators in ``support``:
    Gaussian elimination for a particular solution (free columns zero),
    accepted only when exactly solving the system with all coefficients
    nonnegative.  Returns the certificate or None."""
    m = len(v)
    sup = list(support)
    rows = [[Fraction(gens[k][r]) for k in sup] + [Fraction(v[r])] for r in range(m)]
    ncols = len(sup)
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append((r, c))
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if rows[i][ncols] != 0:
            return None  # inconsistent on this support
    x = [Fraction(0)] * ncols
    for (ri, ci) in pivots:
        x[ci] = rows[ri][ncols]
    if any(val < 0 for val in x):
        return None
    out = [Fraction(0)] * len(gens)
    for val, k in zip(x, sup):
        out[k] = val
    # paranoid exact recheck
    for rix in range(m):
        if sum(out[k] * Fraction(gens[k][rix]) for k in sup) != Fraction(v[rix]):
            return None
    return out


def _phase_one(cols: list[list[Fraction]], target: list[Fraction]) -> Fraction:
    """Minimum total artificial mass for G*lambda = v, lambda >= 0; zero
    exactly when the system is feasible."""
    m = len(target)
    n = len(cols)
    # flip rows so the right-hand side is nonnegative
    sign = [1 if target[r] >= 0 else -1 for r in range(m)]
    a = [[sign[r] * cols[k][r] for k in range(n)] for r in range(m)]
    b = [sign[r] * target[r] for r in range(m)]
    # tableau columns: n structural + m artificial
    basis = [n + r for r in range(m)]
    rows = []
    for r in range(m):
        art = [Fraction(0)] * m
        art[r] = Fraction(1)
        rows.append(a[r] + art + [b[r]])
    total = n + m

    def reduced_cost(col: int) -> Fraction:
        # cost vector: 1 on artificials, 0 on structurals
        z = Fraction(0)
        for r in range(m):
            if basis[r] >= n:
                z += rows[r][col]
        c = Fraction(1) if col >= n else Fraction(0)
        return c - z

    while True:
        enter = -1
        for col in range(total):
            if col in basis:
                continue
            if reduced_cost(col) < 0:
                enter = col
                break
        if enter < 0:
            break
        leave = -1
        best = None
        for r in range(m):
            coef = rows[r][enter]
            if coef > 0:
                ratio = rows[r][total] / coef
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    best = ratio
                    leave = r
        if leave < 0:
            raise DomainError("phase-one simplex unbounded; input inconsistent")
        pv = rows[leave][enter]
        rows[leave] = [x / pv for x in rows[leave]]
        for r in range(m):
            if r != leave and rows[r][enter] != 0:
                f = rows[r][enter]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[leave])]
        basis[leave] = enter

    obj = Fraction(0)
    for r in range(m):
        if basis[r] >= n:
            obj += rows[r][total]
    return obj
