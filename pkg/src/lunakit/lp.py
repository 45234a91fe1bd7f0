"""Exact feasibility of small rational linear systems by Fourier-Motzkin elimination.

Systems here have at most a couple of dozen variables and constraints, so
elimination with duplicate removal stays tiny and needs no floating point.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Row = tuple[tuple[Fraction, ...], Fraction]  # (coefficients, rhs) meaning coeffs . x >= rhs


def _normalize(row: Row) -> Row:
    coeffs, rhs = row
    lead = next((abs(c) for c in coeffs if c != 0), None)
    if lead is None:
        return coeffs, rhs
    return tuple(c / lead for c in coeffs), rhs / lead


def feasible_point(a: Sequence[Sequence[int | Fraction]], b: Sequence[int | Fraction],
                   nvars: int | None = None) -> list[Fraction] | None:
    """Return x with a x >= b componentwise, or None when the system is infeasible."""
    if nvars is None:
        nvars = len(a[0]) if a else 0
    rows: set[Row] = {
        _normalize((tuple(Fraction(c) for c in r), Fraction(bv))) for r, bv in zip(a, b)
    }
    stages: list[list[Row]] = []
    for j in range(nvars):
        current = list(rows)
        stages.append(current)
        pos = [r for r in current if r[0][j] > 0]
        neg = [r for r in current if r[0][j] < 0]
        nxt = {r for r in current if r[0][j] == 0}
        for p in pos:
            for n in neg:
                fp, fn = p[0][j], -n[0][j]
                coeffs = tuple(fn * x + fp * y for x, y in zip(p[0], n[0]))
                nxt.add(_normalize((coeffs, fn * p[1] + fp * n[1])))
        rows = nxt
    for coeffs, rhs in rows:
        if rhs > 0:  # all coefficients are zero here
            return None
    x = [Fraction(0)] * nvars
    for j in reversed(range(nvars)):
        lo: Fraction | None = None
        hi: Fraction | None = None
        for coeffs, rhs in stages[j]:
            c = coeffs[j]
            if c == 0:
                continue
            rest = rhs - sum(coeffs[k] * x[k] for k in range(j + 1, nvars))
            bound = rest / c
            if c > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        if lo is not None:
            x[j] = lo
        elif hi is not None:
            x[j] = min(hi, Fraction(0))
    return x


def positive_solution(m: Sequence[Sequence[int]], ncols: int) -> list[int] | None:
    """Integer n with every n_j >= 1 and m n >= 0, or None.

    By homogeneity this is the same as asking for a strictly positive rational
    solution. The witness is scaled to coprime integers.
    """
    a: list[list[Fraction]] = [[Fraction(x) for x in row] for row in m]
    b: list[Fraction] = [Fraction(0)] * len(a)
    for j in range(ncols):
        a.append([Fraction(int(k == j)) for k in range(ncols)])
        b.append(Fraction(1))
    x = feasible_point(a, b, ncols)
    if x is None:
        return None
    from math import gcd, lcm
    den = lcm(*(v.denominator for v in x)) if x else 1
    ints = [int(v * den) for v in x]
    g = gcd(*ints) if ints else 1
    return [v // g for v in ints] if g else ints
