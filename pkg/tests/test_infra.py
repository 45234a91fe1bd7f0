"""Exact linear algebra, the Fourier-Motzkin feasibility test and Hilbert bases."""
from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lunakit import linalg
from lunakit.hilbert import UnboundedGuard, budget_from_env, hilbert_basis
from lunakit.lp import feasible_point, positive_solution

small = st.integers(-3, 3)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_solve_and_kernel(nr, nc, data):
    a = [data.draw(st.lists(small, min_size=nc, max_size=nc)) for _ in range(nr)]
    x = data.draw(st.lists(small, min_size=nc, max_size=nc))
    b = linalg.matvec(a, x)
    sol = linalg.solve(a, b)
    assert sol is not None and linalg.matvec(a, sol) == b
    for v in linalg.kernel(a, nc):
        assert all(c == 0 for c in linalg.matvec(a, v))
    assert linalg.rank(a) + len(linalg.kernel(a, nc)) == nc


def _brute_feasible(a, b, box=4):
    return any(all(sum(r * x for r, x in zip(row, pt)) >= bv for row, bv in zip(a, b))
               for pt in product(range(-box, box + 1), repeat=len(a[0])))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 2), st.data())
def test_feasible_point_agrees_with_grid(n, data):
    m = data.draw(st.integers(1, 4))
    a = [data.draw(st.lists(small, min_size=n, max_size=n)) for _ in range(m)]
    b = data.draw(st.lists(small, min_size=m, max_size=m))
    x = feasible_point(a, b, n)
    if x is not None:
        assert all(sum(Fraction(r) * v for r, v in zip(row, x)) >= bv for row, bv in zip(a, b))
    if _brute_feasible(a, b):
        assert x is not None


def test_positive_solution():
    assert positive_solution([[1, -1]], 2) is not None
    assert positive_solution([[-1, -1]], 2) is None
    sol = positive_solution([[2, -1], [-1, 2]], 2)
    assert sol and all(v >= 1 for v in sol)


def _brute_hilbert(dim, ineqs, eqs, box):
    def ok(v):
        return all(sum(a * x for a, x in zip(l, v)) >= 0 for l in ineqs) and \
            all(sum(a * x for a, x in zip(m, v)) == 0 for m in eqs)
    pts = {v for v in product(range(box + 1), repeat=dim) if any(v) and ok(v)}
    return {v for v in pts if not any(
        w != v and all(a <= b for a, b in zip(w, v)) and tuple(b - a for a, b in zip(w, v)) in pts for w in pts)}


@pytest.mark.parametrize("dim, ineqs, eqs", [
    (2, [[2, -1]], []),
    (2, [[-1, 3], [3, -1]], []),
    (3, [[1, -1, 0]], [[1, 1, -2]]),
    (3, [[1, 1, -1], [-1, 2, 0]], []),
])
def test_hilbert_basis_vs_brute(dim, ineqs, eqs):
    got = hilbert_basis(dim, ineqs, eqs)
    assert set(got) == _brute_hilbert(dim, ineqs, eqs, box=6)
    assert got == sorted(got, key=lambda v: (sum(v), v))


def test_budget(monkeypatch):
    monkeypatch.setenv("LUNAKIT_BUDGET", "7")
    assert budget_from_env() == 7
    monkeypatch.delenv("LUNAKIT_BUDGET")
    assert budget_from_env(11) == 11
    with pytest.raises(UnboundedGuard):
        hilbert_basis(4, [[7, -3, 5, -11], [-2, 9, -13, 4]], budget=3)
