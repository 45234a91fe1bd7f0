"""The order <=_Sigma on N Delta: coverings, minuscule elements, low triples.

E <=_Sigma F means F - E is a nonnegative integer combination of spherical
roots, each seen in Z Delta through the full pairing. Since Sigma maps
injectively into Z Delta the coefficients are unique.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from . import linalg
from .lp import feasible_point
from .sphsys import DeltaVector, SigmaVector, SphericalSystem

DEFAULT_HEIGHT_BOUND = 2


class BoundTooSmall(ValueError):
    pass


@dataclass(frozen=True)
class CoveringDifference:
    gamma: SigmaVector
    delta_form: DeltaVector
    pos: DeltaVector
    neg: DeltaVector
    height_pos: int


@dataclass(frozen=True)
class Triple:
    D: DeltaVector
    E: DeltaVector
    F: DeltaVector
    gamma: SigmaVector
    is_low: bool
    is_fundamental: bool


def _matrix(sys: SphericalSystem) -> list[list[int]]:
    """|Delta| x |Sigma| matrix whose column k is sigma_k over the colors."""
    return [list(c.pairing) for c in sys.colors]


def sigma_coordinates(sys: SphericalSystem, v: Sequence[int]) -> list[Fraction] | None:
    """The unique a with v = sum a_k sigma_k in Z Delta, or None if v is not in Q Sigma."""
    if not sys.sigma:
        return [] if not any(v) else None
    return linalg.solve(_matrix(sys), list(v))


def sigma_difference(sys: SphericalSystem, e: DeltaVector, f: DeltaVector) -> SigmaVector | None:
    """Coefficients of f - e over Sigma when e <=_Sigma f, else None."""
    a = sigma_coordinates(sys, [y - x for x, y in zip(e.coeffs, f.coeffs)])
    if a is None or not all(x.denominator == 1 and x >= 0 for x in a):
        return None
    return SigmaVector(tuple(int(x) for x in a))


def leq_sigma(sys: SphericalSystem, e: DeltaVector, f: DeltaVector) -> bool:
    return sigma_difference(sys, e, f) is not None


def _positive_functional(sys: SphericalSystem) -> tuple[list[Fraction], list[Fraction]]:
    """w >= 0 on the colors with w(sigma_k) >= 1 for every k, and the values w(sigma_k).

    It exists because no nonzero element of N Sigma is <= 0 in every color
    coordinate; the down-set of E then has sum a_k w(sigma_k) <= w(E).
    """
    return _positive_functional_cached(tuple(tuple(r) for r in _matrix(sys)))


@lru_cache(maxsize=256)
def _positive_functional_cached(m: tuple[tuple[int, ...], ...]):
    ncol = len(m)
    nsig = len(m[0]) if m else 0
    rows, rhs = [], []
    for d in range(ncol):
        rows.append([int(i == d) for i in range(ncol)])
        rhs.append(0)
    for k in range(nsig):
        rows.append([m[d][k] for d in range(ncol)])
        rhs.append(1)
    w = feasible_point(rows, rhs, ncol)
    if w is None:
        raise RuntimeError("no positive functional on N Sigma; the system is degenerate")
    vals = [sum(w[d] * m[d][k] for d in range(ncol)) for k in range(nsig)]
    return w, vals


def down_set(sys: SphericalSystem, e: DeltaVector) -> list[tuple[SigmaVector, DeltaVector]]:
    """All (a, F) with F = E - sum a_k sigma_k in N Delta, a in N Sigma."""
    nsig = len(sys.sigma)
    if nsig == 0:
        return [(SigmaVector(()), e)]
    cols = sys.pairing_columns
    w, vals = _positive_functional(sys)
    budget = sum(wd * x for wd, x in zip(w, e.coeffs))
    out: list[tuple[SigmaVector, DeltaVector]] = []
    a = [0] * nsig

    def rec(k: int, left: Fraction, cur: list[int]) -> None:
        if k == nsig:
            if all(x >= 0 for x in cur):
                out.append((SigmaVector(tuple(a)), DeltaVector(tuple(cur))))
            return
        n = 0
        while n * vals[k] <= left:
            a[k] = n
            rec(k + 1, left - n * vals[k], cur)
            cur = [x - y for x, y in zip(cur, cols[k])]
            n += 1
        a[k] = 0

    rec(0, budget, list(e.coeffs))
    out.sort(key=lambda t: t[0].coeffs)
    return out


def is_minuscule(sys: SphericalSystem, e: DeltaVector) -> bool:
    """True iff no F in N Delta lies strictly below E."""
    return len(down_set(sys, e)) == 1


def strictly_below_witness(sys: SphericalSystem, e: DeltaVector) -> tuple[SigmaVector, DeltaVector] | None:
    """Some F < E together with E - F over Sigma, preferring small differences."""
    below = [t for t in down_set(sys, e) if any(t[0].coeffs)]
    if not below:
        return None
    return min(below, key=lambda t: (sum(t[0].coeffs), t[0].coeffs))


def _vectors_of_height(n: int, h: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        if h == 0:
            yield ()
        return
    if n == 1:
        yield (h,)
        return
    for first in range(h, -1, -1):
        for rest in _vectors_of_height(n - 1, h - first):
            yield (first,) + rest


def _covers(sys: SphericalSystem, lo: DeltaVector, a: SigmaVector) -> bool:
    """No G with lo < G < lo + sum a_k sigma_k."""
    cols = sys.pairing_columns
    for b in product(*(range(x + 1) for x in a.coeffs)):
        if not any(b) or b == a.coeffs:
            continue
        g = list(lo.coeffs)
        for k, bk in enumerate(b):
            if bk:
                g = [x + bk * y for x, y in zip(g, cols[k])]
        if all(x >= 0 for x in g):
            return False
    return True


def covering_differences(sys: SphericalSystem, height_bound: int = DEFAULT_HEIGHT_BOUND) -> list[CoveringDifference]:
    """All gamma in N Sigma with height(gamma+) <= bound such that gamma+ covers gamma-."""
    if height_bound < 1:
        raise BoundTooSmall("the height bound must be at least 1")
    n = len(sys.colors)
    out: list[CoveringDifference] = []
    if not sys.sigma:
        return out
    for h in range(1, height_bound + 1):
        for top in _vectors_of_height(n, h):
            pos = DeltaVector(top)
            for a, f in down_set(sys, pos):
                if not any(a.coeffs):
                    continue
                if any(x and y for x, y in zip(top, f.coeffs)):
                    continue
                if _covers(sys, f, a):
                    form = DeltaVector(tuple(x - y for x, y in zip(top, f.coeffs)))
                    out.append(CoveringDifference(a, form, pos, f, h))
    out.sort(key=lambda c: (c.height_pos, c.gamma.coeffs))
    for d in range(n):
        single = DeltaVector(tuple(int(i == d) for i in range(n)))
        if not is_minuscule(sys, single) and not any(c.pos == single for c in out):
            raise BoundTooSmall(f"no covering below the non-minuscule color {sys.color_names[d]}")
    return out


def _add(x: DeltaVector, y: DeltaVector) -> DeltaVector:
    return DeltaVector(tuple(a + b for a, b in zip(x.coeffs, y.coeffs)))


def _is_single(v: DeltaVector) -> bool:
    return sum(v.coeffs) == 1 and all(x >= 0 for x in v.coeffs)


def low_triples_from(sys: SphericalSystem, d: DeltaVector, e: DeltaVector) -> list[Triple]:
    """All F <= D + E such that no (D', E') != (D, E) below (D, E) still dominates F."""
    total = _add(d, e)
    lower_pairs = [(_a.coeffs, dd, _b.coeffs, ee)
                   for _a, dd in down_set(sys, d) for _b, ee in down_set(sys, e)
                   if any(_a.coeffs) or any(_b.coeffs)]
    fund = _is_single(d) and _is_single(e)
    out = []
    for a, f in down_set(sys, total):
        dominated = any(leq_sigma(sys, f, _add(dd, ee)) for _, dd, _, ee in lower_pairs)
        if not dominated:
            out.append(Triple(d, e, f, a, True, fund))
    out.sort(key=lambda t: t.gamma.coeffs)
    return out


def fundamental_low_triples(sys: SphericalSystem, filter_sigma: int | None = None) -> list[Triple]:
    """Low triples (D, E, F) with D, E single colors, D before or equal to E.

    ``filter_sigma`` is a 0-based index into Sigma; when given, only triples
    whose gamma involves that spherical root are kept. The trivial triple
    (D, E, D+E) has gamma = 0 and is dropped by any filter.
    """
    n = len(sys.colors)
    units = [DeltaVector(tuple(int(i == k) for i in range(n))) for k in range(n)]
    out = []
    for i in range(n):
        for j in range(i, n):
            for t in low_triples_from(sys, units[i], units[j]):
                if filter_sigma is None or t.gamma.coeffs[filter_sigma] > 0:
                    out.append(t)
    return out
