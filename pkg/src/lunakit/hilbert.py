"""Hilbert bases of rational polyhedral cones inside the nonnegative orthant.

The cone is cut out of N^d one linear inequality at a time. Each cut is a
completion in the style of Pottier: start from the Hilbert basis of the
previous cone, form critical pairs p + n of elements on opposite sides of the
new hyperplane, reduce them sign-compatibly and keep nonzero remainders. When
no pair is left, the elements on the nonnegative side generate the new cone.
"""
from __future__ import annotations

import os
from typing import Sequence

Vec = tuple[int, ...]

DEFAULT_BUDGET = 100_000


class UnboundedGuard(RuntimeError):
    """Raised when a completion exceeds its work budget."""


def budget_from_env(default: int = DEFAULT_BUDGET) -> int:
    raw = os.environ.get("LUNAKIT_BUDGET")
    if raw is None or raw.strip() == "":
        return default
    return int(float(raw))


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _sub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def _add(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


class _Work:
    def __init__(self, budget: int):
        self.budget = budget
        self.spent = 0

    def tick(self, n: int = 1) -> None:
        self.spent += n
        if self.spent > self.budget:
            raise UnboundedGuard(f"Hilbert basis completion exceeded budget {self.budget}")


def _cut(gens: list[Vec], lam: Sequence[int], prior: list[Sequence[int]], work: _Work) -> list[Vec]:
    def in_prior(x: Vec) -> bool:
        return all(v >= 0 for v in x) and all(_dot(mu, x) >= 0 for mu in prior)

    vals: dict[Vec, int] = {}

    def val(x: Vec) -> int:
        v = vals.get(x)
        if v is None:
            v = vals[x] = _dot(lam, x)
        return v

    def reducer(r: Vec, pool: list[Vec]) -> Vec | None:
        vr = val(r)
        for g in pool:
            vg = val(g)
            if vr > 0 and not (0 <= vg <= vr):
                continue
            if vr < 0 and not (vr <= vg <= 0):
                continue
            if vr == 0 and vg != 0:
                continue
            if in_prior(_sub(r, g)):
                return g
        return None

    def normal_form(r: Vec, pool: list[Vec]) -> Vec:
        while any(r):
            g = reducer(r, pool)
            work.tick()
            if g is None:
                return r
            r = _sub(r, g)
        return r

    basis = list(dict.fromkeys(gens))
    pos = [g for g in basis if val(g) > 0]
    neg = [g for g in basis if val(g) < 0]
    pool = list(basis)
    queue = [(p, n) for p in pos for n in neg]
    while queue:
        p, n = queue.pop()
        work.tick()
        r = normal_form(_add(p, n), pool)
        if not any(r):
            continue
        vr = val(r)
        if vr > 0:
            queue.extend((r, m) for m in neg)
            pos.append(r)
        elif vr < 0:
            queue.extend((m, r) for m in pos)
            neg.append(r)
        pool.append(r)
        work.tick(len(pool))

    kept = [g for g in pool if val(g) >= 0]
    return _irreducible(kept, lambda x: in_prior(x) and _dot(lam, x) >= 0)


def _irreducible(elems: list[Vec], member) -> list[Vec]:
    """Drop elements that are a sum of another listed element and a cone element."""
    elems = sorted(set(elems), key=lambda v: (sum(v), v))
    out: list[Vec] = []
    for x in elems:
        if not any(y != x and member(_sub(x, y)) for y in elems if sum(y) <= sum(x)):
            out.append(x)
    return out


def hilbert_basis(dim: int, inequalities: Sequence[Sequence[int]] = (),
                  equalities: Sequence[Sequence[int]] = (), budget: int | None = None) -> list[Vec]:
    """Hilbert basis of {x in N^dim : l(x) >= 0 for inequalities, m(x) = 0 for equalities}.

    The result is sorted by total degree, then lexicographically.
    """
    work = _Work(budget_from_env() if budget is None else budget)
    cuts: list[tuple[int, ...]] = [tuple(l) for l in inequalities]
    for m in equalities:
        cuts.append(tuple(m))
        cuts.append(tuple(-v for v in m))
    gens: list[Vec] = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    prior: list[Sequence[int]] = []
    for lam in cuts:
        if all(_dot(lam, g) >= 0 for g in gens):
            prior.append(lam)
            continue
        gens = _cut(gens, lam, prior, work)
        prior.append(lam)
    return sorted(gens, key=lambda v: (sum(v), v))
