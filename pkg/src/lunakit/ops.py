"""Structural operations: subsystems, localization, quotients, parabolic induction, defect."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from . import linalg
from .hilbert import hilbert_basis
from .lp import positive_solution
from .rootsys import RootCombination, RootSystem
from .sphsys import AColor, SigmaVector, SphericalSystem, UnknownColor

MAX_ENUMERATED_COLORS = 20


class NotDistinguished(ValueError):
    pass


class NotFree(RuntimeError):
    pass


class TooManyColors(ValueError):
    pass


@dataclass(frozen=True)
class Distinguished:
    """Outcome of the distinguished test. Truthy iff distinguished."""

    distinguished: bool
    witness: dict[str, int] | None = None

    def __bool__(self) -> bool:
        return self.distinguished


@dataclass(frozen=True)
class QuotientResult:
    system: SphericalSystem
    kept_colors: dict[str, str]
    sigma_basis: list[SigmaVector]


@dataclass(frozen=True)
class ParabolicDecomposition:
    s_l: tuple[str, ...]
    inner: SphericalSystem
    extra_b_colors: list[str] = field(default_factory=list)


def _rename_labels(labels: Mapping[str, str], alive: Iterable[str]) -> dict[str, str]:
    alive = set(alive)
    return {k: v for k, v in labels.items() if v in alive}


def _simple_in_sigma(rs: RootSystem, sigma: Sequence[RootCombination]) -> set[str]:
    out = set()
    for s in sigma:
        supp = s.support()
        if len(supp) == 1 and s.coeffs[supp[0]] == 1:
            out.add(rs.simple_roots[supp[0]])
    return out


def _restricted_a(sys: SphericalSystem, movers: set[str], keep_cols: Sequence[int]) -> tuple[AColor, ...]:
    out = []
    for c in sys.colors:
        if c.kind == "a" and set(c.moved_by) & movers:
            out.append(AColor(c.name, tuple(c.pairing[k] for k in keep_cols)))
    return tuple(out)


def _finish(sys: SphericalSystem, labels: Mapping[str, str]) -> SphericalSystem:
    return SphericalSystem(sys.rs, sys.sp, sys.sigma, sys.a_colors,
                           _rename_labels(labels, sys.color_names))


def subvariety(sys: SphericalSystem, keep: Iterable[int]) -> SphericalSystem:
    """System of the orbit closure that keeps the spherical roots with the given indices."""
    keep = sorted(set(keep))
    sigma = tuple(sys.sigma[k] for k in keep)
    movers = _simple_in_sigma(sys.rs, sigma)
    out = SphericalSystem(sys.rs, sys.sp, sigma, _restricted_a(sys, movers, keep), {})
    return _finish(out, sys.labels)


def localize(sys: SphericalSystem, s_l: Iterable[str]) -> SphericalSystem:
    """Localization in a set of simple roots, on the sub-diagram they span.

    Root names of the ambient system are kept.
    """
    rs = sys.rs
    s_l = set(rs.sort_names(s_l))
    sub = rs.subsystem(s_l)
    keep = [k for k, s in enumerate(sys.sigma)
            if all(rs.simple_roots[i] in s_l for i in s.support())]
    sigma = tuple(sub.combination(sys.sigma[k].to_dict(rs)) for k in keep)
    movers = _simple_in_sigma(rs, [sys.sigma[k] for k in keep]) & s_l
    sp = tuple(n for n in sys.sp if n in s_l)
    out = SphericalSystem(sub, sub.sort_names(sp), sigma, _restricted_a(sys, movers, keep), {})
    return _finish(out, sys.labels)


def _color_subset(sys: SphericalSystem, subset: Iterable[str]) -> list[str]:
    names = list(dict.fromkeys(subset))
    for n in names:
        if n not in sys.color_index:
            raise UnknownColor(n)
    return sorted(names, key=sys.color_index.__getitem__)


def is_distinguished(sys: SphericalSystem, subset: Iterable[str]) -> Distinguished:
    """Exact test for a positive combination of the colors pairing >= 0 with all of Sigma.

    The empty set is distinguished, vacuously.
    """
    names = _color_subset(sys, subset)
    if not names:
        return Distinguished(True, {})
    m = [[sys.color(n).pairing[k] for n in names] for k in range(len(sys.sigma))]
    sol = positive_solution(m, len(names))
    if sol is None:
        return Distinguished(False, None)
    return Distinguished(True, dict(zip(names, sol)))


def quotient_basis(sys: SphericalSystem, names: Sequence[str]) -> list[SigmaVector]:
    """Basis of the monoid of elements of N Sigma that pair to zero with every listed color."""
    eqs = [list(sys.color(n).pairing) for n in names]
    basis = hilbert_basis(len(sys.sigma), equalities=eqs)
    if basis and linalg.rank(basis) != len(basis):
        raise NotFree("the quotient monoid is not free")
    # order by the first spherical root involved, to keep quotients readable
    basis.sort(key=lambda v: (next(i for i, x in enumerate(v) if x), tuple(-x for x in v)))
    return [SigmaVector(v) for v in basis]


def quotient(sys: SphericalSystem, subset: Iterable[str]) -> QuotientResult:
    names = _color_subset(sys, subset)
    if not is_distinguished(sys, names):
        raise NotDistinguished(", ".join(names))
    rs = sys.rs
    basis = quotient_basis(sys, names)
    sigma = []
    for v in basis:
        acc = [0] * rs.rank
        for a, s in zip(v.coeffs, sys.sigma):
            if a:
                acc = [x + a * y for x, y in zip(acc, s.coeffs)]
        sigma.append(RootCombination(tuple(acc)))
    drop = set(names)
    moved: dict[str, list[str]] = {n: [] for n in rs.simple_roots}
    for c in sys.colors:
        for m in c.moved_by:
            moved[m].append(c.name)
    sp = tuple(n for n in rs.simple_roots if set(moved[n]) <= drop)
    new_simple = _simple_in_sigma(rs, sigma)
    a_cols = []
    for c in sys.colors:
        if c.kind == "a" and set(c.moved_by) & new_simple:
            pairing = tuple(sum(a * p for a, p in zip(v.coeffs, c.pairing)) for v in basis)
            a_cols.append(AColor(c.name, pairing))
    new = SphericalSystem(rs, sp, tuple(sigma), tuple(a_cols), {})
    kept: dict[str, str] = {}
    by_mover = {m: c.name for c in new.colors for m in c.moved_by}
    for c in sys.colors:
        if c.name in drop:
            continue
        if c.name in new.color_index:
            kept[c.name] = c.name
        else:
            kept[c.name] = by_mover[c.moved_by[0]]
    labels = {k: kept[v] for k, v in sys.labels.items() if v in kept}
    new = SphericalSystem(rs, sp, tuple(sigma), tuple(a_cols), labels)
    return QuotientResult(new, kept, basis)


def support_of_sigma(sys: SphericalSystem) -> set[str]:
    rs = sys.rs
    return {rs.simple_roots[i] for s in sys.sigma for i in s.support()}


def parabolic_decomposition(sys: SphericalSystem) -> ParabolicDecomposition:
    rs = sys.rs
    s_l = rs.sort_names(support_of_sigma(sys) | set(sys.sp))
    inner = localize(sys, s_l)
    extra = [c.name for c in sys.colors if c.kind == "b" and not set(c.moved_by) & set(s_l)]
    return ParabolicDecomposition(s_l, inner, extra)


def defect(sys: SphericalSystem) -> int:
    return len(sys.colors) - len(sys.sigma)


def is_higher_defect_quotient(sys: SphericalSystem, subset: Iterable[str]) -> bool:
    """Strict inequality |Delta - Delta'| - |Sigma/Delta'| > |Delta| - |Sigma|."""
    names = _color_subset(sys, subset)
    if not is_distinguished(sys, names):
        raise NotDistinguished(", ".join(names))
    basis = quotient_basis(sys, names)
    return len(sys.colors) - len(names) - len(basis) > defect(sys)


def s_delta_prime(sys: SphericalSystem, subset: Iterable[str]) -> tuple[str, ...]:
    """supp Sigma minus supp(Sigma/Delta').

    This agrees with the general definition only for the catalog's
    higher-defect quotients; it is not the general construction.
    """
    q = quotient(sys, subset).system
    return sys.rs.sort_names(support_of_sigma(sys) - support_of_sigma(q))


def minimal_distinguished_subsets(sys: SphericalSystem) -> list[tuple[str, ...]]:
    names = list(sys.color_names)
    if len(names) > MAX_ENUMERATED_COLORS:
        raise TooManyColors(f"{len(names)} colors, limit {MAX_ENUMERATED_COLORS}")
    found: list[frozenset[str]] = []
    for size in range(1, len(names) + 1):
        for combo in combinations(names, size):
            cs = frozenset(combo)
            if any(f <= cs for f in found):
                continue
            if is_distinguished(sys, combo):
                found.append(cs)
    return [tuple(n for n in names if n in f) for f in found]


def _root_bijections(a: RootSystem, b: RootSystem):
    """All bijections of simple roots preserving the Cartan matrix."""
    if a.rank != b.rank:
        return
    order = sorted(range(a.rank), key=lambda i: -len(a.neighbours(i)))
    assign: dict[int, int] = {}
    used: set[int] = set()

    def rec(k: int):
        if k == len(order):
            yield dict(assign)
            return
        i = order[k]
        for j in range(b.rank):
            if j in used or a.cartan(i, i) != b.cartan(j, j):
                continue
            if all(a.cartan(i, x) == b.cartan(j, y) and a.cartan(x, i) == b.cartan(y, j)
                   for x, y in assign.items()):
                assign[i] = j
                used.add(j)
                yield from rec(k + 1)
                del assign[i]
                used.discard(j)

    yield from rec(0)


def isomorphic(x: SphericalSystem, y: SphericalSystem) -> bool:
    """Equality up to renaming simple roots (Cartan-preserving) and colors."""
    if len(x.sigma) != len(y.sigma) or len(x.a_colors) != len(y.a_colors):
        return False
    ysig = {s.coeffs: k for k, s in enumerate(y.sigma)}
    yrows = sorted(a.pairing for a in y.a_colors)
    ysp = {y.rs.index(n) for n in y.sp}
    for f in _root_bijections(x.rs, y.rs):
        if {f[x.rs.index(n)] for n in x.sp} != ysp:
            continue
        perm = []
        for s in x.sigma:
            v = [0] * y.rs.rank
            for i, c in enumerate(s.coeffs):
                v[f[i]] = c
            k = ysig.get(tuple(v))
            if k is None:
                break
            perm.append(k)
        else:
            rows = []
            for a in x.a_colors:
                row = [0] * len(perm)
                for k, val in zip(perm, a.pairing):
                    row[k] = val
                rows.append(tuple(row))
            if sorted(rows) == yrows:
                return True
    return False
