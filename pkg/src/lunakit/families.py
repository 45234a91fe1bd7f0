"""The localized basic spherical systems that the orbit catalog is built from.

Each constructor returns a system on its own small root system. Spherical
roots are listed in the interleaved order used for the semigroup formulas:
sigma_{2i-1} = a_i and sigma_{2i} = a'_i, followed by the tail root. A-colors
are named D1, D2, ... and ``labels`` maps the remaining Dk to derived colors.
"""
from __future__ import annotations

from typing import Mapping, Sequence

from .rootsys import RootSystem, build_root_system
from .sphsys import SphericalSystem, make_system

Column = Mapping[int, int]  # color number -> coefficient


class FamilyError(ValueError):
    pass


def _a(i: int) -> str:
    return f"a{i}"


def _b(i: int) -> str:
    return f"a'{i}"


def assemble(rs: RootSystem, sp: Sequence[str], sigma: Sequence[Mapping[str, int]],
             columns: Sequence[Column], n_a: int, extra_labels: Mapping[int, str] = ()) -> SphericalSystem:
    """Build a system from printed columns sigma_k = sum c_k(D) D.

    Only the entries of D1..D_{n_a} are stored; the entries on the derived
    colors named in ``extra_labels`` are checked against the Cartan matrix.
    """
    rows = [[col.get(d, 0) for col in columns] for d in range(1, n_a + 1)]
    labels = {f"D{k}": name for k, name in dict(extra_labels).items()}
    sys = make_system(rs, sp, sigma, [(f"D{d + 1}", row) for d, row in enumerate(rows)], labels)
    for k, name in dict(extra_labels).items():
        printed = tuple(col.get(k, 0) for col in columns)
        if sys.color(name).pairing != printed:
            raise FamilyError(f"printed pairing of D{k} disagrees with {name}")
    return sys


def _ay_columns(s: int) -> list[dict[int, int]]:
    """Columns of a_1..a_s, a'_1..a'_s in a^y(s,s) shape, interleaved."""
    cols = []
    for i in range(1, s + 1):
        if i == 1:
            ai = {1: 1, 2: 1, 3: -1}
        else:
            ai = {2 * i - 2: -1, 2 * i - 1: 1, 2 * i: 1, 2 * i + 1: -1}
        bi = {2 * i - 1: -1, 2 * i: 1, 2 * i + 1: 1, 2 * i + 2: -1}
        cols += [ai, bi]
    return cols


def _ay_sigma(s: int) -> list[dict[str, int]]:
    out = []
    for i in range(1, s + 1):
        out += [{_a(i): 1}, {_b(i): 1}]
    return out


def ay_b(s: int, t: int) -> SphericalSystem:
    """a^y(s,s)+b'(t) on A_s x B_{s+t}."""
    if s < 1 or t < 1:
        raise FamilyError("a^y(s,s)+b'(t) needs s >= 1 and t >= 1")
    rs = build_root_system([("A", s), ("B", s + t)])
    sigma = _ay_sigma(s) + [{_b(j): 2 for j in range(s + 1, s + t + 1)}]
    cols = _ay_columns(s) + [{2 * s + 1: -2, 2 * s + 2: 2}]
    sp = [_b(j) for j in range(s + 2, s + t + 1)]
    return assemble(rs, sp, sigma, cols, 2 * s + 1, {2 * s + 2: "D_" + _b(s + 1)})


def ay_d(s: int, t: int) -> SphericalSystem:
    """a^y(s,s)+d(t) on A_s x D_{s+t}.

    At t = 2 the tail is the orthogonal pair a'_{s+1}+a'_{s+2}, which pairs
    nontrivially with a'_{s+2}, so S^p is empty there.
    """
    if s < 1 or t < 2:
        raise FamilyError("a^y(s,s)+d(t) needs s >= 1 and t >= 2")
    n = s + t
    rs = build_root_system([("A", s), ("D", n)])
    tail = {_b(j): 2 for j in range(s + 1, n - 1)}
    tail[_b(n - 1)] = tail.get(_b(n - 1), 0) + 1
    tail[_b(n)] = 1
    sigma = _ay_sigma(s) + [tail]
    cols = _ay_columns(s) + [{2 * s + 1: -2, 2 * s + 2: 2}]
    sp = [_b(j) for j in range(s + 2, n + 1)] if t > 2 else []
    return assemble(rs, sp, sigma, cols, 2 * s + 1, {2 * s + 2: "D_" + _b(s + 1)})


def aby(s: int) -> SphericalSystem:
    """ab^y(s,s) on A_s x B_s. The case s = 1 is the A1 x B1 degeneration."""
    if s < 1:
        raise FamilyError("ab^y(s,s) needs s >= 1")
    rs = build_root_system([("A", s), ("B", s)])
    cols = _ay_columns(s)
    if s >= 2:
        cols[2 * s - 3] = {2 * s - 3: -1, 2 * s - 2: 1, 2 * s - 1: 1, 2 * s: -1, 2 * s + 1: -1}
    cols[2 * s - 1] = {2 * s - 1: -1, 2 * s: 1, 2 * s + 1: 1}
    return assemble(rs, [], _ay_sigma(s), cols, 2 * s + 1)


def ady(s: int) -> SphericalSystem:
    """ad^y(s,s+1) on A_s x D_{s+1}."""
    if s < 1:
        raise FamilyError("ad^y(s,s+1) needs s >= 1")
    rs = build_root_system([("A", s), ("D", s + 1)])
    cols = _ay_columns(s)
    if s == 1:
        cols[0] = {1: 1, 2: 1, 3: -1, 4: -1}
    else:
        cols[2 * s - 2] = {2 * s - 2: -1, 2 * s - 1: 1, 2 * s: 1, 2 * s + 1: -1, 2 * s + 2: -1}
    cols[2 * s - 1] = {2 * s - 1: -1, 2 * s: 1, 2 * s + 1: 1, 2 * s + 2: -1}
    cols.append({2 * s - 1: -1, 2 * s: 1, 2 * s + 1: -1, 2 * s + 2: 1})
    sigma = _ay_sigma(s) + [{_b(s + 1): 1}]
    return assemble(rs, [], sigma, cols, 2 * s + 2)


def ay22c(t: int) -> SphericalSystem:
    """a^y(2,2)+c(t) on A_2 x C_{t+1}, numbered sigma1 = a2, sigma2 = a'2, sigma3 = a1, sigma4 = a'1."""
    if t < 2:
        raise FamilyError("a^y(2,2)+c(t) needs t >= 2")
    rs = build_root_system([("A", 2), ("C", t + 1)])
    tail = {_b(2): 1, _b(t + 1): 1}
    for j in range(3, t + 1):
        tail[_b(j)] = 2
    sigma = [{_a(2): 1}, {_b(2): 1}, {_a(1): 1}, {_b(1): 1}, tail]
    cols = [
        {1: 1, 2: 1, 3: -1},
        {1: -1, 2: 1, 3: 1, 4: -1, 6: -1},
        {2: -1, 3: 1, 4: 1, 5: -1},
        {3: -1, 4: 1, 5: 1},
        {5: -1, 6: 1},
    ]
    sp = [_b(j) for j in range(4, t + 2)]
    return assemble(rs, sp, sigma, cols, 5, {6: "D_" + _b(3)})


BASIC_FAMILIES = {
    "ay_b": ay_b,
    "ay_d": ay_d,
    "aby": aby,
    "ady": ady,
    "ay22c": ay22c,
}
