"""Spherical systems: data, colors, axioms, pairing and rendering."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

from . import linalg
from .rootsys import (
    NotSpherical,
    RootCombination,
    RootSystem,
    SphericalRootKind,
    UnknownRoot,
    Weight,
    build_root_system,
    classify_spherical_root,
    pair_index,
    sp_lower_bound,
    zero_weight,
)


class UnknownColor(KeyError):
    pass


class AxiomViolation(ValueError):
    pass


@dataclass(frozen=True)
class AColor:
    name: str
    pairing: tuple[int, ...]


@dataclass(frozen=True)
class Color:
    name: str
    kind: str  # "a", "2a" or "b"
    moved_by: tuple[str, ...]
    pairing: tuple[int, ...]


@dataclass(frozen=True)
class DeltaVector:
    """Integer vector over the colors, in the order of ``derive_colors``."""

    coeffs: tuple[int, ...]


@dataclass(frozen=True)
class SigmaVector:
    coeffs: tuple[int, ...]


@dataclass(frozen=True)
class Violation:
    axiom: str
    message: str


@dataclass(frozen=True, eq=False)
class SphericalSystem:
    rs: RootSystem
    sp: tuple[str, ...]
    sigma: tuple[RootCombination, ...]
    a_colors: tuple[AColor, ...] = ()
    labels: Mapping[str, str] = field(default_factory=dict, compare=False)

    @cached_property
    def colors(self) -> tuple[Color, ...]:
        return tuple(derive_colors(self))

    @cached_property
    def color_index(self) -> dict[str, int]:
        return {c.name: i for i, c in enumerate(self.colors)}

    @property
    def color_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.colors)

    @cached_property
    def display_names(self) -> tuple[str, ...]:
        """Color names with labelled colors shown under their label."""
        inv: dict[str, str] = {}
        for label, name in sorted(self.labels.items(), key=lambda kv: (len(kv[0]), kv[0])):
            inv.setdefault(name, label)
        return tuple(inv.get(c.name, c.name) for c in self.colors)

    def resolve(self, name: str) -> int:
        """Index of a color given by name or by label."""
        if name in self.color_index:
            return self.color_index[name]
        if name in self.labels and self.labels[name] in self.color_index:
            return self.color_index[self.labels[name]]
        raise UnknownColor(name)

    def color(self, name: str) -> Color:
        try:
            return self.colors[self.color_index[name]]
        except KeyError:
            raise UnknownColor(name) from None

    @cached_property
    def pairing_columns(self) -> tuple[tuple[int, ...], ...]:
        """Column k is sigma_k seen in Z^Delta."""
        return tuple(tuple(c.pairing[k] for c in self.colors) for k in range(len(self.sigma)))

    def delta(self, coeffs: Mapping[str, int]) -> DeltaVector:
        v = [0] * len(self.colors)
        for name, c in coeffs.items():
            v[self.resolve(name)] += c
        return DeltaVector(tuple(v))

    def sigma_dicts(self) -> list[dict[str, int]]:
        return [s.to_dict(self.rs) for s in self.sigma]

    def __eq__(self, other) -> bool:
        if not isinstance(other, SphericalSystem):
            return NotImplemented
        return (self.rs == other.rs and set(self.sp) == set(other.sp)
                and self.sigma == other.sigma and self.a_colors == other.a_colors)

    def __hash__(self) -> int:
        return hash((self.rs, frozenset(self.sp), self.sigma, self.a_colors))


def make_system(rs: RootSystem, sp: Sequence[str], sigma: Sequence[Mapping[str, int]],
                a_colors: Mapping[str, Sequence[int]] | Sequence[tuple[str, Sequence[int]]] = (),
                labels: Mapping[str, str] | None = None) -> SphericalSystem:
    """Convenience constructor from root names and plain lists."""
    for name in sp:
        rs.index(name)
    items = a_colors.items() if isinstance(a_colors, Mapping) else a_colors
    acols = tuple(AColor(n, tuple(int(x) for x in p)) for n, p in items)
    return SphericalSystem(rs, rs.sort_names(sp), tuple(rs.combination(s) for s in sigma),
                           acols, dict(labels or {}))


def _sigma_positions(sys: SphericalSystem) -> tuple[dict[int, int], dict[int, int]]:
    """Maps simple-root index to the position of alpha and of 2 alpha in Sigma."""
    simple, double = {}, {}
    for k, s in enumerate(sys.sigma):
        supp = s.support()
        if len(supp) == 1:
            i = supp[0]
            if s.coeffs[i] == 1:
                simple[i] = k
            elif s.coeffs[i] == 2:
                double[i] = k
    return simple, double


def derive_colors(sys: SphericalSystem) -> list[Color]:
    """Colors in canonical order: A-colors as given, then 2a and b colors by simple root.

    Two orthogonal simple roots whose sum is in Sigma share one b color, named
    after the first of them.
    """
    rs = sys.rs
    sp = {rs.index(n) for n in sys.sp}
    simple, double = _sigma_positions(sys)
    acol = []
    for a in sys.a_colors:
        movers = tuple(rs.simple_roots[i] for i, k in sorted(simple.items()) if a.pairing[k] == 1)
        acol.append(Color(a.name, "a", movers, a.pairing))
    btype = [i for i in range(rs.rank) if i not in sp and i not in simple and i not in double]
    parent = {i: i for i in btype}

    def find(i: int) -> int:
        while parent[i] != i:
            i = parent[i]
        return i

    for s in sys.sigma:
        supp = s.support()
        if (len(supp) == 2 and all(i in parent for i in supp) and rs.orthogonal(*supp)
                and all(s.coeffs[i] == 1 for i in supp)):
            a, b = sorted(find(i) for i in supp)
            parent[b] = a
    rest = []
    for i in range(rs.rank):
        name = rs.simple_roots[i]
        if i in double:
            vals = []
            for s in sys.sigma:
                p = pair_index(rs, i, s)
                if p % 2:
                    raise AxiomViolation(f"half pairing of {name} with a spherical root is not integral")
                vals.append(p // 2)
            rest.append(Color("D_" + name, "2a", (name,), tuple(vals)))
        elif i in parent and find(i) == i:
            movers = tuple(rs.simple_roots[j] for j in btype if find(j) == i)
            pairing = tuple(pair_index(rs, i, s) for s in sys.sigma)
            rest.append(Color("D_" + name, "b", movers, pairing))
    return acol + rest


def full_pairing(sys: SphericalSystem, color: str, k: int) -> int:
    """c(D, sigma_k) for any color."""
    return sys.color(color).pairing[k]


def sigma_in_delta(sys: SphericalSystem, v: SigmaVector) -> DeltaVector:
    cols = sys.pairing_columns
    out = [0] * len(sys.colors)
    for k, a in enumerate(v.coeffs):
        if a:
            for d, c in enumerate(cols[k]):
                out[d] += a * c
    return DeltaVector(tuple(out))


def weight_of_color(sys: SphericalSystem, color: str) -> Weight:
    c = sys.color(color)
    w = [0] * sys.rs.rank
    for name in c.moved_by:
        w[sys.rs.index(name)] += 2 if c.kind == "2a" else 1
    return Weight(tuple(w))


def weight_of_delta(sys: SphericalSystem, v: DeltaVector) -> Weight:
    w = zero_weight(sys.rs)
    for name, k in zip(sys.color_names, v.coeffs):
        if k:
            w = w + weight_of_color(sys, name).scale(k)
    return w


def validate(sys: SphericalSystem) -> list[Violation]:
    """Every violated axiom, in a fixed order. An empty list means the system is valid."""
    rs = sys.rs
    out: list[Violation] = []
    nsig = len(sys.sigma)
    sp = set()
    for name in sys.sp:
        if rs.has_root(name):
            sp.add(rs.index(name))
        else:
            out.append(Violation("Sp.unknown", f"{name} is not a simple root"))

    kinds: list[SphericalRootKind | None] = []
    for k, s in enumerate(sys.sigma):
        kind = classify_spherical_root(rs, s)
        if isinstance(kind, NotSpherical):
            out.append(Violation("Sigma.kind", f"sigma{k + 1} is not spherical: {kind.reason}"))
            kinds.append(None)
        else:
            kinds.append(kind)
    for k in range(nsig):
        for l in range(k + 1, nsig):
            if linalg.rank([sys.sigma[k].coeffs, sys.sigma[l].coeffs]) < 2:
                out.append(Violation("Sigma.proportional", f"sigma{k + 1} and sigma{l + 1} are proportional"))
    if nsig and linalg.rank([s.coeffs for s in sys.sigma]) < nsig:
        out.append(Violation("Sigma.independence", "spherical roots are linearly dependent"))

    names = [a.name for a in sys.a_colors]
    if len(set(names)) != len(names):
        out.append(Violation("A.names", "duplicate A-color names"))
    bad_shape = [a.name for a in sys.a_colors if len(a.pairing) != nsig]
    for n in bad_shape:
        out.append(Violation("A.shape", f"pairing row of {n} has the wrong length"))
    if bad_shape:
        return out

    simple, double = _sigma_positions(sys)
    for a in sys.a_colors:
        for k, c in enumerate(a.pairing):
            if c > 1:
                out.append(Violation("A1", f"c({a.name}, sigma{k + 1}) = {c} > 1"))
            elif c == 1 and k not in simple.values():
                out.append(Violation("A1", f"c({a.name}, sigma{k + 1}) = 1 but sigma{k + 1} is not simple"))

    moved = set()
    for i, k in sorted(simple.items()):
        name = rs.simple_roots[i]
        up = [a for a in sys.a_colors if a.pairing[k] == 1]
        moved.update(a.name for a in up)
        if len(up) != 2:
            out.append(Violation("A2.count", f"{name} in Sigma moves {len(up)} A-colors, expected 2"))
            continue
        for l, s in enumerate(sys.sigma):
            total = up[0].pairing[l] + up[1].pairing[l]
            if total != pair_index(rs, i, s):
                out.append(Violation("A2.sum", f"c({up[0].name}) + c({up[1].name}) on sigma{l + 1} "
                                               f"differs from <{name}^vee, sigma{l + 1}>"))
    for a in sys.a_colors:
        if a.name not in moved:
            out.append(Violation("A3", f"A-color {a.name} is not moved by any simple spherical root"))

    for i in sorted(double):
        name = rs.simple_roots[i]
        for l, s in enumerate(sys.sigma):
            p = pair_index(rs, i, s)
            if p % 2 or p > 0 and l != double[i]:
                out.append(Violation("Sigma1", f"half of <{name}^vee, sigma{l + 1}> is not a nonpositive integer"))

    for s in sys.sigma:
        supp = s.support()
        if len(supp) == 2 and rs.orthogonal(*supp) and all(s.coeffs[i] == 1 for i in supp):
            i, j = supp
            for l, t in enumerate(sys.sigma):
                if pair_index(rs, i, t) != pair_index(rs, j, t):
                    out.append(Violation("Sigma2", f"{rs.simple_roots[i]} and {rs.simple_roots[j]} pair "
                                                   f"differently with sigma{l + 1}"))

    upper = {i for i in range(rs.rank) if all(pair_index(rs, i, s) == 0 for s in sys.sigma)}
    for i in sorted(sp - upper):
        out.append(Violation("S.upper", f"{rs.simple_roots[i]} in S^p pairs nontrivially with Sigma"))
    for k, (s, kind) in enumerate(zip(sys.sigma, kinds)):
        if kind is None:
            continue
        need = {rs.index(n) for n in sp_lower_bound(rs, kind, s)}
        for i in sorted(need - sp):
            out.append(Violation("S.lower", f"sigma{k + 1} ({kind.kind}) requires {rs.simple_roots[i]} in S^p"))
    return out


def is_valid(sys: SphericalSystem) -> bool:
    return not validate(sys)


def to_json_obj(sys: SphericalSystem) -> dict:
    obj = {
        "root_system": sys.rs.to_json(),
        "sp": list(sys.sp),
        "sigma": [dict(sorted(d.items())) for d in sys.sigma_dicts()],
        "a_colors": [{"name": a.name, "pairing": list(a.pairing)} for a in sys.a_colors],
    }
    if sys.labels:
        obj["labels"] = dict(sorted(sys.labels.items()))
    return obj


def to_json(sys: SphericalSystem) -> str:
    return json.dumps(to_json_obj(sys), sort_keys=True)


def from_json(data: str | Mapping) -> SphericalSystem:
    obj = json.loads(data) if isinstance(data, str) else data
    rs = build_root_system(obj["root_system"])
    return make_system(rs, obj.get("sp", []), obj.get("sigma", []),
                       [(a["name"], a["pairing"]) for a in obj.get("a_colors", [])],
                       obj.get("labels"))


def format_combination(rs: RootSystem, comb: RootCombination) -> str:
    parts = []
    for name, c in comb.to_dict(rs).items():
        parts.append(name if c == 1 else f"{c}{name}")
    return "+".join(parts) if parts else "0"


def format_delta(sys: SphericalSystem, v: DeltaVector) -> str:
    out = ""
    terms = [(name, c, k) for k, (name, c) in enumerate(zip(sys.display_names, v.coeffs)) if c]
    # numbered labels first, in numeric order, then the remaining colors
    terms.sort(key=lambda t: (0, int(t[0][1:]), 0) if re.fullmatch(r"D\d+", t[0]) else (1, 0, t[2]))
    for name, c, _ in terms:
        mag = name if abs(c) == 1 else f"{abs(c)}{name}"
        if not out:
            out = mag if c > 0 else "-" + mag
        else:
            out += (" + " if c > 0 else " - ") + mag
    return out or "0"


def render_luna_diagram(sys: SphericalSystem) -> str:
    """Plain-text Luna diagram.

    One line per simple root with its marker, then the identity classes of
    colors (circles joined by a line) and the arrows (D, sigma) with c = -1.
    """
    rs = sys.rs
    simple, double = _sigma_positions(sys)
    sp = {rs.index(n) for n in sys.sp}
    kinds = {}
    for c in sys.colors:
        for m in c.moved_by:
            kinds.setdefault(m, []).append(c.name)
    lines = ["type: " + (" x ".join(f"{f}{n}" for f, n in rs.components) or "trivial")]
    for i, name in enumerate(rs.simple_roots):
        if i in sp:
            mark = "."
        elif i in simple:
            mark = "(o)(o)"
        elif i in double:
            mark = "(2)"
        else:
            mark = "o"
        lines.append(f"  {name:<8} {mark:<7} {' '.join(kinds.get(name, []))}".rstrip())
    lines.append("spherical roots:")
    for k, s in enumerate(sys.sigma):
        kind = classify_spherical_root(rs, s)
        tag = kind.kind if isinstance(kind, SphericalRootKind) else "not spherical"
        lines.append(f"  s{k + 1} = {format_combination(rs, s)}  [{tag}]")
    lines.append("legend (colors and the simple roots moving them):")
    for c in sys.colors:
        lines.append(f"  {c.name:<8} {c.kind:<3} {', '.join(c.moved_by) or '-'}")
    arrows = [f"({c.name}, s{k + 1})" for c in sys.colors if c.kind == "a"
              for k, v in enumerate(c.pairing) if v == -1]
    lines.append("arrows: " + (" ".join(arrows) if arrows else "none"))
    return "\n".join(lines)


def pairing_table(sys: SphericalSystem) -> list[list[int]]:
    return [list(c.pairing) for c in sys.colors]

