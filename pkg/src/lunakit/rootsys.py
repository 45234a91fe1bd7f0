"""Classical root systems in Bourbaki numbering, and the spherical-root table.

Simple roots of the k-th component are named ``a1, a2, ...`` with k primes
after the ``a``: ``a1``, ``a'1``, ``a''1``. The Cartan matrix is stored as
``cartan[i][j] = <alpha_i^vee, alpha_j>``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

FAMILIES = ("A", "B", "C", "D")


class InvalidRank(ValueError):
    pass


class UnknownRoot(KeyError):
    pass


class IndexOutOfRange(IndexError):
    pass


def root_name(component: int, i: int) -> str:
    return "a" + "'" * component + str(i)


_NAME_RE = re.compile(r"^a('*)(\d+)$")


def parse_root_name(name: str) -> tuple[int, int]:
    m = _NAME_RE.match(name)
    if not m:
        raise UnknownRoot(name)
    return len(m.group(1)), int(m.group(2))


def _component_cartan(family: str, n: int) -> list[list[int]]:
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    if family == "D":
        for i in range(n - 3):
            c[i][i + 1] = c[i + 1][i] = -1
        if n >= 3:
            for leaf in (n - 2, n - 1):
                c[n - 3][leaf] = c[leaf][n - 3] = -1
        return c
    for i in range(n - 1):
        c[i][i + 1] = c[i + 1][i] = -1
    if n >= 2 and family == "B":
        c[n - 1][n - 2] = -2
    if n >= 2 and family == "C":
        c[n - 2][n - 1] = -2
    return c


@dataclass(frozen=True)
class RootSystem:
    """A product of classical components, or a sub-diagram of one.

    ``components`` lists (family, rank) for the connected pieces, and
    ``component_roots`` their simple roots in Bourbaki order.
    ``root_family`` remembers the family of the ambient component of each root,
    which decides the B_2/C_2 reading of a spherical root.
    """

    components: tuple[tuple[str, int], ...]
    simple_roots: tuple[str, ...]
    cartan_matrix: tuple[tuple[int, ...], ...]
    component_roots: tuple[tuple[str, ...], ...] = ()
    root_family: tuple[str, ...] = ()
    _index: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(self.simple_roots)})

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownRoot(name) from None

    def has_root(self, name: str) -> bool:
        return name in self._index

    def cartan(self, i: int, j: int) -> int:
        return self.cartan_matrix[i][j]

    def orthogonal(self, i: int, j: int) -> bool:
        return i != j and self.cartan_matrix[i][j] == 0

    def neighbours(self, i: int) -> list[int]:
        return [j for j in range(self.rank) if j != i and self.cartan_matrix[i][j] != 0]

    def combination(self, coeffs: Mapping[str, int]) -> "RootCombination":
        v = [0] * self.rank
        for name, c in coeffs.items():
            v[self.index(name)] += int(c)
        return RootCombination(tuple(v))

    def simple(self, name: str) -> "RootCombination":
        return self.combination({name: 1})

    def sort_names(self, names: Iterable[str]) -> tuple[str, ...]:
        return tuple(sorted(set(names), key=self.index))

    def subsystem(self, names: Iterable[str]) -> "RootSystem":
        """Root system of the sub-diagram spanned by ``names``."""
        keep = [self.index(n) for n in self.sort_names(names)]
        cartan = tuple(tuple(self.cartan_matrix[i][j] for j in keep) for i in keep)
        roots = tuple(self.simple_roots[i] for i in keep)
        fams = tuple(self.root_family[i] for i in keep) if self.root_family else ("A",) * len(keep)
        sub = RootSystem((), roots, cartan, (), fams)
        comps, comp_roots = [], []
        for piece in _connected_pieces(sub, range(sub.rank)):
            fam, order = dynkin_type(sub, piece)
            comps.append((fam, len(order)))
            comp_roots.append(tuple(roots[i] for i in order))
        return RootSystem(tuple(comps), roots, cartan, tuple(comp_roots), fams)

    def to_json(self) -> list[dict]:
        return [{"family": f, "rank": n} for f, n in self.components]


def build_root_system(types: Sequence) -> RootSystem:
    """Build a product of classical components from [(family, rank), ...].

    D_2 is accepted and is the same diagram as A1 x A1. D_3 keeps Bourbaki
    numbering, so its fork sits at the first node.
    """
    comps: list[tuple[str, int]] = []
    for item in types:
        if isinstance(item, Mapping):
            fam, n = item["family"], item["rank"]
        else:
            fam, n = item
        fam = str(fam).upper()
        if fam not in FAMILIES:
            raise InvalidRank(f"unknown family {fam!r}")
        n = int(n)
        if n < 1 or (fam == "D" and n < 2):
            raise InvalidRank(f"{fam}{n} is not a valid classical type")
        comps.append((fam, n))
    names: list[str] = []
    fams: list[str] = []
    comp_roots = []
    total = sum(n for _, n in comps)
    cartan = [[0] * total for _ in range(total)]
    off = 0
    for k, (fam, n) in enumerate(comps):
        block = _component_cartan(fam, n)
        for i in range(n):
            for j in range(n):
                cartan[off + i][off + j] = block[i][j]
        comp_names = tuple(root_name(k, i + 1) for i in range(n))
        names.extend(comp_names)
        fams.extend([fam] * n)
        comp_roots.append(comp_names)
        off += n
    return RootSystem(tuple(comps), tuple(names), tuple(tuple(r) for r in cartan),
                      tuple(comp_roots), tuple(fams))


@dataclass(frozen=True)
class RootCombination:
    """Integer vector over the simple roots."""

    coeffs: tuple[int, ...]

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.coeffs) if c)

    def to_dict(self, rs: RootSystem) -> dict[str, int]:
        return {rs.simple_roots[i]: c for i, c in enumerate(self.coeffs) if c}

    def __add__(self, other: "RootCombination") -> "RootCombination":
        return RootCombination(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, k: int) -> "RootCombination":
        return RootCombination(tuple(k * c for c in self.coeffs))


@dataclass(frozen=True)
class Weight:
    """Integer vector over the fundamental weights."""

    coeffs: tuple[int, ...]

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, k: int) -> "Weight":
        return Weight(tuple(k * c for c in self.coeffs))


def zero_weight(rs: RootSystem) -> Weight:
    return Weight((0,) * rs.rank)


def fundamental_weight(rs: RootSystem, name: str) -> Weight:
    i = rs.index(name)
    return Weight(tuple(int(j == i) for j in range(rs.rank)))


def cartan_pair(rs: RootSystem, name: str, target: Union[RootCombination, Weight]) -> int:
    """<alpha_name^vee, target> for a root combination or a weight."""
    i = rs.index(name)
    if isinstance(target, Weight):
        return target.coeffs[i]
    return sum(rs.cartan_matrix[i][j] * c for j, c in enumerate(target.coeffs) if c)


def pair_index(rs: RootSystem, i: int, target: RootCombination) -> int:
    row = rs.cartan_matrix[i]
    return sum(row[j] * c for j, c in enumerate(target.coeffs) if c)


# spherical root rows, by shape of the support
ALPHA = "alpha"
TWO_ALPHA = "2alpha"
ORTHOGONAL_PAIR = "alpha+alpha'"
A_SUM = "A_m sum"
A3_MIDDLE = "A_3 1-2-1"
B_SUM = "B_m sum"
B_DOUBLE = "B_m doubled"
B3_123 = "B_3 1-2-3"
C_PATTERN = "C_m pattern"
D_PATTERN = "D_m pattern"


@dataclass(frozen=True)
class SphericalRootKind:
    kind: str
    order: tuple[str, ...]  # support in the reading order of the row
    m: int


@dataclass(frozen=True)
class NotSpherical:
    reason: str


def _connected_pieces(rs: RootSystem, idxs: Iterable[int]) -> list[list[int]]:
    left = set(idxs)
    pieces = []
    while left:
        start = min(left)
        stack, piece = [start], {start}
        while stack:
            i = stack.pop()
            for j in rs.neighbours(i):
                if j in left and j not in piece:
                    piece.add(j)
                    stack.append(j)
        left -= piece
        pieces.append(sorted(piece))
    return pieces


def _walk(adj: dict[int, list[int]], start: int, stop: int | None = None) -> list[int]:
    order, prev, cur = [start], None, start
    while True:
        nxt = [j for j in adj[cur] if j != prev and j != stop]
        if len(nxt) != 1 or cur == stop:
            return order
        prev, cur = cur, nxt[0]
        order.append(cur)


def dynkin_type(rs: RootSystem, piece: Sequence[int]) -> tuple[str, list[int]]:
    """Family and Bourbaki ordering of a connected classical sub-diagram."""
    piece = sorted(piece)
    if len(piece) == 1:
        return "A", list(piece)
    adj = {i: [j for j in rs.neighbours(i) if j in piece] for i in piece}
    branch = [i for i in piece if len(adj[i]) == 3]
    if branch:
        b = branch[0]
        arms = []
        for start in adj[b]:
            arm = [start]
            prev, cur = b, start
            while True:
                nxt = [j for j in adj[cur] if j != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                arm.append(cur)
            arms.append(arm)
        arms.sort(key=lambda a: (-len(a), min(a)))
        long_arm, leaves = arms[0], sorted(a[0] for a in arms[1:])
        return "D", list(reversed(long_arm)) + [b] + leaves
    ends = [i for i in piece if len(adj[i]) == 1]
    double = [(i, j) for i in piece for j in adj[i] if rs.cartan(i, j) == -2]
    if not double:
        return "A", _walk(adj, min(ends))
    i, j = double[0]  # alpha_i is the shorter root
    if len(piece) == 2:
        fam = rs.root_family[i] if rs.root_family else "B"
        if fam == "C":
            return "C", [i, j]
        return "B", [j, i]
    if len(adj[i]) == 1:
        far = [e for e in ends if e != i][0]
        return "B", _walk(adj, far)
    far = [e for e in ends if e != j][0]
    return "C", _walk(adj, far)


def _readings(rs: RootSystem, fam: str, order: list[int]) -> list[tuple[str, list[int], list[int]]]:
    m = len(order)
    out: list[tuple[str, list[int], list[int]]] = []
    if m == 1:
        return [(ALPHA, order, [1]), (TWO_ALPHA, order, [2])]
    if fam == "A":
        out.append((A_SUM, order, [1] * m))
        if m == 3:
            out.append((A3_MIDDLE, order, [1, 2, 1]))
    elif fam == "B":
        out += [(B_SUM, order, [1] * m), (B_DOUBLE, order, [2] * m)]
        if m == 3:
            out.append((B3_123, order, [1, 2, 3]))
        if m == 2:
            out.append((C_PATTERN, order[::-1], [1, 1]))
    elif fam == "C":
        out.append((C_PATTERN, order, [1] + [2] * (m - 2) + [1]))
        if m == 2:
            out += [(B_SUM, order[::-1], [1, 1]), (B_DOUBLE, order[::-1], [2, 2])]
    elif fam == "D":
        out.append((D_PATTERN, order, [2] * (m - 2) + [1, 1]))
    return out


def classify_spherical_root(rs: RootSystem, sigma: RootCombination) -> SphericalRootKind | NotSpherical:
    """Match a root combination against the table of spherical roots."""
    coeffs = sigma.coeffs
    if len(coeffs) != rs.rank:
        return NotSpherical("dimension mismatch")
    if any(c < 0 for c in coeffs):
        return NotSpherical("negative coefficient")
    supp = sigma.support()
    if not supp:
        return NotSpherical("zero combination")
    pieces = _connected_pieces(rs, supp)
    if len(pieces) == 2 and all(len(p) == 1 for p in pieces):
        i, j = pieces[0][0], pieces[1][0]
        if coeffs[i] == 1 and coeffs[j] == 1:
            return SphericalRootKind(ORTHOGONAL_PAIR, (rs.simple_roots[i], rs.simple_roots[j]), 2)
        return NotSpherical("orthogonal support needs coefficients 1, 1")
    if len(pieces) != 1:
        return NotSpherical("support is not connected")
    fam, order = dynkin_type(rs, pieces[0])
    for kind, ordr, pattern in _readings(rs, fam, order):
        if [coeffs[i] for i in ordr] == pattern:
            return SphericalRootKind(kind, tuple(rs.simple_roots[i] for i in ordr), len(ordr))
    return NotSpherical(f"coefficients do not match any {fam}{len(order)} row")


def sp_lower_bound(rs: RootSystem, kind: SphericalRootKind, sigma: RootCombination) -> set[str]:
    """Simple roots that the S axiom forces into S^p for this spherical root."""
    if kind.kind == B_SUM:
        return set(kind.order[1:kind.m - 1])
    if kind.kind == C_PATTERN:
        return set(kind.order[2:])
    return {rs.simple_roots[i] for i in sigma.support() if pair_index(rs, i, sigma) == 0}


def varpi(rs: RootSystem, component: int, i: int) -> Weight:
    """Weight of the i-th exterior power of the vector representation.

    In B_n the last one is twice the spin weight, in D_n the last two are both
    omega_{n-1} + omega_n, and index 0 is the zero weight. In types A and C
    this is the fundamental weight.
    """
    if not 0 <= component < len(rs.components):
        raise IndexOutOfRange(f"component {component}")
    fam, n = rs.components[component]
    if not 0 <= i <= n:
        raise IndexOutOfRange(f"varpi index {i} for {fam}{n}")
    v = [0] * rs.rank
    if i == 0:
        return Weight(tuple(v))
    names = rs.component_roots[component]
    if fam == "B" and i == n:
        v[rs.index(names[n - 1])] = 2
    elif fam == "D" and i >= n - 1:
        v[rs.index(names[n - 2])] += 1
        v[rs.index(names[n - 1])] += 1
    else:
        v[rs.index(names[i - 1])] = 1
    return Weight(tuple(v))


def _term(coef: int, sym: str) -> str:
    if coef == 1:
        return sym
    return f"{coef}{sym}"


def format_weight(rs: RootSystem, w: Weight, naming: str = "omega") -> str:
    """Render a weight as 'w1+w'1' (omega) or in exterior-power weights (varpi).

    In varpi naming the tail of an orthogonal component is rewritten as far as
    integrality allows and any leftover spin part stays as an omega term.
    """
    parts: list[tuple[int, int, str]] = []
    if naming not in ("omega", "varpi"):
        raise ValueError(f"unknown naming {naming!r}")
    for k, names in enumerate(rs.component_roots):
        fam, n = rs.components[k]
        prime = "'" * k
        coeffs = [w.coeffs[rs.index(x)] for x in names]
        local: list[tuple[int, int, str]] = []
        if naming == "omega":
            local = [(i, 0, _term(c, f"w{prime}{i + 1}")) for i, c in enumerate(coeffs) if c]
        else:
            tail_from = n
            if fam == "B":
                tail_from = n - 1
                c = coeffs[n - 1]
                if c // 2:
                    local.append((n - 1, 0, _term(c // 2, f"v{prime}{n}")))
                if c % 2:
                    local.append((n - 1, 1, _term(c % 2, f"w{prime}{n}")))
            elif fam == "D" and n >= 2:
                tail_from = n - 2
                a, b = coeffs[n - 2], coeffs[n - 1]
                both = min(a, b)
                if both:
                    local.append((n - 2, 0, _term(both, f"v{prime}{n}")))
                if a - both:
                    local.append((n - 2, 1, _term(a - both, f"w{prime}{n - 1}")))
                if b - both:
                    local.append((n - 1, 1, _term(b - both, f"w{prime}{n}")))
            local += [(i, 0, _term(c, f"v{prime}{i + 1}")) for i, c in enumerate(coeffs[:tail_from]) if c]
        off = rs.index(names[0])
        parts += [(off + i, sub, t) for i, sub, t in local]
    parts.sort()
    return "+".join(t for _, _, t in parts) if parts else "0"
