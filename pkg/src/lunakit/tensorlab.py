"""Exact multilinear algebra for the invariant vectors h_D and the projection maps pi.

Everything lives at fixed small parameters. A tensor is a sparse map from
monomials to Fractions over a shape, which is a tuple of factors: a plain
vector space, an exterior or symmetric power of it, or the full exterior
algebra (for the spin module). Monomial keys are tuples of basis indices,
one tuple per factor, kept in normal form.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Mapping, Sequence

from . import families
from .order import low_triples_from
from .sphsys import DeltaVector, SphericalSystem


class UnknownIndex(KeyError):
    pass


class ShapeMismatch(ValueError):
    pass


SYMPLECTIC = "symplectic"
SYMMETRIC = "symmetric"


@dataclass(frozen=True)
class BasedSpace:
    """A vector space with an ordered basis indexed by integers, and an optional form.

    For both forms the value on e_i, e_j is delta_{i,-j} when i > 0; the
    symplectic form is extended by antisymmetry, the symmetric one by symmetry
    (so e_0 pairs to 1 with itself).
    """

    name: str
    symbol: str
    indices: tuple[int, ...]
    form: str | None = None

    def __post_init__(self):
        if len(set(self.indices)) != len(self.indices):
            raise ValueError("repeated basis index")

    @property
    def dim(self) -> int:
        return len(self.indices)

    def pos(self, i: int) -> int:
        try:
            return self.indices.index(i)
        except ValueError:
            raise UnknownIndex(f"{self.symbol}{i} is not a basis vector of {self.name}") from None

    def label(self, i: int) -> str:
        return f"{self.symbol}{i}"

    def pair(self, i: int, j: int) -> int:
        if self.form is None:
            raise ValueError(f"{self.name} carries no form")
        if j != -i:
            return 0
        if self.form == SYMMETRIC:
            return 1
        if i == 0:
            return 0
        return 1 if i > 0 else -1

    def form_matrix(self) -> list[list[int]]:
        return [[self.pair(i, j) for j in self.indices] for i in self.indices]


def standard_space(name: str, symbol: str, n: int) -> BasedSpace:
    return BasedSpace(name, symbol, tuple(range(1, n + 1)))


def symplectic_space(n: int, name: str = "W") -> BasedSpace:
    """C^{2n} with basis e'_1..e'_n, e'_{-n}..e'_{-1}."""
    return BasedSpace(name, "e'", tuple(range(1, n + 1)) + tuple(range(-n, 0)), SYMPLECTIC)


def orthogonal_space(n: int, name: str = "W") -> BasedSpace:
    """C^{2n+1} with basis e'_1..e'_n, e'_0, e'_{-n}..e'_{-1}."""
    return BasedSpace(name, "e'", tuple(range(1, n + 1)) + (0,) + tuple(range(-n, 0)), SYMMETRIC)


VEC, WEDGE, SYM, EXT = "vec", "wedge", "sym", "ext"


@dataclass(frozen=True)
class Factor:
    kind: str
    space: BasedSpace
    degree: int | None = None

    def __str__(self) -> str:
        n = self.space.name
        if self.kind == VEC:
            return n
        if self.kind == WEDGE:
            return f"Λ^{self.degree}{n}"
        if self.kind == SYM:
            return f"S^{self.degree}{n}"
        return f"Λ{n}"


def vec(space: BasedSpace) -> Factor:
    return Factor(VEC, space, 1)


def wedge(space: BasedSpace, k: int) -> Factor:
    return Factor(WEDGE, space, k)


def sym(space: BasedSpace, k: int) -> Factor:
    return Factor(SYM, space, k)


def ext(space: BasedSpace) -> Factor:
    return Factor(EXT, space)


Shape = tuple[Factor, ...]
Key = tuple[tuple[int, ...], ...]


def _sort_sign(items: Sequence[int], space: BasedSpace) -> tuple[int, tuple[int, ...]]:
    """Sign of the sorting permutation and the sorted tuple; sign 0 on a repeat."""
    pos = [space.pos(i) for i in items]
    if len(set(pos)) != len(pos):
        return 0, ()
    sign = 1
    for a in range(len(pos)):
        for b in range(a + 1, len(pos)):
            if pos[a] > pos[b]:
                sign = -sign
    return sign, tuple(sorted(items, key=space.pos))


def normalize(factor: Factor, items: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Normal form of one factor monomial with the sign it picks up."""
    sp = factor.space
    if factor.kind in (WEDGE, EXT):
        if factor.kind == WEDGE and len(items) != factor.degree:
            raise ShapeMismatch(f"{len(items)} vectors in {factor}")
        return _sort_sign(items, sp)
    if factor.kind == SYM:
        if len(items) != factor.degree:
            raise ShapeMismatch(f"{len(items)} vectors in {factor}")
        return 1, tuple(sorted(items, key=sp.pos))
    if len(items) != 1:
        raise ShapeMismatch(f"{len(items)} vectors in {factor}")
    sp.pos(items[0])
    return 1, tuple(items)


@dataclass(frozen=True, eq=False)
class ExactTensor:
    shape: Shape
    terms: Mapping[Key, Fraction] = field(default_factory=dict)

    @staticmethod
    def build(shape: Shape, raw: Iterable[tuple[Sequence[Sequence[int]], object]]) -> "ExactTensor":
        """Sum of coefficient times monomial, normalizing each factor."""
        acc: dict[Key, Fraction] = {}
        for parts, c in raw:
            if len(parts) != len(shape):
                raise ShapeMismatch(f"{len(parts)} factors for a shape with {len(shape)}")
            sign, key = 1, []
            for f, items in zip(shape, parts):
                s, k = normalize(f, items)
                sign *= s
                key.append(k)
            if sign == 0:
                continue
            key = tuple(key)
            acc[key] = acc.get(key, Fraction(0)) + sign * Fraction(c)
        return ExactTensor(shape, {k: v for k, v in acc.items() if v != 0})

    def _same(self, other: "ExactTensor") -> None:
        if self.shape != other.shape:
            raise ShapeMismatch(f"{format_shape(self.shape)} vs {format_shape(other.shape)}")

    def __add__(self, other: "ExactTensor") -> "ExactTensor":
        self._same(other)
        acc = dict(self.terms)
        for k, v in other.terms.items():
            acc[k] = acc.get(k, Fraction(0)) + v
        return ExactTensor(self.shape, {k: v for k, v in acc.items() if v != 0})

    def scale(self, c) -> "ExactTensor":
        c = Fraction(c)
        if c == 0:
            return ExactTensor(self.shape, {})
        return ExactTensor(self.shape, {k: c * v for k, v in self.terms.items()})

    def __neg__(self) -> "ExactTensor":
        return self.scale(-1)

    def __sub__(self, other: "ExactTensor") -> "ExactTensor":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactTensor):
            return NotImplemented
        return self.shape == other.shape and dict(self.terms) == dict(other.terms)

    def __hash__(self):
        return hash((self.shape, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def items(self) -> list[tuple[Key, Fraction]]:
        """Terms in a deterministic order."""
        def order(key: Key):
            return tuple(tuple(f.space.pos(i) for i in k) for f, k in zip(self.shape, key))
        return sorted(self.terms.items(), key=lambda kv: order(kv[0]))

    def __str__(self) -> str:
        return format_tensor(self)


def zero(shape: Shape) -> ExactTensor:
    return ExactTensor(shape, {})


def monomial(shape: Shape, *parts: Sequence[int], coeff=1) -> ExactTensor:
    return ExactTensor.build(shape, [(parts, coeff)])


def tensor_product(x: ExactTensor, y: ExactTensor) -> ExactTensor:
    terms = {}
    for kx, cx in x.terms.items():
        for ky, cy in y.terms.items():
            terms[kx + ky] = cx * cy
    return ExactTensor(x.shape + y.shape, terms)


def format_shape(shape: Shape) -> str:
    return " ⊗ ".join(str(f) for f in shape) if shape else "C"


def _format_factor(f: Factor, key: tuple[int, ...]) -> str:
    sp = f.space
    if not key:
        return "1"
    if f.kind == SYM:
        out = []
        for i in dict.fromkeys(key):
            n = key.count(i)
            out.append(sp.label(i) + (f"^{n}" if n > 1 else ""))
        return "·".join(out)
    return "∧".join(sp.label(i) for i in key)


def format_tensor(t: ExactTensor) -> str:
    if t.is_zero():
        return "0"
    parts = []
    for key, c in t.items():
        mono = " ⊗ ".join(_format_factor(f, k) for f, k in zip(t.shape, key)) or "1"
        if c == 1:
            parts.append(("+", mono))
        elif c == -1:
            parts.append(("-", mono))
        else:
            parts.append(("-" if c < 0 else "+", f"{abs(c)} {mono}"))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, mono in parts[1:]:
        text += f" {sign} {mono}"
    return text


def coefficient_list(t: ExactTensor) -> list[list]:
    """[[factor labels..., "p/q"], ...] for machine-readable output."""
    out = []
    for key, c in t.items():
        out.append([_format_factor(f, k) for f, k in zip(t.shape, key)] + [str(c)])
    return out


def bilinear(x: ExactTensor, y: ExactTensor, in_x: Shape, in_y: Shape, out: Shape,
             rule: Callable[[Key, Key], Iterable[tuple[Sequence[Sequence[int]], object]]]) -> ExactTensor:
    """Extend a rule on basis monomials to the bilinear map it defines."""
    if x.shape != in_x:
        raise ShapeMismatch(f"first argument is {format_shape(x.shape)}, expected {format_shape(in_x)}")
    if y.shape != in_y:
        raise ShapeMismatch(f"second argument is {format_shape(y.shape)}, expected {format_shape(in_y)}")
    raw = []
    for kx, cx in x.terms.items():
        for ky, cy in y.terms.items():
            for parts, c in rule(kx, ky):
                raw.append((parts, cx * cy * Fraction(c)))
    return ExactTensor.build(out, raw)


# --- helpers on monomials --------------------------------------------------

def _omit(seq: Sequence[int], k: int) -> tuple[int, ...]:
    return tuple(seq[:k]) + tuple(seq[k + 1:])


def _top_coefficient(space: BasedSpace, items: Sequence[int]) -> int:
    """Coefficient of u_1∧...∧u_n against the basis wedge in basis order."""
    if len(items) != space.dim:
        return 0
    sign, _ = _sort_sign(items, space)
    return sign


def _form_pairing(space: BasedSpace, a: int, b: int, c: int, d: int) -> list[tuple[tuple[int, int], int]]:
    """omega(a,c) bd - omega(b,c) ad - omega(a,d) bc + omega(b,d) ac in S^2."""
    f = space.pair
    return [((b, d), f(a, c)), ((a, d), -f(b, c)), ((b, c), -f(a, d)), ((a, c), f(b, d))]


def invariant_check(space: BasedSpace, t: ExactTensor, factor: int) -> Fraction:
    """<form, alpha> for the Λ²-component at position ``factor``, summed over the rest.

    Returns the largest absolute pairing among the slices, so 0 means every
    slice lies in the kernel of the form.
    """
    slices: dict[Key, Fraction] = {}
    for key, c in t.terms.items():
        a, b = key[factor]
        rest = key[:factor] + key[factor + 1:]
        slices[rest] = slices.get(rest, Fraction(0)) + c * space.pair(a, b)
    return max((abs(v) for v in slices.values()), default=Fraction(0))


# --- the spin module -------------------------------------------------------

@dataclass(frozen=True)
class SpinSpace:
    """S = Λ U* for W = U + C e'_0 + U*, with psi_k = e'_{-k}.

    Monomials of S are stored as increasing tuples in the basis order of W,
    so psi_n∧...∧psi_1 is the normal order. e'_0 acts by (-1)^degree, which
    keeps coefficients rational: the anticommutator of pi_S(a), pi_S(b) is
    B(a, b) Id except that e'_0 squares to Id, i.e. e'_0 has norm 2 there.
    """

    w: BasedSpace

    @property
    def n(self) -> int:
        return max(self.w.indices)

    @property
    def factor(self) -> Factor:
        return ext(self.u_dual)

    @property
    def u_dual(self) -> BasedSpace:
        return BasedSpace("S", "ψ", tuple(range(self.n, 0, -1)))

    def act(self, i: int, psis: Sequence[int]) -> list[tuple[tuple[int, ...], int]]:
        """pi_S(e'_i ⊗ psi_{i_1}∧...∧psi_{i_k}) as (psi indices, coefficient) pairs."""
        if i > 0:
            out = []
            for j, ij in enumerate(psis):
                b = self.w.pair(i, -ij)
                if b:
                    out.append((_omit(psis, j), (-1) ** j * b))
            return out
        if i == 0:
            return [(tuple(psis), (-1) ** len(psis))]
        return [((-i,) + tuple(psis), 1)]

    def apply(self, i: int, phi: ExactTensor) -> ExactTensor:
        shape = (self.factor,)
        raw = []
        for (key,), c in phi.terms.items():
            for ps, v in self.act(i, key):
                raw.append(((ps,), c * v))
        return ExactTensor.build(shape, raw)

    def spin_square(self, a: int, b: int, phi: ExactTensor) -> ExactTensor:
        """Half the commutator pi_S(a) pi_S(b) - pi_S(b) pi_S(a) applied to phi."""
        ab = self.apply(a, self.apply(b, phi))
        ba = self.apply(b, self.apply(a, phi))
        return (ab - ba).scale(Fraction(1, 2))

    def element(self, psis: Sequence[int], coeff=1) -> ExactTensor:
        return ExactTensor.build((self.factor,), [((tuple(psis),), coeff)])


# --- families --------------------------------------------------------------

AY22C, AYSSBT, ABYSS = "ay22c", "ayssbt", "abyss"


@dataclass(frozen=True)
class Spaces:
    v: BasedSpace
    w: BasedSpace
    v_dual: BasedSpace | None = None
    spin: SpinSpace | None = None


def spaces(family: str, params: Mapping[str, int]) -> Spaces:
    if family == AY22C:
        t = _param(params, "t", 2)
        if t < 2:
            raise ValueError("ay22c needs t >= 2")
        return Spaces(standard_space("V", "e", 3), symplectic_space(t + 1), standard_space("V*", "φ", 3))
    if family == AYSSBT:
        s, t = _param(params, "s", 2), _param(params, "t", 1)
        if s < 1 or t < 1:
            raise ValueError("ayssbt needs s, t >= 1")
        return Spaces(standard_space("V", "e", s + 1), orthogonal_space(s + t))
    if family == ABYSS:
        s = _param(params, "s", 2)
        if s < 2:
            raise ValueError("abyss needs s >= 2")
        w = orthogonal_space(s)
        return Spaces(standard_space("V", "e", s + 1), w, spin=SpinSpace(w))
    raise UnknownIndex(f"unknown family {family!r}")


def _param(params: Mapping[str, int], name: str, default: int) -> int:
    return int(params.get(name, default))


def _ay22c_h(sp: Spaces, index: int) -> ExactTensor:
    V, Vd, W = sp.v, sp.v_dual, sp.w
    n = max(W.indices)
    if index == 1:
        return monomial((vec(Vd),), (3,))
    if index == 2:
        shape = (vec(Vd), wedge(W, 2))
        raw = [(((3,), (2, -2)), 1)]
        raw += [(((3,), (i, -i)), Fraction(-1, n)) for i in range(1, n + 1)]
        raw += [(((2,), (1, -2)), -1), (((1,), (1, 2)), -1)]
        return ExactTensor.build(shape, raw)
    if index == 3:
        shape = (vec(V), wedge(W, 2))
        return ExactTensor.build(shape, [(((1,), (1, -2)), 1), (((2,), (1, 2)), -1)])
    if index == 4:
        shape = (vec(V), vec(W))
        return ExactTensor.build(shape, [(((1,), (-2,)), 1), (((2,), (2,)), -1), (((3,), (1,)), -1)])
    if index == 5:
        return monomial((vec(W),), (1,))
    raise UnknownIndex(f"ay22c has invariants h1..h5, not h{index}")


def _ayssbt_h(sp: Spaces, index: int) -> ExactTensor:
    V, W = sp.v, sp.w
    s = V.dim - 1
    if index < 1 or index > 2 * s + 2:
        raise UnknownIndex(f"ayssbt has invariants h1..h{2 * s + 2}, not h{index}")
    i = (index + 1) // 2
    odd = index % 2 == 1
    shape = (wedge(V, i), wedge(W, i - 1 if odd else i))
    raw = []
    for js in combinations(range(2, s + 2), i - 1):
        v_part = (1,) + js
        w_part = tuple(s - j + 2 for j in reversed(js))
        raw.append(((v_part, w_part if odd else w_part + (0,)), 1))
    if not odd:
        for js in combinations(range(2, s + 2), i):
            raw.append(((js, tuple(s - j + 2 for j in reversed(js))), 1))
    return ExactTensor.build(shape, raw)


def _abyss_h(sp: Spaces, index: int) -> ExactTensor:
    V, W, S = sp.v, sp.w, sp.spin
    s = V.dim - 1
    if index == 3:
        shape = (wedge(V, 2), vec(W))
        return ExactTensor.build(shape, [(((1, i), (s - i + 2,)), 1) for i in range(2, s + 2)])
    if index == 2 * s:
        shape = (wedge(V, s), S.factor)
        raw = [((tuple(range(2, s + 2)), ()), 1)]
        for i in range(2, s + 2):
            v_part = tuple(j for j in range(1, s + 2) if j != i)
            raw.append(((v_part, (s - i + 2,)), (-1) ** (i - 1)))
        return ExactTensor.build(shape, raw)
    raise UnknownIndex(f"abyss invariants are h3 and h{2 * s}, not h{index}")


def invariant_vector(family: str, index: int, params: Mapping[str, int] | None = None) -> ExactTensor:
    """The H-eigenvector h_i in the dual of the section module of D_i."""
    sp = spaces(family, params or {})
    if family == AY22C:
        return _ay22c_h(sp, index)
    if family == AYSSBT:
        return _ayssbt_h(sp, index)
    return _abyss_h(sp, index)


# --- projection maps -------------------------------------------------------

@dataclass(frozen=True)
class ProjectionMap:
    triple_id: str
    in_x: Shape
    in_y: Shape
    out: Shape
    rule: Callable[[Key, Key], Iterable]

    def __call__(self, x: ExactTensor, y: ExactTensor) -> ExactTensor:
        return bilinear(x, y, self.in_x, self.in_y, self.out, self.rule)


def _ay22c_maps(sp: Spaces) -> dict[str, ProjectionMap]:
    V, Vd, W = sp.v, sp.v_dual, sp.w
    Vd_L2 = (vec(Vd), wedge(W, 2))
    V_L2 = (vec(V), wedge(W, 2))
    V_W = (vec(V), vec(W))
    S2 = sym(W, 2)

    def sl_s2(kx, ky):
        # (phi ⊗ v - 1/3 phi(v) Id) ⊗ Q, Id = sum phi_i ⊗ e_i
        (phi,), (a, b) = kx
        (v,), (c, d) = ky
        for q, w in _form_pairing(W, a, b, c, d):
            if not w:
                continue
            yield ((phi,), (v,), q), w
            if phi == v:
                for i in V.indices:
                    yield ((i,), (i,), q), Fraction(-w, 3)

    def wedge_v_s2(kx, ky):
        (u,), (a, b) = kx
        (v,), (c, d) = ky
        for q, w in _form_pairing(W, a, b, c, d):
            if w:
                yield ((u, v), q), w

    def pairing_s2(kx, ky):
        (phi,), (a, b) = kx
        (v,), (c, d) = ky
        if phi != v:
            return
        for q, w in _form_pairing(W, a, b, c, d):
            if w:
                yield (q,), w

    def wedge_v_w(kx, ky):
        (u,), (a, b) = kx
        (v,), (c,) = ky
        yield ((u, v), (b,)), W.pair(a, c)
        yield ((u, v), (a,)), -W.pair(b, c)

    def wedge_v(kx, ky):
        (u,), (a,) = kx
        (v,), (b,) = ky
        yield ((u, v),), W.pair(a, b)

    return {m.triple_id: m for m in [
        ProjectionMap("D2,D3,D1+D4+D5", Vd_L2, V_L2, (vec(Vd), vec(V), S2), sl_s2),
        ProjectionMap("D3,D3,D1+2D5", V_L2, V_L2, (wedge(V, 2), S2), wedge_v_s2),
        ProjectionMap("D2,D2,D4+D5", Vd_L2, Vd_L2, (wedge(Vd, 2), S2), wedge_v_s2),
        ProjectionMap("D2,D3,2D5", Vd_L2, V_L2, (S2,), pairing_s2),
        ProjectionMap("D3,D4,D1+D5", V_L2, V_W, (wedge(V, 2), vec(W)), wedge_v_w),
        ProjectionMap("D4,D4,D1", V_W, V_W, (wedge(V, 2),), wedge_v),
    ]}


def pi1(space: BasedSpace, us: Sequence[int], vs: Sequence[int]):
    """Contract one vector of each wedge with the form: sum (-1)^{i+j} b(u_i, v_j) (...)."""
    for i, u in enumerate(us, 1):
        for j, v in enumerate(vs, 1):
            b = space.pair(u, v)
            if b:
                yield _omit(us, i - 1) + _omit(vs, j - 1), (-1) ** (i + j) * b


def pi2(us: Sequence[int], vs: Sequence[int]):
    """sum (-1)^i u_i ⊗ u_1∧..û_i..∧u_l∧v_1∧..∧v_m."""
    for i, u in enumerate(us, 1):
        yield (u,), _omit(us, i - 1) + tuple(vs), (-1) ** i


def _ayssbt_maps(sp: Spaces, l: int, m: int) -> dict[str, ProjectionMap]:
    V, W = sp.v, sp.w
    in_x = (wedge(V, l), wedge(W, l))
    in_y = (wedge(V, m), wedge(W, m))
    lw = wedge(W, l + m - 2)

    def psi(kx, ky):
        for u, rest, c2 in pi2(kx[0], ky[0]):
            for wk, c1 in pi1(W, kx[1], ky[1]):
                yield (u, rest, wk), c1 * c2

    def rho2(kx, ky):
        for wk, c1 in pi1(W, kx[1], ky[1]):
            yield (kx[0] + ky[0], wk), c1

    top = l + m
    outs = []
    outs.append(ProjectionMap("pi2*pi1", in_x, in_y, (vec(V), wedge(V, top - 1), lw), psi))
    if top <= V.dim:
        outs.append(ProjectionMap("pi3*pi1", in_x, in_y, (wedge(V, top), lw), rho2))
    else:
        outs.append(ProjectionMap("pi3*pi1", in_x, in_y, (lw,), lambda kx, ky: ()))
    return {m_.triple_id: m_ for m_ in outs}


def _abyss_maps(sp: Spaces) -> dict[str, ProjectionMap]:
    V, W, S = sp.v, sp.w, sp.spin
    s = V.dim - 1
    L2_W = (wedge(V, 2), vec(W))
    Ls_S = (wedge(V, s), S.factor)

    def d3_d2s(kx, ky):
        (u1, u2), (w,) = kx
        v, psis = ky
        for out_psi, c in S.act(w, psis):
            yield ((u1,), out_psi), c * _top_coefficient(V, (u2,) + v)
            yield ((u2,), out_psi), -c * _top_coefficient(V, (u1,) + v)

    maps = [ProjectionMap("D3,D2s,D1+D2s+1", L2_W, Ls_S, (vec(V), S.factor), d3_d2s)]
    if s == 2:
        top_psi = S.u_dual.indices  # psi_2∧psi_1

        def d4_d4(kx, ky):
            (u1, u2), phi = kx
            (v1, v2), psi = ky
            p = _top_coefficient(S.u_dual, phi + psi) if len(phi + psi) == len(top_psi) else 0
            if not p:
                return
            yield ((v2,),), p * _top_coefficient(V, (u1, u2, v1))
            yield ((v1,),), -p * _top_coefficient(V, (u1, u2, v2))

        maps.append(ProjectionMap("D4,D4,D1", Ls_S, Ls_S, (vec(V),), d4_d4))
    return {m.triple_id: m for m in maps}


def projection_maps(family: str, params: Mapping[str, int] | None = None) -> dict[str, ProjectionMap]:
    params = params or {}
    sp = spaces(family, params)
    if family == AY22C:
        return _ay22c_maps(sp)
    if family == AYSSBT:
        return _ayssbt_maps(sp, _param(params, "l", 1), _param(params, "m", 1))
    return _abyss_maps(sp)


def project(family: str, triple_id: str, x: ExactTensor, y: ExactTensor,
            params: Mapping[str, int] | None = None) -> ExactTensor:
    maps = projection_maps(family, params)
    if triple_id not in maps:
        raise UnknownIndex(f"{family} has maps {sorted(maps)}, not {triple_id!r}")
    return maps[triple_id](x, y)


def modulo_identity(t: ExactTensor) -> ExactTensor:
    """Normal form of a V* ⊗ V ⊗ X tensor in (V* ⊗ V / C Id) ⊗ X.

    The phi_n ⊗ e_n coefficient is removed using Id = sum phi_i ⊗ e_i, which
    identifies the quotient with sl(V).
    """
    vd, v = t.shape[0].space, t.shape[1].space
    last = vd.indices[-1]
    raw = []
    for key, c in t.terms.items():
        if key[0] == (last,) and key[1] == (last,):
            for i in vd.indices[:-1]:
                raw.append((((i,), (i,)) + key[2:], -c))
        else:
            raw.append((key, c))
    return ExactTensor.build(t.shape, raw)


# --- certificates ----------------------------------------------------------

@dataclass(frozen=True)
class Certificate:
    family: str
    params: dict[str, int]
    triple: str
    map_id: str
    value: ExactTensor
    nonzero: bool
    low: bool | None = None

    def line(self) -> str:
        state = "nonzero" if self.nonzero else "zero"
        low = "" if self.low is None else ("  [low]" if self.low else "  [not low]")
        return f"{self.triple}: {self.map_id} = {format_tensor(self.value)}  ({state}){low}"


_AY22C_PAIRS = {
    "D2,D3,D1+D4+D5": (2, 3), "D3,D3,D1+2D5": (3, 3), "D2,D2,D4+D5": (2, 2),
    "D2,D3,2D5": (2, 3), "D3,D4,D1+D5": (3, 4), "D4,D4,D1": (4, 4),
}


def _triple_vector(sys: SphericalSystem, text: str) -> tuple[DeltaVector, DeltaVector, DeltaVector]:
    from .catalog import parse_combination

    d, e, f = text.split(",")
    return parse_combination(sys, d), parse_combination(sys, e), parse_combination(sys, f)


def _is_low(sys: SphericalSystem, text: str) -> bool:
    d, e, f = _triple_vector(sys, text)
    return any(t.F == f for t in low_triples_from(sys, d, e))


def certify_triples(family: str, params: Mapping[str, int] | None = None) -> list[Certificate]:
    """Evaluate every explicit projection on its pair of invariants.

    Each triple is also checked to be low on the family's spherical system.
    """
    params = dict(params or {})
    out = []
    if family == AY22C:
        t = _param(params, "t", 2)
        sys = families.ay22c(t)
        maps = projection_maps(AY22C, params)
        for tid, (i, j) in _AY22C_PAIRS.items():
            x, y = invariant_vector(AY22C, i, params), invariant_vector(AY22C, j, params)
            val = maps[tid](x, y)
            if tid == "D2,D3,D1+D4+D5":
                val = modulo_identity(val)
            out.append(Certificate(family, params, tid, tid, val, not val.is_zero(), _is_low(sys, tid)))
        return out
    if family == AYSSBT:
        s, t = _param(params, "s", 2), _param(params, "t", 1)
        l, m = _param(params, "l", 1), _param(params, "m", 1)
        sys = families.ay_b(s, t)
        tid = f"D{2 * l},D{2 * m},D1+D{2 * l + 2 * m - 3}"
        x, y = invariant_vector(AYSSBT, 2 * l, params), invariant_vector(AYSSBT, 2 * m, params)
        for map_id, m_ in projection_maps(AYSSBT, params).items():
            val = m_(x, y)
            out.append(Certificate(family, params, tid, map_id, val, not val.is_zero(), _is_low(sys, tid)))
        return out
    if family == ABYSS:
        s = _param(params, "s", 2)
        sys = families.aby(s)
        maps = projection_maps(ABYSS, params)
        for map_id, m_ in maps.items():
            if map_id == "D3,D2s,D1+D2s+1":
                tid = f"D3,D{2 * s},D1+D{2 * s + 1}"
                x, y = invariant_vector(ABYSS, 3, params), invariant_vector(ABYSS, 2 * s, params)
            else:
                tid = map_id
                x = y = invariant_vector(ABYSS, 4, params)
            val = m_(x, y)
            out.append(Certificate(family, params, tid, map_id, val, not val.is_zero(), _is_low(sys, tid)))
        return out
    raise UnknownIndex(f"unknown family {family!r}")
