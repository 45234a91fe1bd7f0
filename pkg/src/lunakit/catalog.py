"""Built-in catalog of spherical nilpotent orbit families and their expected invariants.

Each family is a spherical system over the full group K together with the
color D_p whose weight is the highest weight of p. Tail families are obtained
from the localized basic systems by placing their roots inside K and padding
with S^p roots and b colors read off the semisimple element h: a simple root
outside supp Sigma lies in S^p exactly when its value on h is zero.

Color labels D1, D2, ... follow the numbering used for the semigroup formulas.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Mapping, Sequence

from . import families, ops
from .rootsys import (
    RootSystem,
    Weight,
    build_root_system,
    format_weight,
    fundamental_weight,
    parse_root_name,
    root_name,
    zero_weight,
)
from .semigroup import (
    COLLAPSED_B,
    COLLAPSED_B_ROMAN,
    COLLAPSED_D,
    COLLAPSED_D_ROMAN,
    EXCEPTION_CCABX,
    NON_NORMAL,
    NORMAL,
    NORMAL_BY_EXCEPTION,
    PROVEN,
    TAIL,
    TAIL_ROMAN,
    CaseMismatch,
    TailData,
    check_tail_generators,
    explicit_tilde,
    format_generators,
    gamma_semigroup,
    normality_verdict,
)
from .sphsys import (
    AColor,
    DeltaVector,
    SigmaVector,
    SphericalSystem,
    format_delta,
    make_system,
    validate,
    weight_of_delta,
)


class BadParams(ValueError):
    pass


@dataclass(frozen=True)
class Expected:
    normal: bool | str
    generators: tuple[str, ...] = ()
    weights: tuple[str, ...] = ()
    notes: str = ""


@dataclass(frozen=True)
class OrbitCase:
    case_id: str
    params: dict[str, int]
    variant: str | None
    signed_partition: str
    system: SphericalSystem | None
    d_p: DeltaVector | None
    expected: Expected
    basic_family: str | None = None
    kind: str = ""
    s_kh: tuple[str, ...] | None = None
    lambda_p: Weight | None = None
    tail: TailData | None = None
    surjectivity: str = PROVEN
    local: SphericalSystem | None = None


@dataclass(frozen=True)
class CaseFamily:
    case_id: str
    group: str
    params: tuple[str, ...]
    constraint: str
    signed_partition: str
    check: Callable[[Mapping[str, int]], str | None]
    variants: Callable[[Mapping[str, int]], tuple[str, ...]]
    samples: tuple[dict[str, int], ...] = field(default_factory=tuple)


# --- root data -----------------------------------------------------------

def _vec_weight(rs: RootSystem, comp: int) -> Weight:
    """Highest weight of the defining representation of an orthogonal or symplectic factor."""
    fam, n = rs.components[comp]
    names = rs.component_roots[comp]
    w = zero_weight(rs)
    if fam == "B" and n == 1:
        return w + fundamental_weight(rs, names[0]).scale(2)
    if fam == "D" and n == 2:
        return w + fundamental_weight(rs, names[0]) + fundamental_weight(rs, names[1])
    return w + fundamental_weight(rs, names[0])


def _root_values(rs: RootSystem, hs: Sequence[Sequence[int]]) -> dict[str, int]:
    """Values of the simple roots on h, given by its coordinates per component."""
    out = {}
    for comp, ((fam, n), h) in enumerate(zip(rs.components, hs)):
        h = list(h) + [0] * (n - len(h))
        for i in range(1, n + 1):
            if i < n:
                v = h[i - 1] - h[i]
            elif fam == "C":
                v = 2 * h[n - 1]
            elif fam == "B":
                v = h[n - 1]
            else:
                v = h[n - 2] + h[n - 1] if n >= 2 else h[0]
            if fam == "D" and i == n - 1 and n >= 2:
                v = h[n - 2] - h[n - 1]
            out[root_name(comp, i)] = v
    return out


def _kernel_roots(rs: RootSystem, hs: Sequence[Sequence[int]]) -> tuple[str, ...]:
    vals = _root_values(rs, hs)
    return rs.sort_names(n for n, v in vals.items() if v == 0)


def _solve_d_p(sys: SphericalSystem, target: Weight) -> list[DeltaVector]:
    """All D in N Delta with omega(D) equal to the target weight."""
    n = len(sys.colors)
    ws = [weight_of_delta(sys, DeltaVector(tuple(int(i == d) for i in range(n)))).coeffs for d in range(n)]
    out = []

    def rec(d: int, left: list[int], cur: list[int]) -> None:
        if d == n:
            if not any(left):
                out.append(DeltaVector(tuple(cur)))
            return
        w = ws[d]
        k = 0
        while all(l - k * x >= 0 for l, x in zip(left, w)):
            cur.append(k)
            rec(d + 1, [l - k * x for l, x in zip(left, w)], cur)
            cur.pop()
            if not any(w):
                break
            k += 1

    rec(0, list(target.coeffs), [])
    return out


def _unique_d_p(sys: SphericalSystem, target: Weight) -> DeltaVector:
    sols = _solve_d_p(sys, target)
    if len(sols) != 1:
        raise CaseMismatch(f"{len(sols)} colors combinations have weight {format_weight(sys.rs, target)}")
    return sols[0]


# --- system surgery ------------------------------------------------------

def _place(local: SphericalSystem, rs: RootSystem, root_map: Mapping[str, str],
           s_kh: Sequence[str], labels: Mapping[str, str]) -> SphericalSystem:
    """Move a local system into rs and pad S^p with the h-kernel roots outside supp Sigma."""
    sigma = [{root_map[k]: v for k, v in d.items()} for d in local.sigma_dicts()]
    supp = {k for d in sigma for k in d}
    sp = {root_map[n] for n in local.sp} | (set(s_kh) - supp)
    acols = [(a.name, a.pairing) for a in local.a_colors]
    return make_system(rs, sp, sigma, acols, labels)


def rename_roots(sys: SphericalSystem, rs: RootSystem, mapping: Mapping[str, str]) -> SphericalSystem:
    """Transport a system along a bijection of simple-root names onto rs."""
    sigma = [{mapping[k]: v for k, v in d.items()} for d in sys.sigma_dicts()]
    sp = [mapping[n] for n in sys.sp]
    new = make_system(rs, sp, sigma, [(a.name, a.pairing) for a in sys.a_colors])
    by_mover = {m: c.name for c in new.colors for m in c.moved_by}
    labels = {}
    for k, v in sys.labels.items():
        c = sys.color(v)
        labels[k] = v if c.kind == "a" else by_mover[mapping[c.moved_by[0]]]
    return make_system(rs, sp, sigma, [(a.name, a.pairing) for a in sys.a_colors], labels)


def _swap_components(case: OrbitCase, case_id: str, params: dict[str, int], partition: str) -> OrbitCase:
    """The mirror family: exchange the two simple factors of K."""
    sys = case.system
    rs = sys.rs
    new_rs = build_root_system([rs.components[1], rs.components[0]])
    mapping = {}
    for name in rs.simple_roots:
        comp, i = parse_root_name(name)
        mapping[name] = root_name(1 - comp, i)
    new = rename_roots(sys, new_rs, mapping)
    s_kh = new_rs.sort_names(mapping[n] for n in case.s_kh)
    lam = _weight_rename(rs, new_rs, case.lambda_p, mapping)
    d_p = _transport(sys, new, mapping, case.d_p)
    tail = None
    if case.tail:
        t = case.tail
        extra = _transport(sys, new, mapping, t.extra)
        roman = _transport(sys, new, mapping, t.roman) if t.roman is not None else None
        tail = TailData(t.regime, t.r, {k: _transport(sys, new, mapping, v) for k, v in t.colors.items()},
                        t.sigma, extra, roman)
    exp = case.expected
    weights = tuple(_swap_weight_text(w) for w in exp.weights)
    expected = Expected(exp.normal, exp.generators, weights, exp.notes)
    return OrbitCase(case_id, params, case.variant, partition, new, d_p, expected, case.basic_family,
                     case.kind, s_kh, lam, tail, case.surjectivity, case.local)


def _transport(old: SphericalSystem, new: SphericalSystem, mapping: Mapping[str, str],
               v: DeltaVector) -> DeltaVector:
    """A vector over the colors of ``old`` seen over the colors of ``new`` after renaming roots."""
    by_mover = {m: c.name for c in new.colors for m in c.moved_by}
    coeffs: dict[str, int] = {}
    for c, x in zip(old.colors, v.coeffs):
        if x:
            name = c.name if c.kind == "a" else by_mover[mapping[c.moved_by[0]]]
            coeffs[name] = coeffs.get(name, 0) + x
    return new.delta(coeffs)


def _weight_rename(rs: RootSystem, new_rs: RootSystem, w: Weight, mapping: Mapping[str, str]) -> Weight:
    v = [0] * new_rs.rank
    for name, c in zip(rs.simple_roots, w.coeffs):
        v[new_rs.index(mapping[name])] = c
    return Weight(tuple(v))


def _swap_weight_text(text: str) -> str:
    parts = []
    for term in text.split("+"):
        if "w'" in term:
            parts.append(term.replace("w'", "w"))
        else:
            parts.append(term.replace("w", "w'"))
    return "+".join(parts)


def _last_two_swap(rs: RootSystem, comp: int) -> dict[str, str]:
    n = rs.components[comp][1]
    mapping = {name: name for name in rs.simple_roots}
    a, b = root_name(comp, n - 1), root_name(comp, n)
    mapping[a], mapping[b] = b, a
    return mapping


# --- tail families -------------------------------------------------------

def _sigma_unit(sys: SphericalSystem, k: int) -> SigmaVector:
    return SigmaVector(tuple(int(i == k) for i in range(len(sys.sigma))))


def _color(sys: SphericalSystem, label: str) -> DeltaVector:
    return sys.delta({label: 1})


def _tail_data(sys: SphericalSystem, regime: str, r: int, extra: Mapping[str, int],
               roman: str | None) -> TailData:
    """Read the reference numbering back from the labels of a tail system.

    ``extra`` and ``roman`` are given by color names.
    """
    top = 2 * r + 2 if regime in (COLLAPSED_B, COLLAPSED_B_ROMAN) else 2 * r + 3
    colors = {k: _color(sys, f"D{k}") for k in range(1, top + 1)}
    sigma = [_sigma_unit(sys, k) for k in range(len(sys.sigma))]
    rv = sys.delta({roman: 1}) if roman else None
    return TailData(regime, r, colors, sigma, sys.delta(extra), rv)


def _extra_parts(rs: RootSystem, ia: int, r: int, roman: bool) -> tuple[dict[str, int], str | None]:
    """b colors of the A-factor that the closed forms add to the last tilde D_k."""
    fam, n = rs.components[ia]
    last = "D_" + root_name(ia, n)
    if roman:
        return {last: 1}, last
    if fam == "B" and r == n - 1:
        return {last: 2}, None
    if fam == "D" and r == n - 2:
        return {"D_" + root_name(ia, n - 1): 1, last: 1}, None
    return {"D_" + root_name(ia, r + 1): 1}, None


def _rename_color(name: str, mapping: Mapping[str, str]) -> str:
    """Name of a b color after renaming roots; a pair color keeps its first root's name."""
    return "D_" + mapping[name[2:]] if name.startswith("D_") else name


def _build_tail(a_fam: str, n_a: int, t_fam: str, n_t: int, r: int, variant: str | None,
                a_first: bool, case_id: str) -> tuple[SphericalSystem, TailData, str, SphericalSystem, tuple[str, ...], Weight]:
    """Tail case with the A-part a_1..a_r in the factor (a_fam, n_a) and the tail in (t_fam, n_t).

    ``a_first`` tells which factor comes first in K.
    """
    comps = [(a_fam, n_a), (t_fam, n_t)] if a_first else [(t_fam, n_t), (a_fam, n_a)]
    rs = build_root_system(comps)
    ia, it = (0, 1) if a_first else (1, 0)
    roman = a_fam == "D" and r == n_a - 1
    if roman and variant not in ("I", "II"):
        raise BadParams(f"{case_id} at r = {r} needs variant I or II")
    if not roman and variant is not None:
        raise BadParams(f"{case_id} has no variants at these parameters")
    if t_fam == "B":
        collapsed = r == n_t
        local = families.aby(r) if collapsed else families.ay_b(r, n_t - r)
        family = f"aby({r})" if collapsed else f"ay_b({r},{n_t - r})"
        regime = (COLLAPSED_B_ROMAN if roman else COLLAPSED_B) if collapsed else (TAIL_ROMAN if roman else TAIL)
    else:
        collapsed = r == n_t - 1
        local = families.ady(r) if collapsed else families.ay_d(r, n_t - r)
        family = f"ady({r})" if collapsed else f"ay_d({r},{n_t - r})"
        regime = (COLLAPSED_D_ROMAN if roman else COLLAPSED_D) if collapsed else (TAIL_ROMAN if roman else TAIL)
    root_map = {}
    for name in local.rs.simple_roots:
        comp, i = parse_root_name(name)
        root_map[name] = root_name(ia if comp == 0 else it, i)
    h = [[2] + [1] * r, [1] * r]
    hs = h if a_first else [h[1], h[0]]
    s_kh = _kernel_roots(rs, hs)
    labels = {f"D{k}": f"D{k}" for k in range(1, len(local.a_colors) + 1)}
    beside = root_name(ia, n_a) if roman else root_name(ia, r + 1)
    if regime in (COLLAPSED_B, COLLAPSED_B_ROMAN):
        labels[f"D{2 * r + 2}"] = "D_" + beside
    else:
        if regime in (TAIL, TAIL_ROMAN):
            labels[f"D{2 * r + 2}"] = "D_" + root_name(it, r + 1)
        labels[f"D{2 * r + 3}"] = "D_" + beside
    sys = _place(local, rs, root_map, s_kh, labels)
    extra, rname = _extra_parts(rs, ia, r, roman)
    if variant == "II":
        mapping = _last_two_swap(rs, ia)
        sys = rename_roots(sys, rs, mapping)
        s_kh = rs.sort_names(mapping[n] for n in s_kh)
        extra = {_rename_color(k, mapping): v for k, v in extra.items()}
        rname = _rename_color(rname, mapping) if rname else None
    lam = _vec_weight(rs, 0) + _vec_weight(rs, 1)
    return sys, _tail_data(sys, regime, r, extra, rname), family, local, s_kh, lam


# --- family table --------------------------------------------------------

def _need(cond: bool, msg: str) -> str | None:
    return None if cond else msg


def _p(params: Mapping[str, int], *names: str) -> list[int]:
    try:
        return [int(params[n]) for n in names]
    except KeyError as e:
        raise BadParams(f"missing parameter {e.args[0]}") from None


def _no_variants(params: Mapping[str, int]) -> tuple[str, ...]:
    return ()


def _fam(case_id, group, params, constraint, partition, check, variants=_no_variants, samples=()):
    return CaseFamily(case_id, group, params, constraint, partition, check, variants, tuple(samples))


def _checks():
    def symm1(p):
        n, r = _p(p, "n", "r")
        return _need(n >= 2 and r >= 1 and 2 * r <= n, "needs n >= 2 and 1 <= r, 2r <= n")

    def symm2(p):
        n, r = _p(p, "n", "r")
        return _need(n >= 2 and 1 <= r <= n, "needs n >= 2 and 1 <= r <= n")

    def dao(p):
        n, r = _p(p, "n", "r")
        return _need(n >= 2 and 1 <= r <= n, "needs n >= 2 and 1 <= r <= n")

    def pq_r(pmin, qmin):
        def f(p):
            a, b, r = _p(p, "p", "q", "r")
            return _need(a >= pmin and b >= qmin and 1 <= r <= min(a, b),
                         f"needs p >= {pmin}, q >= {qmin} and 1 <= r <= min(p, q)")
        return f

    def ccaac(p):
        a, b = _p(p, "p", "q")
        return _need(a >= 2 and b >= 1, "needs p >= 2 and q >= 1")

    def ccaac2(p):
        a, b = _p(p, "p", "q")
        return _need(a >= 1 and b >= 2, "needs p >= 1 and q >= 2")

    def ccacy(p):
        a, b = _p(p, "p", "q")
        return _need(a >= 3 and b >= 2, "needs p >= 3 and q >= 2")

    def cccay(p):
        a, b = _p(p, "p", "q")
        return _need(a >= 2 and b >= 3, "needs p >= 2 and q >= 3")

    def ccabx(p):
        a, b = _p(p, "p", "q")
        return _need(b == 2 and a >= 4, "needs q = 2 and p >= 4")

    def ccbax(p):
        a, b = _p(p, "p", "q")
        return _need(a == 2 and b >= 4, "needs p = 2 and q >= 4")

    def triv(nmin):
        def f(p):
            (n,) = _p(p, "n")
            return _need(n >= nmin, f"needs n >= {nmin}")
        return f

    def tail(pmin_off, qmin_off, pname="p", qname="q"):
        # r <= p - pmin_off and r <= q - qmin_off, r >= 0
        def f(p):
            a, b, r = _p(p, "p", "q", "r")
            return _need(r >= 0 and r <= a - pmin_off and r <= b - qmin_off and a >= 1 and b >= 1,
                         f"needs 0 <= r <= p - {pmin_off} and r <= q - {qmin_off}")
        return f

    return locals()


def _variants_dao(p):
    n, r = int(p["n"]), int(p["r"])
    return ("I", "II") if r == n else ()


def _variants_bdaa(p):
    return ("I", "II") if int(p["r"]) == int(p["q"]) else ()


def _variants_bdbay(p):
    return ("I", "II") if int(p["r"]) == int(p["q"]) - 1 and int(p["r"]) >= 1 else ()


def _variants_ddaa(p):
    a, b, r = int(p["p"]), int(p["q"]), int(p["r"])
    if r == a and r == b:
        return ("I,I", "I,II", "II,I", "II,II")
    if r == a or r == b:
        return ("I", "II")
    return ()


def _variants_ddady(p):
    return ("I", "II") if int(p["r"]) == int(p["p"]) - 1 and int(p["r"]) >= 1 else ()


def _variants_ddday(p):
    return ("I", "II") if int(p["r"]) == int(p["q"]) - 1 and int(p["r"]) >= 1 else ()


_C = _checks()

FAMILIES: dict[str, CaseFamily] = {f.case_id: f for f in [
    _fam("symm1", "Sp(2n)", ("n", "r"), "n >= 2, 1 <= r, 2r <= n", "(2^{2r},1^{2n-4r})",
         _C["symm1"], samples=[{"n": 2, "r": 1}, {"n": 3, "r": 1}]),
    _fam("symm2", "SO(2n+1)", ("n", "r"), "n >= 2, 1 <= r <= n", "(2^{r},1^{2n-2r+1})",
         _C["symm2"], samples=[{"n": 2, "r": 1}, {"n": 3, "r": 1}]),
    _fam("Dao", "SO(2n)", ("n", "r"), "n >= 2, 1 <= r <= n", "(2^{r},1^{2n-2r})",
         _C["dao"], _variants_dao, samples=[{"n": 2, "r": 1}, {"n": 3, "r": 1}]),
    _fam("symm4.1", "Sp(2p) x Sp(2q)", ("p", "q", "r"), "p, q >= 1, 1 <= r <= min(p, q)",
         "(+2^{2r},+1^{2p-2r},-1^{2q-2r})", _C["pq_r"](1, 1),
         samples=[{"p": 1, "q": 1, "r": 1}, {"p": 2, "q": 2, "r": 1}]),
    _fam("CCaac", "Sp(2p) x Sp(2q)", ("p", "q"), "p >= 2, q >= 1", "(+3^{2},+1^{2p-4},-1^{2q-2})",
         _C["ccaac"], samples=[{"p": 2, "q": 2}, {"p": 3, "q": 3}]),
    _fam("CCaac2", "Sp(2p) x Sp(2q)", ("p", "q"), "p >= 1, q >= 2", "(-3^{2},+1^{2p-2},-1^{2q-4})",
         _C["ccaac2"], samples=[{"p": 2, "q": 2}, {"p": 3, "q": 3}]),
    _fam("CCacy", "Sp(2p) x Sp(2q)", ("p", "q"), "p >= 3, q >= 2", "(+3^{2},+2^{2},+1^{2p-6},-1^{2q-4})",
         _C["ccacy"], samples=[{"p": 3, "q": 2}, {"p": 4, "q": 3}]),
    _fam("CCcay", "Sp(2p) x Sp(2q)", ("p", "q"), "p >= 2, q >= 3", "(-3^{2},+2^{2},+1^{2p-4},-1^{2q-6})",
         _C["cccay"], samples=[{"p": 2, "q": 3}, {"p": 3, "q": 4}]),
    _fam("CCabx", "Sp(2p) x Sp(4)", ("p", "q"), "q = 2, p >= 4", "(+3^4,+1^{2p-8})",
         _C["ccabx"], samples=[{"p": 4, "q": 2}, {"p": 5, "q": 2}]),
    _fam("CCbax", "Sp(4) x Sp(2q)", ("p", "q"), "p = 2, q >= 4", "(-3^4,-1^{2q-8})",
         _C["ccbax"], samples=[{"p": 2, "q": 4}, {"p": 2, "q": 5}]),
    _fam("trvial1", "SO(2n)", ("n",), "n >= 2", "(+3,+1^{2n-2})",
         _C["triv"](2), samples=[{"n": 2}, {"n": 3}]),
    _fam("trvial2", "SO(2n+1)", ("n",), "n >= 1", "(+3,+1^{2n-1})",
         _C["triv"](1), samples=[{"n": 1}, {"n": 2}]),
    _fam("BDaa", "SO(2p+1) x SO(2q)", ("p", "q", "r"), "p >= 1, q >= 2, 1 <= r <= min(p, q)",
         "(+2^{2r},+1^{2p+1-2r},-1^{2q-2r})", _C["pq_r"](1, 2), _variants_bdaa,
         samples=[{"p": 1, "q": 2, "r": 1}, {"p": 2, "q": 3, "r": 1}]),
    _fam("BDady", "SO(2p+1) x SO(2q)", ("p", "q", "r"), "r <= p - 1, r <= q - 1",
         "(+3,+2^{2r},+1^{2p-1-2r},-1^{2q-1-2r})", _C["tail"](1, 1),
         samples=[{"p": 2, "q": 3, "r": 1}, {"p": 3, "q": 4, "r": 1}]),
    _fam("BDbay", "SO(2p+1) x SO(2q)", ("p", "q", "r"), "r <= p, r <= q - 1",
         "(-3,+2^{2r},+1^{2p-2r},-1^{2q-2-2r})", _C["tail"](0, 1), _variants_bdbay,
         samples=[{"p": 2, "q": 4, "r": 1}, {"p": 3, "q": 5, "r": 1}]),
    _fam("symm8", "SO(2p+1) x SO(2q+1)", ("p", "q", "r"), "p, q >= 1, 1 <= r <= min(p, q)",
         "(+2^{2r},+1^{2p+1-2r},-1^{2q+1-2r})", _C["pq_r"](1, 1),
         samples=[{"p": 1, "q": 1, "r": 1}, {"p": 2, "q": 2, "r": 1}]),
    _fam("BBaby", "SO(2p+1) x SO(2q+1)", ("p", "q", "r"), "r <= p - 1, r <= q",
         "(+3,+2^{2r},+1^{2p-1-2r},-1^{2q-2r})", _C["tail"](1, 0),
         samples=[{"p": 3, "q": 2, "r": 1}, {"p": 4, "q": 3, "r": 1}]),
    _fam("BBbay", "SO(2p+1) x SO(2q+1)", ("p", "q", "r"), "r <= p, r <= q - 1",
         "(-3,+2^{2r},+1^{2p-2r},-1^{2q-1-2r})", _C["tail"](0, 1),
         samples=[{"p": 2, "q": 3, "r": 1}, {"p": 3, "q": 4, "r": 1}]),
    _fam("DDaa", "SO(2p) x SO(2q)", ("p", "q", "r"), "p, q >= 2, 1 <= r <= min(p, q)",
         "(+2^{2r},+1^{2p-2r},-1^{2q-2r})", _C["pq_r"](2, 2), _variants_ddaa,
         samples=[{"p": 2, "q": 2, "r": 1}, {"p": 3, "q": 3, "r": 1}]),
    _fam("DDady", "SO(2p) x SO(2q)", ("p", "q", "r"), "r <= p - 1, r <= q - 1",
         "(+3,+2^{2r},+1^{2p-2-2r},-1^{2q-1-2r})", _C["tail"](1, 1), _variants_ddady,
         samples=[{"p": 3, "q": 4, "r": 1}, {"p": 4, "q": 5, "r": 1}]),
    _fam("DDday", "SO(2p) x SO(2q)", ("p", "q", "r"), "r <= p - 1, r <= q - 1",
         "(-3,+2^{2r},+1^{2p-1-2r},-1^{2q-2-2r})", _C["tail"](1, 1), _variants_ddday,
         samples=[{"p": 4, "q": 3, "r": 1}, {"p": 5, "q": 4, "r": 1}]),
]}

SWAPPED = {"CCaac2": "CCaac", "CCcay": "CCacy", "CCbax": "CCabx", "BBbay": "BBaby", "DDday": "DDady"}


def list_cases() -> list[tuple[str, str, str, Callable]]:
    """(case_id, parameters, constraint, variants function) for the 21 families."""
    return [(f.case_id, ",".join(f.params), f.constraint, f.variants) for f in FAMILIES.values()]


# --- constructors --------------------------------------------------------

def _absent(fam: CaseFamily, params: dict[str, int], variant: str | None, why: str) -> OrbitCase:
    return OrbitCase(fam.case_id, params, variant, fam.signed_partition, None, None,
                     Expected(True, notes=why), kind="absent")


def _flag_case(fam: CaseFamily, params, variant, rs: RootSystem, hs, lam: Weight, kind: str) -> OrbitCase:
    """Empty Sigma: the wonderful variety is K/Q with S^p the kernel of h."""
    s_kh = _kernel_roots(rs, hs)
    sys = make_system(rs, s_kh, [], [])
    d_p = _unique_d_p(sys, lam)
    exp = Expected(True, (format_delta(sys, d_p),), notes="Sigma is empty; Gamma is generated by D_p")
    return OrbitCase(fam.case_id, params, variant, fam.signed_partition, sys, d_p, exp, None, kind, s_kh, lam)


def _ccaac(fam: CaseFamily, params, p: int, q: int) -> OrbitCase:
    rs = build_root_system([("C", p), ("C", q)])
    tail = {"a'1": 1, f"a'{q}": 1}
    for j in range(2, q):
        tail[f"a'{j}"] = 2
    sp = [f"a{i}" for i in range(3, p + 1)] + [f"a'{j}" for j in range(3, q + 1)]
    labels = {"D1": "D_a1", "D2": "D_a'2", "D3": "D_a2"}
    sys = make_system(rs, sp, [{"a1": 1, "a'1": 1}, tail], [], labels)
    s_kh = _kernel_roots(rs, [[2, 2], []])
    lam = _vec_weight(rs, 0) + _vec_weight(rs, 1)
    exp = Expected(True, ("D1", "D2 + D3", "D3"))
    return OrbitCase("CCaac", params, None, fam.signed_partition, sys, sys.delta({"D1": 1}), exp,
                     None, "reductive", s_kh, lam)


def _ccacy(fam: CaseFamily, params, p: int, q: int) -> OrbitCase:
    rs = build_root_system([("C", p), ("C", q)])
    s_kh = _kernel_roots(rs, [[2, 2, 1], [1]])
    if q > 2:
        local = families.ay22c(q - 1)
        root_map = {n: n for n in local.rs.simple_roots}
        labels = {f"D{k}": f"D{k}" for k in range(1, 6)}
        labels.update({"D6": "D_a'3", "D7": "D_a3"})
        gens = ("D1", "D2", "D4", "D3 + D7", "D5 + D7", "D6 + D7")
        family = f"ay22c({q - 1})"
    else:
        local = families.aby(2)
        root_map = {"a1": "a2", "a2": "a1", "a'1": "a'2", "a'2": "a'1"}
        labels = {f"D{k}": f"D{k}" for k in range(1, 6)}
        labels["D6"] = "D_a3"
        gens = ("D1", "D2", "D4", "D3 + D6", "D5 + D6")
        family = "aby(2)"
    sys = _place(local, rs, root_map, s_kh, labels)
    lam = _vec_weight(rs, 0) + _vec_weight(rs, 1)
    exp = Expected(True, gens)
    return OrbitCase("CCacy", params, None, fam.signed_partition, sys, sys.delta({"D4": 1}), exp,
                     family, "morphism", s_kh, lam, local=local)


CCABX_COLUMNS = (
    {1: 1, 2: 1, 3: -1},
    {1: -1, 2: 1, 3: 1, 4: -1, 5: -1},
    {2: -1, 3: 1, 4: 1, 5: -1},
    {3: -1, 4: 1, 5: 1},
    {2: -1, 3: 1, 4: -1, 5: 1, 6: -1},
)


def _ccabx(fam: CaseFamily, params, p: int) -> OrbitCase:
    rs = build_root_system([("C", p), ("C", 2)])
    sigma = [{"a2": 1}, {"a'2": 1}, {"a1": 1}, {"a'1": 1}, {"a3": 1}]
    sp = [f"a{i}" for i in range(5, p + 1)]
    sys = families.assemble(rs, sp, sigma, CCABX_COLUMNS, 5, {6: "D_a4"})
    s_kh = _kernel_roots(rs, [[2, 2, 2, 2], []])
    lam = _vec_weight(rs, 0) + _vec_weight(rs, 1)
    weights = ("w2", "w4", "w1+w'1", "w2+w'2", "w1+w3+w'2", "w3+w'1")
    exp = Expected("exception", (), weights, notes="surjectivity of multiplication fails; normal by saturation")
    return OrbitCase("CCabx", params, None, fam.signed_partition, sys, sys.delta({"D4": 1}), exp,
                     None, "reductive", s_kh, lam, surjectivity=EXCEPTION_CCABX)


def _tail_case(fam: CaseFamily, params, variant, a_fam, n_a, t_fam, n_t, r, a_first) -> OrbitCase:
    sys, tail, family, local, s_kh, lam = _build_tail(a_fam, n_a, t_fam, n_t, r, variant, a_first, fam.case_id)
    sols = _solve_d_p(sys, lam)
    tilde2 = explicit_tilde(tail)[2]
    # at r = 1 two color sums carry the weight of p; the closed forms fix which is D_p
    if len(sols) == 1 or (r == 1 and tilde2 in sols):
        d_p = sols[0] if len(sols) == 1 else tilde2
    else:
        raise CaseMismatch(f"{len(sols)} colors combinations have weight {format_weight(sys.rs, lam)}")
    collapsed_b = tail.regime in (COLLAPSED_B, COLLAPSED_B_ROMAN)
    normal = not collapsed_b
    note = "tilde D1 = D_p - sum of sigma_{2i} lies strictly below D_p" if collapsed_b else ""
    exp = Expected(normal, notes=note)
    return OrbitCase(fam.case_id, params, variant, fam.signed_partition, sys, d_p, exp, family, "tail",
                     s_kh, lam, tail, local=local)


def build_case(case_id: str, params: Mapping[str, int], variant: str | None = None) -> OrbitCase:
    if case_id not in FAMILIES:
        raise BadParams(f"unknown case {case_id!r}")
    fam = FAMILIES[case_id]
    params = {k: int(v) for k, v in params.items() if k in fam.params}
    bad = fam.check(params)
    if bad:
        raise BadParams(f"{case_id}: {bad}")
    allowed = fam.variants(params)
    if allowed and variant not in allowed:
        raise BadParams(f"{case_id} at {params} needs a variant in {allowed}")
    if not allowed and variant is not None:
        raise BadParams(f"{case_id} at {params} has no variants")

    if case_id in SWAPPED:
        base = SWAPPED[case_id]
        swapped = dict(params)
        swapped["p"], swapped["q"] = params["q"], params["p"]
        inner = build_case(base, swapped, variant)
        if inner.system is None:
            return _absent(fam, params, variant, inner.expected.notes)
        return _swap_components(inner, case_id, params, fam.signed_partition)

    r = params.get("r")
    if case_id in ("symm1", "symm2", "Dao", "symm4.1", "BDaa", "symm8", "DDaa"):
        if r > 1:
            return _absent(fam, params, variant, "Sigma comes only from an external table of symmetric cases")
        return _symmetric(fam, params, variant)
    if case_id in ("trvial1", "trvial2"):
        n = params["n"]
        rs = build_root_system([("D" if case_id == "trvial1" else "B", n)])
        return _flag_case(fam, params, variant, rs, [[2]], _vec_weight(rs, 0), "flag")
    p, q = params["p"], params["q"]
    if case_id == "CCaac":
        if q == 1:
            return _absent(fam, params, variant, "symmetric at q = 1; system only in an external table")
        return _ccaac(fam, params, p, q)
    if case_id == "CCacy":
        return _ccacy(fam, params, p, q)
    if case_id == "CCabx":
        return _ccabx(fam, params, p)
    if r == 0:
        return _absent(fam, params, variant, "r = 0 is a symmetric case; system only in an external table")
    if case_id == "BDady":
        return _tail_case(fam, params, variant, "B", p, "D", q, r, True)
    if case_id == "BDbay":
        return _tail_case(fam, params, variant, "D", q, "B", p, r, False)
    if case_id == "BBaby":
        return _tail_case(fam, params, variant, "B", p, "B", q, r, True)
    if case_id == "DDady":
        return _tail_case(fam, params, variant, "D", p, "D", q, r, True)
    raise BadParams(f"no constructor for {case_id}")


def _symmetric(fam: CaseFamily, params, variant) -> OrbitCase:
    cid = fam.case_id
    if cid == "symm1":
        rs = build_root_system([("C", params["n"])])
        lam = fundamental_weight(rs, "a2")
        return _flag_case(fam, params, variant, rs, [[1, 1]], lam, "symmetric")
    if cid in ("symm2", "Dao"):
        rs = build_root_system([("B" if cid == "symm2" else "D", params["n"])])
        lam = _vec_weight(rs, 0).scale(2)
        return _flag_case(fam, params, variant, rs, [[1]], lam, "symmetric")
    comps = {"symm4.1": ("C", "C"), "BDaa": ("B", "D"), "symm8": ("B", "B"), "DDaa": ("D", "D")}[cid]
    rs = build_root_system([(comps[0], params["p"]), (comps[1], params["q"])])
    lam = _vec_weight(rs, 0) + _vec_weight(rs, 1)
    return _flag_case(fam, params, variant, rs, [[1], [1]], lam, "symmetric")


def all_samples(include_absent: bool = False) -> list[tuple[str, dict[str, int], str | None]]:
    """Each family at its minimal and next parameters, every admissible variant."""
    out = []
    for fam in FAMILIES.values():
        for params in fam.samples:
            variants = fam.variants(params) or (None,)
            for v in variants:
                out.append((fam.case_id, dict(params), v))
    if include_absent:
        return out
    return [t for t in out if build_case(*t).system is not None]


def tail_samples(rs_values: Sequence[int] = (1, 2)) -> list[tuple[str, dict[str, int], str | None]]:
    """Tail cases covering every regime at the given r, with small p and q."""
    out = []
    for cid in ("BDady", "BDbay", "BBaby", "BBbay", "DDady", "DDday"):
        fam = FAMILIES[cid]
        for r in rs_values:
            for p, q in product(range(1, r + 4), repeat=2):
                params = {"p": p, "q": q, "r": r}
                if fam.check(params):
                    continue
                for v in fam.variants(params) or (None,):
                    out.append((cid, params, v))
    return out


# --- regression ----------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class Report:
    case_id: str
    params: dict[str, int]
    variant: str | None
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _kh_check(case: OrbitCase) -> CheckResult:
    sys = case.system
    target = set(case.s_kh)
    if case.kind in ("flag", "symmetric"):
        return CheckResult("K_h", set(sys.sp) == target, f"S^p = {list(sys.sp)}")
    if case.kind == "reductive":
        got = ops.support_of_sigma(sys) | set(sys.sp)
        return CheckResult("K_h", got == target, f"supp Sigma + S^p = {sys.rs.sort_names(got)}")
    for subset in ops.minimal_distinguished_subsets(sys):
        if not ops.is_higher_defect_quotient(sys, subset):
            continue
        q = ops.quotient(sys, subset).system
        if ops.support_of_sigma(q) | set(q.sp) == target:
            return CheckResult("K_h", True, "quotient by " + ",".join(subset))
    return CheckResult("K_h", False, "no higher-defect minimal quotient has S_{K_h}")


def _terms(text: str) -> frozenset[str]:
    return frozenset(text.split("+"))


def parse_combination(sys: SphericalSystem, text: str) -> DeltaVector:
    """'D2 + 2D3' as a vector over the colors; names may be labels."""
    coeffs: dict[str, int] = {}
    for term in text.replace(" ", "").split("+"):
        k = 0
        while k < len(term) and term[k].isdigit():
            k += 1
        coeffs[term[k:]] = coeffs.get(term[k:], 0) + (int(term[:k]) if k else 1)
    return sys.delta(coeffs)


def expected_generators(case: OrbitCase) -> list[DeltaVector]:
    return [parse_combination(case.system, g) for g in case.expected.generators]


def run_regression(case_id: str, params: Mapping[str, int], variant: str | None = None) -> Report:
    checks: list[CheckResult] = []
    try:
        case = build_case(case_id, params, variant)
    except Exception as e:  # noqa: BLE001 - failures are report entries
        return Report(case_id, dict(params), variant, [CheckResult("build", False, str(e))])
    checks.append(CheckResult("build", True, case.kind))
    sys = case.system
    if sys is None:
        checks.append(CheckResult("system", True, "absent: " + case.expected.notes))
        return Report(case_id, case.params, variant, checks)

    def attempt(name: str, fn) -> None:
        try:
            ok, detail = fn()
        except Exception as e:  # noqa: BLE001
            ok, detail = False, f"{type(e).__name__}: {e}"
        checks.append(CheckResult(name, bool(ok), detail))

    def c_validate():
        v = validate(sys)
        return not v, "; ".join(x.axiom + ": " + x.message for x in v) or "ok"

    def c_weight():
        w = weight_of_delta(sys, case.d_p)
        return w == case.lambda_p, f"omega(D_p) = {format_weight(sys.rs, w)}"

    def c_family():
        loc = ops.localize(sys, ops.support_of_sigma(sys))
        return ops.isomorphic(loc, case.local), case.basic_family

    def c_normal():
        v = normality_verdict(sys, case.d_p, case.surjectivity)
        ok = v.normal == case.expected.normal
        if ok and v.status == NON_NORMAL:
            # the witness is tilde D1 = D_p - (sigma_2 + sigma_4 + ... + sigma_2r)
            witness = explicit_tilde(case.tail)[1] if case.tail else None
            ok = witness is not None and list(witness.coeffs) == v.reason["witness"] and \
                v.reason["gamma"] == [int(k % 2 == 1) for k in range(len(sys.sigma))]
        return ok, v.status

    def c_semigroup():
        if case.tail is not None:
            return check_tail_generators(case_id, params, variant), "closed forms agree"
        gs = gamma_semigroup(sys, case.d_p)
        got = format_generators(sys, gs.generators)
        if case.expected.generators:
            return set(gs.generators) == set(expected_generators(case)), got
        if case.expected.weights:
            ws = {format_weight(sys.rs, w) for w in gs.weight_generators}
            same = {_terms(w) for w in ws} == {_terms(w) for w in case.expected.weights}
            return same, ", ".join(sorted(ws))
        return bool(gs.generators), got

    attempt("validate", c_validate)
    attempt("omega(D_p)", c_weight)
    if case.local is not None:
        attempt("basic family", c_family)
    attempt("K_h", lambda: (lambda c: (c.passed, c.detail))(_kh_check(case)))
    attempt("normality", c_normal)
    attempt("semigroup", c_semigroup)
    return Report(case_id, case.params, variant, checks)


def case_to_json_obj(case: OrbitCase) -> dict:
    from .sphsys import to_json_obj

    obj = {"case_id": case.case_id, "params": case.params, "variant": case.variant,
           "signed_partition": case.signed_partition}
    if case.system is not None:
        obj["system"] = to_json_obj(case.system)
        obj["labels"] = dict(sorted(case.system.labels.items()))
        obj["d_p"] = list(case.d_p.coeffs)
    obj["expected"] = {"normal": case.expected.normal, "generators": list(case.expected.generators),
                       "weights": list(case.expected.weights), "basic_family": case.basic_family,
                       "notes": case.expected.notes}
    return obj
