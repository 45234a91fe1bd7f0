"""Weight semigroups Gamma_D, their omega images and the normality verdict.

Gamma_D is the set of E in N Delta with E <=_Sigma n D for some n. It is the
image of the lattice points of the cone {(n, a) : n D - sum a_k sigma_k >= 0}
under (n, a) -> n D - sum a_k sigma_k, so a Hilbert basis of that cone maps
onto a generating set, which is then pruned to the minimal one.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, lcm
from typing import Any, Mapping, Sequence

from . import linalg
from .hilbert import hilbert_basis
from .order import sigma_coordinates, strictly_below_witness
from .rootsys import Weight, format_weight
from .sphsys import DeltaVector, SigmaVector, SphericalSystem, format_delta, weight_of_delta

PROVEN = "Proven"
EXCEPTION_CCABX = "ExceptionCCabx"

NORMAL = "Normal"
NON_NORMAL = "NonNormal"
NORMAL_BY_EXCEPTION = "NormalByException"
UNDETERMINED = "Undetermined"


class CaseMismatch(AssertionError):
    pass


@dataclass(frozen=True)
class GammaSemigroup:
    base: DeltaVector
    generators: list[DeltaVector]
    weight_generators: list[Weight]
    degree_witnesses: list[int]


@dataclass(frozen=True)
class NormalityVerdict:
    status: str
    reason: dict[str, Any] = field(default_factory=dict)

    @property
    def normal(self) -> bool | str:
        if self.status == NORMAL:
            return True
        if self.status == NON_NORMAL:
            return False
        return "exception" if self.status == NORMAL_BY_EXCEPTION else "undetermined"


@dataclass(frozen=True)
class NamedWeight:
    weight: Weight
    text: str


def _check_base(sys: SphericalSystem, d_p: DeltaVector) -> None:
    if len(d_p.coeffs) != len(sys.colors) or any(x < 0 for x in d_p.coeffs):
        raise ValueError("D_p must be a nonnegative vector over the colors")


def degree_in_gamma(sys: SphericalSystem, d_p: DeltaVector, e: DeltaVector) -> int | None:
    """Least n with E <=_Sigma n D_p, or None when E is not in Gamma_{D_p}.

    Solves n D_p - sum a_k sigma_k = E. Independence of Sigma makes a unique
    for each n, so the solutions form at most a line parametrized by n, and
    integrality along it is periodic.
    """
    if any(x < 0 for x in e.coeffs):
        return None
    if not any(e.coeffs):
        return 0
    a_d = sigma_coordinates(sys, d_p.coeffs)
    if a_d is None:
        # at most one n works; read it off the joint system
        cols = sys.pairing_columns
        m = [[d_p.coeffs[i]] + [-cols[k][i] for k in range(len(cols))] for i in range(len(sys.colors))]
        sol = linalg.solve(m, list(e.coeffs))
        if sol is None or not linalg.is_integral(sol) or any(x < 0 for x in sol):
            return None
        return int(sol[0])
    a_e = sigma_coordinates(sys, e.coeffs)
    if a_e is None:
        return None
    # a(n) = n a_d - a_e must be a nonnegative integer vector
    lo: Fraction = Fraction(0)
    hi: Fraction | None = None
    for x, y in zip(a_d, a_e):
        if x > 0:
            lo = max(lo, y / x)
        elif x < 0:
            bound = y / x
            hi = bound if hi is None else min(hi, bound)
        elif y > 0:
            return None
    start = ceil(lo)
    period = lcm(*(x.denominator for x in a_d), 1)
    stop = start + period - 1
    if hi is not None:
        stop = min(stop, floor(hi))
    for n in range(start, stop + 1):
        if all((n * x - y).denominator == 1 for x, y in zip(a_d, a_e)):
            return n
    return None


def in_gamma(sys: SphericalSystem, d_p: DeltaVector, e: DeltaVector) -> bool:
    return degree_in_gamma(sys, d_p, e) is not None


def _sub(x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
    return tuple(a - b for a, b in zip(x, y))


def gamma_semigroup(sys: SphericalSystem, d_p: DeltaVector, budget: int | None = None) -> GammaSemigroup:
    _check_base(sys, d_p)
    if not any(d_p.coeffs):
        return GammaSemigroup(d_p, [], [], [])
    cols = sys.pairing_columns
    nsig = len(cols)
    # one inequality per color: n D_p(d) - sum a_k sigma_k(d) >= 0
    ineqs = [[d_p.coeffs[d]] + [-cols[k][d] for k in range(nsig)] for d in range(len(sys.colors))]
    basis = hilbert_basis(1 + nsig, inequalities=ineqs, budget=budget)
    images = set()
    for v in basis:
        n, a = v[0], v[1:]
        img = [n * x for x in d_p.coeffs]
        for k, ak in enumerate(a):
            if ak:
                img = [x - ak * y for x, y in zip(img, cols[k])]
        if any(img):
            images.add(tuple(img))
    ordered = sorted(images, key=lambda g: (sum(g), tuple(-x for x in g)))
    gens = []
    for g in ordered:
        reducible = any(h != g and all(x <= y for x, y in zip(h, g))
                        and in_gamma(sys, d_p, DeltaVector(_sub(g, h))) for h in ordered)
        if not reducible:
            gens.append(DeltaVector(g))
    degrees = [degree_in_gamma(sys, d_p, g) for g in gens]
    weights = list(dict.fromkeys(weight_of_delta(sys, g) for g in gens))
    return GammaSemigroup(d_p, gens, weights, degrees)


def normality_verdict(sys: SphericalSystem, d_p: DeltaVector, surjectivity: str = PROVEN) -> NormalityVerdict:
    """Normal iff D_p is minuscule, given surjective multiplication of sections.

    In the ExceptionCCabx regime surjectivity fails and the verdict rests on
    the linear independence of the color weights instead; if they turn out to
    be dependent nothing is concluded.
    """
    _check_base(sys, d_p)
    if surjectivity == PROVEN:
        below = strictly_below_witness(sys, d_p)
        if below is None:
            return NormalityVerdict(NORMAL, {"minuscule": True})
        gamma, f = below
        return NormalityVerdict(NON_NORMAL, {"minuscule": False, "witness": list(f.coeffs),
                                             "gamma": list(gamma.coeffs)})
    if surjectivity == EXCEPTION_CCABX:
        rows = [list(weight_of_delta(sys, DeltaVector(tuple(int(i == d) for i in range(len(sys.colors))))).coeffs)
                for d in range(len(sys.colors))]
        r = linalg.rank(rows)
        cert = {"color_weights": rows, "rank": r, "colors": len(rows)}
        if r == len(rows):
            return NormalityVerdict(NORMAL_BY_EXCEPTION, cert)
        return NormalityVerdict(UNDETERMINED, cert)
    raise ValueError(f"unknown surjectivity regime {surjectivity!r}")


def weight_semigroup(sys: SphericalSystem, d_p: DeltaVector, naming: str = "omega") -> list[NamedWeight]:
    """Deduplicated omega images of the generators of Gamma_{D_p}, rendered in the given naming."""
    gs = gamma_semigroup(sys, d_p)
    return [NamedWeight(w, format_weight(sys.rs, w, naming)) for w in gs.weight_generators]


def semigroup_json(sys: SphericalSystem, d_p: DeltaVector, surjectivity: str = PROVEN,
                   naming: str = "omega") -> str:
    verdict = normality_verdict(sys, d_p, surjectivity)
    gs = gamma_semigroup(sys, d_p)
    out = {
        "normal": verdict.normal,
        "witness": verdict.reason.get("witness"),
        "generators": [list(g.coeffs) for g in gs.generators],
        "weights": [format_weight(sys.rs, w, naming) for w in gs.weight_generators],
    }
    return json.dumps(out, sort_keys=True)


def format_generators(sys: SphericalSystem, gens: Sequence[DeltaVector]) -> str:
    return "<" + ", ".join(format_delta(sys, g) for g in gens) + ">"


# closed forms for the orthogonal tail families

TAIL = "tail"
TAIL_ROMAN = "tail-roman"
COLLAPSED_B = "collapsed-B"
COLLAPSED_B_ROMAN = "collapsed-B-roman"
COLLAPSED_D = "collapsed-D"
COLLAPSED_D_ROMAN = "collapsed-D-roman"


@dataclass(frozen=True)
class TailData:
    """Reference numbering of a tail case: colors D1.., spherical roots sigma1.., regime.

    ``extra`` is the b part attached next to the A-part (tilde D_{2r+3}, or
    tilde D_{2r+2} for collapsed-B tails) and ``roman`` the b color attached
    one step earlier in the Roman regimes, both as vectors over the colors.
    """

    regime: str
    r: int
    colors: Mapping[int, DeltaVector]
    sigma: Sequence[SigmaVector]
    extra: DeltaVector
    roman: DeltaVector | None = None


def _lin(*terms: tuple[int, DeltaVector]) -> DeltaVector:
    out = None
    for c, v in terms:
        scaled = [c * x for x in v.coeffs]
        out = scaled if out is None else [x + y for x, y in zip(out, scaled)]
    return DeltaVector(tuple(out))


def explicit_tilde(t: TailData) -> dict[int, DeltaVector]:
    """The piecewise closed forms for tilde D_k, for every k of the regime."""
    r, D, E, R = t.r, t.colors, t.extra, t.roman
    out: dict[int, DeltaVector] = {}
    if t.regime == TAIL:
        for k in range(1, 2 * r + 3):
            out[k] = D[k] if k <= 2 * r else _lin((1, D[k]), (1, E))
    elif t.regime == TAIL_ROMAN:
        for k in range(1, 2 * r + 3):
            if k <= 2 * r - 2:
                out[k] = D[k]
            elif k <= 2 * r:
                out[k] = _lin((1, D[k]), (1, R))
            else:
                out[k] = _lin((1, D[k]), (2, R))
    elif t.regime == COLLAPSED_D:
        for k in range(1, 2 * r + 3):
            out[k] = D[k] if k <= 2 * r else _lin((1, D[k]), (1, D[2 * r + 2]), (1, E))
    elif t.regime == COLLAPSED_D_ROMAN:
        for k in range(1, 2 * r + 3):
            if k <= 2 * r - 2:
                out[k] = D[k]
            elif k <= 2 * r:
                out[k] = _lin((1, D[k]), (1, R))
            else:
                out[k] = _lin((1, D[k]), (1, D[2 * r + 2]), (2, R))
    elif t.regime == COLLAPSED_B:
        for k in range(1, 2 * r + 2):
            if k <= 2 * r - 1:
                out[k] = D[k]
            elif k == 2 * r:
                out[k] = _lin((1, D[2 * r]), (1, D[2 * r + 1]))
            else:
                out[k] = _lin((2, D[2 * r + 1]), (1, E))
    elif t.regime == COLLAPSED_B_ROMAN:
        for k in range(1, 2 * r + 2):
            if k <= 2 * r - 2:
                out[k] = D[k]
            elif k == 2 * r - 1:
                out[k] = _lin((1, D[k]), (1, R))
            elif k == 2 * r:
                out[k] = _lin((1, D[2 * r]), (1, D[2 * r + 1]), (1, R))
            else:
                out[k] = _lin((2, D[2 * r + 1]), (2, R))
    else:
        raise ValueError(f"unknown regime {t.regime!r}")
    return out


def _sigma_sum(sys: SphericalSystem, t: TailData, ks: Sequence[int]) -> DeltaVector:
    cols = sys.pairing_columns
    acc = [0] * len(sys.colors)
    for k in ks:
        for coeff, col in zip(t.sigma[k - 1].coeffs, cols):
            if coeff:
                acc = [x + coeff * y for x, y in zip(acc, col)]
    return DeltaVector(tuple(acc))


def recursive_tilde(sys: SphericalSystem, t: TailData, base: Mapping[int, DeltaVector]) -> dict[int, DeltaVector]:
    """tilde D_k = tilde D_2 + tilde D_{k-2} - (sigma_1 + ... + sigma_{k-2}) from the two base values."""
    top = 2 * t.r + 1 if t.regime in (COLLAPSED_B, COLLAPSED_B_ROMAN) else 2 * t.r + 2
    out = {1: base[1], 2: base[2]}
    for k in range(3, top + 1):
        s = _sigma_sum(sys, t, range(1, k - 1))
        out[k] = _lin((1, out[2]), (1, out[k - 2]), (-1, s))
    return out


def closed_form_generators(sys: SphericalSystem, t: TailData) -> list[DeltaVector]:
    """Generator list of the regime, after checking that recursion and closed forms agree."""
    r = t.r
    tilde = explicit_tilde(t)
    rec = recursive_tilde(sys, t, tilde)
    for k in tilde:
        if rec[k] != tilde[k]:
            raise CaseMismatch(f"tilde D{k}: recursion gives {format_delta(sys, rec[k])}, "
                               f"closed form {format_delta(sys, tilde[k])}")
    gens: list[DeltaVector] = []
    if t.regime in (COLLAPSED_B, COLLAPSED_B_ROMAN):
        gens = [tilde[k] for k in range(1, 2 * r + 2)]
    else:
        collapsed_d = t.regime in (COLLAPSED_D, COLLAPSED_D_ROMAN)
        gens += [tilde[2 * i] for i in range(1, r + 2)]
        for i in range(1, r + 2):
            for j in range(i, r + 2):
                if collapsed_d and i + j > 2 * r + 1:
                    continue
                gens.append(_lin((1, tilde[2 * i - 1]), (1, tilde[2 * j - 1])))
        if collapsed_d:
            s = _sigma_sum(sys, t, list(range(1, 2 * r)) + [2 * r + 1])
            prime = _lin((1, tilde[2]), (1, tilde[2 * r]), (-1, s))
            if t.regime == COLLAPSED_D:
                expect = _lin((2, t.colors[2 * r + 1]), (1, t.extra))
            else:
                expect = _lin((2, t.colors[2 * r + 1]), (2, t.roman))
            if prime != expect:
                raise CaseMismatch(f"tilde D'{2 * r + 2}: {format_delta(sys, prime)} != {format_delta(sys, expect)}")
            gens.append(prime)
    return gens


def check_tail_generators(case_id: str, params: Mapping[str, int], variant: str | None = None) -> bool:
    """Compare the closed-form generator list of a tail case with gamma_semigroup."""
    from .catalog import build_case  # the catalog depends on this module

    case = build_case(case_id, params, variant)
    if case.system is None or case.tail is None:
        raise CaseMismatch(f"{case_id} {dict(params)} is not a tail case with a system")
    sys, t = case.system, case.tail
    expected = closed_form_generators(sys, t)
    tilde2 = explicit_tilde(t)[2]
    if tilde2 != case.d_p:
        raise CaseMismatch(f"tilde D2 = {format_delta(sys, tilde2)} but D_p = {format_delta(sys, case.d_p)}")
    got = gamma_semigroup(sys, case.d_p).generators
    if set(got) != set(expected):
        raise CaseMismatch(f"{case_id} {dict(params)}: computed {format_generators(sys, got)}, "
                           f"closed form {format_generators(sys, expected)}")
    return True
