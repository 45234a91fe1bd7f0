"""Acceptance criteria, one test and one printed PASS/FAIL line each.

Every bound and budget is pinned below. All comparisons are exact: the
library works over Z and Q only, so there is no floating tolerance anywhere.
"""
from __future__ import annotations

import time
from itertools import combinations

import pytest

import _oracles as O
from _fuzz import MUTATIONS_PER_CASE, mutations
from _report import record
from lunakit import catalog, families, ops, order
from lunakit import semigroup as sg
from lunakit import tensorlab as T
from lunakit.rootsys import format_weight
from lunakit.sphsys import SigmaVector, format_combination, sigma_in_delta, validate

# pinned tolerances and bounds
RUNTIME_BUDGET_S = 60.0     # per criterion
COVERING_HEIGHT = 2         # height bound for covering differences
ORACLE_BOX = 3              # brute-force coordinate bound for colors and sigma
ORACLE_MAX_COLORS = 7       # systems checked against the brute-force route
GAMMA_MAX_DEGREE = 6        # brute-force semigroup: n D_p with n <= 6
GAMMA_SIGMA_BOUND = 6       # ... minus sum a_k sigma_k with a_k <= 6
GAMMA_MAX_HEIGHT = 8        # irreducibles compared up to this coefficient sum
TAIL_RS = (1, 2)            # r values for the tail families
EXACT = 0                   # allowed coefficient error in every comparison

assert O.BOX == ORACLE_BOX and MUTATIONS_PER_CASE == 20 and EXACT == 0


class Clock:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start
        return False


def _built(samples):
    for cid, params, variant in samples:
        case = catalog.build_case(cid, params, variant)
        if case.system is not None:
            yield case


def _sig(*ks, n):
    """Sigma vector from 1-based indices, repeats allowed."""
    v = [0] * n
    for k in ks:
        v[k - 1] += 1
    return tuple(v)


# 1. axiom suite

def test_criterion_1_axioms_and_fuzz():
    problems = []
    n_cases = n_mut = 0
    with Clock() as clock:
        for case in _built(catalog.all_samples()):
            key = f"{case.case_id}{sorted(case.params.items())}{case.variant}"
            n_cases += 1
            bad = validate(case.system)
            if bad:
                problems.append(f"{key} invalid: {bad[0].axiom}")
            for m in mutations(case.system, key):
                n_mut += 1
                if m.axiom not in {v.axiom for v in validate(m.system)}:
                    problems.append(f"{key} / {m.label}: {m.axiom} not reported")
    ok = not problems and clock.seconds < RUNTIME_BUDGET_S and n_mut == 20 * n_cases
    record(1, ok, "axiom suite and mutation fuzzing",
           f"{n_cases} cases valid, {n_mut} mutations, {len(problems)} misses, {clock.seconds:.1f}s")
    assert ok, problems[:5]


# 2. worked example: the A x Sigma pairing of CCacy with q > 2

# rows D_a2^-, D_a2^+, D_a1^-, D_a1^+, D_a'1^-; columns a1, a2, a'1, a'2, sigma5
PRINTED_TABLE = [
    [0, 1, 0, -1, 0],
    [-1, 1, 0, 1, 0],
    [1, -1, -1, 1, 0],
    [1, 0, 1, -1, 0],
    [-1, 0, 1, 0, -1],
]
ROWS = ["D1", "D2", "D3", "D4", "D5"]  # the same colors under their labels


def test_criterion_2_worked_example():
    mismatches = []
    with Clock() as clock:
        for p, q in [(4, 3), (5, 4), (6, 3)]:
            sys = catalog.build_case("CCacy", {"p": p, "q": q}).system
            rs = sys.rs
            cols = {format_combination(rs, s): k for k, s in enumerate(sys.sigma)}
            order_ = [cols["a1"], cols["a2"], cols["a'1"], cols["a'2"]]
            tail = [k for k in range(len(sys.sigma)) if k not in order_]
            got = [[sys.colors[sys.resolve(r)].pairing[k] for k in order_ + tail] for r in ROWS]
            if got != PRINTED_TABLE:
                mismatches.append((p, q, got))
    ok = not mismatches and clock.seconds < RUNTIME_BUDGET_S
    record(2, ok, "CCacy (q>2) Cartan pairing table", "exact 5x5 match at (p,q) = (4,3), (5,4), (6,3)")
    assert ok, mismatches


# 3. quotients

def _quotient_sigma(sys, subset):
    return [format_combination(sys.rs, s) for s in ops.quotient(sys, subset).system.sigma]


def test_criterion_3_quotients():
    problems = []
    with Clock() as clock:
        for t in (2, 3, 4):
            sys = families.ay22c(t)
            mid = "".join(f"+2a'{i}" for i in range(3, t + 1))
            want = {"a1+a'2", f"a'2{mid}+a'{t + 1}"}
            got = set(_quotient_sigma(sys, ["D2", "D4"]))
            if got != want or not ops.is_higher_defect_quotient(sys, ["D2", "D4"]):
                problems.append(("ay22c", t, got))
        for s, t in [(2, 1), (2, 2), (3, 1), (3, 2)]:
            sys = families.ay_b(s, t)
            d = [f"D{2 * i}" for i in range(1, s + 1)]
            want = {f"a{i}+a'{i - 1}" for i in range(2, s + 1)}
            want.add("+".join(f"2a'{j}" for j in range(s + 1, s + t + 1)))
            got = set(_quotient_sigma(sys, d))
            if got != want or not ops.is_higher_defect_quotient(sys, d):
                problems.append(("ay_b", s, t, got))
        for s in (2, 3, 4):
            sys = families.aby(s)
            d = [f"D{2 * i}" for i in range(1, s + 1)]
            want = {f"a{i}+a'{i - 1}" for i in range(2, s + 1)}
            got = set(_quotient_sigma(sys, d))
            if got != want or not ops.is_higher_defect_quotient(sys, d):
                problems.append(("aby", s, got))
    ok = not problems and clock.seconds < RUNTIME_BUDGET_S
    record(3, ok, "quotients by {D2,D4} and {D_2i} with the defect inequality", f"{len(problems)} mismatches")
    assert ok, problems


# 4. coverings

def _coverings_with(sys, k):
    cds = order.covering_differences(sys, COVERING_HEIGHT)
    hit = {(c.gamma.coeffs, c.delta_form.coeffs) for c in cds if c.gamma.coeffs[k - 1]}
    rest_heights = {c.height_pos for c in cds if not c.gamma.coeffs[k - 1]}
    return hit, rest_heights


def test_criterion_4_coverings():
    problems = []
    with Clock() as clock:
        sys = families.ay22c(2)
        n = len(sys.sigma)
        d = lambda **kw: sys.delta(kw).coeffs  # noqa: E731
        want = {(_sig(5, n=n), d(D5=-1, D6=1)), (_sig(2, 4, 5, n=n), d(D1=-1, D2=1))}
        hit, heights = _coverings_with(sys, 5)
        if hit != want or heights != {2}:
            problems.append(("ay22c(2)", hit, heights))

        s = 3
        sys = families.aby(s)
        n = len(sys.sigma)
        d = lambda **kw: sys.delta(kw).coeffs  # noqa: E731
        want = {
            (_sig(2 * s, n=n), d(**{f"D{2 * s}": 1, f"D{2 * s + 1}": 1, f"D{2 * s - 1}": -1})),
            (_sig(2 * s - 1, 2 * s, n=n), d(**{f"D{2 * s - 2}": -1, f"D{2 * s}": 2})),
        }
        for l in range(1, s):
            want.add((_sig(*range(2 * l, 2 * s + 1, 2), n=n), d(**{f"D{2 * l}": 1, f"D{2 * l - 1}": -1})))
        hit, heights = _coverings_with(sys, 2 * s)
        if hit != want or heights != {2}:
            problems.append(("aby(3)", hit, heights))
    ok = not problems and clock.seconds < RUNTIME_BUDGET_S
    record(4, ok, "covering differences at bound 2 for ay22c(2) and aby(3)", "exact sets")
    assert ok, problems


# 5. low triples

def _triples(sys, k):
    return {(t.D.coeffs, t.E.coeffs, t.F.coeffs, t.gamma.coeffs)
            for t in order.fundamental_low_triples(sys, filter_sigma=k - 1)}


AY22C_TRIPLES = [  # D, E, F, gamma as sigma indices
    ("D2", "D3", "D1 + D4 + D5", (2, 5)),
    ("D3", "D3", "D1 + 2D5", (2, 3, 5)),
    ("D2", "D2", "D4 + D5", (1, 2, 5)),
    ("D2", "D3", "2D5", (1, 2, 3, 5)),
    ("D3", "D4", "D1 + D5", (2, 3, 4, 5)),
    ("D4", "D4", "D1", (2, 3, 4, 4, 5)),
]


def _aby_expected(s):
    sys = families.aby(s)
    n = len(sys.sigma)
    pc = lambda text: catalog.parse_combination(sys, text).coeffs  # noqa: E731
    want = set()
    for m in range(1, s):
        want.add((pc(f"D{2 * m + 1}"), pc(f"D{2 * s}"), pc(f"D{2 * m - 1} + D{2 * s + 1}"),
                  _sig(*range(2 * m, 2 * s + 1), n=n)))
    want.add((pc(f"D{2 * s}"), pc(f"D{2 * s}"), pc(f"D{2 * s - 3}"), _sig(2 * s - 2, 2 * s - 1, 2 * s, 2 * s, n=n)))
    want.add((pc(f"D{2 * s}"), pc(f"D{2 * s}"), pc(f"D{2 * s - 2}"), _sig(2 * s - 1, 2 * s, n=n)))
    want.add((pc(f"D{2 * s}"), pc(f"D{2 * s + 1}"), pc(f"D{2 * s - 1}"), _sig(2 * s, n=n)))
    return sys, want


def test_criterion_5_low_triples():
    problems = []
    with Clock() as clock:
        for t in (2, 3):
            sys = families.ay22c(t)
            pc = lambda text: catalog.parse_combination(sys, text).coeffs  # noqa: E731
            want = {(pc(a), pc(b), pc(f), _sig(*g, n=len(sys.sigma))) for a, b, f, g in AY22C_TRIPLES}
            got = _triples(sys, len(sys.sigma))
            if got != want:
                problems.append(("ay22c", t, len(got)))

        for s in (2, 3):
            sys, want = _aby_expected(s)
            got = _triples(sys, 2 * s)
            if got != want:
                problems.append(("aby", s, len(got)))

        s, t = 2, 1
        sys = families.ay_b(s, t)
        tail = 2 * s + 1
        found = order.fundamental_low_triples(sys, filter_sigma=tail - 1)
        if not found:
            problems.append(("ay_b", "no triple involves the tail root"))
        for tr in found:
            p = tr.D.coeffs.index(1) + 1
            q = tr.E.coeffs.index(1) + 1
            g = tr.gamma.coeffs
            if p % 2 or q % 2 or g[0]:
                problems.append(("ay_b parity", p, q, g))
            if g[1] and (p + q - 3 > tail or tr.F != catalog.parse_combination(sys, f"D1 + D{p + q - 3}")):
                problems.append(("ay_b support", p, q, tr.F.coeffs))

        sys = catalog.build_case("CCabx", {"p": 4, "q": 2}).system
        d3 = sys.delta({"D3": 1})
        f = catalog.parse_combination(sys, "D1 + D2 + D6")
        if not any(x.F == f for x in order.low_triples_from(sys, d3, d3)):
            problems.append(("CCabx", "(D3,D3,D1+D2+D6) not low"))
    ok = not problems and clock.seconds < RUNTIME_BUDGET_S
    record(5, ok, "low triples: ay22c six, aby(s) s=2,3, ay_b(2,1) parity, CCabx counterexample",
           f"{len(problems)} problems")
    assert ok, problems


# 6. semigroups

GENERATOR_LISTS = {
    ("CCaac", (("p", 3), ("q", 2))): ["D1", "D2 + D3", "D3"],
    ("CCaac", (("p", 4), ("q", 3))): ["D1", "D2 + D3", "D3"],
    ("CCacy", (("p", 4), ("q", 3))): ["D1", "D2", "D4", "D3 + D7", "D5 + D7", "D6 + D7"],
    ("CCacy", (("p", 5), ("q", 4))): ["D1", "D2", "D4", "D3 + D7", "D5 + D7", "D6 + D7"],
    ("CCacy", (("p", 3), ("q", 2))): ["D1", "D2", "D4", "D3 + D6", "D5 + D6"],
    ("CCacy", (("p", 4), ("q", 2))): ["D1", "D2", "D4", "D3 + D6", "D5 + D6"],
}
R1_LISTS = {
    "tail-roman": ["D2 + D5", "D4 + 2D5", "2D1 + 2D5", "D1 + D3 + 3D5", "2D3 + 4D5"],
    "collapsed-D-roman": ["D2 + D5", "2D4 + 2D5", "2D3 + 2D5", "2D1 + 2D5", "D1 + D3 + D4 + 3D5"],
}
CCABX_WEIGHTS = ["w2", "w4", "w1+w'1", "w2+w'2", "w1+w3+w'2", "w3+w'1"]


def _term_set(text):
    return frozenset(text.split("+"))


def test_criterion_6_semigroups():
    problems = []
    n_tail = n_r1 = 0
    with Clock() as clock:
        for (cid, params), gens in GENERATOR_LISTS.items():
            case = catalog.build_case(cid, dict(params))
            got = sg.gamma_semigroup(case.system, case.d_p).generators
            want = [catalog.parse_combination(case.system, g) for g in gens]
            if len(got) != len(want) or set(got) != set(want):
                problems.append((cid, params, sg.format_generators(case.system, got)))
        for p in (4, 5):
            case = catalog.build_case("CCabx", {"p": p, "q": 2})
            ws = sg.gamma_semigroup(case.system, case.d_p).weight_generators
            got = {_term_set(format_weight(case.system.rs, w)) for w in ws}
            if len(ws) != 6 or got != {_term_set(w) for w in CCABX_WEIGHTS}:
                problems.append(("CCabx", p, got))
        for cid, params, variant in catalog.tail_samples(TAIL_RS):
            n_tail += 1
            if not sg.check_tail_generators(cid, params, variant):
                problems.append((cid, params, variant))
        # the r = 1 special case of the Roman regimes: D_p = D2 + D5
        for cid, params, variant in catalog.tail_samples((1,)):
            case = catalog.build_case(cid, params, variant)
            if case.system is None or case.tail.regime not in R1_LISTS:
                continue
            n_r1 += 1
            pc = lambda text: catalog.parse_combination(case.system, text)  # noqa: E731
            got = sg.gamma_semigroup(case.system, case.d_p).generators
            if case.d_p != pc("D2 + D5") or set(got) != {pc(g) for g in R1_LISTS[case.tail.regime]}:
                problems.append(("r=1", cid, params, variant, sg.format_generators(case.system, got)))
    ok = not problems and clock.seconds < RUNTIME_BUDGET_S
    record(6, ok, "semigroup generators and tail closed forms",
           f"{len(GENERATOR_LISTS)} lists, CCabx weights, {n_tail} tail cases, "
           f"{n_r1} Roman r=1 cases, {len(problems)} problems")
    assert ok, problems


# 7. normality

def _collapsed_b(case):
    p = case.params
    return ((case.case_id in ("BDbay", "BBbay") and p["r"] == p["p"])
            or (case.case_id == "BBaby" and p["r"] == p["q"]))


def test_criterion_7_normality():
    problems = []
    counts = {}
    with Clock() as clock:
        for case in _built(catalog.all_samples() + catalog.tail_samples(TAIL_RS)):
            sys = case.system
            v = sg.normality_verdict(sys, case.d_p, case.surjectivity)
            counts[v.status] = counts.get(v.status, 0) + 1
            if case.case_id in ("CCabx", "CCbax"):
                cert = v.reason
                if v.status != sg.NORMAL_BY_EXCEPTION or cert["rank"] != cert["colors"]:
                    problems.append((case.case_id, case.params, v.status))
            elif _collapsed_b(case):
                r = case.params["r"]
                drop = [0] * len(sys.sigma)
                for i in range(1, r + 1):
                    for k, x in enumerate(case.tail.sigma[2 * i - 1].coeffs):
                        drop[k] += x
                below = sigma_in_delta(sys, SigmaVector(tuple(drop)))
                # D1 = D2 - sum sigma_2i with D2 = D_p
                d1 = tuple(a - b for a, b in zip(case.d_p.coeffs, below.coeffs))
                if v.status != sg.NON_NORMAL or tuple(v.reason["witness"]) != d1:
                    problems.append((case.case_id, case.params, case.variant, v.status))
                elif case.tail.roman is None and d1 != case.tail.colors[1].coeffs:
                    problems.append((case.case_id, case.params, "witness is not D1"))
            elif v.status != sg.NORMAL:
                problems.append((case.case_id, case.params, case.variant, v.status))
    ok = not problems and clock.seconds < RUNTIME_BUDGET_S
    record(7, ok, "normality verdicts", ", ".join(f"{k} {n}" for k, n in sorted(counts.items())))
    assert ok, problems


# 8. tensor witnesses

def _ay22c_displayed(t):
    sp = T.spaces("ay22c", {"t": t})
    V, Vd, W = sp.v, sp.v_dual, sp.w
    S2 = T.sym(W, 2)
    return {
        "D2,D3,D1+D4+D5": T.ExactTensor.build((T.vec(Vd), T.vec(V), S2), [
            (((3,), (1,), (1, -2)), 1), (((3,), (2,), (1, 2)), -1),
            (((1,), (1,), (1, 1)), 1), (((2,), (2,), (1, 1)), 1)]),
        "D3,D3,D1+2D5": T.ExactTensor.build((T.wedge(V, 2), S2), [(((1, 2), (1, 1)), 2)]),
        "D2,D2,D4+D5": T.ExactTensor.build((T.wedge(Vd, 2), S2), [
            (((3, 2), (1, -2)), 2), (((3, 1), (1, 2)), 2), (((2, 1), (1, 1)), -2)]),
        "D2,D3,2D5": T.ExactTensor.build((S2,), [(((1, 1),), -2)]),
        "D3,D4,D1+D5": T.ExactTensor.build((T.wedge(V, 2), T.vec(W)), [(((1, 2), (1,)), -2)]),
        "D4,D4,D1": T.ExactTensor.build((T.wedge(V, 2),), [(((1, 2),), -2)]),
    }


AY22C_PAIRS = {"D2,D3,D1+D4+D5": (2, 3), "D3,D3,D1+2D5": (3, 3), "D2,D2,D4+D5": (2, 2),
               "D2,D3,2D5": (2, 3), "D3,D4,D1+D5": (3, 4), "D4,D4,D1": (4, 4)}


def _ayssbt_displayed(s, l, m):
    """binom(l+m-2, l-1) sum e1 ⊗ e1∧e_I ⊗ e'_{s-i_k+2}∧..∧e'_{s-i_1+2}, and zero."""
    from math import comb

    sp = T.spaces("ayssbt", {"s": s, "t": 1})
    V, W = sp.v, sp.w
    k = l + m - 2
    raw = [(((1,), (1,) + idx, tuple(s - i + 2 for i in reversed(idx))), comb(k, l - 1))
           for idx in combinations(range(2, s + 2), k)]
    return T.ExactTensor.build((T.vec(V), T.wedge(V, k + 1), T.wedge(W, k)), raw)


def test_criterion_8_tensor_witnesses():
    mismatches = []
    checked = 0
    with Clock() as clock:
        for t in (2, 3):
            p = {"t": t}
            shown = _ay22c_displayed(t)
            for tid, (i, j) in AY22C_PAIRS.items():
                got = T.project("ay22c", tid, T.invariant_vector("ay22c", i, p), T.invariant_vector("ay22c", j, p), p)
                want = shown[tid]
                if tid == "D2,D3,D1+D4+D5":
                    got, want = T.modulo_identity(got), T.modulo_identity(want)
                checked += 1
                if got != want:
                    mismatches.append((f"ay22c(t={t}) {tid}", f"computed {got}, displayed {want}"))

        s, l, m = 2, 1, 1
        p = {"s": s, "t": 1, "l": l, "m": m}
        x, y = T.invariant_vector("ayssbt", 2 * l, p), T.invariant_vector("ayssbt", 2 * m, p)
        got = T.project("ayssbt", "pi2*pi1", x, y, p)
        checked += 2
        if got != _ayssbt_displayed(s, l, m):
            mismatches.append((f"ayssbt{(s, l, m)} binomial term",
                               f"computed {got}, displayed {_ayssbt_displayed(s, l, m)}"))
        if not T.project("ayssbt", "pi3*pi1", x, y, p).is_zero():
            mismatches.append((f"ayssbt{(s, l, m)} second component", "not zero"))

        for s in (2, 3):
            p = {"s": s}
            sp = T.spaces("abyss", p)
            got = T.project("abyss", "D3,D2s,D1+D2s+1", T.invariant_vector("abyss", 3, p),
                            T.invariant_vector("abyss", 2 * s, p), p)
            want = T.ExactTensor.build((T.vec(sp.v), sp.spin.factor), [(((1,), ()), s)])
            checked += 1
            if got != want:
                mismatches.append((f"abyss(s={s}) pi(h3 ⊗ h{2 * s})", f"computed {got}, displayed {want}"))
        p = {"s": 2}
        sp = T.spaces("abyss", p)
        h4 = T.invariant_vector("abyss", 4, p)
        got = T.project("abyss", "D4,D4,D1", h4, h4, p)
        want = T.ExactTensor.build((T.vec(sp.v),), [(((1,),), -2)])
        checked += 1
        if got != want:
            mismatches.append(("abyss(s=2) pi(h4 ⊗ h4)", f"computed {got}, displayed {want}"))
    ok = not mismatches and clock.seconds < RUNTIME_BUDGET_S
    detail = f"{checked - len(mismatches)}/{checked} values match"
    if mismatches:
        detail += "; differ: " + ", ".join(label for label, _ in mismatches)
    record(8, ok, "tensor witnesses against the displayed values", detail)
    assert ok, mismatches


# 9. oracle equivalence

def _small_systems():
    out = []
    for case in _built(catalog.all_samples() + catalog.tail_samples(TAIL_RS)):
        if len(case.system.colors) <= ORACLE_MAX_COLORS:
            out.append((f"{case.case_id}{case.params}{case.variant or ''}", case.system))
    for name, sys in [("ay22c(2)", families.ay22c(2)), ("ay_b(2,1)", families.ay_b(2, 1)),
                      ("aby(2)", families.aby(2)), ("aby(3)", families.aby(3))]:
        out.append((name, sys))
    return out


def _in_box(v):
    return all(0 <= x <= ORACLE_BOX for x in v)


def test_criterion_9_oracle_equivalence():
    problems = []
    n_small = n_gamma = 0
    with Clock() as clock:
        seen = set()
        for name, sys in _small_systems():
            if sys in seen:
                continue
            seen.add(sys)
            n_small += 1
            got = {(c.gamma.coeffs, c.pos.coeffs) for c in order.covering_differences(sys, COVERING_HEIGHT)
                   if _in_box(c.neg.coeffs) and _in_box(c.gamma.coeffs)}
            if got != O.brute_coverings(sys, COVERING_HEIGHT):
                problems.append((name, "coverings"))
            got = set()
            for tr in order.fundamental_low_triples(sys):
                if _in_box(tr.F.coeffs) and _in_box(tr.gamma.coeffs):
                    got.add((tr.D.coeffs.index(1), tr.E.coeffs.index(1), tr.F.coeffs, tr.gamma.coeffs))
            if got != O.brute_low_triples(sys):
                problems.append((name, "low triples"))
        for case in _built(catalog.all_samples() + catalog.tail_samples(TAIL_RS)):
            n_gamma += 1
            gens = {g.coeffs for g in sg.gamma_semigroup(case.system, case.d_p).generators}
            elems = O.brute_gamma(case.system, case.d_p.coeffs, GAMMA_MAX_DEGREE, GAMMA_SIGMA_BOUND)
            if gens != O.irreducibles(elems, GAMMA_MAX_HEIGHT):
                problems.append((case.case_id, case.params, case.variant, "semigroup"))
    ok = not problems and clock.seconds < RUNTIME_BUDGET_S
    record(9, ok, "brute-force oracles",
           f"{n_small} systems with |Delta| <= {ORACLE_MAX_COLORS}, {n_gamma} semigroups, "
           f"{len(problems)} disagreements, {clock.seconds:.1f}s")
    assert ok, problems


if __name__ == "__main__":
    import sys as _sys

    _sys.exit(pytest.main([__file__, "-q"]))
