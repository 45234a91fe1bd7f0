from __future__ import annotations

import json

import pytest

import _oracles as O
from lunakit import catalog
from lunakit import semigroup as sg
from lunakit.hilbert import UnboundedGuard
from lunakit.sphsys import DeltaVector


def _case(cid, variant=None, **params):
    return catalog.build_case(cid, params, variant)


@pytest.mark.parametrize("cid, params, variant", [
    ("CCaac", {"p": 2, "q": 2}, None), ("CCacy", {"p": 3, "q": 2}, None), ("CCabx", {"p": 4, "q": 2}, None),
    ("BDady", {"p": 2, "q": 3, "r": 1}, None), ("DDady", {"p": 3, "q": 4, "r": 2}, "I"),
])
def test_generators_vs_brute(cid, params, variant):
    case = catalog.build_case(cid, params, variant)
    gs = sg.gamma_semigroup(case.system, case.d_p)
    elems = O.brute_gamma(case.system, case.d_p.coeffs, 6, 6)
    assert {g.coeffs for g in gs.generators} == O.irreducibles(elems, 8)
    for g, deg in zip(gs.generators, gs.degree_witnesses):
        assert sg.degree_in_gamma(case.system, case.d_p, g) == deg
        assert sg.in_gamma(case.system, case.d_p, g)


def test_membership_rejects_outsiders():
    case = _case("CCaac", p=3, q=2)
    assert not sg.in_gamma(case.system, case.d_p, case.system.delta({"D2": 1}))
    assert sg.degree_in_gamma(case.system, case.d_p, DeltaVector((0, 0, 0))) == 0


def test_bad_base_point():
    case = _case("CCaac", p=3, q=2)
    with pytest.raises(ValueError):
        sg.gamma_semigroup(case.system, DeltaVector((1, -1, 0)))
    with pytest.raises(ValueError):
        sg.normality_verdict(case.system, case.d_p, "unheard-of")


def test_budget_guard():
    case = _case("CCacy", p=4, q=3)
    with pytest.raises(UnboundedGuard):
        sg.gamma_semigroup(case.system, case.d_p, budget=2)


def test_verdict_statuses():
    case = _case("CCaac", p=3, q=2)
    assert sg.normality_verdict(case.system, case.d_p).normal is True
    case = _case("BBbay", p=2, q=3, r=2)
    v = sg.normality_verdict(case.system, case.d_p)
    assert v.status == sg.NON_NORMAL and v.normal is False and v.reason["witness"]
    case = _case("CCabx", p=4, q=2)
    v = sg.normality_verdict(case.system, case.d_p, case.surjectivity)
    assert v.status == sg.NORMAL_BY_EXCEPTION and v.normal == "exception"


def test_recursion_matches_closed_forms_everywhere():
    for cid, params, variant in catalog.tail_samples((1, 2)):
        case = catalog.build_case(cid, params, variant)
        if case.system is None:
            continue
        tilde = sg.explicit_tilde(case.tail)
        assert sg.recursive_tilde(case.system, case.tail, tilde) == tilde


def test_semigroup_json_is_stable():
    case = _case("CCaac", p=3, q=2)
    a = sg.semigroup_json(case.system, case.d_p)
    assert a == sg.semigroup_json(case.system, case.d_p)
    obj = json.loads(a)
    assert obj["normal"] is True and obj["witness"] is None and len(obj["generators"]) == 3


def test_varpi_weights():
    case = _case("BDady", p=3, q=4, r=1)
    texts = [w.text for w in sg.weight_semigroup(case.system, case.d_p, "varpi")]
    assert texts and all("v" in t or "w" in t for t in texts)
