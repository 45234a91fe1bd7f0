from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lunakit import tensorlab as T

AY22C_T2 = {
    "D2,D3,D1+D4+D5": "-φ1 ⊗ e1 ⊗ e'1^2 - φ2 ⊗ e2 ⊗ e'1^2 - φ3 ⊗ e1 ⊗ e'1·e'-2 + φ3 ⊗ e2 ⊗ e'1·e'2",
    "D3,D3,D1+2D5": "2 e1∧e2 ⊗ e'1^2",
    "D2,D2,D4+D5": "2 φ1∧φ2 ⊗ e'1^2 - 2 φ1∧φ3 ⊗ e'1·e'2 - 2 φ2∧φ3 ⊗ e'1·e'-2",
    "D2,D3,2D5": "-2 e'1^2",
    "D3,D4,D1+D5": "-2 e1∧e2 ⊗ e'1",
    "D4,D4,D1": "2 e1∧e2",
}
AYSSBT_PARAMS = [(s, l, m) for s in (2, 3, 4) for l in range(1, s + 1) for m in range(l, s + 1)
                 if 2 * l + 2 * m - 3 <= 2 * s]


def test_ay22c_values_pinned():
    got = {c.triple: T.format_tensor(c.value) for c in T.certify_triples(T.AY22C, {"t": 2})}
    assert got == AY22C_T2


@pytest.mark.parametrize("t", [2, 3, 4])
def test_ay22c_certificates_low_and_nonzero(t):
    certs = T.certify_triples(T.AY22C, {"t": t})
    assert len(certs) == 6 and all(c.nonzero and c.low for c in certs)


@pytest.mark.parametrize("s, l, m", AYSSBT_PARAMS)
def test_ayssbt_pi2_nonzero_pi3_zero(s, l, m):
    certs = {c.map_id: c for c in T.certify_triples(T.AYSSBT, {"s": s, "t": 1, "l": l, "m": m})}
    assert certs["pi2*pi1"].nonzero and certs["pi2*pi1"].low
    assert certs["pi3*pi1"].value.is_zero()


@pytest.mark.parametrize("s", [2, 3, 4])
def test_abyss_certificates(s):
    certs = T.certify_triples(T.ABYSS, {"s": s})
    assert all(c.nonzero and c.low for c in certs)
    vals = {c.map_id: T.format_tensor(c.value) for c in certs}
    assert ("D4,D4,D1" in vals) == (s == 2)
    if s == 2:
        assert vals["D4,D4,D1"] == "-2 e1"


@pytest.mark.parametrize("s", [1, 2, 3])
def test_spin_clifford_relation(s):
    spin = T.SpinSpace(T.orthogonal_space(s))
    w = spin.w
    for k in range(s + 1):
        for psis in combinations(range(s, 0, -1), k):
            phi = spin.element(psis)
            for a in w.indices:
                for b in w.indices:
                    lhs = spin.apply(a, spin.apply(b, phi)) + spin.apply(b, spin.apply(a, phi))
                    norm = 2 if a == b == 0 else w.pair(a, b)
                    assert lhs == phi.scale(norm), (a, b, psis)


@pytest.mark.parametrize("family, index, factor, params", [
    (T.AY22C, 2, 1, {"t": 2}), (T.AY22C, 2, 1, {"t": 3}),
])
def test_invariants_are_traceless(family, index, factor, params):
    h = T.invariant_vector(family, index, params)
    assert T.invariant_check(h.shape[factor].space, h, factor) == 0


def _random_in_span(draw, h):
    keys = [k for k, _ in h.items()]
    coeffs = draw(st.lists(st.integers(-3, 3), min_size=len(keys), max_size=len(keys)))
    return T.ExactTensor(h.shape, {k: Fraction(c) for k, c in zip(keys, coeffs) if c})


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_projection_is_bilinear(data):
    tid, (i, j) = data.draw(st.sampled_from(sorted(T._AY22C_PAIRS.items())))
    hx, hy = T.invariant_vector(T.AY22C, i), T.invariant_vector(T.AY22C, j)
    x1, x2 = _random_in_span(data.draw, hx), _random_in_span(data.draw, hx)
    y = _random_in_span(data.draw, hy)
    c = data.draw(st.integers(-3, 3))
    p = lambda a, b: T.project(T.AY22C, tid, a, b)  # noqa: E731
    assert p(x1 + x2, y) == p(x1, y) + p(x2, y)
    assert p(x1.scale(c), y) == p(x1, y).scale(c)


def test_wedge_and_sym_normal_forms():
    v = T.standard_space("V", "e", 3)
    t = T.ExactTensor.build((T.wedge(v, 2),), [(((2, 1),), 1), (((1, 2),), 1)])
    assert t.is_zero()
    assert T.ExactTensor.build((T.wedge(v, 2),), [(((1, 1),), 5)]).is_zero()
    s = T.ExactTensor.build((T.sym(v, 2),), [(((2, 1),), 1), (((1, 2),), 1)])
    assert T.format_tensor(s) == "2 e1·e2"


def test_errors():
    v = T.standard_space("V", "e", 3)
    with pytest.raises(T.ShapeMismatch):
        T.ExactTensor.build((T.vec(v),), [(((1,), (2,)), 1)])
    with pytest.raises(T.ShapeMismatch):
        T.monomial((T.vec(v),), (1,)) + T.monomial((T.wedge(v, 2),), (1, 2))
    with pytest.raises(T.UnknownIndex):
        v.pos(7)
    with pytest.raises(T.UnknownIndex):
        T.project(T.AY22C, "D9,D9,D9", T.invariant_vector(T.AY22C, 2), T.invariant_vector(T.AY22C, 2))
    with pytest.raises(ValueError):
        T.spaces(T.AY22C, {"t": 1})


def test_modulo_identity_kills_identity():
    vd, v = T.standard_space("V*", "φ", 3), T.standard_space("V", "e", 3)
    shape = (T.vec(vd), T.vec(v))
    ident = T.ExactTensor.build(shape, [(((i,), (i,)), 1) for i in (1, 2, 3)])
    assert T.modulo_identity(ident).is_zero()
    off = T.monomial(shape, (1,), (2,))
    assert T.modulo_identity(off) == off
