import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from legcard.arith import QSqrt, field_of_order
from legcard.aug import euler_data, evaluate_poly
from legcard.augcat import (
    AugCatError,
    aut_count,
    build_hom,
    candidate_cardinality_2m,
    cohomology,
    conjecture_harness,
    unit_morphism_total,
    predicted_class_size,
    count_unit_cocycles,
    duality_violations,
    euler_of_hom,
    homotopy_cardinality,
    iso_classes,
    n_transport_parameters,
    reduce_degree,
    ruling_side,
    theorem_rhs,
    transport,
    transport_chords,
)
from legcard.dga import NcPoly
from legcard.front import EXAMPLES
from legcard.ruling import ruling_polynomial

from conftest import augs_of, classes_of, dga_of, front_of

QS = (2, 3, 4, 5)


def _pairs(name, q, m):
    augs = augs_of(name, q, m)
    return list(itertools.product(augs, repeat=2))


# -- the complex itself ------------------------------------------------------------


@pytest.mark.parametrize("name", EXAMPLES)
@pytest.mark.parametrize("q", (2, 3))
@pytest.mark.parametrize("m", (0, 1, 2, 3))
def test_m1_squares_to_zero_all_pairs(name, q, m):
    d = dga_of(name)
    bad = [(a, b) for a, b in _pairs(name, q, m) if not build_hom(d, a, b).squares_to_zero()]
    assert bad == []


@pytest.mark.parametrize("name", ["trefoil", "m945"])
@pytest.mark.parametrize("q", (4, 5))
def test_m1_squares_to_zero_larger_fields(name, q):
    d = dga_of(name)
    assert all(build_hom(d, a, b).squares_to_zero() for a, b in _pairs(name, q, 0))


@pytest.mark.parametrize("name", EXAMPLES)
def test_degree_and_filtration(name):
    d = dga_of(name)
    for a, b in _pairs(name, 3, 0):
        hc = build_hom(d, a, b)
        assert hc.degree_violations() == []
        assert hc.filtration_violations() == []


def test_reduce_degree():
    assert reduce_degree(-3, 0) == -3
    assert reduce_degree(-3, 1) == 1
    assert reduce_degree(5, 2) == 1


@pytest.mark.parametrize("q", QS)
def test_unknot_cohomology(q):
    d = dga_of("unknot")
    (a,) = augs_of("unknot", q, 0)
    co = cohomology(build_hom(d, a, a))
    assert {i: n for i, n in co.h.items() if n} == {0: 1}


@pytest.mark.parametrize("name", EXAMPLES)
def test_minus_unit_is_a_cocycle(name):
    d = dga_of(name)
    F = field_of_order(3)
    for a in augs_of(name, 3, 0):
        hc = build_hom(d, a, a)
        e = [F.neg(1) if lab.startswith("y") else 0 for lab in hc.labels]
        assert not any(hc.apply(e))


def test_units_live_in_degree_zero():
    hc = build_hom(dga_of("m821"), *augs_of("m821", 2, 0)[:2])
    for lab, deg in zip(hc.labels, hc.degrees):
        if lab.startswith("y"):
            assert deg == 0
        if lab.startswith("x"):
            assert deg == 1


# -- transport -----------------------------------------------------------------------


@pytest.mark.parametrize("name", ["trefoil", "m945", "hopf"])
def test_transport_identity(name):
    d = dga_of(name)
    for a in augs_of(name, 3, 0):
        t = transport(d, a, [1] * d.n_components)
        assert t.target == a
        assert all(v == 0 for v in t.homotopy.values())


@settings(max_examples=40)
@given(st.sampled_from(["trefoil", "m821", "m945"]), st.sampled_from([2, 3, 5]), st.data())
def test_transport_homotopy_relation(name, q, data):
    # e1 - e' = K d on every chord, and the target is a closed-morphism target
    d = dga_of(name)
    F = field_of_order(q)
    a = data.draw(st.sampled_from(augs_of(name, q, 0)))
    dd = [data.draw(st.sampled_from(F.units)) for _ in range(d.n_components)]
    k = {c: data.draw(st.integers(0, q - 1)) for c in transport_chords(d, 0)}
    t = transport(d, a, dd, k)
    assert t.target in set(augs_of(name, q, 0))
    # K is an (e1, e')-derivation; on generators e1(a) - e'(a) = K(da)
    e1 = a.as_dict()
    ep = dict(t.intermediate)
    ep.update({f"t{i}": e1[f"t{i}"] for i in range(1, d.n_components + 1)})
    for g in d.generators:
        kd = 0
        for w, c in d.differential.get(g.name, NcPoly()).terms.items():
            for i, x in enumerate(w):
                if t.homotopy.get(x):
                    pre = evaluate_poly(F, e1, NcPoly({w[:i]: c}))
                    suf = evaluate_poly(F, ep, NcPoly({w[i + 1:]: 1}))
                    kd = F.add(kd, F.mul(F.mul(pre, t.homotopy[x]), suf))
        assert F.add(e1[g.name], F.neg(ep[g.name])) == kd


def test_transport_rejects_bad_parameters():
    d = dga_of("trefoil")
    a = augs_of("trefoil", 3, 0)[0]
    with pytest.raises(ValueError):
        transport(d, a, [0])
    with pytest.raises(ValueError):
        transport(d, a, [1], {"a4": 1})


# -- classes and automorphisms -------------------------------------------------------


def test_m821_classes():
    classes = classes_of("m821", 2, 0)
    assert len(classes) == 10
    assert sum(len(c) for c in classes) == 16
    d = dga_of("m821")
    assert sorted(aut_count(d, c[0]) for c in classes) == [1] * 6 + [2] * 4


def test_m945_classes():
    classes = classes_of("m945", 2, 0)
    assert [len(c) for c in classes] == [1] * 5
    d = dga_of("m945")
    assert sorted(aut_count(d, c[0]) for c in classes) == [1, 1, 1, 2, 2]
    rep = homotopy_cardinality(d, 2)
    assert rep.groupoid_cardinality == 4
    assert rep.homotopy_cardinality == QSqrt(2, 5)


@pytest.mark.parametrize("name", ["trefoil", "m821", "m945", "hopf"])
@pytest.mark.parametrize("q", (2, 3))
@pytest.mark.parametrize("m", (0, 1))
def test_methods_agree(name, q, m):
    d = dga_of(name)
    t = iso_classes(d, q, m, augs_of(name, q, m), method="transport")
    h = iso_classes(d, q, m, augs_of(name, q, m), method="hom")
    assert sorted(map(frozenset, t), key=repr) == sorted(map(frozenset, h), key=repr)


def test_unknown_method():
    with pytest.raises(ValueError):
        iso_classes(dga_of("unknot"), 2, 0, method="guess")


@pytest.mark.parametrize("name", EXAMPLES)
@pytest.mark.parametrize("q", (2, 3))
def test_unit_morphism_totals(name, q):
    d = dga_of(name)
    augs = augs_of(name, q, 0)
    expected = n_transport_parameters(d, q, 0)
    assert all(unit_morphism_total(d, a, augs) == expected for a in augs)


@pytest.mark.parametrize("name", EXAMPLES)
@pytest.mark.parametrize("q", (2, 3, 4))
def test_class_sizes(name, q):
    d = dga_of(name)
    for cls in classes_of(name, q, 0):
        assert predicted_class_size(d, cls[0]) == len(cls)


@pytest.mark.parametrize("name", EXAMPLES)
@pytest.mark.parametrize("q", (2, 3))
def test_iso_bijection_cardinality(name, q):
    # isomorphic augmentations have the same number of automorphisms
    d = dga_of(name)
    for cls in classes_of(name, q, 0):
        assert len({aut_count(d, a) for a in cls}) == 1
        a, b = cls[0], cls[-1]
        assert count_unit_cocycles(build_hom(d, a, b)) == count_unit_cocycles(build_hom(d, a, a))


# -- cardinalities ---------------------------------------------------------------------


@pytest.mark.parametrize("name", EXAMPLES)
@pytest.mark.parametrize("q", QS)
def test_homotopy_cardinality(name, q):
    d = dga_of(name)
    n = len(augs_of(name, q, 0))
    rep = homotopy_cardinality(d, q)
    chi = euler_data(d).chi_star
    assert rep.homotopy_cardinality == theorem_rhs(d, q, n, chi)
    assert rep.homotopy_cardinality == ruling_side(d.tb(), q, ruling_polynomial(front_of(name)))


@pytest.mark.parametrize("q", QS)
def test_unknot_cardinality(q):
    rep = homotopy_cardinality(dga_of("unknot"), q)
    assert rep.homotopy_cardinality == QSqrt(q, Fraction(1, q - 1))


def test_homotopy_cardinality_needs_z_grading():
    with pytest.raises(ValueError):
        homotopy_cardinality(dga_of("unknot"), 2, 1)
    with pytest.raises(ValueError):
        candidate_cardinality_2m(dga_of("unknot"), 2, 0)


@pytest.mark.parametrize("name", EXAMPLES)
@pytest.mark.parametrize("q", (2, 3))
@pytest.mark.parametrize("m", (1, 2))
def test_candidate_matches_ruling_side(name, q, m):
    d = dga_of(name)
    cand = candidate_cardinality_2m(d, q, m)
    assert cand.prop_form == ruling_side(d.tb(), q, ruling_polynomial(front_of(name), m))


# -- duality, Euler characteristic, conjecture ----------------------------------------------


@pytest.mark.parametrize("name", EXAMPLES)
@pytest.mark.parametrize("q", (2, 3))
def test_duality(name, q):
    d = dga_of(name)
    for a in augs_of(name, q, 0):
        assert duality_violations(d, a) == []
        assert euler_of_hom(build_hom(d, a, a)) == -d.tb()


@pytest.mark.parametrize("name", ["trefoil", "m821", "m945", "hopf"])
def test_duality_fails_without_basepoint_terms(name):
    # negative control: dropping the x terms coming from the base point breaks duality
    d = dga_of(name)
    assert all(duality_violations(d, a, x_rule="none") for a in augs_of(name, 2, 0))


@pytest.mark.parametrize("name", EXAMPLES)
@pytest.mark.parametrize("q", (2, 3))
@pytest.mark.parametrize("m", (1, 2))
def test_conjecture_harness(name, q, m):
    cases = conjecture_harness(dga_of(name), q, m, augs_of(name, q, m))
    assert len(cases) == len(augs_of(name, q, m))
    assert all(c.ok for c in cases if c.z_graded)


def test_m945_has_strictly_periodic_augmentations():
    cases = conjecture_harness(dga_of("m945"), 2, 1, augs_of("m945", 2, 1))
    strict = [c for c in cases if not c.z_graded]
    assert len(strict) == 19
    # observed: the identity also holds on every strictly 2-graded case here
    assert all(c.ok for c in strict)


def test_transport_check_catches_bad_targets(monkeypatch):
    import legcard.augcat as ac

    d = dga_of("trefoil")
    a = augs_of("trefoil", 3, 0)[0]
    monkeypatch.setattr(ac, "is_augmentation", lambda *args: ["forced"])
    with pytest.raises(AugCatError):
        transport(d, a, [1])
