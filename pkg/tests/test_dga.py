import pytest
from hypothesis import given

from legcard.dga import (
    Dga,
    DgaError,
    Generator,
    NcPoly,
    build_dga,
    check_dga,
    load_dga,
    save_dga,
)
from legcard.front import EXAMPLES, PlatFront

from conftest import dga_of, front_of
from strategies import plat_fronts


def test_unknot_differential():
    d = dga_of("unknot")
    assert d.names == ["a1"]
    assert d.by_name["a1"].degree == 1
    assert d.differential["a1"] == NcPoly({(): 1, ("t1",): 1})


def test_trefoil_generators():
    d = dga_of("trefoil")
    assert d.degree_tally() == {0: 3, 1: 2}
    # the three crossings are the lowest generators and have no differential
    for name in ("a1", "a2", "a3"):
        assert not d.differential.get(name)


def test_trefoil_d_squared_vanishes():
    d = dga_of("trefoil")
    assert all(not d.d_squared(g) for g in d.names)


def test_unlink_has_no_mixed_chords():
    d = dga_of("unlink")
    assert all(g.r == g.c for g in d.generators)
    assert d.degree_tally() == {1: 2}


def test_hopf_has_mixed_chords():
    d = dga_of("hopf")
    assert any(g.r != g.c for g in d.generators)


@pytest.mark.parametrize("name", EXAMPLES)
def test_examples_sound(name):
    assert check_dga(dga_of(name)) == []


@pytest.mark.parametrize("name", ["m821", "m945"])
def test_wrong_sign_rule_breaks_d_squared(name):
    # negative control: all-positive signs are detected on the larger knots
    d = build_dga(front_of(name), negative_quadrants=frozenset())
    assert any("d^2" in p for p in check_dga(d))


def _corrupt(dga, name, poly):
    diff = dict(dga.differential)
    diff[name] = poly
    return Dga(dga.n_components, list(dga.generators), diff)


def test_corrupted_trefoil_reports_d_squared():
    d = dga_of("trefoil")
    # flip a sign in the degree-1 generator and add a degree-1 generator
    # whose differential involves it
    top = Generator("a6", 2, 1, 1, 6)
    bad = Dga(1, list(d.generators) + [top], dict(d.differential))
    bad.differential["a6"] = NcPoly({("a4",): 1})
    problems = check_dga(bad)
    assert any(p.startswith("d^2(a6)") for p in problems)


def test_degree_violation_reported():
    d = _corrupt(dga_of("trefoil"), "a4", NcPoly({("a5",): 1}))
    problems = check_dga(d)
    assert any(p.startswith("degree") for p in problems)
    assert any(p.startswith("filtration") for p in problems)


def test_link_grading_violation_reported():
    gens = [Generator("b1", 0, 1, 2, 1), Generator("b2", 1, 1, 1, 2)]
    bad = Dga(2, gens, {"b2": NcPoly({("b1",): 1})})
    assert any(p.startswith("link grading") for p in check_dga(bad))
    ok = Dga(2, [Generator("b1", 0, 1, 2, 1), Generator("b2", 1, 1, 2, 2)], {"b2": NcPoly({("b1",): 1})})
    assert check_dga(ok) == []
    # an invertible letter sits on its own component only
    bad = Dga(2, [Generator("b2", 1, 1, 1, 1)], {"b2": NcPoly({("t2",): 1})})
    assert any(p.startswith("link grading") for p in check_dga(bad))


def test_unknown_letters():
    d = _corrupt(dga_of("unknot"), "a1", NcPoly({("b7",): 1}))
    assert check_dga(d) == ["a1: unknown letter b7"]
    d = _corrupt(dga_of("unknot"), "a1", NcPoly({("t2",): 1}))
    assert check_dga(d) == ["a1: unknown invertible letter t2"]


@pytest.mark.parametrize("name", EXAMPLES)
def test_save_load_round_trip(name):
    d = dga_of(name)
    assert load_dga(save_dga(d)) == d


def test_load_rejects_bad_input():
    with pytest.raises(DgaError):
        load_dga("{")
    with pytest.raises(DgaError):
        load_dga('{"components": 1, "generators": []}')
    text = save_dga(dga_of("unknot")).replace('"t1"', '"t5"')
    with pytest.raises(DgaError):
        load_dga(text)
    assert load_dga(text, check=False).differential["a1"] == NcPoly({(): 1, ("t5",): 1})


def test_ncpoly_algebra():
    a = NcPoly({("x",): 1})
    b = NcPoly({("y",): 2})
    assert (a * b).terms == {("x", "y"): 2}
    assert not (a + a.scale(-1))
    # t and its inverse cancel when adjacent
    assert (NcPoly({("t1",): 1}) * NcPoly({("T1",): 1})).terms == {(): 1}


def test_leibniz_sign():
    d = dga_of("trefoil")
    # d(a4 a1) = d(a4) a1, d(a1 a4) = a1 d(a4) since |a1| = 0
    left = d.d_word(("a1", "a4"))
    right = NcPoly({("a1",): 1}) * d.differential["a4"]
    assert left == right


@given(plat_fronts(max_cusps=3, max_events=9))
def test_random_fronts_sound(front):
    assert check_dga(build_dga(front)) == []


@given(plat_fronts(max_cusps=3, max_events=9))
def test_generator_count_is_crossings_plus_cusps(front):
    d = build_dga(front)
    assert len(d.generators) == len(front.events) + front.n_cusps
