from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from legcard.arith import QSqrt, field_of_order
from legcard.aug import (
    Augmentation,
    brute_force_augmentations,
    enumerate_augmentations,
    euler_data,
    is_augmentation,
    normalized_count,
)
from legcard.dga import Dga, Generator, NcPoly, build_dga
from legcard.front import EXAMPLES
from legcard.ruling import degree_vanishes

from conftest import augs_of, dga_of
from strategies import plat_fronts

QS = (2, 3, 4, 5)


@pytest.mark.parametrize("q", QS)
def test_unknot_single_augmentation(q):
    (a,) = augs_of("unknot", q, 0)
    F = field_of_order(q)
    assert a["t1"] == F.neg(1)
    assert a["a1"] == 0


@pytest.mark.parametrize(
    "name,counts",
    [
        ("trefoil", [5, 10, 17, 26]),
        ("m821", [16, 51, 120, 235]),
        ("m945", [5, 10, 17, 26]),
        ("unlink", [1, 1, 1, 1]),
        ("hopf", [1, 1, 1, 1]),
    ],
)
def test_counts_m0(name, counts):
    assert [len(augs_of(name, q, 0)) for q in QS] == counts


def test_m945_two_periodic_count_differs():
    assert [len(augs_of("m945", q, 1)) for q in QS] == [24, 126, 416, 1050]


@pytest.mark.parametrize(
    "name,m,chi",
    [("unknot", 0, -1), ("unlink", 0, -2), ("trefoil", 0, 1), ("trefoil", 1, 1), ("m821", 0, 3), ("m945", 0, 1), ("m945", 1, 5)],
)
def test_chi_star(name, m, chi):
    assert euler_data(dga_of(name), m).chi_star == chi


def test_normalized_counts():
    assert normalized_count(dga_of("m821"), 2) == QSqrt(2, 0, 4)
    assert normalized_count(dga_of("m945"), 2) == QSqrt(2, 0, Fraction(5, 2))
    assert normalized_count(dga_of("unknot"), 3) == QSqrt(3, 0, Fraction(1, 2))
    assert normalized_count(dga_of("trefoil"), 3) == QSqrt(3, 0, Fraction(5, 3))


@pytest.mark.parametrize("name", ["unknot", "unlink", "hopf", "trefoil"])
@pytest.mark.parametrize("q", (2, 3))
@pytest.mark.parametrize("m", (0, 1))
def test_brute_force_oracle_examples(name, q, m):
    d = dga_of(name)
    assert sorted(enumerate_augmentations(d, q, m), key=repr) == sorted(brute_force_augmentations(d, q, m), key=repr)


@given(plat_fronts(max_cusps=3, max_events=4), st.sampled_from([2, 3]), st.integers(0, 2))
def test_brute_force_oracle_random(front, q, m):
    d = build_dga(front)
    if sum(degree_vanishes(g.degree, m) for g in d.generators) > 6:
        return
    fast = sorted(enumerate_augmentations(d, q, m), key=repr)
    slow = sorted(brute_force_augmentations(d, q, m), key=repr)
    assert fast == slow


@pytest.mark.parametrize("name", EXAMPLES)
@pytest.mark.parametrize("q", QS)
def test_every_result_is_valid(name, q):
    d = dga_of(name)
    F = field_of_order(q)
    for a in augs_of(name, q, 0):
        assert is_augmentation(d, F, a.as_dict(), 0) == []
    assert len(set(augs_of(name, q, 0))) == len(augs_of(name, q, 0))


def test_invalid_assignment_reported():
    d = dga_of("unknot")
    F = field_of_order(3)
    assert is_augmentation(d, F, {"a1": 0, "t1": 1}, 0)
    assert is_augmentation(d, F, {"a1": 0, "t1": 0}, 0)


def _stabilize(d: Dga, k: int) -> Dga:
    """Add a cancelling pair e1 (degree k), e2 (degree k-1) with d e1 = e2."""
    top = max(g.height for g in d.generators)
    gens = list(d.generators) + [Generator("e2", k - 1, 1, 1, top + 1), Generator("e1", k, 1, 1, top + 2)]
    diff = dict(d.differential)
    diff["e1"] = NcPoly({("e2",): 1})
    return Dga(d.n_components, gens, diff)


@given(
    st.sampled_from(["unknot", "trefoil", "hopf"]),
    st.integers(-3, 3),
    st.sampled_from([2, 3, 4]),
    st.integers(0, 2),
)
def test_normalized_count_stable_under_stabilization(name, k, q, m):
    d = dga_of(name)
    s = _stabilize(d, k)
    assert normalized_count(s, q, m) == normalized_count(d, q, m)


def test_augmentation_accessors():
    a = Augmentation(3, 0, (("a1", 0), ("t1", 2)))
    assert a.evaluate("T1") == 2  # -1 is its own inverse
    assert a.field.q == 3
