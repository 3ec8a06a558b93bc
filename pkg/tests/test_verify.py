from legcard.verify import PAIR_BUDGET, verify, verify_case

from conftest import dga_of, front_of


def test_trefoil_case_passes():
    rep = verify_case("trefoil", 3, 0, front_of("trefoil"))
    assert rep.ok
    names = [c.name for c in rep.checks]
    assert "homotopy-card" in names and "duality" in names


def test_dga_only_input_skips_ruling_checks():
    rep = verify_case("m945", 2, 1, dga=dga_of("m945"))
    assert rep.ok
    assert not any(c.name.startswith(("hr-", "card-vs")) for c in rep.checks)


def test_report_dict():
    rep = verify([("unknot", front_of("unknot"), None)], [2, 3], [0, 1])
    data = rep.to_dict()
    assert len(data["cases"]) == 4
    assert data["summary"]["ok"] and data["summary"]["passed"] == data["summary"]["total"]


def test_pair_sampling_is_seeded():
    # m821 over F_3 has more ordered pairs than the budget
    assert 51 * 51 > PAIR_BUDGET
    a = verify_case("m821", 3, 0, front_of("m821"), seed=7)
    assert a.ok
