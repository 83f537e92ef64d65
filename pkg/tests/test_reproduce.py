import pytest

from terqf.reproduce import UnknownTarget, cmd_reproduce, expected_data, list_targets, resolve


def test_aliases_resolve_to_targets():
    names = set(list_targets())
    for alias, target in expected_data()["aliases"].items():
        assert resolve(alias) == target
        assert target in names


def test_unknown_target():
    with pytest.raises(UnknownTarget):
        cmd_reproduce("table9")


@pytest.mark.parametrize("target", ["table2", "table3", "automorphs", "prelist-7,15,23,10,2,6",
                                    "identities-disc-32", "theorem-3.9"])
def test_quick_targets_pass(target):
    rep = cmd_reproduce(target)
    assert rep.passed, rep.diff()
    assert rep.runtime >= 0


def test_report_diff_on_mismatch():
    from terqf.reproduce import ReproductionReport
    rep = ReproductionReport("x", {"a": [1, 2], "b": 1}, {"a": [1], "b": 1}, "fail", 0.0)
    assert rep.diff() == {"a": {"expected": [1, 2], "computed": [1]}}
    assert "runtime_s" not in rep.to_dict(runtime=False)


def test_prelist_report_lists_all_flagged_values():
    rep = cmd_reproduce("prelist-1,1,1,0,0,0")
    assert rep.passed
    assert any("[45, 49, 75, 99, 147]" in note for note in rep.notes)


@pytest.mark.slow
@pytest.mark.parametrize("target", sorted(set(list_targets()) - set(expected_data()["aliases"])))
def test_every_target_passes(target):
    rep = cmd_reproduce(target)
    assert rep.passed, rep.diff()
