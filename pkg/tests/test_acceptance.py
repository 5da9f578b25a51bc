"""The ten acceptance criteria, one test each, plus negative controls."""
import pytest

from recoverrep.acceptance import CRITERIA, run_acceptance, select


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"{c.number:02d}-{c.key}" for c in CRITERIA])
def test_criterion(criterion):
    result = criterion.run()
    print(result.line())
    assert result.passed, result.details


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"{c.number:02d}-{c.key}" for c in CRITERIA])
def test_negative_control(criterion):
    result = criterion.run(corrupt=True)
    assert not result.passed
    assert "error" not in result.details, result.details


def test_filter_by_module():
    assert [c.number for c in select(["weights"])] == [1, 4]
    assert [c.number for c in select(["lattice"])] == [9]
    assert [c.number for c in select(["5", "density"])] == [5, 6, 7, 8]
    assert len(select(None)) == 10


def test_corrupt_lattice_names_the_failure():
    results = run_acceptance(["lattice"], corrupt=["lattice"])
    assert len(results) == 1 and results[0].key == "lattice-suite" and not results[0].passed
    assert results[0].details["failures"]["saturation"] == 1
