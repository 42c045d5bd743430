import pytest

from prelie.suites import run_suite, suite_names, hard_limit
from prelie.trees import DomainError


FAST_ARGS = {
    "counts": 5,
    "prelie-identity": 3,
    "jacobi": 3,
    "triangularity": 4,
    "change-of-basis": 4,
    "filtration": 3,
    "f-closure": 3,
    "bracket-filtration": 3,
    "lie-degree": 3,
    "sn-action": 3,
    "golden-examples": 3,
}


def test_every_suite_is_named_and_passes_small():
    assert set(FAST_ARGS) == set(suite_names())
    for name, max_n in FAST_ARGS.items():
        report = run_suite(name, max_n, seed=2)
        assert report.ok, report.render()
        assert report.instances > 0
        assert report.suite == name
        assert report.seconds >= 0


def test_reports_are_deterministic():
    first = run_suite("prelie-identity", 3, seed=5)
    second = run_suite("prelie-identity", 3, seed=5)
    assert first.instances == second.instances
    assert first.failures == second.failures
    assert first.as_json()["suite"] == "prelie-identity"


def test_unknown_suite_and_limits():
    with pytest.raises(DomainError, match="unknown suite"):
        run_suite("nope", 3, 0)
    with pytest.raises(DomainError, match="limited"):
        run_suite("filtration", hard_limit("filtration") + 1, 0)
    with pytest.raises(DomainError, match="at least 1"):
        run_suite("counts", 0, 0)
    with pytest.raises(DomainError, match="unknown suite"):
        hard_limit("nope")


def test_report_shapes():
    report = run_suite("golden-examples", 3, 0)
    data = report.as_json()
    assert data["suite"] == "golden-examples"
    assert data["failures"] == []
    assert data["instances"] == report.instances
    text = report.render()
    assert text.startswith("golden-examples")
    assert "ok" in text
