"""The built-in verification battery: the default run passes end to end."""

from conevol.verify import ALL_SUITES, run_suites


def test_default_battery_all_pass():
    results = run_suites()
    assert len(results) == 6
    for r in results:
        assert r.passed, f"{r.name}: {r.detail}"


def test_suite_filter():
    results = run_suites(names=["pell-identity"])
    assert [r.name for r in results] == ["pell-identity"]
    assert results[0].passed


def test_suite_registry_names():
    assert set(ALL_SUITES) == {
        "pell-identity",
        "lemma-cd",
        "representation-oracle",
        "w12-closed-form",
        "schlafli-consistency",
        "symmetry",
    }
