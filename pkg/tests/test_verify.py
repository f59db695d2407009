import pytest

from dodgson.verify import (
    RunConfig,
    SUITE_NAMES,
    merge_corpus,
    random_election,
    random_triple,
    run_suite,
    trial_rng,
)


@pytest.mark.parametrize("suite", SUITE_NAMES)
def test_every_suite_passes_at_smoke_scale(suite):
    results = run_suite(suite, RunConfig(seed=3, trials=4))
    assert results
    for check in results:
        assert check.passed, f"{suite}/{check.name}: {check.detail}"
        assert check.checked > 0


def test_unknown_suite():
    with pytest.raises(ValueError, match="unknown suite"):
        run_suite("5", RunConfig())


def test_trial_rngs_are_reproducible():
    a = trial_rng(9, "x", 2).random()
    b = trial_rng(9, "x", 2).random()
    c = trial_rng(9, "x", 3).random()
    assert a == b != c


def test_random_generators_are_deterministic():
    e1 = random_election(trial_rng(1, "e", 0), ("a", "b", "c"), 5)
    e2 = random_election(trial_rng(1, "e", 0), ("a", "b", "c"), 5)
    assert e1 == e2
    t1 = random_triple(trial_rng(1, "t", 0), ("a", "b", "c"), 3)
    t2 = random_triple(trial_rng(1, "t", 0), ("a", "b", "c"), 3)
    assert t1 == t2


def test_merge_corpus_respects_contract():
    for t1, t2 in merge_corpus(RunConfig(seed=5, trials=10)):
        assert t1.election.n % 2 == 1
        assert t2.election.n % 2 == 1
        assert t1.designated != t2.designated
        assert not set(t1.election.candidates) & set(t2.election.candidates)


def test_failing_property_reports_a_counterexample(monkeypatch):
    # force a wrong expectation to exercise the counterexample machinery
    import dodgson.verify as verify_module

    def broken_gap(instance, state_cap):
        return False, "forced failure"

    monkeypatch.setattr(verify_module, "_check_gap", broken_gap)
    results = run_suite("3", RunConfig(seed=1, trials=1))
    gap = next(c for c in results if c.name == "score-gap-exhaustive-q2")
    assert not gap.passed
    assert gap.fixtures
    assert any(name.endswith(".3dm") for name in gap.fixtures)
