import itertools

import pytest
from hypothesis import given, settings, strategies as st

from dodgson import (
    DodgsonTriple,
    Election,
    PreferenceOrder,
    VoterProfile,
    all_scores,
    apply_raises,
    condorcet_winner,
    dodgson_winners,
    is_winner,
    ranks_at_least,
    score_decision,
    score_exact,
    score_oracle,
    two_election_ranking,
    unit_chain,
)

from conftest import election


def triple(e: Election, name: str) -> DodgsonTriple:
    return DodgsonTriple(e, name)


# --- fixed values -----------------------------------------------------------


def test_condorcet_winner_scores_zero(unanimous):
    result = score_exact(triple(unanimous, "c"))
    assert result.score == 0
    assert result.witness == (0, 0, 0)


@pytest.mark.parametrize("m", [1, 2, 5])
def test_unit_chain_scores(m):
    assert score_exact(unit_chain(m)).score == m


def test_cycle_scores_one_each(cycle):
    assert all_scores(cycle) == {"a": 1, "b": 1, "c": 1}


def test_unanimous_scores(unanimous):
    assert all_scores(unanimous) == {"a": 4, "b": 2, "c": 0}


def test_single_candidate_election():
    e = election("solo", "solo")
    assert all_scores(e) == {"solo": 0}
    assert dodgson_winners(e) == ["solo"]


# --- decisions ----------------------------------------------------------------


def test_decision_budgets(unanimous, cycle):
    assert score_decision(triple(unanimous, "c"), 0) is True
    assert score_decision(unit_chain(5), 4) is False
    assert score_decision(unit_chain(5), 5) is True
    assert score_decision(triple(cycle, "a"), 0) is False
    with pytest.raises(ValueError):
        score_decision(triple(cycle, "a"), -1)


@given(st.integers(1, 4), st.integers(0, 5))
def test_decision_monotone(m, budget):
    chain = unit_chain(m)
    if score_decision(chain, budget):
        assert score_decision(chain, budget + 1)


def test_decision_matches_exact_on_cycle(cycle):
    for name in "abc":
        t = triple(cycle, name)
        exact = score_exact(t).score
        for budget in range(exact + 2):
            assert score_decision(t, budget) == (exact <= budget)


# --- the breadth-first oracle ----------------------------------------------------


def test_oracle_fixed_points(cycle, unanimous):
    assert score_oracle(triple(unanimous, "c"), 5) == 0
    assert score_oracle(triple(cycle, "c"), 5) == 1
    assert score_oracle(unit_chain(2), 5) == 2


def test_oracle_cap_exhaustion():
    assert score_oracle(unit_chain(5), 2) is None


_ORDERS3 = [PreferenceOrder(p) for p in itertools.permutations(("a", "b", "c"))]


def test_oracle_equivalence_exhaustive_small():
    # every election with at most 3 candidates and at most 3 voters
    for size in (1, 2, 3):
        candidates = tuple("abc"[:size])
        orders = [PreferenceOrder(p) for p in itertools.permutations(candidates)]
        for voters in (1, 2, 3):
            for combo in itertools.combinations_with_replacement(orders, voters):
                e = Election(candidates, VoterProfile.from_orders(combo))
                for name in candidates:
                    t = triple(e, name)
                    assert score_exact(t).score == score_oracle(t, 20)


@given(st.lists(st.sampled_from(_ORDERS3), min_size=1, max_size=3))
@settings(max_examples=60, deadline=None)
def test_oracle_equivalence_random(orders):
    e = Election(("a", "b", "c"), VoterProfile.from_orders(orders))
    for name in "abc":
        t = triple(e, name)
        assert score_exact(t).score == score_oracle(t, 20)


# --- witnesses -------------------------------------------------------------------


@given(st.lists(st.sampled_from(_ORDERS3), min_size=1, max_size=4))
@settings(max_examples=60, deadline=None)
def test_witness_realizes_the_score(orders):
    e = Election(("a", "b", "c"), VoterProfile.from_orders(orders))
    for name in "abc":
        t = triple(e, name)
        result = score_exact(t)
        assert sum(result.witness) == result.score
        assert condorcet_winner(apply_raises(t, result.witness)) == name
        assert result.score <= e.n * (len(e.candidates) - 1)


def test_witness_is_deterministic(cycle):
    t = triple(cycle, "c")
    first, second = score_exact(t), score_exact(t)
    assert first == second
    # both (0,1,0) and (0,0,1) cost one switch; the lexicographically
    # smallest raises vector keeps the earlier voter at zero
    assert first.witness == (0, 0, 1)


def test_dp_and_branch_and_bound_agree():
    # state_cap=1 forces the branch-and-bound fallback; both paths must
    # produce the same score and the same lexicographically least witness
    from dodgson.verify import random_election, trial_rng

    for i in range(25):
        rng = trial_rng(99, "dp-vs-bnb", i)
        size = rng.randint(2, 4)
        e = random_election(rng, tuple("abcd"[:size]), rng.choice([1, 3, 5]))
        for name in e.candidates:
            t = triple(e, name)
            assert score_exact(t) == score_exact(t, state_cap=1)


def test_zero_law(cycle, unanimous):
    assert score_exact(triple(unanimous, "c")).score == 0
    for name in "abc":
        assert score_exact(triple(cycle, name)).score > 0


# --- winners and rankings -----------------------------------------------------------


def test_cycle_three_way_winner_tie(cycle):
    for name in "abc":
        assert is_winner(triple(cycle, name))


def test_unanimous_winner(unanimous):
    assert is_winner(triple(unanimous, "c"))
    assert not is_winner(triple(unanimous, "a"))


def test_ranks_at_least(cycle, unanimous):
    assert ranks_at_least(cycle, "a", "b")
    assert ranks_at_least(unanimous, "c", "a")
    assert not ranks_at_least(unanimous, "a", "c")
    assert ranks_at_least(unanimous, "c", "c")  # reflexive tie
    with pytest.raises(ValueError, match="unknown"):
        ranks_at_least(unanimous, "z", "a")


def test_two_election_ranking_chains():
    # chains designate "1" on both sides, so one side is renamed to keep the
    # designated candidates distinct as the instance definition requires
    t2 = unit_chain(2)
    t3 = DodgsonTriple(election("u1 u2 u3 u4", "u1<u2<u3<u4"), "u1")
    assert two_election_ranking(t2, t3)
    assert not two_election_ranking(t3, t2)


def test_two_election_ranking_tie_and_cycle(cycle):
    renamed = election("z y", "z<y")
    assert two_election_ranking(DodgsonTriple(renamed, "z"), unit_chain(1))
    assert two_election_ranking(triple(cycle, "c"), unit_chain(1))  # 1 <= 1


def test_two_election_ranking_validation(cycle):
    even = election("a b", "a<b", "b<a")
    with pytest.raises(ValueError, match="odd"):
        two_election_ranking(DodgsonTriple(even, "a"), unit_chain(1))
    with pytest.raises(ValueError, match="differ"):
        two_election_ranking(triple(cycle, "a"), triple(cycle, "a"))
