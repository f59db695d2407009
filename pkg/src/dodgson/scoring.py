"""Exact Dodgson scoring and the decision problems built on it.

Three independent routes to the same quantity:

* :func:`score_exact` — optimisation over raise allocations (the designated
  candidate only ever moves upward), exact and witness-producing.  The solver
  is a sparse dynamic program over the vector of residual positive deficits,
  with a branch-and-bound fallback when the realized state space exceeds a
  configurable cap.
* :func:`score_decision` — budget-limited search that never explores
  allocations costing more than the budget, so it stays usable on elections
  far too large to score outright.
* :func:`score_oracle` — breadth-first search over whole profiles using the
  literal one-adjacent-exchange-anywhere edge relation.  This is the ground
  truth the raise-only model is validated against, at small scale.

Everything here is pure and deterministic; witness ties are broken by the
lexicographically smallest per-voter raises vector under flat voter order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .elections import (
    DodgsonTriple,
    Election,
    PairwiseTally,
    VoterProfile,
    deficits_from_tally,
    majority_threshold,
    pairwise_tally,
)

__all__ = [
    "DEFAULT_STATE_CAP",
    "DEFAULT_ORACLE_CAP",
    "RaiseAllocation",
    "ScoreResult",
    "score_exact",
    "score_decision",
    "score_oracle",
    "all_scores",
    "dodgson_winners",
    "is_winner",
    "ranks_at_least",
    "two_election_ranking",
    "apply_raises",
]

DEFAULT_STATE_CAP = 10_000_000
DEFAULT_ORACLE_CAP = 20

# Per-voter upward switch counts, flat-indexed; cost is the sum.
RaiseAllocation = tuple[int, ...]


@dataclass(frozen=True)
class ScoreResult:
    score: int
    witness: RaiseAllocation


@dataclass(frozen=True)
class _Voter:
    """One voter's useful raise options.

    ``options`` is ascending by cost and always starts with ``(0, ())``.  An
    option ``(j, gains)`` raises the designated candidate by ``j`` positions
    and gains one vote over each listed deficit coordinate.  Raises whose top
    candidate carries no deficit are dominated by the next smaller useful
    raise, so they are omitted.
    """

    flat_index: int
    options: tuple[tuple[int, tuple[int, ...]], ...]


@dataclass(frozen=True)
class _CoverProblem:
    coords: tuple[str, ...]
    start: tuple[int, ...]
    voters: tuple[_Voter, ...]
    n: int


def _cover_problem(triple: DodgsonTriple, tally: PairwiseTally | None = None) -> _CoverProblem:
    election = triple.election
    if tally is None:
        tally = pairwise_tally(election)
    deficits = deficits_from_tally(tally, triple.designated)
    coords = tuple(sorted(d for d, v in deficits.items() if v > 0))
    coord_index = {name: i for i, name in enumerate(coords)}
    start = tuple(deficits[name] for name in coords)
    voters: list[_Voter] = []
    flat = 0
    for order, mult in election.profile.groups:
        pos = order.position(triple.designated)
        above = order.ranking[pos + 1:]
        options: list[tuple[int, tuple[int, ...]]] = [(0, ())]
        gains: list[int] = []
        for j, name in enumerate(above, start=1):
            idx = coord_index.get(name)
            if idx is not None:
                gains.append(idx)
                options.append((j, tuple(gains)))
        if len(options) > 1:
            frozen = tuple(options)
            voters.extend(_Voter(flat + copy, frozen) for copy in range(mult))
        flat += mult
    return _CoverProblem(coords, start, tuple(voters), election.n)


def _hit(state: tuple[int, ...], gains: tuple[int, ...]) -> tuple[int, ...]:
    if not gains:
        return state
    pending = list(state)
    for g in gains:
        if pending[g]:
            pending[g] -= 1
    return tuple(pending)


def _within_budget(problem: _CoverProblem, budget: int) -> _CoverProblem:
    """Drop raise options (and thereby voters) costing more than ``budget``.

    No allocation of total cost <= budget can use them, so optima, witnesses
    and decisions are unaffected; dropped voters are pinned to raise 0.
    """
    kept = []
    for voter in problem.voters:
        options = tuple(opt for opt in voter.options if opt[0] <= budget)
        if len(options) > 1:
            kept.append(voter if len(options) == len(voter.options) else _Voter(voter.flat_index, options))
    return _CoverProblem(problem.coords, problem.start, tuple(kept), problem.n)


def _greedy_cover(problem: _CoverProblem) -> tuple[int, dict[int, int]]:
    """A feasible allocation used as the initial upper bound.

    Picks the most cost-effective (voter, raise) repeatedly, falls back to
    maximal raises if stranded (always feasible: raising the candidate to the
    top of every voter makes it unanimously preferred), then shrinks choices
    voter by voter.  Returns (cost, {flat_index: raise}).
    """
    residual = list(problem.start)
    remaining = sum(residual)
    chosen: dict[int, tuple[int, tuple[int, ...]]] = {}
    available = set(range(len(problem.voters)))
    while remaining:
        best = None
        for vi in sorted(available):
            for cost, gains in problem.voters[vi].options[1:]:
                units = sum(1 for g in gains if residual[g] > 0)
                if units == 0:
                    continue
                key = (cost / units, cost, vi)
                if best is None or key < best[0]:
                    best = (key, vi, cost, gains)
        if best is None:
            chosen = {vi: problem.voters[vi].options[-1] for vi in range(len(problem.voters))}
            break
        _, vi, cost, gains = best
        chosen[vi] = (cost, gains)
        available.discard(vi)
        for g in gains:
            if residual[g] > 0:
                residual[g] -= 1
                remaining -= 1
    # Shrink pass: replace each choice by its smallest raise that keeps the
    # whole allocation covering.
    cover = [0] * len(problem.coords)
    for cost, gains in chosen.values():
        for g in gains:
            cover[g] += 1
    for vi in sorted(chosen, reverse=True):
        old_cost, old_gains = chosen[vi]
        for cost, gains in problem.voters[vi].options:
            if cost >= old_cost:
                break
            dropped = set(old_gains) - set(gains)
            if all(cover[g] - 1 >= problem.start[g] for g in dropped):
                for g in dropped:
                    cover[g] -= 1
                chosen[vi] = (cost, gains)
                break
    allocation = {
        problem.voters[vi].flat_index: cost for vi, (cost, _) in chosen.items() if cost
    }
    return sum(allocation.values()), allocation


def _solve_dp(
    problem: _CoverProblem, upper: int, state_cap: int
) -> tuple[int, dict[int, int]] | None:
    """Layered sparse DP over residual deficit vectors.

    Returns None when the realized state space exceeds ``state_cap``; the
    caller then falls back to branch and bound.  States on any allocation of
    total cost <= upper survive the admissible prune, so the optimum and a
    lexicographically smallest witness are always recoverable.
    """
    zero = (0,) * len(problem.coords)
    layers: list[dict[tuple[int, ...], int]] = [{problem.start: 0}]
    total_states = 1
    for voter in problem.voters:
        current = layers[-1]
        nxt: dict[tuple[int, ...], int] = {}
        for state, cost in current.items():
            for ocost, gains in voter.options:
                ncost = cost + ocost
                nstate = _hit(state, gains) if ocost else state
                if ncost + sum(nstate) > upper:
                    continue
                old = nxt.get(nstate)
                if old is None or ncost < old:
                    nxt[nstate] = ncost
        total_states += len(nxt)
        if total_states > state_cap:
            return None
        layers.append(nxt)
    optimum = layers[-1].get(zero)
    assert optimum is not None, "upper bound came from a feasible allocation"
    # Backward cost-to-go over the stored layers, then a forward walk taking
    # the smallest raise at each voter: the lexicographically least witness.
    cost_to_go: list[dict[tuple[int, ...], int]] = [dict() for _ in layers]
    cost_to_go[-1] = {zero: 0}
    for li in range(len(problem.voters) - 1, -1, -1):
        voter = problem.voters[li]
        later = cost_to_go[li + 1]
        here: dict[tuple[int, ...], int] = {}
        for state in layers[li]:
            best = None
            for ocost, gains in voter.options:
                rest = later.get(_hit(state, gains) if ocost else state)
                if rest is not None and (best is None or ocost + rest < best):
                    best = ocost + rest
            if best is not None:
                here[state] = best
        cost_to_go[li] = here
    allocation: dict[int, int] = {}
    state = problem.start
    for li, voter in enumerate(problem.voters):
        target = cost_to_go[li][state]
        for ocost, gains in voter.options:
            nstate = _hit(state, gains) if ocost else state
            rest = cost_to_go[li + 1].get(nstate)
            if rest is not None and ocost + rest == target:
                if ocost:
                    allocation[voter.flat_index] = ocost
                state = nstate
                break
    return optimum, allocation


def _solve_bnb(problem: _CoverProblem, upper: int) -> tuple[int, dict[int, int]]:
    """Depth-first branch and bound over voters in flat order.

    Admissible bound: any completion needs at least the residual deficit sum,
    because one switch gains at most one vote over one candidate.  Options are
    explored ascending by cost, so the first solution recorded at the final
    optimum is the lexicographically smallest witness.
    """
    voters = problem.voters
    best_cost = upper
    best_alloc: dict[int, int] | None = None

    def descend(i: int, state: tuple[int, ...], rsum: int, cost: int, trail: list[tuple[int, int]]):
        nonlocal best_cost, best_alloc
        if rsum == 0:
            if cost < best_cost or best_alloc is None:
                best_cost = cost
                best_alloc = dict(trail)
            return
        if i == len(voters) or cost + rsum > best_cost:
            return
        voter = voters[i]
        for ocost, gains in voter.options:
            if cost + ocost + max(rsum - len(gains), 0) > best_cost:
                break
            nstate = _hit(state, gains) if ocost else state
            nrsum = sum(nstate)
            if ocost and nrsum == rsum:
                continue  # pure waste can never be optimal
            if ocost:
                trail.append((voter.flat_index, ocost))
            descend(i + 1, nstate, nrsum, cost + ocost, trail)
            if ocost:
                trail.pop()

    descend(0, problem.start, sum(problem.start), 0, [])
    assert best_alloc is not None
    return best_cost, best_alloc


def _score_exact(
    triple: DodgsonTriple, tally: PairwiseTally | None, state_cap: int
) -> ScoreResult:
    problem = _cover_problem(triple, tally)
    n = triple.election.n
    if not problem.coords:
        return ScoreResult(0, (0,) * n)
    upper, _ = _greedy_cover(problem)
    problem = _within_budget(problem, upper)
    solved = _solve_dp(problem, upper, state_cap)
    if solved is None:
        solved = _solve_bnb(problem, upper)
    score, allocation = solved
    return ScoreResult(score, tuple(allocation.get(i, 0) for i in range(n)))


def score_exact(triple: DodgsonTriple, *, state_cap: int = DEFAULT_STATE_CAP) -> ScoreResult:
    """Exact Dodgson score with a witness allocation achieving it."""
    return _score_exact(triple, None, state_cap)


def _score_at_most(
    triple: DodgsonTriple,
    budget: int,
    tally: PairwiseTally | None = None,
    memo_cap: int = DEFAULT_STATE_CAP,
) -> bool:
    """Budget-limited search; never explores allocations costing more than
    ``budget``.  Negative budgets are trivially false."""
    if budget < 0:
        return False
    problem = _cover_problem(triple, tally)
    if not problem.coords:
        return True
    if sum(problem.start) > budget:
        return False
    problem = _within_budget(problem, budget)
    voters = problem.voters
    failed: dict[tuple[int, tuple[int, ...]], int] = {}

    def covers(i: int, state: tuple[int, ...], rsum: int, left: int) -> bool:
        if rsum == 0:
            return True
        if i == len(voters) or rsum > left:
            return False
        key = (i, state)
        prior = failed.get(key)
        if prior is not None and left <= prior:
            return False
        for ocost, gains in voters[i].options:
            if ocost > left:
                break
            nstate = _hit(state, gains) if ocost else state
            nrsum = sum(nstate)
            if ocost and nrsum == rsum:
                continue
            if covers(i + 1, nstate, nrsum, left - ocost):
                return True
        if len(failed) < memo_cap:
            failed[key] = max(prior if prior is not None else -1, left)
        return False

    return covers(0, problem.start, sum(problem.start), budget)


def score_decision(
    triple: DodgsonTriple, budget: int, *, state_cap: int = DEFAULT_STATE_CAP
) -> bool:
    """Is the Dodgson score at most ``budget``?"""
    if budget < 0:
        raise ValueError(f"budget must be non-negative, got {budget}")
    return _score_at_most(triple, budget, memo_cap=state_cap)


def score_oracle(triple: DodgsonTriple, cap: int = DEFAULT_ORACLE_CAP) -> int | None:
    """Breadth-first search over whole profiles, one adjacent exchange anywhere
    per edge — the literal sequential-switch semantics.

    Profiles are canonicalized as sorted order multisets (switch cost is
    voter-anonymous).  Returns the first depth at which the designated
    candidate is a Condorcet winner, or None once ``cap`` is exceeded.
    Intended for desk scale (roughly <= 4 candidates, <= 5 voters).
    """
    if cap < 0:
        raise ValueError(f"cap must be non-negative, got {cap}")
    election = triple.election
    index = {name: i for i, name in enumerate(election.candidates)}
    c = index[triple.designated]
    size = len(election.candidates)
    need = majority_threshold(election.n)
    others = [i for i in range(size) if i != c]

    def wins(state: tuple[tuple[int, ...], ...]) -> bool:
        positions = [{cand: pos for pos, cand in enumerate(order)} for order in state]
        for d in others:
            if sum(1 for pos in positions if pos[c] > pos[d]) < need:
                return False
        return True

    start = tuple(sorted(tuple(index[x] for x in order.ranking) for order in election.profile.orders()))
    if wins(start):
        return 0
    visited = {start}
    frontier = [start]
    depth = 0
    while frontier and depth < cap:
        depth += 1
        nxt = []
        for state in frontier:
            entries = list(state)
            for vi, order in enumerate(entries):
                if vi and order == entries[vi - 1]:
                    continue  # duplicate voter: identical successor states
                for p in range(size - 1):
                    swapped = order[:p] + (order[p + 1], order[p]) + order[p + 2:]
                    successor = tuple(sorted(entries[:vi] + [swapped] + entries[vi + 1:]))
                    if successor in visited:
                        continue
                    visited.add(successor)
                    if wins(successor):
                        return depth
                    nxt.append(successor)
        frontier = nxt
    return None


def all_scores(election: Election, *, state_cap: int = DEFAULT_STATE_CAP) -> dict[str, int]:
    """Exact Dodgson score of every candidate; winners are the argmin set."""
    tally = pairwise_tally(election)
    return {
        name: _score_exact(DodgsonTriple(election, name), tally, state_cap).score
        for name in election.candidates
    }


def dodgson_winners(election: Election, *, state_cap: int = DEFAULT_STATE_CAP) -> list[str]:
    scores = all_scores(election, state_cap=state_cap)
    low = min(scores.values())
    return [name for name in election.candidates if scores[name] == low]


def is_winner(triple: DodgsonTriple, *, state_cap: int = DEFAULT_STATE_CAP) -> bool:
    """Does the designated candidate tie-or-defeat every other candidate?

    Opponents are checked with budget-limited decisions rather than full
    scoring, which keeps this usable on large gadget-built elections.
    """
    tally = pairwise_tally(triple.election)
    own = _score_exact(triple, tally, state_cap).score
    for other in triple.election.candidates:
        if other == triple.designated:
            continue
        rival = DodgsonTriple(triple.election, other)
        if _score_at_most(rival, own - 1, tally, memo_cap=state_cap):
            return False  # the rival scores strictly below the designated
    return True


def ranks_at_least(
    election: Election, c: str, d: str, *, state_cap: int = DEFAULT_STATE_CAP
) -> bool:
    """Does ``c`` tie-or-defeat ``d``, i.e. is Score(c) <= Score(d)?"""
    for name in (c, d):
        if name not in election.candidates:
            raise ValueError(f"unknown candidate {name!r}")
    if c == d:
        return True
    tally = pairwise_tally(election)
    own = _score_exact(DodgsonTriple(election, c), tally, state_cap).score
    return not _score_at_most(DodgsonTriple(election, d), own - 1, tally, memo_cap=state_cap)


def two_election_ranking(
    left: DodgsonTriple, right: DodgsonTriple, *, state_cap: int = DEFAULT_STATE_CAP
) -> bool:
    """Is Score(left) <= Score(right)?

    Both elections must have an odd number of voters and the designated
    candidates must differ; anything else is not a valid instance.
    """
    for triple, side in ((left, "left"), (right, "right")):
        if triple.election.n % 2 == 0:
            raise ValueError(f"{side} election must have an odd number of voters")
    if left.designated == right.designated:
        raise ValueError("designated candidates must differ")
    own = score_exact(left, state_cap=state_cap).score
    return not _score_at_most(right, own - 1, memo_cap=state_cap)


def apply_raises(triple: DodgsonTriple, raises: Sequence[int]) -> Election:
    """Apply a per-voter raise allocation to the designated candidate.

    Used to check witnesses: applying a ScoreResult witness must produce an
    election whose Condorcet winner is the designated candidate.
    """
    election = triple.election
    if len(raises) != election.n:
        raise ValueError(f"expected {election.n} raise entries, got {len(raises)}")
    new_orders = [
        order.raised(triple.designated, int(step)) if step else order
        for order, step in zip(election.profile.orders(), raises)
    ]
    return Election(election.candidates, VoterProfile.from_orders(new_orders))
