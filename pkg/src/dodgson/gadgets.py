"""Election-gadget constructions: the matching reduction, score summation,
unit chains, the parity combiner, and the two election merges.

Every construction is a total, deterministic, polynomial-time transformation
on the data model.  Where source material leaves candidate order "arbitrary",
tails are fixed to canonical sorted order so outputs are byte-reproducible.
Renaming for disjointness uses block prefixes (``b1_``, ``b2_``, ...) with
fixed designated names ``c``/``d`` and separator families ``s*``/``t*``; the
origin of every renamed candidate is recorded in the construction info dict
that each ``build_*`` function returns alongside its result.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .elections import DodgsonTriple, Election, PreferenceOrder, VoterProfile
from .matching import CANONICAL_NO, CANONICAL_YES, MatchingInstance, has_matching

__all__ = [
    "ReducedInstance",
    "TwoERInstance",
    "RankingInstance",
    "Sentinel",
    "SENTINEL",
    "normalize_matching",
    "matching_to_dodgson",
    "reduce_3dm",
    "unit_chain",
    "dodgson_sum",
    "parity_combine",
    "merge",
    "merge_prime",
    "reduce_2er_to_ranking",
    "reduce_2er_to_winner",
    "build_reduction",
    "build_sum",
    "build_merge",
    "build_parity_combiner",
]


@dataclass(frozen=True)
class ReducedInstance:
    """A score-decision instance: triple plus the threshold its score is
    compared against.  Reduction outputs always have an odd voter count."""

    triple: DodgsonTriple
    threshold: int

    def __post_init__(self):
        if self.triple.election.n % 2 == 0:
            raise ValueError("reduced instances must have an odd number of voters")
        if self.threshold < 0:
            raise ValueError("threshold must be non-negative")


@dataclass(frozen=True)
class TwoERInstance:
    """A pair of odd-voter triples with distinct designated candidates; the
    question is whether the left score is at most the right score."""

    left: DodgsonTriple
    right: DodgsonTriple

    def __post_init__(self):
        for triple, side in ((self.left, "left"), (self.right, "right")):
            if triple.election.n % 2 == 0:
                raise ValueError(f"{side} election must have an odd number of voters")
        if self.left.designated == self.right.designated:
            raise ValueError("designated candidates must differ")


@dataclass(frozen=True)
class RankingInstance:
    """A ranking query: does ``first`` tie-or-defeat ``second``?"""

    election: Election
    first: str
    second: str

    def __post_init__(self):
        for name in (self.first, self.second):
            if name not in self.election.candidates:
                raise ValueError(f"candidate {name!r} is not in the election")
        if self.first == self.second:
            raise ValueError("ranking queries need two distinct candidates")


@dataclass(frozen=True)
class Sentinel:
    """Reserved value that totalizing reductions map malformed inputs to.

    It is a distinct type, never a valid instance of any decision problem
    here, so membership checks reject it structurally.
    """

    tag: str = "rejected-input"


SENTINEL = Sentinel()


def _require_odd(triple: DodgsonTriple, what: str) -> None:
    if triple.election.n % 2 == 0:
        raise ValueError(f"{what} must have an odd number of voters, got {triple.election.n}")


def _fresh(base: str, used: set[str]) -> str:
    if base not in used:
        return base
    i = 0
    while f"{base}{i}" in used:
        i += 1
    return f"{base}{i}"


class _GroupWriter:
    """Accumulates voter groups while tracking flat-index boundaries."""

    def __init__(self):
        self.groups: list[tuple[PreferenceOrder, int]] = []
        self.boundaries: list[dict] = []
        self._flat = 0

    def emit(self, names: Sequence[str], mult: int, label: str) -> None:
        if mult <= 0:
            return
        self.groups.append((PreferenceOrder(tuple(names)), mult))
        self.boundaries.append({"label": label, "start": self._flat, "end": self._flat + mult})
        self._flat += mult

    def profile(self) -> VoterProfile:
        return VoterProfile(tuple(self.groups))


# --- matching reduction -----------------------------------------------------


def normalize_matching(value: object) -> MatchingInstance:
    """Totalize arbitrary input into an instance with more than one triple.

    Valid instances with more than one triple pass through unchanged; small
    valid instances collapse to the canonical yes/no instance matching their
    answer; anything else becomes the canonical no-instance.  Membership is
    preserved in every branch.
    """
    if isinstance(value, MatchingInstance):
        if len(value.triples) > 1:
            return value
        return CANONICAL_YES if has_matching(value) else CANONICAL_NO
    return CANONICAL_NO


def _matching_gadget(instance: MatchingInstance) -> tuple[ReducedInstance, dict]:
    tokens = instance.tokens()
    used = set(tokens)
    c = _fresh("c", used)
    used.add(c)
    s = _fresh("s", used)
    used.add(s)
    t = _fresh("t", used)
    token_order = sorted(tokens)
    writer = _GroupWriter()
    for i, (w, x, y) in enumerate(instance.triples, start=1):
        rest = sorted(set(tokens) - {w, x, y})
        if i % 2 == 1:
            writer.emit([s, c, w, x, y, t] + rest, 1, f"triple-{i}")
        else:
            writer.emit([t, c, w, x, y, s] + rest, 1, f"triple-{i}")
    # one voter fewer than there are triples, all ranking c on top
    writer.emit(sorted(token_order + [s, t]) + [c], len(instance.triples) - 1, "c-top")
    election = Election((c, s, t) + tuple(token_order), writer.profile())
    threshold = 3 * instance.q
    reduced = ReducedInstance(DodgsonTriple(election, c), threshold)
    info = {
        "kind": "3dm",
        "designated": c,
        "specials": {"c": c, "s": s, "t": t},
        "threshold": threshold,
        "q": instance.q,
        "triple_count": len(instance.triples),
        "voter_groups": writer.boundaries,
    }
    return reduced, info


def matching_to_dodgson(instance: MatchingInstance) -> ReducedInstance:
    """The core reduction; requires a valid instance with more than one triple.

    Score of the output equals the threshold (3q) exactly when the instance
    has a matching, and threshold + 1 otherwise.
    """
    if not isinstance(instance, MatchingInstance) or len(instance.triples) <= 1:
        raise ValueError("reduction core needs a matching instance with more than one triple")
    return _matching_gadget(instance)[0]


def build_reduction(value: object) -> tuple[ReducedInstance, dict]:
    instance = normalize_matching(value)
    reduced, info = _matching_gadget(instance)
    info["normalized"] = not (isinstance(value, MatchingInstance) and value == instance)
    return reduced, info


def reduce_3dm(value: object) -> ReducedInstance:
    """Totalized reduction: normalize, then build the score gadget."""
    return build_reduction(value)[0]


# --- unit chains and score summation ----------------------------------------


def unit_chain(m: int) -> DodgsonTriple:
    """Single-voter election whose designated candidate scores exactly ``m``:
    candidates 1..m+1 ranked ascending with the designated candidate last."""
    if m < 1:
        raise ValueError(f"chain length must be positive, got {m}")
    names = tuple(str(i) for i in range(1, m + 2))
    election = Election(names, VoterProfile(((PreferenceOrder(names), 1),)))
    return DodgsonTriple(election, "1")


def _renamed_blocks(triples: Sequence[DodgsonTriple]) -> tuple[list[dict[str, str]], list[list[str]], dict[str, str]]:
    """Per-block rename maps (original -> fresh), block lists in canonical
    order, and the combined origin map (fresh -> "block:original")."""
    maps: list[dict[str, str]] = []
    lists: list[list[str]] = []
    origins: dict[str, str] = {}
    for i, triple in enumerate(triples, start=1):
        others = sorted(n for n in triple.election.candidates if n != triple.designated)
        rename = {orig: f"b{i}_{orig}" for orig in others}
        maps.append(rename)
        lists.append([rename[o] for o in others])
        for orig, fresh in rename.items():
            origins[fresh] = f"{i}:{orig}"
    return maps, lists, origins


def build_sum(triples: Sequence[DodgsonTriple]) -> tuple[DodgsonTriple, dict]:
    """Combine odd-voter elections into one whose designated candidate's score
    is exactly the sum of the input scores.

    The designated candidates are unified as a single fresh candidate ``c``,
    the remaining candidate sets are made disjoint by block renaming, and a
    family of separator candidates plus normalizing voters isolates each
    block: c's standing against a block's candidates depends only on the
    voters simulating that block.
    """
    if not triples:
        raise ValueError("need at least one election to sum")
    for triple in triples:
        _require_odd(triple, "every summed election")
    maps, lists, origins = _renamed_blocks(triples)
    sizes = [t.election.n for t in triples]
    total_n = sum(sizes)
    s_count = sum(len(t.election.candidates) * t.election.n for t in triples)
    s_list = [f"s{j}" for j in range(1, s_count + 1)]
    writer = _GroupWriter()
    for i, triple in enumerate(triples, start=1):
        rename = dict(maps[i - 1])
        rename[triple.designated] = "c"
        prefix = s_list + [name for j, block in enumerate(lists, start=1) if j != i for name in block]
        for order, mult in triple.election.profile.groups:
            writer.emit(prefix + [rename[x] for x in order.ranking], mult, f"simulates-{i}")
    # Normalizing voters: block i sits above the separators for exactly
    # floor(n_i/2) + sum_{j != i} n_j of them and below c for the rest, which
    # pins c's standing against block i outside block i's own simulators.
    thresholds = [sizes[i] // 2 + (total_n - sizes[i]) for i in range(len(triples))]
    previous: list[str] | None = None
    run = 0
    for q in range(1, total_n):
        left = [name for i in range(len(triples)) if q > thresholds[i] for name in lists[i]]
        right = [name for i in range(len(triples)) if q <= thresholds[i] for name in lists[i]]
        order = left + ["c"] + s_list + right
        if order == previous:
            run += 1
            continue
        if previous is not None:
            writer.emit(previous, run, "normalizer")
        previous, run = order, 1
    if previous is not None:
        writer.emit(previous, run, "normalizer")
    candidates = ["c"] + [name for block in lists for name in block] + s_list
    election = Election(tuple(candidates), writer.profile())
    info = {
        "kind": "sum",
        "designated": "c",
        "separators": {"s": s_count},
        "designated_origins": {str(i): t.designated for i, t in enumerate(triples, start=1)},
        "rename_map": origins,
        "voter_groups": writer.boundaries,
        "blocks": len(triples),
    }
    return DodgsonTriple(election, "c"), info


def dodgson_sum(triples: Sequence[DodgsonTriple]) -> DodgsonTriple:
    """Score-additive combination of odd-voter elections."""
    return build_sum(triples)[0]


# --- parity combiner ---------------------------------------------------------


def _rename_designated(triple: DodgsonTriple, new_name: str) -> DodgsonTriple:
    old = triple.designated
    if new_name in triple.election.candidates:
        raise ValueError(f"{new_name!r} already occurs in the election")

    def rename(name: str) -> str:
        return new_name if name == old else name

    groups = tuple(
        (PreferenceOrder(tuple(rename(x) for x in order.ranking)), mult)
        for order, mult in triple.election.profile.groups
    )
    candidates = tuple(rename(name) for name in triple.election.candidates)
    return DodgsonTriple(Election(candidates, VoterProfile(groups)), new_name)


def build_parity_combiner(inputs: Sequence[object]) -> tuple[TwoERInstance, dict]:
    """Map an even-length input list to a score-comparison instance.

    Each input runs through the totalized matching reduction; odd-indexed
    outputs (1-based) are summed on the left, even-indexed on the right, and
    unit chains offset the thresholds so that, whenever the inputs are sorted
    with members first, the left score is at most the right score exactly
    when the number of members is odd.
    """
    if not inputs or len(inputs) % 2:
        raise ValueError(f"need a non-empty even-length input list, got {len(inputs)}")
    reduced = [build_reduction(value)[0] for value in inputs]
    thresholds = [r.threshold for r in reduced]
    left_chain = unit_chain(1 + sum(thresholds[1::2]))
    right_chain = unit_chain(sum(thresholds[0::2]))
    left, left_info = build_sum([r.triple for r in reduced[0::2]] + [left_chain])
    right, right_info = build_sum([r.triple for r in reduced[1::2]] + [right_chain])
    right = _rename_designated(right, "d")
    instance = TwoERInstance(left, right)
    info = {
        "kind": "wagner-g",
        "thresholds": thresholds,
        "left_chain": 1 + sum(thresholds[1::2]),
        "right_chain": sum(thresholds[0::2]),
        "left": left_info,
        "right": right_info,
    }
    return instance, info


def parity_combine(inputs: Sequence[object]) -> TwoERInstance:
    return build_parity_combiner(inputs)[0]


# --- merges ------------------------------------------------------------------


def build_merge(t1: DodgsonTriple, t2: DodgsonTriple) -> tuple[RankingInstance, dict]:
    """Merge two odd-voter elections into one even-voter election in which
    each input's designated candidate scores exactly one more than it did in
    its own election, and every other candidate scores strictly above both.

    The construction assumes the first block has at least as many voters;
    when it does not, the inputs are swapped internally and the output roles
    track the swap, so the returned ``first``/``second`` always correspond to
    ``t1``/``t2``.
    """
    _require_odd(t1, "the first election")
    _require_odd(t2, "the second election")
    if t1.designated == t2.designated:
        raise ValueError("designated candidates must differ")
    maps, lists, origins = _renamed_blocks([t1, t2])
    rename1 = dict(maps[0])
    rename1[t1.designated] = "c"
    rename2 = dict(maps[1])
    rename2[t2.designated] = "d"
    swapped = t1.election.n < t2.election.n
    if swapped:
        big, small = t2, t1
        big_name, small_name = "d", "c"
        big_rename, small_rename = rename2, rename1
        big_list, small_list = lists[1], lists[0]
    else:
        big, small = t1, t2
        big_name, small_name = "c", "d"
        big_rename, small_rename = rename1, rename2
        big_list, small_list = lists[0], lists[1]
    v_count, w_count = big.election.n, small.election.n
    s_count = 2 * (
        len(big.election.candidates) * v_count + len(small.election.candidates) * w_count
    )
    s_list = [f"s{j}" for j in range(1, s_count + 1)]
    t_list = [f"t{j}" for j in range(1, s_count + 1)]
    writer = _GroupWriter()
    for order, mult in big.election.profile.groups:
        writer.emit(
            [small_name] + s_list + small_list + t_list + [big_rename[x] for x in order.ranking],
            mult,
            "simulates-first" if not swapped else "simulates-second",
        )
    for order, mult in small.election.profile.groups:
        writer.emit(
            t_list + [big_name] + s_list + big_list + [small_rename[x] for x in order.ranking],
            mult,
            "simulates-second" if not swapped else "simulates-first",
        )
    half_v = (v_count + 1) // 2
    half_w = (w_count + 1) // 2
    writer.emit(
        t_list + [big_name] + s_list + big_list + small_list + [small_name],
        half_v - half_w,
        "normalizer-top",
    )
    writer.emit(
        t_list + big_list + small_list + list(reversed(s_list)) + [big_name, small_name],
        half_v,
        "normalizer-big",
    )
    writer.emit(
        t_list + big_list + small_list + s_list + [small_name, big_name],
        half_w,
        "normalizer-small",
    )
    candidates = ["c"] + lists[0] + ["d"] + lists[1] + s_list + t_list
    election = Election(tuple(candidates), writer.profile())
    instance = RankingInstance(election, "c", "d")
    info = {
        "kind": "merge",
        "first": "c",
        "second": "d",
        "designated_origins": {"first": t1.designated, "second": t2.designated},
        "separators": {"s": s_count, "t": s_count},
        "swapped": swapped,
        "rename_map": origins,
        "voter_groups": writer.boundaries,
    }
    return instance, info


def merge(t1: DodgsonTriple, t2: DodgsonTriple) -> RankingInstance:
    """Merged election with both designated candidates distinguished."""
    return build_merge(t1, t2)[0]


def merge_prime(t1: DodgsonTriple, t2: DodgsonTriple) -> DodgsonTriple:
    """Same construction as :func:`merge`, designating only the first input's
    candidate — a winner-question instance."""
    instance = merge(t1, t2)
    return DodgsonTriple(instance.election, instance.first)


# --- totalized reductions to ranking / winner --------------------------------


def _coerce_2er(value: object) -> TwoERInstance | None:
    if isinstance(value, TwoERInstance):
        return value
    if isinstance(value, (tuple, list)) and len(value) == 2:
        left, right = value
        if isinstance(left, DodgsonTriple) and isinstance(right, DodgsonTriple):
            try:
                return TwoERInstance(left, right)
            except ValueError:
                return None
    return None


def reduce_2er_to_ranking(value: object) -> RankingInstance | Sentinel:
    """Total map into ranking instances; malformed inputs hit the sentinel."""
    instance = _coerce_2er(value)
    if instance is None:
        return SENTINEL
    return merge(instance.left, instance.right)


def reduce_2er_to_winner(value: object) -> DodgsonTriple | Sentinel:
    """Total map into winner instances; malformed inputs hit the sentinel."""
    instance = _coerce_2er(value)
    if instance is None:
        return SENTINEL
    return merge_prime(instance.left, instance.right)
