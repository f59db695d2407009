"""Core election model: strict preference orders, voter multisets, pairwise
tallies, Condorcet tests, and adjacent-switch semantics.

A preference order is stored ascending: index 0 holds the least preferred
candidate and the last entry the favourite, so ``a<b<c`` means c is liked
best.  One "switch" exchanges two adjacent entries in a single voter's order
and is the unit of cost everywhere in this package.

All values are immutable; every operation returns new values and may be
shared freely across threads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

__all__ = [
    "ParseError",
    "PreferenceOrder",
    "VoterProfile",
    "Election",
    "DodgsonTriple",
    "PairwiseTally",
    "check_name",
    "majority_threshold",
    "pairwise_tally",
    "condorcet_winner",
    "apply_switch",
    "deficit_vector",
    "deficits_from_tally",
    "parse_election",
    "serialize_election",
]

_FORBIDDEN_CHARS = frozenset("<#:")


class ParseError(ValueError):
    """Malformed textual input, carrying the offending 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def check_name(name: str) -> str:
    """Validate a candidate (or 3DM token) name and return it unchanged."""
    if not name:
        raise ValueError("candidate name must be non-empty")
    if any(ch in _FORBIDDEN_CHARS or ch.isspace() for ch in name):
        raise ValueError(
            f"invalid candidate name {name!r}: whitespace, '<', '#' and ':' are not allowed"
        )
    return name


def majority_threshold(n: int) -> int:
    """Smallest vote count that is strictly more than half of ``n`` voters."""
    return n // 2 + 1


@dataclass(frozen=True)
class PreferenceOrder:
    """Strict, complete preference order, ascending (last entry = favourite)."""

    ranking: tuple[str, ...]

    def __post_init__(self):
        if not self.ranking:
            raise ValueError("empty preference order")
        if len(set(self.ranking)) != len(self.ranking):
            raise ValueError(f"duplicate candidate in order {'<'.join(self.ranking)!r}")

    @classmethod
    def from_string(cls, text: str) -> "PreferenceOrder":
        return cls(tuple(part.strip() for part in text.split("<")))

    def __str__(self) -> str:
        return "<".join(self.ranking)

    def position(self, name: str) -> int:
        return self.ranking.index(name)

    def prefers(self, a: str, b: str) -> bool:
        """True when ``a`` is strictly preferred to ``b``."""
        return self.position(a) > self.position(b)

    def switched(self, position: int) -> "PreferenceOrder":
        """Exchange the entries at ``position`` and ``position + 1``."""
        if not 0 <= position < len(self.ranking) - 1:
            raise IndexError(
                f"switch position {position} out of range for {len(self.ranking)} candidates"
            )
        entries = list(self.ranking)
        entries[position], entries[position + 1] = entries[position + 1], entries[position]
        return PreferenceOrder(tuple(entries))

    def raised(self, name: str, steps: int) -> "PreferenceOrder":
        """Move ``name`` upward by ``steps`` adjacent exchanges."""
        pos = self.position(name)
        if steps < 0 or pos + steps > len(self.ranking) - 1:
            raise ValueError(
                f"cannot raise {name!r} by {steps}: only "
                f"{len(self.ranking) - 1 - pos} positions above it"
            )
        if steps == 0:
            return self
        entries = list(self.ranking)
        del entries[pos]
        entries.insert(pos + steps, name)
        return PreferenceOrder(tuple(entries))


@dataclass(frozen=True)
class VoterProfile:
    """Multiset of preference orders, stored as (order, multiplicity) groups.

    Groups keep gadget outputs compact (they contain many duplicate voters)
    while individual voters stay addressable through flat indices: group 0
    contributes flat voters ``0 .. multiplicity-1``, and so on.
    """

    groups: tuple[tuple[PreferenceOrder, int], ...]

    def __post_init__(self):
        for _, mult in self.groups:
            if mult <= 0:
                raise ValueError(f"voter multiplicity must be positive, got {mult}")
        if not self.groups:
            raise ValueError("a profile needs at least one voter")

    @classmethod
    def from_orders(cls, orders) -> "VoterProfile":
        """Build a profile from a flat voter sequence, grouping consecutive runs."""
        groups = tuple((order, len(list(run))) for order, run in itertools.groupby(orders))
        return cls(groups)

    @cached_property
    def n(self) -> int:
        return sum(mult for _, mult in self.groups)

    def orders(self) -> Iterator[PreferenceOrder]:
        """Yield one order per voter, in flat order."""
        for order, mult in self.groups:
            for _ in range(mult):
                yield order

    def order_at(self, voter_index: int) -> PreferenceOrder:
        offset = 0
        for order, mult in self.groups:
            if voter_index < offset + mult:
                return order
            offset += mult
        raise IndexError(f"voter index {voter_index} out of range for {self.n} voters")


def apply_switch(profile: VoterProfile, voter_index: int, position: int) -> VoterProfile:
    """Exchange two adjacent entries in one voter's order; cost of one switch.

    The addressed voter's group is split so every other voter is untouched.
    """
    offset = 0
    for gi, (order, mult) in enumerate(profile.groups):
        if voter_index < offset + mult:
            local = voter_index - offset
            pieces: list[tuple[PreferenceOrder, int]] = []
            if local:
                pieces.append((order, local))
            pieces.append((order.switched(position), 1))
            if mult - local - 1:
                pieces.append((order, mult - local - 1))
            return VoterProfile(profile.groups[:gi] + tuple(pieces) + profile.groups[gi + 1:])
        offset += mult
    raise IndexError(f"voter index {voter_index} out of range for {profile.n} voters")


@dataclass(frozen=True)
class Election:
    """Candidate set plus a voter profile whose orders rank exactly that set."""

    candidates: tuple[str, ...]
    profile: VoterProfile

    def __post_init__(self):
        if not self.candidates:
            raise ValueError("an election needs at least one candidate")
        seen = set()
        for name in self.candidates:
            check_name(name)
            if name in seen:
                raise ValueError(f"duplicate candidate {name!r}")
            seen.add(name)
        for order, _ in self.profile.groups:
            if len(order.ranking) != len(self.candidates) or set(order.ranking) != seen:
                raise ValueError(
                    f"order {order} is not a permutation of the candidate set"
                )

    @property
    def n(self) -> int:
        return self.profile.n


@dataclass(frozen=True)
class DodgsonTriple:
    """An election together with the candidate whose score is in question."""

    election: Election
    designated: str

    def __post_init__(self):
        if self.designated not in self.election.candidates:
            raise ValueError(f"designated candidate {self.designated!r} is not in the election")

    @property
    def n(self) -> int:
        return self.election.n


@dataclass(frozen=True)
class PairwiseTally:
    """votes[a][b] = number of voters strictly preferring a to b (votes[a][a] = 0)."""

    candidates: tuple[str, ...]
    n: int
    votes: dict[str, dict[str, int]]


def pairwise_tally(election: Election) -> PairwiseTally:
    votes = {a: {b: 0 for b in election.candidates} for a in election.candidates}
    for order, mult in election.profile.groups:
        # combinations() yields (lower, higher); the higher entry is preferred
        for low, high in itertools.combinations(order.ranking, 2):
            votes[high][low] += mult
    return PairwiseTally(election.candidates, election.n, votes)


def condorcet_winner(election: Election) -> str | None:
    """The unique candidate beating every other by strict majority, if any.

    A single-candidate election has its candidate win vacuously; exact ties
    never count as a defeat.
    """
    tally = pairwise_tally(election)
    need = majority_threshold(election.n)
    for w in election.candidates:
        if all(tally.votes[w][d] >= need for d in election.candidates if d != w):
            return w
    return None


def deficits_from_tally(tally: PairwiseTally, designated: str) -> dict[str, int]:
    """Votes still missing for ``designated`` to defeat each opponent."""
    need = majority_threshold(tally.n)
    return {
        d: max(0, need - tally.votes[designated][d])
        for d in tally.candidates
        if d != designated
    }


def deficit_vector(triple: DodgsonTriple) -> dict[str, int]:
    """Per-opponent vote deficits; all zero exactly when the designated
    candidate is a Condorcet winner."""
    return deficits_from_tally(pairwise_tally(triple.election), triple.designated)


def parse_election(text: str) -> Election:
    """Parse the .dodg election format.

    Line 1: ``candidates: <name> <name> ...``.  Every further non-blank line
    is ``<multiplicity>: <name><<name><...`` giving one voter group in
    ascending preference.  ``#`` starts a comment.  The designated candidate
    is never part of the file; callers supply it separately.
    """
    header: tuple[str, ...] | None = None
    header_set: set[str] = set()
    groups: list[tuple[PreferenceOrder, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            key, sep, rest = line.partition(":")
            if key.strip() != "candidates" or not sep:
                raise ParseError("expected 'candidates: <name> ...' header", lineno)
            names = rest.split()
            if not names:
                raise ParseError("empty candidate list", lineno)
            for name in names:
                try:
                    check_name(name)
                except ValueError as exc:
                    raise ParseError(str(exc), lineno) from None
                if name in header_set:
                    raise ParseError(f"duplicate candidate {name!r}", lineno)
                header_set.add(name)
            header = tuple(names)
            continue
        mult_text, sep, order_text = line.partition(":")
        if not sep:
            raise ParseError("expected '<multiplicity>: <order>'", lineno)
        try:
            mult = int(mult_text.strip())
        except ValueError:
            raise ParseError(f"bad multiplicity {mult_text.strip()!r}", lineno) from None
        if mult <= 0:
            raise ParseError(f"multiplicity must be positive, got {mult}", lineno)
        tokens = [tok.strip() for tok in order_text.strip().split("<")]
        for tok in tokens:
            if tok not in header_set:
                raise ParseError(f"unknown candidate {tok!r}", lineno)
        if len(tokens) != len(header) or set(tokens) != header_set:
            raise ParseError("order is not a permutation of the candidate set", lineno)
        groups.append((PreferenceOrder(tuple(tokens)), mult))
    if header is None:
        raise ParseError("missing 'candidates:' header")
    if not groups:
        raise ParseError("election has no voters")
    return Election(header, VoterProfile(tuple(groups)))


def serialize_election(election: Election) -> str:
    lines = ["candidates: " + " ".join(election.candidates)]
    lines.extend(f"{mult}: {order}" for order, mult in election.profile.groups)
    return "\n".join(lines) + "\n"
