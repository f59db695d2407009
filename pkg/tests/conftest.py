import pytest

from dodgson import DodgsonTriple, Election, PreferenceOrder, VoterProfile


def order(text: str) -> PreferenceOrder:
    return PreferenceOrder.from_string(text)


def election(candidates: str, *orders: str, mults=None) -> Election:
    names = tuple(candidates.split())
    groups = tuple(
        (order(text), 1 if mults is None else mults[i]) for i, text in enumerate(orders)
    )
    return Election(names, VoterProfile(groups))


def chain_triple(*names: str) -> DodgsonTriple:
    """Single voter ranking the given names ascending; first name designated."""
    e = Election(tuple(names), VoterProfile(((PreferenceOrder(tuple(names)), 1),)))
    return DodgsonTriple(e, names[0])


@pytest.fixture
def cycle():
    """One voter each of a<b<c, b<c<a, c<a<b: no Condorcet winner."""
    return election("a b c", "a<b<c", "b<c<a", "c<a<b")


@pytest.fixture
def unanimous():
    """Three identical voters a<b<c: c is the Condorcet winner."""
    return election("a b c", "a<b<c", mults=[3])
