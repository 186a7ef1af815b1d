import pytest

from ordsem.order import from_relation


@pytest.fixture
def chain2():
    return from_relation(["a", "b"], [("a", "b")])


@pytest.fixture
def chain3():
    return from_relation(["a", "b", "c"], [("a", "b"), ("b", "c")])


@pytest.fixture
def antichain2():
    return from_relation(["a", "b"], [])


@pytest.fixture
def fork():
    # the frame 2^{<2}: one root below two incomparable leaves
    return from_relation(["r", "l", "k"], [("r", "l"), ("r", "k")])


@pytest.fixture
def diamond():
    return from_relation(
        ["bot", "m1", "m2", "top"],
        [("bot", "m1"), ("bot", "m2"), ("m1", "top"), ("m2", "top")],
    )
