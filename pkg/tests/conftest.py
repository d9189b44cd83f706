from pathlib import Path

import pytest

from fairstream.core import FairnessConstraint, Item, WindowSpec

DATA = Path(__file__).parent / "data"

# running example: a 15-item window in three blocks of five, plus five landmark items
BASE = "C C A H H C A C H H A A C H H".split()
LANDMARKS = "C A A A H".split()


def items_of(values, start=1):
    return [Item(start + i, v) for i, v in enumerate(values)]


@pytest.fixture
def constraint1():
    return FairnessConstraint.from_lists(["C", "A", "H"], [".3", ".3", ".4"])


@pytest.fixture
def constraint2():
    return FairnessConstraint.from_lists(["C", "A", "H"], [".5", ".2", ".3"])


@pytest.fixture
def base_items():
    return items_of(BASE)


@pytest.fixture
def scope_items():
    return items_of(BASE + LANDMARKS)


@pytest.fixture
def spec15():
    return WindowSpec(15, 5, landmark_size=5)
