import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from quandlehom import groups, quandle


@pytest.fixture(scope="session")
def z5():
    return groups.make_group([5])


@pytest.fixture(scope="session")
def z33():
    return groups.make_group([3, 3])


@pytest.fixture(scope="session")
def z39():
    return groups.make_group([3, 9])


@pytest.fixture(scope="session")
def t33(z33):
    return quandle.takasaki(z33)


@pytest.fixture(scope="session")
def t5(z5):
    return quandle.takasaki(z5)
