import pytest

from api import universe as unv


@pytest.fixture
def xyz() -> unv.VarUniverse:
    return unv.make_universe(['x', 'y', 'z'])


@pytest.fixture
def xy() -> unv.VarUniverse:
    return unv.make_universe(['x', 'y'])
