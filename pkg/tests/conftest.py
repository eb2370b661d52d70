import pytest

from homalg.forge import catalog


@pytest.fixture(scope="session")
def seed_catalog():
    return {e.id: e for e in catalog()}
