import pytest

from lvecdlp.verification import fixture_medium, fixture_small


@pytest.fixture(scope="session")
def group_p19():
    return fixture_small()


@pytest.fixture(scope="session")
def group_p907():
    return fixture_medium()
