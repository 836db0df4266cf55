import pytest

from lfwp.localfield import preset

ALL_PRESETS = ("q2", "q3", "q4", "q5", "q9")


@pytest.fixture(scope="session")
def q2():
    return preset("q2")


@pytest.fixture(scope="session")
def q3():
    return preset("q3")


@pytest.fixture(scope="session")
def q4():
    return preset("q4")


@pytest.fixture(scope="session")
def q5():
    return preset("q5")


@pytest.fixture(scope="session")
def q9():
    return preset("q9")


@pytest.fixture(scope="session", params=ALL_PRESETS)
def any_params(request):
    return preset(request.param)
