import pytest
from hypothesis import HealthCheck, settings

from hopfbrauer.exact import FieldSpec

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def Q():
    return FieldSpec.rational()


@pytest.fixture(scope="session")
def F13():
    return FieldSpec.prime(13, 6)


@pytest.fixture(scope="session")
def F5():
    return FieldSpec.prime(5, 4)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[number])
