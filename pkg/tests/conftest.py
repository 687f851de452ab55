import random

import pytest
from hypothesis import HealthCheck, settings

from cohenwitt import make_field

settings.register_profile(
    "default", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

# criterion number -> (passed, detail); printed at the end of the run
CRITERIA: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(CRITERIA):
        ok, detail = CRITERIA[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture
def record():
    def _record(num: int, ok: bool, detail: str = "") -> bool:
        CRITERIA[num] = (ok, detail)
        print(f"criterion {num}: {'PASS' if ok else 'FAIL'} {detail}")
        return ok
    return _record


@pytest.fixture(scope="session")
def F2t():
    return make_field(2, 1, 1)


@pytest.fixture(scope="session")
def F3t():
    return make_field(3, 1, 1)


@pytest.fixture(scope="session")
def F2t2():
    return make_field(2, 1, 2)


@pytest.fixture(scope="session")
def F4():
    return make_field(2, 2, 0)


@pytest.fixture(scope="session")
def F4t():
    return make_field(2, 2, 1)


@pytest.fixture
def rng():
    return random.Random(1234)

