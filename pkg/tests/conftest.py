import pytest

from shapmss import GameOracle, builtin_model, tokenize
from shapmss.fixtures import CATALOG

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def oracle_for():
    def make(model_name, text):
        return GameOracle(builtin_model(model_name), tokenize(text))

    return make


@pytest.fixture(params=list(CATALOG))
def case(request):
    return CATALOG[request.param]


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
