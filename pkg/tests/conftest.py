import pytest

from sclcert.surface import builtin_config


@pytest.fixture
def chain3():
    return builtin_config("chain5", 3)


@pytest.fixture
def chain2():
    return builtin_config("chain5", 2)


@pytest.fixture
def lantern3():
    return builtin_config("lantern", 3)


@pytest.fixture
def lantern2():
    return builtin_config("lantern2", 2)


@pytest.fixture
def twochain():
    return builtin_config("twochain", 2)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if rep.when == "call" and "test_acceptance.py::test_criterion" in rep.nodeid:
                lines.append((rep.nodeid.split("::")[-1], outcome.upper()[:4]))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, verdict in sorted(lines):
            terminalreporter.write_line(f"{verdict}  {name}")
