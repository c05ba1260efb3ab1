import itertools

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")


def binary_strings(max_len):
    for k in range(max_len + 1):
        for bits in itertools.product("01", repeat=k):
            yield "".join(bits)


@pytest.fixture(scope="session")
def census5():
    from tracktour.tournament import unique_census

    return unique_census(5)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if rep.when == "call" and "test_acceptance.py::test_criterion_" in rep.nodeid:
                name = rep.nodeid.split("::test_criterion_")[1]
                lines.append((name, "PASS" if outcome == "passed" else "FAIL", rep.duration))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, status, seconds in sorted(lines):
            number, _, label = name.partition("_")
            terminalreporter.write_line(f"{status} criterion {int(number)}: {label.replace('_', ' ')} ({seconds:.2f}s)")
