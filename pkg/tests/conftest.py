import random
import sys

import pytest

from catent.category import chain


@pytest.fixture
def chain2():
    return chain(2, ["a", "b"])


@pytest.fixture
def rng():
    return random.Random(20231015)


def pytest_terminal_summary(terminalreporter):
    # acceptance tests record one PASS/FAIL line per criterion
    results = getattr(sys.modules.get("test_acceptance"), "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
