import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dilines.core import complete_bipartite, complete_digraph, cycle_graph, directed_cycle  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def record():
    def _record(label, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  [{detail}]" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok
    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def triangle():
    return directed_cycle(3)


@pytest.fixture
def oriented_square():
    return directed_cycle(4)


@pytest.fixture
def c4():
    return cycle_graph(4)


@pytest.fixture
def k23():
    # parts {0, 1, 2} and {3, 4}
    return complete_bipartite(3, 2)


@pytest.fixture
def k4():
    return complete_digraph(4)
