import pytest

from gelfand_graph.permutation import FpfInvolution
from gelfand_graph.structure import Tower


def fpf(text: str) -> FpfInvolution:
    return FpfInvolution.parse(text)


@pytest.fixture(scope="session")
def tower() -> Tower:
    # one set of tables per test session; n = 10 is built lazily when a test asks
    return Tower()


# criterion number -> list of (part, passed); filled by test_acceptance
CRITERIA: dict[int, list[tuple[str, bool]]] = {}


@pytest.fixture
def criterion():
    def record(number: int, part: str, passed: bool) -> bool:
        CRITERIA.setdefault(number, []).append((part, bool(passed)))
        return bool(passed)
    return record


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        parts = CRITERIA[number]
        failed = [p for p, ok in parts if not ok]
        status = "FAIL" if failed else "PASS"
        detail = "failing: " + ", ".join(failed) if failed else ", ".join(p for p, _ in parts)
        terminalreporter.write_line(f"[{status}] criterion {number}: {detail}")
