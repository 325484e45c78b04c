import pytest

_LINES: list[str] = []


class _Criteria:
    def record(self, number: int, ok: bool, detail: str) -> None:
        _LINES.append("criterion %2d: %s  %s" % (number, "PASS" if ok else "FAIL", detail))


@pytest.fixture(scope="session")
def criteria():
    return _Criteria()


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_LINES):
            terminalreporter.write_line(line)
