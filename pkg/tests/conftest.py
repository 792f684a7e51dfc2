import pytest

_ACCEPTANCE: dict[int, tuple[str, bool, list[str]]] = {}


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_ACCEPTANCE):
        title, ok, failed = _ACCEPTANCE[k]
        line = f"criterion {k} ({title}): {'PASS' if ok else 'FAIL'}"
        if failed:
            line += f"  failing: {', '.join(failed)}"
        terminalreporter.write_line(line)
