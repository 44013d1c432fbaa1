import pytest

_CRITERIA: list[tuple[str, bool, str]] = []


class _Recorder:
    def __call__(self, name: str, ok: bool, detail: str = "") -> None:
        _CRITERIA.append((name, ok, detail))
        print(f"[{'PASS' if ok else 'FAIL'}] {name} {detail}")
        assert ok, f"{name}: {detail}"


@pytest.fixture
def criterion():
    return _Recorder()


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _CRITERIA:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
