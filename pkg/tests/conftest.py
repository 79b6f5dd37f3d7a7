import pytest

_ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def acceptance(request):
    """Record one pass/fail line for an acceptance criterion.

    Usage: ``with acceptance("3", "strict inequalities"): ...``; the line is
    marked FAIL if the block raises.
    """

    class _Recorder:
        def __init__(self, cid: str, title: str):
            self.cid, self.title = cid, title

        def __enter__(self):
            return self

        def __exit__(self, exc_type, exc, tb):
            ok = exc_type is None
            _ACCEPTANCE[self.cid] = (ok, self.title)
            print(f"ACCEPTANCE {self.cid} {'PASS' if ok else 'FAIL'} {self.title}")
            return False

    return _Recorder


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(_ACCEPTANCE, key=lambda c: (len(c), c)):
        ok, title = _ACCEPTANCE[cid]
        terminalreporter.write_line(f"ACCEPTANCE {cid:>4} {'PASS' if ok else 'FAIL'}  {title}")
