from __future__ import annotations

import time

import pytest

from altquot.pipeline import remediated_triple


@pytest.fixture(scope="session")
def triple_7_13_17():
    return remediated_triple(1, 7, 13, 17)


@pytest.fixture(scope="session")
def triple_3_17_19():
    return remediated_triple(6, 3, 17, 19)


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("ALTQUOT_CACHE_DIR", str(tmp_path / "cache"))


# -- acceptance reporting --------------------------------------------------------

_ACCEPTANCE: dict[int, tuple[bool, str, float, str]] = {}


class _Criterion:
    def __init__(self, number: int, title: str, limit: float):
        self.number, self.title, self.limit = number, title, limit
        self.note = ""

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        ok = exc_type is None and elapsed < self.limit
        why = self.note
        if exc_type is not None:
            why = f"{exc_type.__name__}: {exc}".splitlines()[0][:160]
        elif not ok:
            why = f"took {elapsed:.1f}s, limit {self.limit:.0f}s"
        _ACCEPTANCE[self.number] = (ok, self.title, elapsed, why)
        print(_line(self.number))
        if exc_type is None and not ok:
            pytest.fail(why)
        return False


def _line(number: int) -> str:
    ok, title, elapsed, why = _ACCEPTANCE[number]
    tail = f" ({why})" if why else ""
    return f"criterion {number:2d} {'PASS' if ok else 'FAIL'} {elapsed:7.2f}s  {title}{tail}"


@pytest.fixture
def criterion():
    return _Criterion


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        terminalreporter.write_line(_line(number))
