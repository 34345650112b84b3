from __future__ import annotations

import time
from contextlib import contextmanager

import pytest

from tqft import catalog, category

_RESULTS: dict[int, tuple[str, str, float]] = {}


@contextmanager
def criterion(number: int, title: str, limit: float | None = None):
    """Record PASS/FAIL for an acceptance criterion, failing also when over its time limit."""
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        _RESULTS[number] = ("FAIL", title, time.perf_counter() - start)
        raise
    elapsed = time.perf_counter() - start
    if limit is not None and elapsed > limit:
        _RESULTS[number] = ("FAIL", f"{title} (took {elapsed:.1f}s, limit {limit:.0f}s)", elapsed)
        pytest.fail(f"criterion {number} exceeded its time limit: {elapsed:.1f}s > {limit}s")
    _RESULTS[number] = ("PASS", title, elapsed)


@pytest.fixture
def record():
    return criterion


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_RESULTS):
        status, title, elapsed = _RESULTS[n]
        terminalreporter.write_line(f"{status} criterion {n}: {title} [{elapsed:.2f}s]")


BUILTINS = catalog.list_builtins()
MODULAR = [n for n in BUILTINS if category.is_modular(catalog.builtin(n))]


@pytest.fixture(params=BUILTINS)
def any_builtin(request):
    return catalog.builtin(request.param)


@pytest.fixture(params=MODULAR)
def modular_builtin(request):
    return catalog.builtin(request.param)
