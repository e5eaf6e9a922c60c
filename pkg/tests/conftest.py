import gc
import functools

import pytest

_RESULTS: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion reported in the summary")


def clear_caches():
    """Drop every lru_cache in the package so timings start cold."""
    import oppflag.chars
    import oppflag.geometry.field
    import oppflag.geometry.space

    for module in (oppflag.chars, oppflag.geometry.field, oppflag.geometry.space):
        for obj in vars(module).values():
            if isinstance(obj, functools._lru_cache_wrapper):
                obj.cache_clear()
    gc.collect()


@pytest.fixture
def cold():
    clear_caches()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or report.failed:
        prev = _RESULTS.get(number, (True, title, 0.0))
        _RESULTS[number] = (prev[0] and report.passed, title, prev[2] + report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        ok, title, seconds = _RESULTS[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {number:>2}: {title} ({seconds:.2f} s)")
