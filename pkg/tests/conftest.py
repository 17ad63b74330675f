import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="also run tests marked slow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="slow; use --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


_CRITERIA: dict[int, str] = {}


@pytest.fixture
def criterion():
    """Record one acceptance line, print it, then assert the outcome."""

    def record(k: int, ok: bool, detail: str = "") -> None:
        line = f"CRITERION {k}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else "")
        _CRITERIA[k] = line
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for k in sorted(_CRITERIA):
            terminalreporter.write_line(_CRITERIA[k])
