import pathlib
import sys

import pytest

sys.path.insert(0, str(pathlib.Path(__file__).parent))

from harm import enumerate_paths, paper_example_model  # noqa: E402

ROOT = pathlib.Path(__file__).resolve().parents[1]
FIXTURE_FILE = ROOT / "examples" / "paper-network.json"


@pytest.fixture
def fixture_model():
    return paper_example_model()


@pytest.fixture
def fixture_paths(fixture_model):
    return enumerate_paths(fixture_model)


@pytest.fixture
def fixture_file():
    return FIXTURE_FILE


_acceptance: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion number and summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    n, text = marker.args
    if report.when == "call" or (report.when == "setup" and not report.passed):
        status = "PASS" if report.passed else "FAIL"
        if _acceptance.get(n, ("PASS",))[0] == "PASS":
            _acceptance[n] = (status, text)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_acceptance):
        status, text = _acceptance[n]
        terminalreporter.write_line(f"{status}  criterion {n:2d}: {text}")
