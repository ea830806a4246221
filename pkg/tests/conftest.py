import numpy as np
import pytest

from polarbounds.spectra import validate_spectrum_pair


def random_pair(rng, r_max=3, s_max=4, lo=0.1, hi=10.0, equal_ranks=None):
    """Random validated spectrum pair with r <= s."""
    r = int(rng.integers(1, r_max + 1))
    if equal_ranks is True:
        s = r
    elif equal_ranks is False:
        # caller must pass r_max < s_max
        s = int(rng.integers(r + 1, s_max + 1))
    else:
        s = int(rng.integers(r, s_max + 1))
    sig = np.sort(rng.uniform(lo, hi, size=r))[::-1]
    sigt = np.sort(rng.uniform(lo, hi, size=s))[::-1]
    return validate_spectrum_pair(sig, sigt)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


_acceptance_results = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        _acceptance_results.append((name, report.outcome, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name, outcome, duration in _acceptance_results:
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(
            f"[acceptance] {name}: {verdict} ({duration:.2f}s)")
