import pytest
from hypothesis import HealthCheck, settings

from fracgb.algebra import DEFAULT_PRIME, parse_polynomial

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture
def P():
    """``P(text, nvars=3)`` parses a polynomial over GF(32003)."""

    def make(text, nvars=3, modulus=DEFAULT_PRIME):
        return parse_polynomial(text, nvars, modulus)

    return make


ACCEPTANCE_KEY = pytest.StashKey[dict]()


@pytest.fixture
def acceptance(request):
    """``acceptance(number, title, failures, checked)`` records one criterion line."""
    lines = request.config.stash.setdefault(ACCEPTANCE_KEY, {})

    def record(number, title, failures, checked):
        status = "PASS" if not failures else "FAIL"
        detail = f"{checked} checks" + (f", {len(failures)} failed: {failures[:3]}" if failures else "")
        lines[number] = f"criterion {number:2d} {status}  {title} ({detail})"
        return not failures

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE_KEY, {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for number in sorted(lines):
            terminalreporter.write_line(lines[number])
