import pytest
from hypothesis import settings

from jamstring.config import load_preset

settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def presets():
    return {fam: load_preset(fam) for fam in ("bead", "comb", "radial")}


@pytest.fixture(scope="session")
def trio(presets):
    return {fam: cfg.mechanism for fam, cfg in presets.items()}


ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance criterion's outcome for the end-of-run summary."""

    def record(label: str, ok: bool, detail: str = ""):
        ACCEPTANCE_RESULTS[label] = (bool(ok), detail)
        assert ok, f"{label}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(ACCEPTANCE_RESULTS, key=lambda s: int(s.split()[0][2:])):
        ok, detail = ACCEPTANCE_RESULTS[label]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}")
