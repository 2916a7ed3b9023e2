import os
import time

import pytest
from hypothesis import HealthCheck, settings

from fareybound.spectrum import GRID_COLUMNS, GRID_ROWS, INFINITE_COLUMNS, TABLE1_ORDERS, best_bound
from fareybound.symalg import INF

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def grid():
    """Every table cell at the default budgets, with per-cell wall time.

    Keys are (p, q): (2, p) for the order-two table, p <= q for the finite
    grid and (INF, q) for the parabolic row.
    """
    cells = [(2, p) for p in TABLE1_ORDERS]
    cells += [(p, q) for p in GRID_ROWS for q in GRID_COLUMNS if p <= q]
    cells += [(INF, q) for q in INFINITE_COLUMNS]
    records, seconds = {}, {}
    for cell in cells:
        start = time.perf_counter()
        records[cell] = best_bound(*cell)
        seconds[cell] = time.perf_counter() - start
    return records, seconds


@pytest.fixture(scope="session")
def certificate_10_17():
    from fareybound.farey import FareyFraction
    from fareybound.verify import rouche_root_stability

    start = time.perf_counter()
    cert = rouche_root_stability(FareyFraction(10, 17), 0.005)
    return cert, time.perf_counter() - start


class AcceptanceLog:
    """Collects one PASS/FAIL line per acceptance check."""

    lines: list[str] = []

    def __init__(self, criterion: str) -> None:
        self.criterion = criterion
        self.failed: list[str] = []

    def check(self, label: str, ok: bool, detail: str = "") -> bool:
        tag = "PASS" if ok else "FAIL"
        self.lines.append(f"[{tag}] {self.criterion}: {label}" + (f"  ({detail})" if detail else ""))
        if not ok:
            self.failed.append(label)
        return ok

    def note(self, label: str, ok: bool, detail: str = "") -> None:
        """A diagnostic line that does not count towards the criterion."""
        tag = "info-pass" if ok else "info-fail"
        self.lines.append(f"[{tag}] {self.criterion}: {label}" + (f"  ({detail})" if detail else ""))

    def finish(self) -> None:
        verdict = "PASS" if not self.failed else "FAIL"
        self.lines.append(f"== criterion {self.criterion}: {verdict}")
        assert not self.failed, f"criterion {self.criterion} failed: " + "; ".join(self.failed)


@pytest.fixture
def acceptance(request):
    name = request.node.name.removeprefix("test_criterion_").split("_")[0]
    return AcceptanceLog(name)


def pytest_terminal_summary(terminalreporter):
    if AcceptanceLog.lines:
        terminalreporter.section("acceptance criteria")
        for line in AcceptanceLog.lines:
            terminalreporter.write_line(line)
