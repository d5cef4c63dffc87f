from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from treecentral.enumerate import free_trees  # noqa: E402
from treecentral.tree import build_path_star  # noqa: E402

# criterion number -> (passed, detail), filled in by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def disjoint_tree():
    """Path 1..10 with seven leaves 11..17 hanging off vertex 10."""
    return build_path_star(17, 7)


@pytest.fixture(scope="session")
def small_trees():
    """All free trees with 1 <= n <= 10, as a dict n -> list."""
    return {n: list(free_trees(n)) for n in range(1, 11)}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {k:>2}: {detail}")
