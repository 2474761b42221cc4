from __future__ import annotations

import random
from pathlib import Path

import pytest

from autgrowth.thompson import parse_tree_pair

FIXTURES = Path(__file__).parent / "fixtures"

# acceptance lines collected during the run, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def load_tree_pair_corpus() -> dict:
    out = {}
    for line in (FIXTURES / "tree_pairs.txt").read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            name, rules = line.split(":", 1)
            out[name.strip()] = parse_tree_pair(rules).reduced()
    return out


@pytest.fixture(scope="session")
def tree_pair_corpus() -> dict:
    return load_tree_pair_corpus()


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240601)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
