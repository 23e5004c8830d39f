import random
from fractions import Fraction as F

import pytest

from charex.mixture import MuVector

POSITIVE_POOL = [F(1, 3), F(1, 2), F(2, 3), F(1), F(3, 2), F(2), F(5, 2), F(3), F(4), F(5)]
SIGNED_POOL = POSITIVE_POOL + [-x for x in POSITIVE_POOL]
LAMBDAS = [F(1, 2), F(1), F(3, 2), F(2), F(3)]


def random_mu(rng: random.Random, n: int, mixed: bool = True) -> MuVector:
    pool = SIGNED_POOL if mixed else POSITIVE_POOL
    while True:
        entries = rng.sample(pool, n)
        if not mixed or (any(x > 0 for x in entries) and any(x < 0 for x in entries)):
            return MuVector(entries)


def mixed_battery(size: int, seed: int, n_range=(2, 5)) -> list[MuVector]:
    rng = random.Random(seed)
    return [random_mu(rng, rng.randint(*n_range)) for _ in range(size)]


def positive_battery(size: int, seed: int, n_range=(2, 5)) -> list[MuVector]:
    rng = random.Random(seed)
    return [random_mu(rng, rng.randint(*n_range), mixed=False) for _ in range(size)]


# Acceptance results, echoed in the terminal summary one line per criterion.
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report_criterion():
    def record(number: int, passed: bool, detail: str) -> None:
        ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
