import random
from fractions import Fraction

import pytest

from convex_sumset.splice import SplicePoint

# (criterion, passed, detail) rows collected by the acceptance module.
ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


# Independent rational evaluation of the defining formulas; shares no code
# with the scaled-integer path under test.
def rat_alpha(n):
    return Fraction(1, n * n)


def rat_gamma(n):
    return Fraction(1, 1000 * n**3)


def rat_x(n, i):
    return i + (rat_alpha(n) + rat_gamma(n)) * i * i


def rat_y(n, j):
    return j - rat_alpha(n) * j * j


def rat_block(n, k, i):
    return rat_x(n, i) + rat_y(n, k - i)


def convex_from_gaps(start, increments):
    """Convex sequence whose gaps are the running sums of positive ``increments``."""
    values, gap_ = [start], 0
    for inc in increments:
        gap_ += inc
        values.append(values[-1] + gap_)
    return values


def planted_pair(rng: random.Random):
    """Random convex X and Y with [x_u, x_{u+1}] planted inside [y_v, y_{v+1}]."""
    xs = convex_from_gaps(rng.randint(-100, 100), [rng.randint(1, 5) for _ in range(rng.randint(1, 12))])
    u = rng.randrange(len(xs) - 1)
    left = xs[u] - rng.randint(0, 4)
    big = xs[u + 1] - left + rng.randint(0, 4)
    # gaps below y_v shrink strictly, gaps above grow strictly
    before, g = [], big
    for _ in range(rng.randint(0, 6)):
        g -= rng.randint(1, 3)
        if g <= 0:
            break
        before.append(g)
    ys = [left]
    for g in before:
        ys.insert(0, ys[0] - g)
    v = len(ys) - 1
    ys.append(left + big)
    g = big
    for _ in range(rng.randint(0, 6)):
        g += rng.randint(1, 4)
        ys.append(ys[-1] + g)
    return xs, ys, SplicePoint(u, v)


@pytest.fixture
def record():
    def _record(name: str, passed: bool, detail: str = "") -> bool:
        ACCEPTANCE_RESULTS.append((name, bool(passed), detail))
        return passed
    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")
