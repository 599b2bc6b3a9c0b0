"""Exit criteria.  Each test records one PASS/FAIL line, printed at session end."""

import math
import random
import time
from collections import Counter
from itertools import combinations

import pytest

from convex_sumset.construction import build_basis, build_block, x_value, y_value
from convex_sumset.oracle import lcs_dp, lcs_exhaustive
from convex_sumset.params import make_params
from convex_sumset.splice import assemble, splice_at
from convex_sumset.verify import audit_pairs, check_witnesses, diff_popularity, is_convex

from conftest import planted_pair

pytestmark = pytest.mark.acceptance

AC2_NS = (64, 128, 256)


def _count_multiples(lo, hi, stride):
    return sum(1 for k in range(lo, hi + 1) if k % stride == 0)


@pytest.fixture(scope="module")
def ac2_runs():
    runs = {}
    for n in AC2_NS:
        p = make_params(n, "7/8", 4)
        chain = assemble(p)
        runs[n] = (p, chain, build_basis(p))
    return runs


def test_ac1_paper_mode_pipeline(record):
    n = 4000
    t0 = time.perf_counter()
    p = make_params(n, "999/1000", 4)
    basis = build_basis(p)
    chain = assemble(p)
    convex = is_convex(chain.values)
    witnesses = check_witnesses(chain, basis, raise_on_failure=False).passed
    elapsed = time.perf_counter() - t0
    ok = (chain.blocks == [3996, 4000] and len(chain.splice_log) == 1 and convex and witnesses
          and basis.size <= 8 * n + 1 and len(chain) >= n // 2 * len(chain.blocks)
          and elapsed <= 120)
    record("AC1 paper-mode pipeline", ok,
           f"blocks={chain.blocks} splices={len(chain.splice_log)} |A|={len(chain)} "
           f"|B|={basis.size} convex={convex} witnesses={witnesses} t={elapsed:.2f}s")
    assert ok


def test_ac2_exploratory_scaling(record, ac2_runs):
    details, ok = [], True
    for n, (p, chain, basis) in ac2_runs.items():
        expected_blocks = _count_multiples(math.ceil(7 * n / 8), n, 4)
        good = (len(chain.blocks) == expected_blocks and is_convex(chain.values)
                and check_witnesses(chain, basis, raise_on_failure=False).passed
                and 2 * len(chain) >= expected_blocks * n)
        ok &= good
        details.append(f"n={n}:|A|={len(chain)},blocks={expected_blocks}")
    record("AC2 exploratory scaling", ok, " ".join(details))
    assert ok


def test_ac3_oracle_equivalence(record):
    rng = random.Random(20261016)
    t0 = time.perf_counter()
    agree = 0
    for _ in range(200):
        size = rng.randint(0, 16)
        s = sorted(rng.sample(range(-10**4, 10**4), size))
        agree += lcs_dp(s)[0] == lcs_exhaustive(s)
    elapsed = time.perf_counter() - t0
    ok = agree == 200 and elapsed < 60
    record("AC3 oracle equivalence", ok, f"{agree}/200 agree in {elapsed:.2f}s")
    assert ok


def test_ac4_lemma_property_suite(record):
    rng = random.Random(4)
    convex = 0
    for _ in range(1000):
        xs, ys, p = planted_pair(rng)
        assert is_convex(xs) and is_convex(ys)
        convex += is_convex(splice_at(xs, ys, p))
    ok = convex == 1000
    record("AC4 gluing lemma property suite", ok, f"{convex}/1000 spliced outputs convex")
    assert ok


def test_ac5_inequality_audit(record):
    reports = audit_pairs(make_params(4000))
    paper_ok = bool(reports) and all(
        c.passed and c.slack > 0 for r in reports for c in r.checks.values())

    feasible = []
    for n in (1000, 2000, 4000, 8000):
        p = make_params(n)
        pair_reports = audit_pairs(p)
        if len(p.block_indices()) >= 2 and all(r.passed for r in pair_reports):
            feasible.append(n)
    # [0.999n, n] holds two multiples of 4 only from n = 4000 on.
    expected = [n for n in (1000, 2000, 4000, 8000)
                if _count_multiples(math.ceil(999 * n / 1000), n, 4) >= 2]
    ok = paper_ok and feasible == expected == [4000, 8000]
    min_slack = min(float(c.slack) for r in reports for c in r.checks.values())
    record("AC5 inequality audit", ok,
           f"n=4000 nine checks pass (min slack {min_slack:.3e}); feasible n={feasible}")
    assert ok


def test_ac6_quadratic_growth(record, ac2_runs):
    sizes = [len(ac2_runs[n][1]) for n in AC2_NS]
    ratios = [b / a for a, b in zip(sizes, sizes[1:])]
    ok = all(3.5 <= r <= 4.5 for r in ratios)
    record("AC6 quadratic growth of |A|", ok,
           f"|A|={sizes} ratios={[round(r, 4) for r in ratios]} (band [3.5, 4.5])")
    assert ok


def test_ac7_sum_identity(record):
    violations, checked = 0, 0
    for n in (16, 64, 256):
        p = make_params(n, 1, 4)
        for k in range(1, n + 1):
            block = build_block(p, k)
            for i, value, _ in block.entries():
                checked += 1
                violations += x_value(p, i).num + y_value(p, k - i).num != value
    ok = violations == 0
    record("AC7 sum identity", ok, f"{checked} identities, {violations} violations")
    assert ok


def test_ac8_diff_stats_oracle(record):
    details, ok = [], True
    for n, theta in ((8, "7/8"), (8, "1/2"), (64, "7/8")):
        chain = assemble(make_params(n, theta, 4))
        a = chain.values
        assert len(a) <= 500
        threshold = math.isqrt(len(a) - 1) + 1
        stats = diff_popularity(a, threshold)
        naive = Counter(y - x for x, y in combinations(a, 2))
        good = (stats.as_dict() == dict(naive)
                and stats.total == len(a) * (len(a) - 1) // 2
                and stats.popular_count == sum(c >= threshold for c in naive.values()))
        ok &= good
        details.append(f"|A|={len(a)}:popular(T={threshold})={stats.popular_count}")
    record("AC8 diff stats oracle", ok, " ".join(details))
    assert ok
