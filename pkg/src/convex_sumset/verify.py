"""Exact checks on the assembled chain and the inequality ledger behind the gluing."""

from __future__ import annotations

import bisect
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING

import numpy as np

from .construction import Basis, block_num, gap_num, x_num, y_num
from .errors import BudgetExceeded, PairOutOfRange, WitnessMismatch
from .params import Params

if TYPE_CHECKING:
    from .splice import Chain

CHECK_NAMES = (
    "lower_bound", "upper_bound", "containment", "delta1", "delta2",
    "start_dist", "window_overtake", "tail_bound", "index_bound",
)

DEFAULT_MAX_PAIRS = 5_000_000


def is_convex(s: Sequence[int]) -> bool:
    """True iff consecutive gaps of the sorted sequence ``s`` strictly increase."""
    prev_gap = None
    for a, b in zip(s, s[1:]):
        g = b - a
        if g < 0:
            raise ValueError("is_convex expects a sorted sequence")
        if prev_gap is not None and g <= prev_gap:
            # Keep scanning for unsortedness so bad input is never reported as
            # merely non-convex.
            if any(y < x for x, y in zip(s, s[1:])):
                raise ValueError("is_convex expects a sorted sequence")
            return False
        prev_gap = g
    return True


@dataclass(frozen=True)
class WitnessReport:
    passed: bool
    checked: int
    first_failure: int | None = None
    reason: str = ""


def check_witnesses(chain: Chain, basis: Basis, raise_on_failure: bool = True) -> WitnessReport:
    """Recompute x_i + y_j for every chain element and compare with its value."""
    params = basis.params
    if chain.params.D != params.D:
        raise ValueError("chain and basis come from different parameters")
    lim = 2 * params.n
    if len(chain.witnesses) != len(chain.values):
        return _witness_failure(len(chain.witnesses), "witness count differs from chain length",
                                raise_on_failure, len(chain.values))
    for pos, (value, (i, j)) in enumerate(zip(chain.values, chain.witnesses)):
        if not (-lim <= i <= lim and -lim <= j <= lim):
            return _witness_failure(pos, f"witness ({i}, {j}) outside [-2n, 2n]",
                                    raise_on_failure, pos)
        if x_num(params, i) + y_num(params, j) != value:
            return _witness_failure(pos, f"x_{i} + y_{j} != element {pos}",
                                    raise_on_failure, pos)
    return WitnessReport(passed=True, checked=len(chain.values))


def _witness_failure(pos: int, reason: str, raise_on_failure: bool, checked: int) -> WitnessReport:
    if raise_on_failure:
        raise WitnessMismatch(reason, pos)
    return WitnessReport(passed=False, checked=checked, first_failure=pos, reason=reason)


# -- inequality audit -------------------------------------------------------

@dataclass(frozen=True)
class Check:
    passed: bool
    slack: Fraction

    def as_dict(self) -> dict:
        return {"pass": self.passed, "slack": str(self.slack), "slack_float": float(self.slack)}


@dataclass
class AuditReport:
    n: int
    k: int
    theta: Fraction
    stride: int
    checks: dict[str, Check] = field(default_factory=dict)
    info: dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def as_dict(self) -> dict:
        return {
            "n": self.n, "k": self.k, "k_next": self.k + self.stride,
            "theta": str(self.theta), "stride": self.stride,
            "passed": self.passed,
            "checks": {name: c.as_dict() for name, c in self.checks.items()},
            "info": {key: str(v) if isinstance(v, Fraction) else v
                     for key, v in self.info.items()},
        }


def _strict(slack: Fraction) -> Check:
    return Check(slack > 0, slack)


def _weak(slack: Fraction) -> Check:
    return Check(slack >= 0, slack)


def audit_bounds(params: Params, k: int) -> AuditReport:
    """Evaluate, exactly, each inequality used to glue block k to block k + stride.

    Every check is evaluated even when an earlier one fails.  Decimal
    constants are exact rationals; slack is measured in real units (not
    scaled), and is negative when an inequality is violated.
    """
    n, s, D = params.n, params.stride, params.D
    k2 = k + s
    if k < params.k_min or k2 > n:
        raise PairOutOfRange(
            f"pair ({k}, {k2}) not inside [{params.k_min}, {n}] (theta={params.theta})")

    def val(kk: int, i: int) -> Fraction:
        return Fraction(block_num(params, kk, i), D)

    eps = Fraction(params.eps_scaled, D)
    m = math.ceil(Fraction(n, 2)) + 1
    report = AuditReport(n=n, k=k, theta=params.theta, stride=s)
    checks = report.checks

    lo, hi = val(k, -n), val(k, 2 * n)
    checks["lower_bound"] = _weak(min(lo - (k - 3), (k - Fraction(29, 10)) - lo))
    checks["upper_bound"] = _weak(min(hi - (k + Fraction(29, 10)), (k + Fraction(31, 10)) - hi))

    nums = [block_num(params, k, i) for i in range(-n, 2 * n + 1)]
    checks["containment"] = _weak(min(Fraction(min(nums), D) - (k - 3 - eps),
                                      (k + 3 + eps) - Fraction(max(nums), D)))

    # Gaps exist for i in [-n, 2n-1].
    small_delta = Fraction(max(gap_num(params, k, i) for i in range(-n, 2 * n)), D)
    big_delta = Fraction(min(gap_num(params, k2, i) for i in range(-n, 2 * n)), D)
    checks["delta1"] = _strict(Fraction(21, 10 * n) - small_delta)
    checks["delta2"] = _strict((big_delta - small_delta) - Fraction(6, n * n))

    # v: least entry of block k above the minimum of block k + stride.
    start = block_num(params, k2, -n)
    pos = bisect.bisect_right(nums, start)
    if pos < len(nums):
        v = pos - n
        d = Fraction(nums[pos] - start, D)
        checks["start_dist"] = Check(0 <= d <= small_delta, min(d, small_delta - d))
    else:
        # Virtual index past the truncation so the remaining checks stay defined.
        v = 2 * n + 1
        d = None
        checks["start_dist"] = Check(False, Fraction(nums[-1] - start, D))

    overtake = val(k2, -n + m) - val(k, v + m)
    checks["window_overtake"] = _strict(overtake)
    checks["tail_bound"] = _strict((k + Fraction(11, 5)) - val(k, v + m))
    checks["index_bound"] = _strict(Fraction(2 * n - (v + m)))

    alpha_k2 = Fraction(k * k, n * n)
    report.info.update({
        "m": m, "v": v, "d": d, "delta_max_gap": small_delta, "Delta_min_gap": big_delta,
        "alpha_k_sq": alpha_k2,
        "alpha_k_sq_in_0.99_1": Fraction(99, 100) <= alpha_k2 <= 1,
        # Informational: the intermediate expression 3n*gamma + 2k*alpha.
        "delta1_intermediate_slack": (Fraction(3 * n, 1000 * n**3) + Fraction(2 * k, n * n))
        - small_delta,
        "window_lower_estimate": (-(d if d is not None else 0) + m * (big_delta - small_delta)),
    })
    return report


def audit_pairs(params: Params) -> list[AuditReport]:
    """Audit every consecutive block pair in range."""
    ks = params.block_indices()
    return [audit_bounds(params, k) for k in ks[:-1]]


# -- measurement ------------------------------------------------------------

@dataclass(frozen=True)
class Measurement:
    size_a: int
    size_b: int
    density: Fraction
    per_block_kept: dict[int, int]
    middle_interval_counts: dict[int, int]

    def as_dict(self) -> dict:
        return {
            "size_A": self.size_a, "size_B": self.size_b,
            "density": str(self.density), "density_float": float(self.density),
            "per_block_kept": {str(k): c for k, c in self.per_block_kept.items()},
            "middle_interval_counts": {str(k): c for k, c in self.middle_interval_counts.items()},
        }


def measure(chain: Chain, basis: Basis, params: Params) -> Measurement:
    D, eps = params.D, params.eps_scaled
    counts = {}
    for k in chain.blocks:
        lo = (k - 1) * D + eps
        hi = (k + 1) * D - eps
        counts[k] = bisect.bisect_right(chain.values, hi) - bisect.bisect_left(chain.values, lo)
    size_a = len(chain.values)
    return Measurement(
        size_a=size_a, size_b=basis.size,
        density=Fraction(size_a, params.n ** 2),
        per_block_kept=chain.kept_per_block(),
        middle_interval_counts=counts,
    )


# -- popular differences ----------------------------------------------------

@dataclass(frozen=True)
class DiffStats:
    differences: np.ndarray
    counts: np.ndarray
    threshold: int
    popular_count: int

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def multiplicity(self, x: int) -> int:
        idx = np.searchsorted(self.differences, x)
        if idx < len(self.differences) and self.differences[idx] == x:
            return int(self.counts[idx])
        return 0

    def as_dict(self) -> dict[int, int]:
        return {int(x): int(c) for x, c in zip(self.differences, self.counts)}

    def popular(self, threshold: int) -> int:
        return int((self.counts >= threshold).sum())


def _merge_hist(acc: tuple[np.ndarray, np.ndarray] | None,
                diffs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    vals, cnts = np.unique(diffs, return_counts=True)
    if acc is None:
        return vals, cnts.astype(np.int64)
    all_vals = np.concatenate([acc[0], vals])
    all_cnts = np.concatenate([acc[1], cnts.astype(np.int64)])
    uniq, inv = np.unique(all_vals, return_inverse=True)
    merged = np.zeros(len(uniq), dtype=np.int64)
    np.add.at(merged, inv, all_cnts)
    return uniq, merged


def diff_popularity(a: Sequence[int], threshold: int,
                    max_pairs: int = DEFAULT_MAX_PAIRS, chunk: int = 4_000_000) -> DiffStats:
    """Histogram of positive differences a_p - a_q of the sorted sequence ``a``.

    Pairs are generated by offset (``a[g:] - a[:-g]``) and folded into the
    histogram in chunks of about ``chunk`` differences.
    """
    if threshold < 1:
        raise ValueError("threshold must be positive")
    size = len(a)
    pairs = size * (size - 1) // 2
    if pairs > max_pairs:
        raise BudgetExceeded(f"{pairs} pairs exceed budget {max_pairs}", pairs)
    if any(y <= x for x, y in zip(a, a[1:])):
        raise ValueError("diff_popularity expects a strictly increasing sequence")

    fits = size == 0 or max(abs(a[0]), abs(a[-1])) < 2**62
    arr = np.array(a, dtype=np.int64 if fits else object)
    acc = None
    pending: list[np.ndarray] = []
    pending_len = 0
    for g in range(1, size):
        pending.append(arr[g:] - arr[:-g])
        pending_len += size - g
        if pending_len >= chunk:
            acc = _merge_hist(acc, np.concatenate(pending))
            pending, pending_len = [], 0
    if pending:
        acc = _merge_hist(acc, np.concatenate(pending))
    if acc is None:
        acc = (np.array([], dtype=np.int64), np.array([], dtype=np.int64))
    diffs, counts = acc
    return DiffStats(differences=diffs, counts=counts, threshold=threshold,
                     popular_count=int((counts >= threshold).sum()))
