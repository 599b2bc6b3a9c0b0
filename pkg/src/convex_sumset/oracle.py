"""Brute-force ground truth for small n: explicit sumsets and longest convex subsequences."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from itertools import combinations

import numpy as np

from .errors import BudgetExceeded

DEFAULT_SUMSET_PAIRS = 12_502_500  # |b| = 5000
DEFAULT_DP_BUDGET = 6000
EXHAUSTIVE_LIMIT = 20

_INT64_SAFE = 2**61


def _fits_int64(values: Sequence[int]) -> bool:
    return all(abs(v) < _INT64_SAFE for v in values)


def sumset(b: Iterable[int], max_pairs: int = DEFAULT_SUMSET_PAIRS) -> list[int]:
    """Sorted distinct values of ``b_p + b_q`` over all p <= q."""
    elems = sorted(set(b))
    size = len(elems)
    pairs = size * (size + 1) // 2
    if pairs > max_pairs:
        raise BudgetExceeded(f"sumset of {size} elements needs {pairs} pairs > {max_pairs}", pairs)
    if not elems:
        return []
    if _fits_int64(elems):
        arr = np.array(elems, dtype=np.int64)
        rows, cols = np.triu_indices(size)
        return [int(v) for v in np.unique(arr[rows] + arr[cols])]
    return sorted({p + q for idx, p in enumerate(elems) for q in elems[idx:]})


def _convex(seq: Sequence[int]) -> bool:
    return all(seq[t + 1] - seq[t] < seq[t + 2] - seq[t + 1] for t in range(len(seq) - 2))


def lcs_exhaustive(s: Sequence[int]) -> int:
    """Longest convex subsequence by enumerating subsets, size by size.

    Convexity is hereditary (dropping an end point keeps it), so the first
    size with no convex subset ends the search.
    """
    if len(s) > EXHAUSTIVE_LIMIT:
        raise ValueError(f"exhaustive search limited to {EXHAUSTIVE_LIMIT} elements")
    s = sorted(set(s))
    if len(s) <= 2:
        return len(s)
    best = 2
    for r in range(3, len(s) + 1):
        if any(_convex(c) for c in combinations(s, r)):
            best = r
        else:
            break
    return best


def lcs_dp(s: Sequence[int], budget: int = DEFAULT_DP_BUDGET) -> tuple[int, list[int]]:
    """Length and one witness (indices into ``s``) of a longest convex subsequence.

    ``L[j, i]`` is the longest convex subsequence ending with ``s_j, s_i``.
    Its predecessors are exactly the k < j with ``s_k > 2 s_j - s_i``, a
    suffix of ``range(j)``, so each row is one searchsorted against a suffix
    maximum of column j.  O(N^2) time and memory.
    """
    size = len(s)
    if size > budget:
        raise BudgetExceeded(f"{size} sums exceed DP budget {budget}", size)
    if any(y <= x for x, y in zip(s, s[1:])):
        raise ValueError("lcs_dp expects a strictly increasing sequence")
    if size <= 2:
        return size, list(range(size))

    arr = np.array(s, dtype=np.int64 if _fits_int64(s) else object)
    dtype = np.int16 if size < 2**15 else np.int32
    L = np.zeros((size, size), dtype=dtype)
    for j in range(size - 1):
        # suffix[p] = max L[k, j] for k >= p; suffix[j] = 0 means no predecessor.
        suffix = np.zeros(j + 1, dtype=dtype)
        if j:
            suffix[:j] = np.maximum.accumulate(L[:j, j][::-1])[::-1]
        thresholds = 2 * arr[j] - arr[j + 1:]
        first = np.searchsorted(arr[:j], thresholds, side="right")
        best = suffix[first]
        L[j, j + 1:] = np.where(best > 0, best + 1, 2)

    flat = int(np.argmax(L))
    j, i = divmod(flat, size)
    length = int(L[j, i])

    witness = [i, j]
    current = length
    while current > 2:
        threshold = 2 * arr[j] - arr[i]
        k = next(k for k in range(j) if arr[k] > threshold and L[k, j] == current - 1)
        witness.append(k)
        i, j = j, k
        current -= 1
    witness.reverse()
    return length, witness
