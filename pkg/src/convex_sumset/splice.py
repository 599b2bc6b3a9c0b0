"""Gluing convex sequences at a nested gap, and assembly of the block chain.

If ``[x_u, x_{u+1}]`` lies inside ``[y_v, y_{v+1}]`` then the prefix
``x_0..x_u`` followed by the suffix ``y_{v+1}..`` is again convex:

    x_u - x_{u-1} < x_{u+1} - x_u <= y_{v+1} - x_u <= y_{v+1} - y_v < y_{v+2} - y_{v+1}

Boundary equalities are therefore harmless.
"""

from __future__ import annotations

import bisect
from collections.abc import Sequence
from dataclasses import dataclass, field

from .construction import Block, build_block
from .errors import ConvexityBroken, NestingViolated, NoBlocks, NoNesting
from .params import Params
from .verify import is_convex


@dataclass(frozen=True)
class SplicePoint:
    u: int
    v: int


@dataclass(frozen=True)
class SpliceRecord:
    k_from: int
    k_to: int
    u: int
    v: int
    d: int
    # Block-local entry indices (i in [-n, 2n]) of x_u and y_v.
    i_from: int
    i_to: int

    def as_dict(self) -> dict:
        return {
            "k_from": self.k_from, "k_to": self.k_to,
            "u": self.u, "v": self.v, "d": str(self.d),
            "i_from": self.i_from, "i_to": self.i_to,
        }


@dataclass
class Chain:
    params: Params
    values: list[int] = field(default_factory=list)
    witnesses: list[tuple[int, int]] = field(default_factory=list)
    blocks: list[int] = field(default_factory=list)
    splice_log: list[SpliceRecord] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.values)

    def kept_per_block(self) -> dict[int, int]:
        """Number of elements each block contributes, read off the splice log."""
        n = self.params.n
        first_i = {k: -n for k in self.blocks}
        last_i = {k: 2 * n for k in self.blocks}
        for rec in self.splice_log:
            last_i[rec.k_from] = rec.i_from
            first_i[rec.k_to] = rec.i_to + 1
        return {k: last_i[k] - first_i[k] + 1 for k in self.blocks}


def find_nesting(xs: Sequence[int], ys: Sequence[int], start: int = 0) -> SplicePoint:
    """Smallest u (then smallest v) with ``[x_u, x_{u+1}]`` inside ``[y_v, y_{v+1}]``.

    Linear two-pointer scan; for strictly increasing ``ys`` at most one v can
    work for a given u, namely the last one with ``y_v <= x_u``.
    """
    if len(xs) < 2 or len(ys) < 2:
        raise NoNesting("both sequences need at least one gap")
    # No gap of X starting below y_0 can nest.
    u = max(start, bisect.bisect_left(xs, ys[0]))
    v = 0
    last_v = len(ys) - 2
    while u < len(xs) - 1:
        xu = xs[u]
        while v < last_v and ys[v + 1] <= xu:
            v += 1
        if ys[v + 1] <= xu:
            break  # x_u is beyond the last gap of Y
        if xs[u + 1] <= ys[v + 1]:
            return SplicePoint(u, v)
        u += 1
    raise NoNesting("no gap of the first sequence nests inside a gap of the second")


def splice_at(xs: Sequence[int], ys: Sequence[int], p: SplicePoint) -> list[int]:
    """Prefix of ``xs`` through ``p.u`` followed by the suffix of ``ys`` after ``p.v``."""
    u, v = p.u, p.v
    if not (0 <= u < len(xs) - 1 and 0 <= v < len(ys) - 1):
        raise NestingViolated(f"splice point {p} out of range")
    if not (ys[v] <= xs[u] and xs[u + 1] <= ys[v + 1]):
        raise NestingViolated(
            f"[x_{u}, x_{u + 1}] = [{xs[u]}, {xs[u + 1]}] not inside "
            f"[y_{v}, y_{v + 1}] = [{ys[v]}, {ys[v + 1]}]")
    out = list(xs[:u + 1])
    out.extend(ys[v + 1:])
    if not is_convex(out):
        raise ConvexityBroken(f"splice at {p} produced a non-convex sequence")
    return out


def assemble(params: Params, blocks: Sequence[Block] | None = None) -> Chain:
    """Glue the blocks k = stride*l in [theta*n, n] left to right into one convex chain."""
    if blocks is None:
        indices = params.block_indices()
        if not indices:
            raise NoBlocks(
                f"no multiple of {params.stride} in [{params.k_min}, {params.n}]")
        blocks = [build_block(params, k) for k in indices]
    elif not blocks:
        raise NoBlocks("empty block list")

    first = blocks[0]
    chain = Chain(params=params)
    chain.values = list(first.values)
    chain.witnesses = [first.witness(p) for p in range(len(first))]
    chain.blocks.append(first.k)
    # Chain index at which the newest block's contribution starts.
    tail_offset = 0

    for block in blocks[1:]:
        xs, ys = chain.values, block.values
        k_prev = chain.blocks[-1]
        try:
            p = find_nesting(xs, ys, start=tail_offset)
        except NoNesting as exc:
            raise NoNesting(
                f"blocks k={k_prev} and k={block.k} admit no nested gap",
                k_from=k_prev, k_to=block.k) from exc
        # d: offset of the least tail element above the next block's minimum.
        first_above = bisect.bisect_right(xs, ys[0], lo=tail_offset)
        d = xs[first_above] - ys[0]
        merged = splice_at(xs, ys, p)

        chain.splice_log.append(SpliceRecord(
            k_from=k_prev, k_to=block.k, u=p.u, v=p.v, d=d,
            i_from=chain.witnesses[p.u][0], i_to=block.index_of(p.v)))
        chain.witnesses = chain.witnesses[:p.u + 1] + [
            block.witness(q) for q in range(p.v + 1, len(block))]
        chain.values = merged
        chain.blocks.append(block.k)
        tail_offset = p.u + 1
    return chain
