"""The quadratic sequences x_i, y_j, the basis B and the convex blocks B_k.

With ``D = 1000 n^3`` the clearing identities are

    x_i * D = D*i + (1000n + 1) * i^2
    y_j * D = D*j - 1000n * j^2
    b_i^(k) * D = D*k - 1000n*k^2 + i^2 + 2000n*k*i

so every value is an exact integer numerator.
"""

from __future__ import annotations

import csv
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from pathlib import Path

from .params import Params, ScaledInt


def _check_basis_index(params: Params, idx: int, name: str) -> None:
    if not -2 * params.n <= idx <= 2 * params.n:
        raise IndexError(f"{name}={idx} outside [-2n, 2n] for n={params.n}")


def x_num(params: Params, i: int) -> int:
    return params.D * i + (params.alpha_scaled + params.gamma_scaled) * i * i


def y_num(params: Params, j: int) -> int:
    return params.D * j - params.alpha_scaled * j * j


def x_value(params: Params, i: int) -> ScaledInt:
    _check_basis_index(params, i, "i")
    return ScaledInt(x_num(params, i), params.D)


def y_value(params: Params, j: int) -> ScaledInt:
    _check_basis_index(params, j, "j")
    return ScaledInt(y_num(params, j), params.D)


def block_num(params: Params, k: int, i: int) -> int:
    """Numerator of the i-th element of block k (no range checks)."""
    n = params.n
    return params.D * k - params.alpha_scaled * k * k + i * i + 2000 * n * k * i


def gap_num(params: Params, k: int, i: int) -> int:
    return 2 * i + 1 + 2000 * params.n * k


def gap(params: Params, k: int, i: int) -> ScaledInt:
    """Scaled difference between entries i+1 and i of block k."""
    if not -params.n <= i <= 2 * params.n - 1:
        raise IndexError(f"gap index {i} outside [-n, 2n-1] for n={params.n}")
    return ScaledInt(gap_num(params, k, i), params.D)


@dataclass(frozen=True)
class Basis:
    params: Params
    xs: dict[int, int]
    ys: dict[int, int]
    elements: tuple[int, ...]
    xs_increasing: bool
    ys_increasing: bool

    @property
    def size(self) -> int:
        return len(self.elements)


def _strictly_increasing(values: list[int]) -> bool:
    return all(a < b for a, b in zip(values, values[1:]))


def build_basis(params: Params) -> Basis:
    """Build B = {x_i} U {y_j} for i, j in [-2n, 2n].

    For n <= 3 neither sequence is monotone on the full index range (the
    gaps 1 + (alpha+gamma)(2i+1) and 1 - alpha(2j+1) reach zero or below at
    the ends), so repeated values can occur; monotonicity is reported, not
    assumed.
    """
    idx = range(-2 * params.n, 2 * params.n + 1)
    xs = {i: x_num(params, i) for i in idx}
    ys = {j: y_num(params, j) for j in idx}
    elements = tuple(sorted(set(xs.values()) | set(ys.values())))
    return Basis(
        params=params, xs=xs, ys=ys, elements=elements,
        xs_increasing=_strictly_increasing([xs[i] for i in idx]),
        ys_increasing=_strictly_increasing([ys[j] for j in idx]),
    )


@dataclass(frozen=True)
class Block:
    """Block k truncated to i in [-n, 2n]; ``values[p]`` is entry ``i = p - n``."""

    k: int
    n: int
    values: tuple[int, ...]

    @property
    def i_min(self) -> int:
        return -self.n

    def index_of(self, position: int) -> int:
        return position - self.n

    def witness(self, position: int) -> tuple[int, int]:
        i = position - self.n
        return i, self.k - i

    def entries(self) -> Iterator[tuple[int, int, tuple[int, int]]]:
        for p, value in enumerate(self.values):
            i = p - self.n
            yield i, value, (i, self.k - i)

    def __len__(self) -> int:
        return len(self.values)


def build_block(params: Params, k: int) -> Block:
    n = params.n
    if not 0 < k <= n:
        raise ValueError(f"block index k={k} outside (0, n] for n={n}")
    base = params.D * k - params.alpha_scaled * k * k
    step = 2000 * n * k
    values = tuple(base + i * i + step * i for i in range(-n, 2 * n + 1))
    return Block(k=k, n=n, values=values)


def write_numerator_csv(path: Path, rows: Iterable[tuple], D: int,
                        columns: tuple[str, ...] = ("index", "numerator")) -> None:
    """Write rows of integer columns; ``D`` goes into a leading comment line."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(f"# D={D}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([str(v) for v in row])


def read_numerator_csv(path: Path) -> tuple[int, list[dict[str, int]]]:
    with open(path, encoding="utf-8") as fh:
        first = fh.readline().strip()
        if not first.startswith("# D="):
            raise ValueError(f"{path}: missing '# D=' header")
        D = int(first[4:])
        rows = [{key: int(v) for key, v in row.items()} for row in csv.DictReader(fh)]
    return D, rows
