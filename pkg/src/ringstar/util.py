"""Small shared helpers: number theory, chunking, and deterministic output."""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Iterator, Sequence, TypeVar

import numpy as np

T = TypeVar("T")
U = TypeVar("U")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors in increasing order."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


def is_squarefree(n: int) -> bool:
    f = 2
    while f * f <= n:
        if n % (f * f) == 0:
            return False
        if n % f == 0:
            n //= f
        f += 1 if f == 2 else 2
    return True


def lcm_all(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, v)
    return out


def chunk_ranges(n: int, chunk: int) -> Iterator[tuple[int, int]]:
    """Yield half-open (lo, hi) ranges covering range(n)."""
    lo = 0
    while lo < n:
        hi = min(n, lo + chunk)
        yield lo, hi
        lo = hi


def rows_per_chunk(n: int, target_cells: int = 4_000_000) -> int:
    """Chunk height keeping row-block intermediates near `target_cells` entries."""
    return max(1, target_cells // max(n, 1))


def pack_mask(mask: np.ndarray) -> bytes:
    """Canonical bytes for a boolean vector (or each row of a matrix)."""
    return np.packbits(mask, axis=-1).tobytes()


def pack_rows(mask: np.ndarray) -> np.ndarray:
    return np.packbits(mask, axis=-1)


def parallel_map(fn: Callable[[T], U], items: Sequence[T], jobs: int | None = None) -> list[U]:
    """Order-preserving map, threaded when jobs != 1.

    Results are pure functions of the inputs, so the schedule cannot change them.
    """
    items = list(items)
    if jobs == 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def stable_json(payload: object) -> str:
    """Deterministic JSON: fixed separators and key order as constructed."""
    return json.dumps(payload, indent=2, ensure_ascii=True) + "\n"
