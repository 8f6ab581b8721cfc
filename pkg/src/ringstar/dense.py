"""Cached vectorized views of a ring: tables, masks, projections, covers.

A DenseModel materializes the full multiplication table only when the
carrier fits under the table bound; every algorithm that may face larger
rings goes through the chunked row interfaces instead.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from . import config
from .errors import SizeLimitExceeded
from .rings import Element, FiniteStarRing, additive_order, nat_scalar_block
from .util import chunk_ranges, pack_rows, rows_per_chunk

_MODELS: dict[FiniteStarRing, "DenseModel"] = {}


def dense(ring: FiniteStarRing) -> "DenseModel":
    model = _MODELS.get(ring)
    if model is None:
        model = DenseModel(ring)
        _MODELS[ring] = model
    return model


class DenseModel:
    def __init__(self, ring: FiniteStarRing, table_bound: int = config.TABLE_BOUND):
        self.ring = ring
        self.n = ring.order
        self.table_bound = table_bound

    @cached_property
    def idx(self) -> np.ndarray:
        return np.arange(self.n, dtype=np.int64)

    @cached_property
    def star(self) -> np.ndarray:
        return self.ring.star_block(self.idx)

    @cached_property
    def neg(self) -> np.ndarray:
        return self.ring.neg_block(self.idx)

    @cached_property
    def has_table(self) -> bool:
        return self.n <= self.table_bound

    @cached_property
    def mul_table(self) -> np.ndarray | None:
        if not self.has_table:
            return None
        out = np.empty((self.n, self.n), dtype=np.int32)
        for lo, hi in chunk_ranges(self.n, rows_per_chunk(self.n, 2_000_000)):
            out[lo:hi] = self.ring.mul_block(self.idx[lo:hi, None], self.idx[None, :])
        return out

    def mul_rows(self, rows) -> np.ndarray:
        """Products rows[k] * y for all y; shape (len(rows), n)."""
        rows = np.asarray(rows, dtype=np.int64)
        if self.mul_table is not None:
            return self.mul_table[rows].astype(np.int64)
        return self.ring.mul_block(rows[:, None], self.idx[None, :])

    def mul_cols(self, cols) -> np.ndarray:
        """Products x * cols[k] for all x; shape (len(cols), n)."""
        cols = np.asarray(cols, dtype=np.int64)
        if self.mul_table is not None:
            return self.mul_table[:, cols].T.astype(np.int64)
        return self.ring.mul_block(self.idx[None, :], cols[:, None])

    def iter_mul_rows(self, chunk_cells: int = 4_000_000):
        """Yield (lo, hi, block) covering all rows of the multiplication table."""
        for lo, hi in chunk_ranges(self.n, rows_per_chunk(self.n, chunk_cells)):
            yield lo, hi, self.mul_rows(self.idx[lo:hi])

    @cached_property
    def diag(self) -> np.ndarray:
        """x * x for every x."""
        return self.ring.mul_block(self.idx, self.idx)

    @cached_property
    def zero_mask(self) -> np.ndarray | None:
        """Boolean table [x, y] = (x*y == 0); only under the table bound."""
        if self.mul_table is None:
            return None
        return self.mul_table == self.ring.zero_index

    @cached_property
    def comm_mask(self) -> np.ndarray | None:
        """Boolean table [x, y] = (x*y == y*x); only under the table bound."""
        if self.mul_table is None:
            return None
        return self.mul_table == self.mul_table.T

    # -- projections ---------------------------------------------------------

    @cached_property
    def projection_idx(self) -> np.ndarray:
        mask = (self.diag == self.idx) & (self.star == self.idx)
        return np.where(mask)[0].astype(np.int64)

    @cached_property
    def projection_central(self) -> np.ndarray:
        rows = self.mul_rows(self.projection_idx)
        cols = self.mul_cols(self.projection_idx)
        return (rows == cols).all(axis=1)

    @cached_property
    def central_proj_idx(self) -> np.ndarray:
        return self.projection_idx[self.projection_central]

    def projections(self) -> list[Element]:
        return [Element(self.ring, int(i)) for i in self.projection_idx]

    @cached_property
    def idempotent_idx(self) -> np.ndarray:
        return np.where(self.diag == self.idx)[0].astype(np.int64)

    # -- generated ideals ------------------------------------------------------

    def right_ideal_members(self, e: int) -> np.ndarray:
        """Members of the right ideal generated by e: eR, plus Ze when unit-less."""
        values = np.unique(self.mul_rows(np.array([e]))[0])
        if self.ring.unity_index is None:
            mults = _additive_multiples(self.ring, e)
            values = np.unique(self.ring.add_block(mults[:, None], values[None, :]))
        return values

    def left_ideal_members(self, e: int) -> np.ndarray:
        values = np.unique(self.mul_cols(np.array([e]))[0])
        if self.ring.unity_index is None:
            mults = _additive_multiples(self.ring, e)
            values = np.unique(self.ring.add_block(mults[:, None], values[None, :]))
        return values

    def members_mask(self, members: np.ndarray) -> np.ndarray:
        mask = np.zeros(self.n, dtype=bool)
        mask[members] = True
        return mask

    @cached_property
    def proj_right_ideal_packed(self) -> dict[bytes, int]:
        """Packed membership mask of each projection's generated right ideal."""
        out: dict[bytes, int] = {}
        for e in self.projection_idx:
            key = pack_rows(self.members_mask(self.right_ideal_members(int(e)))).tobytes()
            out.setdefault(key, int(e))
        return out

    @cached_property
    def proj_left_ideal_packed(self) -> dict[bytes, int]:
        out: dict[bytes, int] = {}
        for e in self.projection_idx:
            key = pack_rows(self.members_mask(self.left_ideal_members(int(e)))).tobytes()
            out.setdefault(key, int(e))
        return out

    # -- annihilator masks ------------------------------------------------------

    @cached_property
    def right_ideal_membership(self) -> np.ndarray:
        """Boolean table [a, v] = (v in aR); requires the table bound."""
        self._require_table()
        out = np.zeros((self.n, self.n), dtype=bool)
        rows = np.repeat(self.idx, self.n)
        out[rows, self.mul_table.ravel().astype(np.int64)] = True
        return out

    @cached_property
    def left_ideal_membership(self) -> np.ndarray:
        """Boolean table [a, v] = (v in Ra)."""
        self._require_table()
        out = np.zeros((self.n, self.n), dtype=bool)
        cols = np.tile(self.idx, self.n)
        out[cols, self.mul_table.ravel().astype(np.int64)] = True
        return out

    @cached_property
    def principal_right_ann(self) -> np.ndarray:
        """Boolean table [a, y] = (a R y == 0), deduplicated over equal sets aR."""
        self._require_table()
        packed = pack_rows(self.right_ideal_membership)
        _, first, inverse = np.unique(
            packed, axis=0, return_index=True, return_inverse=True
        )
        masks = np.empty((len(first), self.n), dtype=bool)
        for k, a in enumerate(first):
            members = np.where(self.right_ideal_membership[a])[0]
            masks[k] = self.zero_mask[members].all(axis=0)
        return masks[inverse.reshape(-1)]

    @cached_property
    def principal_left_ann(self) -> np.ndarray:
        """Boolean table [a, y] = (y R a == 0)."""
        self._require_table()
        packed = pack_rows(self.left_ideal_membership)
        _, first, inverse = np.unique(
            packed, axis=0, return_index=True, return_inverse=True
        )
        masks = np.empty((len(first), self.n), dtype=bool)
        for k, a in enumerate(first):
            members = np.where(self.left_ideal_membership[a])[0]
            masks[k] = self.zero_mask[:, members].all(axis=1)
        return masks[inverse.reshape(-1)]

    # -- central covers ----------------------------------------------------------

    @cached_property
    def cover_index(self) -> np.ndarray:
        """Central cover of each element, -1 where none exists."""
        central = self.central_proj_idx
        k = len(central)
        if k == 0:
            return np.full(self.n, -1, dtype=np.int64)
        rows = self.mul_rows(central)
        is_cand = rows == self.idx[None, :]
        prod = self.ring.mul_block(central[:, None], central[None, :])
        leq = prod == central[:, None]
        weights = 1 << np.arange(k, dtype=np.int64)
        signatures = (is_cand.astype(np.int64) * weights[:, None]).sum(axis=0)
        least_for: dict[int, int] = {}
        out = np.empty(self.n, dtype=np.int64)
        for x in range(self.n):
            sig = int(signatures[x])
            if sig not in least_for:
                cand = np.where(is_cand[:, x])[0]
                least = -1
                for j in cand:
                    if leq[j, cand].all():
                        least = int(central[j])
                        break
                least_for[sig] = least
            out[x] = least_for[sig]
        return out

    def _require_table(self):
        if not self.has_table:
            raise SizeLimitExceeded(
                f"operation requires a full table but {self.ring.name} has order {self.n}",
                self.table_bound,
            )


def _additive_multiples(ring: FiniteStarRing, e: int) -> np.ndarray:
    ord_e = additive_order(ring, e)
    out = np.empty(ord_e, dtype=np.int64)
    out[0] = ring.zero_index
    cur = ring.zero_index
    for k in range(1, ord_e):
        cur = int(ring.add_block(cur, e))
        out[k] = cur
    return out


def additive_closure(ring: FiniteStarRing, seed_indices) -> np.ndarray:
    """Subgroup of (carrier, +) generated by the seeds, as sorted indices.

    Incremental: each unabsorbed generator at least doubles the subgroup,
    so the loop runs O(log order) effective rounds.
    """
    current = np.array([ring.zero_index], dtype=np.int64)
    for g in np.unique(np.asarray(seed_indices, dtype=np.int64)):
        pos = int(np.searchsorted(current, g))
        if pos < len(current) and current[pos] == g:
            continue
        mults = _additive_multiples(ring, int(g))
        current = np.unique(ring.add_block(current[:, None], mults[None, :]))
    return current


def nat_multiple_vector(ring: FiniteStarRing, k: int) -> np.ndarray:
    """k * x for every carrier element x."""
    idx = np.arange(ring.order, dtype=np.int64)
    return nat_scalar_block(ring, k, idx)
