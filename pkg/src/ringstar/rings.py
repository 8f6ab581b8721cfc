"""Finite rings with involution: carriers, arithmetic, and constructors.

Every ring kind stores elements as canonical integer indices and provides
vectorized "block" operations over numpy index arrays; the element-level
API is a thin wrapper over those blocks, so the two can never disagree.
Rings are immutable after construction and all operations are pure, which
makes concurrent reads and parallel carrier scans safe.
"""

from __future__ import annotations

import math
from typing import Iterator, Sequence

import numpy as np

from . import config
from .errors import InvalidParameter, MixedRings, ParseError, SizeLimitExceeded
from .expr import GF, Mat, Named, Product, RingExpr, Zmod, contains_named
from .util import is_prime, lcm_all


class Element:
    """A member of one specific ring, addressed by canonical index.

    Equality is decidable and canonical: two elements are equal iff their
    rings are equal and their indices coincide. The structured coordinate
    (int for modular rings, nested tuples for matrices and products, a pair
    for unitifications) is available as `.coord`.
    """

    __slots__ = ("ring", "index")

    def __init__(self, ring: "FiniteStarRing", index: int):
        self.ring = ring
        self.index = int(index)

    @property
    def coord(self):
        return self.ring.coord_of(self.index)

    def star(self) -> "Element":
        return self.ring.star(self)

    def __add__(self, other):
        return self.ring.add(self, other)

    def __sub__(self, other):
        return self.ring.sub(self, other)

    def __neg__(self):
        return self.ring.neg(self)

    def __mul__(self, other):
        return self.ring.mul(self, other)

    def __eq__(self, other):
        return (
            isinstance(other, Element)
            and self.index == other.index
            and self.ring == other.ring
        )

    def __hash__(self):
        return hash((hash(self.ring), self.index))

    def __repr__(self):
        return f"<{self.ring.format_element(self.index)} in {self.ring.name}>"


class FiniteStarRing:
    """Finite carrier with ring operations, involution, and optional unity."""

    def __init__(
        self,
        name: str,
        order: int,
        characteristic: int,
        construction: RingExpr,
        zero_index: int,
        unity_index: int | None,
    ):
        self.name = name
        self.order = order
        self.characteristic = characteristic
        self.construction = construction
        self.zero_index = zero_index
        self.unity_index = unity_index
        canonical = construction is not None and not contains_named(construction)
        self._canonical = construction if canonical else None

    # -- identity ---------------------------------------------------------

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FiniteStarRing):
            return NotImplemented
        if self._canonical is not None and other._canonical is not None:
            return self._canonical == other._canonical
        return False

    def __hash__(self):
        if self._canonical is not None:
            return hash(self._canonical)
        return object.__hash__(self)

    def __repr__(self):
        return f"<ring {self.name} of order {self.order}>"

    # -- carrier ----------------------------------------------------------

    @property
    def zero(self) -> Element:
        return Element(self, self.zero_index)

    @property
    def unity(self) -> Element | None:
        return None if self.unity_index is None else Element(self, self.unity_index)

    @property
    def has_unity(self) -> bool:
        return self.unity_index is not None

    def elements(self) -> Iterator[Element]:
        """Enumerate the carrier exactly once, in canonical index order."""
        for i in range(self.order):
            yield Element(self, i)

    def element(self, index: int) -> Element:
        if not 0 <= index < self.order:
            raise InvalidParameter(f"index {index} outside carrier of {self.name}")
        return Element(self, index)

    def coord_of(self, index: int):
        raise NotImplementedError

    def index_of(self, coord) -> int:
        raise NotImplementedError

    # -- vectorized index arithmetic ---------------------------------------

    def add_block(self, i, j) -> np.ndarray:
        raise NotImplementedError

    def mul_block(self, i, j) -> np.ndarray:
        raise NotImplementedError

    def neg_block(self, i) -> np.ndarray:
        raise NotImplementedError

    def star_block(self, i) -> np.ndarray:
        raise NotImplementedError

    # -- element-level operations ------------------------------------------

    def _own(self, a: Element) -> int:
        if not isinstance(a, Element):
            raise TypeError(f"expected Element, got {type(a).__name__}")
        if a.ring != self:
            raise MixedRings(f"element of {a.ring.name} used in {self.name}")
        return a.index

    def add(self, a: Element, b: Element) -> Element:
        return Element(self, int(self.add_block(self._own(a), self._own(b))))

    def sub(self, a: Element, b: Element) -> Element:
        nb = int(self.neg_block(self._own(b)))
        return Element(self, int(self.add_block(self._own(a), nb)))

    def neg(self, a: Element) -> Element:
        return Element(self, int(self.neg_block(self._own(a))))

    def mul(self, a: Element, b: Element) -> Element:
        return Element(self, int(self.mul_block(self._own(a), self._own(b))))

    def star(self, a: Element) -> Element:
        return Element(self, int(self.star_block(self._own(a))))

    # -- literals -----------------------------------------------------------

    def format_element(self, index: int) -> str:
        raise NotImplementedError

    def parse_element(self, text: str) -> Element:
        index = self._parse_literal(text.strip())
        return Element(self, index)

    def _parse_literal(self, text: str) -> int:
        raise NotImplementedError


def nat_scalar_block(ring: FiniteStarRing, k: int, i) -> np.ndarray:
    """k-fold additive multiple of the indices in `i` (k >= 0)."""
    i = np.asarray(i, dtype=np.int64)
    result = np.full(i.shape, ring.zero_index, dtype=np.int64)
    addend = i
    k = int(k)
    if k < 0:
        raise InvalidParameter("natural multiple requires k >= 0")
    while k > 0:
        if k & 1:
            result = ring.add_block(result, addend)
        k >>= 1
        if k:
            addend = ring.add_block(addend, addend)
    return result


def additive_order(ring: FiniteStarRing, index: int) -> int:
    cur = index
    t = 1
    while cur != ring.zero_index:
        cur = int(ring.add_block(cur, index))
        t += 1
    return t


def _parse_int(text: str) -> int:
    try:
        return int(text, 10)
    except ValueError:
        raise ParseError(f"expected an integer literal, got {text!r}", 1, 1, ("INT",)) from None


def _split_top(text: str, sep: str) -> list[str]:
    """Split on `sep` at bracket depth zero (brackets: [], ())."""
    parts, depth, start = [], 0, 0
    for pos, ch in enumerate(text):
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced brackets in element literal", 1, pos + 1)
        elif ch == sep and depth == 0:
            parts.append(text[start:pos])
            start = pos + 1
    if depth != 0:
        raise ParseError("unbalanced brackets in element literal", 1, len(text))
    parts.append(text[start:])
    return parts


class ZmodRing(FiniteStarRing):
    """Integers modulo m with the identity involution; gf(p) when prime."""

    def __init__(self, m: int, field: bool = False):
        if m < 2:
            raise InvalidParameter(f"zmod modulus must be >= 2, got {m}")
        if field and not is_prime(m):
            raise InvalidParameter(f"gf argument must be prime, got {m}")
        expr = GF(m) if field else Zmod(m)
        super().__init__(expr.pretty(), m, m, expr, 0, 1)
        self.m = m
        self.is_field = field and is_prime(m)

    def coord_of(self, index):
        return index

    def index_of(self, coord):
        return int(coord) % self.m

    def add_block(self, i, j):
        return (np.asarray(i, dtype=np.int64) + np.asarray(j, dtype=np.int64)) % self.m

    def mul_block(self, i, j):
        return (np.asarray(i, dtype=np.int64) * np.asarray(j, dtype=np.int64)) % self.m

    def neg_block(self, i):
        return (-np.asarray(i, dtype=np.int64)) % self.m

    def star_block(self, i):
        return np.asarray(i, dtype=np.int64).copy()

    def format_element(self, index):
        return str(index)

    def _parse_literal(self, text):
        return _parse_int(text) % self.m


class MatrixRing(FiniteStarRing):
    """n x n matrices over a unital base, with entrywise-star-then-transpose."""

    def __init__(self, n: int, base: FiniteStarRing, bound: int = config.CARRIER_BOUND):
        if n < 1:
            raise InvalidParameter(f"matrix dimension must be >= 1, got {n}")
        if not base.has_unity:
            raise InvalidParameter("matrix ring needs a unital base ring")
        order = base.order ** (n * n)
        if order > bound:
            raise SizeLimitExceeded(
                f"mat({n}, {base.name}) has order {order}", bound
            )
        expr = Mat(n, base.construction)
        self.n = n
        self.base = base
        self._radix = np.array(
            [base.order ** k for k in reversed(range(n * n))], dtype=np.int64
        )
        unity = np.zeros((n, n), dtype=np.int64)
        for d in range(n):
            unity[d, d] = base.unity_index
        super().__init__(
            expr.pretty(),
            order,
            base.characteristic,
            expr,
            0,
            int(self._encode(unity)),
        )

    def _decode(self, i) -> np.ndarray:
        i = np.asarray(i, dtype=np.int64)
        nn = self.n * self.n
        out = np.empty(i.shape + (nn,), dtype=np.int64)
        rem = i.copy()
        for k in reversed(range(nn)):
            out[..., k] = rem % self.base.order
            rem //= self.base.order
        return out.reshape(i.shape + (self.n, self.n))

    def _encode(self, mats: np.ndarray) -> np.ndarray:
        flat = mats.reshape(mats.shape[:-2] + (self.n * self.n,))
        return (flat * self._radix).sum(axis=-1)

    def coord_of(self, index):
        mat = self._decode(np.int64(index))
        return tuple(
            tuple(self.base.coord_of(int(mat[r, c])) for c in range(self.n))
            for r in range(self.n)
        )

    def index_of(self, coord):
        mat = np.array(
            [[self.base.index_of(coord[r][c]) for c in range(self.n)] for r in range(self.n)],
            dtype=np.int64,
        )
        return int(self._encode(mat))

    def _mat_mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        base = self.base
        if isinstance(base, ZmodRing):
            return (a @ b) % base.m
        out = np.empty(np.broadcast_shapes(a.shape, b.shape), dtype=np.int64)
        for r in range(self.n):
            for c in range(self.n):
                acc = base.mul_block(a[..., r, 0], b[..., 0, c])
                for k in range(1, self.n):
                    acc = base.add_block(acc, base.mul_block(a[..., r, k], b[..., k, c]))
                out[..., r, c] = acc
        return out

    def add_block(self, i, j):
        i, j = np.broadcast_arrays(np.asarray(i, dtype=np.int64), np.asarray(j, dtype=np.int64))
        a, b = self._decode(i), self._decode(j)
        if isinstance(self.base, ZmodRing):
            return self._encode((a + b) % self.base.m)
        return self._encode(self.base.add_block(a, b))

    def mul_block(self, i, j):
        i, j = np.broadcast_arrays(np.asarray(i, dtype=np.int64), np.asarray(j, dtype=np.int64))
        return self._encode(self._mat_mul(self._decode(i), self._decode(j)))

    def neg_block(self, i):
        a = self._decode(np.asarray(i, dtype=np.int64))
        if isinstance(self.base, ZmodRing):
            return self._encode((-a) % self.base.m)
        return self._encode(self.base.neg_block(a))

    def star_block(self, i):
        a = self._decode(np.asarray(i, dtype=np.int64))
        starred = (
            a if isinstance(self.base, ZmodRing) else self.base.star_block(a)
        )
        return self._encode(starred.swapaxes(-1, -2))

    def format_element(self, index):
        mat = self._decode(np.int64(index))
        rows = []
        for r in range(self.n):
            rows.append("[" + ",".join(self.base.format_element(int(mat[r, c])) for c in range(self.n)) + "]")
        return "[" + ",".join(rows) + "]"

    def _parse_literal(self, text):
        if not (text.startswith("[") and text.endswith("]")):
            raise ParseError("matrix literal must look like [[a,b],[c,d]]", 1, 1, ("[",))
        rows = _split_top(text[1:-1].strip(), ",")
        if len(rows) != self.n:
            raise ParseError(f"expected {self.n} matrix rows, got {len(rows)}", 1, 1)
        mat = np.empty((self.n, self.n), dtype=np.int64)
        for r, row_text in enumerate(rows):
            row_text = row_text.strip()
            if not (row_text.startswith("[") and row_text.endswith("]")):
                raise ParseError("matrix row must look like [a,b]", 1, 1, ("[",))
            cells = _split_top(row_text[1:-1].strip(), ",")
            if len(cells) != self.n:
                raise ParseError(f"expected {self.n} entries per row, got {len(cells)}", 1, 1)
            for c, cell in enumerate(cells):
                mat[r, c] = self.base._parse_literal(cell.strip())
        return int(self._encode(mat))


class ProductRing(FiniteStarRing):
    """External direct product with componentwise operations and involution."""

    def __init__(self, factors: Sequence[FiniteStarRing], bound: int = config.CARRIER_BOUND):
        factors = list(factors)
        if len(factors) < 2:
            raise InvalidParameter("product needs at least two factors")
        order = math.prod(f.order for f in factors)
        if order > bound:
            raise SizeLimitExceeded(f"product of orders has order {order}", bound)
        self.factors = factors
        suffix = [1] * len(factors)
        for k in reversed(range(len(factors) - 1)):
            suffix[k] = suffix[k + 1] * factors[k + 1].order
        self._suffix = suffix
        expr = Product(tuple(f.construction for f in factors))
        unity_index = None
        if all(f.has_unity for f in factors):
            unity_index = sum(f.unity_index * s for f, s in zip(factors, suffix))
        zero_index = sum(f.zero_index * s for f, s in zip(factors, suffix))
        char = lcm_all(f.characteristic for f in factors)
        super().__init__(expr.pretty(), order, char, expr, zero_index, unity_index)

    def _split(self, i) -> list[np.ndarray]:
        i = np.asarray(i, dtype=np.int64)
        parts = []
        rem = i.copy()
        for f, s in zip(self.factors, self._suffix):
            parts.append((rem // s) % f.order)
        return parts

    def _join(self, parts: list[np.ndarray]) -> np.ndarray:
        out = np.zeros(np.broadcast_shapes(*(p.shape for p in parts)), dtype=np.int64)
        for p, s in zip(parts, self._suffix):
            out = out + p * s
        return out

    def coord_of(self, index):
        parts = self._split(np.int64(index))
        return tuple(f.coord_of(int(p)) for f, p in zip(self.factors, parts))

    def index_of(self, coord):
        return int(
            self._join([np.int64(f.index_of(c)) for f, c in zip(self.factors, coord)])
        )

    def add_block(self, i, j):
        pi, pj = self._split(i), self._split(j)
        return self._join([f.add_block(a, b) for f, a, b in zip(self.factors, pi, pj)])

    def mul_block(self, i, j):
        pi, pj = self._split(i), self._split(j)
        return self._join([f.mul_block(a, b) for f, a, b in zip(self.factors, pi, pj)])

    def neg_block(self, i):
        return self._join([f.neg_block(p) for f, p in zip(self.factors, self._split(i))])

    def star_block(self, i):
        return self._join([f.star_block(p) for f, p in zip(self.factors, self._split(i))])

    def format_element(self, index):
        parts = self._split(np.int64(index))
        return "(" + "; ".join(f.format_element(int(p)) for f, p in zip(self.factors, parts)) + ")"

    def _parse_literal(self, text):
        if not (text.startswith("(") and text.endswith(")")):
            raise ParseError("product literal must look like (x; y)", 1, 1, ("(",))
        parts = _split_top(text[1:-1].strip(), ";")
        if len(parts) != len(self.factors):
            raise ParseError(
                f"expected {len(self.factors)} components, got {len(parts)}", 1, 1
            )
        idxs = [f._parse_literal(p.strip()) for f, p in zip(self.factors, parts)]
        return int(self._join([np.int64(i) for i in idxs]))


class TableRing(FiniteStarRing):
    """Ring given by explicit operation tables (used for null rings and tests)."""

    def __init__(self, name: str, add: np.ndarray, mul: np.ndarray, star: np.ndarray):
        add = np.asarray(add, dtype=np.int64)
        mul = np.asarray(mul, dtype=np.int64)
        star = np.asarray(star, dtype=np.int64)
        n = add.shape[0]
        if add.shape != (n, n) or mul.shape != (n, n) or star.shape != (n,):
            raise InvalidParameter("table shapes must be (n,n), (n,n), (n,)")
        self._add = add
        self._mul = mul
        self._star = star
        zero_candidates = np.where((add == np.arange(n)[:, None]).all(axis=0))[0]
        if len(zero_candidates) != 1:
            raise InvalidParameter("table has no unique additive identity")
        zero = int(zero_candidates[0])
        self._neg = np.argmax(add == zero, axis=1)
        if not (add[np.arange(n), self._neg] == zero).all():
            raise InvalidParameter("table has an element without additive inverse")
        eye = np.arange(n)
        unity_candidates = np.where(
            (mul == eye[:, None]).all(axis=0) & (mul == eye[None, :]).all(axis=1)
        )[0]
        unity = int(unity_candidates[0]) if len(unity_candidates) else None
        super().__init__(name, n, 0, Named(name), zero, unity)
        self.characteristic = lcm_all(additive_order(self, i) for i in range(n))

    def coord_of(self, index):
        return index

    def index_of(self, coord):
        return int(coord)

    def add_block(self, i, j):
        return self._add[np.asarray(i, dtype=np.int64), np.asarray(j, dtype=np.int64)]

    def mul_block(self, i, j):
        return self._mul[np.asarray(i, dtype=np.int64), np.asarray(j, dtype=np.int64)]

    def neg_block(self, i):
        return self._neg[np.asarray(i, dtype=np.int64)]

    def star_block(self, i):
        return self._star[np.asarray(i, dtype=np.int64)]

    def format_element(self, index):
        return str(index)

    def _parse_literal(self, text):
        idx = _parse_int(text)
        if not 0 <= idx < self.order:
            raise ParseError(f"index {idx} outside carrier of {self.name}", 1, 1)
        return idx


class SubRing(FiniteStarRing):
    """A star-closed subring of an ambient ring, on a subset of its carrier."""

    def __init__(self, ambient: FiniteStarRing, member_indices: Sequence[int], name: str | None = None):
        members = np.unique(np.asarray(member_indices, dtype=np.int64))
        if len(members) == 0:
            raise InvalidParameter("subring needs a nonempty carrier")
        inv = np.full(ambient.order, -1, dtype=np.int64)
        inv[members] = np.arange(len(members))
        self.ambient = ambient
        self.members = members
        self._inv = inv
        for label, closed in (
            ("addition", inv[ambient.add_block(members[:, None], members[None, :])].min() >= 0),
            ("multiplication", inv[ambient.mul_block(members[:, None], members[None, :])].min() >= 0),
            ("star", inv[ambient.star_block(members)].min() >= 0),
        ):
            if not closed:
                raise InvalidParameter(f"subset is not closed under {label}")
        if int(inv[ambient.zero_index]) < 0:
            raise InvalidParameter("subset does not contain zero")
        name = name or f"sub[{len(members)}]({ambient.name})"
        local_mul = inv[ambient.mul_block(members[:, None], members[None, :])]
        eye = np.arange(len(members))
        unity_candidates = np.where(
            (local_mul == eye[:, None]).all(axis=0) & (local_mul == eye[None, :]).all(axis=1)
        )[0]
        unity = int(unity_candidates[0]) if len(unity_candidates) else None
        super().__init__(name, len(members), 0, Named(name), int(inv[ambient.zero_index]), unity)
        self.characteristic = lcm_all(additive_order(self, i) for i in range(len(members)))

    def coord_of(self, index):
        return self.ambient.coord_of(int(self.members[index]))

    def index_of(self, coord):
        amb = self.ambient.index_of(coord)
        local = int(self._inv[amb])
        if local < 0:
            raise InvalidParameter("coordinate is not a member of the subring")
        return local

    def _lift(self, i):
        return self.members[np.asarray(i, dtype=np.int64)]

    def add_block(self, i, j):
        return self._inv[self.ambient.add_block(self._lift(i), self._lift(j))]

    def mul_block(self, i, j):
        return self._inv[self.ambient.mul_block(self._lift(i), self._lift(j))]

    def neg_block(self, i):
        return self._inv[self.ambient.neg_block(self._lift(i))]

    def star_block(self, i):
        return self._inv[self.ambient.star_block(self._lift(i))]

    def format_element(self, index):
        return self.ambient.format_element(int(self.members[index]))

    def _parse_literal(self, text):
        amb = self.ambient._parse_literal(text)
        local = int(self._inv[amb])
        if local < 0:
            raise ParseError("literal names an element outside the subring", 1, 1)
        return local


# -- constructors -----------------------------------------------------------


def make_zmod(m: int) -> ZmodRing:
    """Modular integers with identity involution, unity 1, characteristic m."""
    return ZmodRing(m)


def make_gf(p: int) -> ZmodRing:
    """Prime field GF(p); identical carrier to zmod(p), flagged as a field."""
    return ZmodRing(p, field=True)


def make_matrix_ring(n: int, base: FiniteStarRing, bound: int = config.CARRIER_BOUND) -> MatrixRing:
    """n x n matrices over `base` (assumed axiom-valid and unital)."""
    return MatrixRing(n, base, bound=bound)


def make_product(factors: Sequence[FiniteStarRing], bound: int = config.CARRIER_BOUND) -> ProductRing:
    return ProductRing(factors, bound=bound)


def null_ring(m: int) -> TableRing:
    """Zero multiplication on the additive cyclic group of order m."""
    if m < 2:
        raise InvalidParameter(f"null ring order must be >= 2, got {m}")
    idx = np.arange(m, dtype=np.int64)
    add = (idx[:, None] + idx[None, :]) % m
    mul = np.zeros((m, m), dtype=np.int64)
    return TableRing(f"null({m})", add, mul, idx.copy())


def subring_generated(
    ambient: FiniteStarRing,
    generator_indices: Sequence[int],
    limit: int | None = None,
    name: str | None = None,
) -> SubRing | None:
    """Smallest star-closed subring containing the generators.

    Returns None once the closure exceeds `limit` members. Closure under
    addition alone already yields negatives and zero in a finite carrier.
    """
    seeds = np.unique(np.asarray(list(generator_indices) + [ambient.zero_index], dtype=np.int64))
    seeds = np.unique(np.concatenate([seeds, ambient.star_block(seeds)]))
    current = seeds
    while True:
        sums = ambient.add_block(current[:, None], current[None, :]).ravel()
        prods = ambient.mul_block(current[:, None], current[None, :]).ravel()
        grown = np.unique(np.concatenate([current, sums, prods]))
        if limit is not None and len(grown) > limit:
            return None
        if len(grown) == len(current):
            break
        current = grown
    return SubRing(ambient, current, name=name)
