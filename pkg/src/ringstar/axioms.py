"""Exhaustive and sampled validation of the *-ring axioms.

Failures are report content, never exceptions: each axiom row carries a
pass flag and, on failure, a concrete witness tuple of element literals.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import config
from .rings import FiniteStarRing, nat_scalar_block
from .util import chunk_ranges, prime_factors, rows_per_chunk


@dataclass
class AxiomCheck:
    name: str
    passed: bool
    counterexample: tuple[str, ...] | None
    checked: int


@dataclass
class ValidationReport:
    ring: str
    mode: str
    seed: int
    checks: list[AxiomCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[AxiomCheck]:
        return [c for c in self.checks if not c.passed]


def _first_failure(ring: FiniteStarRing, bad: np.ndarray, *index_arrays) -> tuple[str, ...] | None:
    if not bad.any():
        return None
    pos = np.unravel_index(int(np.argmax(bad.ravel())), bad.shape)
    return tuple(
        ring.format_element(int(np.broadcast_to(np.asarray(arr), bad.shape)[pos]))
        for arr in index_arrays
    )


class _Scanner:
    """Runs each axiom over exhaustive chunked grids or over sampled tuples."""

    def __init__(self, ring: FiniteStarRing, mode: str, sample: int, seed: int):
        self.ring = ring
        self.exhaustive = mode == "exhaustive"
        self.sample = sample
        self.seed = seed
        self.n = ring.order

    def run(self, name: str, arity: int, predicate) -> AxiomCheck:
        """predicate(a, b, c) -> bool array of failures (True = violated)."""
        ring = self.ring
        if self.exhaustive:
            checked = self.n**arity
            if arity == 1:
                args = (np.arange(self.n, dtype=np.int64),)
                bad = predicate(*args)
                return AxiomCheck(name, not bad.any(), _first_failure(ring, bad, *args), checked)
            idx = np.arange(self.n, dtype=np.int64)
            if arity == 2:
                for lo, hi in chunk_ranges(self.n, rows_per_chunk(self.n)):
                    a = idx[lo:hi, None]
                    b = idx[None, :]
                    bad = predicate(a, b)
                    if bad.any():
                        return AxiomCheck(name, False, _first_failure(ring, bad, a, b), checked)
                return AxiomCheck(name, True, None, checked)
            for lo, hi in chunk_ranges(self.n, max(1, rows_per_chunk(self.n * self.n))):
                a = idx[lo:hi, None, None]
                b = idx[None, :, None]
                c = idx[None, None, :]
                bad = predicate(a, b, c)
                if bad.any():
                    return AxiomCheck(name, False, _first_failure(ring, bad, a, b, c), checked)
            return AxiomCheck(name, True, None, checked)
        rng = np.random.default_rng((self.seed, zlib.crc32(name.encode())))
        draws = rng.integers(0, self.n, size=(arity, self.sample), dtype=np.int64)
        bad = predicate(*draws)
        return AxiomCheck(name, not bad.any(), _first_failure(self.ring, bad, *draws), self.sample)


def validate_axioms(
    ring: FiniteStarRing,
    mode: str = "auto",
    sample: int = config.SAMPLE_TUPLES,
    seed: int = config.SAMPLE_SEED,
) -> ValidationReport:
    """Check every *-ring axiom; exhaustive below the axiom bound, sampled above.

    mode: "auto" | "exhaustive" | "sampled".
    """
    if mode == "auto":
        mode = "exhaustive" if ring.order <= config.AXIOM_EXHAUSTIVE_BOUND else "sampled"
    if mode not in ("exhaustive", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")
    label = "exhaustive" if mode == "exhaustive" else f"sampled({sample})"
    report = ValidationReport(ring.name, label, seed)
    scan = _Scanner(ring, mode, sample, seed)
    add, mul, neg, star = ring.add_block, ring.mul_block, ring.neg_block, ring.star_block
    zero = ring.zero_index

    report.checks.append(
        scan.run("add_associative", 3, lambda a, b, c: add(add(a, b), c) != add(a, add(b, c)))
    )
    report.checks.append(scan.run("add_commutative", 2, lambda a, b: add(a, b) != add(b, a)))
    report.checks.append(scan.run("zero_identity", 1, lambda a: add(a, zero) != a))
    report.checks.append(scan.run("additive_inverse", 1, lambda a: add(a, neg(a)) != zero))
    report.checks.append(
        scan.run("mul_associative", 3, lambda a, b, c: mul(mul(a, b), c) != mul(a, mul(b, c)))
    )
    report.checks.append(
        scan.run("left_distributive", 3, lambda a, b, c: mul(a, add(b, c)) != add(mul(a, b), mul(a, c)))
    )
    report.checks.append(
        scan.run("right_distributive", 3, lambda a, b, c: mul(add(a, b), c) != add(mul(a, c), mul(b, c)))
    )
    report.checks.append(scan.run("star_additive", 2, lambda a, b: star(add(a, b)) != add(star(a), star(b))))
    report.checks.append(
        scan.run("star_antimultiplicative", 2, lambda a, b: star(mul(a, b)) != mul(star(b), star(a)))
    )
    report.checks.append(scan.run("star_involutive", 1, lambda a: star(star(a)) != a))

    if ring.has_unity:
        one = ring.unity_index
        report.checks.append(
            scan.run("unity_laws", 1, lambda a: (mul(one, a) != a) | (mul(a, one) != a))
        )
        star_fixes_unity = int(ring.star_block(one)) == one
        report.checks.append(
            AxiomCheck("unity_self_adjoint", star_fixes_unity,
                       None if star_fixes_unity else (ring.format_element(one),), 1)
        )

    char = ring.characteristic
    report.checks.append(
        scan.run("characteristic_annihilates", 1,
                 lambda a: nat_scalar_block(ring, char, a) != zero)
    )
    minimal = True
    witness = None
    for q in prime_factors(char):
        multiples = nat_scalar_block(ring, char // q, np.arange(ring.order, dtype=np.int64))
        if (multiples == zero).all():
            minimal = False
            witness = (str(char // q),)
            break
    report.checks.append(AxiomCheck("characteristic_minimal", minimal, witness, len(prime_factors(char))))
    return report
