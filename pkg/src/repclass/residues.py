"""Value types for subsets of Z_m and reference representation-function counts.

A subset of Z_m is stored as a bitmask (bit n set <=> the residue class of n
is in the set).  The representation function of A at n counts *ordered*
pairs (a, a') in A x A with a + a' == n (mod m); the cross variant counts
ordered pairs from A x B.  Everything here is an immutable value and every
operation is a pure function, so instances can be shared freely across
threads and processes.

``repfn_naive`` / ``cross_repfn`` are the definitional reference
implementations (direct pair counting).  The fast backends in
:mod:`repclass.backends` are contract-equal to them and are tested against
them.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from math import gcd
from typing import Iterable

from .errors import DomainError, NonUnitError

DEFAULT_MAX_MODULUS = 1 << 20


def max_modulus() -> int:
    """Largest accepted modulus; override with the REPCLASS_MAX_M env var."""
    raw = os.environ.get("REPCLASS_MAX_M")
    if not raw:
        return DEFAULT_MAX_MODULUS
    try:
        value = int(raw)
    except ValueError as exc:
        raise DomainError(f"REPCLASS_MAX_M is not an integer: {raw!r}") from exc
    if value < 1:
        raise DomainError(f"REPCLASS_MAX_M must be >= 1, got {value}")
    return value


def _check_modulus(m: int) -> None:
    if m < 1:
        raise DomainError(f"modulus must be >= 1, got {m}")
    cap = max_modulus()
    if m > cap:
        raise DomainError(
            f"modulus {m} exceeds the cap {cap} (set REPCLASS_MAX_M to raise it)"
        )


@dataclass(frozen=True)
class ResidueSet:
    """A subset of Z_m: modulus plus membership bitmask."""

    modulus: int
    mask: int

    def __post_init__(self):
        _check_modulus(self.modulus)
        if self.mask < 0 or self.mask >> self.modulus:
            raise DomainError(
                f"mask has bits outside 0..{self.modulus - 1}: {self.mask:#x}"
            )

    def cardinality(self) -> int:
        return self.mask.bit_count()

    def elements(self) -> tuple[int, ...]:
        """Member residues in increasing order."""
        out = []
        mask = self.mask
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return tuple(out)

    def __contains__(self, n: int) -> bool:
        return bool((self.mask >> (n % self.modulus)) & 1)

    def __str__(self) -> str:
        return f"{self.modulus}:{{{','.join(str(e) for e in self.elements())}}}"

    def __repr__(self) -> str:
        return f"ResidueSet({str(self)!r})"


@dataclass(frozen=True)
class RepFn:
    """Exact representation-function vector (counts[n] for n = 0..m-1)."""

    modulus: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if self.modulus < 1:
            raise DomainError(f"modulus must be >= 1, got {self.modulus}")
        if len(self.counts) != self.modulus:
            raise DomainError(
                f"counts has length {len(self.counts)}, expected {self.modulus}"
            )
        if any(c < 0 for c in self.counts):
            raise DomainError("counts must be nonnegative")

    def total(self) -> int:
        return sum(self.counts)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.counts) + ")"


@dataclass(frozen=True)
class HalfShiftRelation:
    """Outcome of testing B == A + m/2; defined only for even m."""

    holds: bool
    shift: int


def make_set(m: int, elements: Iterable[int]) -> ResidueSet:
    """Build a subset of Z_m; elements are reduced mod m, duplicates collapse."""
    _check_modulus(m)
    mask = 0
    for e in elements:
        mask |= 1 << (e % m)
    return ResidueSet(m, mask)


def full_set(m: int) -> ResidueSet:
    _check_modulus(m)
    return ResidueSet(m, (1 << m) - 1)


def contains(a: ResidueSet, n: int) -> int:
    """Characteristic-function value of a at n (n reduced mod m)."""
    return (a.mask >> (n % a.modulus)) & 1


def shift(a: ResidueSet, c: int) -> ResidueSet:
    """The translate c + A."""
    m = a.modulus
    c %= m
    if c == 0:
        return a
    mask = ((a.mask << c) | (a.mask >> (m - c))) & ((1 << m) - 1)
    return ResidueSet(m, mask)


def complement(a: ResidueSet) -> ResidueSet:
    return ResidueSet(a.modulus, a.mask ^ ((1 << a.modulus) - 1))


def reflect(a: ResidueSet) -> ResidueSet:
    """The image -A."""
    m = a.modulus
    mask = 0
    for e in a.elements():
        mask |= 1 << ((-e) % m)
    return ResidueSet(m, mask)


def scale_unit(a: ResidueSet, u: int) -> ResidueSet:
    """The image u*A; u must be invertible mod m."""
    m = a.modulus
    u %= m
    if gcd(u, m) != 1:
        raise NonUnitError(f"{u} is not a unit modulo {m}")
    mask = 0
    for e in a.elements():
        mask |= 1 << ((u * e) % m)
    return ResidueSet(m, mask)


def repfn_naive(a: ResidueSet) -> RepFn:
    """Reference ordered-pair count: counts[n] = #{(x, y) in A*A : x+y = n (mod m)}."""
    m = a.modulus
    counts = [0] * m
    elems = a.elements()
    for x in elems:
        for y in elems:
            counts[(x + y) % m] += 1
    return RepFn(m, tuple(counts))


def cross_repfn(a: ResidueSet, b: ResidueSet) -> RepFn:
    """Reference cross count: counts[n] = #{(x, y) in A*B : x+y = n (mod m)}."""
    if a.modulus != b.modulus:
        raise DomainError(
            f"modulus mismatch: {a.modulus} vs {b.modulus}"
        )
    m = a.modulus
    counts = [0] * m
    be = b.elements()
    for x in a.elements():
        for y in be:
            counts[(x + y) % m] += 1
    return RepFn(m, tuple(counts))


def half_shift_equal(a: ResidueSet, b: ResidueSet) -> HalfShiftRelation:
    """Whether B equals A + m/2 as sets (requires a common even modulus)."""
    if a.modulus != b.modulus:
        raise DomainError(f"modulus mismatch: {a.modulus} vs {b.modulus}")
    m = a.modulus
    if m % 2:
        raise DomainError(f"half-shift relation needs an even modulus, got {m}")
    half = m // 2
    return HalfShiftRelation(holds=shift(a, half).mask == b.mask, shift=half)
