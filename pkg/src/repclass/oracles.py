"""Executable predicates for the structural facts behind the search suites.

Every predicate has three possible outcomes: True, False, or
:class:`~repclass.errors.HypothesisError` when its premises fail.  The error
outcome is deliberately never folded into False so verification reports stay
unambiguous.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .backends import compute_repfn
from .errors import DomainError, HypothesisError
from .residues import (
    RepFn,
    ResidueSet,
    complement,
    contains,
    cross_repfn,
    full_set,
    half_shift_equal,
    make_set,
    reflect,
    repfn_naive,
    scale_unit,
    shift,
)


@dataclass(frozen=True)
class IntersectionData:
    """An even-size intersection: modulus plus the 2t residues it contains."""

    modulus: int
    residues: tuple[int, ...]

    def __post_init__(self):
        if self.modulus < 1:
            raise DomainError(f"modulus must be >= 1, got {self.modulus}")
        reduced = tuple(r % self.modulus for r in self.residues)
        if len(set(reduced)) != len(reduced):
            raise DomainError(f"intersection residues must be distinct: {self.residues}")
        if len(reduced) == 0 or len(reduced) % 2:
            raise DomainError(
                f"intersection size must be a positive even number, got {len(reduced)}"
            )
        object.__setattr__(self, "residues", reduced)

    @property
    def t(self) -> int:
        return len(self.residues) // 2

    def as_set(self) -> ResidueSet:
        return make_set(self.modulus, self.residues)


@dataclass(frozen=True)
class ConstructionParams:
    """Parameters of the explicit equal-count pair constructions (4 | m)."""

    modulus: int
    case: int

    def __post_init__(self):
        if self.modulus < 4 or self.modulus % 4:
            raise DomainError(f"construction needs 4 | m, got m={self.modulus}")
        if self.case not in (1, 2):
            raise DomainError(f"case must be 1 or 2, got {self.case}")
        if self.case == 1 and self.quarter < 2:
            raise DomainError(
                "case 1 needs m >= 8: at m=4 the two sides would coincide"
            )

    @property
    def quarter(self) -> int:
        return self.modulus // 4


def lemma21_check(a: ResidueSet, b: ResidueSet) -> bool:
    """Cardinality balance for equal-count partition pairs.

    Hypotheses (violations raise HypothesisError): common even modulus,
    A u B = Z_m, |A n B| = 2t with 1 <= t < m/2, and equal representation
    functions.  Under them, returns whether |A| = |B| = m/2 + t.  A False
    return on valid hypotheses would refute the underlying fact.
    """
    if a.modulus != b.modulus:
        raise HypothesisError(f"modulus mismatch: {a.modulus} vs {b.modulus}")
    m = a.modulus
    if m % 2:
        raise HypothesisError(f"even modulus required, got {m}")
    if (a.mask | b.mask) != (1 << m) - 1:
        raise HypothesisError("the two sets must cover Z_m")
    inter_size = (a.mask & b.mask).bit_count()
    if inter_size == 0 or inter_size % 2:
        raise HypothesisError(
            f"intersection size must be a positive even number, got {inter_size}"
        )
    t = inter_size // 2
    if not t < m // 2:
        raise HypothesisError(f"need |A n B|/2 < m/2, got t={t}, m={m}")
    if repfn_naive(a) != repfn_naive(b):
        raise HypothesisError("representation functions must be equal")
    return a.cardinality() == b.cardinality() == m // 2 + t


def eq21_check(a: ResidueSet, inter: IntersectionData) -> bool:
    """Windowed-membership identity over an intersection.

    Checks, for every n in Z_m, that the number of intersection residues r
    with n - r in A equals t + R_C(n)/2, where C is the intersection set.
    All entries of R_C must be even for the right side to be an integer, so
    evenness is checked first and an odd entry returns False.
    """
    m = a.modulus
    if inter.modulus != m:
        raise HypothesisError(f"modulus mismatch: {m} vs {inter.modulus}")
    if m % 2:
        raise HypothesisError(f"even modulus required, got {m}")
    if not inter.t < m // 2:
        raise HypothesisError(f"need t < m/2, got t={inter.t}, m={m}")
    c_set = inter.as_set()
    if c_set.mask & ~a.mask:
        raise HypothesisError("intersection residues must all lie in the set")
    t = inter.t
    rc = repfn_naive(c_set).counts
    if any(v % 2 for v in rc):
        return False
    for n in range(m):
        lhs = sum(contains(a, n - r) for r in inter.residues)
        if lhs != t + rc[n] // 2:
            return False
    return True


def complement_identity_check(a: ResidueSet, backend: str = "auto") -> bool:
    """repfn(Z_m \\ A)[n] == m - 2|A| + repfn(A)[n] for every n."""
    m = a.modulus
    base = compute_repfn(a, backend).counts
    comp = compute_repfn(complement(a), backend).counts
    offset = m - 2 * a.cardinality()
    return all(comp[n] == offset + base[n] for n in range(m))


def decomposition_check(t_set: ResidueSet, attach: ResidueSet, backend: str = "auto") -> bool:
    """Disjoint-union expansion: R_{T u S} = R_T + 2 R_{T,S} + R_S."""
    if t_set.modulus != attach.modulus:
        raise DomainError(f"modulus mismatch: {t_set.modulus} vs {attach.modulus}")
    if t_set.mask & attach.mask:
        raise DomainError("sets must be disjoint")
    m = t_set.modulus
    union = ResidueSet(m, t_set.mask | attach.mask)
    whole = compute_repfn(union, backend).counts
    part_t = compute_repfn(t_set, backend).counts
    part_s = compute_repfn(attach, backend).counts
    cross = cross_repfn(t_set, attach).counts
    return all(
        whole[n] == part_t[n] + 2 * cross[n] + part_s[n] for n in range(m)
    )


def partition_repfn_identity_check(a: ResidueSet, b: ResidueSet) -> bool:
    """Unconditional count identity for covering pairs with even overlap.

    For A u B = Z_m and C = A n B of size 2t:
    R_B(n) = (m - 2|A| + 4t) + R_A(n) - 2 * #{r in C : n - r in A} + R_C(n).
    Holds without assuming R_A = R_B; validated by brute force in the tests.
    """
    if a.modulus != b.modulus:
        raise HypothesisError(f"modulus mismatch: {a.modulus} vs {b.modulus}")
    m = a.modulus
    if (a.mask | b.mask) != (1 << m) - 1:
        raise HypothesisError("the two sets must cover Z_m")
    inter = ResidueSet(m, a.mask & b.mask)
    size = inter.cardinality()
    if size % 2:
        raise HypothesisError(f"intersection size must be even, got {size}")
    t = size // 2
    ra = repfn_naive(a).counts
    rb = repfn_naive(b).counts
    rc = repfn_naive(inter).counts
    residues = inter.elements()
    offset = m - 2 * a.cardinality() + 4 * t
    for n in range(m):
        window = sum(contains(a, n - r) for r in residues)
        if rb[n] != offset + ra[n] - 2 * window + rc[n]:
            return False
    return True


def construct_thm2_case1(params: ConstructionParams) -> tuple[ResidueSet, ResidueSet]:
    """Arc pair with overlap {0, k, 2k, 3k} (m = 4k, k >= 2).

    A is the union of the closed arcs [0, k] and [2k, 3k]; B is the same
    shape rotated by k.  The pair covers Z_m, has intersection size 4, is
    not a half-shift pair, and has equal representation functions.
    """
    if params.case != 1:
        raise DomainError(f"expected case 1 params, got case {params.case}")
    m = params.modulus
    k = params.quarter
    arc = list(range(0, k + 1))
    a = make_set(m, arc + [x + 2 * k for x in arc])
    b = make_set(m, [x + k for x in arc] + [x + 3 * k for x in arc])
    return a, b


def construct_thm2_case2(params: ConstructionParams) -> tuple[ResidueSet, ResidueSet]:
    """Two-puncture pair with overlap size m - 4 (m = 4k).

    For k = 1 the pair is ({0, 2}, {1, 3}) in Z_4; for k >= 2 it is
    (Z_m \\ {k, 3k}, Z_m \\ {0, 2k}).  The pair covers Z_m, has intersection
    size m - 4, is not a half-shift pair, and has equal representation
    functions.
    """
    if params.case != 2:
        raise DomainError(f"expected case 2 params, got case {params.case}")
    m = params.modulus
    k = params.quarter
    if k == 1:
        return make_set(m, [0, 2]), make_set(m, [1, 3])
    everything = full_set(m)
    a = ResidueSet(m, everything.mask ^ (1 << k) ^ (1 << (3 * k)))
    b = ResidueSet(m, everything.mask ^ (1 << 0) ^ (1 << (2 * k)))
    return a, b


def construct_pair(m: int, case: int) -> tuple[ResidueSet, ResidueSet]:
    params = ConstructionParams(m, case)
    if case == 1:
        return construct_thm2_case1(params)
    return construct_thm2_case2(params)


# ---------------------------------------------------------------------------
# identity sweeps (used by `check identities` and the acceptance suite)


def parity_check(a: ResidueSet, counts: tuple[int, ...] | None = None) -> bool:
    """counts[n] has the parity of #{x in A : 2x == n (mod m)}."""
    m = a.modulus
    if counts is None:
        counts = repfn_naive(a).counts
    diag = [0] * m
    for x in a.elements():
        diag[(2 * x) % m] += 1
    return all(counts[n] % 2 == diag[n] % 2 for n in range(m))


def shift_covariance_check(a: ResidueSet, c: int, backend: str = "auto") -> bool:
    m = a.modulus
    base = compute_repfn(a, backend).counts
    moved = compute_repfn(shift(a, c), backend).counts
    return all(moved[n] == base[(n - 2 * c) % m] for n in range(m))


def reflect_covariance_check(a: ResidueSet, backend: str = "auto") -> bool:
    m = a.modulus
    base = compute_repfn(a, backend).counts
    mirrored = compute_repfn(reflect(a), backend).counts
    return all(mirrored[n] == base[(-n) % m] for n in range(m))


def scale_covariance_check(a: ResidueSet, u: int, backend: str = "auto") -> bool:
    m = a.modulus
    u_inv = pow(u, -1, m) if m > 1 else 0
    base = compute_repfn(a, backend).counts
    scaled = compute_repfn(scale_unit(a, u), backend).counts
    return all(scaled[n] == base[(u_inv * n) % m] for n in range(m))


def half_shift_invariance_check(a: ResidueSet, backend: str = "auto") -> bool:
    """For even m, shifting by m/2 leaves the counts vector unchanged."""
    m = a.modulus
    if m % 2:
        raise HypothesisError(f"even modulus required, got {m}")
    return compute_repfn(a, backend) == compute_repfn(shift(a, m // 2), backend)


@dataclass
class IdentitySweepResult:
    sets_checked: int = 0
    checks_run: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _sweep_one(a: ResidueSet, shifts, units, result: IdentitySweepResult,
               backend: str, random_split) -> None:
    m = a.modulus
    base = compute_repfn(a, backend)
    labelled = [
        ("mass", base.total() == a.cardinality() ** 2),
        ("parity", parity_check(a, base.counts)),
        ("complement", complement_identity_check(a, backend)),
    ]
    for c in shifts:
        labelled.append((f"shift:{c}", shift_covariance_check(a, c, backend)))
    labelled.append(("reflect", reflect_covariance_check(a, backend)))
    for u in units:
        labelled.append((f"scale:{u}", scale_covariance_check(a, u, backend)))
    if m % 2 == 0:
        labelled.append(("half-shift", half_shift_invariance_check(a, backend)))
    if a.mask:
        lead = a.elements()[0]
        rest = ResidueSet(m, a.mask ^ (1 << lead))
        labelled.append(
            ("attach-one", decomposition_check(rest, make_set(m, [lead]), backend))
        )
    other = random_split(a) if random_split else complement(a)
    labelled.append(("attach-many", decomposition_check(a, other, backend)))
    for name, ok in labelled:
        result.checks_run += 1
        if not ok:
            result.failures.append(f"{name} failed for {a}")
    result.sets_checked += 1


def _units_mod(m: int) -> list[int]:
    from math import gcd

    return [u for u in range(1, m) if gcd(u, m) == 1] or [0]


def sweep_exhaustive(max_m: int, backend: str = "auto") -> IdentitySweepResult:
    """Run every identity on every subset of Z_m for m = 1..max_m."""
    result = IdentitySweepResult()
    for m in range(1, max_m + 1):
        units = _units_mod(m)
        shifts = range(m)
        for mask in range(1 << m):
            _sweep_one(ResidueSet(m, mask), shifts, units, result, backend, None)
    return result


def sweep_random(
    count: int, max_m: int, seed: int, backend: str = "auto"
) -> IdentitySweepResult:
    """Run every identity on seeded random sets with log-uniform moduli."""
    rng = random.Random(seed)
    result = IdentitySweepResult()

    def random_split(a: ResidueSet) -> ResidueSet:
        rest = complement(a).elements()
        chosen = [e for e in rest if rng.random() < 0.5]
        return make_set(a.modulus, chosen)

    for _ in range(count):
        m = min(max_m, 1 << rng.randint(0, max(0, max_m.bit_length() - 1)))
        m = rng.randint(max(1, m // 2), m)
        mask = rng.getrandbits(m) if m else 0
        a = ResidueSet(m, mask & ((1 << m) - 1))
        units = _units_mod(m)
        shifts = [rng.randrange(m)] if m > 1 else [0]
        chosen_units = [units[rng.randrange(len(units))]]
        _sweep_one(a, shifts, chosen_units, result, backend, random_split)
    return result
