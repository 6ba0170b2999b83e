"""Fast exact backends for representation-function counts.

Three interchangeable strategies, all contract-equal to
:func:`repclass.residues.repfn_naive`:

* ``naive``  -- direct ordered-pair counting, O(|A|^2);
* ``bitset`` -- rotate-and-accumulate over the membership bitmask,
  O(|A| * m / w) word operations;
* ``ntt``    -- exact cyclic convolution of the indicator vector under the
  prime 998244353 (= 119 * 2^23 + 1, primitive root 3).  Counts are at most
  m < prime, so every value is recovered exactly.

``auto`` picks by modulus size (naive <= 64 < bitset <= 4096 < ntt); the
crossovers are defaults only and never affect results.
"""

from __future__ import annotations

from enum import Enum

from ._impl import COMPILED, kernel_flavor, kernels
from .errors import DomainError
from .residues import RepFn, ResidueSet

NAIVE_MAX = 64
BITSET_MAX = 4096


class BackendKind(str, Enum):
    NAIVE = "naive"
    BITSET = "bitset"
    NTT = "ntt"


BACKEND_CHOICES = tuple(kind.value for kind in BackendKind) + ("auto",)


def resolve_backend(kind: str | BackendKind, m: int) -> BackendKind:
    """Map a CLI-style backend name ('auto' included) to a concrete kind."""
    if isinstance(kind, BackendKind):
        return kind
    if kind == "auto":
        if m <= NAIVE_MAX:
            return BackendKind.NAIVE
        if m <= BITSET_MAX:
            return BackendKind.BITSET
        return BackendKind.NTT
    try:
        return BackendKind(kind)
    except ValueError:
        raise DomainError(
            f"unknown backend {kind!r}; expected one of {BACKEND_CHOICES}"
        ) from None


def repfn_bitset(a: ResidueSet) -> RepFn:
    return RepFn(a.modulus, tuple(kernels.bitset_counts(a.modulus, a.mask)))


def repfn_ntt(a: ResidueSet) -> RepFn:
    m = a.modulus
    try:
        counts = kernels.ntt_counts(m, a.mask)
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    return RepFn(m, tuple(counts))


def compute_repfn(a: ResidueSet, backend: str | BackendKind = "auto") -> RepFn:
    kind = resolve_backend(backend, a.modulus)
    if kind is BackendKind.NAIVE:
        return RepFn(a.modulus, tuple(kernels.repfn_counts(a.modulus, a.elements())))
    if kind is BackendKind.BITSET:
        return repfn_bitset(a)
    return repfn_ntt(a)


def cross_repfn_backend(
    a: ResidueSet, b: ResidueSet, kind: str | BackendKind = "auto"
) -> RepFn:
    if a.modulus != b.modulus:
        raise DomainError(f"modulus mismatch: {a.modulus} vs {b.modulus}")
    m = a.modulus
    kind = resolve_backend(kind, m)
    if kind is BackendKind.NAIVE:
        counts = kernels.cross_counts(m, a.elements(), b.elements())
    elif kind is BackendKind.BITSET:
        counts = kernels.bitset_cross_counts(m, a.elements(), b.mask)
    else:
        try:
            counts = kernels.ntt_cross_counts(m, a.mask, b.mask)
        except ValueError as exc:
            raise DomainError(str(exc)) from None
    return RepFn(m, tuple(counts))


def backend_metadata(kind: str | BackendKind = "auto") -> dict:
    """Reproducibility metadata recorded in report documents."""
    return {
        "requested": kind.value if isinstance(kind, BackendKind) else kind,
        "kernels": kernel_flavor(),
        "compiled": COMPILED,
        "ntt_prime": kernels.NTT_PRIME,
        "ntt_root": kernels.NTT_ROOT,
        "auto_crossovers": {"naive_max": NAIVE_MAX, "bitset_max": BITSET_MAX},
    }
