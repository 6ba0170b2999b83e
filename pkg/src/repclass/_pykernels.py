"""Pure-Python compute kernels.

Fallback used when the compiled extension ``repclass._kernels`` is
unavailable (and directly by the benchmark).  Interface contract shared with
the extension:

* sets travel as Python-int bitmasks, element lists as ascending ints;
* every function returns plain Python data (lists / tuples of ints);
* results are bit-identical to the compiled kernels on identical input.
"""

from __future__ import annotations

from typing import Iterable

COMPILED = False

# NTT modulus: 119 * 2**23 + 1, primitive root 3.  The 2-adic order (2**23)
# caps the transform length; exact counts <= m < prime, so values round-trip
# without wraparound.
NTT_PRIME = 998244353
NTT_ROOT = 3
NTT_MAX_LEN = 1 << 23

_M64 = (1 << 64) - 1
_FP_OFF1 = 0xCBF29CE484222325
_FP_PRIME1 = 0x100000001B3
_FP_OFF2 = 0x9E3779B97F4A7C15
_FP_PRIME2 = 0xC2B2AE3D27D4EB4F


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _rotl(mask: int, a: int, m: int) -> int:
    a %= m
    if a == 0:
        return mask
    return ((mask << a) | (mask >> (m - a))) & ((1 << m) - 1)


def repfn_counts(m: int, elems: Iterable[int]) -> list[int]:
    """Ordered-pair counts by the direct double loop."""
    counts = [0] * m
    elems = list(elems)
    for x in elems:
        for y in elems:
            counts[(x + y) % m] += 1
    return counts


def cross_counts(m: int, elems_a: Iterable[int], elems_b: Iterable[int]) -> list[int]:
    counts = [0] * m
    elems_b = list(elems_b)
    for x in elems_a:
        for y in elems_b:
            counts[(x + y) % m] += 1
    return counts


def _accumulate_rotations(m: int, shifts: list[int], mask: int) -> list[int]:
    # Bit-sliced counter: planes[j] holds bit j of every lane's running
    # count, so adding one rotated indicator costs O(m/w) word ops amortized.
    planes: list[int] = []
    for a in shifts:
        carry = _rotl(mask, a, m)
        j = 0
        while carry:
            if j == len(planes):
                planes.append(carry)
                break
            tmp = planes[j] ^ carry
            carry &= planes[j]
            planes[j] = tmp
            j += 1
    counts = [0] * m
    for j, plane in enumerate(planes):
        weight = 1 << j
        for n in _bits(plane):
            counts[n] += weight
    return counts


def bitset_counts(m: int, mask: int) -> list[int]:
    """Self counts via rotate-and-accumulate over the membership bitmask."""
    return _accumulate_rotations(m, _bits(mask), mask)


def bitset_cross_counts(m: int, elems_a: Iterable[int], mask_b: int) -> list[int]:
    return _accumulate_rotations(m, list(elems_a), mask_b)


def _ntt(vec: list[int], invert: bool) -> None:
    n = len(vec)
    p = NTT_PRIME
    j = 0
    for i in range(1, n):
        bit = n >> 1
        while j & bit:
            j ^= bit
            bit >>= 1
        j |= bit
        if i < j:
            vec[i], vec[j] = vec[j], vec[i]
    length = 2
    while length <= n:
        w = pow(NTT_ROOT, (p - 1) // length, p)
        if invert:
            w = pow(w, p - 2, p)
        half = length >> 1
        for start in range(0, n, length):
            wn = 1
            for k in range(start, start + half):
                u = vec[k]
                v = vec[k + half] * wn % p
                vec[k] = (u + v) % p
                vec[k + half] = (u - v) % p
                wn = wn * w % p
        length <<= 1
    if invert:
        ninv = pow(n, p - 2, p)
        for i in range(n):
            vec[i] = vec[i] * ninv % p


def _ntt_length(m: int) -> int:
    length = 1
    while length < 2 * m:
        length <<= 1
    if length > NTT_MAX_LEN:
        raise ValueError(
            f"transform length {length} exceeds the cap {NTT_MAX_LEN}"
        )
    return length


def _indicator(m: int, mask: int, length: int) -> list[int]:
    vec = [0] * length
    for n in _bits(mask):
        vec[n] = 1
    return vec


def _fold(m: int, lin: list[int]) -> list[int]:
    # Linear self/cross convolution has support <= 2m-1 <= len(lin); slots
    # n and n+m land on the same residue.
    return [lin[n] + lin[n + m] for n in range(m)]


def ntt_counts(m: int, mask: int) -> list[int]:
    """Self counts via exact modular convolution of the indicator vector."""
    length = _ntt_length(m)
    vec = _indicator(m, mask, length)
    _ntt(vec, invert=False)
    p = NTT_PRIME
    for i in range(length):
        vec[i] = vec[i] * vec[i] % p
    _ntt(vec, invert=True)
    return _fold(m, vec)


def ntt_cross_counts(m: int, mask_a: int, mask_b: int) -> list[int]:
    if mask_a == mask_b:
        return ntt_counts(m, mask_a)
    length = _ntt_length(m)
    va = _indicator(m, mask_a, length)
    vb = _indicator(m, mask_b, length)
    _ntt(va, invert=False)
    _ntt(vb, invert=False)
    p = NTT_PRIME
    for i in range(length):
        va[i] = va[i] * vb[i] % p
    _ntt(va, invert=True)
    return _fold(m, va)


def _counts_equal(m: int, mask_a: int, mask_b: int) -> bool:
    if mask_a.bit_count() != mask_b.bit_count():
        return False
    return bitset_counts(m, mask_a) == bitset_counts(m, mask_b)


def partition_scan(
    m: int, c_mask: int, free_elems: list[int], x_size: int
) -> list[tuple[int, int]]:
    """Scan partition pairs sharing the fixed intersection mask.

    Free elements (ascending) each go to exactly one side.  The largest
    free element is pinned to the B side, which makes mask(A) < mask(B) and
    visits every unordered pair exactly once.  ``x_size`` >= 0 restricts the
    A side to that many free elements (caller-side cardinality pruning);
    -1 scans all splits.  Returns (mask_a, mask_b) for pairs with equal
    representation-function vectors.
    """
    nf = len(free_elems)
    if nf == 0:
        raise ValueError("free_elems must be nonempty; the s == m pair is special-cased")
    f_mask = 0
    for f in free_elems:
        f_mask |= 1 << f
    rest = free_elems[:-1]
    out: list[tuple[int, int]] = []

    def visit(x_mask: int) -> None:
        mask_a = c_mask | x_mask
        mask_b = c_mask | (f_mask ^ x_mask)
        if _counts_equal(m, mask_a, mask_b):
            out.append((mask_a, mask_b))

    if x_size < 0:
        for code in range(1 << (nf - 1)):
            x_mask = 0
            c = code
            while c:
                low = c & -c
                x_mask |= 1 << rest[low.bit_length() - 1]
                c ^= low
            visit(x_mask)
    else:
        if x_size > len(rest):
            return out
        from itertools import combinations

        for combo in combinations(rest, x_size):
            x_mask = 0
            for f in combo:
                x_mask |= 1 << f
            visit(x_mask)
    return out


def fingerprint128(counts: Iterable[int]) -> int:
    """Order-sensitive 128-bit fingerprint of a counts vector."""
    h1 = _FP_OFF1
    h2 = _FP_OFF2
    for v in counts:
        h1 = ((h1 ^ v) * _FP_PRIME1) & _M64
        h2 = ((h2 ^ ((v + _FP_OFF2) & _M64)) * _FP_PRIME2) & _M64
    return (h1 << 64) | h2


def _combo_mask(combo: tuple[int, ...]) -> int:
    mask = 0
    for e in combo:
        mask |= 1 << e
    return mask


def _iter_combos(m: int, k: int, first: tuple[int, ...], howmany: int):
    combo = list(first)
    for _ in range(howmany):
        yield tuple(combo)
        j = k - 1
        while j >= 0 and combo[j] == m - k + j:
            j -= 1
        if j < 0:
            return
        combo[j] += 1
        for idx in range(j + 1, k):
            combo[idx] = combo[idx - 1] + 1


def ksubset_fingerprints(
    m: int, k: int, first_combo: tuple[int, ...], howmany: int
) -> list[int]:
    """Fingerprints of k-subset counts, in combination order from first_combo."""
    return [
        fingerprint128(repfn_counts(m, combo))
        for combo in _iter_combos(m, k, first_combo, howmany)
    ]


def ksubset_collect(
    m: int,
    k: int,
    first_combo: tuple[int, ...],
    howmany: int,
    wanted: frozenset[int],
) -> list[tuple[int, int]]:
    """(mask, fingerprint) pairs for subsets whose fingerprint is in wanted."""
    out = []
    for combo in _iter_combos(m, k, first_combo, howmany):
        fp = fingerprint128(repfn_counts(m, combo))
        if fp in wanted:
            out.append((_combo_mask(combo), fp))
    return out
