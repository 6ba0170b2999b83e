# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled compute kernels.

Interface and results are identical to :mod:`repclass._pykernels`; see that
module for the contract.  Masks arrive as Python ints and are unpacked into
word arrays here.
"""

from libc.stdint cimport int64_t, uint8_t, uint64_t
from libc.stdlib cimport calloc, free, malloc
from libc.string cimport memset

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

COMPILED = True

NTT_PRIME = 998244353
NTT_ROOT = 3
NTT_MAX_LEN = 1 << 23

DEF NPLANES = 21  # counts <= 2**20 under the default modulus cap

cdef uint64_t P = 998244353
cdef uint64_t FP_OFF1 = 0xCBF29CE484222325ULL
cdef uint64_t FP_PRIME1 = 0x100000001B3ULL
cdef uint64_t FP_OFF2 = 0x9E3779B97F4A7C15ULL
cdef uint64_t FP_PRIME2 = 0xC2B2AE3D27D4EB4FULL


# ---------------------------------------------------------------------------
# helpers

cdef int* _as_int_array(object elems, Py_ssize_t* n_out) except NULL:
    cdef list items = list(elems)
    cdef Py_ssize_t n = len(items)
    cdef int* arr = <int*> malloc((n if n else 1) * sizeof(int))
    if arr == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        arr[i] = <int> items[i]
    n_out[0] = n
    return arr


cdef uint64_t* _mask_to_words(object mask, int m, Py_ssize_t* nw_out) except NULL:
    cdef Py_ssize_t nw = (m + 63) >> 6
    cdef bytes raw = mask.to_bytes(nw * 8, "little")
    cdef const uint8_t* src = raw
    cdef uint64_t* words = <uint64_t*> malloc(nw * sizeof(uint64_t))
    if words == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    cdef int b
    cdef uint64_t w
    for i in range(nw):
        w = 0
        for b in range(8):
            w |= (<uint64_t> src[i * 8 + b]) << (8 * b)
        words[i] = w
    nw_out[0] = nw
    return words


cdef list _counts_to_list(int64_t* cnt, int m):
    cdef int i
    return [cnt[i] for i in range(m)]


# ---------------------------------------------------------------------------
# direct pair counting

def repfn_counts(int m, elems):
    cdef Py_ssize_t na = 0
    cdef int* el = _as_int_array(elems, &na)
    cdef int64_t* cnt = <int64_t*> calloc(m, sizeof(int64_t))
    cdef Py_ssize_t i, j
    cdef int s, ai
    try:
        if cnt == NULL:
            raise MemoryError()
        for i in range(na):
            ai = el[i]
            for j in range(na):
                s = ai + el[j]
                if s >= m:
                    s -= m
                cnt[s] += 1
        return _counts_to_list(cnt, m)
    finally:
        free(el)
        if cnt != NULL:
            free(cnt)


def cross_counts(int m, elems_a, elems_b):
    cdef Py_ssize_t na = 0, nb = 0
    cdef int* ea = _as_int_array(elems_a, &na)
    cdef int* eb = NULL
    cdef int64_t* cnt = NULL
    cdef Py_ssize_t i, j
    cdef int s, ai
    try:
        eb = _as_int_array(elems_b, &nb)
        cnt = <int64_t*> calloc(m, sizeof(int64_t))
        if cnt == NULL:
            raise MemoryError()
        for i in range(na):
            ai = ea[i]
            for j in range(nb):
                s = ai + eb[j]
                if s >= m:
                    s -= m
                cnt[s] += 1
        return _counts_to_list(cnt, m)
    finally:
        free(ea)
        if eb != NULL:
            free(eb)
        if cnt != NULL:
            free(cnt)


# ---------------------------------------------------------------------------
# bit-sliced rotate-and-accumulate

cdef void _csa_add(uint64_t* planes, Py_ssize_t nw, uint64_t* carry) nogil:
    # Ripple-carry add of a 0/1 vector into per-lane binary counters.
    cdef int j
    cdef Py_ssize_t w
    cdef uint64_t t, c, any_c
    for j in range(NPLANES):
        any_c = 0
        for w in range(nw):
            t = planes[j * nw + w] ^ carry[w]
            c = planes[j * nw + w] & carry[w]
            planes[j * nw + w] = t
            carry[w] = c
            any_c |= c
        if any_c == 0:
            return


cdef void _window(uint64_t* dbl, Py_ssize_t q, int r, uint64_t* dst,
                  Py_ssize_t nw, int m) nogil:
    cdef Py_ssize_t j
    if r == 0:
        for j in range(nw):
            dst[j] = dbl[q + j]
    else:
        for j in range(nw):
            dst[j] = (dbl[q + j] >> r) | (dbl[q + j + 1] << (64 - r))
    if m & 63:
        dst[nw - 1] &= (1ULL << (m & 63)) - 1


cdef list _accumulate(int m, int* shifts, Py_ssize_t ns, uint64_t* words,
                      Py_ssize_t nw):
    # Doubled bit array: bit i = mask bit (i mod m) for i in [0, 2m); a
    # rotation by a is then the m-bit window at offset m - a.
    cdef Py_ssize_t ndw = ((2 * m + 63) >> 6) + 1
    cdef uint64_t* dbl = <uint64_t*> calloc(ndw, sizeof(uint64_t))
    cdef uint64_t* planes = <uint64_t*> calloc(NPLANES * nw, sizeof(uint64_t))
    cdef uint64_t* scratch = <uint64_t*> malloc(nw * sizeof(uint64_t))
    cdef int64_t* cnt = <int64_t*> calloc(m, sizeof(int64_t))
    cdef Py_ssize_t i, w, off_w, q
    cdef int off_b, a, r, b, j
    cdef uint64_t word
    try:
        if dbl == NULL or planes == NULL or scratch == NULL or cnt == NULL:
            raise MemoryError()
        off_w = m >> 6
        off_b = m & 63
        for i in range(nw):
            dbl[i] |= words[i]
            dbl[off_w + i] |= words[i] << off_b
            if off_b:
                dbl[off_w + i + 1] |= words[i] >> (64 - off_b)
        for i in range(ns):
            a = shifts[i] % m
            q = (m - a) >> 6
            r = (m - a) & 63
            _window(dbl, q, r, scratch, nw, m)
            _csa_add(planes, nw, scratch)
        for j in range(NPLANES):
            for w in range(nw):
                word = planes[j * nw + w]
                while word:
                    b = __builtin_ctzll(word)
                    cnt[(w << 6) + b] += (<int64_t> 1) << j
                    word &= word - 1
        return _counts_to_list(cnt, m)
    finally:
        if dbl != NULL:
            free(dbl)
        if planes != NULL:
            free(planes)
        if scratch != NULL:
            free(scratch)
        if cnt != NULL:
            free(cnt)


def bitset_counts(int m, mask):
    cdef Py_ssize_t nw = 0, ns = 0
    cdef uint64_t* words = _mask_to_words(mask, m, &nw)
    cdef int* shifts = NULL
    cdef Py_ssize_t i
    cdef int b
    cdef uint64_t word
    try:
        shifts = <int*> malloc((m if m else 1) * sizeof(int))
        if shifts == NULL:
            raise MemoryError()
        for i in range(nw):
            word = words[i]
            while word:
                b = __builtin_ctzll(word)
                shifts[ns] = <int> ((i << 6) + b)
                ns += 1
                word &= word - 1
        return _accumulate(m, shifts, ns, words, nw)
    finally:
        free(words)
        if shifts != NULL:
            free(shifts)


def bitset_cross_counts(int m, elems_a, mask_b):
    cdef Py_ssize_t nw = 0, ns = 0
    cdef uint64_t* words = _mask_to_words(mask_b, m, &nw)
    cdef int* shifts = NULL
    try:
        shifts = _as_int_array(elems_a, &ns)
        return _accumulate(m, shifts, ns, words, nw)
    finally:
        free(words)
        if shifts != NULL:
            free(shifts)


# ---------------------------------------------------------------------------
# exact number-theoretic transform

cdef uint64_t _powmod(uint64_t base, uint64_t exp) nogil:
    cdef uint64_t result = 1
    base %= P
    while exp:
        if exp & 1:
            result = result * base % P
        base = base * base % P
        exp >>= 1
    return result


cdef void _ntt_inplace(uint64_t* vec, Py_ssize_t n, bint invert) nogil:
    cdef Py_ssize_t i, j, bit, k, start, half, length
    cdef uint64_t u, v, w, wn, scale
    j = 0
    for i in range(1, n):
        bit = n >> 1
        while j & bit:
            j ^= bit
            bit >>= 1
        j |= bit
        if i < j:
            u = vec[i]
            vec[i] = vec[j]
            vec[j] = u
    length = 2
    while length <= n:
        w = _powmod(3, (P - 1) // (<uint64_t> length))
        if invert:
            w = _powmod(w, P - 2)
        half = length >> 1
        start = 0
        while start < n:
            wn = 1
            for k in range(start, start + half):
                u = vec[k]
                v = vec[k + half] * wn % P
                vec[k] = u + v
                if vec[k] >= P:
                    vec[k] -= P
                vec[k + half] = u + P - v
                if vec[k + half] >= P:
                    vec[k + half] -= P
                wn = wn * w % P
            start += length
        length <<= 1
    if invert:
        scale = _powmod(<uint64_t> n, P - 2)
        for i in range(n):
            vec[i] = vec[i] * scale % P


cdef Py_ssize_t _ntt_length(int m) except -1:
    cdef Py_ssize_t length = 1
    while length < 2 * m:
        length <<= 1
    if length > (1 << 23):
        raise ValueError(
            "transform length %d exceeds the cap %d" % (length, 1 << 23)
        )
    return length


cdef uint64_t* _indicator_vec(object mask, int m, Py_ssize_t length) except NULL:
    cdef Py_ssize_t nw = 0
    cdef uint64_t* words = _mask_to_words(mask, m, &nw)
    cdef uint64_t* vec = <uint64_t*> calloc(length, sizeof(uint64_t))
    cdef Py_ssize_t i
    cdef int b
    cdef uint64_t word
    try:
        if vec == NULL:
            raise MemoryError()
        for i in range(nw):
            word = words[i]
            while word:
                b = __builtin_ctzll(word)
                vec[(i << 6) + b] = 1
                word &= word - 1
        return vec
    finally:
        free(words)


cdef list _fold(uint64_t* vec, int m):
    cdef int n
    return [<int64_t> (vec[n] + vec[n + m]) for n in range(m)]


def ntt_counts(int m, mask):
    cdef Py_ssize_t length = _ntt_length(m)
    cdef uint64_t* vec = _indicator_vec(mask, m, length)
    cdef Py_ssize_t i
    try:
        _ntt_inplace(vec, length, False)
        for i in range(length):
            vec[i] = vec[i] * vec[i] % P
        _ntt_inplace(vec, length, True)
        return _fold(vec, m)
    finally:
        free(vec)


def ntt_cross_counts(int m, mask_a, mask_b):
    if mask_a == mask_b:
        return ntt_counts(m, mask_a)
    cdef Py_ssize_t length = _ntt_length(m)
    cdef uint64_t* va = _indicator_vec(mask_a, m, length)
    cdef uint64_t* vb = NULL
    cdef Py_ssize_t i
    try:
        vb = _indicator_vec(mask_b, m, length)
        _ntt_inplace(va, length, False)
        _ntt_inplace(vb, length, False)
        for i in range(length):
            va[i] = va[i] * vb[i] % P
        _ntt_inplace(va, length, True)
        return _fold(va, m)
    finally:
        free(va)
        if vb != NULL:
            free(vb)


# ---------------------------------------------------------------------------
# partition pair scan (single-word masks)

cdef bint _equal_counts64(int m, uint64_t mask_a, uint64_t mask_b) nogil:
    cdef int ea[64]
    cdef int eb[64]
    cdef int ca[64]
    cdef int cb[64]
    cdef int na = 0, nb = 0, i, j, s
    cdef uint64_t w
    if __builtin_popcountll(mask_a) != __builtin_popcountll(mask_b):
        return False
    w = mask_a
    while w:
        ea[na] = __builtin_ctzll(w)
        na += 1
        w &= w - 1
    w = mask_b
    while w:
        eb[nb] = __builtin_ctzll(w)
        nb += 1
        w &= w - 1
    memset(ca, 0, m * sizeof(int))
    memset(cb, 0, m * sizeof(int))
    for i in range(na):
        for j in range(na):
            s = ea[i] + ea[j]
            if s >= m:
                s -= m
            ca[s] += 1
    for i in range(nb):
        for j in range(nb):
            s = eb[i] + eb[j]
            if s >= m:
                s -= m
            cb[s] += 1
    for i in range(m):
        if ca[i] != cb[i]:
            return False
    return True


def partition_scan(int m, unsigned long long c_mask, free_elems, int x_size):
    """See _pykernels.partition_scan; requires m <= 64 here."""
    if m > 64:
        raise ValueError("compiled partition_scan requires m <= 64")
    cdef int nf = len(free_elems)
    if nf == 0:
        raise ValueError("free_elems must be nonempty")
    cdef int fe[64]
    cdef int idx[64]
    cdef int i, b, nrest, j
    cdef uint64_t f_mask = 0, x_mask, mask_a, mask_b, code, total, tmp
    for i in range(nf):
        fe[i] = free_elems[i]
        f_mask |= 1ULL << fe[i]
    nrest = nf - 1
    out = []
    if x_size < 0:
        total = 1ULL << nrest
        code = 0
        while code < total:
            x_mask = 0
            tmp = code
            while tmp:
                b = __builtin_ctzll(tmp)
                x_mask |= 1ULL << fe[b]
                tmp &= tmp - 1
            mask_a = c_mask | x_mask
            mask_b = c_mask | (f_mask ^ x_mask)
            if _equal_counts64(m, mask_a, mask_b):
                out.append((mask_a, mask_b))
            code += 1
    else:
        if x_size > nrest:
            return out
        if x_size == 0:
            mask_a = c_mask
            mask_b = c_mask | f_mask
            if _equal_counts64(m, mask_a, mask_b):
                out.append((mask_a, mask_b))
            return out
        for i in range(x_size):
            idx[i] = i
        while True:
            x_mask = 0
            for i in range(x_size):
                x_mask |= 1ULL << fe[idx[i]]
            mask_a = c_mask | x_mask
            mask_b = c_mask | (f_mask ^ x_mask)
            if _equal_counts64(m, mask_a, mask_b):
                out.append((mask_a, mask_b))
            j = x_size - 1
            while j >= 0 and idx[j] == nrest - x_size + j:
                j -= 1
            if j < 0:
                break
            idx[j] += 1
            for i in range(j + 1, x_size):
                idx[i] = idx[i - 1] + 1
    return out


# ---------------------------------------------------------------------------
# k-subset fingerprint scan (single-word masks)

def fingerprint128(counts):
    cdef uint64_t h1 = FP_OFF1
    cdef uint64_t h2 = FP_OFF2
    cdef uint64_t v
    for value in counts:
        v = <uint64_t> value
        h1 = (h1 ^ v) * FP_PRIME1
        h2 = (h2 ^ (v + FP_OFF2)) * FP_PRIME2
    return (int(h1) << 64) | int(h2)


cdef void _combo_counts(int m, int* combo, int k, int* cnt) nogil:
    cdef int i, j, s
    memset(cnt, 0, m * sizeof(int))
    for i in range(k):
        for j in range(k):
            s = combo[i] + combo[j]
            if s >= m:
                s -= m
            cnt[s] += 1


cdef void _combo_fp(int m, int* cnt, uint64_t* h1_out, uint64_t* h2_out) nogil:
    cdef uint64_t h1 = FP_OFF1
    cdef uint64_t h2 = FP_OFF2
    cdef uint64_t v
    cdef int n
    for n in range(m):
        v = <uint64_t> cnt[n]
        h1 = (h1 ^ v) * FP_PRIME1
        h2 = (h2 ^ (v + FP_OFF2)) * FP_PRIME2
    h1_out[0] = h1
    h2_out[0] = h2


cdef bint _combo_next(int m, int k, int* combo) nogil:
    cdef int j = k - 1
    cdef int i
    while j >= 0 and combo[j] == m - k + j:
        j -= 1
    if j < 0:
        return False
    combo[j] += 1
    for i in range(j + 1, k):
        combo[i] = combo[i - 1] + 1
    return True


def ksubset_fingerprints(int m, int k, first_combo, long long howmany):
    if m > 64:
        raise ValueError("compiled ksubset_fingerprints requires m <= 64")
    cdef int combo[64]
    cdef int cnt[64]
    cdef int i
    cdef long long done = 0
    cdef uint64_t h1 = 0, h2 = 0
    for i in range(k):
        combo[i] = first_combo[i]
    out = []
    while done < howmany:
        _combo_counts(m, combo, k, cnt)
        _combo_fp(m, cnt, &h1, &h2)
        out.append((int(h1) << 64) | int(h2))
        done += 1
        if done < howmany and not _combo_next(m, k, combo):
            break
    return out


def ksubset_collect(int m, int k, first_combo, long long howmany, wanted):
    if m > 64:
        raise ValueError("compiled ksubset_collect requires m <= 64")
    cdef int combo[64]
    cdef int cnt[64]
    cdef int i
    cdef long long done = 0
    cdef uint64_t h1 = 0, h2 = 0, mask
    for i in range(k):
        combo[i] = first_combo[i]
    out = []
    while done < howmany:
        _combo_counts(m, combo, k, cnt)
        _combo_fp(m, cnt, &h1, &h2)
        fp = (int(h1) << 64) | int(h2)
        if fp in wanted:
            mask = 0
            for i in range(k):
                mask |= 1ULL << combo[i]
            out.append((int(mask), fp))
        done += 1
        if done < howmany and not _combo_next(m, k, combo):
            break
    return out
