# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled twin of ``_pykernels``.  Same functions, same return values."""

from libc.stdlib cimport malloc, free

BACKEND = "cython"

cdef enum:
    MAXCHAIN = 128


cdef inline long _gcd(long a, long b) noexcept nogil:
    cdef long t
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef inline long _mod(long long a, long m) noexcept nogil:
    cdef long long r = a % m
    if r < 0:
        r += m
    return <long>r


cdef long long* _neg_table(long p, long q, long long* buf_a, long long* buf_b) except NULL:
    """Fill one of the two buffers with 4p*d(-L(p,q), i); return it."""
    cdef long ca[MAXCHAIN]
    cdef long cb[MAXCHAIN]
    cdef int n = 0, lvl
    cdef long a = p, b = q, t, i, A, B
    cdef long long s, num
    cdef long long* cur = buf_a
    cdef long long* nxt = buf_b
    cdef long long* tmp
    while a > 1:
        if n >= MAXCHAIN:
            raise OverflowError("Euclidean chain too long")
        ca[n] = a
        cb[n] = b
        n += 1
        t = a % b
        a = b
        b = t
    cur[0] = 0
    for lvl in range(n - 1, -1, -1):
        A = ca[lvl]
        B = cb[lvl]
        for i in range(A):
            s = 2 * i + 1 - A - B
            num = <long long>A * B - s * s - <long long>A * cur[i % B]
            if num % B:
                raise ArithmeticError("inexact division at L(%d,%d), i=%d" % (A, B, i))
            nxt[i] = num / B
        tmp = cur
        cur = nxt
        nxt = tmp
    return cur


def neg_table_scaled(long p, long q):
    cdef long long* a = <long long*>malloc(max(p, 1) * sizeof(long long))
    cdef long long* b = <long long*>malloc(max(p, 1) * sizeof(long long))
    cdef long long* r
    cdef long i
    if a == NULL or b == NULL:
        free(a)
        free(b)
        raise MemoryError()
    try:
        r = _neg_table(p, q, a, b)
        return [r[i] for i in range(p)]
    finally:
        free(a)
        free(b)


def d_table_scaled(long p, long q):
    return [-v for v in neg_table_scaled(p, q)]


cdef bint _sigma_passes(long long* D, long long* D1, long p, long u, long c, long long* tau) noexcept nogil:
    cdef long h = p // 2
    cdef long long m = 8 * <long long>p
    cdef long j, i, idx
    cdef long long t, lo, mid, hi, a
    cdef int prev = 0, sg
    for j in range(2 * h + 1):
        if j % 2:
            i = (j + 1) // 2
        else:
            i = -(j // 2)
        idx = _mod(<long long>u * i + c, p)
        t = D1[_mod(i, p)] - D[idx]
        if t % m:
            return False
        tau[i + h] = t / m
    for i in range(-h - 1, h + 2):
        lo = tau[i - 1 + h] if (i - 1 >= -h and i - 1 <= h) else 0
        mid = tau[i + h] if (i >= -h and i <= h) else 0
        hi = tau[i + 1 + h] if (i + 1 >= -h and i + 1 <= h) else 0
        a = lo - 2 * mid + hi
        if i == 0:
            a += 1
        if a > 1 or a < -1:
            return False
        if a != 0:
            sg = <int>a
            if sg == prev:
                return False
            prev = sg
    return True


cdef list _scan(long long* D, long long* D1, long p, long q, bint relaxed, bint first_only,
                long long* tau, long* centers):
    cdef long h = p // 2
    cdef long nc = 0, c, v, u, ci
    cdef long ustart = 1 if p > 1 else 0
    cdef long uend = p if p > 1 else 1
    cdef bint ok
    cdef list found = []
    if not relaxed:
        if p % 2:
            centers[0] = _mod(<long long>(q - 1) * ((p + 1) // 2), p)
            nc = 1
        else:
            centers[0] = _mod((q - 1) // 2, p)
            centers[1] = _mod((q - 1) // 2 + p // 2, p)
            nc = 1 if centers[1] == centers[0] else 2
            if nc == 2 and centers[1] < centers[0]:
                centers[0], centers[1] = centers[1], centers[0]
    else:
        for c in range(p):
            ok = True
            for v in range(1, h + 1):
                if D[(c + v) % p] != D[_mod(c - v, p)]:
                    ok = False
                    break
            if ok:
                centers[nc] = c
                nc += 1
    for ci in range(nc):
        c = centers[ci]
        if (D1[0] - D[c]) % (8 * <long long>p):
            continue
        for u in range(ustart, uend):
            if p > 1 and _gcd(u, p) != 1:
                continue
            if _sigma_passes(D, D1, p, u, c, tau):
                found.append((u, c))
                if first_only:
                    return found
    found.sort()
    return found


cdef class _Workspace:
    cdef long p
    cdef long long* a
    cdef long long* b
    cdef long long* d1
    cdef long long* tau
    cdef long* centers

    def __cinit__(self, long p):
        cdef long n = max(p, 1)
        self.p = p
        self.a = <long long*>malloc(n * sizeof(long long))
        self.b = <long long*>malloc(n * sizeof(long long))
        self.d1 = <long long*>malloc(n * sizeof(long long))
        self.tau = <long long*>malloc((n + 3) * sizeof(long long))
        self.centers = <long*>malloc(n * sizeof(long))
        if not (self.a and self.b and self.d1 and self.tau and self.centers):
            raise MemoryError()

    def __dealloc__(self):
        free(self.a)
        free(self.b)
        free(self.d1)
        free(self.tau)
        free(self.centers)


cdef void _load_d(long long* src, long long* dst, long p) noexcept nogil:
    cdef long i
    for i in range(p):
        dst[i] = -src[i]


def scan_sigmas(long p, long q, bint relaxed=False, bint first_only=False):
    cdef _Workspace ws = _Workspace(p)
    cdef long long* r
    cdef long long* D = <long long*>malloc(max(p, 1) * sizeof(long long))
    if D == NULL:
        raise MemoryError()
    try:
        r = _neg_table(p, 1, ws.a, ws.b)
        _load_d(r, ws.d1, p)
        r = _neg_table(p, q, ws.a, ws.b)
        _load_d(r, D, p)
        return _scan(D, ws.d1, p, q, relaxed, first_only, ws.tau, ws.centers)
    finally:
        free(D)


def census_row(long p, bint relaxed=False):
    cdef _Workspace ws = _Workspace(p)
    cdef long long* r
    cdef long long* D = <long long*>malloc(max(p, 1) * sizeof(long long))
    cdef long q
    cdef list out = []
    if D == NULL:
        raise MemoryError()
    try:
        r = _neg_table(p, 1, ws.a, ws.b)
        _load_d(r, ws.d1, p)
        for q in range(1, p):
            if _gcd(p, q) != 1:
                continue
            r = _neg_table(p, q, ws.a, ws.b)
            _load_d(r, D, p)
            if _scan(D, ws.d1, p, q, relaxed, True, ws.tau, ws.centers):
                out.append(q)
        return out
    finally:
        free(D)


cdef bint _brown(long p, long q, long k, long offset) noexcept nogil:
    cdef long long s = 0, hi = 0, lo = 0
    cdef long nhi = 0, nlo = 0, i
    cdef bint first = True, has_y
    cdef int step
    for i in range(1, p + 1):
        has_y = _mod(<long long>i * q - offset, p) < k
        for step in range(2 if has_y else 1):
            if step == 0:
                s -= k
            else:
                s += p
            if first:
                hi = lo = s
                nhi = nlo = 1
                first = False
                continue
            if s > hi:
                hi = s
                nhi = 1
            elif s == hi:
                nhi += 1
            if s < lo:
                lo = s
                nlo = 1
            elif s == lo:
                nlo += 1
    return nhi == 1 and nlo == 1


def brown_unique_extrema(long p, long q, long k, long offset=0):
    return bool(_brown(p, q, k, offset))


def brown_row(long p, long offset=0):
    cdef long q, k, checked = 0
    cdef list failures = []
    for q in range(1, p):
        if _gcd(q, p) != 1:
            continue
        for k in range(1, p):
            if _gcd(k, p) != 1:
                continue
            checked += 1
            if not _brown(p, q, k, offset):
                failures.append((q, k))
    return checked, failures


def scan_tables(D, D1, long p, long q, bint relaxed=False, bint first_only=False):
    cdef _Workspace ws = _Workspace(p)
    cdef long i
    if len(D) != p or len(D1) != p:
        raise ValueError("tables must have length p")
    for i in range(p):
        ws.a[i] = D[i]
        ws.d1[i] = D1[i]
    return _scan(ws.a, ws.d1, p, q, relaxed, first_only, ws.tau, ws.centers)
