# cython: language_level=3, cdivision=True
"""Checked int64 versions of the kernels in ``_pure``.

Every step mirrors ``_pure`` exactly. Any intermediate that leaves the
64-bit range raises ``OverflowError``; the caller then reruns the
pure-Python kernel, so results are always exact.
"""

from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    static inline int hp_mul(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int hp_add(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    static inline int hp_sub(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int hp_mul(long long a, long long b, long long *r) nogil
    int hp_add(long long a, long long b, long long *r) nogil
    int hp_sub(long long a, long long b, long long *r) nogil

# keep |x| well inside the range so abs() and negation never overflow
cdef long long LIMIT = 1LL << 62


cdef inline int in_range(long long x) nogil:
    return -LIMIT < x < LIMIT


cdef inline long long llabs_(long long x) nogil:
    return -x if x < 0 else x


cdef inline long long floordiv(long long a, long long b) nogil:
    cdef long long q = a // b  # C truncation under cdivision
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef inline long long floormod(long long a, long long b) nogil:
    cdef long long r = a % b
    if r != 0 and ((r < 0) != (b < 0)):
        r += b
    return r


cdef inline long long nearest(long long x, long long piv) nogil:
    # mirrors _pure._nearest; |r| < 2^62 so 2*|r| stays in range
    cdef long long q = floordiv(x, piv)
    if 2 * llabs_(floormod(x, piv)) > llabs_(piv):
        q += 1
    return q


cdef class _Buf:
    cdef long long *data
    cdef Py_ssize_t nrows, ncols

    def __cinit__(self, Py_ssize_t nrows, Py_ssize_t ncols):
        self.nrows = nrows
        self.ncols = ncols
        self.data = <long long *>malloc(max(nrows * ncols, 1) * sizeof(long long))
        if self.data == NULL:
            raise MemoryError()

    def __dealloc__(self):
        free(self.data)

    cdef void fill_identity(self):
        cdef Py_ssize_t i, j
        for i in range(self.nrows):
            for j in range(self.ncols):
                self.data[i * self.ncols + j] = 1 if i == j else 0

    cdef load(self, rows):
        cdef Py_ssize_t i, j
        cdef object x
        for i in range(self.nrows):
            row = rows[i]
            for j in range(self.ncols):
                x = row[j]
                if not (-LIMIT < x < LIMIT):
                    raise OverflowError("entry outside the int64 kernel range")
                self.data[i * self.ncols + j] = x

    cdef list dump(self, Py_ssize_t nrows=-1):
        if nrows < 0:
            nrows = self.nrows
        return [[self.data[i * self.ncols + j] for j in range(self.ncols)]
                for i in range(nrows)]

    cdef inline long long get(self, Py_ssize_t i, Py_ssize_t j):
        return self.data[i * self.ncols + j]

    cdef inline void put(self, Py_ssize_t i, Py_ssize_t j, long long x):
        self.data[i * self.ncols + j] = x

    cdef void swap_rows(self, Py_ssize_t a, Py_ssize_t b):
        cdef Py_ssize_t j
        cdef long long tmp
        for j in range(self.ncols):
            tmp = self.get(a, j)
            self.put(a, j, self.get(b, j))
            self.put(b, j, tmp)

    cdef void swap_cols(self, Py_ssize_t a, Py_ssize_t b):
        cdef Py_ssize_t i
        cdef long long tmp
        for i in range(self.nrows):
            tmp = self.get(i, a)
            self.put(i, a, self.get(i, b))
            self.put(i, b, tmp)

    cdef int add_row(self, Py_ssize_t dst, Py_ssize_t src, long long q,
                     Py_ssize_t start) except -1:
        # row_dst += q * row_src on columns >= start
        cdef Py_ssize_t j
        cdef long long prod, out
        for j in range(start, self.ncols):
            if hp_mul(q, self.get(src, j), &prod) or hp_add(self.get(dst, j), prod, &out) \
                    or not in_range(out):
                raise OverflowError("int64 kernel overflow")
            self.put(dst, j, out)
        return 0

    cdef int add_col(self, Py_ssize_t dst, Py_ssize_t src, long long q) except -1:
        cdef Py_ssize_t i
        cdef long long prod, out
        for i in range(self.nrows):
            if hp_mul(q, self.get(i, src), &prod) or hp_add(self.get(i, dst), prod, &out) \
                    or not in_range(out):
                raise OverflowError("int64 kernel overflow")
            self.put(i, dst, out)
        return 0

    cdef void negate_row(self, Py_ssize_t i):
        cdef Py_ssize_t j
        for j in range(self.ncols):
            self.put(i, j, -self.get(i, j))


def hnf_rows(a, Py_ssize_t ncols):
    cdef Py_ssize_t nrows = len(a)
    cdef _Buf m = _Buf(nrows, ncols)
    m.load(a)
    cdef Py_ssize_t r = 0, col, i, best
    cdef long long x, piv, q
    cdef bint clean
    for col in range(ncols):
        if r == nrows:
            break
        while True:
            best = -1
            for i in range(r, nrows):
                x = m.get(i, col)
                if x and (best < 0 or llabs_(x) < llabs_(m.get(best, col))):
                    best = i
            if best < 0:
                break
            if best != r:
                m.swap_rows(r, best)
            piv = m.get(r, col)
            clean = True
            for i in range(r + 1, nrows):
                x = m.get(i, col)
                if x:
                    q = nearest(x, piv)
                    if q:
                        m.add_row(i, r, -q, col)
                    if m.get(i, col):
                        clean = False
            if clean:
                break
        if m.get(r, col) != 0:
            if m.get(r, col) < 0:
                m.negate_row(r)
            piv = m.get(r, col)
            for i in range(r):
                q = floordiv(m.get(i, col), piv)
                if q:
                    m.add_row(i, r, -q, col)
            r += 1
    return m.dump(r)


def snf_triple(a, Py_ssize_t nrows, Py_ssize_t ncols):
    cdef _Buf s = _Buf(nrows, ncols)
    s.load(a)
    cdef _Buf u = _Buf(nrows, nrows)
    cdef _Buf v = _Buf(ncols, ncols)
    u.fill_identity()
    v.fill_identity()
    cdef Py_ssize_t t = 0, limit = min(nrows, ncols), i, j, bi, bj, bad
    cdef long long best, x, piv, q
    cdef bint dirty
    while t < limit:
        bi = -1
        bj = -1
        best = 0
        for i in range(t, nrows):
            for j in range(t, ncols):
                x = s.get(i, j)
                if x and (best == 0 or llabs_(x) < best):
                    best = llabs_(x)
                    bi = i
                    bj = j
        if bi < 0:
            break
        if bi != t:
            s.swap_rows(t, bi)
            u.swap_rows(t, bi)
        if bj != t:
            s.swap_cols(t, bj)
            v.swap_cols(t, bj)
        while True:
            piv = s.get(t, t)
            dirty = False
            for i in range(t + 1, nrows):
                x = s.get(i, t)
                if x:
                    q = -nearest(x, piv)
                    s.add_row(i, t, q, 0)
                    u.add_row(i, t, q, 0)
                    if s.get(i, t):
                        dirty = True
            for j in range(t + 1, ncols):
                x = s.get(t, j)
                if x:
                    q = -nearest(x, piv)
                    s.add_col(j, t, q)
                    v.add_col(j, t, q)
                    if s.get(t, j):
                        dirty = True
            if dirty:
                bi = t
                bj = t
                best = llabs_(s.get(t, t))
                for i in range(t + 1, nrows):
                    x = s.get(i, t)
                    if x and llabs_(x) < best:
                        best = llabs_(x)
                        bi = i
                        bj = t
                for j in range(t + 1, ncols):
                    x = s.get(t, j)
                    if x and llabs_(x) < best:
                        best = llabs_(x)
                        bi = t
                        bj = j
                if bi != t:
                    s.swap_rows(t, bi)
                    u.swap_rows(t, bi)
                if bj != t:
                    s.swap_cols(t, bj)
                    v.swap_cols(t, bj)
                continue
            bad = -1
            for i in range(t + 1, nrows):
                for j in range(t + 1, ncols):
                    if floormod(s.get(i, j), piv):
                        bad = i
                        break
                if bad >= 0:
                    break
            if bad < 0:
                break
            s.add_row(t, bad, 1, 0)
            u.add_row(t, bad, 1, 0)
        if s.get(t, t) < 0:
            s.negate_row(t)
            u.negate_row(t)
        t += 1
    return u.dump(), s.dump(), v.dump()


def det_bareiss(a):
    cdef Py_ssize_t n = len(a)
    if n == 0:
        return 1
    cdef _Buf m = _Buf(n, n)
    m.load(a)
    cdef Py_ssize_t k, i, j
    cdef int sign = 1
    cdef long long prev = 1, mkk, mik, p1, p2, diff
    for k in range(n - 1):
        if m.get(k, k) == 0:
            for i in range(k + 1, n):
                if m.get(i, k):
                    m.swap_rows(k, i)
                    sign = -sign
                    break
            else:
                return 0
        mkk = m.get(k, k)
        for i in range(k + 1, n):
            mik = m.get(i, k)
            for j in range(k + 1, n):
                if hp_mul(m.get(i, j), mkk, &p1) or hp_mul(mik, m.get(k, j), &p2) \
                        or hp_sub(p1, p2, &diff):
                    raise OverflowError("int64 kernel overflow")
                # exact division: Bareiss guarantees prev | diff
                m.put(i, j, diff // prev)
            m.put(i, k, 0)
        prev = mkk
    return sign * m.get(n - 1, n - 1)
