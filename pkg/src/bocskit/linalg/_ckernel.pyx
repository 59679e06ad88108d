# cython: language_level=3, boundscheck=False, wraparound=False
"""GMP-backed exact kernels: row reduction, rank, matrix product.

Entries cross the boundary as Python ``int`` or ``fractions.Fraction`` and
come back the same way (``int`` whenever the denominator is 1).
"""

from fractions import Fraction

try:
    Fraction(1, 2, _normalize=False)

    def _mkfrac(n, d):
        return Fraction(n, d, _normalize=False)
except TypeError:
    _mkfrac = Fraction._from_coprime_ints

from libc.stdlib cimport malloc, free

cdef extern from "gmp.h":
    ctypedef struct __mpz_struct:
        pass
    ctypedef struct __mpq_struct:
        pass
    ctypedef __mpz_struct* mpz_ptr
    ctypedef __mpq_struct* mpq_ptr

    void mpq_init(mpq_ptr)
    void mpq_clear(mpq_ptr)
    void mpq_set(mpq_ptr, mpq_ptr)
    void mpq_set_si(mpq_ptr, long, unsigned long)
    void mpq_canonicalize(mpq_ptr)
    void mpq_add(mpq_ptr, mpq_ptr, mpq_ptr)
    void mpq_sub(mpq_ptr, mpq_ptr, mpq_ptr)
    void mpq_mul(mpq_ptr, mpq_ptr, mpq_ptr)
    void mpq_inv(mpq_ptr, mpq_ptr)
    int mpq_sgn(mpq_ptr)
    mpz_ptr mpq_numref(mpq_ptr)
    mpz_ptr mpq_denref(mpq_ptr)

    int mpz_set_str(mpz_ptr, const char*, int)
    char* mpz_get_str(char*, int, mpz_ptr)
    int mpz_fits_slong_p(mpz_ptr)
    long mpz_get_si(mpz_ptr)
    size_t mpz_sizeinbase(mpz_ptr, int)
    int mpz_cmp_ui(mpz_ptr, unsigned long)


cdef inline void _set_int(mpz_ptr z, object v) except *:
    s = format(v, "x").encode("ascii")
    if mpz_set_str(z, s, 16) != 0:
        raise ValueError("cannot convert %r" % (v,))


cdef void _load(mpq_ptr q, object x) except *:
    cdef long n
    if type(x) is int:
        if -0x3fffffffffffffff < x < 0x3fffffffffffffff:
            n = x
            mpq_set_si(q, n, 1)
        else:
            mpq_set_si(q, 0, 1)
            _set_int(mpq_numref(q), x)
        return
    num = x.numerator
    den = x.denominator
    if -0x3fffffffffffffff < num < 0x3fffffffffffffff and den < 0x3fffffffffffffff:
        mpq_set_si(q, <long>num, <unsigned long>den)
        mpq_canonicalize(q)
    else:
        _set_int(mpq_numref(q), num)
        _set_int(mpq_denref(q), den)
        mpq_canonicalize(q)


cdef object _get_int(mpz_ptr z):
    cdef size_t size
    cdef char* buf
    if mpz_fits_slong_p(z):
        return mpz_get_si(z)
    size = mpz_sizeinbase(z, 16) + 2
    buf = <char*>malloc(size)
    try:
        mpz_get_str(buf, 16, z)
        return int(buf.decode("ascii"), 16)
    finally:
        free(buf)


cdef object _store(mpq_ptr q):
    num = _get_int(mpq_numref(q))
    if mpz_cmp_ui(mpq_denref(q), 1) == 0:
        return num
    den = _get_int(mpq_denref(q))
    return _mkfrac(num, den)


cdef size_t _bits(mpq_ptr q):
    return mpz_sizeinbase(mpq_numref(q), 2) + mpz_sizeinbase(mpq_denref(q), 2)


cdef class _Block:
    """Dense nrows x ncols array of mpq_t with row pointers for cheap swaps."""
    cdef __mpq_struct* data
    cdef __mpq_struct** rows
    cdef Py_ssize_t nrows, ncols

    def __cinit__(self, Py_ssize_t nrows, Py_ssize_t ncols):
        cdef Py_ssize_t i
        self.nrows = nrows
        self.ncols = ncols
        self.data = NULL
        self.rows = NULL
        if nrows * ncols > 0:
            self.data = <__mpq_struct*>malloc(nrows * ncols * sizeof(__mpq_struct))
            if self.data == NULL:
                raise MemoryError()
            for i in range(nrows * ncols):
                mpq_init(&self.data[i])
        self.rows = <__mpq_struct**>malloc((nrows + 1) * sizeof(__mpq_struct*))
        if self.rows == NULL:
            raise MemoryError()
        for i in range(nrows):
            self.rows[i] = &self.data[i * ncols]

    def __dealloc__(self):
        cdef Py_ssize_t i
        if self.data != NULL:
            for i in range(self.nrows * self.ncols):
                mpq_clear(&self.data[i])
            free(self.data)
        if self.rows != NULL:
            free(self.rows)

    cdef void fill(self, list src) except *:
        cdef Py_ssize_t i, j
        cdef __mpq_struct* r
        for i in range(self.nrows):
            row = src[i]
            r = self.rows[i]
            for j in range(self.ncols):
                x = row[j]
                if x:
                    _load(&r[j], x)

    cdef list dump_rows(self, Py_ssize_t upto):
        cdef Py_ssize_t i, j
        cdef __mpq_struct* r
        out = []
        for i in range(upto):
            r = self.rows[i]
            row = [0] * self.ncols
            for j in range(self.ncols):
                if mpq_sgn(&r[j]) != 0:
                    row[j] = _store(&r[j])
            out.append(row)
        return out


cdef Py_ssize_t _eliminate(_Block b, list pivots, bint reduce_above) except -1:
    """Gaussian elimination in place. Returns the rank; fills ``pivots``."""
    cdef Py_ssize_t nrows = b.nrows, ncols = b.ncols
    cdef Py_ssize_t prow = 0, col, r, best, j, k, nnz
    cdef size_t bits, best_bits
    cdef __mpq_struct** rows = b.rows
    cdef __mpq_struct* pr
    cdef __mpq_struct* tr
    cdef __mpq_struct* swap
    cdef Py_ssize_t* nz
    cdef __mpq_struct inv, fac, tmp
    mpq_init(&inv)
    mpq_init(&fac)
    mpq_init(&tmp)
    nz = <Py_ssize_t*>malloc((ncols + 1) * sizeof(Py_ssize_t))
    if nz == NULL:
        raise MemoryError()
    try:
        for col in range(ncols):
            if prow >= nrows:
                break
            best = -1
            best_bits = 0
            for r in range(prow, nrows):
                if mpq_sgn(&rows[r][col]) != 0:
                    bits = _bits(&rows[r][col])
                    if best < 0 or bits < best_bits:
                        best = r
                        best_bits = bits
                        if bits <= 2:
                            break
            if best < 0:
                continue
            if best != prow:
                swap = rows[best]
                rows[best] = rows[prow]
                rows[prow] = swap
            pr = rows[prow]
            mpq_inv(&inv, &pr[col])
            nnz = 0
            for j in range(col, ncols):
                if mpq_sgn(&pr[j]) != 0:
                    mpq_mul(&pr[j], &pr[j], &inv)
                    nz[nnz] = j
                    nnz += 1
            r = 0 if reduce_above else prow + 1
            while r < nrows:
                if r != prow:
                    tr = rows[r]
                    if mpq_sgn(&tr[col]) != 0:
                        mpq_set(&fac, &tr[col])
                        for k in range(nnz):
                            j = nz[k]
                            mpq_mul(&tmp, &fac, &pr[j])
                            mpq_sub(&tr[j], &tr[j], &tmp)
                r += 1
            pivots.append(col)
            prow += 1
    finally:
        free(nz)
        mpq_clear(&inv)
        mpq_clear(&fac)
        mpq_clear(&tmp)
    return prow


def rref(list rows, Py_ssize_t ncols):
    """Reduced row echelon form. Returns (nonzero reduced rows, pivot columns)."""
    cdef Py_ssize_t nrows = len(rows)
    cdef _Block b = _Block(nrows, ncols)
    b.fill(rows)
    pivots = []
    rank = _eliminate(b, pivots, True)
    return b.dump_rows(rank), pivots


def rank(list rows, Py_ssize_t ncols):
    cdef Py_ssize_t nrows = len(rows)
    cdef _Block b = _Block(nrows, ncols)
    b.fill(rows)
    pivots = []
    return _eliminate(b, pivots, False)


def matmul(list a, list b, Py_ssize_t inner, Py_ssize_t ncols):
    """Product of an m x inner and an inner x ncols matrix (lists of rows)."""
    cdef Py_ssize_t m = len(a), i, t, j, k, nnz
    cdef _Block A = _Block(m, inner)
    cdef _Block B = _Block(inner, ncols)
    cdef _Block C = _Block(m, ncols)
    cdef __mpq_struct tmp
    cdef __mpq_struct* ar
    cdef __mpq_struct* br
    cdef __mpq_struct* cr
    cdef Py_ssize_t* offsets
    cdef Py_ssize_t* cols
    A.fill(a)
    B.fill(b)
    offsets = <Py_ssize_t*>malloc((inner + 1) * sizeof(Py_ssize_t))
    cols = <Py_ssize_t*>malloc((inner * ncols + 1) * sizeof(Py_ssize_t))
    if offsets == NULL or cols == NULL:
        free(offsets)
        free(cols)
        raise MemoryError()
    mpq_init(&tmp)
    try:
        nnz = 0
        for t in range(inner):
            offsets[t] = nnz
            br = B.rows[t]
            for j in range(ncols):
                if mpq_sgn(&br[j]) != 0:
                    cols[nnz] = j
                    nnz += 1
        offsets[inner] = nnz
        for i in range(m):
            ar = A.rows[i]
            cr = C.rows[i]
            for t in range(inner):
                if mpq_sgn(&ar[t]) == 0:
                    continue
                br = B.rows[t]
                for k in range(offsets[t], offsets[t + 1]):
                    j = cols[k]
                    mpq_mul(&tmp, &ar[t], &br[j])
                    mpq_add(&cr[j], &cr[j], &tmp)
    finally:
        mpq_clear(&tmp)
        free(offsets)
        free(cols)
    return C.dump_rows(m)
