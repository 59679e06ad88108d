"""Pure-Python exact kernels (fallback for the compiled ``_ckernel``).

Same API and same results as the compiled module: entries are ``int`` or
``Fraction``; results use ``int`` whenever the value is integral.
"""

from fractions import Fraction


def _size(x):
    if type(x) is int:
        return abs(x).bit_length() + 1
    return abs(x.numerator).bit_length() + x.denominator.bit_length()


def _norm(x):
    if type(x) is not int and x.denominator == 1:
        return x.numerator
    return x


def _eliminate(rows, ncols, reduce_above):
    nrows = len(rows)
    pivots = []
    prow = 0
    for col in range(ncols):
        if prow >= nrows:
            break
        best = -1
        best_size = 0
        for r in range(prow, nrows):
            v = rows[r][col]
            if v:
                s = _size(v)
                if best < 0 or s < best_size:
                    best, best_size = r, s
                    if s <= 2:
                        break
        if best < 0:
            continue
        rows[prow], rows[best] = rows[best], rows[prow]
        pr = rows[prow]
        p = pr[col]
        if p != 1:
            inv = Fraction(1, p) if type(p) is int else 1 / p
            for j in range(col, ncols):
                if pr[j]:
                    pr[j] = _norm(pr[j] * inv)
        nz = [j for j in range(col, ncols) if pr[j]]
        start = 0 if reduce_above else prow + 1
        for r in range(start, nrows):
            if r == prow:
                continue
            tr = rows[r]
            f = tr[col]
            if f:
                for j in nz:
                    tr[j] = tr[j] - f * pr[j]
        pivots.append(col)
        prow += 1
    return prow, pivots


def rref(rows, ncols):
    """Reduced row echelon form. Returns (nonzero reduced rows, pivot columns)."""
    work = [list(r) for r in rows]
    rank, pivots = _eliminate(work, ncols, True)
    return [[_norm(x) if x else 0 for x in r] for r in work[:rank]], pivots


def rank(rows, ncols):
    work = [list(r) for r in rows]
    return _eliminate(work, ncols, False)[0]


def matmul(a, b, inner, ncols):
    """Product of an m x inner and an inner x ncols matrix (lists of rows)."""
    bnz = [[(j, v) for j, v in enumerate(row) if v] for row in b]
    out = []
    for arow in a:
        acc = [0] * ncols
        for t, x in enumerate(arow):
            if x:
                for j, v in bnz[t]:
                    acc[j] += x * v
        out.append([_norm(v) if v else 0 for v in acc])
    return out
