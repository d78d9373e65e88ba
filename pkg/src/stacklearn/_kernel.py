"""Exact rational simplex kernel.

This is the hot inner loop of every minmax / dimension computation, so it
avoids Fraction objects entirely: every rational is a (numerator,
denominator) pair of Python ints, rows are flat interleaved lists
``[n0, d0, n1, d1, ...]``, and all reductions go through ``math.gcd``.
The same source is compiled with Cython at build time (see setup.py);
``stacklearn.kernel`` picks whichever version is importable.

Pivoting uses Bland's rule throughout, which guarantees termination and
makes every answer deterministic.
"""

from math import gcd

OPTIMAL = 0
INFEASIBLE = 1
UNBOUNDED = 2


def _row_sub_scaled(row, prow, fn, fd, ncols):
    """row -= (fn/fd) * prow, in place, entries gcd-reduced."""
    for j in range(ncols):
        pn = prow[2 * j]
        if pn == 0:
            continue
        pd = prow[2 * j + 1]
        an = row[2 * j]
        ad = row[2 * j + 1]
        num = an * fd * pd - fn * pn * ad
        if num == 0:
            row[2 * j] = 0
            row[2 * j + 1] = 1
            continue
        den = ad * fd * pd
        g = gcd(num, den)
        num //= g
        den //= g
        if den < 0:
            num = -num
            den = -den
        row[2 * j] = num
        row[2 * j + 1] = den


def _row_scale(row, fn, fd, ncols):
    """row *= fn/fd, in place."""
    for j in range(ncols):
        an = row[2 * j]
        if an == 0:
            continue
        ad = row[2 * j + 1]
        num = an * fn
        den = ad * fd
        g = gcd(num, den)
        num //= g
        den //= g
        if den < 0:
            num = -num
            den = -den
        row[2 * j] = num
        row[2 * j + 1] = den


def _pivot(rows, zrow, basis, prow_i, pcol, ncols):
    prow = rows[prow_i]
    pn = prow[2 * pcol]
    pd = prow[2 * pcol + 1]
    _row_scale(prow, pd, pn, ncols)
    for i in range(len(rows)):
        if i == prow_i:
            continue
        row = rows[i]
        fn = row[2 * pcol]
        if fn != 0:
            _row_sub_scaled(row, prow, fn, row[2 * pcol + 1], ncols)
    fn = zrow[2 * pcol]
    if fn != 0:
        _row_sub_scaled(zrow, prow, fn, zrow[2 * pcol + 1], ncols)
    basis[prow_i] = pcol


def _bland_iterate(rows, zrow, basis, ncols, allowed):
    """Run simplex iterations until optimal or unbounded.

    ``allowed`` marks columns eligible to enter the basis.  The rhs is
    the last column.  Returns OPTIMAL or UNBOUNDED.
    """
    nrows = len(rows)
    rhs = ncols - 1
    while True:
        pcol = -1
        for j in range(rhs):
            if allowed[j] and zrow[2 * j] < 0:
                pcol = j
                break
        if pcol < 0:
            return OPTIMAL
        prow_i = -1
        bn = bd = 0
        for i in range(nrows):
            row = rows[i]
            an = row[2 * pcol]
            if an <= 0:
                continue
            ad = row[2 * pcol + 1]
            rn = row[2 * rhs]
            rd = row[2 * rhs + 1]
            # ratio = (rn/rd) / (an/ad)
            tn = rn * ad
            td = rd * an
            if prow_i < 0:
                prow_i, bn, bd = i, tn, td
                continue
            cmp = tn * bd - bn * td
            if cmp < 0 or (cmp == 0 and basis[i] < basis[prow_i]):
                prow_i, bn, bd = i, tn, td
        if prow_i < 0:
            return UNBOUNDED
        _pivot(rows, zrow, basis, prow_i, pcol, ncols)


def solve_standard(c_pairs, a_rows, b_pairs):
    """Minimize c.x subject to A x = b, x >= 0, exactly.

    ``c_pairs`` is a flat interleaved list for the n objective
    coefficients, ``a_rows`` a list of m flat interleaved rows of length
    n, ``b_pairs`` the interleaved rhs.  Returns a tuple
    ``(status, obj_num, obj_den, x_pairs)`` where ``x_pairs`` is the
    interleaved optimal point (empty unless status == OPTIMAL).
    """
    m = len(a_rows)
    n = len(c_pairs) // 2
    ncols = n + m + 1  # original vars, one artificial per row, rhs
    rhs = ncols - 1

    rows = []
    basis = []
    for i in range(m):
        src = a_rows[i]
        bn = b_pairs[2 * i]
        bd = b_pairs[2 * i + 1]
        neg = bn < 0
        row = [0, 1] * ncols
        for j in range(n):
            an = src[2 * j]
            ad = src[2 * j + 1]
            row[2 * j] = -an if neg else an
            row[2 * j + 1] = ad
        row[2 * (n + i)] = 1
        row[2 * rhs] = -bn if neg else bn
        row[2 * rhs + 1] = bd
        rows.append(row)
        basis.append(n + i)

    # Phase 1: minimize the sum of artificials.  Reduced costs for the
    # original columns are -sum of the column entries.
    zrow = [0, 1] * ncols
    for i in range(m):
        _row_sub_scaled(zrow, rows[i], 1, 1, ncols)
    for i in range(m):
        zrow[2 * (n + i)] = 0
        zrow[2 * (n + i) + 1] = 1

    allowed = [True] * ncols
    status = _bland_iterate(rows, zrow, basis, ncols, allowed)
    if status == UNBOUNDED:  # cannot happen: phase-1 objective >= 0
        return INFEASIBLE, 0, 1, []
    if zrow[2 * rhs] != 0:
        return INFEASIBLE, 0, 1, []

    # Drive surviving artificials out of the basis; drop redundant rows.
    keep = []
    for i in range(m):
        if basis[i] < n:
            keep.append(i)
            continue
        row = rows[i]
        pcol = -1
        for j in range(n):
            if row[2 * j] != 0:
                pcol = j
                break
        if pcol >= 0:
            _pivot(rows, zrow, basis, i, pcol, ncols)
            keep.append(i)
    if len(keep) != m:
        rows = [rows[i] for i in keep]
        basis = [basis[i] for i in keep]

    # Phase 2: rebuild reduced costs from the real objective.
    for j in range(ncols):
        zrow[2 * j] = 0
        zrow[2 * j + 1] = 1
    for j in range(n):
        zrow[2 * j] = c_pairs[2 * j]
        zrow[2 * j + 1] = c_pairs[2 * j + 1]
    for i in range(len(rows)):
        bj = basis[i]
        cn = c_pairs[2 * bj] if bj < n else 0
        if cn != 0:
            _row_sub_scaled(zrow, rows[i], cn, c_pairs[2 * bj + 1], ncols)

    for j in range(n, rhs):
        allowed[j] = False
    status = _bland_iterate(rows, zrow, basis, ncols, allowed)
    if status == UNBOUNDED:
        return UNBOUNDED, 0, 1, []

    x = [0, 1] * n
    for i in range(len(rows)):
        bj = basis[i]
        if bj < n:
            x[2 * bj] = rows[i][2 * rhs]
            x[2 * bj + 1] = rows[i][2 * rhs + 1]
    # zrow rhs holds -objective
    on = -zrow[2 * rhs]
    od = zrow[2 * rhs + 1]
    return OPTIMAL, on, od, x
