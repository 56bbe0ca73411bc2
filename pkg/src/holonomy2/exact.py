"""Exact linear algebra over the rationals.

Matrices are numpy object arrays filled with fractions.Fraction.  Everything
here is plain Gaussian elimination; sizes stay small (dims <= a few dozen) so
clarity wins over speed.
"""

from fractions import Fraction

import numpy as np

ZERO = Fraction(0)
ONE = Fraction(1)


def fr(x):
    """Coerce ints, Fractions and 'p/q' strings to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    raise TypeError(f"cannot make an exact rational out of {x!r}")


def fmat(rows):
    """Build an object-dtype matrix of Fractions from nested sequences."""
    a = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            a[i, j] = fr(x)
    return a


def fvec(entries):
    a = np.empty(len(entries), dtype=object)
    for i, x in enumerate(entries):
        a[i] = fr(x)
    return a


def fzeros(*shape):
    a = np.empty(shape, dtype=object)
    a[...] = ZERO
    return a


def feye(n):
    a = fzeros(n, n)
    for i in range(n):
        a[i, i] = ONE
    return a


def farray(nested):
    """Arbitrary-rank object array of Fractions."""
    a = np.array(nested, dtype=object)
    flat = a.reshape(-1)
    for i, x in enumerate(flat):
        flat[i] = fr(x)
    return flat.reshape(a.shape)


def all_zero(a):
    return all(x == 0 for x in np.asarray(a, dtype=object).reshape(-1))


def mat_eq(a, b):
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    return a.shape == b.shape and all(
        x == y for x, y in zip(a.reshape(-1), b.reshape(-1))
    )


def rref(a):
    """Reduced row echelon form.  Returns (R, pivot_columns)."""
    r = np.array(a, dtype=object)
    nrows, ncols = r.shape
    pivots = []
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        pivot_row = None
        for i in range(row, nrows):
            if r[i, col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != row:
            r[[row, pivot_row], :] = r[[pivot_row, row], :]
        r[row, :] = r[row, :] / r[row, col]
        for i in range(nrows):
            if i != row and r[i, col] != 0:
                r[i, :] = r[i, :] - r[i, col] * r[row, :]
        pivots.append(col)
        row += 1
    return r, pivots


def rank(a):
    if a.size == 0:
        return 0
    return len(rref(a)[1])


def nullspace(a):
    """Columns span ker(a); the basis is the canonical rref one."""
    nrows, ncols = a.shape
    r, pivots = rref(a)
    free = [j for j in range(ncols) if j not in pivots]
    basis = fzeros(ncols, len(free))
    for k, j in enumerate(free):
        basis[j, k] = ONE
        for i, pc in enumerate(pivots):
            basis[pc, k] = -r[i, j]
    return basis


def solve(a, b):
    """One exact solution of a x = b, or None if inconsistent.

    b may be a vector or a matrix (solved column by column).
    """
    b_was_vec = b.ndim == 1
    bm = b.reshape(-1, 1) if b_was_vec else b
    nrows, ncols = a.shape
    aug = fzeros(nrows, ncols + bm.shape[1])
    aug[:, :ncols] = a
    aug[:, ncols:] = bm
    r, pivots = rref(aug)
    # inconsistent iff some pivot falls in the augmented block
    if any(p >= ncols for p in pivots):
        return None
    x = fzeros(ncols, bm.shape[1])
    for i, p in enumerate(pivots):
        x[p, :] = r[i, ncols:]
    return x.reshape(-1) if b_was_vec else x


def in_column_space(a, v):
    """Membership of v in the span of the columns of a, decided by rank."""
    if all(x == 0 for x in v.reshape(-1)):
        return True
    aug = fzeros(a.shape[0], a.shape[1] + 1)
    aug[:, : a.shape[1]] = a
    aug[:, a.shape[1]] = v
    return rank(aug) == rank(a)


def column_space_basis(a):
    """The pivot columns of a, as a matrix."""
    _, pivots = rref(a)
    basis = fzeros(a.shape[0], len(pivots))
    for k, j in enumerate(pivots):
        basis[:, k] = a[:, j]
    return basis


def pivot_section(a):
    """For a surjective matrix a (m x n), a right inverse s with a s = I.

    The section is supported on the pivot columns of the rref, so it is
    deterministic for a given matrix.
    """
    m, n = a.shape
    if rank(a) != m:
        raise ValueError("matrix is not surjective, no section exists")
    _, pivots = rref(a)
    sub = fzeros(m, m)
    for k, j in enumerate(pivots):
        sub[:, k] = a[:, j]
    inv = solve(sub, feye(m))
    s = fzeros(n, m)
    for k, j in enumerate(pivots):
        s[j, :] = inv[k, :]
    return s


def coordinates_in_basis(basis, v):
    """Coefficients of v in the given column basis, or None if outside."""
    return solve(basis, v)


def mat_mul(a, b):
    return np.asarray(a, dtype=object).dot(np.asarray(b, dtype=object))


def to_floats(a):
    return np.asarray(a, dtype=object).astype(float)
