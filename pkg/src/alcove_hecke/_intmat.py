"""Small exact integer-matrix helpers: inverses, Smith normal form,
lattice membership.  Row convention throughout: a lattice is the set of
integer combinations of the rows of its basis matrix."""

from __future__ import annotations

from fractions import Fraction

__all__ = [
    "frac_inverse",
    "int_inverse",
    "snf",
    "lattice_contains",
]


def frac_inverse(mat):
    """Inverse of a square integer matrix, as a tuple of Fraction rows."""
    n = len(mat)
    aug = [[Fraction(mat[i][j]) for j in range(n)] + [Fraction(i == j) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def int_inverse(mat):
    inv = frac_inverse(mat)
    out = []
    for row in inv:
        irow = []
        for x in row:
            if x.denominator != 1:
                raise ValueError("matrix is not unimodular over Z")
            irow.append(int(x))
        out.append(tuple(irow))
    return tuple(out)


def snf(mat):
    """Smith normal form with transforms.

    Returns (d, U, V) where U * mat * V is diagonal with diagonal d
    (d_i >= 0, each dividing the next) and U, V are unimodular.
    """
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    A = [list(r) for r in mat]
    U = [[int(i == j) for j in range(rows)] for i in range(rows)]
    V = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, f):
        A[dst] = [a + f * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, f):
        for r in A:
            r[dst] += f * r[src]
        for r in V:
            r[dst] += f * r[src]

    def negate_row(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]

    t = 0
    while t < min(rows, cols):
        # move a nonzero pivot of minimal magnitude to (t, t)
        piv = None
        for i in range(t, rows):
            for j in range(t, cols):
                if A[i][j] != 0 and (piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        if A[t][t] < 0:
            negate_row(t)
        dirty = False
        for i in range(t + 1, rows):
            if A[i][t] % A[t][t]:
                dirty = True
            add_row(t, i, -(A[i][t] // A[t][t]))
        for j in range(t + 1, cols):
            if A[t][j] % A[t][t]:
                dirty = True
            add_col(t, j, -(A[t][j] // A[t][t]))
        if dirty or any(A[i][t] for i in range(t + 1, rows)) \
                or any(A[t][j] for j in range(t + 1, cols)):
            continue
        # divisibility fix-up: fold any entry the pivot misses back in
        bad = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if A[i][j] % A[t][t]:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            add_row(bad, t, 1)
            continue
        t += 1

    d = [A[i][i] for i in range(min(rows, cols))]
    return d, tuple(tuple(r) for r in U), tuple(tuple(r) for r in V)


def lattice_contains(basis_rows, vec) -> bool:
    """Is vec an integer combination of the given rows?"""
    if not basis_rows:
        return all(x == 0 for x in vec)
    d, _, V = snf(basis_rows)
    n = len(vec)
    w = [sum(vec[i] * V[i][j] for i in range(n)) for j in range(n)]
    r = sum(1 for x in d if x)
    for j in range(n):
        if j < r:
            if w[j] % d[j]:
                return False
        elif w[j]:
            return False
    return True
