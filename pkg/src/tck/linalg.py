"""Dense exact matrices as nested lists.

Entries may be Fraction or RationalFunction values; the helpers only assume
ring operations plus truthiness for zero tests, and division where stated.
Multiplication skips zero entries, which matters because the unipotent
generators used elsewhere are very sparse.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError

Matrix = list


def identity_matrix(n: int, one=Fraction(1)) -> Matrix:
    zero = one - one
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def zero_matrix(n: int, m: int, zero=Fraction(0)) -> Matrix:
    return [[zero for _ in range(m)] for _ in range(n)]

def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    if len(a[0]) != k:
        raise DomainError("matrix shapes do not compose")
    zero = a[0][0] - a[0][0]
    out = [[zero] * m for _ in range(n)]
    for i in range(n):
        row = a[i]
        out_i = out[i]
        for t in range(k):
            x = row[t]
            if not x:
                continue
            b_t = b[t]
            for j in range(m):
                y = b_t[j]
                if y:
                    out_i[j] = out_i[j] + x * y
    return out


def mat_product(matrices) -> Matrix:
    matrices = list(matrices)
    result = matrices[0]
    for m in matrices[1:]:
        result = mat_mul(result, m)
    return result


def mat_eq(a: Matrix, b: Matrix) -> bool:
    if len(a) != len(b) or len(a[0]) != len(b[0]):
        return False
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def mat_scale(a: Matrix, c) -> Matrix:
    return [[c * x for x in row] for row in a]


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_inv(a: Matrix) -> Matrix:
    """Inverse by Gauss-Jordan elimination; entries must support division."""
    n = len(a)
    one = None
    for row in a:
        for x in row:
            if x:
                one = x / x
                break
        if one is not None:
            break
    if one is None:
        raise DomainError("zero matrix is not invertible")
    zero = one - one
    work = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col]), None)
        if pivot is None:
            raise DomainError("matrix is singular")
        work[col], work[pivot] = work[pivot], work[col]
        inv = one / work[col][col]
        work[col] = [x * inv for x in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                factor = work[r][col]
                work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
    return [row[n:] for row in work]


def mat_det(a: Matrix):
    """Determinant by fraction-producing Gaussian elimination.

    Returns immediately with 0 when some pivot column is entirely zero, so
    determinants of matrices with certified zero columns cost nothing even
    over large function fields.
    """
    n = len(a)
    work = [list(row) for row in a]
    sign = 1
    det = None
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col]), None)
        if pivot is None:
            z = work[0][0] - work[0][0]
            return z
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            sign = -sign
        p = work[col][col]
        det = p if det is None else det * p
        for r in range(col + 1, n):
            if work[r][col]:
                factor = work[r][col] / p
                work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
    return det if sign == 1 else -det


def diagonal_entries(a: Matrix) -> list:
    return [a[i][i] for i in range(len(a))]


def is_diagonal(a: Matrix) -> bool:
    return all(not x for i, row in enumerate(a) for j, x in enumerate(row) if i != j)


def diagonal_matrix(entries) -> Matrix:
    entries = list(entries)
    zero = entries[0] - entries[0]
    n = len(entries)
    return [[entries[i] if i == j else zero for j in range(n)] for i in range(n)]


def direct_sum(blocks) -> Matrix:
    blocks = [b for b in blocks]
    size = sum(len(b) for b in blocks)
    zero = blocks[0][0][0] - blocks[0][0][0]
    out = [[zero] * size for _ in range(size)]
    offset = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[offset + i][offset + j] = x
        offset += len(b)
    return out


def int_matrix(rows) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]
