"""Exact dense linear algebra over F_p or Q (just enough for rank counts)."""

from fractions import Fraction


def matrix_rank(rows, p) -> int:
    """Rank by Gaussian elimination; ``rows`` is consumed as a copy."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    top = 0
    for col in range(ncols):
        pivot = None
        for i in range(top, len(rows)):
            if rows[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        rows[top], rows[pivot] = rows[pivot], rows[top]
        prow = rows[top]
        if p is not None:
            inv = pow(prow[col], -1, p)
            for i in range(top + 1, len(rows)):
                c = rows[i][col]
                if c:
                    f = c * inv % p
                    ri = rows[i]
                    for j in range(col, ncols):
                        ri[j] = (ri[j] - f * prow[j]) % p
        else:
            inv = Fraction(1) / prow[col]
            for i in range(top + 1, len(rows)):
                c = rows[i][col]
                if c:
                    f = c * inv
                    ri = rows[i]
                    for j in range(col, ncols):
                        ri[j] = ri[j] - f * prow[j]
        top += 1
        rank += 1
        if top == len(rows):
            break
    return rank
