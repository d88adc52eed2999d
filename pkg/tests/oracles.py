"""Independent reference computations shared by the tests."""
from fractions import Fraction


def fraction_rref(rows):
    """Textbook Gauss-Jordan on Fractions."""
    m = [[Fraction(x) for x in r] for r in rows]
    piv, r = [], 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        m[r] = [x / m[r][c] for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        piv.append(c)
        r += 1
    return m, r, piv


def fraction_rank(rows):
    return fraction_rref(rows)[1] if rows else 0
