"""Small exact linear algebra helpers over the package's coefficient rings.

Field elements only need +, -, *, inverse()/true division and is_zero().
Also provides a fast rank certificate over F_p for independence proofs:
full rank of an integer-reduced matrix mod p implies full rank over any
characteristic-zero field the entries were reduced from.
"""

from __future__ import annotations


def invert_matrix(rows, one):
    """Inverse of a square matrix given as list of lists of field elements."""
    n = len(rows)
    zero = one - one
    aug = [list(r) + [one if i == j else zero for j in range(n)]
           for i, r in enumerate(rows)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if not aug[r][col].is_zero():
                piv = r
                break
        if piv is None:
            raise ValueError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].inverse() if hasattr(aug[col][col], "inverse") \
            else 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and not aug[r][col].is_zero():
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def rank(rows, one) -> int:
    """Rank of a rectangular matrix of field elements (destructive copy)."""
    if not rows:
        return 0
    work = [list(r) for r in rows]
    ncols = len(work[0])
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, len(work)):
            if not work[i][col].is_zero():
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = work[r][col].inverse() if hasattr(work[r][col], "inverse") \
            else 1 / work[r][col]
        work[r] = [v * inv for v in work[r]]
        for i in range(len(work)):
            if i != r and not work[i][col].is_zero():
                f = work[i][col]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        r += 1
        if r == len(work):
            break
    return r


def rank_mod_p(sparse_rows, ncols: int, p: int) -> int:
    """Rank over F_p of rows given as {column: residue} dicts."""
    pivots: dict[int, dict] = {}
    r = 0
    for row in sparse_rows:
        cur = {c: v % p for c, v in row.items() if v % p}
        while cur:
            c = min(cur)
            piv = pivots.get(c)
            if piv is None:
                inv = pow(cur[c], p - 2, p)
                cur = {cc: (vv * inv) % p for cc, vv in cur.items()}
                pivots[c] = cur
                r += 1
                break
            f = cur[c]
            nxt = dict(cur)
            for cc, vv in piv.items():
                w = (nxt.get(cc, 0) - f * vv) % p
                if w:
                    nxt[cc] = w
                else:
                    nxt.pop(cc, None)
            cur = nxt
    return r
