"""Exact integer matrix routines: Smith normal form, kernels, solving.

Everything runs over Python integers (no overflow to check) with
magnitude-minimizing pivoting; matrices here stay desk-scale.
Matrices are lists of lists, row major.
"""
from __future__ import annotations


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    n, k = len(A), len(B)
    m = len(B[0]) if B else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for t in range(k):
            a = Ai[t]
            if a:
                Bt = B[t]
                row = out[i]
                for j in range(m):
                    row[j] += a * Bt[j]
    return out


def transpose(A):
    if not A:
        return []
    return [list(col) for col in zip(*A)]


def smith_normal_form(A):
    """``(D, S, T)`` with ``S*A*T = D`` diagonal, divisibility down the chain.

    ``S`` and ``T`` are unimodular.  Returns copies; ``A`` is untouched.
    """
    D = [list(row) for row in A]
    n = len(D)
    m = len(D[0]) if D else 0
    S = identity(n)
    T = identity(m)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        S[i], S[j] = S[j], S[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in T:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        D[dst] = [x + c * y for x, y in zip(D[dst], D[src])]
        S[dst] = [x + c * y for x, y in zip(S[dst], S[src])]

    def add_col(src, dst, c):
        for row in D:
            row[dst] += c * row[src]
        for row in T:
            row[dst] += c * row[src]

    def negate_row(i):
        D[i] = [-x for x in D[i]]
        S[i] = [-x for x in S[i]]

    k = 0
    while k < n and k < m:
        # pivot: smallest nonzero magnitude in the remaining block
        piv = None
        for i in range(k, n):
            for j in range(k, m):
                if D[i][j] and (piv is None or abs(D[i][j]) < abs(D[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(k, piv[0])
        swap_cols(k, piv[1])
        while True:
            # clear column k
            done = True
            for i in range(k + 1, n):
                if D[i][k]:
                    q = D[i][k] // D[k][k]
                    add_row(k, i, -q)
                    if D[i][k]:
                        swap_rows(k, i)
                        done = False
            for j in range(k + 1, m):
                if D[k][j]:
                    q = D[k][j] // D[k][k]
                    add_col(k, j, -q)
                    if D[k][j]:
                        swap_cols(k, j)
                        done = False
            if done:
                break
        if D[k][k] < 0:
            negate_row(k)
        k += 1

    # enforce the divisibility chain
    changed = True
    while changed:
        changed = False
        for i in range(min(n, m) - 1):
            a, b = D[i][i], D[i + 1][i + 1]
            if a and b and b % a != 0:
                add_col(i + 1, i, 1)
                _gauss_2x2(D, S, T, i)
                if D[i][i] < 0:
                    negate_row(i)
                if D[i + 1][i + 1] < 0:
                    negate_row(i + 1)
                changed = True
    return D, S, T


def _gauss_2x2(D, S, T, k):
    """Restore diagonal form on the 2x2 block at (k, k)."""
    n, m = len(D), len(D[0])

    def add_row(src, dst, c):
        D[dst] = [x + c * y for x, y in zip(D[dst], D[src])]
        S[dst] = [x + c * y for x, y in zip(S[dst], S[src])]

    def add_col(src, dst, c):
        for row in D:
            row[dst] += c * row[src]
        for row in T:
            row[dst] += c * row[src]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        S[i], S[j] = S[j], S[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in T:
            row[i], row[j] = row[j], row[i]

    while True:
        if D[k + 1][k] == 0 and D[k][k + 1] == 0:
            return
        entries = [
            (abs(D[i][j]), i, j)
            for i in (k, k + 1)
            for j in (k, k + 1)
            if D[i][j]
        ]
        _, pi, pj = min(entries)
        if pi != k:
            swap_rows(k, pi)
        if pj != k:
            swap_cols(k, pj)
        p = D[k][k]
        if D[k + 1][k]:
            add_row(k, k + 1, -(D[k + 1][k] // p))
        if D[k][k + 1]:
            add_col(k, k + 1, -(D[k][k + 1] // p))


def diagonal_of(D) -> list[int]:
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def invariant_factors(A) -> list[int]:
    """Nonzero diagonal entries of the Smith form, divisibility ordered."""
    if not A or not A[0]:
        return []
    D, _, _ = smith_normal_form(A)
    return [d for d in diagonal_of(D) if d != 0]


def abelian_quotient(ambient_rank: int, generators: list[list[int]]):
    """Structure of ``Z^ambient / <generator columns>``.

    ``generators`` is a list of column vectors of length ``ambient_rank``.
    Returns ``(free_rank, torsion)`` with torsion factors > 1 in a
    divisibility chain.
    """
    if ambient_rank == 0:
        return 0, []
    if not generators:
        return ambient_rank, []
    A = [[col[i] for col in generators] for i in range(ambient_rank)]
    facs = invariant_factors(A)
    torsion = [abs(d) for d in facs if abs(d) > 1]
    return ambient_rank - len(facs), torsion


def kernel_basis(A) -> list[list[int]]:
    """Basis (as columns) of the integer kernel of ``A``.

    The basis spans a direct summand, so coordinates in it are well defined.
    """
    if not A or not A[0]:
        m = len(A[0]) if A else 0
        return [[1 if i == j else 0 for i in range(m)] for j in range(m)]
    D, S, T = smith_normal_form(A)
    m = len(A[0])
    r = len([d for d in diagonal_of(D) if d != 0])
    cols = []
    for j in range(r, m):
        cols.append([T[i][j] for i in range(m)])
    return cols


def solve_in_lattice(basis_cols: list[list[int]], v: list[int]) -> list[int]:
    """Coordinates of ``v`` in the lattice spanned by the basis columns.

    Raises ``ValueError`` when ``v`` is not in the span.
    """
    if not basis_cols:
        if any(v):
            raise ValueError("vector outside lattice")
        return []
    n = len(v)
    A = [[col[i] for col in basis_cols] for i in range(n)]
    D, S, T = smith_normal_form(A)
    m = len(basis_cols)
    Sv = [sum(S[i][k] * v[k] for k in range(n)) for i in range(n)]
    y = [0] * m
    diag = diagonal_of(D)
    for i in range(n):
        if i < len(diag) and diag[i]:
            if Sv[i] % diag[i]:
                raise ValueError("vector outside lattice")
            y[i] = Sv[i] // diag[i]
        elif Sv[i]:
            raise ValueError("vector outside lattice")
    return [sum(T[i][k] * y[k] for k in range(m)) for i in range(m)]
