"""Exact integer linear algebra on small matrices.

Everything here works on plain Python ints (lists/tuples of rows) at the
tiny sizes this package needs (2x4, 4x4, 5x7).  Column-style Hermite
reduction provides saturated kernels and integral system solving; on top of
that sits the symplectic pairing machinery used to complete isotropic pairs
to symplectic bases.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

# Standard symplectic form in 2x2 blocks (0 I; -I 0).
J4 = ((0, 0, 1, 0), (0, 0, 0, 1), (-1, 0, 0, 0), (0, -1, 0, 0))


def mat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    assert len(A[0]) == k
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m)]
            for i in range(n)]


def mat_vec(A, v):
    return [sum(r[j] * v[j] for j in range(len(v))) for r in A]


def mat_transpose(A):
    return [list(col) for col in zip(*A)]


def mat_identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_neg(A):
    return [[-x for x in row] for row in A]


def mat_eq(A, B):
    return all(tuple(ra) == tuple(rb) for ra, rb in zip(A, B))


def mat_scalar(A, s):
    return [[s * x for x in row] for row in A]


def det2(m):
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def det4(A):
    """Determinant by fraction-free expansion (4x4 only)."""
    total = 0
    rows = [0, 1, 2, 3]
    import itertools
    for perm in itertools.permutations(rows):
        sign = 1
        seen = list(perm)
        for i in range(4):
            for j in range(i + 1, 4):
                if seen[i] > seen[j]:
                    sign = -sign
        term = sign
        for i in range(4):
            term *= A[i][perm[i]]
        total += term
    return total


def symplectic_pairing(u, v):
    """<u, v> = u J v^t for row 4-vectors."""
    return u[0] * v[2] + u[1] * v[3] - u[2] * v[0] - u[3] * v[1]


def is_gsp(A, nu=None):
    """Check A J A^t = nu J exactly; returns the similitude or None."""
    P = mat_mul(mat_mul(A, [list(r) for r in J4]), mat_transpose(A))
    cand = None
    for i in range(4):
        for j in range(4):
            expected = J4[i][j]
            if expected == 0:
                if P[i][j] != 0:
                    return None
            else:
                v = P[i][j] * expected  # +nu if consistent
                if cand is None:
                    cand = v
                elif v != cand:
                    return None
    if cand is None or cand <= 0:
        return None
    if nu is not None and cand != nu:
        return None
    return cand


def content(v):
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    return g


def primitive(v):
    g = content(v)
    if g in (0, 1):
        return list(v)
    return [x // g for x in v]


# ---------------------------------------------------------------------------
# Hermite-style column reduction
# ---------------------------------------------------------------------------

def _col_hnf(A):
    """Column echelon form via unimodular column operations.

    Returns (H, U) with H = A U, U unimodular, and the nonzero columns of H
    in echelon position (working top row down, gcd pivoting).
    """
    n = len(A)
    m = len(A[0]) if n else 0
    H = [list(r) for r in A]
    U = mat_identity(m)

    def col_addmul(j, k, q):
        for i in range(n):
            H[i][j] += q * H[i][k]
        for i in range(m):
            U[i][j] += q * U[i][k]

    def col_swap(j, k):
        for i in range(n):
            H[i][j], H[i][k] = H[i][k], H[i][j]
        for i in range(m):
            U[i][j], U[i][k] = U[i][k], U[i][j]

    piv_col = 0
    for row in range(n):
        if piv_col >= m:
            break
        # gcd sweep: make all entries right of piv_col zero in this row
        while True:
            nz = [j for j in range(piv_col, m) if H[row][j] != 0]
            if not nz:
                break
            jmin = min(nz, key=lambda j: abs(H[row][j]))
            col_swap(piv_col, jmin)
            done = True
            for j in range(piv_col + 1, m):
                if H[row][j] != 0:
                    q = -(H[row][j] // H[row][piv_col])
                    col_addmul(j, piv_col, q)
                    if H[row][j] != 0:
                        done = False
            if done:
                break
        if H[row][piv_col] != 0:
            if H[row][piv_col] < 0:
                for i in range(n):
                    H[i][piv_col] = -H[i][piv_col]
                for i in range(m):
                    U[i][piv_col] = -U[i][piv_col]
            piv_col += 1
    return H, U, piv_col


def kernel_basis(A):
    """Saturated basis of {x : A x = 0, x integral}, as a list of columns."""
    H, U, rank = _col_hnf(A)
    m = len(U)
    return [[U[i][j] for i in range(m)] for j in range(rank, m)]


def solve_integer(A, b):
    """One integral solution x of A x = b, or None if none exists.

    Relies on the column echelon structure of _col_hnf: every column has
    zeros above its pivot row, so unknowns resolve one pivot row at a time.
    """
    H, U, rank = _col_hnf(A)
    n = len(A)
    m = len(U)
    y = [0] * m
    resid = list(b)
    col = 0
    for row in range(n):
        if col < rank and H[row][col] != 0:
            if resid[row] % H[row][col] != 0:
                return None
            q = resid[row] // H[row][col]
            y[col] = q
            for i in range(n):
                resid[i] -= q * H[i][col]
            col += 1
        elif resid[row] != 0:
            return None
    return mat_vec(U, y)


def saturation(rows):
    """Saturated basis of (ℚ-span of rows) ∩ ℤ^m as a list of rows."""
    # x in span(rows) iff x ⟂ kernel of rows-as-matrix
    N = kernel_basis(rows)          # columns of length m
    if not N:
        return [list(r) for r in mat_identity(len(rows[0]))]
    M = [list(col) for col in N]    # treat kernel vectors as rows
    sat_cols = kernel_basis(M)
    return [list(c) for c in sat_cols]


# ---------------------------------------------------------------------------
# Symplectic completion
# ---------------------------------------------------------------------------

def _size_reduce_against(w, basis):
    """Shrink w by integer multiples of basis vectors (plain L2 rounding)."""
    out = list(w)
    for _ in range(4):
        changed = False
        for b in basis:
            nb = sum(x * x for x in b)
            if nb == 0:
                continue
            q = round(Fraction(sum(x * y for x, y in zip(out, b)), nb))
            if q:
                out = [x - q * y for x, y in zip(out, b)]
                changed = True
        if not changed:
            break
    return out


def complete_isotropic_pair(u, v):
    """Given a saturated isotropic pair (u, v), find (w1, w2) with

    <w1,u> = 1, <w1,v> = 0, <w2,u> = 0, <w2,v> = 1, <w1,w2> = 0.

    The pairing corrections keep all constraints exact; the result rows are
    size-reduced against the lattice spanned by u and v.
    """
    assert symplectic_pairing(u, v) == 0, "pair must be isotropic"
    # <x, u> = x J u^t = dot(x, J u^t), so rows J u^t, J v^t give the map
    Ju = mat_vec([list(r) for r in J4], list(u))
    Jv = mat_vec([list(r) for r in J4], list(v))
    A = [Ju, Jv]
    w1 = solve_integer(A, [1, 0])
    w2 = solve_integer(A, [0, 1])
    if w1 is None or w2 is None:
        raise ValueError("pair is not saturated; completion impossible")
    s = symplectic_pairing(w1, w2)
    # <w1, w2 + z u + t v> = s + z  (since <w1,u>=1, <w1,v>=0)
    w2 = [a - s * b for a, b in zip(w2, u)]
    assert symplectic_pairing(w1, w2) == 0
    # size reduction: w -> w + x u + y v changes <w1,w2> by (z - y) terms;
    # reduce w1 freely, then re-correct w2.
    w1 = _size_reduce_against(w1, [u, v])
    w2 = _size_reduce_against(w2, [u, v])
    s = symplectic_pairing(w1, w2)
    w2 = [a - s * b for a, b in zip(w2, u)]
    assert symplectic_pairing(w1, u) == 1 and symplectic_pairing(w1, v) == 0
    assert symplectic_pairing(w2, u) == 0 and symplectic_pairing(w2, v) == 1
    assert symplectic_pairing(w1, w2) == 0
    return w1, w2
