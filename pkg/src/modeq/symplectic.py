"""Integral GSp4 matrices, their action on the Siegel upper half space,
coset representatives, and cusp inversion.

Matrices act on symmetric 2x2 period matrices tau by
g.tau = (a tau + b)(c tau + d)^-1 in 2x2 blocks; g^* tau = c tau + d is the
cocycle.  All matrix data is exact (Python ints); only the tau action uses
ball arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import balls as B
from .balls import ComplexBall, DomainError, RealBall
from .intlinalg import (
    J4,
    complete_isotropic_pair,
    det2,
    is_gsp,
    mat_mul,
    mat_transpose,
    primitive,
    saturation,
    symplectic_pairing,
)


class GSpMatrix:
    """4x4 integral matrix with g J g^t = nu J for a positive similitude nu."""

    __slots__ = ("rows", "nu")

    def __init__(self, rows, nu=None):
        self.rows = tuple(tuple(int(x) for x in r) for r in rows)
        if len(self.rows) != 4 or any(len(r) != 4 for r in self.rows):
            raise ValueError("expected a 4x4 matrix")
        found = is_gsp(self.rows, None)
        if found is None:
            raise ValueError("matrix is not symplectic up to similitude")
        if nu is not None and found != nu:
            raise ValueError(f"similitude mismatch: {found} != {nu}")
        self.nu = found

    @classmethod
    def identity(cls):
        return cls([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])

    @classmethod
    def J(cls):
        """tau -> -tau^-1."""
        return cls([[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]])

    @classmethod
    def translation(cls, p, q, r):
        """tau -> tau + [[p, r], [r, q]]."""
        return cls([[1, 0, p, r], [0, 1, r, q], [0, 0, 1, 0], [0, 0, 0, 1]])

    @classmethod
    def gl2_embed(cls, U):
        """tau -> U^t tau U for U in GL2(Z)."""
        d = det2(U)
        if d not in (1, -1):
            raise ValueError("U must be unimodular")
        Ut = mat_transpose(U)
        # inverse transpose of U
        Vinv = [[d * U[1][1], -d * U[1][0]], [-d * U[0][1], d * U[0][0]]]
        Vit = mat_transpose(Vinv)
        return cls([[Ut[0][0], Ut[0][1], 0, 0],
                    [Ut[1][0], Ut[1][1], 0, 0],
                    [0, 0, Vit[0][0], Vit[0][1]],
                    [0, 0, Vit[1][0], Vit[1][1]]])

    @property
    def a(self):
        return tuple(r[:2] for r in self.rows[:2])

    @property
    def b(self):
        return tuple(r[2:] for r in self.rows[:2])

    @property
    def c(self):
        return tuple(r[:2] for r in self.rows[2:])

    @property
    def d(self):
        return tuple(r[2:] for r in self.rows[2:])

    def __mul__(self, other):
        if not isinstance(other, GSpMatrix):
            return NotImplemented
        return GSpMatrix(mat_mul(self.rows, other.rows))

    def inverse(self):
        """Exact inverse; integral only for similitude 1."""
        if self.nu != 1:
            raise ValueError("inverse kept integral only for similitude 1")
        a, b, c, d = self.a, self.b, self.c, self.d
        at, bt, ct, dt = (mat_transpose(m) for m in (a, b, c, d))
        rows = [[dt[0][0], dt[0][1], -bt[0][0], -bt[0][1]],
                [dt[1][0], dt[1][1], -bt[1][0], -bt[1][1]],
                [-ct[0][0], -ct[0][1], at[0][0], at[0][1]],
                [-ct[1][0], -ct[1][1], at[1][0], at[1][1]]]
        return GSpMatrix(rows)

    def transpose(self):
        return GSpMatrix(mat_transpose(self.rows))

    def max_abs(self):
        return max(abs(x) for r in self.rows for x in r)

    def __eq__(self, other):
        return isinstance(other, GSpMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"GSpMatrix({list(map(list, self.rows))})"


@dataclass(frozen=True)
class PeriodMatrix:
    """Symmetric 2x2 complex matrix tau = [[tau1, tau3], [tau3, tau2]]."""

    tau1: ComplexBall
    tau2: ComplexBall
    tau3: ComplexBall

    def entries(self):
        return (self.tau1, self.tau2, self.tau3)

    def im(self):
        """(y1, y2, y3) intervals of the imaginary part."""
        return (self.tau1.imag_part(), self.tau2.imag_part(),
                self.tau3.imag_part())

    def re(self):
        return (self.tau1.real_part(), self.tau2.real_part(),
                self.tau3.real_part())

    def det(self, ctx) -> ComplexBall:
        return B.c_sub(ctx, B.c_mul(ctx, self.tau1, self.tau2),
                       B.c_mul(ctx, self.tau3, self.tau3))

    def im_positive_definite(self) -> bool:
        """Verified Im tau > 0 on midpoints with radius margin."""
        y1, y2, y3 = self.im()
        if not y1.is_positive() or not y2.is_positive():
            return False
        # det(Im tau) > 0 via interval arithmetic at low precision
        ctx = B.Context(64)
        d = B.r_sub(ctx, B.r_mul(ctx, y1, y2), B.r_mul(ctx, y3, y3))
        return d.is_positive()

    def max_abs_upper(self):
        return max(self.tau1.abs_upper(), self.tau2.abs_upper(),
                   self.tau3.abs_upper())

    def widen(self, extra) -> "PeriodMatrix":
        from gmpy2 import mpfr
        return PeriodMatrix(
            ComplexBall(self.tau1.mid, B._UP.add(self.tau1.rad, mpfr(extra))),
            ComplexBall(self.tau2.mid, B._UP.add(self.tau2.rad, mpfr(extra))),
            ComplexBall(self.tau3.mid, B._UP.add(self.tau3.rad, mpfr(extra))))

    def __repr__(self):
        return (f"PeriodMatrix(tau1={self.tau1}, tau2={self.tau2}, "
                f"tau3={self.tau3})")


def _ball_mat2(tau: PeriodMatrix):
    return [[tau.tau1, tau.tau3], [tau.tau3, tau.tau2]]


def _mat2_mul(ctx, A, Bm):
    return [[B.c_add(ctx, B.c_mul(ctx, A[i][0], Bm[0][j]),
                     B.c_mul(ctx, A[i][1], Bm[1][j]))
             for j in range(2)] for i in range(2)]


def _mat2_add(ctx, A, Bm):
    return [[B.c_add(ctx, A[i][j], Bm[i][j]) for j in range(2)]
            for i in range(2)]


def _int_mat2_ball(ctx, M):
    return [[ctx.complex(M[i][j]) for j in range(2)] for i in range(2)]


def cocycle(ctx, g: GSpMatrix, tau: PeriodMatrix):
    """c tau + d as a 2x2 ball matrix together with its determinant."""
    T = _ball_mat2(tau)
    C = _int_mat2_ball(ctx, g.c)
    D = _int_mat2_ball(ctx, g.d)
    M = _mat2_add(ctx, _mat2_mul(ctx, C, T), D)
    det = B.c_sub(ctx, B.c_mul(ctx, M[0][0], M[1][1]),
                  B.c_mul(ctx, M[0][1], M[1][0]))
    return M, det


def act(ctx, g: GSpMatrix, tau: PeriodMatrix):
    """(gamma tau, det(gamma^* tau)).  Raises if the cocycle ball is singular."""
    T = _ball_mat2(tau)
    A = _int_mat2_ball(ctx, g.a)
    Bb = _int_mat2_ball(ctx, g.b)
    num = _mat2_add(ctx, _mat2_mul(ctx, A, T), Bb)
    M, det = cocycle(ctx, g, tau)
    if not det.excludes_zero():
        raise DomainError("cocycle determinant ball contains zero")
    inv = [[B.c_div(ctx, M[1][1], det), B.c_neg(B.c_div(ctx, M[0][1], det))],
           [B.c_neg(B.c_div(ctx, M[1][0], det)), B.c_div(ctx, M[0][0], det)]]
    R = _mat2_mul(ctx, num, inv)
    t3 = B.c_mul(ctx, B.c_add(ctx, R[0][1], R[1][0]), ctx.complex(0.5))
    out = PeriodMatrix(R[0][0], R[1][1], t3)
    return out, det


# ---------------------------------------------------------------------------
# Coset representatives for Gamma^0(ell) \ Gamma(1)
# ---------------------------------------------------------------------------

def _is_prime(n):
    if n < 2:
        return False
    for p in range(2, int(n ** 0.5) + 1):
        if n % p == 0:
            return False
    return True


def _lagrangians_mod_ell(ell):
    """All Lagrangian planes in F_ell^4, as canonical echelon row pairs."""
    seen = {}
    vecs = []
    for x0 in range(ell):
        for x1 in range(ell):
            for x2 in range(ell):
                for x3 in range(ell):
                    v = (x0, x1, x2, x3)
                    if any(v):
                        vecs.append(v)

    def pair_mod(u, v):
        return symplectic_pairing(u, v) % ell

    def rref(u, v):
        M = [list(u), list(v)]
        pivots = []
        r = 0
        for col in range(4):
            piv = None
            for i in range(r, 2):
                if M[i][col] % ell:
                    piv = i
                    break
            if piv is None:
                continue
            M[r], M[piv] = M[piv], M[r]
            inv = pow(M[r][col], -1, ell)
            M[r] = [(x * inv) % ell for x in M[r]]
            for i in range(2):
                if i != r and M[i][col] % ell:
                    f = M[i][col]
                    M[i] = [(a - f * b) % ell for a, b in zip(M[i], M[r])]
            pivots.append(col)
            r += 1
            if r == 2:
                break
        if r != 2:
            return None
        return tuple(tuple(row) for row in M)

    for i, u in enumerate(vecs):
        for v in vecs[i + 1:]:
            if pair_mod(u, v):
                continue
            key = rref(u, v)
            if key is not None and key not in seen:
                seen[key] = key
    return list(seen.values())


def _lift_lagrangian(L, ell):
    """Lift a mod-ell Lagrangian to a saturated isotropic pair over Z."""

    def centered(x):
        x %= ell
        return x - ell if x > ell // 2 else x

    r1 = primitive([centered(x) for x in L[0]])
    r2 = [centered(x) for x in L[1]]
    s = symplectic_pairing(r1, r2)
    if s % ell:
        raise AssertionError("lift lost isotropy mod ell")
    if s:
        # kill the pairing exactly: r2 += ell * w with <r1, w> = -s/ell,
        # i.e. <w, r1> = dot(w, J r1^t) = s/ell
        from .intlinalg import mat_vec, solve_integer
        Jr1 = mat_vec([list(r) for r in J4], r1)
        w = solve_integer([Jr1], [s // ell])
        if w is None:
            raise AssertionError("could not correct pairing")
        r2 = [a + ell * b for a, b in zip(r2, w)]
    assert symplectic_pairing(r1, r2) == 0
    sat = saturation([r1, r2])
    assert len(sat) == 2
    if symplectic_pairing(sat[0], sat[1]) != 0:
        raise AssertionError("saturation broke isotropy")
    # saturated lattice must still reduce to L mod ell
    red = [[x % ell for x in row] for row in sat]
    return sat, red


def coset_reps_siegel(ell):
    """Representatives of Gamma^0(ell) \\ Gamma(1): one per Lagrangian mod ell.

    The class of gamma is determined by the mod-ell row span of its upper
    2x4 block (a b); enumerating Lagrangian planes and lifting each to the
    top rows of an integral symplectic matrix yields exactly
    ell^3 + ell^2 + ell + 1 pairwise inequivalent representatives.
    """
    if not _is_prime(ell):
        raise ValueError("ell must be prime")
    reps = []
    for L in _lagrangians_mod_ell(ell):
        pair, _ = _lift_lagrangian(L, ell)
        r1, r2 = pair
        w1, w2 = complete_isotropic_pair(r1, r2)
        g = GSpMatrix([r1, r2, [-x for x in w1], [-x for x in w2]], nu=1)
        reps.append(g)
    expected = ell ** 3 + ell ** 2 + ell + 1
    if len(reps) != expected:
        raise AssertionError(f"got {len(reps)} cosets, expected {expected}")
    return reps


def inequivalent_mod_gamma0(g1: GSpMatrix, g2: GSpMatrix, ell) -> bool:
    """True when g1, g2 lie in distinct Gamma^0(ell) cosets (exact test)."""
    q = g1 * g2.inverse()
    bblk = q.b
    return any(x % ell for row in bblk for x in row)


# ---------------------------------------------------------------------------
# Cusp inversion
# ---------------------------------------------------------------------------

def cusp_invert(g: GSpMatrix) -> GSpMatrix:
    """eta in Sp4(Z) such that eta*g has zero lower-left 2x2 block.

    The bottom rows of eta form a saturated basis of the integral points of
    the row space of (-c^t  a^t); completing them to a symplectic basis
    (with the pairing correction) provides the other two rows.
    """
    a, c = g.a, g.c
    at, ct = mat_transpose(a), mat_transpose(c)
    M = [[-ct[0][0], -ct[0][1], at[0][0], at[0][1]],
         [-ct[1][0], -ct[1][1], at[1][0], at[1][1]]]
    sat = saturation(M)
    assert len(sat) == 2
    l3, l4 = sat
    if symplectic_pairing(l3, l4) != 0:
        raise AssertionError("kernel rows are not isotropic")
    l1, l2 = complete_isotropic_pair(l3, l4)
    eta = GSpMatrix([l1, l2, l3, l4], nu=1)
    prod = mat_mul(eta.rows, g.rows)
    if any(prod[i][j] != 0 for i in (2, 3) for j in (0, 1)):
        raise AssertionError("cusp inversion failed to clear lower-left block")
    return eta


def build_D_ell(ell):
    """The block-triangular isogeny representatives of level ell.

    Returns a list of (gamma, scalar) with gamma = eta * diag(1,1,ell,ell) * c
    for c in the Siegel cosets, lower-left block zero, det = ell^2, and
    scalar = ell^2 / det(d-block), an exact integer in {±1, ±ell, ±ell^2}.
    """
    reps = coset_reps_siegel(ell)
    scale = GSpMatrix([[1, 0, 0, 0], [0, 1, 0, 0],
                       [0, 0, ell, 0], [0, 0, 0, ell]])
    out = []
    for cmat in reps:
        m = scale * cmat
        eta = cusp_invert(m)
        d = eta * m
        assert all(d.rows[i][j] == 0 for i in (2, 3) for j in (0, 1))
        dd = det2(d.d)
        assert dd != 0 and (ell * ell) % dd == 0
        scalar = (ell * ell) // dd
        assert abs(scalar) in (1, ell, ell * ell)
        out.append((d, scalar))
    return out
