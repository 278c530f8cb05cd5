"""Certified genus-2 theta constants by truncated summation, the weight
4/6/10/12 generator forms, and Igusa invariants.

theta_{a,b}(tau) = sum over m in Z^2 of
    exp(i pi ((m + a/2)^t tau (m + a/2) + (m + a/2)^t b))
indexed by j = 8 b2 + 4 b1 + 2 a2 + a1.  Only the ten even characteristics
(a^t b even) are nonzero; the truncation radius is chosen so that a rigorous
tail estimate fits inside the requested accuracy, so every returned ball
contains the exact value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import gmpy2
from gmpy2 import mpfr

from . import balls as B
from . import tables
from .balls import ComplexBall, Context, DomainError, RealBall
from .symplectic import PeriodMatrix

EVEN_INDICES = (0, 1, 2, 3, 4, 6, 8, 9, 12, 15)
ODD_INDICES = (5, 7, 10, 11, 13, 14)

LAMBDA_MIN = 0.1


def char_of_index(j):
    """(a, b) vectors in {0,1}^2 from the traditional index."""
    a = (j & 1, (j >> 1) & 1)
    b = ((j >> 2) & 1, (j >> 3) & 1)
    return a, b


def index_of_char(a, b):
    return a[0] + 2 * a[1] + 4 * b[0] + 8 * b[1]


def is_even_char(j):
    a, b = char_of_index(j)
    return (a[0] * b[0] + a[1] * b[1]) % 2 == 0


@dataclass(frozen=True)
class ThetaVector:
    """The ten even squared theta constants (and the unsquared values)."""

    squares: dict        # even index j -> ComplexBall of theta_j^2
    thetas: dict         # all 16 indices -> ComplexBall (odd ones exact 0)
    at_matrix: PeriodMatrix

    def __getitem__(self, j):
        return self.squares[j]


def eig_min_lower(y1: RealBall, y2: RealBall, y3: RealBall):
    """Rigorous lower bound for the smallest eigenvalue of [[y1,y3],[y3,y2]]."""
    ctx = Context(64)
    tr = B.r_add(ctx, y1, y2)
    diff = B.r_sub(ctx, y1, y2)
    disc = B.r_add(ctx, B.r_mul(ctx, diff, diff),
                   B.r_mul(ctx, B.r_mul(ctx, y3, y3), ctx.real(4)))
    root = B.r_sqrt(ctx, disc) if disc.lower() >= 0 else None
    if root is None:
        return mpfr(0)
    lam = B.r_mul(ctx, B.r_sub(ctx, tr, root), ctx.real(0.5))
    return lam.lower()


def _tail_bound_up(lam1_lo, S):
    """Upper bound for sum over the half-integer grid outside |x|_inf < S.

    Ring |x|_inf = s has at most 16 s + 4 <= 20 s points, each contributing
    at most exp(-pi lam1 s^2); successive ring ratios are below 1/2 once
    1.5 exp(-pi lam1 S) <= 1/2, giving a geometric bound of twice the first
    ring.
    """
    up = gmpy2.context(precision=60, round=gmpy2.RoundUp)
    dn = gmpy2.context(precision=60, round=gmpy2.RoundDown)
    pi_lo = dn.const_pi()
    s = mpfr(S)
    ratio = up.mul(mpfr(1.5), up.exp(-dn.mul(dn.mul(pi_lo, mpfr(lam1_lo)), s)))
    if not ratio < 0.5:
        return mpfr("inf")
    first = up.mul(up.mul(mpfr(20), s),
                   up.exp(-dn.mul(dn.mul(pi_lo, mpfr(lam1_lo)), dn.mul(s, s))))
    return up.mul(first, mpfr(2))


def choose_truncation(lam1_lo, target_bits):
    """Smallest box radius R with rigorous tail below 2^-(target_bits+2)."""
    lam = float(lam1_lo)
    if lam <= 0:
        raise DomainError("imaginary part not verifiably positive definite")
    goal = mpfr(2) ** (-(target_bits + 2))
    R = max(3, int(math.sqrt((target_bits + 8) * math.log(2) / (math.pi * lam))))
    while True:
        t = _tail_bound_up(lam1_lo, R + 0.5)
        if t <= goal:
            return R, t
        R += 1
        if R > 10 ** 6:
            raise DomainError("truncation radius diverged")


def theta_naive(ctx: Context, tau: PeriodMatrix, target_bits: int) -> ThetaVector:
    """All sixteen theta constants at tau with accuracy ~target_bits.

    Requires lambda_1(Im tau) >= LAMBDA_MIN; callers should reduce first.
    Work is shared across characteristics: the quadratic-form exponentials
    are tabulated per axis and combined with exact eighth-root phases.
    """
    y1, y2, y3 = tau.im()
    lam1 = eig_min_lower(y1, y2, y3)
    if not lam1 >= LAMBDA_MIN:
        raise DomainError(
            f"lambda_1 lower bound {lam1} below {LAMBDA_MIN}; reduce first")
    R, tail = choose_truncation(lam1, target_bits)

    wp = Context(max(ctx.bits, target_bits + 2 * B.GUARD_BITS))
    ipi = B.c_mul_i(wp.complex(wp.pi()))
    t1, t2, t3 = tau.tau1, tau.tau2, tau.tau3

    # axis tables: exp(i pi tau_k (i + a/2)^2), indexed by n = 2i + a
    lo, hi = -R - 1, R + 1
    ax1, ax2 = {}, {}
    quarter = wp.complex(0.25)
    for n in range(2 * lo, 2 * hi + 1):
        e1 = B.c_mul(wp, B.c_mul(wp, ipi, t1),
                     B.c_mul(wp, wp.complex(n * n), quarter))
        ax1[n] = B.c_exp(wp, e1)
        e2 = B.c_mul(wp, B.c_mul(wp, ipi, t2),
                     B.c_mul(wp, wp.complex(n * n), quarter))
        ax2[n] = B.c_exp(wp, e2)

    # cross table: exp(i pi tau3 k / 2) for integer k = (2i+a1)(2j+a2)
    kmax = (2 * hi + 1) ** 2
    w = B.c_exp(wp, B.c_mul(wp, B.c_mul(wp, ipi, t3), wp.complex(0.5)))
    winv = B.c_exp(wp, B.c_mul(wp, B.c_mul(wp, B.c_neg(ipi), t3),
                               wp.complex(0.5)))
    Wp = [wp.complex(1)]
    Wn = [wp.complex(1)]
    for _ in range(kmax):
        Wp.append(B.c_mul(wp, Wp[-1], w))
        Wn.append(B.c_mul(wp, Wn[-1], winv))

    def cross(k):
        return Wp[k] if k >= 0 else Wn[-k]

    # accumulate sums for the ten even characteristics
    sums = {j: wp.complex(0) for j in EVEN_INDICES}
    by_a = {}
    for j in EVEN_INDICES:
        a, b = char_of_index(j)
        by_a.setdefault(a, []).append((j, b))

    def rot(z, e):
        e &= 3
        if e == 0:
            return z
        if e == 1:
            return B.c_mul_i(z)
        if e == 2:
            return B.c_neg(z)
        return B.c_neg(B.c_mul_i(z))

    for a, chars in by_a.items():
        a1, a2 = a
        for i in range(lo, hi + 1):
            n1 = 2 * i + a1
            if abs(n1) > 2 * R + 1:
                continue
            f1 = ax1[n1]
            for jdx in range(lo, hi + 1):
                n2 = 2 * jdx + a2
                if abs(n2) > 2 * R + 1:
                    continue
                term = B.c_mul(wp, B.c_mul(wp, f1, ax2[n2]), cross(n1 * n2))
                for j, b in chars:
                    # phase exp(i pi x^t b) = i^(n1 b1 + n2 b2)
                    e = n1 * b[0] + n2 * b[1]
                    sums[j] = B.c_add(wp, sums[j], rot(term, e))

    thetas = {}
    for j in range(16):
        if j in sums:
            val = sums[j]
            thetas[j] = ComplexBall(val.mid, B._UP.add(val.rad, tail))
        else:
            thetas[j] = wp.complex(0)
    squares = {j: B.c_mul(wp, thetas[j], thetas[j]) for j in EVEN_INDICES}
    return ThetaVector(squares=squares, thetas=thetas, at_matrix=tau)


# ---------------------------------------------------------------------------
# Generator forms of weights 4, 6, 10, 12 and Igusa invariants
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SiegelForms:
    h4: ComplexBall
    h6: ComplexBall
    h10: ComplexBall
    h12: ComplexBall


def h_forms(ctx: Context, tv: ThetaVector) -> SiegelForms:
    """The four generators evaluated from squared theta constants.

    h4 is the sum of the ten fourth powers of the squares' square roots
    (i.e. eighth powers of thetas), h10 the product of the ten squares; h6
    and h12 are signed sums over the syzygous triples and quadruple classes
    recorded in the derived coefficient tables.
    """
    sq = tv.squares
    fourth = {j: B.c_mul(ctx, sq[j], sq[j]) for j in EVEN_INDICES}

    h4 = B.c_sum(ctx, (B.c_mul(ctx, fourth[j], fourth[j])
                       for j in EVEN_INDICES))

    h6 = ctx.complex(0)
    for coef, triple in tables.H6_TRIPLES:
        prod = B.c_prod(ctx, (fourth[j] for j in triple))
        h6 = B.c_add(ctx, h6, B.c_mul_int(ctx, prod, coef))

    h10 = B.c_prod(ctx, (sq[j] for j in EVEN_INDICES))

    h12 = ctx.complex(0)
    for coef, quad in tables.H12_QUADS:
        prod = B.c_prod(ctx, (fourth[j] for j in quad))
        h12 = B.c_add(ctx, h12, B.c_mul_int(ctx, prod, coef))
    if tables.H12_DENOM != 1:
        h12 = B.c_div(ctx, h12, ctx.complex(tables.H12_DENOM))
    return SiegelForms(h4=h4, h6=h6, h10=h10, h12=h12)


def igusa_from_h(ctx: Context, f: SiegelForms):
    """(j1, j2, j3) = (h4 h6 / h10, h4^2 h12 / h10^2, h4^5 / h10^2)."""
    if not f.h10.excludes_zero():
        raise DomainError("h10 ball contains zero (product locus or "
                          "insufficient precision)")
    h10sq = B.c_mul(ctx, f.h10, f.h10)
    j1 = B.c_div(ctx, B.c_mul(ctx, f.h4, f.h6), f.h10)
    j2 = B.c_div(ctx, B.c_mul(ctx, B.c_mul(ctx, f.h4, f.h4), f.h12), h10sq)
    j3 = B.c_div(ctx, B.c_pow_int(ctx, f.h4, 5), h10sq)
    return j1, j2, j3


def theta_at(ctx: Context, tau: PeriodMatrix, target_bits: int):
    """Reduce tau into the enlarged fundamental domain, then evaluate.

    Returns (gamma, ThetaVector at gamma tau).  The reduction is certified
    on balls, so no midpoint nudging is needed: the evaluation ball at the
    reduced matrix contains the exact theta values at gamma tau.
    """
    from .reduction import reduce_to_F2eps
    from .symplectic import act

    report = reduce_to_F2eps(ctx, tau, eps=tables.DEFAULT_EPS)
    gamma = report.gamma
    tau_red, _ = act(ctx, gamma, tau)
    tv = theta_naive(ctx, tau_red, target_bits)
    return gamma, tv


# ---------------------------------------------------------------------------
# Genus-1 oracle (used by tests)
# ---------------------------------------------------------------------------

def theta1_naive(ctx: Context, a: int, b: int, tau: ComplexBall,
                 target_bits: int) -> ComplexBall:
    """One-dimensional theta with characteristic (a, b) in {0,1}."""
    y = tau.imag_part().lower()
    if not y > 0.05:
        raise DomainError("imaginary part too small")
    R = max(3, int(math.sqrt((target_bits + 8) * math.log(2)
                             / (math.pi * float(y)))) + 2)
    up = gmpy2.context(precision=60, round=gmpy2.RoundUp)
    dn = gmpy2.context(precision=60, round=gmpy2.RoundDown)
    pi_lo = dn.const_pi()
    s = mpfr(R + 0.5)
    first = up.exp(-dn.mul(dn.mul(pi_lo, y), dn.mul(s, s)))
    tail = up.mul(up.mul(mpfr(8), s), first)

    wp = Context(max(ctx.bits, target_bits + B.GUARD_BITS))
    ipi = B.c_mul_i(wp.complex(wp.pi()))
    total = wp.complex(0)
    for n in range(-R - 1, R + 2):
        xn = wp.complex(2 * n + a)
        expo = B.c_mul(wp, B.c_mul(wp, ipi, tau),
                       B.c_mul(wp, B.c_mul(wp, xn, xn), wp.complex(0.25)))
        term = B.c_exp(wp, expo)
        e = (2 * n + a) * b
        e &= 3
        if e == 1:
            term = B.c_mul_i(term)
        elif e == 2:
            term = B.c_neg(term)
        elif e == 3:
            term = B.c_neg(B.c_mul_i(term))
        total = B.c_add(wp, total, term)
    return ComplexBall(total.mid, B._UP.add(total.rad, tail))
