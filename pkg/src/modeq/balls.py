"""Rigorous complex ball arithmetic on top of gmpy2 (MPFR/MPC).

A ball is an arbitrary-precision midpoint together with a nonnegative radius
bounding the distance to the exact value.  Every operation returns a ball
that contains the image of every point of its operand balls.  Midpoints are
computed with correctly-rounded MPFR/MPC arithmetic; the rounding slack is
absorbed into the radius, so containment is unconditional.

"Accuracy N" of a ball means radius <= 2^-N.  Working mantissa precision is
carried by a Context and is normally chosen as the target accuracy plus a
guard margin.

All bound computations go through directed-rounding contexts; plain Python
operators on mpfr values are avoided in rigor-critical paths because they
round through gmpy2's global (double-precision) context.
"""

from __future__ import annotations

import math
from fractions import Fraction

import gmpy2
from gmpy2 import mpc, mpfr, mpz

RADIUS_BITS = 30
GUARD_BITS = 32

# Shared directed-rounding contexts for radius bookkeeping.  Radius values
# are always upper bounds, so radius arithmetic rounds up; lower bounds
# (used for exclusion tests) round down.  Context methods convert operands
# exactly before rounding once, so feeding them high-precision midpoints is
# safe.
_UP = gmpy2.context(precision=RADIUS_BITS, round=gmpy2.RoundUp)
_DOWN = gmpy2.context(precision=RADIUS_BITS, round=gmpy2.RoundDown)

_ZERO = mpfr(0)
_INF = mpfr("inf")

ACC_EXACT = math.inf
ACC_NONE = -math.inf


class BallError(Exception):
    """Base class for ball arithmetic failures."""


class DomainError(BallError):
    """Operand ball violates a domain requirement (e.g. divisor contains 0)."""


class PrecisionError(BallError):
    """Result undecidable at the current precision; caller should restart."""


def _to_mpfr_exact(x):
    """Convert int/float/mpfr to mpfr without any rounding."""
    if isinstance(x, mpfr):
        return x
    if isinstance(x, (int, mpz)):
        n = int(x)
        return mpfr(n, precision=max(2, n.bit_length() + 1))
    if isinstance(x, float):
        return mpfr(x, precision=53)
    raise TypeError(f"cannot convert {type(x).__name__} exactly")


def _rad(x):
    """Convert a radius-like value to an upper-bounding mpfr."""
    if isinstance(x, mpfr):
        return x
    return _UP.add(_to_mpfr_exact(x), _ZERO)


class Context:
    """Working precision for midpoint arithmetic (mantissa bits >= 2)."""

    __slots__ = ("bits", "mid", "eps")

    def __init__(self, bits: int):
        if bits < 2:
            raise ValueError("precision must be at least 2 bits")
        self.bits = int(bits)
        self.mid = gmpy2.context(precision=self.bits)
        # one ulp of rounding slack per component, doubled for complex norm
        self.eps = mpfr(2, precision=8) ** (2 - self.bits)

    def __repr__(self):
        return f"Context({self.bits})"

    def double(self) -> "Context":
        return Context(2 * self.bits)

    def ulp_rad(self, m):
        """Radius upper bound for the rounding error of a midpoint m."""
        a = _UP.abs(m)
        if not gmpy2.is_finite(a):
            return _INF
        return _UP.mul(a, self.eps)

    # -- constructors -------------------------------------------------------

    def real(self, value, rad=0) -> "RealBall":
        if isinstance(value, RealBall):
            if rad == 0:
                return value
            return RealBall(value.mid, _UP.add(value.rad, _rad(rad)))
        if isinstance(value, Fraction):
            num, den = mpz(value.numerator), mpz(value.denominator)
            lo = gmpy2.context(precision=self.bits, round=gmpy2.RoundDown).div(num, den)
            hi = gmpy2.context(precision=self.bits, round=gmpy2.RoundUp).div(num, den)
            mid = self.mid.div(num, den)
            return RealBall(mid, _UP.add(_UP.sub(hi, lo), _rad(rad)))
        exact = _to_mpfr_exact(value)
        mid = self.mid.add(exact, _ZERO)
        extra = _ZERO if mid == exact else self.ulp_rad(mid)
        return RealBall(mid, _UP.add(extra, _rad(rad)))

    def complex(self, re=0, im=0, rad=0) -> "ComplexBall":
        if isinstance(re, ComplexBall):
            if rad == 0:
                return re
            return ComplexBall(re.mid, _UP.add(re.rad, _rad(rad)))
        if isinstance(re, (complex, mpc)):
            rb = self.real(float(re.real) if isinstance(re, complex) else re.real)
            ib = self.real(float(re.imag) if isinstance(re, complex) else re.imag)
        else:
            rb = re if isinstance(re, RealBall) else self.real(re)
            ib = im if isinstance(im, RealBall) else self.real(im)
        mid = mpc(rb.mid, ib.mid, precision=(self.bits, self.bits))
        extra = _ZERO
        if mid.real != rb.mid or mid.imag != ib.mid:
            extra = self.ulp_rad(mid)
        r = _UP.add(_UP.add(rb.rad, ib.rad), _UP.add(extra, _rad(rad)))
        return ComplexBall(mid, r)

    def pi(self) -> "RealBall":
        mid = self.mid.const_pi()
        return RealBall(mid, self.ulp_rad(mid))


class RealBall:
    """Interval mid +/- rad on the real line."""

    __slots__ = ("mid", "rad")

    def __init__(self, mid, rad=_ZERO):
        self.mid = _to_mpfr_exact(mid)
        self.rad = _rad(rad)
        if gmpy2.is_nan(self.mid) or gmpy2.is_nan(self.rad) or self.rad < 0:
            self.mid = mpfr("nan")
            self.rad = _INF

    @property
    def ok(self) -> bool:
        return gmpy2.is_finite(self.mid) and gmpy2.is_finite(self.rad)

    def contains_zero(self) -> bool:
        return not self.excludes_zero()

    def excludes_zero(self) -> bool:
        return self.ok and _DOWN.sub(_DOWN.abs(self.mid), self.rad) > 0

    def is_positive(self) -> bool:
        """Verified: every point of the interval is > 0."""
        return self.ok and self.lower() > 0

    def is_negative(self) -> bool:
        return self.ok and self.upper() < 0

    def lower(self):
        return _DOWN.sub(self.mid, self.rad)

    def upper(self):
        return _UP.add(self.mid, self.rad)

    def abs_lower(self):
        lo, hi = self.lower(), self.upper()
        if lo > 0:
            return lo
        if hi < 0:
            return -hi
        return _ZERO

    def abs_upper(self):
        return _UP.add(_UP.abs(self.mid), self.rad)

    def contains(self, x) -> bool:
        if isinstance(x, RealBall):
            return bool(_UP.add(_abs_diff_upper(self.mid, x.mid), x.rad) <= self.rad)
        lo, hi = _interval_fracs(self.mid, self.rad)
        xf = x if isinstance(x, Fraction) else _frac_of_mpfr(_to_mpfr_exact(x))
        return lo <= xf <= hi

    def overlaps(self, other: "RealBall") -> bool:
        d = _abs_diff_lower(self.mid, other.mid)
        return bool(_DOWN.sub(d, _UP.add(self.rad, other.rad)) <= 0)

    def __repr__(self):
        return f"[{self.mid} +/- {self.rad}]"


def _frac_of_mpfr(x) -> Fraction:
    """Exact rational value of a finite mpfr."""
    if x == 0:
        return Fraction(0)
    m, e = x.as_mantissa_exp()
    return Fraction(int(m)) * Fraction(2) ** int(e)


def _abs_diff_upper(a, b):
    """Upper bound for |a - b| (a, b exact mpfr)."""
    u = _UP.sub(a, b)
    l = _DOWN.sub(a, b)
    return max(_UP.abs(u), _UP.abs(l))


def _abs_diff_lower(a, b):
    """Lower bound for |a - b|."""
    u = _UP.sub(a, b)
    l = _DOWN.sub(a, b)
    if l > 0:
        return l
    if u < 0:
        return _DOWN.abs(u)
    return _ZERO


def _cabs_diff_upper(a, b):
    """Upper bound for |a - b| with a, b mpc."""
    dre = _abs_diff_upper(a.real, b.real)
    dim = _abs_diff_upper(a.imag, b.imag)
    return _UP.sqrt(_UP.add(_UP.mul(dre, dre), _UP.mul(dim, dim)))


def _cabs_diff_lower(a, b):
    dre = _abs_diff_lower(a.real, b.real)
    dim = _abs_diff_lower(a.imag, b.imag)
    return _DOWN.sqrt(_DOWN.add(_DOWN.mul(dre, dre), _DOWN.mul(dim, dim)))


class ComplexBall:
    """Disk |z - mid| <= rad in the complex plane."""

    __slots__ = ("mid", "rad")

    def __init__(self, mid, rad=_ZERO):
        if isinstance(mid, mpc):
            self.mid = mid
        elif isinstance(mid, mpfr):
            self.mid = mpc(mid, _ZERO, precision=(mid.precision, mid.precision))
        else:
            ex = _to_mpfr_exact(mid)
            self.mid = mpc(ex, _ZERO, precision=(ex.precision, ex.precision))
        self.rad = _rad(rad)
        if (gmpy2.is_nan(self.mid.real) or gmpy2.is_nan(self.mid.imag)
                or gmpy2.is_nan(self.rad) or self.rad < 0):
            self.mid = mpc("nan+nanj")
            self.rad = _INF

    @property
    def ok(self) -> bool:
        return (gmpy2.is_finite(self.mid.real) and gmpy2.is_finite(self.mid.imag)
                and gmpy2.is_finite(self.rad))

    def real_part(self) -> RealBall:
        return RealBall(self.mid.real, self.rad)

    def imag_part(self) -> RealBall:
        return RealBall(self.mid.imag, self.rad)

    def abs_upper(self):
        return _UP.add(_UP.abs(self.mid), self.rad)

    def abs_lower(self):
        lo = _DOWN.sub(_DOWN.abs(self.mid), self.rad)
        return lo if lo > 0 else _ZERO

    def abs_ball(self) -> RealBall:
        """Interval containing |z| for every z in the disk."""
        mid = _UP.abs(self.mid)
        err = _UP.mul(mid, mpfr(2) ** (1 - RADIUS_BITS))
        return RealBall(mid, _UP.add(self.rad, err))

    def contains_zero(self) -> bool:
        return not self.excludes_zero()

    def excludes_zero(self) -> bool:
        return self.ok and _DOWN.sub(_DOWN.abs(self.mid), self.rad) > 0

    def contains(self, z) -> bool:
        if isinstance(z, ComplexBall):
            d = _UP.add(_cabs_diff_upper(self.mid, z.mid), z.rad)
            return bool(d <= self.rad)
        if isinstance(z, complex):
            zre, zim = Fraction(z.real), Fraction(z.imag)
        elif isinstance(z, mpc):
            zre, zim = _frac_of_mpfr(z.real), _frac_of_mpfr(z.imag)
        elif isinstance(z, Fraction):
            zre, zim = z, Fraction(0)
        else:
            zre, zim = _frac_of_mpfr(_to_mpfr_exact(z)), Fraction(0)
        dre = _frac_of_mpfr(self.mid.real) - zre
        dim = _frac_of_mpfr(self.mid.imag) - zim
        return dre * dre + dim * dim <= _frac_of_mpfr(self.rad) ** 2

    def overlaps(self, other: "ComplexBall") -> bool:
        d = _cabs_diff_lower(self.mid, other.mid)
        return bool(_DOWN.sub(d, _UP.add(self.rad, other.rad)) <= 0)

    def conj(self) -> "ComplexBall":
        p = max(self.mid.precision)
        neg = gmpy2.context(precision=p).minus(self.mid.imag)
        return ComplexBall(mpc(self.mid.real, neg, precision=self.mid.precision),
                           self.rad)

    def to_dict(self, hexfmt=False) -> dict:
        """Serialize as {mid_re, mid_im, rad} strings for debug output."""
        if hexfmt:
            def fmt(x):
                if x == 0:
                    return "0"
                digs, exp, _ = x.digits(16)
                return f"0.{digs}@{exp}"
            return {"mid_re": fmt(self.mid.real), "mid_im": fmt(self.mid.imag),
                    "rad": fmt(self.rad)}
        return {"mid_re": str(self.mid.real), "mid_im": str(self.mid.imag),
                "rad": str(self.rad)}

    def __repr__(self):
        return f"[{self.mid} +/- {self.rad}]"


def _invalid_c():
    return ComplexBall(mpc("nan+nanj"), _INF)


def _invalid_r():
    return RealBall(mpfr("nan"), _INF)


# ---------------------------------------------------------------------------
# Real interval operations
# ---------------------------------------------------------------------------

def r_add(ctx, a: RealBall, b: RealBall) -> RealBall:
    m = ctx.mid.add(a.mid, b.mid)
    return RealBall(m, _UP.add(_UP.add(a.rad, b.rad), ctx.ulp_rad(m)))


def r_sub(ctx, a: RealBall, b: RealBall) -> RealBall:
    m = ctx.mid.sub(a.mid, b.mid)
    return RealBall(m, _UP.add(_UP.add(a.rad, b.rad), ctx.ulp_rad(m)))


def r_neg(a: RealBall) -> RealBall:
    return RealBall(gmpy2.context(precision=a.mid.precision).minus(a.mid), a.rad)


def r_mul(ctx, a: RealBall, b: RealBall) -> RealBall:
    m = ctx.mid.mul(a.mid, b.mid)
    prop = _UP.add(_UP.add(_UP.mul(_UP.abs(a.mid), b.rad),
                           _UP.mul(_UP.abs(b.mid), a.rad)),
                   _UP.mul(a.rad, b.rad))
    return RealBall(m, _UP.add(prop, ctx.ulp_rad(m)))


def r_div(ctx, a: RealBall, b: RealBall) -> RealBall:
    if not b.excludes_zero():
        raise DomainError("division by interval containing zero")
    m = ctx.mid.div(a.mid, b.mid)
    blo = _DOWN.sub(_DOWN.abs(b.mid), b.rad)
    num = _UP.add(_UP.mul(a.rad, _UP.abs(b.mid)), _UP.mul(_UP.abs(a.mid), b.rad))
    prop = _UP.div(num, _DOWN.mul(blo, _DOWN.abs(b.mid)))
    return RealBall(m, _UP.add(prop, ctx.ulp_rad(m)))


def r_sqrt(ctx, a: RealBall) -> RealBall:
    """Square root of a nonnegative interval; widens around 0 if it contains 0."""
    if not a.ok:
        return _invalid_r()
    lo = a.lower()
    if lo <= 0:
        if a.upper() < 0:
            raise DomainError("sqrt of negative interval")
        hi = _UP.sqrt(a.abs_upper())
        return RealBall(_ZERO, hi)
    m = ctx.mid.sqrt(a.mid)
    prop = _UP.div(a.rad, _DOWN.mul(mpfr(2), _DOWN.sqrt(lo)))
    return RealBall(m, _UP.add(prop, ctx.ulp_rad(m)))


def r_exp(ctx, a: RealBall) -> RealBall:
    if not a.ok:
        return _invalid_r()
    m = ctx.mid.exp(a.mid)
    ub = _UP.exp(a.upper())
    prop = _UP.mul(ub, _UP.expm1(a.rad))
    return RealBall(m, _UP.add(prop, ctx.ulp_rad(m)))


def r_log(ctx, a: RealBall) -> RealBall:
    lo = a.lower()
    if lo <= 0:
        raise DomainError("log of interval touching (-inf, 0]")
    m = ctx.mid.log(a.mid)
    prop = _UP.div(a.rad, lo)
    return RealBall(m, _UP.add(prop, ctx.ulp_rad(m)))


def r_abs(a: RealBall) -> RealBall:
    p = a.mid.precision
    return RealBall(gmpy2.context(precision=p).abs(a.mid), a.rad)


def r_min(a: RealBall, b: RealBall) -> RealBall:
    return a if a.mid <= b.mid else b


def r_max(a: RealBall, b: RealBall) -> RealBall:
    return a if a.mid >= b.mid else b


# ---------------------------------------------------------------------------
# Complex disk operations
# ---------------------------------------------------------------------------

def c_add(ctx, a: ComplexBall, b: ComplexBall) -> ComplexBall:
    m = ctx.mid.add(a.mid, b.mid)
    return ComplexBall(m, _UP.add(_UP.add(a.rad, b.rad), ctx.ulp_rad(m)))


def c_sub(ctx, a: ComplexBall, b: ComplexBall) -> ComplexBall:
    m = ctx.mid.sub(a.mid, b.mid)
    return ComplexBall(m, _UP.add(_UP.add(a.rad, b.rad), ctx.ulp_rad(m)))


def c_neg(a: ComplexBall) -> ComplexBall:
    cx = gmpy2.context(precision=max(a.mid.precision))
    return ComplexBall(cx.minus(a.mid), a.rad)


def c_mul(ctx, a: ComplexBall, b: ComplexBall) -> ComplexBall:
    m = ctx.mid.mul(a.mid, b.mid)
    prop = _UP.add(_UP.add(_UP.mul(_UP.abs(a.mid), b.rad),
                           _UP.mul(_UP.abs(b.mid), a.rad)),
                   _UP.mul(a.rad, b.rad))
    return ComplexBall(m, _UP.add(prop, ctx.ulp_rad(m)))


def c_mul_i(a: ComplexBall) -> ComplexBall:
    """Exact multiplication by the imaginary unit."""
    p = max(a.mid.precision)
    neg = gmpy2.context(precision=p).minus(a.mid.imag)
    return ComplexBall(mpc(neg, a.mid.real, precision=a.mid.precision), a.rad)


def c_div(ctx, a: ComplexBall, b: ComplexBall) -> ComplexBall:
    if not b.excludes_zero():
        raise DomainError("division by disk containing zero")
    m = ctx.mid.div(a.mid, b.mid)
    blo = _DOWN.sub(_DOWN.abs(b.mid), b.rad)
    num = _UP.add(_UP.mul(a.rad, _UP.abs(b.mid)), _UP.mul(_UP.abs(a.mid), b.rad))
    prop = _UP.div(num, _DOWN.mul(blo, _DOWN.abs(b.mid)))
    return ComplexBall(m, _UP.add(prop, ctx.ulp_rad(m)))


def c_inv(ctx, b: ComplexBall) -> ComplexBall:
    return c_div(ctx, ctx.complex(1), b)


def c_sqrt(ctx, a: ComplexBall, cover_both=False) -> ComplexBall:
    """Principal square root of a disk.

    The disk must exclude the branch cut (-inf, 0]; if it touches the cut or
    contains 0, a DomainError is raised unless cover_both is set, in which
    case a disk around 0 of radius sqrt(|mid| + rad) covering both square
    root determinations is returned.
    """
    if not a.ok:
        return _invalid_c()
    touches_cut = (not a.excludes_zero()) or (
        a.mid.real < 0 and _DOWN.sub(_DOWN.abs(a.mid.imag), a.rad) <= 0)
    if touches_cut:
        if not cover_both:
            raise DomainError("sqrt disk touches branch cut; request widening")
        hi = _UP.sqrt(a.abs_upper())
        return ComplexBall(mpc(0, precision=(ctx.bits, ctx.bits)), hi)
    m = ctx.mid.sqrt(a.mid)
    lo = a.abs_lower()
    prop = _UP.div(a.rad, _DOWN.mul(mpfr(2), _DOWN.sqrt(lo)))
    return ComplexBall(m, _UP.add(prop, ctx.ulp_rad(m)))


def c_exp(ctx, a: ComplexBall) -> ComplexBall:
    if not a.ok:
        return _invalid_c()
    m = ctx.mid.exp(a.mid)
    ub = _UP.exp(_UP.add(a.mid.real, a.rad))
    prop = _UP.mul(ub, _UP.expm1(a.rad))
    return ComplexBall(m, _UP.add(prop, ctx.ulp_rad(m)))


def c_log(ctx, a: ComplexBall) -> ComplexBall:
    if not a.excludes_zero():
        raise DomainError("log of disk containing zero")
    if a.mid.real < 0 and _DOWN.sub(_DOWN.abs(a.mid.imag), a.rad) <= 0:
        raise DomainError("log disk touches branch cut")
    m = ctx.mid.log(a.mid)
    prop = _UP.div(a.rad, a.abs_lower())
    return ComplexBall(m, _UP.add(prop, ctx.ulp_rad(m)))


def c_pow_int(ctx, a: ComplexBall, n: int) -> ComplexBall:
    """a**n for integer n by binary powering."""
    if n == 0:
        return ctx.complex(1)
    if n < 0:
        return c_inv(ctx, c_pow_int(ctx, a, -n))
    out = None
    base = a
    while n:
        if n & 1:
            out = base if out is None else c_mul(ctx, out, base)
        n >>= 1
        if n:
            base = c_mul(ctx, base, base)
    return out


def c_scale_2exp(a: ComplexBall, k: int) -> ComplexBall:
    """Exact multiplication by 2^k."""
    p = a.mid.precision
    cx = gmpy2.context(precision=max(p))
    m = cx.mul_2exp(a.mid, k) if k >= 0 else cx.div_2exp(a.mid, -k)
    r = _UP.mul_2exp(a.rad, k) if k >= 0 else _UP.div_2exp(a.rad, -k)
    return ComplexBall(m, r)


def c_mul_int(ctx, a: ComplexBall, n: int) -> ComplexBall:
    return c_mul(ctx, a, ctx.complex(n))


def c_sum(ctx, balls) -> ComplexBall:
    out = ctx.complex(0)
    for b in balls:
        out = c_add(ctx, out, b)
    return out


def c_prod(ctx, balls) -> ComplexBall:
    out = ctx.complex(1)
    for b in balls:
        out = c_mul(ctx, out, b)
    return out


def elementary(ctx, kind, a=None, b=None, **kw):
    """Dispatch table covering the basic operation set."""
    table = {
        "add": lambda: c_add(ctx, a, b),
        "sub": lambda: c_sub(ctx, a, b),
        "mul": lambda: c_mul(ctx, a, b),
        "div": lambda: c_div(ctx, a, b),
        "sqrt": lambda: c_sqrt(ctx, a, **kw),
        "exp": lambda: c_exp(ctx, a),
        "log": lambda: c_log(ctx, a),
        "pi": lambda: ctx.complex(ctx.pi()),
        "pow_int": lambda: c_pow_int(ctx, a, kw.get("n", b)),
    }
    try:
        op = table[kind]
    except KeyError:
        raise ValueError(f"unknown operation kind {kind!r}") from None
    return op()


# ---------------------------------------------------------------------------
# Accuracy, rounding, adaptive restarts
# ---------------------------------------------------------------------------

def accuracy(ball):
    """Largest N with rad <= 2^-N; +inf for exact, -inf once rad >= 1."""
    rad = ball.rad
    if not gmpy2.is_finite(rad):
        return ACC_NONE
    if rad == 0:
        return ACC_EXACT
    if rad >= 1:
        return ACC_NONE
    m, e = rad.as_mantissa_exp()
    m = int(m)
    k = (m & -m).bit_length() - 1
    m >>= k
    e = int(e) + k
    if m == 1:
        return -e
    return -(e + m.bit_length())


def _interval_fracs(mid, rad):
    """Exact interval endpoints [lo, hi] of a real ball as Fractions."""
    mv = _frac_of_mpfr(mid)
    rv = _frac_of_mpfr(rad)
    return mv - rv, mv + rv


def round_to_integer(ball) -> int:
    """The unique integer in a ball, when the ball pins one down.

    For a ComplexBall the imaginary part must contain 0 with radius < 1/2;
    the real interval must contain exactly one integer.  Raises
    PrecisionError otherwise (the caller should double precision and retry).
    """
    if isinstance(ball, ComplexBall):
        if not ball.ok:
            raise PrecisionError("invalid ball")
        if ball.rad >= 0.5:
            raise PrecisionError("radius too large to isolate an integer")
        lo_i, hi_i = _interval_fracs(ball.mid.imag, ball.rad)
        if lo_i > 0 or hi_i < 0:
            raise PrecisionError("imaginary part does not contain zero")
        mid, rad = ball.mid.real, ball.rad
    else:
        if not ball.ok:
            raise PrecisionError("invalid ball")
        if ball.rad >= 0.5:
            raise PrecisionError("radius too large to isolate an integer")
        mid, rad = ball.mid, ball.rad
    lo, hi = _interval_fracs(mid, rad)
    n_lo = math.ceil(lo)
    n_hi = math.floor(hi)
    if n_lo > n_hi:
        raise PrecisionError("interval contains no integer")
    if n_lo < n_hi:
        raise PrecisionError("interval contains more than one integer")
    return int(n_lo)


def adaptive_run(task, start_bits, success=None, max_doublings=20):
    """Run a precision-parameterized task, doubling precision until success.

    ``task(bits)`` must be deterministic given ``bits``; it may raise
    PrecisionError to force a restart.  ``success`` is a predicate on the
    output, assumed monotone in precision.  Raises PrecisionError once the
    doubling cap is exceeded (this usually indicates a genuine mathematical
    obstruction, e.g. a vanishing denominator).
    """
    bits = int(start_bits)
    last_err = None
    for _ in range(max_doublings + 1):
        try:
            out = task(bits)
        except PrecisionError as err:
            last_err = err
            bits *= 2
            continue
        if success is None or success(out):
            return out
        bits *= 2
    raise PrecisionError(
        f"no success after {max_doublings} doublings from {start_bits} bits"
        + (f" (last: {last_err})" if last_err else ""))
