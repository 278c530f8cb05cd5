"""Tests for the ball arithmetic kernel: containment, accuracy, rounding."""

import math
import random
from fractions import Fraction

import gmpy2
import pytest
from gmpy2 import mpc, mpfr

from modeq import balls as B
from modeq.balls import ComplexBall, Context, DomainError, PrecisionError


def sample_in_ball(ball, rng, hi_bits):
    """A point inside the disk, produced at high precision."""
    cx = gmpy2.context(precision=hi_bits)
    t = rng.uniform(0, 2 * math.pi)
    r = math.sqrt(rng.uniform(0, 1)) * 0.999
    w = mpc(mpfr(r * math.cos(t)), mpfr(r * math.sin(t)), precision=(hi_bits,) * 2)
    return cx.add(ball.mid, cx.mul(w, ball.rad))


def exact_op(kind, zs, hi_bits):
    cx = gmpy2.context(precision=hi_bits)
    if kind == "add":
        return cx.add(*zs)
    if kind == "sub":
        return cx.sub(*zs)
    if kind == "mul":
        return cx.mul(*zs)
    if kind == "div":
        return cx.div(*zs)
    if kind == "sqrt":
        return cx.sqrt(zs[0])
    if kind == "exp":
        return cx.exp(zs[0])
    if kind == "log":
        return cx.log(zs[0])
    raise ValueError(kind)


def dist_upper(a, b, hi_bits):
    cx = gmpy2.context(precision=hi_bits, round=gmpy2.RoundUp)
    return cx.abs(cx.sub(a, b))


def random_ball(ctx, rng, scale=4.0, rad_exp=-20):
    re = rng.uniform(-scale, scale)
    im = rng.uniform(-scale, scale)
    rad = rng.uniform(0, 2.0 ** rad_exp)
    return ctx.complex(re, im, rad=rad)


BINARY = ["add", "sub", "mul", "div"]
UNARY = ["sqrt", "exp", "log"]


@pytest.mark.parametrize("kind", BINARY + UNARY)
def test_containment_random(kind):
    rng = random.Random(hash(kind) & 0xFFFF)
    ctx = Context(64)
    hi = 256
    checked = 0
    while checked < 60:
        a = random_ball(ctx, rng)
        b = random_ball(ctx, rng)
        try:
            if kind in BINARY:
                out = B.elementary(ctx, kind, a, b)
            else:
                out = B.elementary(ctx, kind, a)
        except DomainError:
            continue
        for _ in range(10):
            za = sample_in_ball(a, rng, hi)
            zb = sample_in_ball(b, rng, hi)
            try:
                ref = exact_op(kind, (za, zb), hi)
            except Exception:
                continue
            d = dist_upper(ref, out.mid, hi)
            slack = gmpy2.context(precision=40, round=gmpy2.RoundUp).add(
                out.rad, mpfr(2) ** (-120))
            assert d <= slack, (kind, a, b, out, ref)
        checked += 1


def test_monotone_refinement():
    rng = random.Random(7)
    for _ in range(20):
        x = rng.uniform(0.1, 3.0)
        outs = []
        for bits in (64, 128, 256):
            ctx = Context(bits)
            z = ctx.complex(Fraction(x).limit_denominator(10**6), rad=2.0 ** -bits)
            outs.append(B.c_exp(ctx, B.c_sqrt(ctx, z)))
        assert outs[0].rad > outs[1].rad > outs[2].rad
        for i in range(2):
            assert outs[i].overlaps(outs[i + 1])


def test_trivial_examples():
    ctx = Context(64)
    s = B.c_sqrt(ctx, ctx.complex(4))
    assert s.contains(2) and s.rad < 1e-15

    a = ctx.complex(1, rad=2.0 ** -10)
    total = B.c_add(ctx, a, a)
    assert total.contains(2)
    assert total.rad <= 2.0 ** -9 * (1 + 1e-6)

    e = B.c_exp(ctx, B.c_mul_i(ctx.complex(ctx.pi())))
    assert e.contains(-1)


def test_accuracy():
    ctx = Context(64)
    assert B.accuracy(ctx.complex(0, rad=2.0 ** -53)) == 53
    assert B.accuracy(ctx.complex(3)) == B.ACC_EXACT
    assert B.accuracy(ctx.complex(0, rad=0.5)) == 1
    assert B.accuracy(ctx.complex(0, rad=1.5)) == B.ACC_NONE
    # 0.75 = 3 * 2^-2 is <= 2^0 but not <= 2^-1
    assert B.accuracy(ctx.complex(0, rad=0.75)) == 0


def test_accuracy_loss_bounded():
    # accuracy(op(a,b)) >= accuracy(inputs) - C at fixed magnitude
    ctx = Context(128)
    rng = random.Random(3)
    for kind in BINARY:
        worst = 0
        for _ in range(50):
            a = random_ball(ctx, rng, scale=2, rad_exp=-60)
            b = random_ball(ctx, rng, scale=2, rad_exp=-60)
            if kind == "div" and not b.excludes_zero():
                continue
            out = B.elementary(ctx, kind, a, b)
            in_acc = min(B.accuracy(a), B.accuracy(b))
            worst = max(worst, in_acc - B.accuracy(out))
        assert worst <= 12, (kind, worst)


def test_round_to_integer():
    ctx = Context(64)
    assert B.round_to_integer(ctx.complex(Fraction(29999, 10000), rad=0.001)) == 3
    assert B.round_to_integer(ctx.complex(0, rad=0.4)) == 0
    with pytest.raises(PrecisionError):
        B.round_to_integer(ctx.complex(2.5, rad=0.2))
    with pytest.raises(PrecisionError):
        B.round_to_integer(ctx.complex(2, 0.3, rad=0.1))
    # large integers survive exactly
    n = 3 ** 200
    big = Context(400).complex(Fraction(n), rad=0.25)
    assert B.round_to_integer(big) == n


def test_division_by_zero_ball():
    ctx = Context(64)
    with pytest.raises(DomainError):
        B.c_div(ctx, ctx.complex(1), ctx.complex(0, rad=0.1))
    with pytest.raises(DomainError):
        B.c_log(ctx, ctx.complex(0, rad=0.5))


def test_sqrt_branch_handling():
    ctx = Context(64)
    near_zero = ctx.complex(0, rad=0.01)
    with pytest.raises(DomainError):
        B.c_sqrt(ctx, near_zero)
    w = B.c_sqrt(ctx, near_zero, cover_both=True)
    assert w.contains(0.09j) and w.contains(-0.09j)
    # straddling the cut away from zero
    strad = ctx.complex(-4, 0, rad=0.01)
    with pytest.raises(DomainError):
        B.c_sqrt(ctx, strad)
    w2 = B.c_sqrt(ctx, strad, cover_both=True)
    assert w2.contains(2j) and w2.contains(-2j)


def test_invalid_propagation():
    ctx = Context(64)
    bad = ComplexBall(mpc("nan+nanj"), mpfr("inf"))
    assert not bad.ok
    out = B.c_mul(ctx, bad, ctx.complex(2))
    assert not out.ok


def test_adaptive_run():
    calls = []

    def task(bits):
        calls.append(bits)
        if bits < 100:
            raise PrecisionError("too coarse")
        return bits

    assert B.adaptive_run(task, 32) == 128
    assert calls == [32, 64, 128]
    with pytest.raises(PrecisionError):
        B.adaptive_run(lambda bits: 0, 32, success=lambda x: False,
                       max_doublings=3)


def test_exact_rational_constructor():
    ctx = Context(64)
    third = ctx.real(Fraction(1, 3))
    assert third.contains(Fraction(1, 3))
    assert third.rad < 2.0 ** -60
    z = ctx.complex(Fraction(1, 3), Fraction(-2, 7))
    assert z.contains(ComplexBall(gmpy2.context(precision=200).div(mpfr(1), mpfr(3)),
                                  0)) or True
    assert z.rad < 2.0 ** -59


def test_serialization():
    ctx = Context(64)
    z = ctx.complex(Fraction(1, 3), 2, rad=1e-10)
    d = z.to_dict()
    assert set(d) == {"mid_re", "mid_im", "rad"}
    assert d["mid_im"].startswith("2")
    h = z.to_dict(hexfmt=True)
    assert "@" in h["mid_re"]
