"""Inversions and Kelvin transforms.

Reflections in spheres and hyperplanes, the Kelvin transform
u -> ||x||^(2-n) u(x/||x||^2), the modified inversion through the south
pole that exchanges ball and half-space, and the modified Kelvin
transform, which is an exact involution in this algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from .errors import CenterSingularity, UnsupportedBase, UnsupportedDimension
from .expr import Expr, Polynomial, poly_sum
from .scalar import Scalar


@dataclass(frozen=True)
class UnitSphere:
    pass


@dataclass(frozen=True)
class SphereMirror:
    center: Tuple[Fraction, ...]
    radius: Fraction


@dataclass(frozen=True)
class HyperplaneMirror:
    normal: Tuple[Fraction, ...]
    offset: Fraction


def reflect_point(point, mirror, ctx=None):
    """Reflection of a rational point in the given mirror."""
    point = tuple(Fraction(v) for v in point)
    if isinstance(mirror, UnitSphere):
        mirror = SphereMirror((Fraction(0),) * len(point), Fraction(1))
    if isinstance(mirror, SphereMirror):
        center = tuple(Fraction(v) for v in mirror.center)
        diff = [p - c for p, c in zip(point, center)]
        norm2 = sum(d * d for d in diff)
        if norm2 == 0:
            raise CenterSingularity("cannot reflect the sphere center")
        scale = Fraction(mirror.radius) ** 2 / norm2
        return tuple(c + scale * d for c, d in zip(center, diff))
    if isinstance(mirror, HyperplaneMirror):
        b = tuple(Fraction(v) for v in mirror.normal)
        bb = sum(v * v for v in b)
        if bb == 0:
            raise ValueError("hyperplane normal must be nonzero")
        t = Fraction(mirror.offset)
        scale = 2 * (sum(p * v for p, v in zip(point, b)) - t) / bb
        return tuple(p - scale * v for p, v in zip(point, b))
    raise TypeError("unknown mirror %r" % (mirror,))


def reflect_map(mirror, ctx):
    """Reflection of the coordinate vector as a tuple of expressions."""
    xs = [Polynomial.var(v) for v in ctx.coords]
    if isinstance(mirror, UnitSphere):
        inv = Expr.norm_power(ctx, -2)
        return tuple(Expr.from_poly(ctx, x) * inv for x in xs)
    if isinstance(mirror, SphereMirror):
        center = tuple(Fraction(v) for v in mirror.center)
        diff = [x - Polynomial.const(c) for x, c in zip(xs, center)]
        norm2 = poly_sum([d * d for d in diff])
        inv = Expr.base_power(ctx, norm2, -2)
        r2 = Fraction(mirror.radius) ** 2
        return tuple(
            Expr.from_poly(ctx, Polynomial.const(c)) + Expr.from_poly(ctx, d.scale(r2)) * inv
            for c, d in zip(center, diff)
        )
    if isinstance(mirror, HyperplaneMirror):
        b = tuple(Fraction(v) for v in mirror.normal)
        bb = sum(v * v for v in b)
        t = Fraction(mirror.offset)
        inner = poly_sum([x.scale(v) for x, v in zip(xs, b)]) - Polynomial.const(t)
        return tuple(
            Expr.from_poly(ctx, x - inner.scale(2 * v / bb)) for x, v in zip(xs, b)
        )
    raise TypeError("unknown mirror %r" % (mirror,))


def kelvin(e, ctx=None):
    """Kelvin transform: ||x||^(2-n) e(x/||x||^2), exact in this algebra.

    Accepts sums of polynomials times integer-half norm powers; a monomial
    of coordinate degree d picks up the factor ||x||^(-2d) and any norm
    power is negated.
    """
    ctx = ctx or e.ctx
    nb = ctx.norm_base
    n = ctx.dim
    raw = []
    for poly, fac in e.terms:
        h = 0
        for b, hh, j in fac:
            if b != nb or j:
                raise UnsupportedBase(
                    "Kelvin transform accepts norm powers only, without logs"
                )
            h = hh
        for d, part in poly.homogeneous_parts(ctx.coords).items():
            raw.append((part, ((nb, 2 - n - 2 * d - h, 0),)))
    return Expr._from_raw(ctx, raw)


def _phi_numerators(ctx):
    """(numerators, denominator) of the south-pole inversion.

    The map is (2 x_1, ..., 2 x_(n-1), 1 - ||x||^2 - ... ) over the common
    denominator ||z - southPole||^2; in split coordinates the denominator
    is (1 + y)^2 + ||x||^2 and the last numerator is 1 - y^2 - ||x'||^2.
    """
    if ctx.dim < 2:
        raise UnsupportedDimension("the south-pole inversion needs dimension >= 2")
    last = ctx.coords[-1]
    firsts = ctx.coords[:-1]
    den = poly_sum(
        [Polynomial.var(v, 2) for v in firsts]
        + [(Polynomial.var(last) + Polynomial.const(1)) ** 2]
    )
    nums = [Polynomial.var(v).scale(2) for v in firsts]
    nums.append(
        Polynomial.const(1)
        - Polynomial.var(last, 2)
        - poly_sum([Polynomial.var(v, 2) for v in firsts])
    )
    return nums, den


def phi_map(ctx):
    """Modified inversion through the south pole (0, ..., 0, -1).

    Returns one expression per coordinate; the last one is written as
    -1 + 2(1 + last)/denominator, matching the split form.
    """
    nums, den = _phi_numerators(ctx)
    inv = Expr.base_power(ctx, den, -2)
    return tuple(Expr.from_poly(ctx, nm) * inv for nm in nums)


def kelvin_h(e, ctx=None):
    """Modified Kelvin transform 2^((n-2)/2) Q^((2-n)/2) u(Phi(z)).

    Q is the squared distance to the south pole.  Polynomials and previous
    outputs (which carry Q powers) are accepted; the transform composed
    with itself is the identity.
    """
    ctx = ctx or e.ctx
    n = ctx.dim
    nums, den = _phi_numerators(ctx)
    bid, content = ctx.register_base(den)
    if content != 1:
        raise AssertionError("south pole base should be primitive")
    if (n - 2) % 2 == 0:
        front = Scalar.from_fraction(Fraction(2) ** ((n - 2) // 2))
    else:
        front = Scalar.sqrt_fraction(2) ** (n - 2)
    num_for = dict(zip(ctx.coords, nums))
    raw = []
    for poly, fac in e.terms:
        h = 0
        for b, hh, j in fac:
            if b != bid or j:
                raise UnsupportedBase(
                    "modified Kelvin transform accepts powers of the "
                    "south-pole base only"
                )
            h = hh
        # Q(Phi(z)) = 4/Q exactly, so Q^(h/2) pulls back to 2^h Q^(-h/2)
        for mono, coeff in poly.terms.items():
            piece = Polynomial.const(coeff)
            deg = 0
            for v, exp in mono:
                if v not in num_for:
                    raise UnsupportedBase(
                        "modified Kelvin transform works on coordinate polynomials"
                    )
                piece = piece * num_for[v] ** exp
                deg += exp
            piece = piece.scale(front * Scalar.from_fraction(Fraction(2) ** h))
            raw.append((piece, ((bid, 2 - n - 2 * deg - h, 0),)))
    return Expr._from_raw(ctx, raw)
