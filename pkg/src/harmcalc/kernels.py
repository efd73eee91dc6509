"""Reproducing kernels: Poisson and Bergman, for the ball and half-space.

Ball kernels are expressions in a primary coordinate block x and a second
block y; half-space kernels use the split form (x, y) vs (t, u) where the
last coordinate is singled out.  The Bergman projection of a polynomial is
computed through the harmonic decomposition: each piece ||x||^(2j) h_m
projects to (n + 2m)/(n + m + k) h_m where k = m + 2j, which is exactly
the orthonormal-basis expansion evaluated in closed form.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NonPolynomialInput
from .expr import Expr, Polynomial, poly_sum
from .harmonic import harmonic_decompose
from .integrate import unit_ball_volume
from .scalar import Scalar


def _dot_poly(a_names, b_names):
    return poly_sum(
        [Polynomial.var(a) * Polynomial.var(b) for a, b in zip(a_names, b_names)]
    )


def _norm_poly(names):
    return poly_sum([Polynomial.var(v, 2) for v in names])


def poisson_base(ctx, y_names, on_boundary=False):
    """1 - 2 x.y + ||x||^2 ||y||^2, or with ||y|| set to 1 on the boundary."""
    dot = _dot_poly(ctx.coords, y_names)
    nx = _norm_poly(ctx.coords)
    tail = nx * _norm_poly(y_names) if not on_boundary else nx
    return Polynomial.const(1) - dot.scale(2) + tail


def poisson_kernel(ctx, y_names, on_boundary=False):
    """Extended Poisson kernel for the unit ball.

    (1 - ||x||^2 ||y||^2) (1 - 2 x.y + ||x||^2 ||y||^2)^(-n/2); with
    on_boundary the second argument is confined to the unit sphere
    (||y|| replaced by 1).
    """
    y_names = tuple(y_names)
    nx = _norm_poly(ctx.coords)
    ny2 = _norm_poly(y_names) if not on_boundary else Polynomial.const(1)
    numer = Polynomial.const(1) - nx * ny2
    base = poisson_base(ctx, y_names, on_boundary)
    return Expr.from_poly(ctx, numer) * Expr.base_power(ctx, base, -ctx.dim)


def half_space_base(ctx, t_names, u_name):
    """(u + y)^2 + ||x - t||^2 over the split coordinates.

    ctx.coords is the half-space block (x_1..x_(n-1), y); t, u name the
    second point.
    """
    x_names = ctx.coords[:-1]
    y = ctx.coords[-1]
    uy = Polynomial.var(u_name) + Polynomial.var(y)
    parts = [uy * uy]
    for a, b in zip(x_names, t_names):
        d = Polynomial.var(a) - Polynomial.var(b)
        parts.append(d * d)
    return poly_sum(parts)


def poisson_kernel_h(ctx, t_names, u_name):
    """Extended Poisson kernel for the upper half-space, split form.

    2 (u + y) ((u + y)^2 + ||x - t||^2)^(-n/2) / (n volume(n)).
    """
    n = ctx.dim
    t_names = tuple(t_names)
    if len(t_names) != n - 1:
        raise ValueError("t needs %d coordinates" % (n - 1))
    y = ctx.coords[-1]
    numer = (Polynomial.var(u_name) + Polynomial.var(y)).scale(2)
    base = half_space_base(ctx, t_names, u_name)
    nv = Scalar.from_fraction(n) * unit_ball_volume(n)
    return (
        Expr.from_poly(ctx, numer) * Expr.base_power(ctx, base, -n)
    ).scale(nv.inverse())


def bergman_kernel(ctx, y_names):
    """Reproducing kernel of the harmonic Bergman space of the unit ball.

    ((n-4)||x||^4||y||^4 + (8 x.y - 2n - 4)||x||^2||y||^2 + n)
      / (n volume(n) (1 - 2 x.y + ||x||^2||y||^2)^(1 + n/2)).
    """
    n = ctx.dim
    y_names = tuple(y_names)
    dot = _dot_poly(ctx.coords, y_names)
    w = _norm_poly(ctx.coords) * _norm_poly(y_names)
    numer = (
        (w * w).scale(n - 4)
        + w * (dot.scale(8) - Polynomial.const(2 * n + 4))
        + Polynomial.const(n)
    )
    base = poisson_base(ctx, y_names)
    nv = Scalar.from_fraction(n) * unit_ball_volume(n)
    return (
        Expr.from_poly(ctx, numer) * Expr.base_power(ctx, base, -(n + 2))
    ).scale(nv.inverse())


def bergman_kernel_h(ctx, t_names, u_name):
    """Reproducing kernel of the harmonic Bergman space of the half-space.

    4 ((n-1)(u+y)^2 - ||x-t||^2) ((u+y)^2 + ||x-t||^2)^(-1-n/2) / (n volume(n)).
    """
    n = ctx.dim
    t_names = tuple(t_names)
    x_names = ctx.coords[:-1]
    y = ctx.coords[-1]
    uy = Polynomial.var(u_name) + Polynomial.var(y)
    diff2 = poly_sum(
        [
            (Polynomial.var(a) - Polynomial.var(b)) ** 2
            for a, b in zip(x_names, t_names)
        ]
    )
    numer = ((uy * uy).scale(n - 1) - diff2).scale(4)
    base = half_space_base(ctx, t_names, u_name)
    nv = Scalar.from_fraction(n) * unit_ball_volume(n)
    return (
        Expr.from_poly(ctx, numer) * Expr.base_power(ctx, base, -(n + 2))
    ).scale(nv.inverse())


def bergman_projection(u, ctx):
    """Orthogonal projection of a polynomial onto the ball Bergman space.

    A decomposition piece ||x||^(2j) h with h harmonic homogeneous of
    degree m sits inside the degree k = m + 2j component; expanding it in
    any orthonormal harmonic basis leaves (n + 2m)/(n + m + k) h.
    """
    if not isinstance(u, Polynomial):
        raise NonPolynomialInput("Bergman projection expects a polynomial")
    n = ctx.dim
    total = Polynomial()
    for h, e in harmonic_decompose(u, ctx):
        for m, g in h.homogeneous_parts(ctx.coords).items():
            k = m + e
            total = total + g.scale(Fraction(n + 2 * m, n + m + k))
    return total


def zonal_series_coefficient(m, n):
    """(n + 2m)/(n volume(n)) as an exact Scalar."""
    nv = Scalar.from_fraction(n) * unit_ball_volume(n)
    return Scalar.from_fraction(n + 2 * m) * nv.inverse()
