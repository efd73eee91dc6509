import random
from fractions import Fraction as F

import pytest

from conftest import P, random_polynomial, rename_vars

from harmcalc.calculus import poly_laplacian
from harmcalc.errors import UnsupportedScalarNorm
from harmcalc.expr import Context, Polynomial, make_context, poly_sum, reduce_poly_on_sphere
from harmcalc.harmonic import (
    InnerProduct,
    ball_inner_product,
    basis_harmonic,
    dim_harmonic,
    harmonic_decompose,
    harmonic_parts_by_degree,
    sphere_inner_product,
    weighted_ball_inner_product,
    zonal_coefficients,
    zonal_harmonic,
)
from harmcalc.integrate import RadialFunction, integrate_sphere
from harmcalc.scalar import ONE, Scalar


def test_dim_harmonic_values():
    assert dim_harmonic(12, 100) == 3901030682812965
    assert dim_harmonic(1, 7) == 7
    for m in range(1, 9):
        assert dim_harmonic(m, 2) == 2
    assert dim_harmonic(0, 4) == 1
    assert dim_harmonic(4, 3) == 9


def test_decompose_x1_fourth(ctx3):
    pairs = harmonic_decompose(P("x1^4", ctx3), ctx3)
    assert [e for _, e in pairs] == [0, 2, 4]
    n2 = ctx3.norm_sq_poly()
    h0 = (n2 * n2).scale(F(3, 35)) - (n2 * Polynomial.var("x1", 2)).scale(F(6, 7)) + Polynomial.var("x1", 4)
    h2 = (Polynomial.var("x1", 2).scale(3) - n2).scale(F(2, 7))
    h4 = Polynomial.const(F(1, 5))
    assert pairs[0][0] == h0
    assert pairs[1][0] == h2
    assert pairs[2][0] == h4


def test_decompose_trivial(ctx3):
    h = P("x1*x2", ctx3)
    assert harmonic_decompose(h, ctx3) == [(h, 0)]
    pairs = harmonic_decompose(ctx3.norm_sq_poly(), ctx3)
    assert pairs == [(Polynomial.const(1), 2)]


def test_decompose_reconstruction_random():
    rng = random.Random(13)
    for n in (2, 3, 4, 5):
        ctx = Context(n)
        for _ in range(25):
            p = random_polynomial(rng, ctx, max_degree=8, terms=4)
            pairs = harmonic_decompose(p, ctx)
            total = Polynomial()
            n2 = ctx.norm_sq_poly()
            exps = [e for _, e in pairs]
            assert exps == sorted(set(exps))
            for h, e in pairs:
                assert poly_laplacian(h, ctx).is_zero()
                total = total + n2 ** (e // 2) * h
            assert total == p


def test_basis_cardinality_and_harmonicity():
    for n in (2, 3, 4, 5, 6):
        ctx = Context(n)
        for m in range(0, 9):
            basis = basis_harmonic(m, ctx)
            assert len(basis) == dim_harmonic(m, n)
            for b in basis:
                assert poly_laplacian(b, ctx).is_zero()
                parts = b.homogeneous_parts(ctx.coords)
                assert list(parts) == [m]


def test_basis_spans_harmonics(ctx3):
    # every degree-4 harmonic piece of a random decomposition is a linear
    # combination of the basis (solved exactly over the rationals)
    from harmcalc import linalg

    rng = random.Random(19)
    basis = basis_harmonic(4, ctx3)
    for _ in range(5):
        p = random_polynomial(rng, ctx3, max_degree=4, terms=4)
        part = harmonic_parts_by_degree(p, ctx3).get(4)
        if part is None:
            continue
        monos = sorted({m for b in basis for m in b.terms} | set(part.terms))
        zero = Scalar.from_fraction(0)
        rows = [[b.terms.get(m, zero).as_fraction() for b in basis] for m in monos]
        rhs = [part.terms.get(m, zero).as_fraction() for m in monos]
        assert linalg.solve(rows, rhs) is not None


def test_orthonormal_bases_gram_identity(ctx3):
    weight = RadialFunction(((ONE, 0, 0), (Scalar.from_fraction(-1), 2, 0)))
    for ip in (sphere_inner_product(), ball_inner_product(), weighted_ball_inner_product(weight)):
        basis = basis_harmonic(4, ctx3, ip)
        assert len(basis) == 9
        for i in range(9):
            for j in range(i, 9):
                got = ip(basis[i], basis[j], ctx3)
                want = Scalar.from_fraction(1 if i == j else 0)
                assert (got - want).is_zero()


def test_ball_normalization_constants(ctx3):
    # normalization constants carry pi^(-1/2) radicals
    basis = basis_harmonic(4, ctx3, ball_inner_product())
    seen_pi_half = False
    for b in basis:
        for c in b.terms.values():
            for _, rad, pih, _ in c.terms:
                if pih % 2:
                    seen_pi_half = True
    assert seen_pi_half


def test_gram_schmidt_multi_term_norm_error():
    ctx = Context(2)
    bad = InnerProduct(
        "bad",
        lambda p, q, ctx_: integrate_sphere(p * q, ctx_) + Scalar.log_fraction(2),
    )
    with pytest.raises(UnsupportedScalarNorm):
        basis_harmonic(1, ctx, bad)


def test_zonal_fixture_m5_n3():
    ctx = make_context(3, extra_vecs=("y",))
    y = ("y1", "y2", "y3")
    z = zonal_harmonic(5, ctx, y)
    dot = poly_sum([Polynomial.var(a) * Polynomial.var(b) for a, b in zip(ctx.coords, y)])
    nx, ny = ctx.norm_sq_poly(), ctx.norm_sq_poly(y)
    fix = (
        (dot**5).scale(F(693, 8))
        - (dot**3 * nx * ny).scale(F(385, 4))
        + (dot * nx**2 * ny**2).scale(F(165, 8))
    )
    assert z == fix
    assert F(693, 8) - F(385, 4) + F(165, 8) == dim_harmonic(5, 3)


def test_zonal_trivial():
    ctx = make_context(4, extra_vecs=("y",))
    z0 = zonal_harmonic(0, ctx, tuple("y%d" % (i + 1) for i in range(4)))
    assert z0 == Polynomial.const(1)


def test_zonal_coefficients_n7():
    # degree 6 with the second argument on the unit sphere
    assert zonal_coefficients(6, 7) == [
        F(357, 16) * 143,
        F(-357, 16) * 143,
        F(357, 16) * 33,
        F(-357, 16),
    ]
    # degree 8 with both arguments on the unit sphere
    assert zonal_coefficients(8, 7) == [
        F(693, 128) * 4199,
        F(693, 128) * -6188,
        F(693, 128) * 2730,
        F(693, 128) * -364,
        F(693, 128) * 7,
    ]
    assert sum(zonal_coefficients(8, 7)) == dim_harmonic(8, 7)


def test_zonal_harmonic_in_first_block():
    ctx = make_context(3, extra_vecs=("y",))
    z = zonal_harmonic(4, ctx, ("y1", "y2", "y3"))
    assert poly_laplacian(z, ctx).is_zero()


def test_zonal_reproducing_property():
    # integrating a degree-m harmonic against the zonal kernel over the
    # sphere in the second argument reproduces the harmonic
    for m in range(0, 5):
        ctx = Context(3, coords=("z1", "z2", "z3"), extra=("x1", "x2", "x3"))
        xnames = ("x1", "x2", "x3")
        z = zonal_harmonic(m, ctx, xnames)
        outer = Context(3)
        for h in basis_harmonic(m, outer):
            hz = rename_vars(h, dict(zip(("x1", "x2", "x3"), ("z1", "z2", "z3"))))
            got = integrate_sphere(hz * z, ctx)
            if isinstance(got, Scalar):
                got = Polynomial.const(got)
            assert got == h


def test_zonal_trace_normalization():
    for n in (3, 5):
        ctx = make_context(n, extra_vecs=("y",))
        y = tuple("y%d" % (i + 1) for i in range(n))
        for m in (2, 3, 4):
            z = zonal_harmonic(m, ctx, y)
            diag = z
            for a, b in zip(ctx.coords, y):
                diag = diag.substitute(b, Polynomial.var(a))
            reduced = reduce_poly_on_sphere(diag, ctx.coords, 1)
            assert reduced == Polynomial.const(F(dim_harmonic(m, n)))
