"""Command-line front end.

One verb per operation, an explicit --dim flag on every dimension-dependent
verb (there is no ambient dimension state), and deterministic text, JSON,
or LaTeX output.  A batch mode reads one command line per file line and
emits a JSON array of results.

Exit codes: 0 success, 2 parse error, 3 unsupported input class,
4 solvability violation, 5 degree cap or infeasible system, 6 internal
invariant failure.
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys
import time
from fractions import Fraction

from . import bvp, calculus, harmonic, integrate, kernels, transforms
from .errors import HarmcalcError, ParseError, UnsupportedInputError
from .expr import Context
from .parser import _tokenize, parse_expression, parse_polynomial
from .render import render_value
from .scalar import Scalar, approx_scalar

VERBS = {}


def verb(name, needs_dim=True):
    def wrap(fn):
        VERBS[name] = (fn, needs_dim)
        return fn

    return wrap


def _fraction(text):
    if "/" in text:
        a, b = text.split("/", 1)
        return Fraction(int(a), int(b))
    return Fraction(int(text))


def _fraction_list(text):
    return tuple(_fraction(t) for t in text.split(",") if t)


def _context(args, extra_vecs=(), extra=()):
    if args.dim is None:
        raise UnsupportedInputError("this verb needs --dim")
    coords = tuple(args.vars.split(",")) if args.vars else None
    names = list(extra)
    for label in extra_vecs:
        names.extend("%s%d" % (label, i + 1) for i in range(args.dim))
    return Context(args.dim, coords=coords, extra=tuple(names))


def _half_space_context(args):
    """Coordinates x1..x_(n-1), y; second point t1..t_(n-1), u."""
    n = args.dim
    if n is None or n < 2:
        raise UnsupportedInputError("half-space verbs need --dim >= 2")
    coords = tuple("x%d" % (i + 1) for i in range(n - 1)) + ("y",)
    extra = tuple("t%d" % (i + 1) for i in range(n - 1)) + ("u",)
    return Context(n, coords=coords, extra=extra)


def _vectors(ctx, args):
    table = {}
    label = getattr(args, "second_vec", None)
    if label:
        names = tuple(
            v for v in ctx.extra if v.startswith(label) and v[len(label) :].isdigit()
        )
        if names:
            table[label] = names
    return table


def _parse_region(text, ctx):
    if text in (None, "sphere"):
        return bvp.Sphere()
    if text == "exterior-sphere":
        return bvp.ExteriorSphere()
    if text.startswith("annulus:"):
        r, s = text[len("annulus:") :].split(",")
        return bvp.Annulus(_fraction(r), _fraction(s))
    if text.startswith("quadratic:"):
        blocks = text[len("quadratic:") :].split(";")
        b = _fraction_list(blocks[0])
        c = _fraction_list(blocks[1]) if len(blocks) > 1 and blocks[1] else ()
        d = _fraction(blocks[2]) if len(blocks) > 2 and blocks[2] else Fraction(-1)
        return bvp.Quadratic(b, c, d)
    raise UnsupportedInputError("unknown region %r" % text)


def _parse_multiple(text):
    if text in (None, ""):
        return None
    if text == "norm2":
        return bvp.NormSquaredMultiple()
    if text.startswith("quadratic:"):
        blocks = text[len("quadratic:") :].split(";")
        b = _fraction_list(blocks[0])
        c = _fraction_list(blocks[1]) if len(blocks) > 1 and blocks[1] else ()
        d = _fraction(blocks[2]) if len(blocks) > 2 and blocks[2] else Fraction(-1)
        return bvp.QuadraticMultiple(b, c, d)
    raise UnsupportedInputError("unknown multiple option %r" % text)


# ---------------------------------------------------------------------------
# radial weight mini-parser: sums of c * r^a * log(r)^k, optionally divided
# by a linear term (c0 + c1*r)


def parse_radial(src):
    tokens = _tokenize(src)
    pos = [0]

    def peek():
        return tokens[pos[0]]

    def advance():
        t = tokens[pos[0]]
        pos[0] += 1
        return t

    def expect(kind):
        t = peek()
        if t.kind != kind:
            raise ParseError("unexpected %s" % (t.text or "end"), t.line, t.col, (kind,))
        return advance()

    def rational():
        t = expect("int")
        num = int(t.text)
        if peek().kind == "/":
            save = pos[0]
            advance()
            if peek().kind == "int":
                return Fraction(num, int(advance().text))
            pos[0] = save
        return Fraction(num)

    def exponent():
        sign = 1
        if peek().kind == "-":
            advance()
            sign = -1
        return sign * int(expect("int").text)

    def product():
        coeff = Fraction(1)
        a = 0
        k = 0
        while True:
            t = peek()
            if t.kind == "int":
                coeff *= rational()
            elif t.kind == "ident" and t.text == "r":
                advance()
                e = 1
                if peek().kind == "^":
                    advance()
                    e = exponent()
                a += e
            elif t.kind == "ident" and t.text == "log":
                advance()
                expect("(")
                inner = expect("ident")
                if inner.text != "r":
                    raise ParseError("log(r) only", inner.line, inner.col, ("r",))
                expect(")")
                e = 1
                if peek().kind == "^":
                    advance()
                    e = exponent()
                k += e
            else:
                raise ParseError(
                    "unexpected %s" % (t.text or "end"), t.line, t.col, ("r", "log", "number")
                )
            if peek().kind == "*":
                advance()
                continue
            return coeff, a, k

    def total():
        terms = []
        sign = 1
        if peek().kind == "-":
            advance()
            sign = -1
        while True:
            c, a, k = product()
            terms.append((Scalar.from_fraction(sign * c), a, k))
            t = peek()
            if t.kind in ("+", "-"):
                advance()
                sign = 1 if t.kind == "+" else -1
                continue
            return terms

    terms = total()
    lin = None
    if peek().kind == "/":
        advance()
        expect("(")
        c0 = rational()
        expect("+")
        c1 = Fraction(1)
        t = peek()
        if t.kind == "int":
            c1 = rational()
            expect("*")
        rv = expect("ident")
        if rv.text != "r":
            raise ParseError("linear denominator must be in r", rv.line, rv.col, ("r",))
        expect(")")
        lin = (c0, c1)
    t = peek()
    if t.kind != "eof":
        raise ParseError("unexpected %s" % t.text, t.line, t.col, ("end of input",))
    return integrate.RadialFunction(tuple(terms), lin)


# ---------------------------------------------------------------------------
# verbs


@verb("volume")
def _v_volume(args):
    return integrate.unit_ball_volume(args.dim), None


@verb("surface-area")
def _v_area(args):
    return integrate.unit_sphere_area(args.dim), None


@verb("dim-harmonic", needs_dim=False)
def _v_dim_h(args):
    return harmonic.dim_harmonic(args.m, args.n), None


@verb("laplacian")
def _v_lap(args):
    ctx = _context(args, extra_vecs=_second(args))
    e = parse_expression(args.expr[0], ctx, _vectors(ctx, args))
    return calculus.laplacian_of(e, args.power, ctx), ctx


@verb("gradient")
def _v_grad(args):
    ctx = _context(args, extra_vecs=_second(args))
    e = parse_expression(args.expr[0], ctx, _vectors(ctx, args))
    return calculus.gradient_of(e, ctx), ctx


@verb("partial")
def _v_partial(args):
    ctx = _context(args, extra_vecs=_second(args))
    e = parse_expression(args.expr[0], ctx, _vectors(ctx, args))
    schedule = []
    for item in args.by or []:
        if ":" in item:
            v, m = item.split(":", 1)
            schedule.append((v, int(m)))
        else:
            schedule.append((item, 1))
    return calculus.partial_d(e, schedule, ctx), ctx


@verb("normal-d")
def _v_normal(args):
    ctx = _context(args)
    e = parse_expression(args.expr[0], ctx)
    if args.surface:
        q = parse_polynomial(args.surface, ctx)
        return calculus.normal_d_surface(e, q, ctx), ctx
    return calculus.normal_d_sphere(e, ctx), ctx


@verb("divergence")
def _v_div(args):
    ctx = _context(args)
    comps = tuple(parse_expression(s, ctx) for s in args.expr)
    return calculus.divergence_of(comps, ctx), ctx


@verb("jacobian")
def _v_jac(args):
    ctx = _context(args)
    comps = tuple(parse_expression(s, ctx) for s in args.expr)
    return calculus.jacobian_of(comps, ctx), ctx


def _about(args, ctx):
    if not args.about:
        return None
    out = []
    for tok in args.about.split(","):
        tok = tok.strip()
        if tok and (tok[0].isalpha() or tok[0] == "_"):
            out.append(tok)
        else:
            out.append(_fraction(tok))
    return out


@verb("homogeneous")
def _v_homog(args):
    extra = tuple(t for t in (args.about or "").split(",") if t and t[0].isalpha())
    ctx = _context(args, extra=extra)
    p = parse_polynomial(args.expr[0], ctx)
    return calculus.homogeneous_part(p, args.degree, ctx, _about(args, ctx)), ctx


@verb("taylor")
def _v_taylor(args):
    extra = tuple(t for t in (args.about or "").split(",") if t and t[0].isalpha())
    ctx = _context(args, extra=extra)
    p = parse_polynomial(args.expr[0], ctx)
    return calculus.taylor_poly(p, args.degree, ctx, _about(args, ctx)), ctx


@verb("harmonic-conjugate")
def _v_conj(args):
    ctx = _context(args)
    p = parse_polynomial(args.expr[0], ctx)
    return calculus.harmonic_conjugate(p, ctx), ctx


@verb("integrate-sphere")
def _v_isphere(args):
    ctx = _context(args, extra_vecs=_second(args))
    p = parse_polynomial(args.expr[0], ctx, _vectors(ctx, args))
    return integrate.integrate_sphere(p, ctx), ctx


@verb("integrate-ball")
def _v_iball(args):
    ctx = _context(args, extra_vecs=_second(args))
    p = parse_polynomial(args.expr[0], ctx, _vectors(ctx, args))
    radial = parse_radial(args.weight) if args.weight else integrate.RadialFunction.one()
    return integrate.integrate_ball(p, radial, ctx), ctx


def _ellipsoid(args):
    b = _fraction_list(args.b)
    c = _fraction_list(args.c) if args.c else ()
    d = _fraction(args.d) if args.d else Fraction(-1)
    return integrate.Ellipsoid(b, c, d)


@verb("integrate-ellipsoid-volume")
def _v_ev(args):
    ctx = _context(args, extra_vecs=_second(args))
    p = parse_polynomial(args.expr[0], ctx, _vectors(ctx, args))
    return integrate.integrate_ellipsoid_volume(p, _ellipsoid(args), ctx), ctx


@verb("integrate-ellipsoid-area")
def _v_ea(args):
    ctx = _context(args, extra_vecs=_second(args))
    p = parse_polynomial(args.expr[0], ctx, _vectors(ctx, args))
    return integrate.integrate_ellipsoid_area(p, _ellipsoid(args), ctx), ctx


@verb("decompose")
def _v_decomp(args):
    ctx = _context(args)
    p = parse_polynomial(args.expr[0], ctx)
    pairs = harmonic.harmonic_decompose(p, ctx)
    return tuple((h, Fraction(e)) for h, e in pairs), ctx


@verb("basis-h")
def _v_basis(args):
    ctx = _context(args)
    ip = None
    if args.ip == "sphere":
        ip = harmonic.sphere_inner_product()
    elif args.ip == "ball":
        ip = harmonic.ball_inner_product()
    elif args.ip not in (None, "", "none"):
        raise UnsupportedInputError("unknown inner product %r" % args.ip)
    return tuple(harmonic.basis_harmonic(args.degree, ctx, ip)), ctx


@verb("zonal")
def _v_zonal(args):
    ctx = _context(args, extra_vecs=_second(args) or ("y",))
    label = args.second_vec or "y"
    y = tuple("%s%d" % (label, i + 1) for i in range(ctx.dim))
    return harmonic.zonal_harmonic(args.degree, ctx, y), ctx


@verb("dirichlet")
def _v_dirichlet(args):
    ctx = _context(args)
    region = _parse_region(args.region, ctx)
    polys = [parse_polynomial(s, ctx) for s in args.expr]
    data = polys[0] if len(polys) == 1 else (polys[0], polys[1])
    rhs = parse_polynomial(args.rhs, ctx) if args.rhs else None
    return bvp.dirichlet(data, region, ctx, rhs=rhs), ctx


@verb("anti-laplacian")
def _v_antilap(args):
    ctx = _context(args)
    e = parse_expression(args.expr[0], ctx)
    mult = _parse_multiple(args.multiple)
    if mult is None:
        mode = bvp.Plain(singularity_at_zero=(args.singularity == "0"))
    else:
        mode = mult
        e = e.as_polynomial()
    return bvp.anti_laplacian(e, mode, ctx), ctx


@verb("neumann")
def _v_neumann(args):
    ctx = _context(args)
    region = _parse_region(args.region, ctx)
    f = parse_polynomial(args.expr[0], ctx)
    g = parse_polynomial(args.expr[1], ctx) if len(args.expr) > 1 else None
    return bvp.neumann(f, g, region, ctx), ctx


@verb("exterior-neumann")
def _v_ext_neumann(args):
    ctx = _context(args)
    p = parse_polynomial(args.expr[0], ctx)
    return bvp.exterior_neumann(p, ctx), ctx


@verb("bi-dirichlet")
def _v_bidir(args):
    ctx = _context(args)
    p = parse_polynomial(args.expr[0], ctx)
    return bvp.bi_dirichlet(p, ctx), ctx


@verb("poisson-kernel")
def _v_poisson(args):
    label = args.second_vec or "y"
    ctx = _context(args, extra_vecs=(label,))
    y = tuple("%s%d" % (label, i + 1) for i in range(ctx.dim))
    return kernels.poisson_kernel(ctx, y, on_boundary=args.boundary), ctx


@verb("poisson-kernel-h")
def _v_poisson_h(args):
    ctx = _half_space_context(args)
    t = ctx.extra[:-1]
    return kernels.poisson_kernel_h(ctx, t, ctx.extra[-1]), ctx


@verb("bergman-kernel")
def _v_bergman(args):
    label = args.second_vec or "y"
    ctx = _context(args, extra_vecs=(label,))
    y = tuple("%s%d" % (label, i + 1) for i in range(ctx.dim))
    return kernels.bergman_kernel(ctx, y), ctx


@verb("bergman-kernel-h")
def _v_bergman_h(args):
    ctx = _half_space_context(args)
    t = ctx.extra[:-1]
    return kernels.bergman_kernel_h(ctx, t, ctx.extra[-1]), ctx


@verb("bergman-projection")
def _v_projection(args):
    ctx = _context(args)
    p = parse_polynomial(args.expr[0], ctx)
    return kernels.bergman_projection(p, ctx), ctx


@verb("kelvin")
def _v_kelvin(args):
    ctx = _context(args, extra_vecs=_second(args))
    e = parse_expression(args.expr[0], ctx, _vectors(ctx, args))
    return transforms.kelvin(e, ctx), ctx


@verb("kelvin-h")
def _v_kelvin_h(args):
    ctx = _context(args)
    e = parse_expression(args.expr[0], ctx)
    return transforms.kelvin_h(e, ctx), ctx


def _parse_mirror(text):
    if text in (None, "unit", "unit-sphere"):
        return transforms.UnitSphere()
    if text.startswith("sphere:"):
        c, r = text[len("sphere:") :].split(";")
        return transforms.SphereMirror(_fraction_list(c), _fraction(r))
    if text.startswith("hyperplane:"):
        b, t = text[len("hyperplane:") :].split(";")
        return transforms.HyperplaneMirror(_fraction_list(b), _fraction(t))
    raise UnsupportedInputError("unknown mirror %r" % text)


@verb("reflect")
def _v_reflect(args):
    mirror = _parse_mirror(args.mirror)
    if args.point:
        return transforms.reflect_point(_fraction_list(args.point), mirror), None
    ctx = _context(args)
    return transforms.reflect_map(mirror, ctx), ctx


@verb("phi")
def _v_phi(args):
    ctx = _context(args)
    return transforms.phi_map(ctx), ctx


@verb("eval")
def _v_eval(args):
    from .expr import eval_expr

    ctx = _context(args, extra_vecs=_second(args))
    e = parse_expression(args.expr[0], ctx, _vectors(ctx, args))
    point = dict(zip(ctx.coords + ctx.extra, _fraction_list(args.at)))
    return eval_expr(e, point, ctx), ctx


@verb("approx")
def _v_approx(args):
    from .expr import eval_expr

    ctx = _context(args, extra_vecs=_second(args))
    e = parse_expression(args.expr[0], ctx, _vectors(ctx, args))
    if args.at:
        point = dict(zip(ctx.coords + ctx.extra, _fraction_list(args.at)))
        value = eval_expr(e, point, ctx)
    else:
        value = e.as_polynomial().constant_term()
    return approx_scalar(value, args.digits), ctx


def _second(args):
    label = getattr(args, "second_vec", None)
    return (label,) if label else ()


# ---------------------------------------------------------------------------
# argument plumbing


def build_parser():
    ap = argparse.ArgumentParser(
        prog="harmcalc",
        description="Exact computer algebra for harmonic function theory.",
    )
    sub = ap.add_subparsers(dest="verb", required=True)
    for name in sorted(VERBS):
        p = sub.add_parser(name)
        p.add_argument("expr", nargs="*", help="expression payload")
        p.add_argument("--dim", type=int, default=None)
        p.add_argument("--vars", default=None, help="comma-separated coordinates")
        p.add_argument("--format", default="text", choices=("text", "json", "latex"))
        p.add_argument("--out", default=None)
        p.add_argument("--digits", type=int, default=6)
        p.add_argument("--power", type=int, default=1)
        p.add_argument("--by", action="append", default=None, help="var or var:mult")
        p.add_argument("--surface", default=None)
        p.add_argument("--degree", type=int, default=0)
        p.add_argument("--about", default=None)
        p.add_argument("--weight", default=None, help="radial weight in r")
        p.add_argument("--b", default=None)
        p.add_argument("--c", default=None)
        p.add_argument("--d", default=None)
        p.add_argument("--m", type=int, default=0)
        p.add_argument("--n", type=int, default=0)
        p.add_argument("--ip", default=None)
        p.add_argument("--region", default=None)
        p.add_argument("--rhs", default=None)
        p.add_argument("--multiple", default=None)
        p.add_argument("--singularity", default=None)
        p.add_argument("--second-vec", dest="second_vec", default=None)
        p.add_argument("--boundary", action="store_true")
        p.add_argument("--mirror", default=None)
        p.add_argument("--point", default=None)
        p.add_argument("--at", default=None)
        p.add_argument("--timing", action="store_true")
    bp = sub.add_parser("batch")
    bp.add_argument("file")
    bp.add_argument("--out", default=None)
    return ap


def run_command(argv):
    """Execute one command line; returns (payload, exit_code)."""
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.verb == "batch":
        results = []
        with open(args.file) as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                payload, code = run_command(shlex.split(line))
                results.append({"command": line, "exit": code, "result": payload})
        return results, 0
    fn, _ = VERBS[args.verb]
    started = time.monotonic()
    try:
        value, ctx = fn(args)
    except HarmcalcError as exc:
        return {"error": str(exc), "type": type(exc).__name__}, exc.exit_code
    if args.timing:
        # timing goes to stderr so stdout stays byte-identical across runs
        print(
            "elapsed-ms: %.1f" % (1000.0 * (time.monotonic() - started)),
            file=sys.stderr,
        )
    fmt = args.format
    if isinstance(value, tuple):
        rendered = [render_value(v, fmt, ctx) for v in value]
        payload = rendered if fmt == "json" else "\n".join(str(r) for r in rendered)
    else:
        payload = render_value(value, fmt, ctx)
    return payload, 0


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        payload, code = run_command(argv)
    except ParseError as exc:
        print("parse error: %s" % exc, file=sys.stderr)
        return exc.exit_code
    except HarmcalcError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return exc.exit_code
    out_path = None
    if "--out" in argv:
        out_path = argv[argv.index("--out") + 1]
    if isinstance(payload, (dict, list)):
        text = json.dumps(payload, indent=2, sort_keys=True)
    else:
        text = str(payload)
    if code != 0 and isinstance(payload, dict) and "error" in payload:
        print("%s: %s" % (payload["type"], payload["error"]), file=sys.stderr)
        return code
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
