"""Exact constants: sums of rational * pi^(k/2) * sqrt(d) * prod log(p)^m.

A Scalar is a finite sum of terms.  Each term carries a nonzero rational
coefficient, a positive squarefree radicand (1 meaning no radical), an
integer half-exponent of pi (the term contributes pi^(pi_half/2)), and a
multiset of prime logarithms.  Log arguments are always reduced to the
prime basis (log 4 becomes 2*log 2, log(3/2) becomes log 3 - log 2), which
keeps zero testing decidable: distinct signatures are treated as linearly
independent over the rationals.
"""

from __future__ import annotations

import math
from decimal import Decimal, localcontext
from fractions import Fraction

from .errors import (
    MultiTermDivision,
    MultiTermSqrt,
    NegativeRadicand,
    NonRationalSqrt,
    NonRationalValue,
    OddPiExponent,
)

# ---------------------------------------------------------------------------
# integer factorization (squarefree extraction needs full factorizations)

_SMALL_PRIMES = []


def _sieve(limit=10000):
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, int(limit**0.5) + 1):
        if flags[i]:
            flags[i * i :: i] = b"\x00" * len(flags[i * i :: i])
    return [i for i, f in enumerate(flags) if f]


_SMALL_PRIMES = _sieve()

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n):
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n):
    # deterministic parameter sweep keeps results reproducible
    if n % 2 == 0:
        return 2
    for c in range(1, 50):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError("factorization failed for %d" % n)


def factorize(n):
    """Prime factorization of n >= 1 as a dict prime -> exponent."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out = {}
    for p in _SMALL_PRIMES:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        if n == 1:
            return out
        if p * p > n:
            break
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_brent(m)
        stack.append(d)
        stack.append(m // d)
    return out


def split_square(n):
    """n >= 1 as (s, m) with n = s^2 * m and m squarefree."""
    s, m = 1, 1
    for p, e in factorize(n).items():
        s *= p ** (e // 2)
        if e % 2:
            m *= p
    return s, m


# ---------------------------------------------------------------------------
# Scalar

_ZERO = Fraction(0)


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError("expected int or Fraction, got %r" % (x,))


class Scalar:
    """Canonical exact constant.  Immutable."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        # terms must already be canonical; use the constructors below
        object.__setattr__(self, "terms", tuple(terms))

    # -- construction -------------------------------------------------------

    @staticmethod
    def _build(raw):
        """Canonicalize a list of (coeff, radicand, pi_half, logs) tuples."""
        acc = {}
        for coeff, rad, pih, logs in raw:
            if coeff == 0:
                continue
            sig = (rad, pih, logs)
            acc[sig] = acc.get(sig, _ZERO) + coeff
        terms = tuple(
            (c, sig[0], sig[1], sig[2])
            for sig, c in sorted(acc.items(), key=lambda kv: kv[0])
            if c != 0
        )
        return Scalar(terms)

    @staticmethod
    def from_fraction(q):
        q = _as_fraction(q)
        if q == 0:
            return ZERO
        return Scalar(((q, 1, 0, ()),))

    @staticmethod
    def pi_power(half):
        """pi^(half/2), half an integer."""
        return Scalar(((Fraction(1), 1, int(half), ()),))

    @staticmethod
    def sqrt_int(d):
        """Exact square root of a positive integer."""
        if d <= 0:
            raise NegativeRadicand("sqrt of nonpositive integer %d" % d)
        s, m = split_square(d)
        if m == 1:
            return Scalar.from_fraction(Fraction(s))
        return Scalar(((Fraction(s), m, 0, ()),))

    @staticmethod
    def sqrt_fraction(q):
        """Exact square root of a positive rational."""
        q = _as_fraction(q)
        if q <= 0:
            raise NegativeRadicand("sqrt of nonpositive rational %s" % q)
        return Scalar.sqrt_int(q.numerator * q.denominator) / Fraction(q.denominator)

    @staticmethod
    def log_fraction(q):
        """log q for a positive rational, expanded over prime logs."""
        q = _as_fraction(q)
        if q <= 0:
            raise ValueError("log of nonpositive rational %s" % q)
        raw = []
        for p, e in factorize(q.numerator).items():
            raw.append((Fraction(e), 1, 0, ((p, 1),)))
        for p, e in factorize(q.denominator).items():
            raw.append((Fraction(-e), 1, 0, ((p, 1),)))
        return Scalar._build(raw)

    # -- predicates ---------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_rational(self):
        return not self.terms or (
            len(self.terms) == 1 and self.terms[0][1:] == (1, 0, ())
        )

    def as_fraction(self):
        if not self.terms:
            return _ZERO
        if self.is_rational():
            return self.terms[0][0]
        raise NonRationalValue("not a rational scalar: %r" % (self,))

    def is_single_term(self):
        return len(self.terms) == 1

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        other = _coerce(other)
        if not self.terms:
            return other
        if not other.terms:
            return self
        if len(self.terms) == 1 and len(other.terms) == 1:
            c1, r1, p1, l1 = self.terms[0]
            c2, r2, p2, l2 = other.terms[0]
            if (r1, p1, l1) == (r2, p2, l2):
                c = c1 + c2
                if not c:
                    return ZERO
                return Scalar(((c, r1, p1, l1),))
        return Scalar._build(list(self.terms) + list(other.terms))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(tuple((-c, r, p, lg) for c, r, p, lg in self.terms))

    def __sub__(self, other):
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        other = _coerce(other)
        if not self.terms or not other.terms:
            return ZERO
        if len(self.terms) == 1 and len(other.terms) == 1:
            c1, r1, p1, l1 = self.terms[0]
            c2, r2, p2, l2 = other.terms[0]
            if r1 == 1 and r2 == 1 and not l1 and not l2:
                return Scalar(((c1 * c2, 1, p1 + p2, ()),))
            g = math.gcd(r1, r2)
            return Scalar(
                (
                    (
                        c1 * c2 * g,
                        (r1 // g) * (r2 // g),
                        p1 + p2,
                        _merge_logs(l1, l2),
                    ),
                )
            )
        raw = []
        for c1, r1, p1, l1 in self.terms:
            for c2, r2, p2, l2 in other.terms:
                g = math.gcd(r1, r2)
                coeff = c1 * c2 * g
                rad = (r1 // g) * (r2 // g)
                logs = _merge_logs(l1, l2)
                raw.append((coeff, rad, p1 + p2, logs))
        return Scalar._build(raw)

    __rmul__ = __mul__

    def inverse(self):
        """Reciprocal; only single log-free terms are invertible."""
        if len(self.terms) != 1:
            raise MultiTermDivision("division by multi-term scalar")
        c, r, p, logs = self.terms[0]
        if logs:
            raise MultiTermDivision("division by a scalar with log factors")
        # 1/(c sqrt(r) pi^(p/2)) = (1/(c r)) sqrt(r) pi^(-p/2)
        return Scalar(((Fraction(1) / (c * r), r, -p, ()),))

    def __truediv__(self, other):
        return self * _coerce(other).inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("scalar exponent must be an integer")
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- equality -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar.from_fraction(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __repr__(self):
        from .render import scalar_text

        return "Scalar(%s)" % scalar_text(self)


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar.from_fraction(x)
    raise TypeError("cannot treat %r as a Scalar" % (x,))


def _merge_logs(l1, l2):
    if not l1:
        return l2
    if not l2:
        return l1
    acc = dict(l1)
    for p, e in l2:
        acc[p] = acc.get(p, 0) + e
    return tuple(sorted(acc.items()))


ZERO = Scalar()
ONE = Scalar(((Fraction(1), 1, 0, ()),))


def scalar_sqrt(s):
    """Square root of a single-term Scalar with t*t == s.

    The term must have a positive coefficient, radicand 1, an even pi
    half-exponent, and no log factors.
    """
    s = _coerce(s)
    if len(s.terms) != 1:
        raise MultiTermSqrt("sqrt of a scalar with %d terms" % len(s.terms))
    c, r, p, logs = s.terms[0]
    if logs:
        raise NonRationalSqrt("sqrt of a scalar with log factors")
    if r != 1:
        raise NonRationalSqrt("sqrt of a scalar already carrying a radical")
    if c < 0:
        raise NegativeRadicand("sqrt of a negative scalar")
    if p % 2:
        raise OddPiExponent("sqrt needs an even pi half-exponent, got %d/2" % p)
    root = Scalar.sqrt_fraction(c)
    if p:
        root = root * Scalar.pi_power(p // 2)
    return root


# ---------------------------------------------------------------------------
# decimal approximation

_PI_CACHE = {}


def _pi_decimal(prec):
    """pi to `prec` digits (arctan-free iteration from the decimal docs)."""
    if prec in _PI_CACHE:
        return _PI_CACHE[prec]
    with localcontext() as c:
        c.prec = prec + 10
        three = Decimal(3)
        lasts, t, s, n, na, d, da = 0, three, 3, 1, 0, 0, 24
        while s != lasts:
            lasts = s
            n, na = n + na, na + 8
            d, da = d + da, da + 32
            t = t * n / d
            s += t
        pi = +s
    _PI_CACHE[prec] = pi
    return pi


def _eval_decimal(s, prec):
    with localcontext() as c:
        c.prec = prec
        total = Decimal(0)
        pi = _pi_decimal(prec)
        for coeff, rad, pih, logs in s.terms:
            v = Decimal(coeff.numerator) / Decimal(coeff.denominator)
            if pih:
                v *= pi.sqrt() ** pih
            if rad != 1:
                v *= Decimal(rad).sqrt()
            for p, m in logs:
                v *= Decimal(p).ln() ** m
            total += v
        return +total


def _format_sig(v, digits):
    if v == 0:
        return "0." + "0" * digits
    q = Decimal(1).scaleb(v.adjusted() - digits + 1)
    with localcontext() as c:
        c.prec = digits + 4
        rounded = v.quantize(q)
    text = format(rounded, "f")
    return text


def approx_scalar(s, digits):
    """Correctly rounded decimal string with `digits` significant digits."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    s = _coerce(s)
    if s.is_zero():
        return "0." + "0" * digits
    guard = digits + 25
    prev = None
    for _ in range(6):
        v = _eval_decimal(s, guard)
        text = _format_sig(v, digits)
        if text == prev:
            return text
        prev = text
        guard += 20
    return prev
