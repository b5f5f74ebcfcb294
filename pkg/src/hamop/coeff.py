"""Exact Gaussian-rational scalars.

Polynomial coefficients are stored as ``gmpy2.mpq`` when real and only
promoted to :class:`GaussianRational` when an imaginary part is present, so
the real arithmetic that dominates every computation stays on the fast path.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

__all__ = ["GaussianRational", "I", "coerce", "gaussian", "is_real", "unit_power"]


def _q(value) -> mpq:
    if isinstance(value, mpq):
        return value
    if isinstance(value, (int, Fraction)) or isinstance(value, Rational):
        return mpq(value.numerator, value.denominator) if not isinstance(value, int) else mpq(value)
    if isinstance(value, str):
        return mpq(Fraction(value))
    raise TypeError(f"not an exact rational: {value!r}")


class GaussianRational:
    """``re + im*i`` with ``re``, ``im`` exact rationals.

    Arithmetic results whose imaginary part vanishes come back as plain
    ``mpq``; use :func:`gaussian` rather than the constructor to get that
    demotion for freshly built values.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _q(re)
        self.im = _q(im)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return gaussian(self.re + other.re, self.im + other.im)
        try:
            return gaussian(self.re + _q(other), self.im)
        except TypeError:
            return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return gaussian(self.re - other.re, self.im - other.im)
        try:
            return gaussian(self.re - _q(other), self.im)
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        try:
            return gaussian(_q(other) - self.re, -self.im)
        except TypeError:
            return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            return gaussian(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        try:
            q = _q(other)
        except TypeError:
            return NotImplemented
        return gaussian(self.re * q, self.im * q)

    __rmul__ = __mul__

    def norm(self) -> mpq:
        return self.re * self.re + self.im * self.im

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return gaussian(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, GaussianRational):
            return self * other.inverse()
        try:
            q = _q(other)
        except TypeError:
            return NotImplemented
        return gaussian(self.re / q, self.im / q)

    def __rtruediv__(self, other):
        try:
            return _q(other) * self.inverse()
        except TypeError:
            return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        result = mpq(1)
        for _ in range(abs(k)):
            result = result * base
        return result

    # -- comparison --------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        try:
            return self.im == 0 and self.re == _q(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        return format_scalar(self)


I = GaussianRational(0, 1)


def gaussian(re, im=0):
    """Build a scalar, demoting to ``mpq`` when the imaginary part is zero."""
    re = _q(re)
    im = _q(im)
    if im == 0:
        return re
    g = GaussianRational.__new__(GaussianRational)
    g.re = re
    g.im = im
    return g


def coerce(value):
    """Normalize an int/Fraction/mpq/complex-like value to the stored scalar form."""
    if isinstance(value, GaussianRational):
        return gaussian(value.re, value.im)
    if isinstance(value, complex):
        raise TypeError("floating complex values are not exact")
    return _q(value)


def is_real(value) -> bool:
    return not isinstance(value, GaussianRational) or value.im == 0


def real_part(value) -> mpq:
    return value.re if isinstance(value, GaussianRational) else _q(value)


def imag_part(value) -> mpq:
    return value.im if isinstance(value, GaussianRational) else mpq(0)


def unit_power(k: int):
    """``i**k`` as an exact scalar."""
    return [mpq(1), I, mpq(-1), -I][k % 4]


def _format_rational(q: mpq) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(value) -> str:
    """Print a scalar in the expression grammar (``i`` is the imaginary unit)."""
    re, im = real_part(value), imag_part(value)
    if im == 0:
        return _format_rational(re)
    if im == 1:
        im_s = "i"
    elif im == -1:
        im_s = "-i"
    else:
        im_s = f"{_format_rational(im)}*i"
    if re == 0:
        return im_s
    if im_s.startswith("-"):
        return f"{_format_rational(re)} - {im_s[1:]}"
    return f"{_format_rational(re)} + {im_s}"
