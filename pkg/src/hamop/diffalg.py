"""Differential functions on the jet space of one independent and one
dependent variable.

A differential function is stored as a fraction of two sparse polynomials in
the slots ``indep, u_0, u_1, ...`` with Gaussian-rational coefficients.
Monomials are packed into a single integer, ``_BITS`` bits per slot, so that
multiplying monomials is integer addition.  Slot 0 is the independent
variable and slot ``k + 1`` is the jet variable ``u_k``.

Fractions are kept in a canonical-but-unreduced form: the common monomial
factor of numerator and denominator is cancelled and the denominator's
leading coefficient (graded lex) is 1.  No polynomial GCD is ever taken;
equality is decided by cross-multiplication.  Whenever the denominator is a
single monomial, which covers every operator built in this package, the form
is fully canonical (a Laurent polynomial).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from gmpy2 import mpq

from .coeff import GaussianRational, coerce, format_scalar, imag_part, real_part
from .errors import ContextError, DegenerateSubstitution

__all__ = [
    "JetContext",
    "DiffFunction",
    "total_derivative",
    "partial_derivative",
    "substitute_jets",
    "equals",
    "order",
    "is_quasiconstant",
    "NO_ORDER",
]

_BITS = 16
_MASK = (1 << _BITS) - 1
ONE_MONO = 0

# order() of a function with no jet variable at all
NO_ORDER = -1

_RESERVED = {"D", "i", "o"}
_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9]*\Z")


# --------------------------------------------------------------------------
# packed monomials


def _unpack(m: int) -> list[int]:
    out = []
    while m:
        out.append(m & _MASK)
        m >>= _BITS
    return out


def _pack(exps: Iterable[int]) -> int:
    m = 0
    for s, e in enumerate(exps):
        if e < 0 or e > _MASK:
            raise OverflowError("exponent out of packable range")
        m |= e << (_BITS * s)
    return m


def _slot_unit(s: int) -> int:
    return 1 << (_BITS * s)


def _exp(m: int, s: int) -> int:
    return (m >> (_BITS * s)) & _MASK


def _mono_min(a: int, b: int) -> int:
    out = 0
    s = 0
    while a and b:
        ea, eb = a & _MASK, b & _MASK
        if ea and eb:
            out |= min(ea, eb) << (_BITS * s)
        a >>= _BITS
        b >>= _BITS
        s += 1
    return out


def _mono_max(a: int, b: int) -> int:
    out = 0
    s = 0
    while a or b:
        out |= max(a & _MASK, b & _MASK) << (_BITS * s)
        a >>= _BITS
        b >>= _BITS
        s += 1
    return out


def _grlex_key(m: int):
    exps = _unpack(m)
    return (sum(exps), len(exps), exps[::-1])


# --------------------------------------------------------------------------
# sparse polynomials: dict packed-monomial -> nonzero coefficient

Poly = dict


def _padd(a: Poly, b: Poly, sign: int = 1) -> Poly:
    if len(a) < len(b) and sign == 1:
        a, b = b, a
    out = dict(a)
    get = out.get
    for m, c in b.items():
        if sign != 1:
            c = -c
        v = get(m)
        if v is None:
            out[m] = c
        else:
            v = v + c
            if v:
                out[m] = v
            else:
                del out[m]
    return out


def _pscale(a: Poly, c) -> Poly:
    if not c:
        return {}
    if c == 1:
        return a
    return {m: v * c for m, v in a.items()}


def _pshift(a: Poly, mono: int, c=1) -> Poly:
    """``c * x^mono * a``."""
    if c == 1:
        return {m + mono: v for m, v in a.items()}
    return {m + mono: v * c for m, v in a.items()}


def _pmul(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    if len(b) == 1:
        ((m, c),) = b.items()
        return _pshift(a, m, c)
    out: dict = {}
    get = out.get
    for mb, cb in b.items():
        for ma, ca in a.items():
            k = ma + mb
            v = get(k)
            out[k] = ca * cb if v is None else v + ca * cb
    return {m: c for m, c in out.items() if c}


def _ppow(a: Poly, k: int) -> Poly:
    result: Poly = {ONE_MONO: mpq(1)}
    base = a
    while k:
        if k & 1:
            result = _pmul(result, base)
        k >>= 1
        if k:
            base = _pmul(base, base)
    return result


def _pderiv_total(a: Poly) -> Poly:
    out: dict = {}
    get = out.get
    for m, c in a.items():
        mm = m
        s = 0
        while mm:
            e = mm & _MASK
            if e:
                if s == 0:
                    k = m - 1
                else:
                    k = m - _slot_unit(s) + _slot_unit(s + 1)
                v = get(k)
                out[k] = c * e if v is None else v + c * e
            mm >>= _BITS
            s += 1
    return {m: c for m, c in out.items() if c}


def _pderiv_partial(a: Poly, s: int) -> Poly:
    unit = _slot_unit(s)
    out = {}
    for m, c in a.items():
        e = _exp(m, s)
        if e:
            out[m - unit] = c * e
    return out


def _support_slots(a: Poly) -> set[int]:
    slots = set()
    for m in a:
        s = 0
        while m:
            if m & _MASK:
                slots.add(s)
            m >>= _BITS
            s += 1
    return slots


def _max_exps(a: Poly) -> int:
    out = 0
    for m in a:
        out = _mono_max(out, m)
    return out


def _leading(a: Poly):
    m = max(a, key=_grlex_key)
    return m, a[m]


def _normalize(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return {}, {ONE_MONO: mpq(1)}
    # common monomial factor, starting from the denominator side
    g = None
    for m in den:
        g = m if g is None else _mono_min(g, m)
        if not g:
            break
    if g:
        for m in num:
            g = _mono_min(g, m)
            if not g:
                break
        if g:
            num = {m - g: c for m, c in num.items()}
            den = {m - g: c for m, c in den.items()}
    if len(den) == 1:
        ((m, lc),) = den.items()
    else:
        m, lc = _leading(den)
    if lc != 1:
        inv = 1 / lc
        num = {k: c * inv for k, c in num.items()}
        den = {k: c * inv for k, c in den.items()}
    return num, den


# --------------------------------------------------------------------------
# jet context


@dataclass(frozen=True)
class JetContext:
    """The pair (independent, dependent) of variable names, e.g. ``("y", "v")``."""

    indep: str = "x"
    dep: str = "u"

    def __post_init__(self):
        for name in (self.indep, self.dep):
            if not _NAME_RE.match(name) or name in _RESERVED:
                raise ValueError(f"invalid variable name {name!r}")
        if self.indep == self.dep:
            raise ValueError("independent and dependent variables must differ")

    def slot_name(self, s: int) -> str:
        if s == 0:
            return self.indep
        if s == 1:
            return self.dep
        return f"{self.dep}_{s - 1}"

    def slot_of(self, name: str) -> int:
        """Slot index of a variable name (``x``, ``u``, ``u_3``)."""
        if name == self.indep:
            return 0
        if name == self.dep:
            return 1
        base, sep, k = name.partition("_")
        if sep and base == self.dep and k.isdigit():
            return int(k) + 1
        raise KeyError(name)

    def __str__(self):
        return f"{self.indep},{self.dep}"


DEFAULT_CONTEXT = JetContext()


# --------------------------------------------------------------------------
# differential functions

Scalar = Union[int, mpq, GaussianRational]


class DiffFunction:
    """An element of the field of rational differential functions.

    Values are immutable.  ``==`` is mathematical equality (cross-multiplied),
    so instances are deliberately unhashable.
    """

    __slots__ = ("num", "den", "ctx")
    __hash__ = None  # type: ignore[assignment]

    def __init__(self, num: Poly, den: Poly | None = None, ctx: JetContext = DEFAULT_CONTEXT,
                 *, _normalized: bool = False):
        if den is None:
            den = {ONE_MONO: mpq(1)}
        if not _normalized:
            num = {m: coerce(c) for m, c in num.items() if c}
            den = {m: coerce(c) for m, c in den.items() if c}
            num, den = _normalize(num, den)
        self.num = num
        self.den = den
        self.ctx = ctx

    @classmethod
    def _raw(cls, num: Poly, den: Poly, ctx: JetContext) -> "DiffFunction":
        num, den = _normalize(num, den)
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        obj.ctx = ctx
        return obj

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, value, ctx: JetContext = DEFAULT_CONTEXT) -> "DiffFunction":
        c = coerce(value)
        return cls({ONE_MONO: c} if c else {}, ctx=ctx)

    @classmethod
    def zero(cls, ctx: JetContext = DEFAULT_CONTEXT) -> "DiffFunction":
        return cls({}, ctx=ctx)

    @classmethod
    def one(cls, ctx: JetContext = DEFAULT_CONTEXT) -> "DiffFunction":
        return cls.constant(1, ctx)

    @classmethod
    def indep(cls, ctx: JetContext = DEFAULT_CONTEXT) -> "DiffFunction":
        return cls({1: mpq(1)}, ctx=ctx)

    @classmethod
    def jet(cls, k: int, ctx: JetContext = DEFAULT_CONTEXT) -> "DiffFunction":
        """The jet variable of order ``k`` (``u`` itself for ``k = 0``)."""
        if k < 0:
            raise ValueError("jet order must be nonnegative")
        return cls({_slot_unit(k + 1): mpq(1)}, ctx=ctx)

    @classmethod
    def var(cls, name: str, ctx: JetContext = DEFAULT_CONTEXT) -> "DiffFunction":
        return cls({_slot_unit(ctx.slot_of(name)): mpq(1)}, ctx=ctx)

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_polynomial(self) -> bool:
        return self.den == {ONE_MONO: 1}

    def has_monomial_denominator(self) -> bool:
        return len(self.den) == 1

    def is_constant(self) -> bool:
        """True iff the function is a scalar (no x or jet dependence)."""
        if self.has_monomial_denominator():
            return set(self.num) <= {ONE_MONO} and ONE_MONO in self.den
        return all(partial_derivative(self, s).is_zero() for s in self.support())

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        if not self.num:
            return mpq(0)
        if self.has_monomial_denominator():
            return self.num[ONE_MONO] / self.den[ONE_MONO]
        # general fraction with constant value: ratio of leading coefficients
        return _leading(self.num)[1] / _leading(self.den)[1]

    def support(self) -> set[int]:
        """Slots that occur syntactically in numerator or denominator."""
        return _support_slots(self.num) | _support_slots(self.den)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "DiffFunction":
        if isinstance(other, DiffFunction):
            if other.ctx != self.ctx:
                raise ContextError(f"context mismatch: ({self.ctx}) vs ({other.ctx})")
            return other
        try:
            return DiffFunction.constant(other, self.ctx)
        except TypeError:
            return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _add(self, other, 1)

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _add(self, other, -1)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _add(other, self, -1)

    def __neg__(self):
        obj = DiffFunction.__new__(DiffFunction)
        obj.num = {m: -c for m, c in self.num.items()}
        obj.den = self.den
        obj.ctx = self.ctx
        return obj

    def __pos__(self):
        return self

    def __mul__(self, other):
        if not isinstance(other, DiffFunction):
            try:
                c = coerce(other)
            except TypeError:
                return NotImplemented
            return self.scale(c)
        other = self._coerce(other)
        return DiffFunction._raw(_pmul(self.num, other.num), _pmul(self.den, other.den), self.ctx)

    def __rmul__(self, other):
        return self.__mul__(other)

    def scale(self, c) -> "DiffFunction":
        c = coerce(c)
        if not c:
            return DiffFunction.zero(self.ctx)
        obj = DiffFunction.__new__(DiffFunction)
        obj.num = _pscale(self.num, c)
        obj.den = self.den
        obj.ctx = self.ctx
        return obj

    def inverse(self) -> "DiffFunction":
        if not self.num:
            raise ZeroDivisionError("division by the zero differential function")
        return DiffFunction._raw(self.den, self.num, self.ctx)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        return DiffFunction._raw(_ppow(self.num, k), _ppow(self.den, k), self.ctx)

    def __eq__(self, other):
        if not isinstance(other, DiffFunction):
            try:
                other = DiffFunction.constant(other, self.ctx)
            except TypeError:
                return NotImplemented
        return equals(self, other)

    # -- calculus shortcuts --------------------------------------------------

    def D(self, times: int = 1) -> "DiffFunction":
        f = self
        for _ in range(times):
            f = total_derivative(f)
        return f

    def diff(self, var) -> "DiffFunction":
        return partial_derivative(self, var)

    def order(self) -> int:
        return order(self)

    # -- printing ------------------------------------------------------------

    def __str__(self):
        return format_function(self)

    def __repr__(self):
        return f"DiffFunction({format_function(self)!r}, ctx=({self.ctx}))"


def _add(a: DiffFunction, b: DiffFunction, sign: int) -> DiffFunction:
    ctx = a.ctx
    if not b.num:
        return a
    if not a.num:
        return -b if sign < 0 else b
    da, db = a.den, b.den
    if da == db:
        return DiffFunction._raw(_padd(a.num, b.num, sign), da, ctx)
    if len(da) == 1 and len(db) == 1:
        (ma,) = da
        (mb,) = db
        lcm = _mono_max(ma, mb)
        num = _padd(_pshift(a.num, lcm - ma), _pshift(b.num, lcm - mb), sign)
        return DiffFunction._raw(num, {lcm: mpq(1)}, ctx)
    num = _padd(_pmul(a.num, db), _pmul(b.num, da), sign)
    return DiffFunction._raw(num, _pmul(da, db), ctx)


def _check_ctx(a: DiffFunction, b: DiffFunction) -> None:
    if a.ctx != b.ctx:
        raise ContextError(f"context mismatch: ({a.ctx}) vs ({b.ctx})")


def equals(a: DiffFunction, b: DiffFunction) -> bool:
    """Exact equality by cross-multiplication."""
    _check_ctx(a, b)
    if a.den == b.den:
        return a.num == b.num
    if len(a.den) == 1 and len(b.den) == 1:
        # both canonical Laurent polynomials with distinct denominators
        return False
    return _pmul(a.num, b.den) == _pmul(b.num, a.den)


def total_derivative(f: DiffFunction) -> DiffFunction:
    """``D f`` with ``D(indep) = 1`` and ``D(u_k) = u_{k+1}``."""
    if f.is_polynomial():
        return DiffFunction(_pderiv_total(f.num), None, f.ctx, _normalized=True)
    num = _padd(_pmul(_pderiv_total(f.num), f.den), _pmul(f.num, _pderiv_total(f.den)), -1)
    return DiffFunction._raw(num, _pmul(f.den, f.den), f.ctx)


def _slot_for(f: DiffFunction, var) -> int:
    if isinstance(var, int):
        return var + 1
    if isinstance(var, DiffFunction):
        ((m, _),) = var.num.items()
        return _unpack(m).index(1)
    return f.ctx.slot_of(var)


def partial_derivative(f: DiffFunction, var) -> DiffFunction:
    """Formal partial derivative.

    ``var`` is a jet order (int), a variable name (``"x"``, ``"u_2"``) or a
    bare variable built with :meth:`DiffFunction.var`.
    """
    s = _slot_for(f, var)
    dn = _pderiv_partial(f.num, s)
    if f.is_polynomial():
        return DiffFunction(dn, None, f.ctx, _normalized=True) if dn else DiffFunction.zero(f.ctx)
    dd = _pderiv_partial(f.den, s)
    if not dd:
        return DiffFunction._raw(dn, f.den, f.ctx)
    num = _padd(_pmul(dn, f.den), _pmul(f.num, dd), -1)
    return DiffFunction._raw(num, _pmul(f.den, f.den), f.ctx)


def order(f: DiffFunction) -> int:
    """Highest ``k`` such that ``f`` depends on ``u_k``; ``NO_ORDER`` if none."""
    slots = sorted((s for s in f.support() if s > 0), reverse=True)
    if f.has_monomial_denominator():
        return slots[0] - 1 if slots else NO_ORDER
    for s in slots:
        if not partial_derivative(f, s - 1).is_zero():
            return s - 1
    return NO_ORDER


def is_quasiconstant(f: DiffFunction) -> bool:
    """True iff ``f`` depends on the independent variable only."""
    return order(f) == NO_ORDER


def depends_on_indep(f: DiffFunction) -> bool:
    if 0 not in f.support():
        return False
    if f.has_monomial_denominator():
        return True
    return not partial_derivative(f, f.ctx.indep).is_zero()


# --------------------------------------------------------------------------
# composition with substituted values


def compose(f: DiffFunction, images: dict[int, DiffFunction], ctx: JetContext) -> DiffFunction:
    """Evaluate ``f`` with slot ``s`` replaced by ``images[s]`` (all in ``ctx``)."""
    num = _evaluate(f.num, images, ctx)
    if f.is_polynomial():
        return num
    return num / _evaluate(f.den, images, ctx)


def _evaluate(p: Poly, images: dict[int, DiffFunction], ctx: JetContext) -> DiffFunction:
    if not p:
        return DiffFunction.zero(ctx)
    top = _unpack(_max_exps(p))
    slots = [s for s, e in enumerate(top) if e]
    for s in slots:
        if images[s].ctx != ctx:
            raise ContextError("image in wrong context")
    # homogenize: each slot s contributes n_s^e * d_s^(E_s - e) over d_s^E_s
    num_pows: dict[int, list[Poly]] = {}
    den_pows: dict[int, list[Poly]] = {}
    for s in slots:
        img = images[s]
        npw = [{ONE_MONO: mpq(1)}]
        for _ in range(top[s]):
            npw.append(_pmul(npw[-1], img.num))
        num_pows[s] = npw
        if img.is_polynomial():
            den_pows[s] = None  # type: ignore[assignment]
        else:
            dpw = [{ONE_MONO: mpq(1)}]
            for _ in range(top[s]):
                dpw.append(_pmul(dpw[-1], img.den))
            den_pows[s] = dpw
    total: dict = {}
    # group terms by their exponent on the first few slots to share partial products
    for m, c in p.items():
        exps = _unpack(m)
        factors = []
        for s in slots:
            e = exps[s] if s < len(exps) else 0
            if e:
                factors.append(num_pows[s][e])
            dpw = den_pows[s]
            if dpw is not None and top[s] - e:
                factors.append(dpw[top[s] - e])
        factors.sort(key=len)
        term: Poly = {ONE_MONO: c}
        for fac in factors:
            term = _pmul(term, fac)
        for k, v in term.items():
            old = total.get(k)
            total[k] = v if old is None else old + v
    total = {k: v for k, v in total.items() if v}
    den: Poly = {ONE_MONO: mpq(1)}
    for s in slots:
        if den_pows[s] is not None:
            den = _pmul(den, den_pows[s][top[s]])
    return DiffFunction._raw(total, den, ctx)


def substitute_jets(f: DiffFunction, s) -> DiffFunction:
    """Rewrite ``f`` through a differential substitution.

    ``s`` must provide ``source_ctx``, ``target_ctx``, ``phi`` and
    ``jet_image(k)`` (see :class:`hamop.transform.Substitution`).
    """
    if f.ctx != s.source_ctx:
        raise ContextError(f"function lives in ({f.ctx}), substitution expects ({s.source_ctx})")
    top = _unpack(_mono_max(_max_exps(f.num), _max_exps(f.den)))
    images = {}
    for slot, e in enumerate(top):
        if e:
            images[slot] = s.phi if slot == 0 else s.jet_image(slot - 1)
    return compose(f, images, s.target_ctx)


# --------------------------------------------------------------------------
# Laurent view (monomial denominators)


def laurent_terms(f: DiffFunction) -> list[tuple[list[int], object]]:
    """Terms ``(exponents, coeff)`` with possibly negative exponents.

    Only defined when the denominator is a single monomial.
    """
    if not f.has_monomial_denominator():
        raise ValueError("not a Laurent polynomial")
    ((dm, dc),) = f.den.items()
    dexps = _unpack(dm)
    out = []
    for m, c in f.num.items():
        exps = _unpack(m)
        n = max(len(exps), len(dexps))
        exps = exps + [0] * (n - len(exps))
        for s, e in enumerate(dexps):
            exps[s] -= e
        out.append((exps, c / dc))
    return out


def from_laurent(terms: Iterable[tuple[list[int], object]], ctx: JetContext) -> DiffFunction:
    terms = list(terms)
    if not terms:
        return DiffFunction.zero(ctx)
    n = max(len(e) for e, _ in terms)
    shift = [0] * n
    for exps, _ in terms:
        for s, e in enumerate(exps):
            if e < 0:
                shift[s] = max(shift[s], -e)
    num: dict = {}
    for exps, c in terms:
        m = _pack([e + shift[s] for s, e in enumerate(exps)] + shift[len(exps):])
        v = num.get(m)
        num[m] = c if v is None else v + c
    num = {m: c for m, c in num.items() if c}
    return DiffFunction._raw(num, {_pack(shift): mpq(1)}, ctx)


# --------------------------------------------------------------------------
# printing


def _format_mono(m: int, ctx: JetContext, exps: list[int] | None = None) -> list[str]:
    if exps is None:
        exps = _unpack(m)
    parts = []
    # jets in increasing order after the independent variable
    for s, e in enumerate(exps):
        if e:
            name = ctx.slot_name(s)
            parts.append(name if e == 1 else f"{name}^{e}")
    return parts


def _format_terms(terms: list[tuple[list[str], object]]) -> str:
    if not terms:
        return "0"
    pieces = []
    for i, (vars_, c) in enumerate(terms):
        re_, im_ = real_part(c), imag_part(c)
        negative = (im_ == 0 and re_ < 0) or (re_ == 0 and im_ < 0)
        mag = -c if negative else c
        mre, mim = real_part(mag), imag_part(mag)
        if mim != 0 and mre != 0:
            cs = f"({format_scalar(mag)})"
        else:
            cs = format_scalar(mag)
        if vars_:
            body = "*".join(vars_) if cs == "1" else "*".join([cs] + vars_)
        else:
            body = cs
        if i == 0:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces)


def _format_poly(p: Poly, ctx: JetContext) -> str:
    ms = sorted(p, key=_grlex_key, reverse=True)
    return _format_terms([(_format_mono(m, ctx), p[m]) for m in ms])


def _laurent_key(exps: list[int]):
    return (sum(exps), len(exps), exps[::-1])


def format_function(f: DiffFunction) -> str:
    """Print in the CLI expression grammar (re-parseable)."""
    ctx = f.ctx
    if f.is_polynomial():
        return _format_poly(f.num, ctx)
    if f.has_monomial_denominator():
        terms = laurent_terms(f)
        terms.sort(key=lambda t: _laurent_key(t[0]), reverse=True)
        return _format_terms([(_format_mono(0, ctx, exps), c) for exps, c in terms])
    num = _format_poly(f.num, ctx)
    den = _format_poly(f.den, ctx)
    return f"({num})/({den})"


def iter_slots(f: DiffFunction) -> Iterator[int]:
    return iter(sorted(f.support()))
