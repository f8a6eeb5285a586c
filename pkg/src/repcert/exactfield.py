"""Exact arithmetic in fraction fields of multivariate Laurent polynomials.

Base fields are Q, F_p and quadratic extensions Q(sqrt(d)).  A
:class:`FunctionField` is a base field together with an ordered tuple of
transcendental symbols; distinct names are independent transcendentals.
Elements are stored as numerator/denominator pairs of Laurent polynomials
(dicts from exponent tuples to nonzero coefficients).  No multivariate gcd is
taken: monomial denominators are absorbed into the numerator, exact
divisions are detected, and equality is tested by cross-multiplication.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from operator import add, sub

__all__ = [
    "BaseField", "QQ", "GF", "Quadratic", "QuadNumber", "FunctionField",
    "FuncFieldElem", "LaurentPoly", "adjoin", "specialize",
    "FieldError", "DivisionByZero", "DuplicateSymbol", "DenominatorVanishes",
    "IncompatibleFields", "ParseError",
]


class FieldError(ValueError):
    pass


class DivisionByZero(FieldError, ZeroDivisionError):
    pass


class DuplicateSymbol(FieldError):
    pass


class DenominatorVanishes(FieldError):
    pass


class IncompatibleFields(FieldError):
    pass


class ParseError(FieldError):
    pass


def _is_prime(p):
    if p < 2:
        return False
    return all(p % k for k in range(2, math.isqrt(p) + 1))


def _squarefree(d):
    if d in (0, 1):
        return False
    n = abs(d)
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


class QuadNumber:
    """a + b*sqrt(d) with a, b rational; b != 0 (otherwise a plain rational is used)."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = d

    @staticmethod
    def make(a, b, d):
        if b == 0:
            return _ratnorm(Fraction(a))
        return QuadNumber(a, b, d)

    def _split(self, other):
        if isinstance(other, QuadNumber):
            if other.d != self.d:
                raise IncompatibleFields(f"sqrt({self.d}) vs sqrt({other.d})")
            return other.a, other.b
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return NotImplemented, None

    def __add__(self, other):
        a, b = self._split(other)
        if a is NotImplemented:
            return NotImplemented
        return QuadNumber.make(self.a + a, self.b + b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadNumber(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._split(other)
        if a is NotImplemented:
            return NotImplemented
        return QuadNumber.make(self.a * a + self.b * b * self.d,
                               self.a * b + self.b * a, self.d)

    __rmul__ = __mul__

    def norm(self):
        return self.a * self.a - self.d * self.b * self.b

    def inverse(self):
        n = self.norm()
        return QuadNumber.make(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        if isinstance(other, QuadNumber):
            return self * other.inverse()
        return QuadNumber.make(self.a / other, self.b / other, self.d)

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __eq__(self, other):
        if isinstance(other, QuadNumber):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        return False  # b != 0 by construction

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __repr__(self):
        return f"QuadNumber({self.a}, {self.b}, {self.d})"


def _ratnorm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


@dataclass(frozen=True)
class BaseField:
    """Q (characteristic 0), F_p, or Q(sqrt(radicand))."""

    characteristic: int = 0
    radicand: int | None = None

    def __post_init__(self):
        if self.characteristic and not _is_prime(self.characteristic):
            raise FieldError(f"characteristic {self.characteristic} is not prime")
        if self.radicand is not None:
            if self.characteristic:
                raise FieldError("quadratic extensions only in characteristic 0")
            if not _squarefree(self.radicand):
                raise FieldError(f"radicand {self.radicand} is not square-free")

    def norm(self, c):
        p = self.characteristic
        if p:
            return c % p
        if type(c) is Fraction and c.denominator == 1:
            return c.numerator
        return c

    def coerce(self, c):
        p = self.characteristic
        if isinstance(c, QuadNumber):
            if self.radicand != c.d:
                raise IncompatibleFields(f"sqrt({c.d}) not in {self}")
            return c
        if p:
            if isinstance(c, Fraction):
                if c.denominator % p == 0:
                    raise DivisionByZero(f"{c} has no image mod {p}")
                return c.numerator * pow(c.denominator, -1, p) % p
            return int(c) % p
        if isinstance(c, float):
            raise FieldError("floating-point coefficients are not exact")
        return _ratnorm(Fraction(c)) if isinstance(c, Fraction) else int(c)

    def inv(self, c):
        if c == 0:
            raise DivisionByZero("division by zero")
        p = self.characteristic
        if p:
            return pow(c, -1, p)
        if isinstance(c, QuadNumber):
            return c.inverse()
        return _ratnorm(Fraction(1, 1) / c)

    def sqrt_d(self):
        if self.radicand is None:
            raise FieldError(f"{self} has no square root adjoined")
        return QuadNumber(0, 1, self.radicand)

    def fmt(self, c):
        if isinstance(c, QuadNumber):
            return f"({_fmt_q(c.a)}{'+' if c.b > 0 else '-'}{_fmt_q(abs(c.b))}*sqrt({c.d}))"
        return _fmt_q(c)

    def __str__(self):
        if self.characteristic:
            return f"GF({self.characteristic})"
        if self.radicand is not None:
            return f"Q(sqrt({self.radicand}))"
        return "QQ"


def _fmt_q(c):
    c = _ratnorm(c) if isinstance(c, Fraction) else c
    return str(c)


QQ = BaseField()


def GF(p):
    return BaseField(p)


def Quadratic(d):
    return BaseField(0, d)


class FunctionField:
    """Base field with an ordered tuple of independent transcendental symbols.

    Instances are interned, so two fields with the same base and names are the
    same object.
    """

    _interned: dict = {}

    def __new__(cls, base: BaseField = QQ, names=()):
        names = tuple(names)
        key = (base, names)
        obj = cls._interned.get(key)
        if obj is None:
            if len(set(names)) != len(names):
                raise DuplicateSymbol(f"repeated symbol in {names}")
            for n in names:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", n) or n == "sqrt":
                    raise FieldError(f"bad symbol name {n!r}")
            obj = super().__new__(cls)
            obj.base = base
            obj.names = names
            obj.nvars = len(names)
            obj.index = {n: i for i, n in enumerate(names)}
            obj.zero_exp = (0,) * len(names)
            obj._remaps = {}
            cls._interned[key] = obj
        return obj

    def __reduce__(self):
        return (FunctionField, (self.base, self.names))

    @property
    def characteristic(self):
        return self.base.characteristic

    def __repr__(self):
        if not self.names:
            return str(self.base)
        return f"{self.base}({', '.join(self.names)})"

    def gen(self, name):
        i = self.index[name]
        e = [0] * self.nvars
        e[i] = 1
        return FuncFieldElem(self, {tuple(e): 1})

    def gens(self):
        return tuple(self.gen(n) for n in self.names)

    def __call__(self, value):
        if isinstance(value, FuncFieldElem):
            return self.lift(value)
        if isinstance(value, str):
            return self.parse(value)
        c = self.base.coerce(value)
        if c == 0:
            return FuncFieldElem(self, {})
        return FuncFieldElem(self, {self.zero_exp: c})

    def zero(self):
        return FuncFieldElem(self, {})

    def one(self):
        return FuncFieldElem(self, {self.zero_exp: 1})

    def fresh_name(self, stem):
        if stem not in self.index:
            return stem
        k = 1
        while f"{stem}{k}" in self.index:
            k += 1
        return f"{stem}{k}"

    def union(self, other: FunctionField) -> FunctionField:
        if other is self:
            return self
        if other.base != self.base:
            raise IncompatibleFields(f"{self} and {other} have different base fields")
        extra = [n for n in other.names if n not in self.index]
        return FunctionField(self.base, self.names + tuple(extra))

    def _remap(self, target: FunctionField):
        m = self._remaps.get(target)
        if m is None:
            m = tuple(target.index[n] for n in self.names)
            self._remaps[target] = m
        return m

    def lift(self, e: FuncFieldElem) -> FuncFieldElem:
        """Re-express an element of a subfield in this field."""
        if e.ctx is self:
            return e
        if e.ctx.base != self.base:
            raise IncompatibleFields(f"{e.ctx} -> {self}")
        m = e.ctx._remap(self)
        n = self.nvars

        def conv(d):
            out = {}
            for exp, c in d.items():
                v = [0] * n
                for i, k in zip(m, exp):
                    v[i] = k
                out[tuple(v)] = c
            return out

        return FuncFieldElem(self, conv(e.num), None if e.den is None else conv(e.den))

    def parse(self, text: str) -> FuncFieldElem:
        return _Parser(self, text).parse()


def adjoin(field, names) -> FunctionField:
    """Extend ``field`` (a BaseField or FunctionField) by fresh transcendentals."""
    if isinstance(names, str):
        names = [names]
    if isinstance(field, BaseField):
        field = FunctionField(field, ())
    names = list(names)
    for n in names:
        if n in field.index:
            raise DuplicateSymbol(f"symbol {n!r} already present in {field}")
    if len(set(names)) != len(names):
        raise DuplicateSymbol(f"repeated symbol in {names}")
    return FunctionField(field.base, field.names + tuple(names))


# --- Laurent polynomial kernels on dicts ----------------------------------


def _padd(p, q, norm):
    out = dict(p)
    for e, c in q.items():
        v = out.get(e)
        if v is None:
            out[e] = c
        else:
            v = norm(v + c)
            if v == 0:
                del out[e]
            else:
                out[e] = v
    return out


def _pneg(p, norm):
    return {e: norm(-c) for e, c in p.items()}


def _pscale(p, c, norm):
    out = {}
    for e, v in p.items():
        v = norm(v * c)
        if v != 0:
            out[e] = v
    return out


def _pshift(p, m, norm=None, c=None):
    if c is None:
        return {tuple(map(add, e, m)): v for e, v in p.items()}
    out = {}
    for e, v in p.items():
        v = norm(v * c)
        if v != 0:
            out[tuple(map(add, e, m))] = v
    return out


def _pmul_into(acc, p, q):
    if len(p) > len(q):
        p, q = q, p
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(map(add, e1, e2))
            v = acc.get(e)
            acc[e] = c1 * c2 if v is None else v + c1 * c2


def _pclean(acc, norm):
    out = {}
    for e, c in acc.items():
        c = norm(c)
        if c != 0:
            out[e] = c
    return out


def _pmul(p, q, norm):
    if len(p) == 1:
        (m, c), = p.items()
        return _pshift(q, m, norm, c)
    if len(q) == 1:
        (m, c), = q.items()
        return _pshift(p, m, norm, c)
    acc = {}
    _pmul_into(acc, p, q)
    return _pclean(acc, norm)


def _mincontent(p):
    it = iter(p)
    m = list(next(it))
    for e in it:
        for i, k in enumerate(e):
            if k < m[i]:
                m[i] = k
    return tuple(m)


def _divexact(num, den, base):
    """Laurent exact division num/den, or None when den does not divide num."""
    norm = base.norm
    mn, md = _mincontent(num), _mincontent(den)
    n = {tuple(map(sub, e, mn)): c for e, c in num.items()}
    d = {tuple(map(sub, e, md)): c for e, c in den.items()}
    dlead = max(d)
    dinv = base.inv(d[dlead])
    dterms = list(d.items())
    q = {}
    r = dict(n)
    while r:
        rlead = max(r)
        shift = tuple(map(sub, rlead, dlead))
        if any(k < 0 for k in shift):
            return None
        c = norm(r[rlead] * dinv)
        q[shift] = c
        for e, v in dterms:
            ee = tuple(map(add, e, shift))
            w = r.get(ee, 0) - c * v
            w = norm(w)
            if w == 0:
                r.pop(ee, None)
            else:
                r[ee] = w
    off = tuple(map(sub, mn, md))
    return {tuple(map(add, e, off)): c for e, c in q.items()}


class LaurentPoly:
    """Read-only view of a Laurent polynomial (exponent tuple -> coefficient)."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: FunctionField, terms: dict):
        self.ctx = ctx
        self.terms = terms

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.ctx is other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash((self.ctx.names, frozenset(self.terms.items())))

    def degree(self, name):
        i = self.ctx.index[name]
        return max(e[i] for e in self.terms) if self.terms else None

    def low_degree(self, name):
        i = self.ctx.index[name]
        return min(e[i] for e in self.terms) if self.terms else None

    def coefficients(self):
        return list(self.terms.values())

    def __str__(self):
        return _fmt_poly(self.ctx, self.terms)


def _fmt_mono(ctx, e):
    parts = []
    for n, k in zip(ctx.names, e):
        if k == 1:
            parts.append(n)
        elif k:
            parts.append(f"{n}^{k}")
    return "*".join(parts)


def _fmt_poly(ctx, p):
    if not p:
        return "0"
    out = []
    for e in sorted(p, reverse=True):
        c = p[e]
        mono = _fmt_mono(ctx, e)
        cs = ctx.base.fmt(c)
        if not mono:
            t = cs
        elif cs == "1":
            t = mono
        elif cs == "-1":
            t = "-" + mono
        else:
            t = f"{cs}*{mono}"
        if out and not t.startswith("-"):
            t = "+" + t
        out.append(t)
    return "".join(out)


class FuncFieldElem:
    """Element num/den of a FunctionField; ``den is None`` stands for 1."""

    __slots__ = ("ctx", "num", "den")

    def __init__(self, ctx, num, den=None):
        self.ctx = ctx
        self.num = num
        self.den = den

    # -- construction helpers
    @staticmethod
    def _make(ctx, num, den):
        if not num:
            return FuncFieldElem(ctx, {})
        if den is None:
            return FuncFieldElem(ctx, num)
        base = ctx.base
        norm = base.norm
        if len(den) == 1:
            (m, c), = den.items()
            return FuncFieldElem(ctx, _pshift(num, tuple(-k for k in m), norm, base.inv(c)))
        if num == den:
            return FuncFieldElem(ctx, {ctx.zero_exp: 1})
        q = _divexact(num, den, base)
        if q is not None:
            return FuncFieldElem(ctx, q)
        md = _mincontent(den)
        if any(md):
            neg = tuple(-k for k in md)
            den = _pshift(den, neg)
            num = _pshift(num, neg)
        lead = den[max(den)]
        if lead != 1:
            li = base.inv(lead)
            den = _pscale(den, li, norm)
            num = _pscale(num, li, norm)
        return FuncFieldElem(ctx, num, den)

    def _coerce(self, other):
        if isinstance(other, FuncFieldElem):
            if other.ctx is self.ctx:
                return self, other
            u = self.ctx.union(other.ctx)
            return u.lift(self), u.lift(other)
        if isinstance(other, (int, Fraction, QuadNumber)):
            return self, self.ctx(other)
        return None, None

    @property
    def numerator(self):
        return LaurentPoly(self.ctx, self.num)

    @property
    def denominator(self):
        return LaurentPoly(self.ctx, self.den if self.den is not None else {self.ctx.zero_exp: 1})

    def is_zero(self):
        return not self.num

    def is_one(self):
        return self.den is None and len(self.num) == 1 and self.num.get(self.ctx.zero_exp) == 1

    def is_constant(self):
        return self.den is None and (not self.num or (len(self.num) == 1 and self.ctx.zero_exp in self.num))

    def is_laurent(self):
        return self.den is None

    def constant_value(self):
        if not self.is_constant():
            raise FieldError(f"{self} is not a constant")
        return self.num.get(self.ctx.zero_exp, 0)

    def is_monomial(self):
        return self.den is None and len(self.num) == 1

    def symbols(self):
        used = set()
        for d in (self.num, self.den or {}):
            for e in d:
                used.update(i for i, k in enumerate(e) if k)
        return [self.ctx.names[i] for i in sorted(used)]

    # -- arithmetic
    def __add__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        ctx, norm = a.ctx, a.ctx.base.norm
        if a.den is None and b.den is None:
            return FuncFieldElem(ctx, _padd(a.num, b.num, norm))
        if a.den == b.den:
            return FuncFieldElem._make(ctx, _padd(a.num, b.num, norm), a.den)
        ad = a.den or {ctx.zero_exp: 1}
        bd = b.den or {ctx.zero_exp: 1}
        num = _padd(_pmul(a.num, bd, norm), _pmul(b.num, ad, norm), norm)
        return FuncFieldElem._make(ctx, num, _pmul(ad, bd, norm))

    __radd__ = __add__

    def __neg__(self):
        return FuncFieldElem(self.ctx, _pneg(self.num, self.ctx.base.norm), self.den)

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        ctx, norm = a.ctx, a.ctx.base.norm
        if not a.num or not b.num:
            return FuncFieldElem(ctx, {})
        num = _pmul(a.num, b.num, norm)
        if a.den is None and b.den is None:
            return FuncFieldElem(ctx, num)
        if a.den is None:
            den = b.den
        elif b.den is None:
            den = a.den
        else:
            den = _pmul(a.den, b.den, norm)
        return FuncFieldElem._make(ctx, num, den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise DivisionByZero("inverse of zero")
        den = self.den if self.den is not None else {self.ctx.zero_exp: 1}
        return FuncFieldElem._make(self.ctx, dict(den), dict(self.num))

    def __truediv__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        if not b.num:
            raise DivisionByZero(f"division of {a} by zero")
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = self.ctx.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        if a.den is None and b.den is None:
            return a.num == b.num
        norm = a.ctx.base.norm
        ad = a.den or {a.ctx.zero_exp: 1}
        bd = b.den or {a.ctx.zero_exp: 1}
        return _pmul(a.num, bd, norm) == _pmul(b.num, ad, norm)

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    __hash__ = None

    def __str__(self):
        den = "1" if self.den is None else _fmt_poly(self.ctx, self.den)
        return f"({_fmt_poly(self.ctx, self.num)})/({den})"

    def __repr__(self):
        return f"FuncFieldElem[{self.ctx!r}]{self}"

    def degree(self, name):
        """Top degree in ``name`` of a Laurent element."""
        if self.den is not None:
            raise FieldError("degree of a non-Laurent element")
        return self.numerator.degree(name)

    def leading_coefficient(self, name):
        """Coefficient (an element) of the top power of ``name``."""
        if self.den is not None:
            raise FieldError("leading coefficient of a non-Laurent element")
        i = self.ctx.index[name]
        top = self.degree(name)
        out = {}
        for e, c in self.num.items():
            if e[i] == top:
                e2 = list(e)
                e2[i] = 0
                out[tuple(e2)] = c
        return FuncFieldElem(self.ctx, out)

    def reduce_mod(self, ctx: FunctionField) -> FuncFieldElem:
        """Image under Z -> F_p of an element with rational coefficients."""
        if self.ctx.base.characteristic or self.ctx.base.radicand is not None:
            raise FieldError("reduction needs rational coefficients")
        lifted_ctx = FunctionField(ctx.base, self.ctx.names)
        conv = lambda d: {e: ctx.base.coerce(c) for e, c in d.items()}
        num = {e: c for e, c in conv(self.num).items() if c}
        den = None
        if self.den is not None:
            den = {e: c for e, c in conv(self.den).items() if c}
            if not den:
                raise DenominatorVanishes(f"denominator of {self} vanishes mod {ctx.characteristic}")
        return ctx.lift(FuncFieldElem._make(lifted_ctx, num, den))


def _eval_poly(ctx, p, values):
    """Evaluate dict polynomial; ``values`` maps variable index -> FuncFieldElem."""
    total = ctx.zero()
    for e, c in p.items():
        keep = list(e)
        term = None
        for i, v in values.items():
            k = e[i]
            if k:
                keep[i] = 0
                f = v ** k
                term = f if term is None else term * f
        t = FuncFieldElem(ctx, {tuple(keep): c})
        total = total + (t if term is None else t * term)
    return total


def specialize(e: FuncFieldElem, assignment: dict) -> FuncFieldElem:
    """Substitute symbols by field elements (or numbers)."""
    ctx = e.ctx
    vals = {}
    for name, v in assignment.items():
        if not isinstance(v, FuncFieldElem):
            v = ctx(v)
        ctx = ctx.union(v.ctx)
        vals[name] = v
    e = ctx.lift(e)
    vals = {ctx.index[n]: ctx.lift(v) for n, v in vals.items()}
    try:
        num = _eval_poly(ctx, e.num, vals)
    except DivisionByZero as exc:
        raise DenominatorVanishes(str(exc)) from None
    if e.den is None:
        return num
    try:
        den = _eval_poly(ctx, e.den, vals)
    except DivisionByZero as exc:
        raise DenominatorVanishes(str(exc)) from None
    if den.is_zero():
        raise DenominatorVanishes(f"denominator of {e} vanishes under {assignment}")
    return num / den


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


class _Parser:
    def __init__(self, ctx, text):
        self.ctx = ctx
        self.text = text
        self.toks = []
        for m in _TOKEN.finditer(text):
            if m.group(1):
                self.toks.append(("num", int(m.group(1))))
            elif m.group(2):
                self.toks.append(("name", m.group(2)))
            elif m.group(3) and not m.group(3).isspace():
                self.toks.append(("op", m.group(3)))
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def take(self, op=None):
        tok = self.peek()
        if op is not None and tok != ("op", op):
            raise ParseError(f"expected {op!r} at token {self.pos} in {self.text!r}")
        self.pos += 1
        return tok

    def parse(self):
        if not self.toks:
            raise ParseError("empty expression")
        v = self.expr()
        if self.pos != len(self.toks):
            raise ParseError(f"trailing input in {self.text!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            v = v + rhs if op == "+" else v - rhs
        return v

    def term(self):
        v = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            v = v * rhs if op == "*" else v / rhs
        return v

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        v = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            kind, k = self.take()
            if kind != "num":
                raise ParseError(f"integer exponent expected in {self.text!r}")
            v = v ** (sign * k)
        return v

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.ctx(val)
        if kind == "name":
            if val == "sqrt":
                self.take("(")
                neg = self.peek() == ("op", "-")
                if neg:
                    self.take()
                k, d = self.take()
                self.take(")")
                d = -d if neg else d
                if self.ctx.base.radicand != d:
                    raise ParseError(f"sqrt({d}) not in {self.ctx}")
                return self.ctx(self.ctx.base.sqrt_d())
            if val not in self.ctx.index:
                raise ParseError(f"unknown symbol {val!r} in {self.ctx}")
            return self.ctx.gen(val)
        if (kind, val) == ("op", "("):
            v = self.expr()
            self.take(")")
            return v
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")
