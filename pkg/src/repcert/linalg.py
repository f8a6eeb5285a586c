"""Exact square matrices over a FunctionField.

Elimination uses the first nonzero pivot in each column, so results are
deterministic.  Entries are FuncFieldElem; zero entries are skipped in
products, which matters for the sparse generator matrices used in ball scans.
"""

from __future__ import annotations

from fractions import Fraction

from .exactfield import (
    FieldError, FuncFieldElem, FunctionField, QQ, _padd, _pclean, _pmul_into,
)

__all__ = [
    "SqMatrix", "CharPoly", "det_inv", "rank", "nullspace", "nullspace_rational",
    "char_poly", "is_square_zero", "MatrixError", "DimensionTooLarge",
    "NotRational", "CharPDivisibility", "set_max_dim",
]

MAX_DIM = 8


def set_max_dim(d: int):
    global MAX_DIM
    MAX_DIM = d


class MatrixError(FieldError):
    pass


class DimensionTooLarge(MatrixError):
    pass


class NotRational(MatrixError):
    pass


class CharPDivisibility(MatrixError):
    pass


class SqMatrix:
    __slots__ = ("ctx", "dim", "rows")

    def __init__(self, ctx: FunctionField, rows):
        rows = tuple(tuple(ctx(v) if not (isinstance(v, FuncFieldElem) and v.ctx is ctx) else v
                           for v in r) for r in rows)
        d = len(rows)
        if any(len(r) != d for r in rows):
            raise MatrixError("matrix is not square")
        if d < 1 or d > MAX_DIM:
            raise DimensionTooLarge(f"dimension {d} outside 1..{MAX_DIM}")
        self.ctx = ctx
        self.dim = d
        self.rows = rows

    @classmethod
    def _raw(cls, ctx, rows):
        m = object.__new__(cls)
        m.ctx = ctx
        m.dim = len(rows)
        m.rows = rows
        return m

    @classmethod
    def identity(cls, ctx, d):
        one, zero = ctx.one(), ctx.zero()
        return cls._raw(ctx, tuple(tuple(one if i == j else zero for j in range(d)) for i in range(d)))

    @classmethod
    def zeros(cls, ctx, d):
        zero = ctx.zero()
        return cls._raw(ctx, tuple((zero,) * d for _ in range(d)))

    @classmethod
    def diag(cls, ctx, values):
        d = len(values)
        zero = ctx.zero()
        return cls(ctx, [[values[i] if i == j else zero for j in range(d)] for i in range(d)])

    @classmethod
    def block_diag(cls, *blocks):
        ctx = blocks[0].ctx
        for b in blocks[1:]:
            ctx = ctx.union(b.ctx)
        d = sum(b.dim for b in blocks)
        rows = [[ctx.zero()] * d for _ in range(d)]
        off = 0
        for b in blocks:
            for i in range(b.dim):
                for j in range(b.dim):
                    rows[off + i][off + j] = ctx.lift(b.rows[i][j])
            off += b.dim
        return cls(ctx, rows)

    def lift(self, ctx):
        if ctx is self.ctx:
            return self
        return SqMatrix._raw(ctx, tuple(tuple(ctx.lift(v) for v in r) for r in self.rows))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def entries(self):
        return [list(r) for r in self.rows]

    def map(self, f):
        return SqMatrix(self.ctx, [[f(v) for v in r] for r in self.rows])

    def transpose(self):
        return SqMatrix._raw(self.ctx, tuple(zip(*self.rows)))

    def trace(self):
        t = self.ctx.zero()
        for i in range(self.dim):
            t = t + self.rows[i][i]
        return t

    def _unify(self, other):
        if other.ctx is self.ctx:
            return self, other
        u = self.ctx.union(other.ctx)
        return self.lift(u), other.lift(u)

    def __mul__(self, other):
        if isinstance(other, SqMatrix):
            a, b = self._unify(other)
            if a.dim != b.dim:
                raise MatrixError("dimension mismatch")
            return _matmul(a, b)
        ctx = self.ctx.union(other.ctx) if isinstance(other, FuncFieldElem) else self.ctx
        m = self.lift(ctx)
        return SqMatrix._raw(ctx, tuple(tuple(v * other for v in r) for r in m.rows))

    def __rmul__(self, other):
        return self.__mul__(other)

    def __add__(self, other):
        a, b = self._unify(other)
        return SqMatrix._raw(a.ctx, tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a.rows, b.rows)))

    def __sub__(self, other):
        a, b = self._unify(other)
        return SqMatrix._raw(a.ctx, tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a.rows, b.rows)))

    def __neg__(self):
        return SqMatrix._raw(self.ctx, tuple(tuple(-x for x in r) for r in self.rows))

    def __pow__(self, k):
        if k < 0:
            inv = self.inverse()
            if inv is None:
                raise MatrixError("singular matrix has no negative powers")
            return inv ** (-k)
        result = SqMatrix.identity(self.ctx, self.dim)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, SqMatrix) or other.dim != self.dim:
            return NotImplemented if not isinstance(other, SqMatrix) else False
        return all(x == y for r, s in zip(self.rows, other.rows) for x, y in zip(r, s))

    __hash__ = None

    def is_identity(self):
        for i, r in enumerate(self.rows):
            for j, v in enumerate(r):
                if i == j:
                    if not (v.is_one() or v == 1):
                        return False
                elif v.num:
                    return False
        return True

    def is_diagonal(self):
        return all(not v.num for i, r in enumerate(self.rows) for j, v in enumerate(r) if i != j)

    def is_scalar(self):
        return self.is_diagonal() and all(self.rows[i][i] == self.rows[0][0] for i in range(self.dim))

    def is_zero(self):
        return all(not v.num for r in self.rows for v in r)

    def det(self):
        return det_inv(self)[0]

    def inverse(self):
        return det_inv(self)[1]

    def conjugate(self, p, p_inv=None):
        """p * self * p^-1."""
        if p_inv is None:
            p_inv = p.inverse()
        return p * self * p_inv

    def to_json(self):
        return {"dim": self.dim, "entries": [[str(v) for v in r] for r in self.rows]}

    @classmethod
    def from_json(cls, ctx, data):
        rows = [[ctx.parse(s) for s in r] for r in data["entries"]]
        if len(rows) != data.get("dim", len(rows)):
            raise MatrixError("dim does not match entries")
        return cls(ctx, rows)

    def __str__(self):
        return "[" + ",\n ".join("[" + ", ".join(str(v) for v in r) + "]" for r in self.rows) + "]"

    __repr__ = __str__


def _matmul(a, b):
    ctx = a.ctx
    norm = ctx.base.norm
    d = a.dim
    bcols = list(zip(*b.rows))
    out = []
    zero = ctx.zero()
    for r in a.rows:
        nz = [(k, v) for k, v in enumerate(r) if v.num]
        laurent_row = all(v.den is None for _, v in nz)
        row = []
        for j in range(d):
            col = bcols[j]
            pairs = [(v, col[k]) for k, v in nz if col[k].num]
            if not pairs:
                row.append(zero)
            elif len(pairs) == 1:
                row.append(pairs[0][0] * pairs[0][1])
            elif laurent_row and all(w.den is None for _, w in pairs):
                acc = {}
                for v, w in pairs:
                    _pmul_into(acc, v.num, w.num)
                row.append(FuncFieldElem(ctx, _pclean(acc, norm)))
            else:
                s = pairs[0][0] * pairs[0][1]
                for v, w in pairs[1:]:
                    s = s + v * w
                row.append(s)
        out.append(tuple(row))
    return SqMatrix._raw(ctx, tuple(out))


def _as_rows(m):
    if isinstance(m, SqMatrix):
        return m.ctx, [list(r) for r in m.rows]
    raise TypeError("expected SqMatrix")


def det_inv(m: SqMatrix):
    """Determinant and inverse (None when singular) via elimination on [m | I]."""
    ctx, a = _as_rows(m)
    d = m.dim
    one, zero = ctx.one(), ctx.zero()
    aug = [a[i] + [one if i == j else zero for j in range(d)] for i in range(d)]
    det = one
    for col in range(d):
        piv = next((r for r in range(col, d) if aug[r][col].num), None)
        if piv is None:
            return zero, None
        if piv != col:
            aug[col], aug[piv] = aug[piv], aug[col]
            det = -det
        p = aug[col][col]
        det = det * p
        pinv = p.inverse()
        aug[col] = [v * pinv if v.num else v for v in aug[col]]
        for r in range(d):
            if r != col and aug[r][col].num:
                f = aug[r][col]
                prow = aug[col]
                aug[r] = [x - f * y if y.num else x for x, y in zip(aug[r], prow)]
    inv = SqMatrix._raw(ctx, tuple(tuple(r[d:]) for r in aug))
    return det, inv


def _rref(rows, ctx):
    """Reduced row echelon form in place; returns pivot columns."""
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if rows[i][c].num), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pinv = rows[r][c].inverse()
        rows[r] = [v * pinv if v.num else v for v in rows[r]]
        for i in range(nr):
            if i != r and rows[i][c].num:
                f = rows[i][c]
                rows[i] = [x - f * y if y.num else x for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return pivots


def rank(m) -> int:
    if isinstance(m, SqMatrix):
        ctx, rows = _as_rows(m)
    else:
        ctx, rows = _rows_from_lists(m)
    return len(_rref(rows, ctx))


def _rows_from_lists(rows, ctx=None):
    rows = [list(r) for r in rows]
    if ctx is None:
        ctx = next((v.ctx for r in rows for v in r if isinstance(v, FuncFieldElem)), None)
        if ctx is None:
            ctx = FunctionField(QQ, ())
    return ctx, [[v if isinstance(v, FuncFieldElem) else ctx(v) for v in r] for r in rows]


def nullspace(rows, ctx=None):
    """Basis of {v : rows . v = 0} for a (possibly rectangular) list of rows or SqMatrix."""
    if isinstance(rows, SqMatrix):
        ctx, rows = _as_rows(rows)
    else:
        ctx, rows = _rows_from_lists(rows, ctx)
    if not rows:
        return []
    nc = len(rows[0])
    pivots = _rref(rows, ctx)
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for f in free:
        v = [ctx.zero() for _ in range(nc)]
        v[f] = ctx.one()
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][f]
        basis.append(v)
    return basis


def _to_rational(v):
    if isinstance(v, FuncFieldElem):
        if v.ctx.base != QQ or not v.is_constant():
            raise NotRational(f"entry {v} is not rational")
        return Fraction(v.constant_value())
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    raise NotRational(f"entry {v!r} is not rational")


def nullspace_rational(rows):
    """Exact kernel basis over Q, as lists of Fractions; [] means trivial kernel."""
    if isinstance(rows, SqMatrix):
        rows = rows.rows
    qrows = [[_to_rational(v) for v in r] for r in rows]
    ctx = FunctionField(QQ, ())
    basis = nullspace([[ctx(c) for c in r] for r in qrows], ctx)
    return [[Fraction(x.constant_value()) for x in v] for v in basis]


def is_square_zero(m: SqMatrix) -> bool:
    return (m * m).is_zero()


class CharPoly:
    """Monic univariate polynomial; coefficients low degree first."""

    def __init__(self, coeffs):
        self.coeffs = list(coeffs)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def as_element(self, x: FuncFieldElem):
        total = x.ctx.zero()
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    def __eq__(self, other):
        if isinstance(other, CharPoly):
            return len(self.coeffs) == len(other.coeffs) and all(
                a == b for a, b in zip(self.coeffs, other.coeffs))
        return NotImplemented

    def __str__(self):
        return " + ".join(f"({c})*x^{i}" for i, c in enumerate(self.coeffs) if c.num)


def _faddeev(m):
    ctx = m.ctx
    d = m.dim
    p = ctx.characteristic
    if p and p <= d:
        raise CharPDivisibility(f"Faddeev-LeVerrier divides by multiples of {p}")
    coeffs = [None] * (d + 1)
    coeffs[d] = ctx.one()
    ident = SqMatrix.identity(ctx, d)
    mk = SqMatrix.zeros(ctx, d)
    for k in range(1, d + 1):
        mk = m * mk + ident * coeffs[d - k + 1]
        c = -((m * mk).trace()) / k
        coeffs[d - k] = c
    return CharPoly(coeffs)


def _upoly_mul(p, q, zero):
    out = [zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a.num:
            continue
        for j, b in enumerate(q):
            if b.num:
                out[i + j] = out[i + j] + a * b
    return out


def _upoly_add(p, q, zero):
    n = max(len(p), len(q))
    p = p + [zero] * (n - len(p))
    q = q + [zero] * (n - len(q))
    return [a + b for a, b in zip(p, q)]


def _minors(m):
    """det(xI - m) by Laplace expansion along rows, memoized on column sets."""
    ctx = m.ctx
    d = m.dim
    zero, one = ctx.zero(), ctx.one()
    entry = [[([-m.rows[i][j], one] if i == j else [-m.rows[i][j]]) for j in range(d)] for i in range(d)]
    memo = {}

    def det(row, cols):
        if row == d:
            return [one]
        key = cols
        if key in memo:
            return memo[key]
        total = [zero]
        sign = 1
        for j in range(d):
            if not cols >> j & 1:
                continue
            e = entry[row][j]
            if any(c.num for c in e):
                sub = det(row + 1, cols & ~(1 << j))
                term = _upoly_mul(e, sub, zero)
                if sign < 0:
                    term = [-c for c in term]
                total = _upoly_add(total, term, zero)
            sign = -sign
        memo[key] = total
        return total

    coeffs = det(0, (1 << d) - 1)
    coeffs = coeffs + [zero] * (d + 1 - len(coeffs))
    return CharPoly(coeffs[: d + 1])


def char_poly(m: SqMatrix) -> CharPoly:
    try:
        return _faddeev(m)
    except CharPDivisibility:
        return _minors(m)
