"""Reduced Burau representations and the two-dimensional B3 representation."""
from __future__ import annotations

from .exactfield import QQ, GF, FunctionField, adjoin
from .grouppres import Presentation
from .linalg import SqMatrix
from .repbuild import Representation, shalen_amalgam, RepError


class NotScalar(RepError):
    pass


class ZeroScalar(RepError):
    pass


class RelationFails(RepError):
    pass


def _base(characteristic):
    return QQ if not characteristic else GF(characteristic)


def burau_reduced(n, characteristic=0, t="t"):
    """Reduced Burau representation of B_n over Z[t^+-1] or F_p[t^+-1].

    Each generator has eigenvalues 1 (n-2 times) and -t.
    """
    if n < 3:
        raise ValueError("need at least 3 strands")
    ctx = FunctionField(_base(characteristic), (t,))
    tv = ctx.gen(t)
    d = n - 1
    mats = []
    for i in range(1, n):
        rows = [[ctx(1 if r == c else 0) for c in range(d)] for r in range(d)]
        k = i - 1
        # row k carries the -t eigenvalue; neighbours pick up t and 1
        rows[k][k] = -tv
        if k > 0:
            rows[k - 1][k] = tv
        if k < d - 1:
            rows[k + 1][k] = ctx(1)
        mats.append(SqMatrix(ctx, rows))
    rep = Representation(Presentation.braid(n), ctx, mats,
                         [{"op": "burau_reduced", "n": n, "characteristic": characteristic}])
    return rep


def center_image(n, characteristic=0):
    """Image of the full twist (s1 s2 ... s_{n-1})^n; returns (matrix, sign).

    The image is c*I with c = sign * t^n.
    """
    rep = burau_reduced(n, characteristic)
    ctx = rep.ctx
    delta = rep.identity()
    for m in rep.matrices:
        delta = delta * m
    z = delta ** n
    if not z.is_scalar():
        raise NotScalar(f"center image for n={n} is not scalar")
    c = z.rows[0][0]
    tn = ctx.gen("t") ** n
    if c == tn:
        sign = 1
    elif c == -tn:
        sign = -1
    else:
        raise NotScalar(f"center scalar {c} is not +-t^{n}")
    return z, sign


def tensor_char(rep: Representation, y) -> Representation:
    """Scale every generator by the nonzero scalar y."""
    ctx = rep.ctx
    if not hasattr(y, "ctx"):
        y = ctx(y)
    ctx = ctx.union(y.ctx)
    y = ctx.lift(y)
    if y.is_zero():
        raise ZeroScalar("cannot tensor with the zero character")
    yi = y.inverse()
    mats = [m.lift(ctx) * y for m in rep.matrices]
    invs = [m.lift(ctx) * yi for m in rep.inverses]
    return Representation(rep.presentation, ctx, mats,
                          rep.provenance + [{"op": "tensor_char", "y": str(y)}], invs)


def b3_matrices(field=QQ, s="s", printed=False):
    """x = ((0, s^3), (s^3, 0)) and y with y^3 = x^2 = s^6 I.

    ``printed`` gives ((-s^2, -s^2), (-s^2, 0)), whose cube is not x^2 outside
    characteristic 2; the default is ((-s^2, -s^2), (s^2, 0)).
    """
    ctx = adjoin(FunctionField(field, ()) if not isinstance(field, FunctionField) else field, s)
    sv = ctx.gen(s)
    s2, s3 = sv ** 2, sv ** 3
    x = SqMatrix(ctx, [[0, s3], [s3, 0]])
    y = SqMatrix(ctx, [[-s2, -s2], [-s2 if printed else s2, 0]])
    return x, y


def b3_two_dim(field=QQ, s="s", t="t", cert_depth=4, printed=False):
    """Faithful 2-dim representation of <x, y | x^2 = y^3> as an amalgam over Z."""
    x, y = b3_matrices(field, s, printed)
    if x * x != y * y * y:
        raise RelationFails("x^2 != y^3 for these matrices")
    ctx = x.ctx
    rx = Representation(Presentation.raag(["x"], []), ctx, [x], [{"op": "b3_factor", "gen": "x"}])
    ry = Representation(Presentation.raag(["y"], []), ctx, [y], [{"op": "b3_factor", "gen": "y"}])
    return shalen_amalgam(rx, ry, [("x^2", "y^3")], t=t, cert_depth=cert_depth)
