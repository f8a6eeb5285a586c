"""Free-by-cyclic groups F2 x|_alpha Z: classification by the abelianized
automorphism, dimension bounds, and explicit 2-dim realizations for finite
order automorphisms via trace triples."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .exactfield import QQ, Quadratic, FunctionField, adjoin
from .grouppres import Presentation
from .linalg import SqMatrix, nullspace
from .raagbounds import Interval, BoundReport
from .repbuild import Representation, RepError


class NotUnimodular(ValueError):
    pass


class NoConjugator(RepError):
    pass


class UnsupportedClass(ValueError):
    pass


@dataclass(frozen=True)
class FBCClass:
    kind: str            # hyperbolic | elliptic | parabolic | reversing_order2 | reversing_hyperbolic_square
    order: int | None = None
    subtype: str | None = None

    def to_json(self):
        d = {"kind": self.kind}
        if self.order is not None:
            d["order"] = self.order
        if self.subtype is not None:
            d["subtype"] = self.subtype
        return d


def _mat(M):
    (a, b), (c, d) = M
    return int(a), int(b), int(c), int(d)


def classify(M) -> FBCClass:
    """Classify an integer 2x2 matrix with det +-1 (columns = images of x, y)."""
    a, b, c, d = _mat(M)
    det = a * d - b * c
    tr = a + d
    if det == 1:
        if abs(tr) > 2:
            return FBCClass("hyperbolic")
        if (a, b, c, d) == (1, 0, 0, 1):
            return FBCClass("elliptic", 1)
        if (a, b, c, d) == (-1, 0, 0, -1):
            return FBCClass("elliptic", 2)
        if abs(tr) == 2:
            return FBCClass("parabolic")
        return FBCClass("elliptic", {0: 4, 1: 6, -1: 3}[tr])
    if det == -1:
        if tr == 0:
            # gcd of entries of M - I separates diag(1, -1) (gcd 2) from the swap (gcd 1)
            g = gcd(gcd(a - 1, b), gcd(c, d - 1))
            return FBCClass("reversing_order2", 2, "diagonal" if g == 2 else "swap")
        return FBCClass("reversing_hyperbolic_square")
    raise NotUnimodular(f"det = {det}, expected +-1")


def orrev_holds(M) -> bool:
    """For det -1: M^2 is hyperbolic (trace > 2) or M^2 = I."""
    a, b, c, d = _mat(M)
    if a * d - b * c != -1:
        raise NotUnimodular("orientation-reversing check needs det -1")
    a2, b2, c2, d2 = a * a + b * c, a * b + b * d, c * a + d * c, c * b + d * d
    return a2 + d2 > 2 or (a2, b2, c2, d2) == (1, 0, 0, 1)


def fbc_bounds(cls: FBCClass) -> BoundReport:
    k = cls.kind
    if k == "hyperbolic":
        return BoundReport(Interval(2, 2), Interval(2, None),
                           [("HYPERBOLIC", "hyperbolic 3-manifold group lifts to SL(2,C)")])
    if k == "elliptic":
        hp = 2 if cls.order == 1 else 2 * cls.order
        return BoundReport(Interval(2, 2), Interval(2, hp),
                           [("FINITE_ORDER", "trace-triple fixed point gives a 2-dim representation"),
                            ("INDUCED", f"induced from F2 x Z of index {cls.order}: at most {hp}")])
    if k == "parabolic":
        return BoundReport(Interval(3, 6), Interval(3, 6),
                           [("PARABOLIC_LE6", "index-2 subgroup embeds in the path RAAG (dim 3); induce"),
                            ("NOT_2D", "contains F2 x Z with non-commuting-transitive structure")])
    if k == "reversing_order2":
        return BoundReport(Interval(2, 2), Interval(2, 4),
                           [("FINITE_ORDER", "trace-triple fixed point gives a 2-dim representation"),
                            ("INDUCED", "induced from F2 x Z of index 2: at most 4")])
    if k == "reversing_hyperbolic_square":
        return BoundReport(Interval(3, 4), Interval(3, None),
                           [("NOT_2D", "a 2-dim representation would force alpha to have order 2"),
                            ("INDUCED", "induced from the hyperbolic square (characteristic 0)")])
    raise UnsupportedClass(k)


def commutator_trace(a, b, c):
    return a * a + b * b + c * c - a * b * c - 2


def is_soluble_degenerate(triple):
    return commutator_trace(*triple) == 2


def free_sufficient(triple):
    """a, b, c > 2 and a^2 + b^2 + c^2 - abc < 0."""
    a, b, c = triple
    return a > 2 and b > 2 and c > 2 and a * a + b * b + c * c - a * b * c < 0


# representative automorphisms (image words of x, y) and default triples
_AUTOS = {
    ("elliptic", 6): (("y^-1", "x y"), ("y x", "x^-1")),
    ("elliptic", 3): (("y^-1 x^-1", "y^-1 x y"), ("x^-1 y x", "x^-1 y^-1")),
    ("elliptic", 4): (("y^-1", "x"), ("y", "x^-1")),
    ("elliptic", 2): (("x^-1", "y^-1"), ("x^-1", "y^-1")),
    ("elliptic", 1): (("x", "y"), ("x", "y")),
    ("reversing_order2", "diagonal"): (("x", "y^-1"), ("x", "y^-1")),
    ("reversing_order2", "swap"): (("y", "x"), ("y", "x")),
}

_TRIPLES = {
    ("elliptic", 6): (4, 4, 4),
    ("elliptic", 3): (4, 4, 4),
    ("elliptic", 4): (4, 4, 8),
    ("elliptic", 2): (4, 4, 8),
    ("elliptic", 1): (4, 4, 8),
    ("reversing_order2", "diagonal"): (4, 4, 8),
    ("reversing_order2", "swap"): (4, 4, 8),
}


def _key(cls):
    if cls.kind == "elliptic":
        return ("elliptic", cls.order)
    if cls.kind == "reversing_order2":
        return ("reversing_order2", cls.subtype)
    raise UnsupportedClass(f"no trace-triple construction for {cls.kind}")


def automorphism(cls: FBCClass):
    key = _key(cls)
    alpha, alpha_inv = _AUTOS[key]
    return alpha, alpha_inv


def squarefree_part(n):
    sign = -1 if n < 0 else 1
    n = abs(n)
    out, k = 1, 2
    while k * k <= n:
        while n % (k * k) == 0:
            n //= k * k
        if n % k == 0:
            out *= k
            n //= k
        k += 1
    return sign * out * n


def realize_triple(triple, search=20):
    """SL(2) pair (A, B) with (tr A, tr B, tr AB) = triple.

    A = ((x, -1), (1, 0)), B = ((p, q), (r, s)).  A small integer s with a
    rational q is searched for first; otherwise q lives in Q(sqrt(D)).
    """
    x, y, z = (Fraction(v) for v in triple)

    def disc(s):
        p = y - s
        return p, (x * p - z) ** 2 - 4 * (1 - p * s)

    def rational_sqrt(v):
        if v < 0:
            return None
        n, d = v.numerator, v.denominator
        rn, rd = isqrt(n), isqrt(d)
        return Fraction(rn, rd) if rn * rn == n and rd * rd == d else None

    for k in range(search + 1):
        for s in ((k, -k) if k else (0,)):
            p, D = disc(Fraction(s))
            r = rational_sqrt(D)
            if r is not None:
                ctx = FunctionField(QQ, ())
                q = (-(x * p - z) + r) / 2
                return _pair(ctx, x, y, z, p, q, Fraction(s))
    p, D = disc(Fraction(0))
    # D = (num/den); sqrt(D) = sqrt(num*den)/den, reduce num*den to squarefree part
    nd = D.numerator * D.denominator
    sf = squarefree_part(nd)
    ctx = FunctionField(Quadratic(sf), ())
    scale = Fraction(isqrt(nd // sf), D.denominator)
    q = (ctx(-(x * p - z)) + ctx(ctx.base.sqrt_d()) * scale) * Fraction(1, 2)
    return _pair(ctx, x, y, z, p, q, Fraction(0))


def _pair(ctx, x, y, z, p, q, s):
    q = ctx(q) if not hasattr(q, "ctx") else q
    r = ctx(x * p - z) + q
    A = SqMatrix(ctx, [[x, -1], [1, 0]])
    B = SqMatrix(ctx, [[p, q], [r, s]])
    return A, B


def _conjugator(A, B, aA, aB):
    """Nonsingular T with T A = aA T and T B = aB T."""
    ctx = A.ctx
    rows = []
    for M, N in ((A, aA), (B, aB)):
        # (T M - N T)_{ij} = sum_k T_ik M_kj - N_ik T_kj, unknowns T_00, T_01, T_10, T_11
        for i in range(2):
            for j in range(2):
                row = [ctx.zero()] * 4
                for k in range(2):
                    row[2 * i + k] = row[2 * i + k] + M.rows[k][j]
                    row[2 * k + j] = row[2 * k + j] - N.rows[i][k]
                rows.append(row)
    basis = nullspace(rows, ctx)
    cands = list(basis)
    if len(basis) > 1:
        acc = basis[0]
        for v in basis[1:]:
            acc = [u + w for u, w in zip(acc, v)]
        cands.append(acc)
    for v in cands:
        T = SqMatrix(ctx, [[v[0], v[1]], [v[2], v[3]]])
        if not T.det().is_zero():
            return T
    raise NoConjugator("the linear system has only singular solutions")


@dataclass
class TripleSolution:
    cls: FBCClass
    triple: tuple
    A: SqMatrix
    B: SqMatrix
    T: SqMatrix
    alpha: tuple
    alpha_inv: tuple
    representation: Representation

    def to_json(self):
        return {"class": self.cls.to_json(), "triple": [str(v) for v in self.triple],
                "alpha": list(self.alpha), "alpha_inv": list(self.alpha_inv),
                "field": repr(self.A.ctx),
                "A": self.A.to_json(), "B": self.B.to_json(), "T": self.T.to_json(),
                "commutator_trace": str(commutator_trace(*self.triple)),
                "free_sufficient": free_sufficient(self.triple)}


def trace_triple_solve(cls: FBCClass, triple=None, lam="lam") -> TripleSolution:
    key = _key(cls)
    triple = tuple(triple or _TRIPLES[key])
    if is_soluble_degenerate(triple):
        raise NoConjugator(f"triple {triple} has commutator trace 2")
    alpha, alpha_inv = automorphism(cls)
    pres = Presentation.free_by_cyclic(["x", "y"], list(alpha), list(alpha_inv))
    A, B = realize_triple(triple)
    free_rep = Representation(Presentation.free(2), A.ctx, [A, B])
    aA = free_rep.evaluate(alpha[0])
    aB = free_rep.evaluate(alpha[1])
    T = _conjugator(A, B, aA, aB)
    ctx = adjoin(A.ctx, lam)
    Tl = T.lift(ctx) * ctx.gen(lam)
    rep = Representation(pres, ctx, [A.lift(ctx), B.lift(ctx), Tl],
                         [{"op": "trace_triple", "triple": [str(v) for v in triple],
                           "symbols": [lam]}])
    return TripleSolution(cls, triple, A, B, T, alpha, alpha_inv, rep)
