"""Representation constructors.

A Representation pairs a Presentation with generator matrices over one
FunctionField.  Constructors record their steps (and the order in which fresh
symbols were adjoined) in ``provenance``.
"""
from __future__ import annotations

from .exactfield import BaseField, FunctionField, QQ, adjoin, FieldError
from .grouppres import (Presentation, Word, ball_tree, evaluate, normal_form,
                        max_ball, BallTooLarge, UnsupportedPresentation)
from .linalg import SqMatrix, det_inv, MatrixError


class RepError(ValueError):
    pass


class NotInvertible(RepError):
    pass


class ConditionAViolated(RepError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class ConditionBViolated(ConditionAViolated):
    pass


class ConditionCViolated(ConditionAViolated):
    pass


class Condition1Violated(ConditionAViolated):
    pass


class Condition2Violated(ConditionAViolated):
    pass


class RelatorFails(ConditionAViolated):
    pass


def _as_ctx(field):
    if isinstance(field, BaseField):
        return FunctionField(field, ())
    return field


class Representation:
    def __init__(self, presentation: Presentation, ctx, matrices, provenance=(), inverses=None):
        ctx = _as_ctx(ctx)
        if len(matrices) != presentation.n:
            raise RepError(f"{len(matrices)} matrices for {presentation.n} generators")
        for m in matrices:
            ctx = ctx.union(m.ctx)
        mats = [m.lift(ctx) for m in matrices]
        dims = {m.dim for m in mats}
        if len(dims) != 1:
            raise RepError(f"generator matrices have mixed dimensions {sorted(dims)}")
        if inverses is None:
            inverses = []
            for name, m in zip(presentation.names, mats):
                det, inv = det_inv(m)
                if inv is None:
                    raise NotInvertible(f"matrix for {name} is singular")
                inverses.append(inv)
        else:
            inverses = [m.lift(ctx) for m in inverses]
        self.presentation = presentation
        self.ctx = ctx
        self.matrices = mats
        self.inverses = inverses
        self.dim = mats[0].dim
        self.provenance = list(provenance)

    def identity(self):
        return SqMatrix.identity(self.ctx, self.dim)

    def __getitem__(self, name):
        return self.matrices[self.presentation.index[name]]

    def evaluate(self, w):
        if isinstance(w, str):
            w = self.presentation.parse_word(w)
        return evaluate(self, w)

    def letter_matrix(self, letter):
        g, s = letter
        return self.matrices[g] if s > 0 else self.inverses[g]

    def lift(self, ctx):
        ctx = self.ctx.union(ctx)
        return Representation(self.presentation, ctx, [m.lift(ctx) for m in self.matrices],
                              self.provenance, [m.lift(ctx) for m in self.inverses])

    def conjugated(self, p, p_inv=None, note=None):
        """Simultaneous conjugation m -> p m p^-1."""
        if p_inv is None:
            p_inv = p.inverse()
        mats = [p * m * p_inv for m in self.matrices]
        invs = [p * m * p_inv for m in self.inverses]
        prov = self.provenance + ([note] if note else [])
        return Representation(self.presentation, mats[0].ctx, mats, prov, invs)

    def ball_images(self, L, cap=None):
        """Yield (normal-form word, matrix) over the ball of radius L in BFS order.

        Matrices are built one product per element along the BFS tree and
        only the previous sphere is kept in memory.
        """
        p = self.presentation
        if not p.has_normal_form():
            raise UnsupportedPresentation(f"no normal form for {p.kind} presentations")
        cap = max_ball() if cap is None else cap
        letters = p.letters()
        ident = self.identity()
        seen = {Word()}
        yield Word(), ident
        frontier = [(Word(), ident)]
        for _ in range(L):
            nxt = []
            for w, m in frontier:
                for lt in letters:
                    v = normal_form(p, w * Word([lt]))
                    if v in seen:
                        continue
                    seen.add(v)
                    if len(seen) > cap:
                        raise BallTooLarge(f"ball exceeds {cap} elements")
                    vm = m * self.letter_matrix(lt)
                    nxt.append((v, vm))
                    yield v, vm
            frontier = nxt

    def to_json(self):
        ctx = self.ctx
        return {
            "presentation": self.presentation.to_json(),
            "field": {"characteristic": ctx.base.characteristic,
                      "radicand": ctx.base.radicand,
                      "symbols": list(ctx.names)},
            "generators": [dict(name=n, **m.to_json())
                           for n, m in zip(self.presentation.names, self.matrices)],
            "provenance": self.provenance,
        }

    @classmethod
    def from_json(cls, d):
        f = d["field"]
        base = BaseField(f.get("characteristic", 0), f.get("radicand"))
        ctx = FunctionField(base, tuple(f.get("symbols", ())))
        pres = Presentation.from_json(d["presentation"])
        gens = {g["name"]: g for g in d["generators"]}
        if set(gens) != set(pres.names):
            raise RepError("generator names do not match the presentation")
        mats = [SqMatrix.from_json(ctx, gens[n]) for n in pres.names]
        return cls(pres, ctx, mats, d.get("provenance", ()))

    def __repr__(self):
        return f"Representation({self.presentation!r}, dim={self.dim}, field={self.ctx!r})"


# --- basic constructors ---------------------------------------------------

def rep_zn(n, field=QQ, gens=None, symbols=None):
    """Z^n in dimension 1: generator i acts by an independent symbol."""
    ctx = _as_ctx(field)
    gens = list(gens) if gens else [f"x{i + 1}" for i in range(n)]
    if symbols is None:
        symbols = []
        probe = ctx
        for g in gens:
            s = probe.fresh_name(g)
            symbols.append(s)
            probe = adjoin(probe, s)
    ctx = adjoin(ctx, symbols)
    pres = Presentation.raag(gens, [(i, j) for i in range(n) for j in range(i + 1, n)])
    mats = [SqMatrix(ctx, [[ctx.gen(s)]]) for s in symbols]
    return Representation(pres, ctx, mats, [{"op": "rep_zn", "n": n, "symbols": list(symbols)}])


def corner_extend(rep: Representation) -> Representation:
    ctx = rep.ctx
    one = SqMatrix.identity(ctx, 1)
    mats = [SqMatrix.block_diag(m, one) for m in rep.matrices]
    invs = [SqMatrix.block_diag(m, one) for m in rep.inverses]
    return Representation(rep.presentation, ctx, mats,
                          rep.provenance + [{"op": "corner_extend"}], invs)


def dp_adjoin_center(rep: Representation, k=1, gens=None, symbols=None) -> Representation:
    """G x Z^k: the new generators act by independent scalar matrices."""
    p = rep.presentation
    gens = list(gens) if gens else []
    i = 1
    while len(gens) < k:
        if f"z{i}" not in p.index:
            gens.append(f"z{i}")
        i += 1
    if symbols is None:
        symbols = []
        probe = rep.ctx
        for g in gens:
            s = probe.fresh_name("u" if g.startswith("z") else g)
            symbols.append(s)
            probe = adjoin(probe, s)
    ctx = adjoin(rep.ctx, symbols)
    names = p.names + tuple(gens)
    n0 = p.n
    new = [SqMatrix.diag(ctx, [ctx.gen(s)] * rep.dim) for s in symbols]
    central = [(i, n0 + j) for j in range(k) for i in range(n0 + j)]
    if p.kind in ("raag", "free"):
        pres = Presentation.raag(names, list(p.edges) + central)
    else:
        rels = [p.word_text(r) for r in p.relators()]
        for i, j in central:
            rels.append(f"{names[i]} {names[j]} {names[i]}^-1 {names[j]}^-1")
        pres = Presentation.amalgam(names, rels)
    mats = [m.lift(ctx) for m in rep.matrices] + new
    invs = [m.lift(ctx) for m in rep.inverses] + [m.inverse() for m in new]
    prov = rep.provenance + [{"op": "dp_adjoin_center", "k": k, "symbols": list(symbols)}]
    return Representation(pres, ctx, mats, prov, invs)


def fib_T(ctx, t="t"):
    """The det-1 matrix ((t^2, t-1), (t+1, 1)) with t a symbol of ctx."""
    x = ctx.gen(t)
    return SqMatrix(ctx, [[x * x, x - 1], [x + 1, 1]])


def free2dim(field=QQ, t="t", lam="lam"):
    """F_2 = <x, y> in dimension 2: x -> T^2, y -> diag(lam, 1/lam)."""
    ctx = adjoin(_as_ctx(field), [t, lam])
    X = fib_T(ctx, t) ** 2
    lv = ctx.gen(lam)
    Y = SqMatrix.diag(ctx, [lv, lv.inverse()])
    return Representation(Presentation.free(2), ctx, [X, Y],
                          [{"op": "free2dim", "symbols": [t, lam]}])


# --- amalgams -------------------------------------------------------------

def _word(p, w):
    return p.parse_word(w) if isinstance(w, str) else w


def _subgroup_nfs(p, words, depth):
    """Normal forms of products h1^e1 ... hk^ek with |ei| <= depth (H abelian)."""
    from itertools import product
    out = set()
    for exps in product(range(-depth, depth + 1), repeat=len(words)):
        w = Word()
        for h, e in zip(words, exps):
            w = w * h ** e
        out.add(normal_form(p, w))
    return out


def _check_corner(rep, h_words, depth, corner, label):
    p = rep.presentation
    hs = _subgroup_nfs(p, h_words, depth)
    i, j = corner
    count = 0
    for w, m in rep.ball_images(depth):
        if w in hs:
            continue
        count += 1
        if m.rows[i][j].is_zero():
            raise ConditionCViolated(
                f"{label}: element {p.word_text(w)} outside H has a zero ({i},{j}) entry",
                witness=p.word_text(w))
    return count


def _amalgam_presentation(p1, p2, pairs):
    names = p1.names + p2.names
    off = p1.n
    if not pairs and p1.kind in ("raag", "free") and p2.kind in ("raag", "free"):
        edges = list(p1.edges) + [(i + off, j + off) for i, j in p2.edges]
        return Presentation.raag(names, edges)
    if len(pairs) == 1 and p1.n == 1 and p2.n == 1 and p1.kind in ("raag", "free") \
            and p2.kind in ("raag", "free"):
        (w1, w2), = pairs
        s1, s2 = w1.syllables, w2.syllables
        if len(s1) == 1 and len(s2) == 1 and s1[0][1] > 0 and s2[0][1] > 0:
            return Presentation.torus_amalgam(s1[0][1], s2[0][1], names=names)
    rels = [p1.word_text(r) for r in p1.relators()]
    rename = {i: i + off for i in range(p2.n)}
    for r in p2.relators():
        rels.append(" ".join(f"{names[rename[g]]}^{e}" for g, e in r))
    for w1, w2 in pairs:
        a = p1.word_text(w1)
        b = " ".join(f"{names[rename[g]]}^{-e}" for g, e in w2.inverse())
        rels.append(f"{a} {b}".strip())
    return Presentation.amalgam(names, rels)


def shalen_amalgam(rep1, rep2, identify=(), t="t", cert_depth=4, presentation=None):
    """Representation of G1 *_H G2 from representations of the factors.

    ``identify`` lists pairs (word in G1, word in G2) whose images generate
    the abelian subgroup H.  Conditions: (a) the paired images agree, (b) they
    are diagonal, (c) on the ball of radius ``cert_depth`` in each factor every
    element outside H has a nonzero bottom-left entry (factor 1) or top-right
    entry (factor 2).  Factor 1 is then conjugated by diag(t, t^2, ..., t^d).
    """
    d = rep1.dim
    if rep2.dim != d:
        raise RepError("factor representations have different dimensions")
    if d < 2:
        raise RepError("need dimension at least 2")
    p1, p2 = rep1.presentation, rep2.presentation
    if set(p1.names) & set(p2.names):
        raise RepError("factor generator names must be disjoint")
    ctx = rep1.ctx.union(rep2.ctx)
    pairs = [(_word(p1, a), _word(p2, b)) for a, b in identify]
    for w1, w2 in pairs:
        m1 = rep1.evaluate(w1).lift(ctx)
        m2 = rep2.evaluate(w2).lift(ctx)
        if m1 != m2:
            raise ConditionAViolated(f"images of {p1.word_text(w1)} and {p2.word_text(w2)} differ",
                                     witness=p1.word_text(w1))
        if not m1.is_diagonal():
            raise ConditionBViolated(f"image of {p1.word_text(w1)} is not diagonal",
                                     witness=p1.word_text(w1))
    n1 = _check_corner(rep1, [a for a, _ in pairs], cert_depth, (d - 1, 0), "factor 1")
    n2 = _check_corner(rep2, [b for _, b in pairs], cert_depth, (0, d - 1), "factor 2")
    tname = ctx.fresh_name(t)
    ctx = adjoin(ctx, tname)
    tv = ctx.gen(tname)
    T = SqMatrix.diag(ctx, [tv ** (k + 1) for k in range(d)])
    Ti = SqMatrix.diag(ctx, [tv ** -(k + 1) for k in range(d)])
    r1 = rep1.lift(ctx)
    r2 = rep2.lift(ctx)
    mats = [T * m * Ti for m in r1.matrices] + r2.matrices
    invs = [T * m * Ti for m in r1.inverses] + r2.inverses
    if presentation is None:
        presentation = _amalgam_presentation(p1, p2, pairs)
    prov = [{"factor1": rep1.provenance, "factor2": rep2.provenance},
            {"op": "shalen_amalgam", "t": tname, "cert_depth": cert_depth,
             "identify": [[p1.word_text(a), p2.word_text(b)] for a, b in pairs],
             "certified_elements": [n1, n2]}]
    return Representation(presentation, ctx, mats, prov, invs)


def pascal(ctx, d):
    """Symmetric Pascal matrix: det 1, every entry nonzero."""
    from math import comb
    return SqMatrix(ctx, [[comb(i + j, i) for j in range(d)] for i in range(d)])


def free_product(rep1, rep2, t="t", cert_depth=4, conjugate=True):
    """Free product via the amalgam construction with trivial H.

    With ``conjugate`` both factors are first conjugated by a Pascal matrix,
    which turns diagonal non-scalar images into matrices with nonzero corners.
    """
    if conjugate:
        reps = []
        for r in (rep1, rep2):
            C = pascal(r.ctx, r.dim)
            reps.append(r.conjugated(C, note={"op": "conjugate", "by": "pascal"}))
        rep1, rep2 = reps
    return shalen_amalgam(rep1, rep2, (), t=t, cert_depth=cert_depth)


# --- the path RAAG G - Q - P - F in dimension 3 ---------------------------

def p4_presentation():
    return Presentation.raag(["G", "Q", "P", "F"], [(0, 1), (1, 2), (2, 3)])


def _check_condition1(Z, max_power):
    zi = Z.inverse()
    pos, neg = Z, zi
    for m in range(1, max_power + 1):
        for k, pw in ((m, pos), (-m, neg)):
            if pw.rows[0][1].is_zero() or pw.rows[1][0].is_zero():
                raise Condition1Violated(f"Z^{k} has a zero off-diagonal entry", witness=k)
        pos, neg = pos * Z, neg * zi


def _check_condition2(X, Y, L):
    ctx = X.ctx.union(Y.ctx)
    rep = Representation(Presentation.free(2), ctx, [X.lift(ctx), Y.lift(ctx)])
    for w, m in rep.ball_images(L):
        if w and m.rows[0][0].is_one():
            raise Condition2Violated(
                f"nontrivial element {rep.presentation.word_text(w)} has top-left entry 1",
                witness=rep.presentation.word_text(w))
    return rep


def p4_build(X, Z, lam="lam", phi="phi", check_powers=50, check_ball=8,
             conjugate_back=False):
    """Faithful 3-dim representation of the path RAAG G - Q - P - F.

    X = ((a, b), (c, d)) fills the top-left block of G0 and Z = ((al, be),
    (ga, de)) the corner pattern of F0.  Two fresh symbols are adjoined in
    order: ``lam`` (for Q0, P0 and the free-group gate) and then ``phi``.
    With ``conjugate_back`` everything is conjugated by F0^-1, giving
    G0, Q0, P0 and F0^-1 D F0 D^-1 F0.
    """
    ctx0 = X.ctx.union(Z.ctx)
    lname = ctx0.fresh_name(lam)
    ctx1 = adjoin(ctx0, lname)
    pname = ctx1.fresh_name(phi)
    ctx = adjoin(ctx1, pname)
    X, Z = X.lift(ctx1), Z.lift(ctx1)
    if X.dim != 2 or Z.dim != 2:
        raise RepError("X and Z must be 2x2")
    if X.det().is_zero() or Z.det().is_zero():
        raise NotInvertible("X and Z must be invertible")
    lv = ctx1.gen(lname)
    if check_powers:
        _check_condition1(Z, check_powers)
    if check_ball:
        _check_condition2(X, SqMatrix.diag(ctx1, [lv, lv.inverse()]), check_ball)
    X, Z = X.lift(ctx), Z.lift(ctx)
    lv, ph = ctx.gen(lname), ctx.gen(pname)
    li = lv.inverse()
    (a, b), (c, d) = X.rows
    (al, be), (ga, de) = Z.rows
    z = ctx.zero()
    G0 = SqMatrix(ctx, [[a, b, z], [c, d, z], [z, z, 1]])
    Q0 = SqMatrix.diag(ctx, [lv, lv, li])
    P0 = SqMatrix.diag(ctx, [lv, li, lv])
    F0 = SqMatrix(ctx, [[al, z, be], [z, 1, z], [ga, z, de]])
    F0i = F0.inverse()
    D = SqMatrix.diag(ctx, [ph, ph ** 2, ph ** 3])
    Di = SqMatrix.diag(ctx, [ph ** -1, ph ** -2, ph ** -3])
    F = D * F0 * Di
    if conjugate_back:
        mats = [G0, Q0, P0, F0i * F * F0]
    else:
        mats = [F0 * G0 * F0i, F0 * Q0 * F0i, P0, F]
    prov = [{"op": "p4_build", "symbols": [lname, pname], "check_powers": check_powers,
             "check_ball": check_ball, "conjugate_back": bool(conjugate_back)}]
    return Representation(p4_presentation(), ctx, mats, prov)


def p4_concrete(conjugate_back=True, **kw):
    """X = Z = ((2, 1), (1, 1))^2 over the rationals."""
    ctx = FunctionField(QQ, ())
    X = SqMatrix(ctx, [[5, 3], [3, 2]])
    return p4_build(X, X, conjugate_back=conjugate_back, **kw)


def p4_generic(field=QQ, t="t", **kw):
    """X = Z = T^2 with T = ((t^2, t-1), (t+1, 1)); works in every characteristic."""
    ctx = adjoin(_as_ctx(field), t)
    X = fib_T(ctx, t) ** 2
    return p4_build(X, X, **kw)


# --- index-2 induction ----------------------------------------------------

def subgroup_rep(rep, gens):
    """Restrict ``rep`` to the subgroup generated by named words.

    ``gens`` maps new generator names to words of rep's presentation.  The
    result carries a relator-free generating-set presentation.
    """
    names = list(gens)
    mats = [rep.evaluate(gens[n]) for n in names]
    pres = Presentation.amalgam(names, [])
    return Representation(pres, rep.ctx, mats,
                          rep.provenance + [{"op": "subgroup", "generators": dict(gens)}])


def induce_index2(rep_h, presentation, action):
    """Induced representation of G from an index-2 subgroup H.

    ``action[g] = ((j0, h0), (j1, h1))`` records g * s_i = s_{j_i} * h_i for
    the transversal s_0 = 1, s_1, with h_i words over rep_h's generators.
    Block (j_i, i) of the image of g is rep_h(h_i).  The relators of G are
    checked afterwards and RelatorFails is raised with the first failure.
    """
    d = rep_h.dim
    ctx = rep_h.ctx
    zero = SqMatrix.zeros(ctx, d)
    mats = []
    for g in presentation.names:
        if g not in action:
            raise RepError(f"no coset action given for {g}")
        blocks = [[zero, zero], [zero, zero]]
        targets = set()
        for i, (j, h) in enumerate(action[g]):
            blocks[j][i] = rep_h.evaluate(h)
            targets.add(j)
        if targets != {0, 1}:
            raise RepError(f"action of {g} is not a permutation of the cosets")
        rows = []
        for bi in range(2):
            for r in range(d):
                rows.append([v for bj in range(2) for v in blocks[bi][bj].rows[r]])
        mats.append(SqMatrix(ctx, rows))
    rep = Representation(presentation, ctx, mats,
                         rep_h.provenance + [{"op": "induce_index2",
                                              "action": {g: [list(x) for x in action[g]]
                                                         for g in presentation.names}}])
    ident = rep.identity()
    for r in presentation.relators():
        if rep.evaluate(r) != ident:
            raise RelatorFails(f"relator {presentation.word_text(r)} fails",
                               witness=presentation.word_text(r))
    return rep


def parabolic_presentation():
    """F_2 x| Z with x -> x, y -> yx (abelianization ((1,1),(0,1)))."""
    return Presentation.free_by_cyclic(["x", "y"], ["x", "y x"], ["x", "y x^-1"])


PARABOLIC_ACTION = {
    "x": ((0, "c b^-1"), (1, "a^-1 b a c^-1")),
    "y": ((1, "1"), (0, "a")),
    "t": ((0, "b"), (1, "c")),
}


def parabolic_induced(p4=None):
    """6-dim representation of the parabolic free-by-cyclic group.

    H = <y^2, t, y^-1 t y> has index 2 and embeds in the path RAAG via
    y^2 -> G F^-1, t -> Q, y^-1 t y -> P.
    """
    if p4 is None:
        p4 = p4_generic()
    h = subgroup_rep(p4, {"a": "G F^-1", "b": "Q", "c": "P"})
    return induce_index2(h, parabolic_presentation(), PARABOLIC_ACTION)
