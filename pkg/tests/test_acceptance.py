"""Acceptance criteria 1-8.  Each test prints one PASS/FAIL line."""
import random
import time
from contextlib import contextmanager

import networkx as nx
import pytest
import sympy

from repcert import repbuild as rb, fbc, gersten as gs, burau as bu
from repcert.exactfield import GF, QQ, FunctionField
from repcert.linalg import SqMatrix, char_poly
from repcert.raagbounds import Graph, bounds
from repcert.repbuild import Representation
from repcert.grouppres import Presentation
from repcert.verify import hom_check, ball_kernel

from test_raagbounds import expected_value, from_nx


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def run(n, label):
        t0 = time.perf_counter()
        try:
            yield
        except BaseException as e:
            with capsys.disabled():
                print(f"\ncriterion {n}: FAIL {label} ({type(e).__name__}: {e})")
            raise
        with capsys.disabled():
            print(f"\ncriterion {n}: PASS {label} ({time.perf_counter() - t0:.1f}s)")
    return run


EXPECTED_MATRICES = {
    "G": [["5", "3", "0"], ["3", "2", "0"], ["0", "0", "1"]],
    "Q": [["lam", "0", "0"], ["0", "lam", "0"], ["0", "0", "lam^-1"]],
    "P": [["lam", "0", "0"], ["0", "lam^-1", "0"], ["0", "0", "lam"]],
    "F": [["-45*phi^2+32+18*phi^-2", "0", "-27*phi^2+18+12*phi^-2"],
          ["0", "1", "0"],
          ["75*phi^2-45-27*phi^-2", "0", "45*phi^2-25-18*phi^-2"]],
}


def test_criterion_1_p4_concrete(criterion):
    with criterion(1, "P4 concrete matrices, relators, ball L=6"):
        t0 = time.perf_counter()
        X = SqMatrix(FunctionField(QQ, ()), [[5, 3], [3, 2]])
        ctx_rep = rb.p4_build(X, X, conjugate_back=True)
        ctx = ctx_rep.ctx
        for name, rows in EXPECTED_MATRICES.items():
            got = [[str(v) for v in r] for r in ctx_rep[name].rows]
            want = [[str(ctx.parse(v)) for v in r] for r in rows]
            assert got == want, name
        assert hom_check(ctx_rep).verdict
        c = ball_kernel(ctx_rep, 6)
        assert c.verdict, c.witness
        assert time.perf_counter() - t0 < 120


def test_criterion_2_p4_char5(criterion):
    with criterion(2, "P4 pipeline over characteristic 5, ball L=5"):
        rep = rb.p4_generic(GF(5))
        assert rep.ctx.characteristic == 5
        assert hom_check(rep).verdict
        c = ball_kernel(rep, 5)
        assert c.verdict, c.witness


def test_criterion_3_raag_corpus(criterion):
    with criterion(3, "RAAG bound corpus (graphs on <= 4 vertices and C5)"):
        corpus = [g for g in nx.graph_atlas_g() if 1 <= g.number_of_nodes() <= 4]
        assert len(corpus) == 18
        for g in corpus:
            r = bounds(from_nx(g))
            v = expected_value(g)
            assert r.char0.exact and r.char0.lo == v, sorted(g.edges())
            assert r.positive_char.contains(v)
        named = {
            "K3": (Graph(3, [(0, 1), (1, 2), (0, 2)]), 1),
            "2K2": (Graph(4, [(0, 1), (2, 3)]), 2),
            "P3+pt": (Graph(4, [(0, 1), (1, 2)]), 3),
            "P4": (Graph(4, [(0, 1), (1, 2), (2, 3)]), 3),
            "C4": (Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)]), 4),
            "C5": (Graph(5, [(i, (i + 1) % 5) for i in range(5)]), 3),
        }
        for name, (g, v) in named.items():
            r = bounds(g)
            assert r.char0.lo == r.char0.hi == v, name


def test_criterion_4_theorem_pos_engine(criterion):
    with criterion(4, "200 orbit certificates and 50 symbolic root instances"):
        rng = random.Random(2024)
        t0 = time.perf_counter()
        for _ in range(200):
            ps = gs.PermSystem.random(rng.randint(1, 8), rng)
            c = gs.certify_orbit_constancy(ps)
            assert c.verdict and c.nullspace_dim == c.orbit_count
            m = gs.perm_system_matrix(ps)
            for o in c.orbits:
                v = [1 if i in o else 0 for i in range(ps.d)]
                assert all(sum(r[j] * v[j] for j in range(ps.d)) == 0 for r in m)
        assert time.perf_counter() - t0 < 10
        for _ in range(50):
            T, A = gs.random_instance(rng, d=rng.randint(1, 6), r=rng.randint(1, 3), max_order=12)
            e = gs.roots_of_unity_exponent(T, A).e
            assert gs.power_is_one(A, e)
            assert all(not gs.power_is_one(A, k) for k in range(1, e) if e % k == 0)


def test_criterion_5_jordan(criterion):
    with criterion(5, "Jordan structures of size <= 4"):
        big = set()
        for n in range(1, 5):
            for p in gs.partitions(n):
                v, _, heur = gs.jordan_big_centralizer(gs.JordanStructure([("mu", p)]))
                assert not heur
                if v == "big":
                    big.add(p)
        assert big == {(1, 1), (1, 1, 1), (1, 1, 1, 1), (2, 1, 1), (2, 2)}


def test_criterion_6_burau(criterion):
    with criterion(6, "Burau relators, char polys, center, B3 two-dim rep"):
        x = sympy.Symbol("x")
        for p in (0, 2, 3, 5):
            for n in range(3, 7):
                rep = bu.burau_reduced(n, p)
                assert hom_check(rep).verdict, (n, p)
                want = sympy.Poly((x - 1) ** (n - 2) * (x + sympy.Symbol("t")), x).all_coeffs()[::-1]
                for m in rep.matrices:
                    got = char_poly(m).coeffs
                    assert got == [rep.ctx.parse(str(c).replace("**", "^")) for c in want]
        for n in (3, 4):
            z, sign = bu.center_image(n)
            assert z.is_scalar() and z.rows[0][0] == z.ctx.gen("t") ** n * sign
        xm, ym = bu.b3_matrices()
        assert xm * xm == ym * ym * ym
        b3 = bu.b3_two_dim()
        assert hom_check(b3).verdict
        assert ball_kernel(b3, 6).verdict


def test_criterion_7_constructors(criterion):
    with criterion(7, "Z^2 * Z^2 free product, central extension, parabolic induced rep"):
        f = QQ
        r1 = rb.corner_extend(rb.rep_zn(2, f, gens=["a1", "a2"], symbols=["x1", "x2"]))
        r2 = rb.corner_extend(rb.rep_zn(2, f, gens=["b1", "b2"], symbols=["x1", "x2"]))
        fp = rb.free_product(r1, r2)
        assert fp.dim == 2
        assert hom_check(fp).verdict
        c = ball_kernel(fp, 6)
        assert c.verdict, c.witness

        dp = rb.dp_adjoin_center(rb.p4_concrete(), 1)
        z = dp.matrices[-1]
        for m in dp.matrices:
            assert z * m == m * z
        assert hom_check(dp).verdict

        par = rb.parabolic_induced()
        assert par.dim == 6
        assert hom_check(par).verdict


def _det_minus_one(rng):
    gens = [((1, 1), (0, 1)), ((1, 0), (1, 1)), ((1, -1), (0, 1)), ((1, 0), (-1, 1))]
    m = sympy.Matrix([[1, 0], [0, -1]]) if rng.random() < 0.5 else sympy.Matrix([[0, 1], [1, 0]])
    for _ in range(rng.randint(0, 8)):
        g = sympy.Matrix(rng.choice(gens))
        m = g * m if rng.random() < 0.5 else m * g
    return m


def test_criterion_8_fbc(criterion):
    with criterion(8, "fbc representatives, orientation-reversing property, trace triples"):
        reps = {
            ((0, 1), (-1, 1)): ("elliptic", 6),
            ((0, 1), (-1, 0)): ("elliptic", 4),
            ((1, 1), (0, 1)): ("parabolic", None),
            ((1, 0), (0, -1)): ("reversing_order2", 2),
            ((0, 1), (1, 0)): ("reversing_order2", 2),
        }
        for M, (kind, order) in reps.items():
            cls = fbc.classify(M)
            assert (cls.kind, cls.order) == (kind, order)
        rng = random.Random(8)
        for _ in range(500):
            M = _det_minus_one(rng)
            assert M.det() == -1
            M2 = M * M
            assert fbc.orrev_holds(M.tolist())
            assert M2.trace() > 2 or M2 == sympy.eye(2)
        for M in ((0, 1), (-1, 1)), ((0, 1), (-1, 0)), ((1, 0), (0, -1)), ((0, 1), (1, 0)):
            sol = fbc.trace_triple_solve(fbc.classify(M))
            free = Representation(Presentation.free(2), sol.A.ctx, [sol.A, sol.B])
            assert sol.A.ctx.base.radicand is not None
            assert sol.T * sol.A == free.evaluate(sol.alpha[0]) * sol.T
            assert sol.T * sol.B == free.evaluate(sol.alpha[1]) * sol.T
            assert hom_check(sol.representation).verdict
