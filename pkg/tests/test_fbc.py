import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from repcert import fbc
from repcert.verify import hom_check, ball_kernel


REPS = {
    ((0, 1), (-1, 1)): fbc.FBCClass("elliptic", 6),
    ((0, -1), (1, -1)): fbc.FBCClass("elliptic", 3),
    ((0, 1), (-1, 0)): fbc.FBCClass("elliptic", 4),
    ((-1, 0), (0, -1)): fbc.FBCClass("elliptic", 2),
    ((1, 0), (0, 1)): fbc.FBCClass("elliptic", 1),
    ((1, 1), (0, 1)): fbc.FBCClass("parabolic"),
    ((2, 1), (1, 1)): fbc.FBCClass("hyperbolic"),
    ((1, 0), (0, -1)): fbc.FBCClass("reversing_order2", 2, "diagonal"),
    ((0, 1), (1, 0)): fbc.FBCClass("reversing_order2", 2, "swap"),
    ((1, 1), (1, 0)): fbc.FBCClass("reversing_hyperbolic_square"),
}


@pytest.mark.parametrize("M", list(REPS))
def test_classify_representatives(M):
    assert fbc.classify(M) == REPS[M]


def test_classify_rejects_non_unimodular():
    with pytest.raises(fbc.NotUnimodular):
        fbc.classify(((2, 0), (0, 1)))


def _elementary(rng, n):
    m = sympy.eye(2)
    for _ in range(n):
        e = rng.choice([sympy.Matrix([[1, 1], [0, 1]]), sympy.Matrix([[1, 0], [1, 1]]),
                        sympy.Matrix([[0, 1], [1, 0]]), sympy.Matrix([[-1, 0], [0, 1]])])
        m = m * e
    return m


def test_class_invariant_under_conjugation():
    # the conjugacy class of M in GL(2,Z) determines the group; swap/diagonal
    # are separated by an invariant, so they must survive conjugation too
    rng = random.Random(7)
    for M, cls in REPS.items():
        for _ in range(20):
            g = _elementary(rng, rng.randint(1, 6))
            N = g * sympy.Matrix(M) * g.inv()
            assert fbc.classify(N.tolist()) == cls


@settings(max_examples=500, deadline=None)
@given(st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6))
def test_orrev(a, b, c):
    # det -1 matrices: ad - bc = -1 with d determined when a != 0
    if a == 0:
        if b * c != 1:
            return
        d = c  # arbitrary
        M = sympy.Matrix([[0, b], [c, d]])
    else:
        if (b * c - 1) % a:
            return
        M = sympy.Matrix([[a, b], [c, (b * c - 1) // a]])
    assert M.det() == -1
    M2 = M * M
    expected = bool(M2.trace() > 2) or M2 == sympy.eye(2)
    assert expected
    assert fbc.orrev_holds(M.tolist()) == expected


def test_trace_values():
    assert fbc.commutator_trace(4, 4, 4) == -18
    assert fbc.is_soluble_degenerate((2, 2, 2))
    assert fbc.free_sufficient((4, 4, 8))
    assert fbc.free_sufficient((4, 4, 4))
    assert not fbc.free_sufficient((3, 3, 3))
    assert not fbc.free_sufficient((2, 5, 5))


def test_squarefree_part():
    for n in range(-60, 61):
        if n == 0:
            continue
        sf = fbc.squarefree_part(n)
        f = sympy.factorint(abs(n))
        expect = 1
        for p, e in f.items():
            if e % 2:
                expect *= p
        assert sf == (expect if n > 0 else -expect)


def test_bounds_intervals():
    b = fbc.fbc_bounds(fbc.FBCClass("parabolic"))
    assert (b.char0.lo, b.char0.hi) == (3, 6)
    b = fbc.fbc_bounds(fbc.FBCClass("elliptic", 6))
    assert b.char0.exact and b.char0.lo == 2 and b.positive_char.hi == 12
    b = fbc.fbc_bounds(fbc.FBCClass("reversing_hyperbolic_square"))
    assert (b.char0.lo, b.char0.hi, b.positive_char.hi) == (3, 4, None)


FINITE = [c for c in REPS.values() if c.kind in ("elliptic", "reversing_order2")]


@pytest.fixture(scope="module")
def solutions():
    return {c: fbc.trace_triple_solve(c) for c in FINITE}


@pytest.mark.parametrize("cls", FINITE, ids=lambda c: f"{c.kind}-{c.order}-{c.subtype}")
def test_trace_triple_solution(cls, solutions):
    sol = solutions[cls]
    A, B, T = sol.A, sol.B, sol.T
    assert A.det().is_one() and B.det().is_one()
    tr = lambda m: m[0, 0] + m[1, 1]
    ctx = A.ctx
    assert [tr(A), tr(B), tr(A * B)] == [ctx(v) for v in sol.triple]
    from repcert.repbuild import Representation
    from repcert.grouppres import Presentation
    free = Representation(Presentation.free(2), ctx, [A, B])
    Ti = T.inverse()
    assert T * A * Ti == free.evaluate(sol.alpha[0])
    assert T * B * Ti == free.evaluate(sol.alpha[1])
    assert hom_check(sol.representation).verdict


def test_quadratic_fields(solutions):
    assert solutions[fbc.FBCClass("elliptic", 6)].A.ctx.base.radicand == 35
    assert solutions[fbc.FBCClass("elliptic", 4)].A.ctx.base.radicand == 15


def test_free_subgroup_ball(solutions):
    from repcert.repbuild import Representation
    from repcert.grouppres import Presentation
    sol = solutions[fbc.FBCClass("elliptic", 6)]
    free = Representation(Presentation.free(2), sol.A.ctx, [sol.A, sol.B])
    assert ball_kernel(free, 6).verdict


def test_unsupported_and_degenerate():
    with pytest.raises(fbc.UnsupportedClass):
        fbc.trace_triple_solve(fbc.FBCClass("parabolic"))
    with pytest.raises(fbc.NoConjugator):
        fbc.trace_triple_solve(fbc.FBCClass("elliptic", 4), triple=(2, 2, 2))
