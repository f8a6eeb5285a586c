import sympy
from hypothesis import strategies as st

from repcert.exactfield import FunctionField, QQ

X, Y = sympy.symbols("x y")
QXY = FunctionField(QQ, ("x", "y"))


def to_sympy(e):
    return sympy.sympify(str(e).replace("^", "**"), locals={"x": X, "y": Y})


def sympy_equal(a, b):
    return sympy.simplify(a - b) == 0


@st.composite
def laurent(draw, ctx=QXY, max_terms=3, lo=-2, hi=2):
    n = draw(st.integers(0, max_terms))
    out = ctx.zero()
    for _ in range(n):
        c = draw(st.integers(-4, 4))
        ex = [draw(st.integers(lo, hi)) for _ in ctx.names]
        term = ctx(c)
        for name, k in zip(ctx.names, ex):
            term = term * ctx.gen(name) ** k
        out = out + term
    return out


@st.composite
def nonzero_laurent(draw, ctx=QXY):
    e = draw(laurent(ctx))
    return e if not e.is_zero() else ctx.one()


@st.composite
def fractions_of(draw, ctx=QXY):
    return draw(laurent(ctx)) / draw(nonzero_laurent(ctx))
