from fractions import Fraction as F

from hypothesis import strategies as st

from dtpar.cone_series import ConeSeries, Generator, Geometry

fractions = st.builds(F, st.integers(-6, 6), st.integers(1, 5))
nonzero_fractions = fractions.filter(bool)


@st.composite
def geometries(draw, max_gens=3, max_d=5):
    k = draw(st.integers(1, max_gens))
    gens = tuple(
        Generator(f"C{i}", draw(st.integers(1, 2)), draw(st.integers(1, 3))) for i in range(k)
    )
    lo = min(g.omega for g in gens)
    return Geometry(gens, draw(st.integers(lo, max(lo, max_d))))


@st.composite
def series(draw, geometry, constant=None):
    classes = geometry.classes(include_zero=constant is None)
    keys = draw(st.lists(st.tuples(st.integers(-2, 2), st.sampled_from(classes)), max_size=6))
    terms = {k: draw(fractions) for k in keys}
    if constant is not None:
        terms[(0, geometry.zero)] = F(constant)
    return ConeSeries(geometry, terms)


def conifold(d):
    return Geometry.single(d)


def one_gen(d, **kw):
    return Geometry.single(d, **kw)
