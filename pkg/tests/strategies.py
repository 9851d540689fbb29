from fractions import Fraction

from hypothesis import strategies as st

from framedlin.ratla import RationalMatrix

scalars = st.builds(Fraction, st.integers(-5, 5), st.sampled_from([1, 2, 3]))


@st.composite
def matrices(draw, max_rows=6, max_cols=6, min_rows=0, min_cols=0):
    r = draw(st.integers(min_rows, max_rows))
    c = draw(st.integers(min_cols, max_cols))
    entries = draw(st.lists(scalars, min_size=r * c, max_size=r * c))
    return RationalMatrix(r, c, entries)


@st.composite
def low_rank_matrices(draw, max_dim=6, rows=None):
    """Products of thin factors, so rank deficiency is common."""
    r = rows if rows is not None else draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    k = draw(st.integers(0, min(r, c)))
    A = RationalMatrix(r, k, draw(st.lists(scalars, min_size=r * k, max_size=r * k)))
    B = RationalMatrix(k, c, draw(st.lists(scalars, min_size=k * c, max_size=k * c)))
    return A @ B
