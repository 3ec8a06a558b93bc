"""Hypothesis strategies for random plat fronts."""

from hypothesis import strategies as st

from legcard.front import PlatFront


@st.composite
def plat_fronts(draw, max_cusps=3, max_events=8, graded=True):
    n = draw(st.integers(1, max_cusps))
    if n == 1:
        events = ()
    else:
        events = tuple(draw(st.lists(st.integers(1, 2 * n - 1), max_size=max_events)))
    front = PlatFront(n, events)
    if graded:
        from hypothesis import assume

        assume(front.has_maslov_potential())
    return front
