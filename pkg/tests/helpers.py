import math

from hypothesis import strategies as st

from quatcalc.quaternion import Quaternion
from quatcalc.series import PowerSeries

unit_floats = st.floats(-1.0, 1.0, allow_nan=False, allow_infinity=False)
quaternions = st.builds(Quaternion, unit_floats, unit_floats, unit_floats, unit_floats)


@st.composite
def off_axis_quaternions(draw, r_lo=0.1, r_hi=3.0):
    """Quaternions whose imaginary magnitude lies in [r_lo, r_hi]."""
    w = draw(st.floats(-1.0, 1.0))
    v = draw(st.tuples(unit_floats, unit_floats, unit_floats).filter(
        lambda t: math.hypot(*t) > 1e-3))
    r = draw(st.floats(r_lo, r_hi))
    n = math.hypot(*v)
    return Quaternion(w, *(c * r / n for c in v))


@st.composite
def series(draw, max_degree=8, left=True):
    deg = draw(st.integers(0, max_degree))
    if left:
        return PowerSeries(draw(st.lists(quaternions, min_size=deg + 1, max_size=deg + 1)))
    return PowerSeries.from_reals(draw(st.lists(unit_floats, min_size=deg + 1, max_size=deg + 1)))


def qclose(a: Quaternion, b: Quaternion, tol: float = 1e-14) -> bool:
    return (a - b).norm() <= tol * max(1.0, b.norm())
