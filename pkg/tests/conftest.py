from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from qeuclid.scalars import Gaussian, QScalar, qnum
from qeuclid.series import CPoly

settings.register_profile(
    "exact",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")

small_fraction = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
gaussians = st.builds(Gaussian, small_fraction, small_fraction)


@st.composite
def qscalars(draw, with_denominator=True):
    """Laurent polynomial, optionally divided by a q-number."""
    terms = draw(st.dictionaries(st.integers(-4, 4), gaussians, max_size=3))
    s = QScalar.from_terms(terms)
    if with_denominator and draw(st.booleans()):
        s = s * qnum(draw(st.integers(1, 3)), draw(st.sampled_from([-4, -2, 2, 4]))).inverse()
    return s


def exps(max_degree):
    return st.tuples(st.integers(0, max_degree), st.integers(0, max_degree),
                     st.integers(0, max_degree)).filter(lambda e: sum(e) <= max_degree)


def cpolys(max_degree=3, max_terms=3, slots=("x",)):
    key = exps(max_degree)
    if len(slots) == 2:
        key = st.tuples(exps(max_degree), exps(max_degree)).map(lambda p: p[0] + p[1])
    return st.dictionaries(key, qscalars(with_denominator=False), max_size=max_terms).map(
        lambda d: CPoly.from_terms(d.items(), slots))
