from hypothesis import HealthCheck, settings, strategies as st

from motstats.motring import LClass

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# arbitrary Laurent polynomials with small coefficients
lclasses = st.dictionaries(st.integers(-3, 3), st.integers(-3, 3), max_size=4).map(LClass)

# classes with nonnegative coefficients in degrees >= 0 (cellular point counts)
cellular = st.dictionaries(st.integers(0, 2), st.integers(1, 2), min_size=1, max_size=3).map(LClass)

small_q = st.sampled_from([2, 3, 4, 5, 7])
