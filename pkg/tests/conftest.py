"""Shared hypothesis profile: property tests run whole-lattice checks, so the
per-example deadline is disabled globally and example counts stay moderate."""

from hypothesis import HealthCheck, settings

settings.register_profile(
    "ordercraft",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ordercraft")
