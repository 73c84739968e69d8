import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "exact", deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
settings.load_profile("exact")


@pytest.fixture(scope="session")
def steffen_model():
    from steffenflex.steffen import build_steffen
    return build_steffen()


@pytest.fixture(scope="session")
def steffen_exact_report(steffen_model):
    from steffenflex.checker import check_embedded
    return check_embedded(steffen_model.realization)
