from importlib.resources import files

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

FIXTURES = files("endoalg") / "fixtures"


def fixture_path(stem: str) -> str:
    return str(FIXTURES / f"{stem}.alg")


@pytest.fixture
def fixture_file():
    return fixture_path
