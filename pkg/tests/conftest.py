import math

import pytest

from siegellab.cfrac import RotationNumber


@pytest.fixture(scope="session")
def golden():
    return RotationNumber.golden()


@pytest.fixture(scope="session")
def golden_value():
    return (math.sqrt(5.0) - 1.0) / 2.0
