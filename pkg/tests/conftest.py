import pytest
from hypothesis import settings

import fixtures

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def z2_cells():
    return fixtures.z2_cells()


@pytest.fixture
def s3_cells():
    return fixtures.s3_cells()


@pytest.fixture
def s3_table():
    return fixtures.s3_table()


@pytest.fixture
def id_complex():
    return fixtures.id_complex()
