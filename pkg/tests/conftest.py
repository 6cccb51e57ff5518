from __future__ import annotations

import pytest

from index2walsh import validate_instance
from index2walsh.gf import build_field
from index2walsh.oracle import count_matrix, params_for_period, period_in_field


@pytest.fixture(scope="session")
def field_2_21():
    """F_{2^21} with beta of order 49 attached."""
    return build_field(2, 21, 0, N=49)


@pytest.fixture(scope="session")
def counts_2_7(field_2_21):
    return count_matrix(field_2_21, 49)


@pytest.fixture(scope="session")
def anchored_2_7(field_2_21):
    """(2, 7) with the sign of b matched to the field's own beta."""
    params = validate_instance(2, 7)
    return params_for_period(params, period_in_field(params, field_2_21))
