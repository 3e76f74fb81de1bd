import numpy as np
import pytest

from gbplab import examples


@pytest.fixture(scope="session")
def order_three():
    """(P, lambda, T, star norm) for the averaging projection on C^3."""
    return examples.order_three_pencil()


@pytest.fixture(scope="session")
def shift4():
    """Order-3 coordinate shift on C^4 (identity on the last coordinate)."""
    return examples.three_cycle_with_fixed_tail()


@pytest.fixture
def e3():
    return np.array([0.0, 0.0, 1.0], dtype=complex)
