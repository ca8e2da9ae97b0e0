"""Shared test helpers.

No RNG anywhere: tests that need "random-looking" elements draw them from
the fixed counter sequence below, so every run is byte-for-byte identical.
"""

import pytest


def counter_indices(count: int, modulus: int, salt: int = 0):
    """Deterministic pseudo-spread sequence: k -> (7919*k + 104729*salt + 13) mod modulus."""
    return [(7919 * k + 104729 * salt + 13) % modulus for k in range(count)]


@pytest.fixture(scope="session")
def tower11():
    from qrhadamard.finite_field import quadratic_tower

    return quadratic_tower(11)


@pytest.fixture(scope="session")
def tower17():
    from qrhadamard.finite_field import quadratic_tower

    return quadratic_tower(17)


@pytest.fixture(scope="session")
def tower25():
    from qrhadamard.finite_field import quadratic_tower

    return quadratic_tower(25)
