import numpy as np
import pytest

from indexcode import catalog_get, instance_validate


@pytest.fixture(scope="session")
def i1():
    return catalog_get("I1").instance


@pytest.fixture(scope="session")
def i2():
    return catalog_get("I2").instance


@pytest.fixture(scope="session")
def i3():
    return catalog_get("I3").instance


@pytest.fixture(scope="session")
def i4():
    return catalog_get("I4").instance


def random_instance(rng: np.random.Generator, m: int):
    """Uniform random side information over all valid m-user instances."""
    side = []
    for i in range(1, m + 1):
        others = [j for j in range(1, m + 1) if j != i]
        mask = rng.integers(0, 2, size=len(others))
        side.append(frozenset(j for j, b in zip(others, mask) if b))
    return instance_validate(m, side)
