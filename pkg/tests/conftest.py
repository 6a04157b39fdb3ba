import pytest

from partial_actions.groups import cyclic_group, subgroup_closure, symmetric_group


@pytest.fixture(scope="session")
def s3():
    return symmetric_group(3)


@pytest.fixture(scope="session")
def z2():
    return cyclic_group(2)


@pytest.fixture(scope="session")
def z3():
    return cyclic_group(3)


@pytest.fixture(scope="session")
def z4():
    return cyclic_group(4)


@pytest.fixture(scope="session")
def s3_swap_subgroup(s3):
    return subgroup_closure(s3, ["(12)"])
