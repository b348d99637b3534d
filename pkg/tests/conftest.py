import pytest

import complicial as C


@pytest.fixture(scope="session")
def z2():
    return C.cyclic_group(2)


@pytest.fixture(scope="session")
def z3():
    return C.cyclic_group(3)


@pytest.fixture(scope="session")
def s3():
    return C.symmetric_group_3()


@pytest.fixture(scope="session")
def nerve_z2_3(z2):
    return C.nerve(z2, 3)


@pytest.fixture(scope="session")
def nerve_z2_4(z2):
    return C.nerve(z2, 4)


@pytest.fixture(scope="session")
def nerve_z3_3(z3):
    return C.nerve(z3, 3)


@pytest.fixture(scope="session")
def nerve_s3_3(s3):
    return C.nerve(s3, 3)


@pytest.fixture(scope="session")
def nerve_bool_3():
    return C.nerve(C.boolean_monoid(), 3)


@pytest.fixture(scope="session")
def th0_z2_3(nerve_z2_3):
    return C.th0(nerve_z2_3)


@pytest.fixture(scope="session")
def th0_z2_4(nerve_z2_4):
    return C.th0(nerve_z2_4)


@pytest.fixture(scope="session")
def th0_s3_3(nerve_s3_3):
    return C.th0(nerve_s3_3)


@pytest.fixture(scope="session")
def qcat_bool_3(nerve_bool_3):
    return C.quasicat_e(nerve_bool_3)


@pytest.fixture(scope="session")
def point_3():
    return C.delta(0, 3)


def vertex(x):
    """The first vertex of a stratified complex."""
    return x.underlying.id_at(0, 0)
