import random

import pytest

from klein_parallelisms import F2RationalFunctions, PrimeField, ProjSubspace, Rationals
from klein_parallelisms.algebras import AlgebraH
from klein_parallelisms.hfd import HfdDescriptor, validate_descriptor
from klein_parallelisms.klein import second_external_plane
from klein_parallelisms.projspace import meet
from klein_parallelisms.spreads import clifford_hfd_plane


@pytest.fixture(scope="session")
def QQ():
    return Rationals()


@pytest.fixture(scope="session")
def GF2():
    return PrimeField(2)


@pytest.fixture(scope="session")
def GF3():
    return PrimeField(3)


@pytest.fixture(scope="session")
def F2ST():
    return F2RationalFunctions()


@pytest.fixture(scope="session")
def hamilton(QQ):
    """The (-1,-1) quaternion algebra over Q."""
    return AlgebraH(QQ, "quaternion", -1, -1)


@pytest.fixture(scope="session")
def tower(F2ST):
    return AlgebraH(F2ST, "tower")


@pytest.fixture(scope="session")
def k1(hamilton):
    """The external plane carrying the (-1,-1) Clifford parallelism."""
    return clifford_hfd_plane(hamilton, "left", random.Random(3), samples=20)


@pytest.fixture(scope="session")
def k2(k1):
    return second_external_plane(k1, random.Random(7))


@pytest.fixture(scope="session")
def tower_plane(tower):
    return clifford_hfd_plane(tower, "left", random.Random(4), samples=8)


@pytest.fixture(scope="session")
def constant_descriptor(QQ, k1):
    d_line = ProjSubspace.from_vectors(QQ, 5, [k1.rows[0], k1.rows[1]])
    return validate_descriptor(HfdDescriptor(d_line, (k1,), 0, ()))


@pytest.fixture(scope="session")
def two_plane_descriptor(QQ, k1, k2):
    """Two carrier planes, three exceptional parameters on the common line."""
    d_line = meet(k1, k2)
    one, zero = QQ.one(), QQ.zero()
    exceptions = tuple(
        (param, 1) for param in ((one, zero), (zero, one), (one, one))
    )
    return validate_descriptor(HfdDescriptor(d_line, (k1, k2), 0, exceptions))
