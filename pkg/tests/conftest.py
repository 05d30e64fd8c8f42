import pytest

from linkage.groebner import Ideal, cone, ideal_intersection
from linkage.resolution import ModulePresentation
from linkage.ring import Ring

ACCEPTANCE_LINES: list[str] = []


def ring(n, p=32003):
    return Ring(p, n, tuple(f"x{i}" for i in range(n)))


TWO_PLANES = ["x0*x2", "x0*x3", "x1*x2", "x1*x3"]
RESIDUAL_PLANES = ["x0*x1", "x0*x2", "x1*x3", "x2*x3"]
TWISTED_CUBIC = ["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]


@pytest.fixture(scope="session")
def r4():
    return ring(4)


@pytest.fixture(scope="session")
def r5():
    return ring(5)


@pytest.fixture(scope="session")
def twisted_cubic(r4):
    return Ideal.of(r4, TWISTED_CUBIC)


@pytest.fixture(scope="session")
def plane_pair(r5):
    return Ideal.of(r5, TWO_PLANES)


@pytest.fixture(scope="session")
def residual_pair(r5):
    return Ideal.of(r5, RESIDUAL_PLANES)


@pytest.fixture(scope="session")
def ci22(r5):
    return Ideal.of(r5, ["x0*x2", "x1*x3"])


@pytest.fixture(scope="session")
def cone_pair(plane_pair):
    return cone(plane_pair)


@pytest.fixture(scope="session")
def cone_residual(residual_pair):
    return cone(residual_pair)


@pytest.fixture(scope="session")
def cone_ci22(ci22):
    return cone(ci22)


@pytest.fixture(scope="session")
def non_star():
    r = ring(7)
    return ideal_intersection(Ideal.of(r, ["x0", "x1", "x2"]), Ideal.of(r, ["x3", "x4", "x5"]))


@pytest.fixture(scope="session")
def non_star_ci():
    return Ideal.of(ring(7), ["x0*x3", "x1*x4", "x2*x5"])


def quotient(I, name=""):
    return ModulePresentation.quotient_ring(I, name)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
