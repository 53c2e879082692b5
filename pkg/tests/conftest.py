import pytest

from flagvec import build_cyclic, build_simplex


@pytest.fixture(scope="session")
def simplex5():
    return build_simplex(5)


@pytest.fixture(scope="session")
def simplex6():
    return build_simplex(6)


@pytest.fixture(scope="session")
def c58():
    return build_cyclic(5, 8)


@pytest.fixture(scope="session")
def small_corpus():
    """A quick mixed bag of lattices for cross-module identities."""
    from flagvec import build_crosspolytope, build_cube, build_polygon

    return [
        build_simplex(2), build_simplex(4), build_simplex(5),
        build_polygon(3), build_polygon(6),
        build_cube(3), build_cube(4),
        build_crosspolytope(3), build_crosspolytope(4),
        build_cyclic(5, 8), build_cyclic(6, 9),
    ]
