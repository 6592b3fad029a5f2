import pytest

from trophomology import (
    Matroid,
    TropicalComplex,
    build_hypersurface,
    fan_linear_space,
    make_face,
    projective_space,
    smooth_heights,
)


@pytest.fixture(scope="session")
def line():
    """The tropical line in TP^2 with vertex at the origin."""
    return fan_linear_space([0, 0], 1, 2)


@pytest.fixture(scope="session")
def plane():
    """The fan-like tropical plane in TP^3."""
    return fan_linear_space([0, 0, 0], 2, 3)


@pytest.fixture(scope="session")
def tp1():
    return projective_space(1)


@pytest.fixture(scope="session")
def curves():
    """Smooth plane curves of degrees 1..4 from certified heights."""
    out = {}
    for d in range(1, 5):
        hf = smooth_heights(2, d)
        out[d] = (hf, build_hypersurface(hf))
    return out


@pytest.fixture(scope="session")
def surfaces():
    """Smooth surfaces in TP^3 of degrees 1..4 from certified heights."""
    out = {}
    for d in range(1, 5):
        hf = smooth_heights(3, d)
        out[d] = (hf, build_hypersurface(hf))
    return out


@pytest.fixture(scope="session")
def matroids():
    return {
        "u23": Matroid.uniform(2, 3),
        "u24": Matroid.uniform(2, 4),
        "u34": Matroid.uniform(3, 4),
        "free1": Matroid.free(1),
        "free2": Matroid.free(2),
        "free3": Matroid.free(3),
        "k4": Matroid.graphic(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
    }


@pytest.fixture(scope="session")
def subdivided_line():
    """The tropical line with one ray split at a rational mobile point."""
    v0 = make_face(2, (), [(0, 0)], [])
    v1 = make_face(2, (), [(-1, 0)], [])
    seg = make_face(2, (), [(0, 0), (-1, 0)], [])
    tail = make_face(2, (), [(-1, 0)], [1])
    r2 = make_face(2, (), [(0, 0)], [2])
    r0 = make_face(2, (), [(0, 0)], [0])
    faces = [v0, v1, seg, tail, r2, r0,
             tail.j_limit(1), r2.j_limit(2), r0.j_limit(0)]
    return TropicalComplex(2, faces)
