from fractions import Fraction as Q

import pytest

from trophomology.homology import euler_check
from trophomology.hypersurface import (
    HeightError,
    HeightFunction,
    build_hypersurface,
    degree,
    dual_subdivision,
    is_smooth,
    simplex_points,
    smooth_heights,
    uniform_heights,
)
from trophomology.tropgeo import fan_linear_space, is_balanced


def midpoint_conic():
    pts = simplex_points(2, 2)
    vals = {m: (1 if sorted(m) == [0, 1, 1] else 0) for m in pts}
    return HeightFunction.make(2, 2, vals)


def test_height_validation():
    with pytest.raises(HeightError):
        HeightFunction.make(2, 1, {})
    with pytest.raises(HeightError):
        HeightFunction.make(2, 1, {(1, 1, 0): 0})
    with pytest.raises(HeightError):
        HeightFunction.make(2, 1, {(2, -1, 0): 0})


def test_dual_subdivision_examples():
    sub = dual_subdivision(uniform_heights(2, 1))
    assert len(sub.maximal) == 1 and len(sub.maximal[0]) == 3
    sub2 = dual_subdivision(midpoint_conic())
    assert len(sub2.maximal) == 4
    assert all(len(c) == 3 for c in sub2.maximal)
    subm = dual_subdivision(HeightFunction.make(2, 1, {(1, 0, 0): 0}))
    assert len(subm.maximal) == 1 and len(subm.maximal[0]) == 1


def test_is_smooth_examples():
    assert is_smooth(uniform_heights(2, 1))
    assert is_smooth(midpoint_conic())
    assert not is_smooth(uniform_heights(2, 2))


def test_line_census():
    x = build_hypersurface(uniform_heights(2, 1))
    dims = sorted(x.face_dim(i) for i in range(len(x.faces)))
    assert dims == [0, 0, 0, 0, 1, 1, 1]
    assert is_balanced(x) == (True, [])
    # identical to the fan-like line through the origin
    ref = fan_linear_space([0, 0], 1, 2)
    assert [f.key() for f in x.faces] == [f.key() for f in ref.faces]


def test_single_monomial_coordinate_line():
    x = build_hypersurface(HeightFunction.make(2, 1, {(1, 0, 0): 0}))
    facets = [i for i in range(len(x.faces)) if x.face_dim(i) == 1]
    assert facets and all(x.faces[i].sed == (0,) for i in facets)
    assert all(x.faces[i].weight == 1 for i in facets)
    assert x.is_pure()
    assert is_balanced(x)[0]
    assert degree(x, seed=0) == 1


def test_deep_boundary_weight():
    # single monomial of degree 2 concentrated away from two facets
    x = build_hypersurface(HeightFunction.make(2, 2, {(2, 0, 0): 0}))
    facets = [i for i in range(len(x.faces)) if x.face_dim(i) == 1]
    assert all(x.faces[i].weight == 2 for i in facets)
    assert degree(x, seed=0) == 2


def test_conic_census():
    x = build_hypersurface(midpoint_conic())
    mob_v = [i for i in range(len(x.faces))
             if not x.faces[i].sed and x.face_dim(i) == 0]
    assert len(mob_v) == 4  # one per maximal dual cell
    assert is_balanced(x)[0]
    assert euler_check(x)


def test_weight_two_line():
    x = build_hypersurface(uniform_heights(2, 2))
    mob_f = [i for i in range(len(x.faces))
             if not x.faces[i].sed and x.face_dim(i) == 1]
    assert all(x.faces[i].weight == 2 for i in mob_f)
    assert is_balanced(x)[0]
    assert degree(x, seed=0) == 2


def test_constant_shift_invariance():
    a = midpoint_conic()
    xa = build_hypersurface(a)
    xb = build_hypersurface(a.shift(Q(7, 3)))
    assert [f.key() for f in xa.faces] == [f.key() for f in xb.faces]
    assert [f.weight for f in xa.faces] == [f.weight for f in xb.faces]
    assert xa.down == xb.down


def test_degenerate_heights_rejected():
    # two monomials on a segment: the corner locus recedes along a full line
    with pytest.raises(HeightError):
        build_hypersurface(HeightFunction.make(2, 1, {(1, 0, 0): 0, (0, 1, 0): 0}))
    # degree zero: the corner locus is empty in every stratum
    with pytest.raises(HeightError):
        build_hypersurface(HeightFunction.make(2, 0, {(0, 0, 0): 0}))


def test_smooth_generator_certifies():
    for (n, d) in [(2, 1), (2, 2), (2, 3), (3, 2)]:
        hf = smooth_heights(n, d)
        assert hf.N == n and hf.d == d
        assert is_smooth(hf)
        assert len(dual_subdivision(hf).maximal) == d ** n


def test_degree_matches_over_seeds(curves):
    for d in range(1, 5):
        x = curves[d][1]
        vals = {degree(x, seed=s) for s in range(5)}
        assert vals == {d}


def test_degree_of_line_fixture(line):
    assert degree(line, seed=0) == 1


def test_heights_json_roundtrip(tmp_path):
    a = midpoint_conic()
    p = tmp_path / "h.json"
    a.save(str(p))
    b = HeightFunction.load(str(p))
    assert a == b
    p2 = tmp_path / "h2.json"
    b.save(str(p2))
    assert p.read_bytes() == p2.read_bytes()


def test_hypersurface_vertices_smooth_certificate(curves):
    from trophomology.matroid import Matroid
    from trophomology.tropgeo import is_smooth_at

    _, x = curves[2]
    cert = Matroid.uniform(2, 3)
    for fid in range(len(x.faces)):
        if not x.faces[fid].sed and x.face_dim(fid) == 0:
            assert is_smooth_at(x, fid, cert)


def test_surface_vertices_smooth_certificate(surfaces):
    from trophomology.matroid import Matroid
    from trophomology.tropgeo import is_smooth_at

    _, x = surfaces[2]
    cert = Matroid.uniform(3, 4)
    for fid in range(len(x.faces)):
        if not x.faces[fid].sed and x.face_dim(fid) == 0:
            assert is_smooth_at(x, fid, cert)
