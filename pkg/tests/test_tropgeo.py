import random
from fractions import Fraction as Q

import pytest

from trophomology.matroid import Matroid
from trophomology.tropgeo import (
    Cone,
    Fan,
    GeometryError,
    TropicalComplex,
    chart_transition,
    divisorial_vector,
    family_poset,
    fan_linear_space,
    is_balanced,
    is_smooth_at,
    make_face,
    projective_space,
    relative_fan,
    star_fan,
    support_equal,
)


def rays_of(fan):
    return sorted({r for c in fan.cones for r in c.rays})


def test_chart_transition_examples():
    assert chart_transition(1, 0, (0, 0), N=2) == (Q(0), Q(0))
    assert chart_transition(1, 0, (1, 1), N=2) == (Q(-1), Q(0))
    assert chart_transition(0, 1, chart_transition(1, 0, (3, 5), N=2), N=2) == (Q(3), Q(5))


def test_chart_transition_round_trips():
    rng = random.Random(1)
    for _ in range(50):
        N = rng.randint(1, 4)
        i, j = rng.sample(range(N + 1), 2)
        v = tuple(Q(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(N))
        assert chart_transition(j, i, chart_transition(i, j, v, N=N), N=N) == v


def test_chart_transition_rejects_bad_sedentarity():
    with pytest.raises(GeometryError):
        chart_transition(1, 0, (0,), N=2, sedentarity=(1,))


def test_divisorial_vectors():
    assert divisorial_vector(2, (), 0, 1) == (-1, 0)
    assert divisorial_vector(2, (), 0, 0) == (1, 1)
    assert divisorial_vector(3, (1,), 0, 3) == (0, -1)


def test_line_structure(line):
    assert len(line.faces) == 7
    assert line.dim() == 1
    mob = [i for i in range(7) if not line.faces[i].sed]
    assert len(mob) == 4


def test_star_fans(line):
    vid = next(i for i in range(7) if not line.faces[i].sed and line.face_dim(i) == 0)
    assert rays_of(star_fan(line, vid)) == [(-1, 0), (0, -1), (1, 1)]
    rid = next(i for i in range(7) if not line.faces[i].sed and line.face_dim(i) == 1)
    f = star_fan(line, rid)
    assert f.dim() == 1 and len(f.cones) == 1
    eid = next(i for i in range(7) if line.faces[i].sed)
    z = star_fan(line, eid)
    assert z.dim() == 0


def test_star_contains_own_tangent_cone(line, plane):
    for x in (line, plane):
        for fid in range(len(x.faces)):
            fan = star_fan(x, fid)
            assert any(c.dim() == x.face_dim(fid) for c in fan.cones)


def test_relative_fans(line, plane):
    rid = next(i for i in range(7) if not line.faces[i].sed and line.face_dim(i) == 1)
    assert relative_fan(line, rid).dim() == 0
    vid = next(i for i in range(7) if not line.faces[i].sed and line.face_dim(i) == 0)
    assert rays_of(relative_fan(line, vid)) == [(-1, 0), (0, -1), (1, 1)]
    ray3 = next(i for i in range(len(plane.faces))
                if not plane.faces[i].sed and plane.face_dim(i) == 1)
    rr = rays_of(relative_fan(plane, ray3))
    assert len(rr) == 3
    assert tuple(map(sum, zip(*rr))) == (0, 0)
    # sedentary face: computed at the mobile parent, here a facet
    sed_pt = next(i for i in range(7) if line.faces[i].sed)
    f = relative_fan(line, sed_pt)
    assert f.dim() == 0 and f.rank == 1


def test_family_posets(line, plane):
    vid = next(i for i in range(7) if not line.faces[i].sed and line.face_dim(i) == 0)
    assert len(family_poset(line, vid)) == 1  # bounded face, no divisorial rays
    sed_pt = next(i for i in range(7) if line.faces[i].sed)
    with pytest.raises(GeometryError):
        family_poset(line, sed_pt)
    rid = next(i for i in range(7) if not line.faces[i].sed and line.face_dim(i) == 1)
    assert len(family_poset(line, rid)) == 2
    two = next(i for i in range(len(plane.faces))
               if not plane.faces[i].sed and plane.face_dim(i) == 2)
    fam = family_poset(plane, two)
    assert len(fam) == 4
    assert sorted(len(k) for k in fam) == [0, 1, 1, 2]


def test_balanced(line, plane):
    assert is_balanced(line) == (True, [])
    assert is_balanced(plane)[0]
    v = make_face(2, (), [(0, 0)], [])
    r1 = make_face(2, (), [(0, 0)], [1])
    r2 = make_face(2, (), [(0, 0)], [2])
    bad = TropicalComplex(2, [v, r1, r2, r1.j_limit(1), r2.j_limit(2)])
    ok, viols = is_balanced(bad)
    assert not ok and len(viols) == 1


def test_fan_linear_space_examples(line, plane):
    # N=3, k=1: 4 rays from the vertex
    l3 = fan_linear_space([0, 0, 0], 1, 3)
    mob1 = [i for i in range(len(l3.faces))
            if not l3.faces[i].sed and l3.face_dim(i) == 1]
    assert len(mob1) == 4
    with pytest.raises(GeometryError):
        fan_linear_space([0, 0], 2, 2)
    # restriction to a depth-1 stratum is a fan-like space of dimension k-1
    strat = [i for i in range(len(plane.faces)) if plane.faces[i].sed == (1,)]
    assert max(plane.face_dim(i) for i in strat) == 1
    sub = [i for i in strat if plane.face_dim(i) == 1]
    assert len(sub) == 3  # a tropical line inside the stratum


def test_support_equal_cases(line):
    vid = next(i for i in range(7) if not line.faces[i].sed and line.face_dim(i) == 0)
    f = star_fan(line, vid)
    assert support_equal(f, f)
    partial = Fan(rank=2, cones=(Cone(rays=((-1, 0),), rank=2),
                                 Cone(rays=((0, -1),), rank=2)))
    assert not support_equal(f, partial)
    refined = Fan(rank=2, cones=(Cone(rays=((-1, 0),), rank=2),
                                 Cone(rays=((-2, 0),), rank=2),
                                 Cone(rays=((0, -1),), rank=2),
                                 Cone(rays=((1, 1),), rank=2)))
    assert support_equal(f, refined)
    assert support_equal(refined, f)


def test_is_smooth_at_examples(line, plane):
    vid = next(i for i in range(7) if not line.faces[i].sed and line.face_dim(i) == 0)
    rid = next(i for i in range(7) if not line.faces[i].sed and line.face_dim(i) == 1)
    assert is_smooth_at(line, vid, Matroid.uniform(2, 3))
    assert is_smooth_at(line, rid, Matroid.uniform(1, 1))
    assert not is_smooth_at(line, vid, Matroid.uniform(2, 4))
    apex = next(i for i in range(len(plane.faces))
                if not plane.faces[i].sed and plane.face_dim(i) == 0)
    assert is_smooth_at(plane, apex, Matroid.uniform(3, 4))


def test_projective_space_census(tp1):
    assert len(tp1.faces) == 5
    p2 = projective_space(2)
    dims = sorted(p2.face_dim(i) for i in range(len(p2.faces)))
    assert dims.count(2) == 3  # three 2-cells cover TP^2


def test_json_roundtrip(line, tmp_path):
    path = tmp_path / "line.json"
    line.save(str(path))
    again = TropicalComplex.load(str(path))
    assert [f.key() for f in again.faces] == [f.key() for f in line.faces]
    assert again.down == line.down
    path2 = tmp_path / "line2.json"
    again.save(str(path2))
    assert path.read_bytes() == path2.read_bytes()


def test_face_validation_errors():
    with pytest.raises(GeometryError):
        make_face(2, (0, 1, 2), [()], [])          # no chart left
    with pytest.raises(GeometryError):
        make_face(2, (0,), [(0,)], [0])            # divisorial meets sedentarity
    with pytest.raises(GeometryError):
        TropicalComplex(2, [make_face(2, (), [(0, 0)], [1])])  # missing limit face
