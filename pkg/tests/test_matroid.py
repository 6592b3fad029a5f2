import pytest

from trophomology.cosheaf import fan_coefficient_space
from trophomology.matroid import (
    Matroid,
    MatroidError,
    bergman_complex,
    bergman_fan,
    flats,
    is_loopless,
    matroid_from_json,
    matroid_to_json,
    os_betti,
    whitney_polynomial,
)
from trophomology.tropgeo import fan_is_balanced, is_balanced


def test_loopless():
    assert is_loopless(Matroid.uniform(2, 3))
    assert is_loopless(Matroid.free(2))
    looped = Matroid.from_rank_table(2, {0: 0, 1: 0, 2: 1, 3: 1})
    assert not is_loopless(looped)


def test_rank_table_validation():
    with pytest.raises(MatroidError):
        Matroid.from_rank_table(1, {0: 0, 1: 2})
    with pytest.raises(MatroidError):
        Matroid.from_rank_table(2, {0: 0, 1: 1, 2: 1, 3: 0})


def test_bases_roundtrip():
    m = Matroid.from_bases(3, [[0, 1], [0, 2], [1, 2]])
    assert m.full_rank == 2
    assert m.rank([0]) == 1
    assert m.rank([0, 1, 2]) == 2
    with pytest.raises(MatroidError):
        Matroid.from_bases(3, [[0], [1, 2]])


def test_flats_u23():
    lat = flats(Matroid.uniform(2, 3))
    grouped = {}
    for f, r in zip(lat.flats, lat.ranks):
        grouped.setdefault(r, []).append(f)
    assert len(grouped[0]) == 1 and len(grouped[1]) == 3 and len(grouped[2]) == 1
    assert lat.mobius[0] == 1
    assert sorted(lat.mobius) == [-1, -1, -1, 1, 2]


def test_flats_u34_and_free():
    lat = flats(Matroid.uniform(3, 4))
    counts = {}
    for r in lat.ranks:
        counts[r] = counts.get(r, 0) + 1
    assert counts == {0: 1, 1: 4, 2: 6, 3: 1}
    free2 = flats(Matroid.free(2))
    assert len(free2.flats) == 4  # all subsets


def test_whitney_and_betti():
    assert whitney_polynomial(Matroid.uniform(2, 3)) == [1, 3, 2]
    assert os_betti(Matroid.uniform(2, 3)) == [1, 2]
    assert os_betti(Matroid.uniform(3, 4)) == [1, 3, 3]
    assert os_betti(Matroid.free(2)) == [1, 1]
    assert os_betti(Matroid.free(3)) == [1, 2, 1]
    k4 = Matroid.graphic(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    assert whitney_polynomial(k4) == [1, 6, 11, 6]
    assert os_betti(k4) == [1, 5, 6]


def test_betti_b0_and_half_sum():
    for m in [Matroid.uniform(2, 3), Matroid.uniform(3, 4), Matroid.free(3)]:
        b = os_betti(m)
        assert b[0] == 1
        assert 2 * sum(b) == sum(whitney_polynomial(m))


def test_bergman_u23():
    fan = bergman_fan(Matroid.uniform(2, 3))
    rays = sorted({c.rays[0] for c in fan.cones if c.dim() == 1})
    assert rays == [(-1, -1), (0, 1), (1, 0)]
    assert fan.dim() == 1
    assert fan_is_balanced(fan)


def test_bergman_u34():
    fan = bergman_fan(Matroid.uniform(3, 4))
    rays = {c.rays[0] for c in fan.cones if c.dim() == 1}
    assert len(rays) == 10
    assert len([c for c in fan.cones if c.dim() == 2]) == 12
    assert fan.dim() == 2
    assert fan_is_balanced(fan)


def test_bergman_free2():
    fan = bergman_fan(Matroid.free(2))
    rays = sorted({c.rays[0] for c in fan.cones if c.dim() == 1})
    assert rays == [(-1,), (1,)]


def test_bergman_dim_is_rank_minus_one(matroids):
    for m in matroids.values():
        fan = bergman_fan(m)
        assert fan.dim() == m.full_rank - 1
        assert fan_is_balanced(fan)


def test_os_duality_at_apex(matroids):
    for m in matroids.values():
        fan = bergman_fan(m)
        b = os_betti(m)
        dims = [len(fan_coefficient_space(fan, p)) for p in range(m.full_rank)]
        assert dims == b


def test_bergman_closure_u34_balanced():
    x = bergman_complex(Matroid.uniform(3, 4))
    ok, bad = is_balanced(x)
    assert ok and x.N == 3 and x.dim() == 2


def test_bergman_closure_rejects_nonuniform_support():
    k4 = Matroid.graphic(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    with pytest.raises(Exception):
        bergman_complex(k4)


def test_matroid_json_roundtrip():
    m = Matroid.uniform(2, 3)
    again = matroid_from_json(matroid_to_json(m))
    assert again._rank == m._rank
    viabases = matroid_from_json({"ground": 3, "bases": [[0, 1], [0, 2], [1, 2]]})
    assert viabases._rank == m._rank
