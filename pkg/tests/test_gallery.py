from collections import Counter
from fractions import Fraction

import pytest

from parprivacy import (GalleryError, ideal_partition, tiling_info,
                        validate_c_approx)
from parprivacy.gallery import (GALLERY_NAMES, GallerySpec, make,
                                notile_adversarial_distribution,
                                paterson_yao_nontrivial, setcov_recurrence)


def test_setcov_recurrence_values():
    assert setcov_recurrence(0, 0, 2) == 9
    assert setcov_recurrence(1, 2, 2) == 33
    assert setcov_recurrence(1, 1, 2) == 28
    assert setcov_recurrence(2, 2, 2) == 6 + 66 + 28 == 100
    for k in range(1, 7):
        assert setcov_recurrence(k, k, k) >= 3 ** (2 * k)
    with pytest.raises(GalleryError):
        setcov_recurrence(3, 1, 2)


def test_set_covering_k1_grid():
    table = make(GallerySpec("set_covering", k=1)).table
    grid = [[table.symbol_at((x, y)) for y in range(2)] for x in range(2)]
    assert grid == [["0", "1"], ["1", "1"]]


@pytest.mark.parametrize("spec", [
    GallerySpec("parity", k=2),
    GallerySpec("parity", k=3),
    GallerySpec("f1", k=3),
    GallerySpec("f2", k=4, g=2),
    GallerySpec("notile", k=2),
    GallerySpec("hless", k=2),
    GallerySpec("hless", k=4),
    GallerySpec("paterson_yao_3d", k=1),
    GallerySpec("paterson_yao_3d", k=2),
    GallerySpec("random_boolean_tiling", k=3, seed=0),
])
def test_ideal_partition_recovers_intended_tiles(spec):
    result = make(spec)
    assert result.tiles is not None
    total = sum(t.volume() for t in result.tiles)
    assert total == result.table.cell_count()
    rm = ideal_partition(result.table)
    assert sorted((r.bbox.lo, r.bbox.hi) for r in rm.regions) == \
        sorted((t.lo, t.hi) for t in result.tiles)
    assert tiling_info(rm).is_tiling


def test_equality_region_size_profile():
    for k in (1, 2, 3):
        table = make(GallerySpec("equality", k=k)).table
        sizes = sorted(r.size for r in ideal_partition(table).regions)
        big = 2 ** (2 * k - 1) - 2 ** (k - 1)
        assert sizes == sorted([1] * 2 ** k + [big, big])


def test_f1_has_two_stripes_and_f2_three():
    f1 = make(GallerySpec("f1", k=3))
    assert len(f1.tiles) == 2
    assert ideal_partition(f1.table).region_count() == 2
    f2 = make(GallerySpec("f2", k=4, g=1))
    assert len(f2.tiles) == 3
    assert ideal_partition(f2.table).region_count() == 3
    # the distinguished column sits just below the midpoint of the last block
    assert f2.tiles[1].lo[1] == f2.tiles[1].hi[1] == 16 - 4 - 1


def test_notile_structure():
    result = make(GallerySpec("notile", k=2))
    sizes = Counter(t.volume() for t in result.tiles)
    assert sizes == {1: 8, 2: 4}
    assert len(result.table.alphabet) == 12  # one value per tile
    dist = notile_adversarial_distribution(Fraction(1, 2))
    weights = Counter(dist.weights)
    assert weights == {Fraction(3, 32): 8, Fraction(1, 32): 8}
    # weights sit at uniform +- c/16, so pairwise differences reach 2c/16:
    # near-uniform at parameter 2c, not c
    check = validate_c_approx(dist, Fraction(1, 2))
    assert not check.ok and check.max_diff == Fraction(1, 16)
    assert validate_c_approx(dist, Fraction(1, 1)).ok
    with pytest.raises(GalleryError):
        make(GallerySpec("notile", k=3))


def test_hless_structure():
    result = make(GallerySpec("hless", k=4))
    tiles = result.tiles
    assert len(tiles) == 8 + 4 * 6 + 1
    ring_halves = sorted(t.volume() for t in tiles[:8])
    assert ring_halves == [7, 7, 7, 7, 8, 8, 8, 8]
    assert tiles[-1].volume() == 4  # central 2x2 block
    assert len(result.table.alphabet) <= 8
    # side-sharing tiles carry distinct values
    rm = ideal_partition(result.table)
    assert rm.region_count() == len(tiles)
    with pytest.raises(GalleryError):
        make(GallerySpec("hless", k=3))
    with pytest.raises(GalleryError):
        make(GallerySpec("hless", k=1))


def test_hless_outer_ring_splits_are_staggered():
    n = 16
    tiles = make(GallerySpec("hless", k=4)).tiles
    column_splits = sorted(t.hi[0] for t in tiles[:8] if t.lo[1] == t.hi[1] == 0
                           or t.lo[1] == t.hi[1] == n - 1)
    row_like = [t for t in tiles[:8] if t.lo[0] == t.hi[0]]
    assert len(row_like) == 4
    # left column splits after row 7, right column after row 8
    left = sorted(t.hi[0] for t in tiles[:2])
    right = sorted(t.hi[0] for t in tiles[4:6])
    assert left == [7, 14]
    assert right == [8, 15]


def test_paterson_yao_structure():
    for k in (1, 2):
        result = make(GallerySpec("paterson_yao_3d", k=k))
        n = 2 ** k
        slabs = [t for t in result.tiles if t.volume() > 1]
        units = [t for t in result.tiles if t.volume() == 1]
        assert len(slabs) == 3 * 4 ** (k - 1)
        assert all(t.volume() == n for t in slabs)
        assert len(units) == n ** 3 - len(slabs) * n
        assert sum(t.volume() for t in result.tiles) == n ** 3
    assert len(paterson_yao_nontrivial(2)) == 12
    # one value per tile keeps every slab its own region
    table = make(GallerySpec("paterson_yao_3d", k=2)).table
    assert len(table.alphabet) == 12 + 16


def test_random_boolean_tiling_is_deterministic_and_boolean():
    a = make(GallerySpec("random_boolean_tiling", k=4, seed=12))
    b = make(GallerySpec("random_boolean_tiling", k=4, seed=12))
    assert a.table == b.table
    assert set(a.table.alphabet) <= {"0", "1"}
    assert tiling_info(ideal_partition(a.table)).is_tiling
    c = make(GallerySpec("random_boolean_tiling", k=4, seed=13))
    assert c.table != a.table


def test_make_validates_parameters():
    with pytest.raises(GalleryError):
        make(GallerySpec("no_such_function", k=2))
    with pytest.raises(GalleryError):
        make(GallerySpec("f2", k=3))           # missing g
    with pytest.raises(GalleryError):
        make(GallerySpec("f2", k=3, g=3))      # g out of range
    with pytest.raises(GalleryError):
        make(GallerySpec("random_boolean_tiling", k=3))  # missing seed
    with pytest.raises(GalleryError):
        make(GallerySpec("equality", k=0))


def test_every_gallery_name_builds():
    for name in GALLERY_NAMES:
        spec = GallerySpec(name, k=2, g=1 if name == "f2" else None,
                           seed=0 if name == "random_boolean_tiling" else None)
        table = make(spec).table
        assert table.cell_count() == 4 ** table.d
