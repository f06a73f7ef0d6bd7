import json
import random
from collections import Counter
from fractions import Fraction
from itertools import product

import pytest

from parprivacy import (Internal, Leaf, NotBooleanTilingError, ProtocolTree,
                        bisection_protocol,
                        bounded_bisection_protocol, build_table,
                        c_bisection_protocol, ideal_partition,
                        perfect_boolean_protocol, random_protocol,
                        run_protocol, validate_dissection)
from parprivacy.gallery import GallerySpec, make
from parprivacy.protocol import BisectionVariant, bisection_family

from oracles import par_of_leaves, table_grid


def _leaf_sizes(run):
    return sorted(info.rect.volume() for info in run.leaves)


def test_bisection_equality_k2_leaves():
    table = make(GallerySpec("equality", k=2)).table
    run = run_protocol(bisection_protocol(table), table)
    assert run.leaf_count() == 10
    assert _leaf_sizes(run) == [1] * 8 + [4, 4]
    values = Counter(table.alphabet[i.value] for i in run.leaves
                     if i.rect.volume() == 1)
    assert values == {"0": 4, "1": 4}  # off-diagonal and diagonal singletons


def test_bisection_equality_k3_dyadic_structure():
    k = 3
    table = make(GallerySpec("equality", k=k)).table
    run = run_protocol(bisection_protocol(table), table)
    off_diag = Counter(i.rect.volume() for i in run.leaves
                       if table.alphabet[i.value] == "0")
    # for each i < k: 2^(k-i) blocks of size 2^(2i) off the diagonal
    assert off_diag == {2 ** (2 * i): 2 ** (k - i) for i in range(k)}
    diag = [i for i in run.leaves if table.alphabet[i.value] == "1"]
    assert len(diag) == 2 ** k
    assert all(i.rect.volume() == 1 for i in diag)


def test_bisection_set_covering_k2_matches_contribution_table():
    table = make(GallerySpec("set_covering", k=2)).table
    rm = ideal_partition(table)
    run = run_protocol(bisection_protocol(table), table)
    assert run.leaf_count() == 13
    contributions = Counter(rm.region_at(i.rect.lo).size for i in run.leaves)
    # one 2x2 block leaf plus twelve singletons: {6} + {6,9,9,9}*2 + {1,9,9,9}
    assert contributions == {6: 3, 9: 9, 1: 1}
    assert sum(rm.region_at(i.rect.lo).size for i in run.leaves) == 100


def test_constant_table_single_leaf_empty_transcript():
    table = build_table(2, 2, lambda xy: "v")
    run = run_protocol(bisection_protocol(table), table)
    assert run.leaf_count() == 1
    t = run.transcript_at((1, 3))
    assert t.steps == () and t.render() == "-> v"


def test_half_bisection_equals_plain_bisection():
    table = make(GallerySpec("equality", k=3)).table
    assert c_bisection_protocol(table, Fraction(1, 2)) == bisection_protocol(table)


def test_c_bisection_splits_at_ceiling():
    variant = BisectionVariant("c-bisection", c=Fraction(2, 3))
    # interval of 6: first part ceil(4) -> cut after lo+3
    assert variant.cut_point(0, 5, 1) == 3
    # degenerate rounding is clamped so both halves stay nonempty
    assert BisectionVariant("c-bisection", c=Fraction(9, 10)).cut_point(0, 1, 1) == 0


def test_invariant_axis_is_never_cut():
    table = make(GallerySpec("f1", k=3)).table  # depends on party 2 only
    tree = bisection_protocol(table)

    def parties(node):
        if isinstance(node, Leaf):
            return set()
        return {node.party} | parties(node.low) | parties(node.high)

    assert parties(tree.root) == {1}


@pytest.mark.parametrize("spec", [
    GallerySpec("set_covering", k=2),
    GallerySpec("equality", k=3),
    GallerySpec("equality", k=4),
])
def test_transcript_classes_equal_leaf_classes(spec):
    table = make(spec).table
    run = run_protocol(bisection_protocol(table), table)
    cells = list(product(range(table.n), repeat=2))
    for a in cells:
        for b in cells:
            same_leaf = run.leaf_at(a).rect == run.leaf_at(b).rect
            same_transcript = run.transcript_at(a) == run.transcript_at(b)
            assert same_leaf == same_transcript


def test_transcript_render_format():
    table = make(GallerySpec("equality", k=1)).table
    run = run_protocol(bisection_protocol(table), table)
    text = run.transcript_at((0, 0)).render()
    assert text == "P1:0 P2:0 -> 1"


def test_run_against_oracle_definitions():
    rng = random.Random(3)
    for _ in range(10):
        k = rng.choice((1, 2))
        n = 2 ** k
        cells = [rng.randrange(3) for _ in range(n * n)]
        table = build_table(2, k, lambda xy, c=cells, n=n: c[xy[0] * n + xy[1]])
        run = run_protocol(bisection_protocol(table), table)
        leaves = [(i.rect.lo, i.rect.hi) for i in run.leaves]
        avg, worst = par_of_leaves(table_grid(table), leaves)
        from parprivacy import compute_par
        rep = compute_par(table, bisection_protocol(table))
        assert (rep.average, rep.worst) == (avg, worst)


def test_perfect_protocol_checkerboard():
    cells = {(0, 0): "0", (0, 1): "1", (1, 0): "1", (1, 1): "0"}
    table = build_table(2, 1, lambda xy: cells[xy])
    tree = perfect_boolean_protocol(table)
    assert tree.leaf_count() == 4
    assert tree.to_json_dict().keys() == {"party", "cut_after", "low", "high"}
    run = run_protocol(tree, table)
    assert _leaf_sizes(run) == [1, 1, 1, 1]


def test_perfect_protocol_single_cut_for_edge_strip():
    k = 3
    n = 2 ** k
    table = build_table(2, k, lambda xy: int(xy[0] == n - 1))
    tree = perfect_boolean_protocol(table)
    assert tree.leaf_count() == 2 and tree.height() == 1
    assert isinstance(tree.root, Internal) and tree.root.party == 0
    assert tree.root.cut_after == n - 2


def test_perfect_protocol_on_random_tilings_matches_ideal():
    for seed in range(8):
        table = make(GallerySpec("random_boolean_tiling", k=4, seed=seed)).table
        rm = ideal_partition(table)
        run = run_protocol(perfect_boolean_protocol(table), table)
        assert sorted((i.rect.lo, i.rect.hi) for i in run.leaves) == \
            sorted((r.bbox.lo, r.bbox.hi) for r in rm.regions)


def test_perfect_protocol_preconditions():
    with pytest.raises(NotBooleanTilingError):
        perfect_boolean_protocol(make(GallerySpec("equality", k=2)).table)
    with pytest.raises(NotBooleanTilingError):
        perfect_boolean_protocol(make(GallerySpec("notile", k=2)).table)
    with pytest.raises(NotBooleanTilingError):
        perfect_boolean_protocol(build_table(3, 1, lambda xyz: 0))


def test_validate_dissection_reports_violations():
    table = make(GallerySpec("equality", k=1)).table
    good = bisection_protocol(table)
    assert validate_dissection(good, table).ok

    not_mono = ProtocolTree(Internal(0, 0, Leaf("1"), Leaf("0")))
    check = validate_dissection(not_mono, table)
    assert not check.ok and "monochromatic" in check.message

    bad_cut = ProtocolTree(Internal(0, 1, Leaf("1"), Leaf("0")))
    check = validate_dissection(bad_cut, table)
    assert not check.ok and "outside" in check.message

    table2 = build_table(2, 1, lambda xy: "v")
    wrong_value = ProtocolTree(Leaf("w"))
    check = validate_dissection(wrong_value, table2)
    assert not check.ok and "announces" in check.message


def test_leaves_refine_tilings():
    for spec in (GallerySpec("parity", k=3), GallerySpec("hless", k=4)):
        table = make(spec).table
        rm = ideal_partition(table)
        run = run_protocol(bisection_protocol(table), table)
        for info in run.leaves:
            region = rm.region_at(info.rect.lo)
            assert region.bbox.contains_rect(info.rect)


def test_bounded_bisection_switches_to_peeling():
    table = make(GallerySpec("f2", k=4, g=1)).table
    run = run_protocol(bounded_bisection_protocol(table, 1), table)
    widths = sorted(info.rect.axis_len(1) for info in run.leaves)
    # one midpoint block, then single-column peels, then the remainder
    assert widths == [1, 1, 1, 1, 4, 8]


def test_alternate_scheduling_also_valid():
    table = make(GallerySpec("set_covering", k=2)).table
    tree = bisection_family(table, scheduling="alternate")
    assert validate_dissection(tree, table).ok
    rounds = bisection_family(table, scheduling="rounds")
    assert run_protocol(tree, table).leaf_count() != 0
    assert tree != rounds  # single-cut turns produce a different tree shape


def test_protocol_json_roundtrip_preserves_tiling():
    table = make(GallerySpec("set_covering", k=2)).table
    tree = bisection_protocol(table)
    loaded = ProtocolTree.from_json_dict(json.loads(json.dumps(tree.to_json_dict())))
    assert loaded == tree
    a = run_protocol(tree, table)
    b = run_protocol(loaded, table)
    assert [i.rect for i in a.leaves] == [i.rect for i in b.leaves]


def test_random_protocols_are_valid():
    rng = random.Random(9)
    table = make(GallerySpec("set_covering", k=2)).table
    for _ in range(20):
        tree = random_protocol(table, rng)
        assert validate_dissection(tree, table).ok
