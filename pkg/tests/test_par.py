import random
from fractions import Fraction

import pytest

from parprivacy import (DistributionError, SizeLimitError, bisection_protocol,
                        build_table, compute_par, ideal_partition,
                        optimal_par, optimal_par_over_perms,
                        perfect_boolean_protocol, random_protocol,
                        refine_random_leaf, threeparty_growth,
                        uniform_distribution, validate_dissection)
from parprivacy.gallery import (GallerySpec, make,
                                notile_adversarial_distribution)

from oracles import best_cut_tree_value, table_grid


def test_equality_k3_bisection_closed_forms():
    table = make(GallerySpec("equality", k=3)).table
    rep = compute_par(table, bisection_protocol(table))
    assert rep.average == Fraction(25, 4)
    assert rep.worst == 28
    assert rep.leaf_count == 22
    assert rep.max_fragments == max(rep.fragment_counts)


def test_perfect_protocol_scores_one():
    table = make(GallerySpec("parity", k=3)).table
    rep = compute_par(table, perfect_boolean_protocol(table),
                      protocol_label="perfect")
    assert rep.average == 1 and rep.worst == 1
    assert rep.protocol == "perfect"


def test_average_under_explicit_distribution():
    table = make(GallerySpec("notile", k=2)).table
    tree = bisection_protocol(table)
    for c in (Fraction(1, 4), Fraction(1, 2)):
        dist = notile_adversarial_distribution(c)
        rep = compute_par(table, tree, dist=dist)
        uniform = compute_par(table, tree)
        # loading the dominoes can only push the average up
        assert rep.average >= uniform.average
        assert rep.worst == uniform.worst


def test_report_invariants_on_random_protocols():
    rng = random.Random(2)
    for _ in range(15):
        k = rng.choice((1, 2))
        n = 2 ** k
        cells = [rng.randrange(3) for _ in range(n * n)]
        table = build_table(2, k, lambda xy, c=cells, n=n: c[xy[0] * n + xy[1]])
        rep = compute_par(table, random_protocol(table, rng))
        assert 1 <= rep.average <= rep.worst
        total = sum(t * y for t, y in zip(rep.fragment_counts, rep.region_sizes))
        assert rep.average == Fraction(total, table.cell_count())
        assert sum(rep.fragment_counts) == rep.leaf_count


def test_optimal_matches_brute_force_oracle():
    rng = random.Random(13)
    for _ in range(12):
        k = rng.choice((1, 2))
        n = 2 ** k
        cells = [rng.randrange(3) for _ in range(n * n)]
        table = build_table(2, k, lambda xy, c=cells, n=n: c[xy[0] * n + xy[1]])
        grid = table_grid(table)
        for objective in ("avg", "worst"):
            got = optimal_par(table, objective)
            want = best_cut_tree_value(grid, objective)
            assert got.value == want
            check = validate_dissection(got.tree, table)
            assert check.ok, check.message
            rep = compute_par(table, got.tree)
            achieved = rep.average if objective == "avg" else rep.worst
            assert achieved == got.value


def test_optimal_on_boolean_tiling_is_one():
    table = make(GallerySpec("random_boolean_tiling", k=3, seed=4)).table
    assert optimal_par(table, "avg").value == 1
    assert optimal_par(table, "worst").value == 1


def test_optimal_dominates_constructed_protocols():
    rng = random.Random(21)
    table = make(GallerySpec("set_covering", k=2)).table
    best = optimal_par(table, "avg").value
    assert best <= compute_par(table, bisection_protocol(table)).average
    for _ in range(10):
        assert best <= compute_par(table, random_protocol(table, rng)).average


def test_refinement_monotonicity():
    rng = random.Random(31)
    table = make(GallerySpec("set_covering", k=2)).table
    rm = ideal_partition(table)
    for _ in range(50):
        tree = random_protocol(table, rng)
        refined = refine_random_leaf(tree, table, rng)
        if refined is None:
            continue
        before = compute_par(table, tree, region_map=rm)
        after = compute_par(table, refined, region_map=rm)
        assert after.average >= before.average
        assert after.worst >= before.worst


def test_optimal_with_general_distribution():
    table = make(GallerySpec("notile", k=2)).table
    for c in (Fraction(1, 4), Fraction(1, 2)):
        dist = notile_adversarial_distribution(c)
        res = optimal_par(table, "avg", dist=dist)
        assert res.value == (9 + c) / 8
        # the oracle agrees under the same weights
        weights = {}
        for pos in table.bounds().cells():
            weights[pos] = dist.weight_of(table.inputs_at(pos))
        assert best_cut_tree_value(table_grid(table), "avg",
                                   weights=weights) == res.value


def test_unreduced_weights_give_identical_results():
    from parprivacy import Distribution
    table = make(GallerySpec("notile", k=2)).table
    dist = notile_adversarial_distribution(Fraction(1, 4))
    scaled = Distribution(2, 2, [7 * v for v in dist.nums], 7 * dist.den)
    assert scaled == dist
    assert optimal_par(table, "avg", dist=scaled).value == \
        optimal_par(table, "avg", dist=dist).value


def test_worst_objective_rejects_distributions():
    table = make(GallerySpec("notile", k=2)).table
    with pytest.raises(DistributionError):
        optimal_par(table, "worst",
                    dist=notile_adversarial_distribution(Fraction(1, 4)))
    # uniform is fine (a no-op for the worst case)
    assert optimal_par(table, "worst", dist=uniform_distribution(2, 2)).value >= 1


def test_size_caps_enforced():
    table = build_table(2, 6, lambda xy: 0)
    with pytest.raises(SizeLimitError):
        optimal_par(table, "avg")
    with pytest.raises(SizeLimitError):
        threeparty_growth(1, 4)
    with pytest.raises(SizeLimitError):
        optimal_par(build_table(4, 1, lambda t: 0), "avg")


def test_perm_sweep_constant_function_is_one():
    table = build_table(2, 1, lambda xy: "v")
    sweep = optimal_par_over_perms(table, "avg")
    assert sweep.value == 1 and sweep.exhaustive and sweep.tried == 4


def test_perm_sweep_sampling_is_seeded():
    table = make(GallerySpec("hless", k=4)).table
    a = optimal_par_over_perms(table, "worst", perm_budget=0, sample_size=3, seed=5)
    b = optimal_par_over_perms(table, "worst", perm_budget=0, sample_size=3, seed=5)
    assert (a.value, a.tried, a.exhaustive) == (b.value, b.tried, False)
    assert [p.order for p in a.perms] == [p.order for p in b.perms]


def test_perm_sweep_threads_match_serial():
    table = make(GallerySpec("notile", k=2)).table
    serial = optimal_par_over_perms(table, "avg", perm_budget=0,
                                    sample_size=8, seed=1, threads=1)
    threaded = optimal_par_over_perms(table, "avg", perm_budget=0,
                                      sample_size=8, seed=1, threads=4)
    assert serial.value == threaded.value
    assert [p.order for p in serial.perms] == [p.order for p in threaded.perms]


@pytest.mark.parametrize("k,alpha", [(2, Fraction(13, 8)),
                                     (3, Fraction(79, 32))])
def test_threeparty_bisection_dominated_by_optimal(k, alpha):
    table = make(GallerySpec("paterson_yao_3d", k=k)).table
    optimal = optimal_par(table, "avg").value
    assert optimal == alpha
    rep = compute_par(table, bisection_protocol(table))
    assert rep.average >= optimal


def test_threeparty_growth_values():
    growth = threeparty_growth(1, 2)
    assert [(r.k, r.value) for r in growth.rows] == \
        [(1, Fraction(5, 4)), (2, Fraction(13, 8))]
    assert growth.ratios() == [(2, Fraction(13, 10))]


def test_report_serialization():
    table = make(GallerySpec("equality", k=2)).table
    rep = compute_par(table, bisection_protocol(table),
                      protocol_label="bisection")
    data = rep.to_json_dict()
    assert data["average"] == {"num": 5, "den": 2}
    row = rep.to_csv_row("equality", 2, 2)
    assert row[:5] == ["equality", 2, 2, "bisection", "uniform"]
    assert len(row) == len(rep.CSV_COLUMNS)
