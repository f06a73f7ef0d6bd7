"""Privacy approximation ratios: exact protocol scoring and the optimal-cut DP.

The average-case ratio weighs each input's ideal-region/protocol-leaf size
ratio by its probability; the worst case takes the maximum over all inputs.
``optimal_par`` minimizes over every single-cut recursive dissection (any
party may cut at any node) by memoized DP over sub-hyper-rectangles, and is
the brute-force oracle the verification suite leans on.
"""

from __future__ import annotations

import itertools
import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import kernels
from .errors import DistributionError, ProtocolExecutionError, SizeLimitError
from .grid import Distribution, FunctionTable, HyperRect, Permutation, uniform_distribution
from .partition import RegionMap, ideal_partition
from .protocol import Internal, Leaf, ProtocolTree, run_protocol

#: Exhaustive-DP grid caps: all sub-hyper-rectangles are memoized.
DP_K_CAP = {2: 5, 3: 3}

#: Cell cap for the rational-weight DP path (arbitrary distributions or
#: carried region sizes with the average objective).
GENERAL_DP_CELL_CAP = 256


@dataclass(frozen=True)
class ParReport:
    average: Fraction
    worst: Fraction
    region_sizes: tuple[int, ...]        # ideal-region sizes y_i, by region id
    fragment_counts: tuple[int, ...]     # protocol leaves per ideal region t_i
    leaf_count: int
    height: int
    protocol: str
    distribution: str

    @property
    def max_fragments(self) -> int:
        return max(self.fragment_counts, default=0)

    def to_json_dict(self) -> dict:
        return {
            "protocol": self.protocol,
            "distribution": self.distribution,
            "average": {"num": self.average.numerator,
                        "den": self.average.denominator},
            "worst": {"num": self.worst.numerator,
                      "den": self.worst.denominator},
            "leaves": self.leaf_count,
            "height": self.height,
            "max_fragments": self.max_fragments,
            "region_sizes": list(self.region_sizes),
            "fragment_counts": list(self.fragment_counts),
        }

    CSV_COLUMNS = ("function", "k", "d", "protocol", "distribution",
                   "avg_num", "avg_den", "worst_num", "worst_den",
                   "leaves", "height", "max_fragments")

    def to_csv_row(self, function: str, d: int, k: int) -> list:
        return [function, k, d, self.protocol, self.distribution,
                self.average.numerator, self.average.denominator,
                self.worst.numerator, self.worst.denominator,
                self.leaf_count, self.height, self.max_fragments]


def _weight_prefix(table: FunctionTable, dist: Distribution):
    """Prefix sums (python ints, exact) of per-cell weight numerators.

    Returns (flat prefix array over a (n+1)^d grid, strides).
    """
    n, d = table.n, table.d
    nums = dist.cell_nums(table)
    shape = [n + 1] * d
    total = math.prod(shape)
    pre = [0] * total
    strides = [0] * d
    s = 1
    for a in reversed(range(d)):
        strides[a] = s
        s *= n + 1
    for coords in itertools.product(range(n), repeat=d):
        off = sum((c + 1) * strides[a] for a, c in enumerate(coords))
        acc = nums[table.offset(coords)]
        # inclusion-exclusion over already-filled prefix entries
        for corner in itertools.product((0, 1), repeat=d):
            if not any(corner):
                continue
            nb = off - sum(bit * strides[a] for a, bit in enumerate(corner))
            sign = (-1) ** (sum(corner) + 1)
            acc += sign * pre[nb]
        pre[off] = acc
    return pre, strides


def _box_weight(pre, strides, d, lo, hi) -> int:
    total = 0
    for corner in itertools.product((0, 1), repeat=d):
        off = sum((h + 1 if bit else l) * strides[a]
                  for a, (bit, l, h) in enumerate(zip(corner, lo, hi)))
        sign = (-1) ** (d - sum(corner))
        total += sign * pre[off]
    return total


def compute_par(table: FunctionTable, tree: ProtocolTree,
                dist: Distribution | None = None,
                regions: str = "connected",
                region_map: RegionMap | None = None,
                protocol_label: str = "protocol") -> ParReport:
    """Exact average and worst-case ratios of a protocol on a table."""
    dist = dist or uniform_distribution(table.d, table.k)
    if (dist.d, dist.k) != (table.d, table.k):
        raise DistributionError("distribution shape does not match the table")
    rm = region_map or ideal_partition(table, regions)
    run = run_protocol(tree, table)
    pre, strides = _weight_prefix(table, dist)
    frag = [0] * rm.region_count()
    worst = Fraction(0)
    # group leaves by volume so the exact sum needs few big-rational adds
    by_vol: dict[int, int] = {}
    for info in run.leaves:
        region = rm.region_at(info.rect.lo)
        if region.value != info.value:
            raise ProtocolExecutionError(
                "leaf value disagrees with its ideal region")
        frag[region.rid] += 1
        vol = info.rect.volume()
        wnum = _box_weight(pre, strides, table.d, info.rect.lo, info.rect.hi)
        by_vol[vol] = by_vol.get(vol, 0) + region.size * wnum
        ratio = Fraction(region.size, vol)
        if ratio > worst:
            worst = ratio
    avg = sum((Fraction(s, dist.den * vol) for vol, s in sorted(by_vol.items())),
              Fraction(0))
    if dist.is_uniform():
        # accounting identity: the average equals sum(t_i * y_i) / cells
        total = sum(t * r.size for t, r in zip(frag, rm.regions))
        if avg != Fraction(total, table.cell_count()):
            raise ProtocolExecutionError(
                "per-leaf accounting disagrees with the fragment identity")
    return ParReport(avg, worst, tuple(r.size for r in rm.regions),
                     tuple(frag), run.leaf_count(), tree.height(),
                     protocol_label, dist.describe())


@dataclass(frozen=True)
class OptimalPar:
    value: Fraction
    tree: ProtocolTree
    backend: str
    objective: str


def _dp_caps_check(table: FunctionTable, override: bool):
    cap = DP_K_CAP.get(table.d)
    if cap is None:
        raise SizeLimitError(f"optimal-cut DP supports d=2 and d=3, not d={table.d}")
    if table.k > cap and not override:
        raise SizeLimitError(
            f"k={table.k} exceeds the exhaustive-DP cap {cap} for d={table.d} "
            f"(pass ignore_size_cap=True to force)")


def _value_grid(table: FunctionTable) -> np.ndarray:
    return np.asarray(table.values, dtype=np.int64).reshape((table.n,) * table.d)


def _reconstruct(table: FunctionTable, choice, dims) -> ProtocolTree:
    idx = kernels.rect_index(dims)

    def build(lo: tuple[int, ...], hi: tuple[int, ...]):
        raw = int(choice[idx(lo, hi)])
        if raw < 0:
            return Leaf(table.symbol_at(lo))
        axis, cut = kernels.decode_choice(raw)
        lo2 = list(lo)
        hi2 = list(hi)
        hi2[axis] = cut
        low = build(lo, tuple(hi2))
        lo2[axis] = cut + 1
        high = build(tuple(lo2), hi)
        return Internal(axis, cut, low, high)

    full = HyperRect.full(table.d, table.n)
    return ProtocolTree(build(full.lo, full.hi))


def _general_avg_dp(table: FunctionTable, rs_by_cell: Sequence[int],
                    dist: Distribution) -> tuple[Fraction, ProtocolTree]:
    """Rational-weight average DP; handles carried region sizes.

    Memoized over all sub-hyper-rectangles; leaf cost is the weighted sum of
    per-cell region sizes divided by the block volume.
    """
    if table.cell_count() > GENERAL_DP_CELL_CAP:
        raise SizeLimitError(
            f"rational-weight DP capped at {GENERAL_DP_CELL_CAP} cells "
            f"(got {table.cell_count()})")
    d, n = table.d, table.n
    pre, strides = _weight_prefix(table, dist)
    # region-size-weighted prefix: sum of num*rs per cell
    nums = dist.cell_nums(table)
    q_cells = [w * rs for w, rs in zip(nums, rs_by_cell)]

    qpre = [0] * len(pre)
    for coords in itertools.product(range(n), repeat=d):
        off = sum((c + 1) * strides[a] for a, c in enumerate(coords))
        acc = q_cells[table.offset(coords)]
        for corner in itertools.product((0, 1), repeat=d):
            if not any(corner):
                continue
            nb = off - sum(bit * strides[a] for a, bit in enumerate(corner))
            acc += ((-1) ** (sum(corner) + 1)) * qpre[nb]
        qpre[off] = acc

    from .partition import MonoIndex
    mi = MonoIndex(table)
    memo: dict[tuple, tuple[Fraction, object]] = {}

    def solve(lo: tuple[int, ...], hi: tuple[int, ...]):
        key = (lo, hi)
        hit = memo.get(key)
        if hit is not None:
            return hit
        rect = HyperRect(lo, hi)
        if mi.monochromatic(rect):
            q = _box_weight(qpre, strides, d, lo, hi)
            result = (Fraction(q, dist.den * rect.volume()), None)
            memo[key] = result
            return result
        best = None
        pick = None
        for axis in range(d):
            for cut in range(lo[axis], hi[axis]):
                hi2 = list(hi)
                hi2[axis] = cut
                lo2 = list(lo)
                lo2[axis] = cut + 1
                v = solve(lo, tuple(hi2))[0] + solve(tuple(lo2), hi)[0]
                if best is None or v < best:
                    best = v
                    pick = (axis, cut)
        memo[key] = (best, pick)
        return memo[key]

    full = HyperRect.full(d, n)
    value, _ = solve(full.lo, full.hi)

    def build(lo, hi):
        _v, pick = memo[(lo, hi)]
        if pick is None:
            return Leaf(table.symbol_at(lo))
        axis, cut = pick
        hi2 = list(hi)
        hi2[axis] = cut
        lo2 = list(lo)
        lo2[axis] = cut + 1
        return Internal(axis, cut, build(lo, tuple(hi2)), build(tuple(lo2), hi))

    return value, ProtocolTree(build(full.lo, full.hi))


def optimal_par(table: FunctionTable, objective: str,
                dist: Distribution | None = None,
                regions: str = "connected",
                cell_region_sizes: Sequence[int] | None = None,
                ignore_size_cap: bool = False) -> OptimalPar:
    """Minimum average or worst-case ratio over all dissection protocols.

    ``cell_region_sizes`` overrides the per-cell ideal-region sizes (used by
    the permutation sweep to keep the benchmark fixed while the layout
    varies); by default they come from the table's own ideal partition.
    """
    if objective not in ("avg", "worst"):
        raise ValueError(f"objective must be 'avg' or 'worst', not {objective!r}")
    _dp_caps_check(table, ignore_size_cap)
    carried = cell_region_sizes is not None
    if carried:
        rs_by_cell = list(cell_region_sizes)
        if len(rs_by_cell) != table.cell_count():
            raise ValueError("cell_region_sizes length mismatch")
    else:
        rs_by_cell = ideal_partition(table, regions).sizes_by_cell()
    dims = (table.n,) * table.d
    rs_grid = np.asarray(rs_by_cell, dtype=np.int64).reshape(dims)
    backend = kernels.BACKEND

    if objective == "worst":
        if dist is not None and not dist.is_uniform():
            raise DistributionError("the worst-case ratio does not depend on "
                                    "a distribution; pass dist=None")
        fn = kernels.dp2_worst if table.d == 2 else kernels.dp3_worst
        num, den, choice = fn(_value_grid(table), rs_grid)
        return OptimalPar(Fraction(num, den), _reconstruct(table, choice, dims),
                          backend, objective)

    dist = dist or uniform_distribution(table.d, table.k)
    if dist.is_uniform() and not carried:
        fn = kernels.dp2_avg if table.d == 2 else kernels.dp3_avg
        num, den, choice = fn(_value_grid(table), rs_grid)
        return OptimalPar(Fraction(num, den), _reconstruct(table, choice, dims),
                          backend, objective)
    value, tree = _general_avg_dp(table, rs_by_cell, dist)
    return OptimalPar(value, tree, "python-rational", objective)


@dataclass(frozen=True)
class PermSweepResult:
    value: Fraction
    perms: tuple[Permutation, ...]
    exhaustive: bool
    tried: int
    objective: str


def _permuted_arrays(table: FunctionTable, rs_by_input, perms):
    """Value and region-size grids for the raw function under new orderings."""
    n, d = table.n, table.d
    vals = np.empty((n,) * d, dtype=np.int64)
    rs = np.empty((n,) * d, dtype=np.int64)
    val_by_input = {}
    for pos in itertools.product(range(n), repeat=d):
        inputs = table.inputs_at(pos)
        off = table.offset(pos)
        val_by_input[inputs] = table.values[off]
    for pos in itertools.product(range(n), repeat=d):
        inputs = tuple(p.input_at(c) for p, c in zip(perms, pos))
        vals[pos] = val_by_input[inputs]
        rs[pos] = rs_by_input[inputs]
    return vals, rs


def optimal_par_over_perms(table: FunctionTable, objective: str,
                           dist: Distribution | None = None,
                           perm_budget: int = 700, sample_size: int = 50,
                           seed: int = 0, regions: str = "connected",
                           threads: int = 1) -> PermSweepResult:
    """Minimize the optimal ratio over orderings of each party's inputs.

    Each input pair keeps the ideal-region size it has in the table's own
    layout; candidate orderings only change which protocols are available.
    Exhaustive when (2^k)!^d fits the budget, else identity plus seeded
    samples.
    """
    if objective not in ("avg", "worst"):
        raise ValueError(f"objective must be 'avg' or 'worst', not {objective!r}")
    _dp_caps_check(table, False)
    n, d = table.n, table.d
    base = ideal_partition(table, regions)
    sizes = base.sizes_by_cell()
    rs_by_input = {}
    for pos in itertools.product(range(n), repeat=d):
        rs_by_input[table.inputs_at(pos)] = sizes[table.offset(pos)]

    total = math.factorial(n) ** d
    exhaustive = total <= perm_budget
    if exhaustive:
        candidates = [tuple(Permutation(p) for p in combo)
                      for combo in itertools.product(
                          itertools.permutations(range(n)), repeat=d)]
    else:
        rng = random.Random(seed)
        candidates = [tuple(Permutation.identity(n) for _ in range(d))]
        for _ in range(sample_size):
            combo = []
            for _a in range(d):
                order = list(range(n))
                rng.shuffle(order)
                combo.append(Permutation(tuple(order)))
            candidates.append(tuple(combo))

    use_dist = dist or uniform_distribution(d, table.k)

    def evaluate(perms) -> Fraction:
        vals, rs = _permuted_arrays(table, rs_by_input, perms)
        if objective == "worst":
            fn = kernels.dp2_worst if d == 2 else kernels.dp3_worst
            num, den, _choice = fn(vals, rs)
            return Fraction(num, den)
        permuted = FunctionTable(d, table.k, table.alphabet,
                                 [int(v) for v in vals.reshape(-1)], perms)
        value, _tree = _general_avg_dp(permuted, [int(v) for v in rs.reshape(-1)],
                                       use_dist)
        return value

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            values = list(pool.map(evaluate, candidates))
    else:
        values = [evaluate(p) for p in candidates]
    best = min(range(len(values)), key=lambda i: (values[i], i))
    return PermSweepResult(values[best], candidates[best], exhaustive,
                           len(candidates), objective)


@dataclass(frozen=True)
class GrowthRow:
    k: int
    value: Fraction


@dataclass(frozen=True)
class GrowthReport:
    rows: tuple[GrowthRow, ...]

    def ratios(self) -> list[tuple[int, Fraction]]:
        """Consecutive growth factors value(k+1)/value(k)."""
        out = []
        for prev, cur in zip(self.rows, self.rows[1:]):
            out.append((cur.k, cur.value / prev.value))
        return out


def threeparty_growth(kmin: int, kmax: int) -> GrowthReport:
    """Optimal average ratios of the three-party interleaved-slab family."""
    from .gallery import GallerySpec, make

    if not 1 <= kmin <= kmax <= DP_K_CAP[3]:
        raise SizeLimitError(
            f"three-party DP supports 1 <= kmin <= kmax <= {DP_K_CAP[3]}")
    rows = []
    for k in range(kmin, kmax + 1):
        table = make(GallerySpec("paterson_yao_3d", k=k)).table
        rows.append(GrowthRow(k, optimal_par(table, "avg").value))
    return GrowthReport(tuple(rows))
