"""Deterministic generators for the benchmark function family.

Every entry reproduces, as a concrete table, one of the constructions the
analysis targets: staircase-style Boolean functions, the 4x4 pinwheel whose
dominoes no protocol can keep intact, the nested-frame family with large
worst-case ratios, and the three-party interleaved-slab family.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import GalleryError
from .grid import (Distribution, FunctionTable, HyperRect, Permutation,
                   build_table)
from .partition import ideal_partition, tiling_info

GALLERY_NAMES = ("equality", "set_covering", "parity", "greater_than",
                 "f1", "f2", "notile", "hless", "paterson_yao_3d",
                 "random_boolean_tiling")


@dataclass(frozen=True)
class GallerySpec:
    name: str
    k: int
    g: int | None = None
    seed: int | None = None


@dataclass(frozen=True)
class GalleryResult:
    table: FunctionTable
    tiles: tuple[HyperRect, ...] | None  # intended tiling, when one exists


def make(spec: GallerySpec) -> GalleryResult:
    if spec.name not in GALLERY_NAMES:
        raise GalleryError(f"unknown gallery entry {spec.name!r}; "
                           f"choose from {', '.join(GALLERY_NAMES)}")
    if spec.k < 1:
        raise GalleryError("k must be at least 1")
    if spec.name == "f2":
        if spec.g is None:
            raise GalleryError("f2 requires g")
        return f2(spec.k, spec.g)
    if spec.name == "random_boolean_tiling":
        if spec.seed is None:
            raise GalleryError("random_boolean_tiling requires a seed")
        return random_boolean_tiling(spec.k, spec.seed)
    gen = {"equality": equality, "set_covering": set_covering,
           "parity": parity, "greater_than": greater_than, "f1": f1,
           "notile": notile, "hless": hless,
           "paterson_yao_3d": paterson_yao_3d}[spec.name]
    return gen(spec.k)


def _bit(x: int, i: int) -> int:
    return (x >> i) & 1


def equality(k: int) -> GalleryResult:
    table = build_table(2, k, lambda xy: int(xy[0] == xy[1]),
                        alphabet=("0", "1"))
    return GalleryResult(table, None)


def set_covering(k: int) -> GalleryResult:
    def f(xy):
        x, y = xy
        return int(all(_bit(x, i) | _bit(y, i) for i in range(k)))
    return GalleryResult(build_table(2, k, f, alphabet=("0", "1")), None)


def parity(k: int) -> GalleryResult:
    """Sum-of-bits parity, with inputs ordered even-parity first."""
    n = 2 ** k
    perm = Permutation.from_sort_key(n, lambda v: v.bit_count() % 2)
    table = build_table(2, k,
                        lambda xy: (xy[0].bit_count() + xy[1].bit_count()) % 2,
                        perms=[perm, perm], alphabet=("0", "1"))
    half = n // 2
    tiles = (HyperRect((0, 0), (half - 1, half - 1)),
             HyperRect((0, half), (half - 1, n - 1)),
             HyperRect((half, 0), (n - 1, half - 1)),
             HyperRect((half, half), (n - 1, n - 1)))
    return GalleryResult(table, tiles)


def greater_than(k: int) -> GalleryResult:
    return GalleryResult(build_table(2, k, lambda xy: int(xy[0] > xy[1]),
                                     alphabet=("0", "1")), None)


def f1(k: int) -> GalleryResult:
    """Depends on one party only: a single distinguished column.

    The other party is never informative, so bisection-style protocols
    shave the column's side of the grid one block at a time.
    """
    n = 2 ** k
    table = build_table(2, k, lambda xy: int(xy[1] == 0), alphabet=("0", "1"))
    tiles = (HyperRect((0, 0), (n - 1, 0)), HyperRect((0, 1), (n - 1, n - 1)))
    return GalleryResult(table, tiles)


def f2(k: int, g: int) -> GalleryResult:
    """Distinguished column placed to defeat bounded-bisection peeling.

    The column sits just below the midpoint of the last size-2^(k-g) block,
    so after g midpoint rounds the low-end peel phase pays about
    2^(k-g-1) extra blocks.
    """
    if not 0 <= g <= k - 1:
        raise GalleryError(f"f2 needs 0 <= g <= k-1, got g={g}, k={k}")
    n = 2 ** k
    special = n - 2 ** (k - g - 1) - 1
    table = build_table(2, k, lambda xy: int(xy[1] == special),
                        alphabet=("0", "1"))
    tiles = (HyperRect((0, 0), (n - 1, special - 1)),
             HyperRect((0, special), (n - 1, special)),
             HyperRect((0, special + 1), (n - 1, n - 1)))
    return GalleryResult(table, tiles)


def _table_from_tiles(k: int, tiles, symbols=None, d: int = 2) -> FunctionTable:
    """Dense table whose cells take each tile's symbol; tiles must partition."""
    n = 2 ** k
    total = n ** d
    owner = [-1] * total
    strides = [n ** (d - 1 - a) for a in range(d)]
    for t, rect in enumerate(tiles):
        for coords in rect.cells():
            off = sum(c * s for c, s in zip(coords, strides))
            if owner[off] != -1:
                raise GalleryError(f"tiles overlap at {coords}")
            owner[off] = t
    if any(o < 0 for o in owner):
        raise GalleryError("tiles do not cover the grid")
    if symbols is None:
        symbols = [str(t) for t in range(len(tiles))]
    alphabet = []
    seen = {}
    ids = []
    for o in owner:
        sym = symbols[o]
        if sym not in seen:
            seen[sym] = len(alphabet)
            alphabet.append(sym)
        ids.append(seen[sym])
    perms = [Permutation.identity(n)] * d
    return FunctionTable(d, k, alphabet, ids, perms)


def notile(k: int = 2) -> GalleryResult:
    """The 4x4 pinwheel: an L of unit tiles, four dominoes, one center cell.

    Any protocol must cut through at least one domino, which is what makes
    its optimal average ratio exceed 1 under every pair of orderings.
    """
    if k != 2:
        raise GalleryError("the pinwheel instance is fixed at k=2 (4x4)")
    tiles = _notile_tiles()
    symbols = [str(i + 1) for i in range(len(tiles))]
    return GalleryResult(_table_from_tiles(2, tiles, symbols), tuple(tiles))


def _notile_tiles() -> list[HyperRect]:
    tiles = [HyperRect((r, 0), (r, 0)) for r in range(4)]          # left column
    tiles += [HyperRect((0, c), (0, c)) for c in range(1, 4)]      # top row
    tiles += [HyperRect((1, 1), (2, 1)),                           # dominoes
              HyperRect((1, 2), (1, 3)),
              HyperRect((2, 3), (3, 3)),
              HyperRect((3, 1), (3, 2)),
              HyperRect((2, 2), (2, 2))]                           # center
    tiles.sort(key=lambda h: h.lo)
    return tiles


def notile_domino_cells() -> set[tuple[int, int]]:
    """Cells of the four two-cell tiles of the pinwheel instance."""
    out = set()
    for t in _notile_tiles():
        if t.volume() == 2:
            out.update(t.cells())
    return out


def notile_adversarial_distribution(c: Fraction | int) -> Distribution:
    """Loads the pinwheel's dominoes: (1+c)/16 there, (1-c)/16 elsewhere."""
    c = Fraction(c)
    if not 0 <= c < 1:
        raise GalleryError("c must be in [0, 1)")
    dom = notile_domino_cells()
    p, q = c.numerator, c.denominator
    nums = []
    for x in range(4):
        for y in range(4):
            nums.append(q + p if (x, y) in dom else q - p)
    return Distribution(2, 2, nums, 16 * q, kind=f"notile-adversarial:{c}")


def hless(k: int) -> GalleryResult:
    """Nested pinwheel frames with near-midpoint splits of the outer ring.

    Level i contributes four 1 x (2^k - 2i + 1) frame rectangles; the outer
    ring's four rectangles are split into nearly equal halves at staggered
    positions so that every near-middle first cut leaves a tiny fragment of
    some half; a 2x2 block remains at the center.  Values come from a greedy
    coloring of side-sharing tiles (at most eight colors).
    """
    if k < 2 or k % 2:
        raise GalleryError("hless requires an even k >= 2")
    if k > 8:
        raise GalleryError("hless capped at k=8")
    tiles = _hless_tiles(k)
    colors = _greedy_side_coloring(tiles)
    if max(colors) >= 8:
        raise GalleryError("side coloring exceeded eight values")  # pragma: no cover
    symbols = [f"c{c}" for c in colors]
    table = _table_from_tiles(k, tiles, symbols)
    return GalleryResult(table, tuple(tiles))


def _hless_tiles(k: int) -> list[HyperRect]:
    n = 2 ** k
    h = n // 2
    left_cut = h - 1              # split of the left column and bottom row
    right_cut = min(h, n - 3)     # staggered split of the top row and right column
    tiles = [
        HyperRect((0, 0), (left_cut, 0)),                  # left column, upper
        HyperRect((left_cut + 1, 0), (n - 2, 0)),          # left column, lower
        HyperRect((0, 1), (0, right_cut)),                 # top row, inner
        HyperRect((0, right_cut + 1), (0, n - 1)),         # top row, corner
        HyperRect((1, n - 1), (right_cut, n - 1)),         # right column, upper
        HyperRect((right_cut + 1, n - 1), (n - 1, n - 1)),  # right column, lower
        HyperRect((n - 1, 0), (n - 1, left_cut)),          # bottom row, corner
        HyperRect((n - 1, left_cut + 1), (n - 1, n - 2)),  # bottom row, inner
    ]
    for i in range(2, h):
        tiles += [
            HyperRect((i - 1, i - 1), (n - 1 - i, i - 1)),  # vertical left
            HyperRect((n - i, i - 1), (n - i, n - 1 - i)),  # horizontal bottom
            HyperRect((i, n - i), (n - i, n - i)),          # vertical right
            HyperRect((i - 1, i), (i - 1, n - i)),          # horizontal top
        ]
    tiles.append(HyperRect((h - 1, h - 1), (h, h)))         # central 2x2 block
    return tiles


def _edge_adjacent(a: HyperRect, b: HyperRect) -> bool:
    for axis in (0, 1):
        other = 1 - axis
        touch = (a.hi[axis] + 1 == b.lo[axis]) or (b.hi[axis] + 1 == a.lo[axis])
        overlap = a.lo[other] <= b.hi[other] and b.lo[other] <= a.hi[other]
        if touch and overlap:
            return True
    return False


def _greedy_side_coloring(tiles) -> list[int]:
    colors: list[int] = []
    for i, t in enumerate(tiles):
        used = {colors[j] for j in range(i) if _edge_adjacent(t, tiles[j])}
        c = 0
        while c in used:
            c += 1
        colors.append(c)
    return colors


def paterson_yao_3d(k: int) -> GalleryResult:
    """Three interleaved families of full-length slabs plus unit filler.

    Axis-0 slabs run over even (y, z); axis-1 over even x, odd z; axis-2
    over odd (x, y).  Each slab has volume 2^k, the families are mutually
    disjoint by parity, and every remaining cell is its own unit tile with
    its own value.
    """
    if k > 4:
        raise GalleryError("paterson_yao_3d capped at k=4")
    n = 2 ** k
    star = (0, n - 1)
    tiles: list[HyperRect] = []
    for y in range(0, n, 2):
        for z in range(0, n, 2):
            tiles.append(HyperRect((star[0], y, z), (star[1], y, z)))
    for x in range(0, n, 2):
        for z in range(1, n, 2):
            tiles.append(HyperRect((x, star[0], z), (x, star[1], z)))
    for x in range(1, n, 2):
        for y in range(1, n, 2):
            tiles.append(HyperRect((x, y, star[0]), (x, y, star[1])))
    covered = set()
    for t in tiles:
        covered.update(t.cells())
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if (x, y, z) not in covered:
                    tiles.append(HyperRect.cell((x, y, z)))
    symbols = [f"t{i}" for i in range(len(tiles))]
    table = _table_from_tiles(k, tiles, symbols, d=3)
    return GalleryResult(table, tuple(tiles))


def paterson_yao_nontrivial(k: int) -> list[HyperRect]:
    """Just the full-length slabs of the three-party family."""
    return [t for t in paterson_yao_3d(k).tiles if t.volume() == 2 ** k]


def random_boolean_tiling(k: int, seed: int, max_attempts: int = 10000) -> GalleryResult:
    """Seeded two-valued table whose maximal regions tile the grid.

    Generated by recursive random guillotine cuts with the color flipping
    across each cut; colorings whose same-color neighbors merge into
    non-rectangular regions are rejected and retried.  Reported tiles are
    the maximal regions of the accepted table (merges may coarsen the raw
    cut leaves).
    """
    n = 2 ** k
    rng = random.Random(seed)
    for _attempt in range(max_attempts):
        cells = [[0] * n for _ in range(n)]

        def carve(l0, h0, l1, h1, color, depth):
            axes = [a for a in range(2) if (h0 > l0, h1 > l1)[a]]
            if not axes or (depth > 0 and rng.random() < 0.3):
                for i in range(l0, h0 + 1):
                    for j in range(l1, h1 + 1):
                        cells[i][j] = color
                return
            axis = rng.choice(axes)
            if axis == 0:
                cut = rng.randrange(l0, h0)
                carve(l0, cut, l1, h1, color, depth + 1)
                carve(cut + 1, h0, l1, h1, 1 - color, depth + 1)
            else:
                cut = rng.randrange(l1, h1)
                carve(l0, h0, l1, cut, color, depth + 1)
                carve(l0, h0, cut + 1, h1, 1 - color, depth + 1)

        carve(0, n - 1, 0, n - 1, rng.randrange(2), 0)
        flat = [cells[i][j] for i in range(n) for j in range(n)]
        table = FunctionTable(2, k, ("0", "1"), flat,
                              [Permutation.identity(n)] * 2)
        rm = ideal_partition(table)
        info = tiling_info(rm)
        if info.is_tiling:
            return GalleryResult(table, tuple(r.bbox for r in rm.regions))
    raise GalleryError(f"no tiling found for seed {seed} after "
                       f"{max_attempts} attempts")  # pragma: no cover


@functools.lru_cache(maxsize=None)
def setcov_recurrence(i: int, j: int, k: int) -> int:
    """Total ratio contribution of the covering function's bisection tiling.

    g(0, j, k) = 3^k; otherwise
    g(i, j, k) = 2^(2j-1) - 2^(j-1) + 2 g(i-1, j, k) + g(i-1, i-1, k).
    The simulated bisection average equals g(k, k, k) / 2^(2k).
    """
    if not 0 <= i <= k or not 0 <= j <= k:
        raise GalleryError("need 0 <= i, j <= k")
    if i == 0:
        return 3 ** k
    return (2 ** (2 * j - 1) - 2 ** (j - 1)
            + 2 * setcov_recurrence(i - 1, j, k)
            + setcov_recurrence(i - 1, i - 1, k))
