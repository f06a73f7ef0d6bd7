"""Independent reference implementations used to check expected values.

Deliberately naive and separate from the package: flood fill over explicit
neighbor lists, per-cell ratio sums straight from the definitions, and a
recursive minimum over all cut trees for tiny grids.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import product


def flood_regions(grid):
    """Connected same-value components of a nested-list grid (any dims).

    Returns (region_id_by_cell dict, list of cell lists).
    """
    dims = []
    probe = grid
    while isinstance(probe, list):
        dims.append(len(probe))
        probe = probe[0]

    def value(cell):
        v = grid
        for c in cell:
            v = v[c]
        return v

    cells = list(product(*[range(n) for n in dims]))
    rid = {}
    regions = []
    for start in cells:
        if start in rid:
            continue
        color = value(start)
        current = len(regions)
        stack = [start]
        rid[start] = current
        members = []
        while stack:
            cell = stack.pop()
            members.append(cell)
            for axis in range(len(dims)):
                for step in (-1, 1):
                    nb = list(cell)
                    nb[axis] += step
                    nb = tuple(nb)
                    if not (0 <= nb[axis] < dims[axis]):
                        continue
                    if nb not in rid and value(nb) == color:
                        rid[nb] = current
                        stack.append(nb)
        regions.append(sorted(members))
    return rid, regions


def region_size_by_cell(grid):
    rid, regions = flood_regions(grid)
    return {cell: len(regions[r]) for cell, r in rid.items()}


def par_of_leaves(grid, leaves, weights=None):
    """(average, worst) from the definitions, cell by cell.

    ``leaves``: list of (lo, hi) coordinate tuples covering the grid.
    ``weights``: dict cell -> Fraction; defaults to uniform.
    """
    sizes = region_size_by_cell(grid)
    cells = list(sizes)
    total = len(cells)
    if weights is None:
        weights = {cell: Fraction(1, total) for cell in cells}
    leaf_of = {}
    for lo, hi in leaves:
        vol = 1
        for l, h in zip(lo, hi):
            vol *= h - l + 1
        for cell in product(*[range(l, h + 1) for l, h in zip(lo, hi)]):
            assert cell not in leaf_of, "leaves overlap"
            leaf_of[cell] = vol
    assert len(leaf_of) == total, "leaves do not cover the grid"
    avg = sum((weights[cell] * Fraction(sizes[cell], leaf_of[cell])
               for cell in cells), Fraction(0))
    worst = max(Fraction(sizes[cell], leaf_of[cell]) for cell in cells)
    return avg, worst


def best_cut_tree_value(grid, objective, weights=None, sizes=None):
    """Minimum ratio over every recursive single-cut tree (tiny grids only)."""
    dims = []
    probe = grid
    while isinstance(probe, list):
        dims.append(len(probe))
        probe = probe[0]
    d = len(dims)

    def value(cell):
        v = grid
        for c in cell:
            v = v[c]
        return v

    if sizes is None:
        sizes = region_size_by_cell(grid)
    total = 1
    for n in dims:
        total *= n
    if weights is None:
        weights = {cell: Fraction(1, total)
                   for cell in product(*[range(n) for n in dims])}

    @lru_cache(maxsize=None)
    def solve(lo, hi):
        box = list(product(*[range(l, h + 1) for l, h in zip(lo, hi)]))
        vol = len(box)
        if len({value(c) for c in box}) == 1:
            if objective == "avg":
                best = sum((weights[c] * Fraction(sizes[c], vol) for c in box),
                           Fraction(0))
            else:
                best = Fraction(max(sizes[c] for c in box), vol)
        else:
            best = None
        for axis in range(d):
            for cut in range(lo[axis], hi[axis]):
                hi1 = list(hi)
                hi1[axis] = cut
                lo2 = list(lo)
                lo2[axis] = cut + 1
                a = solve(lo, tuple(hi1))
                b = solve(tuple(lo2), hi)
                v = a + b if objective == "avg" else max(a, b)
                if best is None or v < best:
                    best = v
        return best

    return solve(tuple(0 for _ in dims), tuple(n - 1 for n in dims))


def table_grid(table):
    """Nested-list symbol grid of a FunctionTable (for the oracles above)."""
    n, d = table.n, table.d
    if d == 2:
        return [[table.symbol_at((i, j)) for j in range(n)] for i in range(n)]
    if d == 3:
        return [[[table.symbol_at((i, j, l)) for l in range(n)]
                 for j in range(n)] for i in range(n)]
    raise ValueError("oracle supports d=2 and d=3")
