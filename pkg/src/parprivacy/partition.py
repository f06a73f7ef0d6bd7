"""Ideal monochromatic partitions, the tiling test, and strip decomposition."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import TableFormatError, UnsupportedDimensionError
from .grid import FunctionTable, HyperRect

#: Region semantics: connected components under edge adjacency (default), or
#: whole value preimages ("level-sets").
REGION_SEMANTICS = ("connected", "level-sets")


@dataclass(frozen=True)
class Region:
    rid: int
    value: int
    size: int
    bbox: HyperRect

    @property
    def is_rectangle(self) -> bool:
        return self.size == self.bbox.volume()


class RegionMap:
    """A partition of the grid into labeled monochromatic regions."""

    __slots__ = ("table", "regions", "region_of", "semantics")

    def __init__(self, table: FunctionTable, regions: tuple[Region, ...],
                 region_of: tuple[int, ...], semantics: str):
        self.table = table
        self.regions = regions
        self.region_of = region_of
        self.semantics = semantics

    def region_at(self, coords) -> Region:
        return self.regions[self.region_of[self.table.offset(coords)]]

    def sizes_by_cell(self) -> list[int]:
        """Per-cell size of the containing region, in offset order."""
        sizes = [r.size for r in self.regions]
        return [sizes[rid] for rid in self.region_of]

    def cells_of(self, rid: int) -> list[tuple[int, ...]]:
        table = self.table
        return [table.coords_of(off) for off, r in enumerate(self.region_of)
                if r == rid]

    def region_count(self) -> int:
        return len(self.regions)

    def to_json_dict(self, include_cells: bool = False) -> dict:
        out = []
        cells_by_rid: dict[int, list] = {}
        if include_cells:
            for off, rid in enumerate(self.region_of):
                cells_by_rid.setdefault(rid, []).append(
                    list(self.table.coords_of(off)))
        for r in self.regions:
            entry = {
                "id": r.rid,
                "value": self.table.alphabet[r.value],
                "size": r.size,
                "bbox": r.bbox.to_json(),
            }
            if include_cells:
                entry["cells"] = cells_by_rid.get(r.rid, [])
            out.append(entry)
        return {"semantics": self.semantics, "regions": out}


def ideal_partition(table: FunctionTable, regions: str = "connected") -> RegionMap:
    """Partition the grid into maximal monochromatic regions.

    ``connected``: maximal same-value components under edge adjacency (no
    diagonals).  ``level-sets``: one region per output value, connected or
    not.  Region ids follow row-major order of each region's first cell.
    """
    if regions not in REGION_SEMANTICS:
        raise TableFormatError(f"unknown region semantics {regions!r}")
    n, d = table.n, table.d
    values = table.values
    total = len(values)
    region_of = [-1] * total
    out: list[Region] = []
    if regions == "level-sets":
        by_value: dict[int, int] = {}
        los: list[list[int]] = []
        his: list[list[int]] = []
        sizes: list[int] = []
        for off in range(total):
            v = values[off]
            rid = by_value.get(v)
            coords = table.coords_of(off)
            if rid is None:
                rid = len(los)
                by_value[v] = rid
                los.append(list(coords))
                his.append(list(coords))
                sizes.append(0)
            sizes[rid] += 1
            for a in range(d):
                los[rid][a] = min(los[rid][a], coords[a])
                his[rid][a] = max(his[rid][a], coords[a])
            region_of[off] = rid
        for v, rid in by_value.items():
            out.append(Region(rid, v, sizes[rid],
                              HyperRect(tuple(los[rid]), tuple(his[rid]))))
        out.sort(key=lambda r: r.rid)
        return RegionMap(table, tuple(out), tuple(region_of), regions)

    strides = [n ** (d - 1 - a) for a in range(d)]
    for start in range(total):
        if region_of[start] >= 0:
            continue
        rid = len(out)
        v = values[start]
        coords = list(table.coords_of(start))
        lo, hi = coords[:], coords[:]
        size = 0
        queue = deque([start])
        region_of[start] = rid
        while queue:
            off = queue.popleft()
            size += 1
            cc = table.coords_of(off)
            for a in range(d):
                if cc[a] < lo[a]:
                    lo[a] = cc[a]
                if cc[a] > hi[a]:
                    hi[a] = cc[a]
                if cc[a] > 0:
                    nb = off - strides[a]
                    if region_of[nb] < 0 and values[nb] == v:
                        region_of[nb] = rid
                        queue.append(nb)
                if cc[a] < n - 1:
                    nb = off + strides[a]
                    if region_of[nb] < 0 and values[nb] == v:
                        region_of[nb] = rid
                        queue.append(nb)
        out.append(Region(rid, v, size, HyperRect(tuple(lo), tuple(hi))))
    return RegionMap(table, tuple(out), tuple(region_of), regions)


@dataclass(frozen=True)
class TilingInfo:
    is_tiling: bool
    r_f: int | None           # region count, when the regions tile
    witness: int | None       # a non-rectangular region id otherwise
    delta_upper: int | None   # max rectangles per region from decomposition


def tiling_info(region_map: RegionMap) -> TilingInfo:
    """Do the maximal monochromatic regions form a tiling by rectangles?"""
    witness = None
    for r in region_map.regions:
        if not r.is_rectangle:
            witness = r.rid
            break
    is_tiling = witness is None
    delta = None
    if region_map.table.d == 2:
        delta = max(len(parts) for _rid, parts in decompose_regions(region_map))
    return TilingInfo(is_tiling,
                      region_map.region_count() if is_tiling else None,
                      witness, delta)


def decompose_regions(region_map: RegionMap) -> list[tuple[int, list[HyperRect]]]:
    """Split each region into disjoint rectangles by maximal horizontal strips.

    Runs of cells within a row are merged with identical runs in consecutive
    rows.  Two-party grids only.
    """
    table = region_map.table
    if table.d != 2:
        raise UnsupportedDimensionError(
            "strip decomposition is only supported for two-party grids")
    n = table.n
    # runs[rid] = list of (row, col_lo, col_hi)
    runs: dict[int, list[tuple[int, int, int]]] = {r.rid: [] for r in region_map.regions}
    region_of = region_map.region_of
    for row in range(n):
        col = 0
        base = row * n
        while col < n:
            rid = region_of[base + col]
            end = col
            while end + 1 < n and region_of[base + end + 1] == rid:
                end += 1
            runs[rid].append((row, col, end))
            col = end + 1
    out = []
    for r in region_map.regions:
        # group runs by column span, then merge consecutive rows per span
        parts: list[HyperRect] = []
        by_span: dict[tuple[int, int], list[int]] = {}
        for row, c0, c1 in runs[r.rid]:
            by_span.setdefault((c0, c1), []).append(row)
        for (c0, c1), rows in sorted(by_span.items(), key=lambda kv: (min(kv[1]), kv[0])):
            rows.sort()
            start = rows[0]
            prev = rows[0]
            for row in rows[1:] + [None]:
                if row is not None and row == prev + 1:
                    prev = row
                    continue
                parts.append(HyperRect((start, c0), (prev, c1)))
                if row is not None:
                    start = prev = row
        parts.sort(key=lambda h: (h.lo[0], h.lo[1]))
        out.append((r.rid, parts))
    return out


def diagonal_contacts(region_map: RegionMap) -> list[tuple[int, int]]:
    """Pairs of same-value regions that touch only diagonally.

    Such contacts are where edge-adjacency and looser region readings can
    disagree, so verification reports flag them.  Two-party grids only;
    other dimensions return an empty list.
    """
    table = region_map.table
    if table.d != 2:
        return []
    n = table.n
    region_of = region_map.region_of
    values = table.values
    pairs = set()
    for r in range(n - 1):
        for c in range(n - 1):
            a = r * n + c
            b = (r + 1) * n + c + 1
            if values[a] == values[b] and region_of[a] != region_of[b]:
                pairs.add(tuple(sorted((region_of[a], region_of[b]))))
            a2 = r * n + c + 1
            b2 = (r + 1) * n + c
            if values[a2] == values[b2] and region_of[a2] != region_of[b2]:
                pairs.add(tuple(sorted((region_of[a2], region_of[b2]))))
    return sorted(pairs)


class MonoIndex:
    """O(1) monochromaticity and per-axis variation queries for one table.

    For each axis a break grid marks cells whose successor along that axis
    differs; prefix sums turn "any break inside this block" into a constant
    number of lookups.
    """

    def __init__(self, table: FunctionTable):
        n, d = table.n, table.d
        self.table = table
        self.n = n
        self.d = d
        vals = np.asarray(table.values, dtype=np.int64).reshape((n,) * d)
        self._prefix = []
        for a in range(d):
            brk = np.zeros((n + 1,) * d, dtype=np.int64)
            take_lo = [slice(None)] * d
            take_hi = [slice(None)] * d
            take_lo[a] = slice(0, n - 1)
            take_hi[a] = slice(1, n)
            diff = (vals[tuple(take_lo)] != vals[tuple(take_hi)]).astype(np.int64)
            dest = [slice(1, n + 1)] * d
            dest[a] = slice(2, n + 1)
            brk[tuple(dest)] = diff
            for ax in range(d):
                brk = brk.cumsum(axis=ax)
            self._prefix.append(brk)

    def _box_sum(self, prefix, lo, hi) -> int:
        # inclusive box [lo..hi] over a (n+1)-shaped prefix grid
        total = 0
        for corner in itertools.product((0, 1), repeat=self.d):
            idx = tuple(h + 1 if bit else l for bit, l, h in zip(corner, lo, hi))
            sign = (-1) ** (self.d - sum(corner))
            total += sign * int(prefix[idx])
        return total

    def breaks_along(self, rect: HyperRect, axis: int) -> int:
        if rect.axis_len(axis) == 1:
            return 0
        hi = list(rect.hi)
        lo = list(rect.lo)
        lo[axis] += 1  # breaks are stored at the successor cell
        return self._box_sum(self._prefix[axis], lo, hi)

    def varies_along(self, rect: HyperRect, axis: int) -> bool:
        return self.breaks_along(rect, axis) > 0

    def monochromatic(self, rect: HyperRect) -> bool:
        return all(self.breaks_along(rect, a) == 0 for a in range(self.d))
