"""Binary space partitions for disjoint axis-parallel rectangles.

The builder prefers free cuts (lines that split no fragment) and otherwise
cuts along a fragment side crossing as few rectangles as possible.  Every
build enforces the guarantee that no input rectangle ends up in more than
four fragments; exceeding it raises instead of degrading silently.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .errors import (BspInputError, FragmentBoundError, ProtocolExecutionError,
                     UnsupportedDimensionError)
from .grid import FunctionTable, HyperRect
from .partition import MonoIndex
from .protocol import Internal, Leaf, ProtocolTree

FRAGMENT_BOUND = 4


@dataclass(frozen=True)
class Fragment:
    rect_id: int
    part: HyperRect


@dataclass(frozen=True)
class BspCell:
    fragment: Fragment | None


@dataclass(frozen=True)
class BspCut:
    axis: int
    coord: int
    low: "BspNode"
    high: "BspNode"


BspNode = Union[BspCell, BspCut]


class BspTree:
    __slots__ = ("root", "bounds", "rects")

    def __init__(self, root: BspNode, bounds: HyperRect,
                 rects: tuple[HyperRect, ...]):
        self.root = root
        self.bounds = bounds
        self.rects = rects

    def size(self) -> int:
        """Number of leaves."""
        def count(node):
            if isinstance(node, BspCell):
                return 1
            return count(node.low) + count(node.high)
        return count(self.root)

    def height(self) -> int:
        def h(node):
            if isinstance(node, BspCell):
                return 0
            return 1 + max(h(node.low), h(node.high))
        return h(self.root)

    def fragments(self) -> list[Fragment]:
        out = []
        def walk(node):
            if isinstance(node, BspCell):
                if node.fragment is not None:
                    out.append(node.fragment)
                return
            walk(node.low)
            walk(node.high)
        walk(self.root)
        return out

    def leaf_cells(self) -> list[tuple[HyperRect, Fragment | None]]:
        out = []
        def walk(node, cell):
            if isinstance(node, BspCell):
                out.append((cell, node.fragment))
                return
            low, high = cell.split(node.axis, node.coord)
            walk(node.low, low)
            walk(node.high, high)
        walk(self.root, self.bounds)
        return out

    def fragment_counts(self) -> list[int]:
        counts = [0] * len(self.rects)
        for frag in self.fragments():
            counts[frag.rect_id] += 1
        return counts

    def to_json_dict(self) -> dict:
        def enc(node):
            if isinstance(node, BspCut):
                return {"axis": node.axis, "coord": node.coord,
                        "low": enc(node.low), "high": enc(node.high)}
            if node.fragment is None:
                return {"cell": None}
            return {"cell": {"rect_id": node.fragment.rect_id,
                             "fragment": node.fragment.part.to_json()}}
        return {"bounds": self.bounds.to_json(),
                "rects": [r.to_json() for r in self.rects],
                "tree": enc(self.root)}


def _check_inputs(rects: Sequence[HyperRect], bounds: HyperRect) -> None:
    if bounds.d != 2 or any(r.d != 2 for r in rects):
        raise UnsupportedDimensionError("BSP building is two-dimensional only")
    occupancy: dict[tuple[int, int], int] = {}
    for i, r in enumerate(rects):
        if not bounds.contains_rect(r):
            raise BspInputError(f"rectangle {i} ({r}) outside bounds {bounds}")
        for cell in r.cells():
            prev = occupancy.setdefault(cell, i)
            if prev != i:
                raise BspInputError(
                    f"rectangles {prev} and {i} overlap at {cell}")


def build_bsp(rects: Sequence[HyperRect], bounds: HyperRect,
              fragment_bound: int = FRAGMENT_BOUND) -> BspTree:
    """Recursively partition ``bounds`` so each leaf holds <= 1 fragment.

    Cut choice per cell: any line crossing zero fragments wins (lowest axis,
    then lowest coordinate); otherwise the fragment-side line crossing
    the fewest rectangles, same tie-break.  The per-rectangle fragment bound
    is enforced as a hard postcondition.
    """
    rects = tuple(rects)
    _check_inputs(rects, bounds)

    def crossings(frags, axis, coord):
        return sum(1 for _rid, part in frags
                   if part.lo[axis] <= coord < part.hi[axis])

    def recurse(cell: HyperRect, frags: list[tuple[int, HyperRect]]) -> BspNode:
        if not frags:
            return BspCell(None)
        if len(frags) == 1:
            rid, part = frags[0]
            return BspCell(Fragment(rid, part))
        candidates = set()
        for _rid, part in frags:
            for axis in (0, 1):
                if part.lo[axis] > cell.lo[axis]:
                    candidates.add((axis, part.lo[axis] - 1))
                if part.hi[axis] < cell.hi[axis]:
                    candidates.add((axis, part.hi[axis]))
        best = None
        for axis, coord in sorted(candidates):
            key = (crossings(frags, axis, coord), axis, coord)
            if best is None or key < best:
                best = key
        if best is None:  # pragma: no cover - >=2 disjoint frags always yield one
            raise BspInputError("no candidate cut in a multi-fragment cell")
        _count, axis, coord = best
        low_cell, high_cell = cell.split(axis, coord)
        low_frags, high_frags = [], []
        for rid, part in frags:
            if part.hi[axis] <= coord:
                low_frags.append((rid, part))
            elif part.lo[axis] > coord:
                high_frags.append((rid, part))
            else:
                pl, ph = part.split(axis, coord)
                low_frags.append((rid, pl))
                high_frags.append((rid, ph))
        return BspCut(axis, coord, recurse(low_cell, low_frags),
                      recurse(high_cell, high_frags))

    tree = BspTree(recurse(bounds, [(i, r) for i, r in enumerate(rects)]),
                   bounds, rects)
    counts = tree.fragment_counts()
    if counts and max(counts) > fragment_bound:
        worst = max(range(len(counts)), key=counts.__getitem__)
        raise FragmentBoundError(
            f"rectangle {worst} split into {counts[worst]} fragments "
            f"(> {fragment_bound}); the builder violated its guarantee")
    return tree


@dataclass(frozen=True)
class FragmentReport:
    counts: tuple[int, ...]
    max_count: int

    def __iter__(self):
        return iter(self.counts)


def fragment_report(tree: BspTree) -> FragmentReport:
    """Per-input-rectangle fragment counts, with area conservation checked."""
    counts = tree.fragment_counts()
    areas = [0] * len(tree.rects)
    for frag in tree.fragments():
        areas[frag.rect_id] += frag.part.volume()
    for i, rect in enumerate(tree.rects):
        if areas[i] != rect.volume():
            raise FragmentBoundError(
                f"fragments of rectangle {i} cover {areas[i]} cells, "
                f"expected {rect.volume()}")
    return FragmentReport(tuple(counts), max(counts, default=0))


def bsp_to_protocol(tree: BspTree, table: FunctionTable) -> ProtocolTree:
    """Reinterpret BSP cuts as protocol cuts; leaves announce the cell value.

    The BSP must have been built from a tiling of the table's grid, so every
    leaf cell is monochromatic; otherwise execution fails.
    """
    mi = MonoIndex(table)

    def convert(node: BspNode, cell: HyperRect):
        if isinstance(node, BspCut):
            low, high = cell.split(node.axis, node.coord)
            return Internal(node.axis, node.coord,
                            convert(node.low, low), convert(node.high, high))
        if not mi.monochromatic(cell):
            raise ProtocolExecutionError(
                f"BSP leaf cell {cell} is not monochromatic; the BSP was not "
                f"built from this table's tiling")
        return Leaf(table.symbol_at(cell.lo))

    if tree.bounds != table.bounds():
        raise ProtocolExecutionError("BSP bounds do not match the table grid")
    return ProtocolTree(convert(tree.root, tree.bounds))
