"""Dissection protocols as binary cut trees, plus the bisection family.

A protocol node either cuts one party's current interval (low child keeps
coordinates <= cut_after) or announces the output value.  Running a tree
against a table yields the induced tiling and per-cell transcripts.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import (NotBooleanTilingError, PerfectCutMissingError,
                     ProtocolExecutionError, TableFormatError)
from .grid import FunctionTable, HyperRect
from .partition import MonoIndex, Region, RegionMap, ideal_partition, tiling_info


@dataclass(frozen=True)
class Leaf:
    value: str


@dataclass(frozen=True)
class Internal:
    party: int
    cut_after: int
    low: "ProtocolNode"
    high: "ProtocolNode"


ProtocolNode = Union[Leaf, Internal]


class ProtocolTree:
    """Immutable dissection protocol; the root covers the full grid."""

    __slots__ = ("root",)

    def __init__(self, root: ProtocolNode):
        self.root = root

    def leaf_count(self) -> int:
        def count(node):
            if isinstance(node, Leaf):
                return 1
            return count(node.low) + count(node.high)
        return count(self.root)

    def height(self) -> int:
        """Longest root-to-leaf path, in cuts."""
        def h(node):
            if isinstance(node, Leaf):
                return 0
            return 1 + max(h(node.low), h(node.high))
        return h(self.root)

    def to_json_dict(self) -> dict:
        def enc(node):
            if isinstance(node, Leaf):
                return {"leaf": node.value}
            return {"party": node.party, "cut_after": node.cut_after,
                    "low": enc(node.low), "high": enc(node.high)}
        return enc(self.root)

    @staticmethod
    def from_json_dict(data: dict) -> "ProtocolTree":
        def dec(obj):
            if "leaf" in obj:
                return Leaf(str(obj["leaf"]))
            try:
                return Internal(int(obj["party"]), int(obj["cut_after"]),
                                dec(obj["low"]), dec(obj["high"]))
            except KeyError as exc:
                raise TableFormatError(f"bad protocol JSON: missing {exc}") from exc
        return ProtocolTree(dec(data))

    def __eq__(self, other):
        return isinstance(other, ProtocolTree) and self.root == other.root


@dataclass(frozen=True)
class Transcript:
    """Bits sent along one root-to-leaf path, plus the announced output."""

    steps: tuple[tuple[int, int], ...]
    output: str

    def render(self) -> str:
        prefix = " ".join(f"P{party + 1}:{bit}" for party, bit in self.steps)
        return f"{prefix} -> {self.output}" if prefix else f"-> {self.output}"


@dataclass(frozen=True)
class ProtocolLeafInfo:
    rect: HyperRect
    value: int
    transcript: Transcript


class ProtocolRun:
    """Result of executing a protocol: leaves, induced regions, transcripts."""

    __slots__ = ("table", "leaves", "region_map", "_leaf_of")

    def __init__(self, table: FunctionTable, leaves: list[ProtocolLeafInfo]):
        self.table = table
        # deterministic region ids: row-major order of each leaf's first cell
        order = sorted(range(len(leaves)),
                       key=lambda i: table.offset(leaves[i].rect.lo))
        self.leaves = [leaves[i] for i in order]
        region_of = [-1] * table.cell_count()
        regions = []
        for rid, info in enumerate(self.leaves):
            regions.append(Region(rid, info.value, info.rect.volume(), info.rect))
            for coords in info.rect.cells():
                region_of[table.offset(coords)] = rid
        self.region_map = RegionMap(table, tuple(regions), tuple(region_of),
                                    "protocol")
        self._leaf_of = region_of

    def leaf_at(self, coords) -> ProtocolLeafInfo:
        return self.leaves[self._leaf_of[self.table.offset(coords)]]

    def transcript_at(self, coords) -> Transcript:
        return self.leaf_at(coords).transcript

    def leaf_count(self) -> int:
        return len(self.leaves)


def run_protocol(tree: ProtocolTree, table: FunctionTable,
                 mono_index: MonoIndex | None = None) -> ProtocolRun:
    """Execute a protocol tree, checking it actually computes the table.

    Raises ProtocolExecutionError on a cut outside the current interval or a
    leaf that is not monochromatic with the announced value.
    """
    mi = mono_index or MonoIndex(table)
    leaves: list[ProtocolLeafInfo] = []

    def walk(node: ProtocolNode, rect: HyperRect, path):
        if isinstance(node, Leaf):
            if not mi.monochromatic(rect):
                raise ProtocolExecutionError(
                    f"leaf block {rect} is not monochromatic")
            if table.symbol_at(rect.lo) != node.value:
                raise ProtocolExecutionError(
                    f"leaf announces {node.value!r} but block {rect} holds "
                    f"{table.symbol_at(rect.lo)!r}")
            leaves.append(ProtocolLeafInfo(
                rect, table.value_at(rect.lo), Transcript(tuple(path), node.value)))
            return
        if not 0 <= node.party < table.d:
            raise ProtocolExecutionError(f"party {node.party} out of range")
        if not rect.lo[node.party] <= node.cut_after < rect.hi[node.party]:
            raise ProtocolExecutionError(
                f"cut after {node.cut_after} outside interval "
                f"[{rect.lo[node.party]}, {rect.hi[node.party]}) "
                f"of party {node.party + 1}")
        low, high = rect.split(node.party, node.cut_after)
        walk(node.low, low, path + [(node.party, 0)])
        walk(node.high, high, path + [(node.party, 1)])

    walk(tree.root, table.bounds(), [])
    return ProtocolRun(table, leaves)


@dataclass(frozen=True)
class DissectionCheck:
    ok: bool
    message: str | None = None

    def __bool__(self):
        return self.ok


def validate_dissection(tree: ProtocolTree, table: FunctionTable) -> DissectionCheck:
    """Structural validity of a tree against a table; reports the first violation."""
    try:
        run_protocol(tree, table)
    except ProtocolExecutionError as exc:
        return DissectionCheck(False, str(exc))
    return DissectionCheck(True)


# -- the bisection family ---------------------------------------------------

@dataclass(frozen=True)
class BisectionVariant:
    """Midpoint split, fixed-fraction split, or midpoint-then-single-peel."""

    kind: str = "bisection"          # bisection | c-bisection | bounded
    c: Fraction = Fraction(1, 2)
    g: int = 0

    def __post_init__(self):
        if self.kind not in ("bisection", "c-bisection", "bounded"):
            raise TableFormatError(f"unknown variant {self.kind!r}")
        if self.kind == "c-bisection" and not Fraction(1, 2) <= self.c < 1:
            raise TableFormatError("c must satisfy 1/2 <= c < 1")
        if self.kind == "bounded" and self.g < 0:
            raise TableFormatError("g must be nonnegative")

    def label(self) -> str:
        if self.kind == "c-bisection":
            return f"c-bisection:{self.c}"
        if self.kind == "bounded":
            return f"bounded:{self.g}"
        return "bisection"

    def cut_point(self, lo: int, hi: int, round_no: int) -> int:
        z = hi - lo + 1
        if self.kind == "bounded" and round_no > self.g:
            return lo  # peel one element from the low end
        c = self.c if self.kind == "c-bisection" else Fraction(1, 2)
        first = min(math.ceil(c * z), z - 1)  # exact ceil; keep both halves nonempty
        return lo + first - 1


def bisection_family(table: FunctionTable,
                     variant: BisectionVariant | None = None,
                     scheduling: str = "rounds",
                     mono_index: MonoIndex | None = None) -> ProtocolTree:
    """Build a bisection-style protocol for a table.

    ``rounds`` scheduling: in each round every informative party (one whose
    axis still shows variation inside the block) splits its interval once;
    the round's cuts apply as a batch and a branch halts at the next round
    boundary once its block is monochromatic.  ``alternate`` is an
    experimental single-cut round-robin scheduler.
    """
    variant = variant or BisectionVariant()
    mi = mono_index or MonoIndex(table)
    if scheduling == "rounds":
        return ProtocolTree(_rounds(table, mi, variant, table.bounds(), 1))
    if scheduling == "alternate":
        return ProtocolTree(_alternate(table, mi, variant, table.bounds(), 0,
                                       [0] * table.d))
    raise TableFormatError(f"unknown scheduling {scheduling!r}")


def _rounds(table, mi, variant, rect, round_no):
    if mi.monochromatic(rect):
        return Leaf(table.symbol_at(rect.lo))
    cuts = []
    for a in range(table.d):
        if rect.axis_len(a) > 1 and mi.varies_along(rect, a):
            cuts.append((a, variant.cut_point(rect.lo[a], rect.hi[a], round_no)))

    def apply(block, pending):
        if not pending:
            return _rounds(table, mi, variant, block, round_no + 1)
        (axis, cut), rest = pending[0], pending[1:]
        low, high = block.split(axis, cut)
        return Internal(axis, cut, apply(low, rest), apply(high, rest))

    return apply(rect, cuts)


def _alternate(table, mi, variant, rect, turn, cut_counts):
    if mi.monochromatic(rect):
        return Leaf(table.symbol_at(rect.lo))
    d = table.d
    for probe in range(d):
        a = (turn + probe) % d
        if rect.axis_len(a) > 1 and mi.varies_along(rect, a):
            counts = list(cut_counts)
            counts[a] += 1
            cut = variant.cut_point(rect.lo[a], rect.hi[a], counts[a])
            low, high = rect.split(a, cut)
            nxt = (a + 1) % d
            return Internal(a, cut,
                            _alternate(table, mi, variant, low, nxt, counts),
                            _alternate(table, mi, variant, high, nxt, counts))
    raise ProtocolExecutionError("non-monochromatic block with no informative party")


def bisection_protocol(table: FunctionTable, **kw) -> ProtocolTree:
    return bisection_family(table, BisectionVariant("bisection"), **kw)


def c_bisection_protocol(table: FunctionTable, c: Fraction, **kw) -> ProtocolTree:
    return bisection_family(table, BisectionVariant("c-bisection", c=Fraction(c)), **kw)


def bounded_bisection_protocol(table: FunctionTable, g: int, **kw) -> ProtocolTree:
    return bisection_family(table, BisectionVariant("bounded", g=g), **kw)


# -- perfect privacy for two-valued tilings ----------------------------------

def perfect_boolean_protocol(table: FunctionTable) -> ProtocolTree:
    """Build a protocol whose induced tiling equals the ideal partition.

    Requires two parties, at most two output values, and an ideal partition
    that tiles the grid.  Works by repeatedly finding a row or column cut
    that splits no tile (for two-valued tilings one always exists); if no
    such cut is found the constructor aborts loudly rather than degrade.
    """
    if table.d != 2:
        raise NotBooleanTilingError("requires exactly two parties")
    if len(set(table.values)) > 2:
        raise NotBooleanTilingError("table has more than two output values")
    rm = ideal_partition(table)
    if not tiling_info(rm).is_tiling:
        raise NotBooleanTilingError("ideal regions do not tile the grid")
    tiles = [(r.bbox, table.alphabet[r.value]) for r in rm.regions]

    def build(block: HyperRect, active: list[int]) -> ProtocolNode:
        if len(active) == 1:
            return Leaf(tiles[active[0]][1])
        for axis in (0, 1):
            for cut in range(block.lo[axis], block.hi[axis]):
                if any(tiles[t][0].lo[axis] <= cut < tiles[t][0].hi[axis]
                       for t in active):
                    continue
                low_rect, high_rect = block.split(axis, cut)
                low = [t for t in active if tiles[t][0].hi[axis] <= cut]
                high = [t for t in active if tiles[t][0].lo[axis] > cut]
                return Internal(axis, cut, build(low_rect, low),
                                build(high_rect, high))
        raise PerfectCutMissingError(
            f"no non-splitting cut on two-valued tiling block {block} "
            f"({len(active)} tiles);  this contradicts the construction's "
            f"guarantee and indicates a bug")

    return ProtocolTree(build(table.bounds(), list(range(len(tiles)))))


# -- randomized helpers for fuzzing ------------------------------------------

def random_protocol(table: FunctionTable, rng: random.Random,
                    extra_split_prob: float = 0.3,
                    mono_index: MonoIndex | None = None) -> ProtocolTree:
    """A random valid protocol: splits until monochromatic, sometimes beyond."""
    mi = mono_index or MonoIndex(table)

    def build(rect: HyperRect) -> ProtocolNode:
        axes = [a for a in range(table.d) if rect.axis_len(a) > 1]
        mono = mi.monochromatic(rect)
        if mono and (not axes or rng.random() >= extra_split_prob):
            return Leaf(table.symbol_at(rect.lo))
        axis = rng.choice(axes)
        cut = rng.randrange(rect.lo[axis], rect.hi[axis])
        low, high = rect.split(axis, cut)
        return Internal(axis, cut, build(low), build(high))

    return ProtocolTree(build(table.bounds()))


def refine_random_leaf(tree: ProtocolTree, table: FunctionTable,
                       rng: random.Random) -> ProtocolTree | None:
    """Split one randomly chosen multi-cell leaf in two; None if all are unit."""
    candidates = []

    def scan(node, rect, path):
        if isinstance(node, Leaf):
            if rect.volume() > 1:
                candidates.append((tuple(path), rect, node.value))
            return
        low, high = rect.split(node.party, node.cut_after)
        scan(node.low, low, path + [0])
        scan(node.high, high, path + [1])

    scan(tree.root, table.bounds(), [])
    if not candidates:
        return None
    path, rect, value = candidates[rng.randrange(len(candidates))]
    axes = [a for a in range(table.d) if rect.axis_len(a) > 1]
    axis = rng.choice(axes)
    cut = rng.randrange(rect.lo[axis], rect.hi[axis])
    replacement = Internal(axis, cut, Leaf(value), Leaf(value))

    def rebuild(node, depth):
        if depth == len(path):
            return replacement
        if path[depth] == 0:
            return Internal(node.party, node.cut_after,
                            rebuild(node.low, depth + 1), node.high)
        return Internal(node.party, node.cut_after, node.low,
                        rebuild(node.high, depth + 1))

    return ProtocolTree(rebuild(tree.root, 0))
