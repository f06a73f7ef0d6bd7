"""Deterministic SVG rendering of grids, region tilings, and cut overlays."""

from __future__ import annotations

from .errors import UnsupportedDimensionError
from .grid import FunctionTable, HyperRect
from .partition import RegionMap, ideal_partition
from .protocol import Internal, ProtocolTree

CELL = 28
MARGIN = 34

#: Fill palette, cycled by region id.
PALETTE = (
    "#a6cee3", "#fdbf6f", "#b2df8a", "#fb9a99", "#cab2d6", "#ffff99",
    "#1f78b4", "#ff7f00", "#33a02c", "#e31a1c", "#6a3d9a", "#b15928",
    "#8dd3c7", "#bebada", "#fccde5", "#d9d9d9",
)


def render_table_svg(table: FunctionTable,
                     region_map: RegionMap | None = None,
                     tree: ProtocolTree | None = None,
                     regions: str = "connected") -> str:
    """Grid with region colors and borders, plus an optional cut overlay.

    Output bytes depend only on the inputs.  Axis 0 runs downward (rows),
    axis 1 rightward.  Two-party grids only.
    """
    if table.d != 2:
        raise UnsupportedDimensionError("SVG rendering is two-dimensional only")
    rm = region_map or ideal_partition(table, regions)
    n = table.n
    size = 2 * MARGIN + n * CELL
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]

    def x(col):
        return MARGIN + col * CELL

    def y(row):
        return MARGIN + row * CELL

    show_text = n <= 16
    for row in range(n):
        for col in range(n):
            rid = rm.region_of[row * n + col]
            fill = PALETTE[rid % len(PALETTE)]
            out.append(f'<rect x="{x(col)}" y="{y(row)}" width="{CELL}" '
                       f'height="{CELL}" fill="{fill}"/>')
            if show_text:
                sym = table.symbol_at((row, col))
                out.append(f'<text x="{x(col) + CELL // 2}" '
                           f'y="{y(row) + CELL // 2 + 4}" font-size="10" '
                           f'text-anchor="middle" font-family="monospace">'
                           f'{_esc(sym)}</text>')
    # region borders: edges between different regions
    border = []
    for row in range(n):
        for col in range(n):
            rid = rm.region_of[row * n + col]
            if col + 1 < n and rm.region_of[row * n + col + 1] != rid:
                border.append((x(col + 1), y(row), x(col + 1), y(row + 1)))
            if row + 1 < n and rm.region_of[(row + 1) * n + col] != rid:
                border.append((x(col), y(row + 1), x(col + 1), y(row + 1)))
    for x1, y1, x2, y2 in border:
        out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                   f'stroke="black" stroke-width="2"/>')
    out.append(f'<rect x="{MARGIN}" y="{MARGIN}" width="{n * CELL}" '
               f'height="{n * CELL}" fill="none" stroke="black" stroke-width="2.5"/>')
    if show_text:
        for i in range(n):
            out.append(f'<text x="{x(i) + CELL // 2}" y="{MARGIN - 8}" '
                       f'font-size="10" text-anchor="middle" '
                       f'font-family="monospace">{table.perms[1].input_at(i)}</text>')
            out.append(f'<text x="{MARGIN - 10}" y="{y(i) + CELL // 2 + 4}" '
                       f'font-size="10" text-anchor="middle" '
                       f'font-family="monospace">{table.perms[0].input_at(i)}</text>')
    if tree is not None:
        out.extend(_cut_overlay(tree, table))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _cut_overlay(tree: ProtocolTree, table: FunctionTable) -> list[str]:
    lines = []

    def walk(node, rect: HyperRect):
        if not isinstance(node, Internal):
            return
        if node.party == 0:
            yy = MARGIN + (node.cut_after + 1) * CELL
            x1 = MARGIN + rect.lo[1] * CELL
            x2 = MARGIN + (rect.hi[1] + 1) * CELL
            lines.append(f'<line x1="{x1}" y1="{yy}" x2="{x2}" y2="{yy}" '
                         f'stroke="#d62728" stroke-width="2" '
                         f'stroke-dasharray="5,3"/>')
        else:
            xx = MARGIN + (node.cut_after + 1) * CELL
            y1 = MARGIN + rect.lo[0] * CELL
            y2 = MARGIN + (rect.hi[0] + 1) * CELL
            lines.append(f'<line x1="{xx}" y1="{y1}" x2="{xx}" y2="{y2}" '
                         f'stroke="#d62728" stroke-width="2" '
                         f'stroke-dasharray="5,3"/>')
        low, high = rect.split(node.party, node.cut_after)
        walk(node.low, low)
        walk(node.high, high)

    walk(tree.root, table.bounds())
    return lines


def _esc(text: str) -> str:
    return (text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;"))
