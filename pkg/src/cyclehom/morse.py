"""Partial matchings on face posets, acyclicity verification, and the
concrete collapse matchings for cycle and string targets.

A partial matching pairs cells with covering cells, injectively.  If
the up-down graph it induces is acyclic, the complex collapses onto its
critical cells; the verifier certifies this by explicit cycle
detection, never by trusting the construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Iterable

from .codec import (
    FAMILY_CYCLE,
    CellCode,
    CycleSpec,
    enumerate_cells,
    plussable_positions,
)
from .complexes import MultiHomCell, facets as cell_facets
from .graphs import Graph

Cell = Hashable

INF = float("inf")


class MatchingStructureError(Exception):
    """A matching that is not injective, not disjoint, or not cover-respecting."""


@dataclass
class PartialMatching:
    """An injective map from cells to covering cells; keys form the set S."""

    pairs: dict[Cell, Cell]

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass
class MorseReport:
    """Outcome of verifying a matching on a cell collection."""

    critical_cells: tuple
    acyclic: bool
    cycle_witness: tuple | None
    matched_pairs: int

    def __post_init__(self):
        if self.acyclic != (self.cycle_witness is None):
            raise ValueError("cycle witness present iff the matching is cyclic")


def verify_matching(
    cells: Iterable[Cell],
    matching: PartialMatching,
    facets_of: Callable[[Cell], Iterable[Cell]],
    dim_of: Callable[[Cell], int] = lambda c: c.dim,
) -> MorseReport:
    """Check a matching structurally and decide acyclicity.

    Structural defects (cells outside the collection, key/value overlap,
    non-injectivity, non-cover pairs) raise MatchingStructureError.
    Cyclicity is reported, with a witness sequence x_0, ..., x_t = x_0
    in S whose steps go through the matched covers.
    """
    cellset = set(cells)
    pairs = matching.pairs
    keys = set(pairs)
    values = list(pairs.values())
    valueset = set(values)
    if len(valueset) != len(values):
        raise MatchingStructureError("matching is not injective")
    if keys & valueset:
        raise MatchingStructureError("matched sets S and mu(S) overlap")
    for c in keys | valueset:
        if c not in cellset:
            raise MatchingStructureError(f"cell {c!r} outside the collection")

    facet_cache: dict[Cell, tuple] = {}

    def facets_cached(c: Cell) -> tuple:
        got = facet_cache.get(c)
        if got is None:
            got = tuple(facets_of(c))
            facet_cache[c] = got
        return got

    for x, mx in pairs.items():
        if dim_of(mx) != dim_of(x) + 1 or x not in facets_cached(mx):
            raise MatchingStructureError(f"{mx!r} does not cover {x!r}")

    # cycle detection on S: x -> y whenever y != x is a matched facet of mu(x)
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {x: WHITE for x in keys}
    witness = None
    for start in pairs:
        if color[start] != WHITE:
            continue
        stack = [(start, iter(facets_cached(pairs[start])))]
        color[start] = GRAY
        path = [start]
        while stack:
            node, it = stack[-1]
            advanced = False
            for y in it:
                if y == node or y not in keys:
                    continue
                if color[y] == GRAY:
                    loop_start = path.index(y)
                    witness = tuple(path[loop_start:]) + (y,)
                    break
                if color[y] == WHITE:
                    color[y] = GRAY
                    path.append(y)
                    stack.append((y, iter(facets_cached(pairs[y]))))
                    advanced = True
                    break
            if witness is not None:
                break
            if not advanced:
                color[node] = BLACK
                stack.pop()
                path.pop()
        if witness is not None:
            break

    critical = tuple(sorted(cellset - keys - valueset))
    return MorseReport(
        critical_cells=critical,
        acyclic=witness is None,
        cycle_witness=witness,
        matched_pairs=len(pairs),
    )


# ---------------------------------------------------------------------------
# the concrete matchings


def star_cells(
    cells: Iterable[MultiHomCell], base: int, source: Graph, target: Graph
) -> list[MultiHomCell]:
    """The subcomplex of cells whose closure meets {first entry contains base}.

    A cell belongs iff base already sits in its first entry or can be
    inserted there without breaking validity, i.e. base is adjacent to
    every label chosen at the source neighbors of vertex 1.
    """
    bit = 1 << (base - 1)
    nbr = target.neighbor_masks()
    nonneighbors = ~nbr[base]
    positions = [y - 1 for y in source.neighbors(1)]
    out = []
    for c in cells:
        if c.masks[0] & bit or all(not c.masks[y] & nonneighbors for y in positions):
            out.append(c)
    return out


def first_entry_matching(
    cells: Iterable[MultiHomCell], base: int
) -> PartialMatching:
    """Match each cell missing `base` in its first entry with the cell
    that inserts it.  Critical cells are exactly those pinned to {base}.

    The cell collection must be a star subcomplex as produced by
    star_cells, so every insertion stays inside it.
    """
    bit = 1 << (base - 1)
    pairs = {}
    for c in cells:
        if not c.masks[0] & bit:
            pairs[c] = MultiHomCell((c.masks[0] | bit,) + c.masks[1:])
    return PartialMatching(pairs)


def pinned_stratum(spec: CycleSpec, base: int, r: int | None = None) -> list[CellCode]:
    """Cells whose first entry is exactly {base}: base-coded, no plus at m."""
    if r is None:
        if spec.family == FAMILY_CYCLE:
            raise ValueError("cycle targets need the returning count r")
        r = spec.m // 2
    out = []
    for c in enumerate_cells(spec, r=r):
        if c.base != base:
            continue
        if c.points and c.points[-1] == spec.m and c.is_plussed(len(c.points) - 1):
            continue
        out.append(c)
    return out


def free_points(spec: CycleSpec, code: CellCode) -> list[int]:
    """Unplussed returning points, below m, that can absorb a plus-flag."""
    plussed = set(code.plussed_positions())
    return [
        p
        for p in plussable_positions(spec, code.base, code.points)
        if p != spec.m and p not in plussed
    ]


def shift_partner(spec: CycleSpec, code: CellCode) -> CellCode | None:
    """The matched cover of a code, if the code lies in S.

    R is the first free returning point, R+ the first plussed one; a
    cell with R < R+ is matched upward by plussing R.
    """
    free = free_points(spec, code)
    R = min(free) if free else INF
    plussed = code.plussed_positions()
    R_plus = min(plussed) if plussed else INF
    if not R < R_plus:
        return None
    k = code.points.index(R)
    return CellCode(code.base, code.points, code.plus | (1 << k))


def right_shift_matching(
    spec: CycleSpec, base: int, r: int | None = None
) -> tuple[list[CellCode], PartialMatching]:
    """The collapse matching on the pinned stratum of (base, r).

    Matched pairs shift returning points rightward; the single critical
    cell is the fully right-packed code given by
    predicted_critical_cell.
    """
    stratum = pinned_stratum(spec, base, r)
    pairs = {}
    for c in stratum:
        up = shift_partner(spec, c)
        if up is not None:
            pairs[c] = up
    return stratum, PartialMatching(pairs)


def predicted_critical_cell(spec: CycleSpec, base: int, r: int | None = None) -> CellCode:
    """The unique critical cell of the right-shift matching.

    Cycle targets: all r returning points packed against m.  String
    targets: the zigzag that climbs to the top label and then
    alternates, given by t = min(m/2, n - base).
    """
    if spec.family == FAMILY_CYCLE:
        if r is None:
            raise ValueError("cycle targets need the returning count r")
        return CellCode(base, tuple(range(spec.m - r + 1, spec.m + 1)))
    half = spec.m // 2
    t = min(half, spec.n - base)
    pts = [0] * half
    for k in range(half):
        if k < t:
            pts[half - k - 1] = spec.m - k
        else:
            pts[half - k - 1] = spec.m - 2 * k + t - 1
    return CellCode(base, tuple(pts))


def shift_potential_audit(
    spec: CycleSpec,
    matching: PartialMatching,
    facets_of: Callable[[CellCode], Iterable[CellCode]],
) -> list[tuple[CellCode, CellCode]]:
    """Check that the position sum rises by one along every S-to-S edge.

    Returns the offending (from, to) pairs; empty means the potential
    argument for acyclicity holds on this matching.
    """
    bad = []
    pairs = matching.pairs
    for x, mx in pairs.items():
        sx = sum(x.points)
        for y in facets_of(mx):
            if y != x and y in pairs and sum(y.points) != sx + 1:
                bad.append((x, y))
    return bad
