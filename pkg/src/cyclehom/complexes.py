"""Hom complexes of graph homomorphisms.

The brute-force builder enumerates every cell of Hom(G, H): functions
assigning a nonempty set of H-vertices to each G-vertex so that every
cross pair along a G-edge is an H-edge.  It is the correctness oracle
for the specialized cycle codes and all closed-form counts.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .graphs import Graph, delete_vertex, twins

DEFAULT_CELL_BUDGET = 10_000_000


class CellBudgetExceeded(Exception):
    """Raised when enumeration exceeds the configured cell budget."""

    def __init__(self, budget: int, partial_count: int):
        super().__init__(
            f"cell budget {budget} exceeded ({partial_count} cells enumerated so far)"
        )
        self.budget = budget
        self.partial_count = partial_count


class MultiHomCell:
    """A cell of Hom(G, H): one nonempty H-vertex set per G-vertex.

    Entries are stored as bitmasks over V(H) (bit k-1 = vertex k), one
    per source vertex in order.  The dimension is the total number of
    chosen vertices minus the number of source vertices.
    """

    __slots__ = ("masks",)

    def __init__(self, masks: Iterable[int]):
        self.masks = tuple(masks)

    @classmethod
    def from_entries(cls, entries: Iterable[Iterable[int]]) -> "MultiHomCell":
        masks = []
        for entry in entries:
            mask = 0
            for v in entry:
                if v < 1:
                    raise ValueError(f"vertex labels are 1-based, got {v}")
                mask |= 1 << (v - 1)
            if mask == 0:
                raise ValueError("cell entries must be nonempty")
            masks.append(mask)
        return cls(masks)

    def entry(self, x: int) -> tuple[int, ...]:
        """The x-th entry (1-based source vertex) as sorted labels."""
        return _mask_labels(self.masks[x - 1])

    def entries(self) -> tuple[tuple[int, ...], ...]:
        return tuple(_mask_labels(m) for m in self.masks)

    @property
    def dim(self) -> int:
        return sum(m.bit_count() for m in self.masks) - len(self.masks)

    def sort_key(self):
        return (self.dim, self.entries())

    def min_vertex(self) -> "MultiHomCell":
        """The vertex of this cell choosing the smallest label everywhere."""
        return MultiHomCell(m & -m for m in self.masks)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiHomCell):
            return NotImplemented
        return self.masks == other.masks

    def __hash__(self) -> int:
        return hash(self.masks)

    def __lt__(self, other: "MultiHomCell") -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        parts = ",".join(
            str(e[0]) if len(e) == 1 else "{" + ",".join(map(str, e)) + "}"
            for e in self.entries()
        )
        return f"({parts})"


def _mask_labels(mask: int) -> tuple[int, ...]:
    labels = []
    v = 1
    while mask:
        if mask & 1:
            labels.append(v)
        mask >>= 1
        v += 1
    return tuple(labels)


def is_valid_cell(source: Graph, target: Graph, cell: MultiHomCell) -> bool:
    """Check the defining condition: all cross pairs along edges are edges."""
    if len(cell.masks) != source.vertex_count:
        return False
    nbr = target.neighbor_masks()
    for mask in cell.masks:
        if mask == 0 or mask >> target.vertex_count:
            return False
    for a, b in source.edges:
        ma, mb = cell.masks[a - 1], cell.masks[b - 1]
        for v in _mask_labels(ma):
            if mb & ~nbr[v]:
                return False
    return True


class HomComplex:
    """All cells of Hom(source, target), grouped by dimension.

    Within each dimension, cells are in canonical order: lexicographic
    on the assignment with sorted entries.  Immutable once built.
    """

    __slots__ = ("source", "target", "cells_by_dim")

    def __init__(
        self,
        source: Graph,
        target: Graph,
        cells_by_dim: Iterable[Iterable[MultiHomCell]],
    ):
        self.source = source
        self.target = target
        self.cells_by_dim = tuple(tuple(layer) for layer in cells_by_dim)

    @classmethod
    def from_cells(
        cls, source: Graph, target: Graph, cells: Iterable[MultiHomCell]
    ) -> "HomComplex":
        unique = sorted(set(cells), key=MultiHomCell.sort_key)
        top = unique[-1].dim if unique else -1
        layers = [[] for _ in range(top + 1)]
        for c in unique:
            layers[c.dim].append(c)
        return cls(source, target, layers)

    @property
    def dimension(self) -> int:
        return len(self.cells_by_dim) - 1

    @property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(layer) for layer in self.cells_by_dim)

    @property
    def cell_count(self) -> int:
        return sum(len(layer) for layer in self.cells_by_dim)

    def cells(self, d: int) -> tuple[MultiHomCell, ...]:
        if 0 <= d < len(self.cells_by_dim):
            return self.cells_by_dim[d]
        return ()

    def all_cells(self) -> Iterator[MultiHomCell]:
        for layer in self.cells_by_dim:
            yield from layer

    def is_empty(self) -> bool:
        return not self.cells_by_dim

    def __repr__(self) -> str:
        return f"HomComplex(f_vector={self.f_vector})"


def homomorphisms(source: Graph, target: Graph) -> list[tuple[int, ...]]:
    """All graph homomorphisms source -> target, as value tuples.

    Backtracking over source vertices in order; each partial map is
    extended only with targets adjacent to all previously placed
    neighbors.
    """
    m = source.vertex_count
    nbr = target.neighbor_masks()
    full = (1 << target.vertex_count) - 1
    # for each source vertex, its already-placed neighbors
    placed_nbrs = [
        [u for u in source.neighbors(x) if u < x] for x in range(m + 1)
    ]
    out: list[tuple[int, ...]] = []
    values = [0] * (m + 1)

    def extend(x: int) -> None:
        if x > m:
            out.append(tuple(values[1:]))
            return
        allowed = full
        for u in placed_nbrs[x]:
            allowed &= nbr[values[u]]
        if source.has_edge(x, x):
            # loop at x: the image must be adjacent to itself
            allowed &= sum(1 << (v - 1) for v in target.vertices() if target.has_edge(v, v))
        while allowed:
            bit = allowed & -allowed
            values[x] = bit.bit_length()
            extend(x + 1)
            allowed ^= bit
    extend(1)
    return out


def build(
    source: Graph, target: Graph, budget: int = DEFAULT_CELL_BUDGET
) -> HomComplex:
    """Enumerate the full complex Hom(source, target).

    Every cell contains a vertex (choose one label per entry), and
    shrinking entries of a cell yields cells, so breadth-first growth
    from the homomorphisms by single-label insertions reaches every
    cell.  Growth is partitioned by the first entry's value; the result
    is canonically sorted, hence deterministic.
    """
    m = source.vertex_count
    nbr = target.neighbor_masks()
    src_nbrs = [tuple(source.neighbors(x)) for x in range(m + 1)]
    has_loop = [source.has_edge(x, x) for x in range(m + 1)]

    seeds = [
        tuple(1 << (v - 1) for v in hom) for hom in homomorphisms(source, target)
    ]
    seen: set[tuple[int, ...]] = set()
    by_first: dict[int, list[tuple[int, ...]]] = {}
    for s in seeds:
        by_first.setdefault(s[0], []).append(s)

    for part in by_first.values():
        frontier = [s for s in part if s not in seen]
        seen.update(frontier)
        while frontier:
            if len(seen) > budget:
                raise CellBudgetExceeded(budget, len(seen))
            nxt = []
            for masks in frontier:
                for x in range(1, m + 1):
                    candidates = ~masks[x - 1]
                    for y in src_nbrs[x]:
                        if y != x:
                            my = masks[y - 1]
                            common = -1
                            while my:
                                bit = my & -my
                                common &= nbr[bit.bit_length()]
                                my ^= bit
                            candidates &= common
                    candidates &= (1 << target.vertex_count) - 1
                    while candidates:
                        bit = candidates & -candidates
                        candidates ^= bit
                        if has_loop[x]:
                            grown_entry = masks[x - 1] | bit
                            if grown_entry & ~nbr[bit.bit_length()]:
                                continue
                        grown = masks[:x - 1] + (masks[x - 1] | bit,) + masks[x:]
                        if grown not in seen:
                            seen.add(grown)
                            nxt.append(grown)
            frontier = nxt

    return HomComplex.from_cells(source, target, (MultiHomCell(m) for m in seen))


def closure(cell: MultiHomCell) -> list[MultiHomCell]:
    """All cells obtained by shrinking entries of `cell`, including itself."""
    options: list[list[int]] = []
    for mask in cell.masks:
        subs = []
        sub = mask
        while sub:
            subs.append(sub)
            sub = (sub - 1) & mask
        options.append(subs)
    out = []

    def product(idx: int, acc: list[int]) -> None:
        if idx == len(options):
            out.append(MultiHomCell(acc))
            return
        for sub in options[idx]:
            acc.append(sub)
            product(idx + 1, acc)
            acc.pop()

    product(0, [])
    return out


def facets(cell: MultiHomCell) -> list[MultiHomCell]:
    """All codimension-1 faces: remove a single label from a doubled-or-bigger entry."""
    if cell.dim < 1:
        raise ValueError("a 0-cell has no facets")
    out = []
    masks = cell.masks
    for x, mask in enumerate(masks):
        if mask.bit_count() < 2:
            continue
        rest = mask
        while rest:
            bit = rest & -rest
            rest ^= bit
            out.append(MultiHomCell(masks[:x] + (mask ^ bit,) + masks[x + 1:]))
    return out


def fold_reduce(
    cx: HomComplex, u: int, v: int
) -> tuple[HomComplex, dict[MultiHomCell, MultiHomCell]]:
    """Fold target vertex v onto its twin u and rewrite every cell.

    Requires N(u) = N(v) in the target.  Entries containing v become
    (entry + {u}) - {v}; remaining labels are compressed to 1..n-1.
    Returns the reduced complex together with the cell-level surjection
    for audit.
    """
    if u == v or (min(u, v), max(u, v)) not in twins(cx.target):
        raise ValueError(f"vertices {u} and {v} are not twins in the target")
    new_target, relabel = delete_vertex(cx.target, v)
    ubit = 1 << (u - 1)
    vbit = 1 << (v - 1)
    shift = {1 << (old - 1): 1 << (new - 1) for old, new in relabel.items()}

    def fold_mask(mask: int) -> int:
        if mask & vbit:
            mask = (mask | ubit) & ~vbit
        out = 0
        while mask:
            bit = mask & -mask
            out |= shift[bit]
            mask ^= bit
        return out

    mapping = {
        cell: MultiHomCell(fold_mask(m) for m in cell.masks)
        for cell in cx.all_cells()
    }
    reduced = HomComplex.from_cells(cx.source, new_target, mapping.values())
    return reduced, mapping


def fold_chain(cx: HomComplex) -> tuple[HomComplex, list[tuple[int, int]]]:
    """Fold twin vertices repeatedly until none remain.

    Each step removes the larger vertex of the lexicographically first
    twin pair.  Returns the fully reduced complex and the (u, v) fold
    sequence, labels as of each step.
    """
    steps: list[tuple[int, int]] = []
    while True:
        pairs = twins(cx.target)
        if not pairs:
            return cx, steps
        u, v = min(pairs)
        cx, _ = fold_reduce(cx, u, v)
        steps.append((u, v))
