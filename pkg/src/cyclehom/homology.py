"""Integral homology of the cubical complexes, and component analysis.

Boundary matrices are assembled from the cubical structure (doubled
entries are the free interval coordinates); Betti numbers and torsion
come from an exact integer Smith normal form over arbitrary-precision
integers.  A mod-2 rank routine exists for quick smoke tests only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from heapq import heappush, heappop
from typing import Iterable, Sequence

from .complexes import HomComplex, MultiHomCell


@dataclass(frozen=True)
class BettiVector:
    """Integral Betti numbers (trailing zeros trimmed) and torsion.

    torsion maps a dimension to the sorted invariant factors > 1 of
    that homology group; dimensions without torsion are absent.
    """

    betti: tuple[int, ...]
    torsion: tuple[tuple[int, tuple[int, ...]], ...] = ()

    @classmethod
    def of(cls, betti: Sequence[int], torsion: dict[int, Sequence[int]] | None = None):
        b = list(betti)
        while b and b[-1] == 0:
            b.pop()
        t = tuple(
            sorted((d, tuple(sorted(f))) for d, f in (torsion or {}).items() if f)
        )
        return cls(tuple(b), t)

    @property
    def torsion_free(self) -> bool:
        return not self.torsion


class ChainComplex:
    """Integer boundary matrices of a cubical complex, one per dimension.

    boundary(d) maps d-cells (columns) to (d-1)-cells (rows), given as
    (rows, cols, {(i, j): value}).  The composite of consecutive
    boundaries is checked to vanish on construction.
    """

    def __init__(
        self,
        cell_counts: Sequence[int],
        boundaries: Sequence[dict[tuple[int, int], int]],
    ):
        self.cell_counts = tuple(cell_counts)
        self.boundaries = tuple(dict(b) for b in boundaries)
        if len(self.boundaries) != max(len(self.cell_counts) - 1, 0):
            raise ValueError("need one boundary matrix per dimension >= 1")
        self._check_squares_to_zero()

    def boundary(self, d: int) -> tuple[int, int, dict[tuple[int, int], int]]:
        if not 1 <= d < len(self.cell_counts):
            rows = self.cell_counts[d - 1] if 1 <= d <= len(self.cell_counts) else 0
            return (rows, 0, {})
        return (self.cell_counts[d - 1], self.cell_counts[d], self.boundaries[d - 1])

    @property
    def dimension(self) -> int:
        return len(self.cell_counts) - 1

    def _check_squares_to_zero(self) -> None:
        for d in range(2, len(self.cell_counts)):
            _, _, outer = self.boundary(d - 1)
            _, _, inner = self.boundary(d)
            by_col: dict[int, list[tuple[int, int]]] = {}
            for (i, j), v in inner.items():
                by_col.setdefault(j, []).append((i, v))
            rows_of_outer: dict[int, list[tuple[int, int]]] = {}
            for (i, j), v in outer.items():
                rows_of_outer.setdefault(j, []).append((i, v))
            for j, col in by_col.items():
                acc: dict[int, int] = {}
                for mid, v in col:
                    for i, w in rows_of_outer.get(mid, ()):
                        acc[i] = acc.get(i, 0) + v * w
                if any(acc.values()):
                    raise AssertionError(
                        f"boundary of boundary is nonzero in dimension {d} "
                        "(orientation bug)"
                    )


def boundary_matrices(cells_by_dim: Sequence[Sequence[MultiHomCell]]) -> ChainComplex:
    """Assemble signed boundary matrices from cells grouped by dimension.

    Free coordinates of a cell are its doubled entries, sorted by
    source position; direction k contributes (-1)^k (upper_k - lower_k)
    where lower/upper shrink the doubled entry to its smaller/larger
    label.  Entries of cardinality > 2 are rejected (non-cubical).
    """
    index = [{c: i for i, c in enumerate(layer)} for layer in cells_by_dim]
    boundaries = []
    for d in range(1, len(cells_by_dim)):
        entries: dict[tuple[int, int], int] = {}
        lower_index = index[d - 1]
        for j, cell in enumerate(cells_by_dim[d]):
            sign = 1
            for pos, mask in enumerate(cell.masks):
                bits = mask.bit_count()
                if bits == 1:
                    continue
                if bits > 2:
                    raise ValueError(
                        f"cell {cell!r} has a non-interval entry; "
                        "only cubical complexes are supported"
                    )
                low_bit = mask & -mask
                high_bit = mask ^ low_bit
                for face_bit, coeff in ((high_bit, sign), (low_bit, -sign)):
                    face = MultiHomCell(
                        cell.masks[:pos] + (face_bit,) + cell.masks[pos + 1:]
                    )
                    i = lower_index[face]
                    entries[(i, j)] = entries.get((i, j), 0) + coeff
                sign = -sign
        boundaries.append(entries)
    return ChainComplex([len(layer) for layer in cells_by_dim], boundaries)


def betti(chain: ChainComplex) -> BettiVector:
    """Betti numbers and torsion coefficients via exact Smith normal form."""
    dims = len(chain.cell_counts)
    factors: list[list[int]] = [[] for _ in range(dims + 1)]
    for d in range(1, dims):
        rows, cols, entries = chain.boundary(d)
        factors[d] = invariant_factors(rows, cols, entries)
    b = []
    torsion: dict[int, list[int]] = {}
    for d in range(dims):
        rank_d = len(factors[d])
        rank_up = len(factors[d + 1]) if d + 1 < len(factors) else 0
        b.append(chain.cell_counts[d] - rank_d - rank_up)
        t = [f for f in (factors[d + 1] if d + 1 < len(factors) else []) if f > 1]
        if t:
            torsion[d] = t
    return BettiVector.of(b, torsion)


# ---------------------------------------------------------------------------
# exact Smith normal form, sparse


def invariant_factors(
    rows: int, cols: int, entries: dict[tuple[int, int], int]
) -> list[int]:
    """Nonzero invariant factors d_1 | d_2 | ... of an integer matrix.

    Sparse elimination: unit pivots chosen by a Markowitz-style fill
    estimate are peeled off first (each contributes a factor 1); any
    residual block with no unit entry goes through the classical
    algorithm with Bezout steps.
    """
    row_data: dict[int, dict[int, int]] = {}
    col_rows: dict[int, set[int]] = {}
    for (i, j), v in entries.items():
        if v:
            row_data.setdefault(i, {})[j] = v
            col_rows.setdefault(j, set()).add(i)

    unit_count = 0
    heap: list[tuple[int, int, int]] = []  # (fill estimate, row, col)

    def push_candidates(i: int) -> None:
        row = row_data.get(i)
        if not row:
            return
        best = None
        for j, v in row.items():
            if v in (1, -1):
                est = (len(row) - 1) * (len(col_rows[j]) - 1)
                if best is None or est < best[0]:
                    best = (est, i, j)
        if best is not None:
            heappush(heap, best)

    for i in row_data:
        push_candidates(i)

    while heap:
        est, i, j = heappop(heap)
        row = row_data.get(i)
        if not row or row.get(j) not in (1, -1):
            continue
        if (len(row) - 1) * (len(col_rows[j]) - 1) > est:
            heappush(heap, ((len(row) - 1) * (len(col_rows[j]) - 1), i, j))
            continue
        pivot = row[j]
        unit_count += 1
        # clear column j with row i, then drop both
        targets = [r for r in col_rows[j] if r != i]
        for r in targets:
            other = row_data[r]
            factor = other[j] * pivot  # pivot is +-1
            for jj, v in row.items():
                newv = other.get(jj, 0) - factor * v
                if newv:
                    other[jj] = newv
                    col_rows.setdefault(jj, set()).add(r)
                else:
                    if jj in other:
                        del other[jj]
                        col_rows[jj].discard(r)
            if not other:
                del row_data[r]
        for jj in row:
            col_rows[jj].discard(i)
            if not col_rows[jj]:
                del col_rows[jj]
        del row_data[i]
        for r in targets:
            push_candidates(r)

    if not row_data:
        return [1] * unit_count

    residual = _dense_snf(row_data)
    return [1] * unit_count + residual


def _dense_snf(row_data: dict[int, dict[int, int]]) -> list[int]:
    """Classical Smith normal form of a small residual block."""
    row_ids = sorted(row_data)
    col_ids = sorted({j for row in row_data.values() for j in row})
    a = [[row_data[i].get(j, 0) for j in col_ids] for i in row_ids]
    nr, nc = len(a), len(col_ids)
    factors = []
    top = 0
    while True:
        # find the smallest nonzero entry at or after (top, top)
        best = None
        for i in range(top, nr):
            for j in range(top, nc):
                v = a[i][j]
                if v and (best is None or abs(v) < abs(best[2])):
                    best = (i, j, v)
        if best is None:
            break
        bi, bj, _ = best
        a[top], a[bi] = a[bi], a[top]
        for row in a:
            row[top], row[bj] = row[bj], row[top]
        while True:
            p = a[top][top]
            swapped = False
            for i in range(top + 1, nr):
                if a[i][top]:
                    q = a[i][top] // p
                    for j in range(top, nc):
                        a[i][j] -= q * a[top][j]
                    if a[i][top]:  # remainder becomes the smaller pivot
                        a[top], a[i] = a[i], a[top]
                        swapped = True
                        break
            if swapped:
                continue
            for j in range(top + 1, nc):
                if a[top][j]:
                    q = a[top][j] // p
                    for i in range(top, nr):
                        a[i][j] -= q * a[i][top]
                    if a[top][j]:
                        for i in range(top, nr):
                            a[i][top], a[i][j] = a[i][j], a[i][top]
                        swapped = True
                        break
            if swapped:
                continue
            # row and column are clear; enforce the divisibility chain
            offender = None
            for i in range(top + 1, nr):
                if any(a[i][j] % p for j in range(top + 1, nc)):
                    offender = i
                    break
            if offender is None:
                break
            for j in range(top, nc):
                a[top][j] += a[offender][j]
        factors.append(abs(a[top][top]))
        top += 1
        if top >= nr or top >= nc:
            break
    return factors


def rank_mod2(rows: int, cols: int, entries: dict[tuple[int, int], int]) -> int:
    """GF(2) rank via bitset elimination; smoke tests only, never homology."""
    bitrows: dict[int, int] = {}
    for (i, j), v in entries.items():
        if v % 2:
            bitrows[i] = bitrows.get(i, 0) ^ (1 << j)
    basis: list[int] = []
    for vec in bitrows.values():
        for b in basis:
            low = b & -b
            if vec & low:
                vec ^= b
        if vec:
            basis.append(vec)
    return len(basis)


# ---------------------------------------------------------------------------
# components


@dataclass
class ComponentReport:
    """One connected component: label, cell counts, homology, type."""

    key: object
    f_vector: tuple[int, ...]
    betti: BettiVector | None = None
    classification: str | None = None
    cells: tuple[MultiHomCell, ...] = field(default=(), repr=False)

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** d * f for d, f in enumerate(self.f_vector))


def component_cells(cells: Iterable[MultiHomCell]) -> list[list[MultiHomCell]]:
    """Partition cells into connected components via the 1-skeleton.

    Each cell joins the component of a vertex in its closure; closures
    are connected, so union-find over edge endpoints suffices.
    """
    all_cells = list(cells)
    vertex_ids: dict[MultiHomCell, int] = {}
    for c in all_cells:
        if c.dim == 0:
            vertex_ids.setdefault(c, len(vertex_ids))
    parent = list(range(len(vertex_ids)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in all_cells:
        if c.dim == 1:
            ends = [v for v in _cell_vertices(c)]
            a, b = (vertex_ids[v] for v in ends)
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra
    groups: dict[int, list[MultiHomCell]] = {}
    for c in all_cells:
        root = find(vertex_ids[c.min_vertex()])
        groups.setdefault(root, []).append(c)
    return sorted(groups.values(), key=lambda g: min(g).sort_key())


def _cell_vertices(c: MultiHomCell) -> list[MultiHomCell]:
    out = [MultiHomCell(())]
    for mask in c.masks:
        bits = []
        rest = mask
        while rest:
            bit = rest & -rest
            bits.append(bit)
            rest ^= bit
        out = [MultiHomCell(v.masks + (b,)) for v in out for b in bits]
    return out


def analyze_components(
    cells: Iterable[MultiHomCell],
    with_homology: bool = True,
    key_fn=None,
) -> list[ComponentReport]:
    """Component census: f-vectors, optional homology and classification."""
    reports = []
    for group in component_cells(cells):
        top = max(c.dim for c in group)
        layers: list[list[MultiHomCell]] = [[] for _ in range(top + 1)]
        for c in sorted(group, key=MultiHomCell.sort_key):
            layers[c.dim].append(c)
        f_vec = tuple(len(layer) for layer in layers)
        report = ComponentReport(
            key=key_fn(group) if key_fn else None,
            f_vector=f_vec,
            cells=tuple(c for layer in layers for c in layer),
        )
        if with_homology:
            report.betti = betti(boundary_matrices(layers))
            report.classification = classify(f_vec, report.betti)
        reports.append(report)
    return reports


def classify(f_vector: tuple[int, ...], bv: BettiVector) -> str:
    """Homological type: point, circle, contractible, or other.

    Homology equality is a necessary condition for the corresponding
    homotopy type, not a proof of it.
    """
    if f_vector == (1,):
        return "point"
    if bv.betti == (1,) and bv.torsion_free:
        return "contractible"
    if bv.betti == (1, 1) and bv.torsion_free:
        return "circle"
    return "other"


def classify_total(bv: BettiVector) -> str:
    """Whole-complex homological type, for the two-point collapse results."""
    if bv.betti == (2,) and bv.torsion_free:
        return "two_points"
    if bv.betti == (1,) and bv.torsion_free:
        return "contractible"
    if bv.betti == (1, 1) and bv.torsion_free:
        return "circle"
    return "other"
