"""Returning-point codes for Hom(C_m, C_n) and Hom(C_2k, L_n) cells.

A vertex (a_1, ..., a_m) walks around (or along) the target with unit
steps; positions where it steps backward are its returning points.  A
vertex is coded as (base; p_1, ..., p_r): first coordinate plus the
sorted returning positions.  A cell additionally carries plus-flags: a
plussed position p doubles the entry after p, giving a free (interval)
coordinate of the cubical cell.  For cycle targets this requires
n != 4, where doubled entries stop determining their base uniquely.

Text form: ``(2; 2, 3+, 6+, 8+)`` — base, then positions, ``+`` for
plus-flags.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Sequence

from .complexes import MultiHomCell

FAMILY_CYCLE = "cycle"
FAMILY_PATH = "path"


def mod1(i: int, k: int) -> int:
    """The representative of i mod k lying in 1..k."""
    return (i - 1) % k + 1


@dataclass(frozen=True)
class CycleSpec:
    """Source/target shape for the codec.

    m is the source cycle length (even when the target is a string);
    n is the target length.  family 'cycle' means target C_n (n != 4),
    family 'path' means target L_n.
    """

    m: int
    n: int
    family: str = FAMILY_CYCLE

    def __post_init__(self):
        if self.family not in (FAMILY_CYCLE, FAMILY_PATH):
            raise ValueError(f"unknown family {self.family!r}")
        if self.family == FAMILY_CYCLE:
            if self.m < 3:
                raise ValueError("cycle source needs m >= 3")
            if self.n < 3:
                raise ValueError("cycle target needs n >= 3")
            if self.n == 4:
                raise ValueError(
                    "the code is not defined for target C_4; "
                    "use the complex builder with twin folds instead"
                )
        else:
            if self.m < 2 or self.m % 2:
                raise ValueError("string targets need an even source cycle")
            if self.n < 2:
                raise ValueError("string target needs n >= 2")

    def r_values(self) -> list[int]:
        """Returning-point counts realized by vertices: m = nk + 2r."""
        if self.family == FAMILY_PATH:
            return [self.m // 2]
        return [r for r in range(self.m + 1) if (self.m - 2 * r) % self.n == 0]


@dataclass(frozen=True, order=True)
class VertexCode:
    """(base; p_1, .., p_r): first coordinate and sorted returning positions."""

    base: int
    points: tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.points)


@dataclass(frozen=True, order=True)
class CellCode:
    """A cell code: vertex code plus plus-flags.

    plus is a bitmask parallel to points: bit k set means points[k] is
    plussed.  The dimension equals the number of plus-flags.
    """

    base: int
    points: tuple[int, ...]
    plus: int = 0

    @property
    def r(self) -> int:
        return len(self.points)

    @property
    def dim(self) -> int:
        return self.plus.bit_count()

    def is_plussed(self, k: int) -> bool:
        """Whether the k-th position (0-based index into points) is plussed."""
        return bool(self.plus >> k & 1)

    def plussed_positions(self) -> tuple[int, ...]:
        return tuple(p for k, p in enumerate(self.points) if self.plus >> k & 1)

    def vertex_code(self) -> VertexCode:
        """The code of the cell's minimal vertex (all flags dropped)."""
        return VertexCode(self.base, self.points)


@dataclass(frozen=True, order=True)
class ComponentKey:
    """Connected-component label: returning count, base parity, base.

    parity (1 = odd first coordinate, 2 = even) is set when the target
    makes it an invariant: even cycle targets and all string targets.
    base is set only for the isolated-vertex components (r = 0 or
    r = m), each of which is a component by itself.  Components of a
    C_4 target carry no returning count (it is not constant there).
    """

    r: int | None
    parity: int | None = None
    base: int | None = None


def base_parity(base: int) -> int:
    return 1 if base % 2 else 2


# ---------------------------------------------------------------------------
# vertices


def encode_vertex(spec: CycleSpec, tup: Sequence[int]) -> VertexCode:
    """Code a vertex tuple; rejects tuples that break the step condition."""
    m, n = spec.m, spec.n
    if len(tup) != m:
        raise ValueError(f"expected {m} entries, got {len(tup)}")
    points = []
    for i in range(m):
        a, b = tup[i], tup[(i + 1) % m]
        if not (1 <= a <= n):
            raise ValueError(f"entry {a} out of range 1..{n}")
        if spec.family == FAMILY_CYCLE:
            step = (b - a) % n
            if step == n - 1:
                points.append(i + 1)
            elif step != 1:
                raise ValueError(f"invalid step {a} -> {b} at position {i + 1}")
        else:
            if a - b == 1:
                points.append(i + 1)
            elif b - a != 1:
                raise ValueError(f"invalid step {a} -> {b} at position {i + 1}")
    return VertexCode(tup[0], tuple(points))


def validate_vertex_code(spec: CycleSpec, code: VertexCode) -> None:
    _validate_positions(spec, code.base, code.points)
    if spec.family == FAMILY_PATH:
        _decode_values(spec, code.base, code.points)  # range check


def decode_vertex(spec: CycleSpec, code: VertexCode) -> tuple[int, ...]:
    """Inverse of encode_vertex."""
    _validate_positions(spec, code.base, code.points)
    return tuple(_decode_values(spec, code.base, code.points))


def _validate_positions(spec: CycleSpec, base: int, points: tuple[int, ...]) -> None:
    m, n = spec.m, spec.n
    if not 1 <= base <= n:
        raise ValueError(f"base {base} out of range 1..{n}")
    if any(not 1 <= p <= m for p in points):
        raise ValueError(f"positions {points} out of range 1..{m}")
    if any(a >= b for a, b in zip(points, points[1:])):
        raise ValueError(f"positions {points} must be strictly increasing")
    r = len(points)
    if spec.family == FAMILY_CYCLE:
        if (m - 2 * r) % n:
            raise ValueError(
                f"no winding number k solves m = nk + 2r for m={m}, n={n}, r={r}"
            )
    else:
        if r != m // 2:
            raise ValueError(f"string targets force r = {m // 2}, got {r}")


def _decode_values(spec: CycleSpec, base: int, points: tuple[int, ...]) -> list[int]:
    """Values a_j = base + j - 1 - 2|{q : p_q < j}|, reduced mod n for cycles."""
    m, n = spec.m, spec.n
    values = []
    rho = 0
    pts = set(points)
    for j in range(1, m + 1):
        a = base + j - 1 - 2 * rho
        if spec.family == FAMILY_CYCLE:
            values.append(mod1(a, n))
        else:
            if not 1 <= a <= n:
                raise ValueError(
                    f"decoded entry {a} at position {j} falls outside 1..{n}"
                )
            values.append(a)
        if j in pts:
            rho += 1
    return values


def enumerate_vertices(
    spec: CycleSpec, r: int | None = None, parity: int | None = None
) -> Iterator[VertexCode]:
    """All vertex codes, optionally restricted to r and base parity."""
    rs = spec.r_values() if r is None else ([r] if r in spec.r_values() else [])
    for base in range(1, spec.n + 1):
        if parity is not None and base_parity(base) != parity:
            continue
        for rr in rs:
            if spec.family == FAMILY_CYCLE:
                for pts in combinations(range(1, spec.m + 1), rr):
                    yield VertexCode(base, pts)
            else:
                for pts in _path_position_sets(spec, base):
                    yield VertexCode(base, pts)


def _path_position_sets(spec: CycleSpec, base: int) -> Iterator[tuple[int, ...]]:
    """Position sets whose decoded walk stays inside 1..n."""
    m, n = spec.m, spec.n
    half = m // 2
    pts: list[int] = []

    def walk(j: int, value: int, used: int) -> Iterator[tuple[int, ...]]:
        # value = a_j; decide whether position j returns (step down) or not
        if j == m:
            # the wrap step is consistent automatically: with used points
            # before m, a_m is base-1 (ascend into base) or base+1 (descend)
            if used == half:
                yield tuple(pts)
            elif used == half - 1:
                pts.append(m)
                yield tuple(pts)
                pts.pop()
            return
        remaining = m - j + 1  # positions j..m are still undecided
        need = half - used
        if need > remaining or need < 0:
            return
        if value < n:
            yield from walk(j + 1, value + 1, used)
        if value > 1 and need >= 1:
            pts.append(j)
            yield from walk(j + 1, value - 1, used + 1)
            pts.pop()

    yield from walk(1, base, 0)


# ---------------------------------------------------------------------------
# cells


def plussable_positions(spec: CycleSpec, base: int, points: tuple[int, ...]) -> list[int]:
    """Positions that may carry a plus-flag.

    A plussed position must be successor-free (the cyclically next
    position is not itself a returning point); on string targets the
    value at the position must also sit below the top label n, else the
    doubled entry would overflow.
    """
    pts = set(points)
    allowed = []
    if spec.family == FAMILY_CYCLE:
        for p in points:
            if mod1(p + 1, spec.m) not in pts:
                allowed.append(p)
    else:
        for j, p in enumerate(points, start=1):
            if mod1(p + 1, spec.m) in pts:
                continue
            if base + p + 1 - 2 * j == spec.n:
                continue
            allowed.append(p)
    return allowed


def validate_cell_code(spec: CycleSpec, code: CellCode) -> None:
    _validate_positions(spec, code.base, code.points)
    if code.plus >> len(code.points):
        raise ValueError("plus-flag bitmask wider than the position list")
    if spec.family == FAMILY_PATH:
        _decode_values(spec, code.base, code.points)
    allowed = set(plussable_positions(spec, code.base, code.points))
    for p in code.plussed_positions():
        if p not in allowed:
            raise ValueError(f"position {p} cannot carry a plus-flag in {format_code(code)}")


def enumerate_cells(
    spec: CycleSpec,
    r: int | None = None,
    d: int | None = None,
    parity: int | None = None,
) -> list[CellCode]:
    """All cell codes with r returning points and dimension d, in code order.

    Omitting r or d enumerates over all feasible values; parity
    restricts the base's parity class.  Returns an empty list for
    infeasible combinations.
    """
    out: list[CellCode] = []
    for vc in enumerate_vertices(spec, r=r, parity=parity):
        allowed = plussable_positions(spec, vc.base, vc.points)
        index_of = {p: k for k, p in enumerate(vc.points)}
        sizes = range(len(allowed) + 1) if d is None else [d]
        for size in sizes:
            if size > len(allowed):
                continue
            for chosen in combinations(allowed, size):
                mask = 0
                for p in chosen:
                    mask |= 1 << index_of[p]
                out.append(CellCode(vc.base, vc.points, mask))
    out.sort()
    return out


def decode_cell(spec: CycleSpec, code: CellCode) -> MultiHomCell:
    """The cell in multi-cell form: doubled entries after plussed positions."""
    validate_cell_code(spec, code)
    m, n = spec.m, spec.n
    values = _decode_values(spec, code.base, code.points)
    doubled = {mod1(p + 1, m) for p in code.plussed_positions()}
    masks = []
    for j in range(1, m + 1):
        a = values[j - 1]
        mask = 1 << (a - 1)
        if j in doubled:
            if spec.family == FAMILY_CYCLE:
                mask |= 1 << (mod1(a + 2, n) - 1)
            else:
                mask |= 1 << (a + 1)  # label a+2
        masks.append(mask)
    return MultiHomCell(masks)


def encode_cell(spec: CycleSpec, cell: MultiHomCell) -> CellCode:
    """Inverse of decode_cell."""
    m, n = spec.m, spec.n
    entries = cell.entries()
    if len(entries) != m:
        raise ValueError(f"expected {m} entries, got {len(entries)}")
    if any(len(e) > 2 for e in entries):
        raise ValueError("entries of cardinality > 2 have no code")

    def entry_base(e: tuple[int, ...]) -> int:
        # the element whose +2 successor is the other one
        if len(e) == 1:
            return e[0]
        x, y = e
        if spec.family == FAMILY_PATH:
            return x
        if mod1(x + 2, n) == y:
            return x
        if mod1(y + 2, n) == x:
            return y
        raise ValueError(f"entry {e} is not a doubled code entry")

    points = []
    plus_points = set()
    for p in range(1, m + 1):
        nxt = mod1(p + 1, m)
        if len(entries[nxt - 1]) == 2:
            points.append(p)
            plus_points.add(p)
        elif len(entries[p - 1]) == 1:
            a, b = entries[p - 1][0], entries[nxt - 1][0]
            down = (a - b) % n == 1 if spec.family == FAMILY_CYCLE else a - b == 1
            if down:
                points.append(p)
    mask = 0
    for k, p in enumerate(points):
        if p in plus_points:
            mask |= 1 << k
    code = CellCode(entry_base(entries[0]), tuple(points), mask)
    validate_cell_code(spec, code)
    return code


def facets_of_code(spec: CycleSpec, code: CellCode) -> list[CellCode]:
    """All codimension-1 faces of a cell, as codes.

    Un-plussing position p yields the faces with p and with p+1; a plus
    at the last position m additionally rotates the base: the two faces
    are (base; ..., m) and (base+2; 1, ...).
    """
    if code.dim < 1:
        raise ValueError("a 0-cell has no facets")
    m, n = spec.m, spec.n
    out = []
    points = code.points
    for k, p in enumerate(points):
        if not code.is_plussed(k):
            continue
        unflagged = code.plus ^ (1 << k)
        if p != m:
            out.append(CellCode(code.base, points, unflagged))
            shifted = points[:k] + (p + 1,) + points[k + 1:]
            out.append(CellCode(code.base, shifted, unflagged))
        else:
            out.append(CellCode(code.base, points, unflagged))
            new_base = mod1(code.base + 2, n) if spec.family == FAMILY_CYCLE else code.base + 2
            # plus-flags keep their positions, which all shift up one slot
            out.append(CellCode(new_base, (1,) + points[:-1], unflagged << 1))
    out.sort()
    return out


def component_key(spec: CycleSpec, v: VertexCode | CellCode) -> ComponentKey:
    """The connected-component label of a vertex (or any cell) code.

    Two vertices share a key iff they lie in the same component: the
    returning count is constant on components, bases connect in steps
    of two around a cycle target, and isolated vertices (r = 0 or
    r = m, forced windings) are components by themselves.
    """
    r = len(v.points)
    if spec.family == FAMILY_PATH:
        return ComponentKey(r=r, parity=base_parity(v.base))
    if r in (0, spec.m):
        return ComponentKey(r=r, base=v.base)
    if spec.n % 2 == 0:
        return ComponentKey(r=r, parity=base_parity(v.base))
    return ComponentKey(r=r)


# ---------------------------------------------------------------------------
# text form


def format_code(code: CellCode | VertexCode) -> str:
    """Render ``(base; p1, p2+, ...)``; a plain vertex prints without flags."""
    if isinstance(code, VertexCode):
        code = CellCode(code.base, code.points)
    parts = [
        f"{p}+" if code.is_plussed(k) else str(p)
        for k, p in enumerate(code.points)
    ]
    return f"({code.base}; {', '.join(parts)})" if parts else f"({code.base};)"


def parse_code(text: str) -> CellCode:
    """Parse the text form produced by format_code."""
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ValueError(f"malformed code {text!r}")
    body = s[1:-1]
    if ";" not in body:
        raise ValueError(f"malformed code {text!r}: missing ';'")
    head, _, tail = body.partition(";")
    base = int(head.strip())
    points = []
    mask = 0
    tail = tail.strip()
    if tail:
        for k, part in enumerate(tail.split(",")):
            part = part.strip()
            if part.endswith("+"):
                mask |= 1 << k
                part = part[:-1].strip()
            points.append(int(part))
    return CellCode(base, tuple(points), mask)
