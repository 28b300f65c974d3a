"""Cross-check suite: codes, counts, census, homology, and matchings
are all validated against the brute-force complex on a grid.

Each check yields CheckResult records; the CLI renders them and exits
nonzero when any expected/computed pair disagrees.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import partial
from typing import Callable, Iterable

from . import census
from .census import CensusEntry, table9, table9_row_counts
from .codec import (
    CellCode,
    ComponentKey,
    CycleSpec,
    base_parity,
    component_key,
    decode_cell,
    encode_cell,
    encode_vertex,
    decode_vertex,
    enumerate_cells,
    facets_of_code,
)
from .complexes import HomComplex, MultiHomCell, build, facets
from .graphs import cycle, path
from .homology import (
    analyze_components,
    betti,
    boundary_matrices,
    classify_total,
)
from .morse import (
    first_entry_matching,
    pinned_stratum,
    predicted_critical_cell,
    right_shift_matching,
    shift_potential_audit,
    star_cells,
    verify_matching,
)


@dataclass
class CheckResult:
    name: str
    ok: bool
    expected: object = None
    computed: object = None
    note: str = ""

    def diff(self) -> str:
        if self.ok:
            return ""
        return f"expected {self.expected!r}, computed {self.computed!r}"


def _result(name: str, expected, computed, note: str = "") -> CheckResult:
    return CheckResult(name, expected == computed, expected, computed, note)


def label_component(
    m: int, n: int, family: str, cells: Iterable[MultiHomCell]
) -> ComponentKey:
    """The census key of an enumerated component, from any of its vertices."""
    vertex = min(c for c in cells if c.dim == 0)
    first = vertex.entry(1)[0]
    if family == "cycle" and n == 4:
        return ComponentKey(r=None, parity=base_parity(first))
    spec = CycleSpec(m, n, family)
    tup = tuple(e[0] for e in vertex.entries())
    return component_key(spec, encode_vertex(spec, tup))


def build_cycle_complex(m: int, n: int, budget: int | None = None) -> HomComplex:
    kwargs = {"budget": budget} if budget else {}
    return build(cycle(m), cycle(n), **kwargs)


def build_path_complex(m: int, n: int, budget: int | None = None) -> HomComplex:
    kwargs = {"budget": budget} if budget else {}
    return build(cycle(m), path(n), **kwargs)


# ---------------------------------------------------------------------------
# individual checks


def check_emptiness(m: int, n: int, cx: HomComplex | None = None) -> list[CheckResult]:
    cx = cx or build_cycle_complex(m, n)
    return [
        _result(
            f"empty({m},{n},cycle)", census.is_empty(m, n, "cycle"), cx.is_empty()
        )
    ]


def check_codec_roundtrip(
    m: int, n: int, cx: HomComplex | None = None
) -> list[CheckResult]:
    """decode(encode(v)) = v on every vertex the oracle produces."""
    if n == 4:
        return []
    spec = CycleSpec(m, n)
    cx = cx or build_cycle_complex(m, n)
    failures = 0
    for v in cx.cells(0):
        tup = tuple(e[0] for e in v.entries())
        if decode_vertex(spec, encode_vertex(spec, tup)) != tup:
            failures += 1
    return [
        _result(
            f"codec-roundtrip({m},{n})", 0, failures, f"{len(cx.cells(0))} vertices"
        )
    ]


def check_codec_cells(
    m: int, n: int, cx: HomComplex | None = None
) -> list[CheckResult]:
    """The code enumeration reproduces the oracle's cell set exactly."""
    if n == 4:
        return []
    spec = CycleSpec(m, n)
    cx = cx or build_cycle_complex(m, n)
    decoded = [decode_cell(spec, c) for c in enumerate_cells(spec)]
    ok_set = set(decoded) == set(cx.all_cells()) and len(decoded) == len(set(decoded))
    return [
        CheckResult(
            f"codec-cells({m},{n})",
            ok_set,
            cx.cell_count,
            len(decoded),
            "cell multiset equality",
        )
    ]


def check_facets(m: int, n: int, cx: HomComplex | None = None) -> list[CheckResult]:
    """Code-level facets agree with multi-cell facets, cell by cell."""
    if n == 4:
        return []
    spec = CycleSpec(m, n)
    cx = cx or build_cycle_complex(m, n)
    mismatches = 0
    total = 0
    for cell in cx.all_cells():
        if cell.dim == 0:
            continue
        total += 1
        code = encode_cell(spec, cell)
        got = {decode_cell(spec, f) for f in facets_of_code(spec, code)}
        if got != set(facets(cell)):
            mismatches += 1
    return [_result(f"facets({m},{n})", 0, mismatches, f"{total} positive cells")]


def check_edge_returning_counts(
    m: int, n: int, cx: HomComplex | None = None
) -> list[CheckResult]:
    """Both endpoints of every edge have the same number of returning points."""
    if n == 4:
        return []
    spec = CycleSpec(m, n)
    cx = cx or build_cycle_complex(m, n)
    bad = 0
    for edge in cx.cells(1):
        rs = set()
        for v in facets(edge):
            tup = tuple(e[0] for e in v.entries())
            rs.add(encode_vertex(spec, tup).r)
        if len(rs) != 1:
            bad += 1
    return [_result(f"edge-returning({m},{n})", 0, bad)]


def check_cell_counts(m: int, n: int) -> list[CheckResult]:
    """Closed-form counts equal code enumeration, per stratum and parity."""
    if n == 4:
        return []
    spec = CycleSpec(m, n)
    out = []
    for r in spec.r_values():
        top = 0 if r in (0, m) else min(r, m - r)
        for d in range(top + 1):
            got = len(enumerate_cells(spec, r=r, d=d))
            want = census.stratum_cell_count(m, n, r, d)
            out.append(_result(f"counts({m},{n},r={r},d={d})", want, got))
            if n % 2 == 0 and 0 < r < m:
                per = census.cell_count(m, n, r, d)
                for p in (1, 2):
                    got_p = len(enumerate_cells(spec, r=r, d=d, parity=p))
                    out.append(
                        _result(f"counts({m},{n},r={r},d={d},parity={p})", per, got_p)
                    )
    return out


def check_components(
    m: int, n: int, cx: HomComplex | None = None, reports=None
) -> list[CheckResult]:
    """Census prediction vs enumerated components, with homology types."""
    cx = cx or build_cycle_complex(m, n)
    if reports is None:
        reports = analyze_components(cx.all_cells())
    enumerated = Counter(
        (label_component(m, n, "cycle", rep.cells), rep.classification)
        for rep in reports
    )
    predicted = Counter((e.key, e.predicted_type) for e in table9(m, n))
    out = [
        CheckResult(
            f"census({m},{n})",
            enumerated == predicted,
            dict(predicted),
            dict(enumerated),
            "component multiset (key, type)",
        )
    ]
    points, circles = table9_row_counts(m, n)
    if n != 4:
        entries = table9(m, n)
        out.append(
            _result(
                f"census-rows({m},{n})",
                (points, circles),
                (
                    sum(e.predicted_type == census.POINT for e in entries),
                    sum(e.predicted_type == census.CIRCLE for e in entries),
                ),
                "row closed forms vs entry list",
            )
        )
    chi = sum((-1) ** d * f for d, f in enumerate(cx.f_vector))
    out.append(_result(f"euler({m},{n})", census.euler_char(m, n), chi))
    ep_bad = [
        rep.key
        for rep in reports
        if rep.euler_characteristic
        != sum((-1) ** d * b for d, b in enumerate(rep.betti.betti))
    ]
    out.append(
        _result(
            f"euler-poincare({m},{n})", [], ep_bad, f"{len(reports)} components"
        )
    )
    return out


def check_matchings(m: int, n: int) -> list[CheckResult]:
    """Every stratum's matchings: acyclic, cover-respecting, predicted critical sets."""
    if n == 4:
        return []
    spec = CycleSpec(m, n)
    src, tgt = cycle(m), cycle(n)
    out = []
    shift_bad = []
    star_bad = []
    strata = 0
    for r in spec.r_values():
        if r in (0, m):
            continue
        for i in range(1, n + 1):
            strata += 1
            stratum, matching = right_shift_matching(spec, i, r)
            rep = verify_matching(stratum, matching, partial(facets_of_code, spec))
            sigma = predicted_critical_cell(spec, i, r)
            if not rep.acyclic or rep.critical_cells != (sigma,):
                shift_bad.append((i, r))
            if shift_potential_audit(spec, matching, partial(facets_of_code, spec)):
                shift_bad.append((i, r, "potential"))
            chi = sum((-1) ** c.dim for c in stratum)
            if chi != 1:
                shift_bad.append((i, r, "euler"))

            parity = base_parity(i) if n % 2 == 0 else None
            comp = [
                decode_cell(spec, c)
                for c in enumerate_cells(spec, r=r, parity=parity)
            ]
            xi = star_cells(comp, i, src, tgt)
            star = first_entry_matching(xi, i)
            rep1 = verify_matching(xi, star, facets)
            pinned = {c for c in xi if c.entry(1) == (i,)}
            if not rep1.acyclic or set(rep1.critical_cells) != pinned:
                star_bad.append((i, r))
            if len(pinned) != len(pinned_stratum(spec, i, r)):
                star_bad.append((i, r, "pinned-count"))
    out.append(
        _result(f"shift-matchings({m},{n})", [], shift_bad, f"{strata} strata")
    )
    out.append(_result(f"star-matchings({m},{n})", [], star_bad, f"{strata} strata"))
    return out


def check_path_family(m: int, n: int, cx: HomComplex | None = None) -> list[CheckResult]:
    """String-target complexes: two contractible halves plus matchings."""
    out = []
    if m % 2 == 1:
        cxp = cx or build_path_complex(m, n)
        out.append(_result(f"path-empty({m},{n})", True, cxp.is_empty()))
        return out
    cxp = cx or build_path_complex(m, n)
    spec = CycleSpec(m, n, "path")
    reports = analyze_components(cxp.all_cells())
    enumerated = Counter(
        (label_component(m, n, "path", rep.cells), rep.classification)
        for rep in reports
    )
    predicted = Counter(
        {
            (ComponentKey(r=m // 2, parity=1), census.CONTRACTIBLE): 1,
            (ComponentKey(r=m // 2, parity=2), census.CONTRACTIBLE): 1,
        }
    )
    out.append(
        CheckResult(
            f"path-census({m},{n})",
            enumerated == predicted,
            dict(predicted),
            dict(enumerated),
        )
    )
    total = betti(boundary_matrices(cxp.cells_by_dim))
    out.append(
        _result(f"path-total({m},{n})", "two_points", classify_total(total))
    )
    # codec equivalence on the string family
    decoded = [decode_cell(spec, c) for c in enumerate_cells(spec)]
    out.append(
        CheckResult(
            f"path-codec({m},{n})",
            set(decoded) == set(cxp.all_cells()) and len(decoded) == len(set(decoded)),
            cxp.cell_count,
            len(decoded),
        )
    )
    if n >= 4:
        bad = []
        for i in range(1, n + 1):
            stratum, matching = right_shift_matching(spec, i)
            if not stratum:
                continue
            rep = verify_matching(stratum, matching, partial(facets_of_code, spec))
            sigma = predicted_critical_cell(spec, i)
            if not rep.acyclic or rep.critical_cells != (sigma,):
                bad.append(i)
        out.append(_result(f"path-matchings({m},{n})", [], bad))
    return out


# ---------------------------------------------------------------------------
# the full grid


def run_verification(
    max_m: int = 8,
    max_n: int = 8,
    include_path: bool = True,
    budget: int | None = None,
    progress: Callable[[str], None] | None = None,
) -> list[CheckResult]:
    """Run every cross-check for 3 <= m <= max_m, 3 <= n <= max_n."""
    results: list[CheckResult] = []
    for m in range(3, max_m + 1):
        for n in range(3, max_n + 1):
            if progress:
                progress(f"Hom(C_{m}, C_{n})")
            cx = build_cycle_complex(m, n, budget)
            results += check_emptiness(m, n, cx)
            results += check_codec_roundtrip(m, n, cx)
            results += check_codec_cells(m, n, cx)
            results += check_facets(m, n, cx)
            results += check_edge_returning_counts(m, n, cx)
            results += check_cell_counts(m, n)
            results += check_components(m, n, cx)
            results += check_matchings(m, n)
        if include_path and m % 2 == 0:
            for n in range(3, max_n + 1):
                if progress:
                    progress(f"Hom(C_{m}, L_{n})")
                results += check_path_family(m, n)
    return results


def failures(results: Iterable[CheckResult]) -> list[CheckResult]:
    return [r for r in results if not r.ok]
