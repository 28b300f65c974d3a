"""Command-line front end: build, export, census, homology, morse, verify.

Exit codes: 0 on success, 1 when a verification check fails, 2 for
usage or budget errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from functools import partial

from . import census
from .codec import (
    CellCode,
    CycleSpec,
    base_parity,
    encode_cell,
    format_code,
    parse_code,
    decode_cell,
)
from .complexes import (
    CellBudgetExceeded,
    DEFAULT_CELL_BUDGET,
    HomComplex,
    MultiHomCell,
    build,
)
from .graphs import cycle, path
from .homology import analyze_components, rank_mod2, boundary_matrices
from .morse import (
    predicted_critical_cell,
    right_shift_matching,
    verify_matching,
)
from .codec import facets_of_code
from .verify import failures, label_component, run_verification

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2


@dataclass
class RunConfig:
    """Parsed invocation: command plus the options it consumes."""

    command: str
    m: int | None = None
    n: int | None = None
    family: str = "cycle"
    r: int | None = None
    parity: int | None = None
    base: int | None = None
    ring: str = "integer"
    budget: int = DEFAULT_CELL_BUDGET
    fmt: str = "text"
    output: str | None = None
    max_m: int = 8
    max_n: int = 8
    include_path: bool = True


def target_graph(config: RunConfig):
    return path(config.n) if config.family == "path" else cycle(config.n)


def build_complex(config: RunConfig) -> HomComplex:
    return build(cycle(config.m), target_graph(config), budget=config.budget)


# ---------------------------------------------------------------------------
# JSON schema


def complex_to_doc(cx: HomComplex, family: str) -> dict:
    """The export schema: entries as sorted integer arrays, codes when known."""
    cells = [
        [list(entry) for entry in cell.entries()] for cell in cx.all_cells()
    ]
    codes = None
    if not (family == "cycle" and cx.target.vertex_count == 4):
        try:
            spec = CycleSpec(cx.source.vertex_count, cx.target.vertex_count, family)
            codes = [format_code(encode_cell(spec, c)) for c in cx.all_cells()]
        except ValueError:
            codes = None
    doc = {
        "m": cx.source.vertex_count,
        "n": cx.target.vertex_count,
        "family": family,
        "cells": cells,
    }
    if codes is not None:
        doc["codes"] = codes
    return doc


def complex_from_doc(doc: dict) -> HomComplex:
    family = doc.get("family", "cycle")
    source = cycle(doc["m"])
    target = path(doc["n"]) if family == "path" else cycle(doc["n"])
    cells = [MultiHomCell.from_entries(entries) for entries in doc["cells"]]
    return HomComplex.from_cells(source, target, cells)


# ---------------------------------------------------------------------------
# subcommands


def _emit(text: str, config: RunConfig) -> None:
    if config.output:
        with open(config.output, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_build(config: RunConfig) -> int:
    cx = build_complex(config)
    if config.fmt == "json":
        _emit(json.dumps(complex_to_doc(cx, config.family), indent=None), config)
    else:
        lines = [f"Hom(C_{config.m}, {'L' if config.family == 'path' else 'C'}_{config.n})"]
        lines.append(f"f-vector: {cx.f_vector}")
        for d, layer in enumerate(cx.cells_by_dim):
            for cell in layer:
                lines.append(f"  dim {d}: {cell!r}")
        _emit("\n".join(lines), config)
    return EXIT_OK


def cmd_export(config: RunConfig) -> int:
    cx = build_complex(config)
    _emit(json.dumps(complex_to_doc(cx, config.family), indent=None), config)
    return EXIT_OK


def cmd_census(config: RunConfig) -> int:
    m, n = config.m, config.n
    entries = census.table9(m, n)
    points, circles = census.table9_row_counts(m, n)
    chi = census.euler_char(m, n)
    if config.fmt == "json":
        doc = {
            "m": m,
            "n": n,
            "euler_characteristic": chi,
            "points": points,
            "circles": circles,
            "components": [
                {"label": e.label, "type": e.predicted_type} for e in entries
            ],
        }
        if n != 4:
            doc["cell_counts"] = {
                str(r): [
                    census.cell_count(m, n, r, d)
                    for d in range(
                        1 if r in (0, m) else min(r, m - r) + 1
                    )
                ]
                for r in census.component_r_values(m, n)
            }
        _emit(json.dumps(doc), config)
        return EXIT_OK
    lines = [f"Hom(C_{m}, C_{n})"]
    if not entries:
        lines.append("  empty complex")
    elif n == 4:
        lines.append("  two contractible halves (S^0 total); no Delta labels")
    else:
        lines.append(f"  {points} points, {circles} circles")
        for e in entries:
            lines.append(f"  {e.label:<18} {e.predicted_type}")
        for r in census.component_r_values(m, n):
            if r in (0, m):
                continue
            counts = [census.cell_count(m, n, r, d) for d in range(min(r, m - r) + 1)]
            lines.append(f"  c_d for r={r}: {counts}")
    lines.append(f"  euler characteristic: {chi}")
    _emit("\n".join(lines), config)
    return EXIT_OK


def cmd_homology(config: RunConfig) -> int:
    cx = build_complex(config)
    if config.ring == "mod2":
        chain = boundary_matrices(cx.cells_by_dim)
        lines = [f"mod-2 ranks (smoke test only) for f-vector {cx.f_vector}"]
        for d in range(1, len(cx.f_vector)):
            rows, cols, entries = chain.boundary(d)
            lines.append(f"  rank_2 d{d}: {rank_mod2(rows, cols, entries)}")
        _emit("\n".join(lines), config)
        return EXIT_OK
    reports = analyze_components(cx.all_cells())
    picked = []
    for rep in reports:
        key = label_component(config.m, config.n, config.family, rep.cells)
        if config.r is not None and key.r != config.r:
            continue
        if config.parity is not None and key.parity != config.parity:
            continue
        picked.append((key, rep))
    if config.fmt == "json":
        doc = [
            {
                "key": {"r": key.r, "parity": key.parity, "base": key.base},
                "f_vector": list(rep.f_vector),
                "betti": list(rep.betti.betti),
                "torsion": {str(d): list(f) for d, f in rep.betti.torsion},
                "classification": rep.classification,
            }
            for key, rep in picked
        ]
        _emit(json.dumps(doc), config)
        return EXIT_OK
    lines = [f"{len(picked)} component(s)"]
    for key, rep in picked:
        lines.append(
            f"  key={key} f={rep.f_vector} betti={rep.betti.betti} "
            f"torsion={rep.betti.torsion or 'none'} type={rep.classification}"
        )
    _emit("\n".join(lines), config)
    return EXIT_OK


def cmd_morse(config: RunConfig) -> int:
    try:
        spec = CycleSpec(config.m, config.n, config.family)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    rows = []
    ok_all = True
    r_values = (
        [config.r]
        if config.r is not None
        else [r for r in spec.r_values() if r not in (0, spec.m) or spec.family == "path"]
    )
    bases = [config.base] if config.base is not None else list(range(1, config.n + 1))
    for r in r_values:
        for i in bases:
            stratum, matching = right_shift_matching(spec, i, r)
            if not stratum:
                continue
            report = verify_matching(
                stratum, matching, partial(facets_of_code, spec)
            )
            sigma = predicted_critical_cell(spec, i, r)
            sigma_ok = report.critical_cells == (sigma,)
            ok_all = ok_all and report.acyclic and sigma_ok
            rows.append(
                {
                    "base": i,
                    "r": r,
                    "cells": len(stratum),
                    "matched_pairs": report.matched_pairs,
                    "critical": [format_code(c) for c in report.critical_cells],
                    "acyclic": report.acyclic,
                    "sigma": format_code(sigma),
                    "sigma_ok": sigma_ok,
                }
            )
    if config.fmt == "json":
        _emit(json.dumps(rows), config)
    else:
        lines = [f"{'i':>3} {'r':>3} {'cells':>7} {'|S|':>7} {'acyclic':>8}  critical"]
        for row in rows:
            lines.append(
                f"{row['base']:>3} {row['r']:>3} {row['cells']:>7} "
                f"{row['matched_pairs']:>7} {str(row['acyclic']):>8}  "
                f"{', '.join(row['critical'])}"
            )
        _emit("\n".join(lines), config)
    return EXIT_OK if ok_all else EXIT_MISMATCH


def cmd_verify(config: RunConfig) -> int:
    results = run_verification(
        config.max_m,
        config.max_n,
        include_path=config.include_path,
        budget=config.budget,
        progress=None,
    )
    lines = []
    for res in results:
        if res.ok:
            lines.append(f"ok   {res.name}" + (f"  [{res.note}]" if res.note else ""))
        else:
            lines.append(f"FAIL {res.name}: {res.diff()}")
    bad = failures(results)
    lines.append(f"{len(results) - len(bad)}/{len(results)} checks passed")
    _emit("\n".join(lines), config)
    return EXIT_OK if not bad else EXIT_MISMATCH


# ---------------------------------------------------------------------------
# argument parsing


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyclehom",
        description="Hom complexes of cycles: enumeration, codes, matchings, homology",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, need_mn=True):
        if need_mn:
            p.add_argument("-m", type=int, required=True, help="source cycle length")
            p.add_argument("-n", type=int, required=True, help="target length")
            p.add_argument(
                "--family",
                choices=["cycle", "path"],
                default="cycle",
                help="target family: cycle C_n or string L_n",
            )
        p.add_argument("--format", dest="fmt", choices=["text", "json"], default="text")
        p.add_argument("-o", "--output", default=None, help="write to file instead of stdout")
        p.add_argument(
            "--budget",
            type=int,
            default=DEFAULT_CELL_BUDGET,
            help="cell enumeration budget",
        )

    p = sub.add_parser("build", help="enumerate a complex and print it")
    add_common(p)
    p = sub.add_parser("export", help="write a complex in the JSON schema")
    add_common(p)
    p = sub.add_parser("census", help="predicted component table, c_d, and euler characteristic")
    add_common(p)
    p = sub.add_parser("homology", help="components with Betti numbers and types")
    add_common(p)
    p.add_argument("-r", type=int, default=None, help="restrict to returning count r")
    p.add_argument("--parity", type=int, choices=[1, 2], default=None)
    p.add_argument("--ring", choices=["integer", "mod2"], default="integer")
    p = sub.add_parser("morse", help="collapse matchings per stratum")
    add_common(p)
    p.add_argument("-r", type=int, default=None)
    p.add_argument("--base", type=int, default=None, help="restrict to one base label")
    p = sub.add_parser("verify", help="run the full cross-check grid")
    p.add_argument("--max-m", type=int, default=8)
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--no-path", action="store_true", help="skip string-target checks")
    p.add_argument("--format", dest="fmt", choices=["text", "json"], default="text")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--budget", type=int, default=DEFAULT_CELL_BUDGET)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)
    for name in (
        "m",
        "n",
        "family",
        "r",
        "parity",
        "base",
        "ring",
        "budget",
        "fmt",
        "output",
    ):
        if hasattr(args, name) and getattr(args, name) is not None:
            setattr(cfg, name, getattr(args, name))
    if args.command == "verify":
        cfg.max_m = args.max_m
        cfg.max_n = args.max_n
        cfg.include_path = not args.no_path
    return cfg


COMMANDS = {
    "build": cmd_build,
    "export": cmd_export,
    "census": cmd_census,
    "homology": cmd_homology,
    "morse": cmd_morse,
    "verify": cmd_verify,
}


def run(config: RunConfig) -> int:
    try:
        return COMMANDS[config.command](config)
    except CellBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    if args.command == "export" and not args.output:
        parser.error("export requires -o/--output")
    return run(config_from_args(args))


if __name__ == "__main__":
    sys.exit(main())
