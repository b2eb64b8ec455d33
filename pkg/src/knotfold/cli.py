"""Command-line interface: build, certify, export, table.

Exit codes: 0 success, 1 certification failure, 2 usage or input error.
Outputs carry no timestamps, so identical configurations produce
byte-identical files; random inputs embed their seed in every filename
so failures replay exactly.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, replace
from pathlib import Path

from . import corpus as corpus_mod
from .alexander import alexander, project, same_knot_certificate
from .bounds import (
    BoundCheck,
    Provenance,
    certify,
    comparator_bounds,
    theorem_len_bound,
    theorem_rop_bound,
)
from .errors import KnotfoldError
from .grid import GridDiagram, grid_to_planar, parse_grid, random_grid
from .lattice import parse_lattice, serialize_lattice, validate_lattice
from .laurent import LaurentPoly
from .pipeline import run_pipeline
from .rope import export_geometry, rope_metrics, smooth


@dataclass(frozen=True)
class InputSpec:
    label: str
    diagram: GridDiagram
    crossing_number: int | None = None
    nonalternating_prime: bool = False
    known_minimum_edges: int | None = None
    expected_alexander: LaurentPoly | None = None


def _steps_arg(text: str) -> int:
    mapping = {"1": 1, "1-2": 2, "1-2-3": 3}
    if text not in mapping:
        raise argparse.ArgumentTypeError(f"steps must be one of {sorted(mapping)}")
    return mapping[text]


def _parse_random_spec(text: str) -> tuple[int, int, int]:
    fields = {}
    for part in text.split(","):
        key, _, value = part.partition("=")
        fields[key.strip()] = value.strip()
    try:
        g = int(fields["g"])
        seed = int(fields.get("seed", "0"))
        count = int(fields.get("count", "1"))
    except (KeyError, ValueError) as exc:
        raise argparse.ArgumentTypeError(
            "random spec must look like g=7,seed=1,count=10"
        ) from exc
    return g, seed, count


def _resolve_inputs(args) -> list[InputSpec]:
    specs: list[InputSpec] = []
    if args.corpus:
        names = []
        for chunk in args.corpus:
            names.extend(n.strip() for n in chunk.split(",") if n.strip())
        if any(n.lower() == "all" for n in names):
            names = corpus_mod.corpus_names()
        for name in names:
            entry = corpus_mod.get_entry(name)
            specs.append(
                InputSpec(
                    label=entry.name,
                    diagram=entry.diagram,
                    crossing_number=entry.crossing_number,
                    nonalternating_prime=entry.nonalternating_prime,
                    known_minimum_edges=entry.known_minimum_edges,
                    expected_alexander=entry.alexander,
                )
            )
    for path in args.input or ():
        text = Path(path).read_text()
        specs.append(InputSpec(label=Path(path).stem, diagram=parse_grid(text)))
    if args.random:
        g, seed, count = args.random
        for s in range(seed, seed + count):
            specs.append(InputSpec(label=f"random_g{g}_s{s}", diagram=random_grid(g, s)))
    if not specs:
        raise KnotfoldError("no inputs: use --corpus, --input, or --random")
    return specs


def _add_input_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--corpus", action="append", metavar="NAME[,NAME...]",
                   help="built-in diagrams by name, or 'all'")
    p.add_argument("--input", action="append", metavar="FILE",
                   help="grid diagram text file")
    p.add_argument("--random", type=_parse_random_spec, metavar="g=G,seed=S,count=N",
                   help="seeded random diagrams")
    p.add_argument("--steps", type=_steps_arg, default=3, metavar="1|1-2|1-2-3",
                   help="pipeline prefix to run (default 1-2-3)")
    p.add_argument("--out", default="out", metavar="DIR", help="output directory")


def _provenance_dict(spec: InputSpec, step: int, sides) -> dict:
    prov = {
        "source": spec.label,
        "g": spec.diagram.size,
        "step": step,
        "sides": ",".join(sides) if sides else "",
    }
    if spec.crossing_number is not None:
        prov["crossing_number"] = spec.crossing_number
    if spec.nonalternating_prime:
        prov["nonalternating_prime"] = "true"
    if spec.known_minimum_edges is not None:
        prov["known_minimum_edges"] = spec.known_minimum_edges
    return prov


def cmd_build(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    specs = _resolve_inputs(args)
    for spec in specs:
        result = run_pipeline(spec.diagram, max_step=args.steps)
        report_lines = []
        for step in sorted(result.stages):
            stage = result.stages[step]
            prov = _provenance_dict(spec, step, stage.sides)
            base = out / f"{spec.label}.step{step}"
            base.with_name(base.name + ".txt").write_text(serialize_lattice(stage.knot, prov))
            base.with_name(base.name + ".json").write_text(
                serialize_lattice(stage.knot, prov, form="json") + "\n"
            )
            c = stage.census
            report_lines.append(
                f"step {step}: edges {c.x_edges}/{c.y_edges}/{c.z_edges} "
                f"total {c.total_edges} corners {c.corners} sides {','.join(stage.sides) or '-'}"
            )
            if stage.report is not None:
                r = stage.report
                report_lines.append(
                    f"  fold {r.fold_axis} side {r.side} line {r.fold_line}: "
                    f"overlap removed {r.removed_overlap_edges}, z removed {r.removed_z_edges}, "
                    f"z re-raised {r.reraised_z_edges}, broken sticks {r.broken_sticks_reconnected} "
                    f"(+{r.added_y_edges}y +{r.added_z_edges}z)"
                )
        (out / f"{spec.label}.reports.txt").write_text("\n".join(report_lines) + "\n")
        totals = " ".join(
            f"step{k}={result.stages[k].census.total_edges}" for k in sorted(result.stages)
        )
        print(f"{spec.label}: g={spec.diagram.size} {totals}")
    return 0


def _certify_spec(spec: InputSpec, max_step: int):
    result = run_pipeline(spec.diagram, max_step=max_step)
    base_poly = alexander(grid_to_planar(spec.diagram))
    corpus_check = None
    if spec.expected_alexander is not None:
        verdict = same_knot_certificate(base_poly, spec.expected_alexander)
        corpus_check = BoundCheck(
            "alexander_matches_corpus",
            f"{base_poly} vs {spec.expected_alexander.normalize()}",
            verdict == "consistent",
        )
    certificates = []
    for step in sorted(result.stages):
        stage = result.stages[step]
        cert = certify(
            stage.knot,
            Provenance(
                label=spec.label,
                g=spec.diagram.size,
                step=step,
                crossing_number=spec.crossing_number,
                nonalternating_prime=spec.nonalternating_prime,
                known_minimum_edges=spec.known_minimum_edges,
            ),
        )
        stage_poly = alexander(project(stage.knot))
        verdict = same_knot_certificate(base_poly, stage_poly)
        checks = cert.checks + (
            BoundCheck("alexander_preserved", f"{stage_poly} vs {base_poly}", verdict == "consistent"),
        )
        if corpus_check is not None:
            checks = checks + (corpus_check,)
        certificates.append(
            replace(cert, checks=checks, passed=all(c.passed for c in checks))
        )
    return certificates


def cmd_certify(args) -> int:
    if args.table:
        return cmd_table(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    all_pass = True
    if args.lattice:
        for path in args.lattice:
            knot, prov = parse_lattice(Path(path).read_text())
            label = prov.get("source", Path(path).stem)
            g = int(prov.get("g", 0)) or None
            step = int(prov.get("step", 0)) or None
            if g is None:
                report = validate_lattice(knot)
                ok = report.ok
                print(f"{label}: {'PASS' if ok else 'FAIL ' + str(report)}")
                all_pass &= ok
                continue
            cert = certify(
                knot,
                Provenance(
                    label=label,
                    g=g,
                    step=step,
                    crossing_number=int(prov["crossing_number"])
                    if "crossing_number" in prov
                    else None,
                    nonalternating_prime=prov.get("nonalternating_prime") == "true",
                    known_minimum_edges=int(prov["known_minimum_edges"])
                    if "known_minimum_edges" in prov
                    else None,
                ),
            )
            print(cert.render_text())
            all_pass &= cert.passed
        return 0 if all_pass else 1
    specs = _resolve_inputs(args)
    for spec in specs:
        certificates = _certify_spec(spec, args.steps)
        text = "\n".join(c.render_text() for c in certificates) + "\n"
        (out / f"{spec.label}.cert.txt").write_text(text)
        (out / f"{spec.label}.cert.json").write_text(
            json.dumps([c.as_dict() for c in certificates], indent=2, sort_keys=True) + "\n"
        )
        for cert in certificates:
            status = "PASS" if cert.passed else "FAIL"
            print(f"{spec.label} step {cert.step}: {status} "
                  f"(total edges {cert.census.total_edges})")
            all_pass &= cert.passed
    return 0 if all_pass else 1


def cmd_export(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    specs = _resolve_inputs(args)
    for spec in specs:
        result = run_pipeline(spec.diagram, max_step=args.steps)
        metric_lines = []
        for step in sorted(result.stages):
            stage = result.stages[step]
            sk = smooth(stage.knot)
            metrics = rope_metrics(sk)
            base = out / f"{spec.label}.step{step}"
            if args.format in ("polyline", "both"):
                base.with_name(base.name + ".polyline.txt").write_text(
                    export_geometry(sk, "polyline", density=args.density)
                )
            if args.format in ("arcs", "both"):
                base.with_name(base.name + ".arcs.txt").write_text(
                    export_geometry(sk, "arcs")
                )
            line = (
                f"{spec.label} step {step}: length {metrics.length:.12f} "
                f"thickness {metrics.thickness_radius:.12f} "
                f"ropelength {metrics.ropelength:.12f} corners {metrics.corner_count}"
            )
            metric_lines.append(line)
            print(line)
        (out / f"{spec.label}.metrics.txt").write_text("\n".join(metric_lines) + "\n")
    return 0


def _crossing_range(text: str) -> tuple[int, int]:
    spec = text.replace("c=", "")
    lo, _, hi = spec.partition("..")
    try:
        lo_i = int(lo)
        hi_i = int(hi) if hi else lo_i
    except ValueError as exc:
        raise argparse.ArgumentTypeError("crossing range must look like 3..16") from exc
    return lo_i, hi_i


def cmd_table(args) -> int:
    lo, hi = args.table if args.table else (3, 16)
    cols = [
        "c",
        "len_general",
        "len_nonalt_prime",
        "rop_general",
        "rop_nonalt_prime",
        "diao_len",
        "diao_rop",
        "cantarella_rop",
        "prior_len",
    ]
    rows = ["\t".join(cols)]
    for c in range(lo, hi + 1):
        lg = theorem_len_bound(c)
        ln = theorem_len_bound(c, nonalternating_prime=True)
        rg = theorem_rop_bound(c)
        rn = theorem_rop_bound(c, nonalternating_prime=True)
        comps = {b.formula_id: b for b in comparator_bounds(c)}
        rows.append(
            "\t".join(
                [
                    str(c),
                    str(lg.value),
                    str(ln.value),
                    f"{float(rg.value):.6f}",
                    f"{float(rn.value):.6f}",
                    f"{float(comps['diao_len'].value):.6f}",
                    f"{float(comps['diao_rop'].value):.6f}",
                    f"{float(comps['cantarella_rop'].value):.6f}",
                    str(comps["prior_len"].value),
                ]
            )
        )
    print("\n".join(rows))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="knotfold",
        description="Fold grid diagrams into short lattice knots, certify the "
        "edge-count and ropelength bounds, and export smooth rope geometry.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="run the pipeline and write lattice files")
    _add_input_args(p_build)
    p_build.set_defaults(func=cmd_build)

    p_cert = sub.add_parser("certify", help="run the pipeline and check every bound")
    _add_input_args(p_cert)
    p_cert.add_argument("--lattice", action="append", metavar="FILE",
                        help="certify a previously built lattice file instead")
    p_cert.add_argument("--table", type=_crossing_range, metavar="c=LO..HI",
                        help="print the bound table instead of certifying")
    p_cert.set_defaults(func=cmd_certify)

    p_exp = sub.add_parser("export", help="smooth the pipeline outputs and export geometry")
    _add_input_args(p_exp)
    p_exp.add_argument("--format", choices=("polyline", "arcs", "both"), default="both")
    p_exp.add_argument("--density", type=int, default=32,
                       help="polyline samples per arc (min 8)")
    p_exp.set_defaults(func=cmd_export)

    p_tab = sub.add_parser("table", help="print the bound table for a crossing range")
    p_tab.add_argument("--table", type=_crossing_range, default=(3, 16),
                       metavar="c=LO..HI", help="crossing number range (default 3..16)")
    p_tab.set_defaults(func=cmd_table)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except KnotfoldError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
