"""Command-line front end.

Every subcommand builds one report dict; `--json` prints it as JSON and the
default human view renders the same dict, so the two outputs carry identical
data.  Exit statuses: 0 success or claim holds, 1 violation or counterexample
found, 2 usage, parse, precondition, or resource errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import io
import json
import sys as _sysmod
from fractions import Fraction
from typing import Optional, Sequence

from . import hulls as hulls_mod
from .dyadic import DyadicValue
from .dynamics import (
    SelfMap,
    fixed_points,
    is_homomorphism,
    is_nonexpansive,
    ks_dichotomy,
    minimal_invariant_admissible,
    minimal_invariant_balls,
    orbit,
    regular_fixed_point,
    regularity_report,
    VARIANTS,
)
from .errors import GradedRelError, UsageError
from .formats import (
    CounterexampleBundle,
    FormatError,
    parse_distance_matrix,
    parse_selfmap,
    parse_system,
    serialize_bundle,
    serialize_system,
)
from .harness import CLAIMS, falsify
from .hulls import (
    ARBITRARY_CENTER,
    PAPER_COV,
    check_compact_structure,
    check_normal_structure,
    check_spherical_completeness,
    enumerate_admissible,
    radii,
)
from .pointset import PointSet
from .relations import RelationalSystem, Top, check_axiom
from .semimetric import TripleWitness, classify, ingest_distance_matrix

MODE_NAMES = {"paper": PAPER_COV, "closure": ARBITRARY_CENTER}


def _jsonify(obj, labels: Optional[Sequence[str]] = None):
    """Plain-data view of report values; point sets become label lists."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, Top):
        return "TOP"
    if isinstance(obj, (DyadicValue, Fraction)):
        return str(obj)
    if isinstance(obj, PointSet):
        members = obj.members()
        return [labels[i] for i in members] if labels else list(members)
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v, labels) for v in obj]
    if isinstance(obj, dict):
        return {str(k): _jsonify(v, labels) for k, v in obj.items()}
    if dataclasses.is_dataclass(obj):
        return {
            f.name: _jsonify(getattr(obj, f.name), labels)
            for f in dataclasses.fields(obj)
        }
    return str(obj)


def _axiom_dict(sys: RelationalSystem, axiom_id: str) -> dict:
    rep = check_axiom(sys, axiom_id)
    out = {"holds": rep.holds}
    if rep.witness is not None:
        out["witness"] = _jsonify(rep.witness)
    if rep.bound_grade is not None:
        out["bound_grade"] = _jsonify(rep.bound_grade)
    return out


def _triple_dict(sys: RelationalSystem, w: Optional[TripleWitness]) -> Optional[dict]:
    if w is None:
        return None
    return {
        "x": sys.labels[w.x],
        "z": sys.labels[w.z],
        "y": sys.labels[w.y],
        "d_xy": str(w.d_xy),
        "d_xz": str(w.d_xz),
        "d_zy": str(w.d_zy),
    }


def _system_dict(sys: RelationalSystem) -> dict:
    return {
        "points": sys.n,
        "labels": list(sys.labels),
        "window": [sys.window.lo, sys.window.hi],
        "grades": [
            ["-" if i == j else sys.grades.entries[i][j] for j in range(sys.n)]
            for i in range(sys.n)
        ],
    }


def _load_system(path: str) -> RelationalSystem:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_system(fh.read())


def _load_map(path: str, sys: RelationalSystem) -> SelfMap:
    with open(path, "r", encoding="utf-8") as fh:
        t = parse_selfmap(fh.read())
    if t.n != sys.n:
        raise UsageError(f"map covers {t.n} points but the system has {sys.n}")
    return t


# ---------------------------------------------------------------------------
# subcommands


def _cmd_validate(ns) -> tuple[int, dict]:
    sys = _load_system(ns.system)
    report = {
        "command": "validate",
        "file": ns.system,
        "valid": True,
        "diagnostics": [],
        "system": _system_dict(sys),
        "axioms": {a: _axiom_dict(sys, a) for a in ("r5", "r9", "r10", "transitive")},
    }
    return 0, report


def _cmd_classify(ns) -> tuple[int, dict]:
    sys = _load_system(ns.system)
    rep = classify(sys)
    report = {
        "command": "classify",
        "file": ns.system,
        "class_label": rep.class_label,
        "is_semimetric": rep.is_semimetric,
        "semimetric_witness": _jsonify(rep.semimetric_witness),
        "minimal_inframetric_c": str(rep.minimal_inframetric_c),
        "triangle": {
            "holds": rep.triangle_holds,
            "witness": _triple_dict(sys, rep.triangle_witness),
        },
        "strong_triangle": {
            "holds": rep.strong_triangle_holds,
            "witness": _triple_dict(sys, rep.strong_triangle_witness),
        },
        "axioms": {
            "r9": {"holds": rep.r9.holds},
            "r10": {"holds": rep.r10.holds},
            "transitive": {"holds": rep.transitive.holds},
        },
    }
    status = 0 if (rep.is_semimetric and rep.triangle_holds) else 1
    return status, report


def _cmd_hulls(ns) -> tuple[int, dict]:
    sys = _load_system(ns.system)
    mode = MODE_NAMES[ns.mode]
    family = enumerate_admissible(sys, mode)
    report = {
        "command": "hulls",
        "file": ns.system,
        "mode": mode,
        "count": len(family),
        "family": [
            {
                "members": _jsonify(adm.points, sys.labels),
                "witness_balls": [
                    {"center": sys.labels[c], "level": lev}
                    for c, lev in adm.witness_balls
                ],
            }
            for adm in family
        ],
    }
    return 0, report


def _structure_dict(sys: RelationalSystem, rep) -> dict:
    out = {"holds": rep.holds, "note": rep.note}
    if rep.witness is not None:
        if rep.property_name == "normal-structure":
            adm, rad = rep.witness
            out["witness"] = {
                "set": _jsonify(adm.points, sys.labels),
                "mode": adm.mode,
                "cheb_radius": str(rad.cheb_radius),
                "diameter": str(rad.diameter),
                "cheb_grade": _jsonify(rad.cheb_grade),
                "diam_grade": _jsonify(rad.diam_grade),
            }
        else:
            out["witness"] = _jsonify(rep.witness, sys.labels)
    return out


def _cmd_structure(ns) -> tuple[int, dict]:
    sys = _load_system(ns.system)
    compact = check_compact_structure(sys)
    normal = check_normal_structure(sys)
    spherical = check_spherical_completeness(sys)
    report = {
        "command": "structure",
        "file": ns.system,
        "compact_structure": _structure_dict(sys, compact),
        "normal_structure": _structure_dict(sys, normal),
        "spherically_complete": _structure_dict(sys, spherical),
    }
    status = 0 if (compact.holds and normal.holds and spherical.holds) else 1
    return status, report


def _map_check_dict(sys: RelationalSystem, rep, value_key: str) -> dict:
    out = {"holds": rep.holds}
    if rep.witness is not None:
        x, y, v, v_img = rep.witness
        out["witness"] = {
            "x": sys.labels[x],
            "y": sys.labels[y],
            value_key: _jsonify(v),
            f"image_{value_key}": _jsonify(v_img),
        }
    else:
        out["witness"] = None
    return out


def _cmd_dynamics(ns) -> tuple[int, dict]:
    sys = _load_system(ns.system)
    t = _load_map(ns.map, sys)
    hom = is_homomorphism(sys, t)
    non = is_nonexpansive(sys, t)
    per_point = []
    for x in range(sys.n):
        orb = orbit(sys, t, x)
        reg = regularity_report(sys, t, x)
        per_point.append(
            {
                "point": sys.labels[x],
                "image": sys.labels[t.image[x]],
                "orbit": {
                    "tail": [sys.labels[p] for p in orb.tail],
                    "cycle": [sys.labels[p] for p in orb.cycle],
                    "grade_trace": _jsonify(orb.grade_trace),
                },
                "regularity": {
                    "is_fixed": reg.is_fixed,
                    "regular": reg.regular,
                    "regular_offset": reg.regular_offset,
                    "asymptotically_regular": reg.asymptotically_regular,
                    "asymptotic_offset": reg.asymptotic_offset,
                    "weak_regular": reg.weak_regular,
                    "classical_asymptotic": reg.classical_asymptotic,
                },
            }
        )
    report = {
        "command": "dynamics",
        "system": ns.system,
        "map": ns.map,
        "homomorphism": _map_check_dict(sys, hom, "grade"),
        "nonexpansive": _map_check_dict(sys, non, "distance"),
        "fixed_points": _jsonify(fixed_points(sys, t), sys.labels),
        "per_point": per_point,
    }
    return (0 if hom.holds else 1), report


def _cmd_fixpoint(ns) -> tuple[int, dict]:
    sys = _load_system(ns.system)
    t = _load_map(ns.map, sys)
    hom = is_homomorphism(sys, t)
    dich = ks_dichotomy(sys, t)
    balls = minimal_invariant_balls(sys, t)
    report = {
        "command": "fixpoint",
        "system": ns.system,
        "map": ns.map,
        "fixed_points": _jsonify(fixed_points(sys, t), sys.labels),
        "hypotheses": {
            "transitive": check_axiom(sys, "transitive").holds,
            "homomorphism": hom.holds,
        },
        "minimal_invariant_admissible": (
            [_jsonify(a.points, sys.labels) for a in minimal_invariant_admissible(sys, t)]
            if hom.holds
            else None
        ),
        "minimal_invariant_balls": [
            {
                "center": sys.labels[c],
                "level": lev,
                "members": _jsonify(hulls_mod.ball(sys, c, lev), sys.labels),
            }
            for c, lev in balls
        ],
        "dichotomy": {
            "hypotheses_met": dich.hypotheses_met,
            "unmet": list(dich.unmet),
            "entries": [
                {
                    "point": sys.labels[e.point],
                    "level": e.level,
                    "ball": _jsonify(e.ball, sys.labels),
                    "outcome": e.outcome,
                    "witness": _jsonify(e.witness),
                }
                for e in dich.entries
            ],
        },
    }
    rfp = {}
    for variant in VARIANTS:
        rep = regular_fixed_point(sys, t, variant)
        rfp[variant] = {
            "hypotheses_met": rep.hypotheses_met,
            "unmet": list(rep.unmet),
            "verdict": rep.verdict,
            "balls": [
                {
                    "members": _jsonify(b.ball, sys.labels),
                    "names": _jsonify(
                        [(sys.labels[c], lev) for c, lev in b.names]
                    ),
                    "fixed_inside": _jsonify(b.fixed_inside, sys.labels),
                }
                for b in rep.balls
            ],
        }
    report["regular_fixed_point"] = rfp
    violated = (dich.hypotheses_met and dich.has_neither) or any(
        rfp[v]["verdict"] == "falsified" for v in VARIANTS
    )
    return (1 if violated else 0), report


def _cmd_falsify(ns) -> tuple[int, dict]:
    if ns.trials < 1:
        raise UsageError("--trials must be at least 1")
    verdict = falsify(ns.claim, ns.trials, ns.seed)
    report = {
        "command": "falsify",
        "claim": verdict.claim_id,
        "description": CLAIMS[verdict.claim_id].description,
        "trials": verdict.trials,
        "seed": verdict.seed,
        "outcome": verdict.outcome,
        "vacuous_trials": verdict.vacuous_trials,
    }
    if verdict.instance is not None:
        inst = verdict.instance
        report["instance"] = {
            "trial_index": inst.trial_index,
            "locus": inst.locus,
            "system": _system_dict(inst.system),
            "selfmap": list(inst.selfmap.image) if inst.selfmap is not None else None,
        }
        if ns.out:
            bundle = CounterexampleBundle(
                verdict.claim_id,
                verdict.seed,
                inst.trial_index,
                inst.locus,
                inst.system,
                inst.selfmap,
            )
            with open(ns.out, "w", encoding="utf-8") as fh:
                fh.write(serialize_bundle(bundle))
            report["written"] = ns.out
    return (1 if verdict.outcome == "counterexample" else 0), report


def _cmd_ingest(ns) -> tuple[int, dict]:
    with open(ns.matrix, "r", encoding="utf-8") as fh:
        rows = parse_distance_matrix(fh.read())
    lo, hi = ns.window
    sys = ingest_distance_matrix(rows, (lo, hi))
    text = serialize_system(sys)
    report = {
        "command": "ingest",
        "file": ns.matrix,
        "window": [lo, hi],
        "system": _system_dict(sys),
    }
    if ns.out:
        with open(ns.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        report["written"] = ns.out
    else:
        report["text"] = text
    return 0, report


# ---------------------------------------------------------------------------
# dispatch and rendering


def build_parser() -> argparse.ArgumentParser:
    # the output flags ride on every subparser too, so they work on either
    # side of the subcommand; SUPPRESS keeps the subparser from clobbering
    # a flag given before it
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--json",
        action="store_true",
        default=argparse.SUPPRESS,
        help="emit the report as JSON",
    )
    common.add_argument(
        "--quiet",
        action="store_true",
        default=argparse.SUPPRESS,
        help="suppress the report",
    )

    parser = argparse.ArgumentParser(
        prog="gradedrel",
        description="Graded relational systems: validation, classification, "
        "hull geometry, dynamics, and claim falsification.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, help=help_text, parents=[common])

    p = add("validate", "parse and structurally check a system file")
    p.add_argument("system")

    p = add("classify", "classify the induced distance")
    p.add_argument("system")

    p = add("hulls", "enumerate the admissible family")
    p.add_argument("system")
    p.add_argument("--mode", choices=sorted(MODE_NAMES), default="paper")

    p = add("structure", "compact, normal, and spherical reports")
    p.add_argument("system")

    p = add("dynamics", "map checks, orbits, regularity")
    p.add_argument("system")
    p.add_argument("map")

    p = add("fixpoint", "fixed points, invariant sets, dichotomy")
    p.add_argument("system")
    p.add_argument("map")

    p = add("falsify", "search for a claim counterexample")
    p.add_argument("claim", choices=sorted(CLAIMS))
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--out", help="write the counterexample bundle here")

    p = add("ingest", "grade a distance matrix into a window")
    p.add_argument("matrix")
    p.add_argument("--window", nargs=2, type=int, required=True, metavar=("LO", "HI"))
    p.add_argument("-o", "--out", help="write the system file here")

    return parser


_DISPATCH = {
    "validate": _cmd_validate,
    "classify": _cmd_classify,
    "hulls": _cmd_hulls,
    "structure": _cmd_structure,
    "dynamics": _cmd_dynamics,
    "fixpoint": _cmd_fixpoint,
    "falsify": _cmd_falsify,
    "ingest": _cmd_ingest,
}


def run(argv: Sequence[str]) -> tuple[int, dict]:
    """Execute one command line; returns (exit status, report dict)."""
    parser = build_parser()
    try:
        ns = parser.parse_args(list(argv))
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 2
        return (code if code else 0), {}
    try:
        return _DISPATCH[ns.command](ns)
    except FormatError as exc:
        d = exc.diagnostic
        return 2, {
            "command": ns.command,
            "error": {
                "kind": "parse",
                "code": d.code,
                "line": d.line,
                "column": d.column,
                "message": d.message,
            },
        }
    except GradedRelError as exc:
        return 2, {
            "command": ns.command,
            "error": {"kind": type(exc).__name__, "message": str(exc)},
        }
    except OSError as exc:
        return 2, {
            "command": ns.command,
            "error": {"kind": "io", "message": str(exc)},
        }


def render_human(report: dict) -> str:
    """Indented key/value view carrying exactly the JSON report's data."""
    buf = io.StringIO()

    def emit(value, indent: int, key: Optional[str] = None):
        pad = "  " * indent
        lead = f"{pad}{key}: " if key is not None else pad
        if isinstance(value, dict):
            if key is not None:
                buf.write(f"{pad}{key}:\n")
            for k, v in value.items():
                emit(v, indent + (0 if key is None else 1), k)
        elif isinstance(value, list):
            if all(not isinstance(v, (dict, list)) for v in value):
                buf.write(lead + "[" + ", ".join(json.dumps(v) for v in value) + "]\n")
            else:
                if key is not None:
                    buf.write(f"{pad}{key}:\n")
                for v in value:
                    inner = indent + (0 if key is None else 1)
                    buf.write("  " * inner + "-\n")
                    emit(v, inner + 1)
        else:
            buf.write(lead + json.dumps(value) + "\n")

    emit(report, 0)
    return buf.getvalue()


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = list(_sysmod.argv[1:] if argv is None else argv)
    status, report = run(args)
    quiet = "--quiet" in args
    as_json = "--json" in args
    if not quiet and report:
        if as_json:
            print(json.dumps(report, indent=2))
        else:
            print(render_human(report), end="")
    return status


if __name__ == "__main__":
    raise SystemExit(main())
