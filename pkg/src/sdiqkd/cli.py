"""Command-line front end: ``sdiqkd <subcommand> [options]``.

Exit status is 0 on success, 2 on usage errors and 1 on computation errors.
Floats are printed with 12 significant digits; exact rationals as ``p/q``.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from .rac import BUILTIN_SETUPS, rac_success, rac_success_direct
from .security import report_from_pb, security_report
from .simulate import AttackModel, run_protocol, scan_eve_attacks
from .tables import QuantumSetup, quantum_table
from .witness import (
    Witness,
    classical_bound,
    enumerate_facets,
    eval_witness,
    facet_orbits,
    format_fraction,
    quantum_value_seesaw,
    witness_S,
)


def _clean(obj):
    """Round floats to 12 significant digits and render Fractions as p/q."""
    if isinstance(obj, Fraction):
        return format_fraction(obj)
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (float, np.floating)):
        return float(f"{float(obj):.12g}")
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_clean(v) for v in obj]
    return obj


def _flatten(d: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, list):
            out[key] = json.dumps(v)
        else:
            out[key] = v
    return out


def _to_csv(payload) -> str:
    rows = payload if isinstance(payload, list) else [payload]
    rows = [_flatten(r) for r in rows]
    header = list(rows[0]) if rows else []
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def load_setup_spec(spec: str) -> tuple[QuantumSetup, dict]:
    """Resolve a built-in setup name or read a setup JSON file."""
    if spec in BUILTIN_SETUPS:
        return BUILTIN_SETUPS[spec](), {}
    data = json.loads(Path(spec).read_text())
    return QuantumSetup.from_json_dict(data), data


def load_witness(spec: str) -> Witness:
    if spec == "S":
        return witness_S()
    return Witness.from_json_dict(json.loads(Path(spec).read_text()))


def _parse_axis(text: str) -> list[float]:
    parts = [float(v) for v in text.split(",")]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("axis must be three comma-separated numbers")
    return parts


# -- subcommands ----------------------------------------------------------


def cmd_table(args):
    setup, _ = load_setup_spec(args.setup)
    return quantum_table(setup).to_json_dict()


def cmd_witness(args):
    w = load_witness(args.witness)
    if args.action == "eval":
        setup, _ = load_setup_spec(args.setup)
        return {"witness": w.to_json_dict(), "value": eval_witness(w, quantum_table(setup))}
    if args.action == "bound":
        res = classical_bound(w, args.d)
        s = res.strategy
        return {"witness": w.to_json_dict(), "d": args.d, "bound": res.value,
                "maximizer": {"encode": list(s.encode), "decode": list(s.decode)}}
    facets = enumerate_facets(args.d)
    if args.format == "csv":
        return [{"w": json.dumps(list(f.coefficients)), "offset": format_fraction(f.offset),
                 "box": f.is_box} for f in facets]
    return {
        "facets": [f.to_json_dict() for f in facets],
        "count": len(facets),
        "nontrivial_orbits": len(facet_orbits([f for f in facets if not f.is_box])),
    }


def cmd_rac(args):
    t = quantum_table(load_setup_spec(args.setup)[0])
    return {"S": eval_witness(witness_S(), t), "p_bob": rac_success(t),
            "p_bob_direct": rac_success_direct(t)}


def cmd_security(args):
    if args.pb is not None:
        return report_from_pb(args.pb).to_json_dict()
    return security_report(quantum_table(load_setup_spec(args.setup)[0])).to_json_dict()


def _attack_from_args(args, setup, data) -> AttackModel:
    if args.attack_axis is not None:
        return AttackModel.intercept_resend(setup, args.attack_axis, args.fixed_bit)
    if "attack" in data:
        return AttackModel.from_json_dict(data, setup)
    return AttackModel.none()


def cmd_simulate(args):
    setup, data = load_setup_spec(args.setup)
    attack = _attack_from_args(args, setup, data)
    res = run_protocol(setup, args.rounds, args.seed, attack, args.test_fraction)
    return res.to_json_dict()


def cmd_scan_eve(args):
    setup, _ = load_setup_spec(args.setup)
    res = scan_eve_attacks(setup, args.grid, sphere=args.sphere, fixed_bit=args.fixed_bit)
    out = res.to_json_dict()
    if not args.points:
        del out["points"]
    return out


def cmd_optimize(args):
    w = load_witness(args.witness)
    res = quantum_value_seesaw(w, args.restarts, args.seed)
    return {"witness": w.to_json_dict(), "value": res.value, "setup": res.setup.to_json_dict(),
            "restarts": args.restarts, "seed": args.seed}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", type=Path, help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="sdiqkd", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    setup_help = "built-in name (bb84, optimal, mixed) or path to setup JSON"

    p = sub.add_parser("table", parents=[common], help="data table of a setup")
    p.add_argument("--setup", default="bb84", help=setup_help)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("witness", parents=[common], help="evaluate, bound or enumerate witnesses")
    p.add_argument("action", choices=("eval", "bound", "facets"))
    p.add_argument("--witness", default="S", help="'S' or path to witness JSON")
    p.add_argument("--setup", default="bb84", help=setup_help)
    p.add_argument("--d", type=int, default=2, help="classical alphabet size")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("rac", parents=[common], help="random access code success probability")
    p.add_argument("--setup", default="bb84", help=setup_help)
    p.set_defaults(func=cmd_rac)

    p = sub.add_parser("security", parents=[common], help="security report")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--setup", default="optimal", help=setup_help)
    g.add_argument("--pb", type=float, help="Bob's RAC success probability")
    p.set_defaults(func=cmd_security)

    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo protocol run")
    p.add_argument("--setup", default="optimal", help=setup_help)
    p.add_argument("--rounds", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--attack-axis", type=_parse_axis, help="intercept-resend axis x,y,z")
    p.add_argument("--fixed-bit", type=int, choices=(0, 1))
    p.add_argument("--test-fraction", type=float, default=0.1)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("scan-eve", parents=[common], help="Bob/Eve trade-off over attack axes")
    p.add_argument("--setup", default="optimal", help=setup_help)
    p.add_argument("--grid", type=int, default=3600)
    p.add_argument("--sphere", action="store_true", help="grid over the sphere, not the x-z circle")
    p.add_argument("--fixed-bit", type=int, choices=(0, 1))
    p.add_argument("--points", action="store_true", help="include every grid point")
    p.set_defaults(func=cmd_scan_eve)

    p = sub.add_parser("optimize", parents=[common], help="see-saw qubit value of a witness")
    p.add_argument("--witness", default="S", help="'S' or path to witness JSON")
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_optimize)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload = _clean(args.func(args))
    except Exception as exc:  # noqa: BLE001 - reported as a one-line diagnostic
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"sdiqkd {args.command}: error: {msg}", file=sys.stderr)
        return 1
    text = _to_csv(payload) if args.format == "csv" else json.dumps(payload, indent=2) + "\n"
    if args.out:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
