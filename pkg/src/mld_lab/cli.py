"""Command-line front end: ``mld-lab {mld,oracle,resolve,solve,scan}``.

Every rational on the wire is a ``"p/q"`` string.  Exit codes:
0 success, 2 bad input, 3 policy violation (--require-lc/--require-klt),
4 a mathematical property failed (singular system, oracle or cross-check
mismatch).
"""

import argparse
import json
import sys
from pathlib import Path

from .acc import THREADS_ENV, CoefficientFamily, check_stabilization, check_system_stabilization
from .cones import regular_decomposition
from .lattice import LatticePoint, as_rational, format_rational
from .mld import MINUS_INFINITY, ToricPair, brute_force_mld, kth_mlds, toric_mld
from .regone import (
    RegOneSystem,
    Shape,
    SingularSystemError,
    SystemSpecError,
    circle_case_toric,
    geometric_model,
    interval_form,
    solve_system,
    two_anchor_pair,
)

EXIT_OK, EXIT_INPUT, EXIT_POLICY, EXIT_MATH = 0, 2, 3, 4


class InputError(Exception):
    def __init__(self, field, message):
        super().__init__(message)
        self.field = field


class MathError(Exception):
    pass


def dumps(obj):
    return json.dumps(obj, separators=(",", ":")) + "\n"


# -- wire formats ----------------------------------------------------------

def _parse_vector(raw, field):
    if isinstance(raw, str):
        raw = raw.split(",")
    try:
        x, y = raw
        if isinstance(x, (bool, float)) or isinstance(y, (bool, float)):
            raise TypeError
        return LatticePoint(int(x), int(y))
    except (TypeError, ValueError):
        raise InputError(field, f"{field} must be a pair of integers, got {raw!r}") from None


def _parse_rational(raw, field):
    if isinstance(raw, float):
        raise InputError(field, f"{field} must be an exact rational string, not a float")
    try:
        return as_rational(raw)
    except (TypeError, ValueError) as exc:
        raise InputError(field, f"{field}: {exc}") from None


def _parse_int(raw, field, minimum=1):
    if isinstance(raw, (bool, float)):
        raise InputError(field, f"{field} must be an integer")
    try:
        value = int(raw)
    except (TypeError, ValueError):
        raise InputError(field, f"{field} must be an integer, got {raw!r}") from None
    if value < minimum:
        raise InputError(field, f"{field} must be >= {minimum}")
    return value


def _load_input(path):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError("input", f"cannot read {path}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("input", f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise InputError("input", "top-level JSON value must be an object")
    # a previous result document carries its input under "input"
    if isinstance(data.get("input"), dict):
        data = data["input"]
    return data


def parse_cone_spec(data):
    """ConeSpec dict -> (ToricPair, canonical echo of the input)."""
    if "v1" not in data or "v2" not in data:
        raise InputError("v1" if "v1" not in data else "v2", "cone needs v1 and v2")
    v1 = _parse_vector(data["v1"], "v1")
    v2 = _parse_vector(data["v2"], "v2")
    b1 = _parse_rational(data.get("b1", "0"), "b1")
    b2 = _parse_rational(data.get("b2", "0"), "b2")
    for name, b in (("b1", b1), ("b2", b2)):
        if b > 1:
            raise InputError(name, f"{name} must be <= 1")
    for name, v in (("v1", v1), ("v2", v2)):
        if v.is_zero():
            raise InputError(name, "zero vector has no primitive representative")
    try:
        pair = ToricPair.from_generators(v1, v2, b1, b2)
    except ValueError as exc:
        raise InputError("v2", str(exc)) from None
    echo = {"v1": v1.tolist(), "v2": v2.tolist(), "b1": format_rational(b1), "b2": format_rational(b2)}
    return pair, echo


_SYSTEM_FIELDS = {
    "left_coupling": "left_coupling",
    "right_coupling": "right_coupling",
    "c1": "anchor_coefficient",
    "cr": "right_anchor_coefficient",
    "beta1": "left_rhs",
    "beta_r": "right_rhs",
}
_WIRE_NAME = {v: k for k, v in _SYSTEM_FIELDS.items()}


def parse_system_spec(data):
    """SystemSpec dict -> (RegOneSystem, canonical echo of the input)."""
    try:
        shape = Shape(data.get("shape"))
    except ValueError:
        choices = ", ".join(s.value for s in Shape)
        raise InputError("shape", f"shape must be one of: {choices}") from None
    raw_weights = data.get("weights")
    if not isinstance(raw_weights, list):
        raise InputError("weights", "weights must be a list of integers")
    weights = tuple(_parse_int(m, f"weights[{i}]") for i, m in enumerate(raw_weights))
    kwargs = {}
    echo = {"shape": shape.value, "weights": list(weights)}
    for wire, attr in _SYSTEM_FIELDS.items():
        if data.get(wire) is None:
            continue
        if attr.endswith("coupling"):
            kwargs[attr] = _parse_int(data[wire], wire)
            echo[wire] = kwargs[attr]
        else:
            kwargs[attr] = _parse_rational(data[wire], wire)
            echo[wire] = format_rational(kwargs[attr])
    N = _parse_int(data.get("N", 1), "N")
    echo["N"] = N
    unknown = set(data) - set(_SYSTEM_FIELDS) - {"shape", "weights", "N"}
    if unknown:
        raise InputError(sorted(unknown)[0], f"unknown field(s): {', '.join(sorted(unknown))}")
    s = RegOneSystem(shape, weights, complement_index=N, **kwargs)
    try:
        s.validate()
    except SystemSpecError as exc:
        fields = [_WIRE_NAME.get(f, f) for f in exc.fields]
        message = str(exc)
        for attr, wire in _WIRE_NAME.items():
            message = message.replace(attr, wire)
        raise InputError(",".join(fields), message) from None
    return s, echo


# -- commands ---------------------------------------------------------------

def _cone_input(args):
    if args.input:
        return _load_input(args.input)
    data = {}
    for name in ("v1", "v2", "b1", "b2"):
        value = getattr(args, name, None)
        if value is not None:
            data[name] = value
    return data


def _mld_json(result):
    if result is MINUS_INFINITY:
        return {"value": "-inf", "witness": None, "lc": False, "klt": False}
    return {
        "value": format_rational(result.value),
        "witness": result.witness.tolist(),
        "lc": result.lc,
        "klt": result.klt,
    }


def cmd_mld(args):
    pair, echo = parse_cone_spec(_cone_input(args))
    result = toric_mld(pair)
    out = _mld_json(result)
    code = EXIT_OK
    if args.oracle:
        oracle = brute_force_mld(pair)
        agree = (oracle is result) or (
            oracle is not MINUS_INFINITY and result is not MINUS_INFINITY and oracle.value == result.value
        )
        out["oracle"] = {**_mld_json(oracle), "agrees": agree}
        if not agree:
            code = EXIT_MATH
    if args.kth is not None:
        if args.kth < 1:
            raise InputError("kth", "kth must be a positive integer")
        if result is MINUS_INFINITY:
            raise InputError("kth", "pair is not log canonical")
        out["kth"] = [format_rational(v) for v in kth_mlds(pair, args.kth)]
    out["input"] = echo
    if code == EXIT_OK and args.require_lc and result is MINUS_INFINITY:
        code = EXIT_POLICY
    if code == EXIT_OK and args.require_klt and (result is MINUS_INFINITY or not result.klt):
        code = EXIT_POLICY
    if args.format == "csv":
        text = "value,witness_x,witness_y,lc,klt\n"
        w = out["witness"] or ["", ""]
        text += f"{out['value']},{w[0]},{w[1]},{str(out['lc']).lower()},{str(out['klt']).lower()}\n"
        return code, text
    return code, dumps(out)


def cmd_oracle(args):
    pair, echo = parse_cone_spec(_cone_input(args))
    fast, slow = toric_mld(pair), brute_force_mld(pair)
    agree = (fast is slow) or (
        fast is not MINUS_INFINITY and slow is not MINUS_INFINITY and fast.value == slow.value
    )
    out = {"chain": _mld_json(fast), "brute_force": _mld_json(slow), "agrees": agree, "input": echo}
    return (EXIT_OK if agree else EXIT_MATH), dumps(out)


def cmd_resolve(args):
    pair, echo = parse_cone_spec(_cone_input(args))
    decomposition = regular_decomposition(pair.cone)
    out = {
        "cone": {"v1": pair.cone.v1.tolist(), "v2": pair.cone.v2.tolist()},
        "index": pair.cone.index,
        "chain": [w.tolist() for w in decomposition.chain],
        "weights": list(decomposition.weights),
        "determinants": decomposition.determinants(),
        "input": {k: echo[k] for k in ("v1", "v2")},
    }
    return EXIT_OK, dumps(out)


def _system_input(args):
    if args.input:
        return _load_input(args.input)
    data = {"shape": args.shape}
    if args.weights is not None:
        try:
            data["weights"] = [int(t) for t in args.weights.split(",") if t.strip()]
        except ValueError:
            raise InputError("weights", f"weights must be comma-separated integers, got {args.weights!r}") from None
    for wire in ("left_coupling", "right_coupling", "c1", "cr", "beta1", "beta_r", "N"):
        value = getattr(args, wire, None)
        if value is not None:
            data[wire] = value
    return data


def cmd_solve(args):
    s, echo = parse_system_spec(_system_input(args))
    if s.shape is Shape.INTERVAL_TWO_ANCHORS:
        result = toric_mld(two_anchor_pair(s))
        out = {"route": "toric", **_mld_json(result), "input": echo}
        return EXIT_OK, dumps(out)
    try:
        sol = solve_system(s)
    except SingularSystemError as exc:
        raise MathError(str(exc)) from None
    out = {
        "alphas": [format_rational(a) for a in sol.alphas],
        "labels": list(sol.labels),
        "mld": format_rational(sol.mld),
        "argmin_index": sol.argmin_index,
        "argmin_label": sol.labels[sol.argmin_index],
    }
    code = EXIT_OK
    if args.crosscheck:
        if s.shape is Shape.CIRCLE:
            toric = toric_mld(circle_case_toric(s))
            match = toric is not MINUS_INFINITY and toric.value == sol.mld
            out["crosscheck"] = {"route": "toric", "value": _mld_json(toric)["value"], "match": match}
        else:
            points, M = interval_form(s)
            values = [M(x) for x in points]
            match = tuple(values) == sol.alphas
            check = {
                "route": "geometric",
                "form": [format_rational(M.a), format_rational(M.b)],
                "points": [x.tolist() for x in points],
                "values": [format_rational(v) for v in values],
                "match": match,
            }
            try:
                model = geometric_model(s)
                check["sigma"] = [model.sigma.v1.tolist(), model.sigma.v2.tolist()]
            except ValueError:
                check["sigma"] = None
            out["crosscheck"] = check
        if not out["crosscheck"]["match"]:
            code = EXIT_MATH
    out["input"] = echo
    return code, dumps(out)


def _rational_list(text, field):
    try:
        return [as_rational(t) for t in text.split(",") if t.strip()]
    except (TypeError, ValueError) as exc:
        raise InputError(field, f"{field}: {exc}") from None


def _int_list(text, field):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InputError(field, f"{field} must be comma-separated integers") from None


def cmd_scan(args):
    try:
        family = CoefficientFamily(tuple(_rational_list(args.family, "family")))
    except ValueError as exc:
        raise InputError("family", str(exc)) from None
    N = args.N
    if N < 1:
        raise InputError("N", "N must be a positive integer")
    thresholds = _rational_list(args.thresholds, "thresholds") if args.thresholds else [as_rational(f"1/{2 * N}")]
    try:
        if args.mode == "toric":
            schedule = _int_list(args.schedule or "10,20,40", "schedule")
            report = check_stabilization(family, N, schedule, thresholds)
        else:
            schedule = _int_list(args.schedule or "2,3,4", "schedule")
            betas = _rational_list(args.betas, "betas")
            report = check_system_stabilization(
                args.shape, family, N, schedule, thresholds, length_bound=args.length_bound, betas=betas
            )
    except ValueError as exc:
        msg = str(exc)
        field = "thresholds" if "threshold" in msg else "N" if msg.startswith("N ") else THREADS_ENV if THREADS_ENV in msg else "schedule"
        raise InputError(field, str(exc)) from None
    base = Path(args.output)
    base.parent.mkdir(parents=True, exist_ok=True)
    json_path, csv_path = base.with_suffix(".json"), base.with_suffix(".csv")
    json_path.write_text(report.to_json())
    csv_path.write_text(report.to_csv())
    return EXIT_OK, report.summary() + f" -> {json_path}, {csv_path}\n"


# -- argument parsing -------------------------------------------------------

def _add_cone_args(p, coefficients=True):
    p.add_argument("--input", metavar="FILE", help="ConeSpec JSON file ('-' for stdin)")
    p.add_argument("--v1", help="first generator, e.g. 1,0")
    p.add_argument("--v2", help="second generator, e.g. 1,2")
    if coefficients:
        p.add_argument("--b1", help="coefficient of T1 as p/q (default 0)")
        p.add_argument("--b2", help="coefficient of T2 as p/q (default 0)")


def build_parser():
    parser = argparse.ArgumentParser(prog="mld-lab", description="Exact toric surface mlds and regularity-one systems.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mld", help="mld of a toric surface pair")
    _add_cone_args(p)
    p.add_argument("--oracle", action="store_true", help="also run the brute-force oracle")
    p.add_argument("--kth", type=int, metavar="K", help="print the first K k-th mlds")
    p.add_argument("--require-lc", action="store_true", help="exit 3 unless the pair is log canonical")
    p.add_argument("--require-klt", action="store_true", help="exit 3 unless the pair is klt")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", metavar="PATH", help="write the result to PATH instead of stdout")
    p.set_defaults(func=cmd_mld)

    p = sub.add_parser("oracle", help="compare chain and brute-force mlds")
    _add_cone_args(p)
    p.add_argument("--output", metavar="PATH", help="write the result to PATH instead of stdout")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("resolve", help="Hirzebruch-Jung chain of a cone")
    _add_cone_args(p, coefficients=False)
    p.add_argument("--output", metavar="PATH", help="write the result to PATH instead of stdout")
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("solve", help="solve a regularity-one linear system")
    p.add_argument("--input", metavar="FILE", help="SystemSpec JSON file ('-' for stdin)")
    p.add_argument("--shape", choices=[s.value for s in Shape])
    p.add_argument("--weights", help="comma-separated integers")
    p.add_argument("--left-coupling", dest="left_coupling")
    p.add_argument("--right-coupling", dest="right_coupling")
    p.add_argument("--c1")
    p.add_argument("--cr")
    p.add_argument("--beta1")
    p.add_argument("--beta-r", dest="beta_r")
    p.add_argument("--N")
    p.add_argument("--crosscheck", action="store_true", help="verify against the toric or geometric model")
    p.add_argument("--output", metavar="PATH", help="write the result to PATH instead of stdout")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("scan", help="threshold-count scan of mld values")
    p.add_argument("--family", default="0", help="comma-separated coefficients (anchors in system mode)")
    p.add_argument("--N", type=int, default=2)
    p.add_argument("--schedule", help="increasing max indices (toric) or weight bounds (system)")
    p.add_argument("--thresholds", help="comma-separated thresholds in (0, 1/N); default 1/(2N)")
    p.add_argument("--mode", choices=("toric", "system"), default="toric")
    p.add_argument("--shape", choices=[s.value for s in Shape], default=Shape.CIRCLE.value)
    p.add_argument("--length-bound", type=int, default=3)
    p.add_argument("--betas", default="1", help="right-hand sides in system mode")
    p.add_argument("--output", metavar="PATH", default="mld_scan",
                   help="base path; writes PATH.json and PATH.csv")
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, text = args.func(args)
    except InputError as exc:
        code, text = EXIT_INPUT, dumps({"error": "input", "field": exc.field, "message": str(exc)})
    except MathError as exc:
        code, text = EXIT_MATH, dumps({"error": "math", "message": str(exc)})
    if args.command != "scan" and args.output and not text.startswith('{"error"'):
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
