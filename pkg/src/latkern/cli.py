"""Command-line front end.

Every subcommand reads JSON matrix files, runs one analysis, and emits a
report either as text or, with --json, as deterministic JSON (sorted
keys).  Exit codes: 0 for success or an affirmative decision, 1 for a
well-posed negative decision (the report carries the witness), 2 for
malformed input or a violated precondition.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .factor import causal_factor, constant_matrix, static_factor
from .feedback import (PreconditionError, StateSpace, from_state_space,
                       vg_representation, worst_case_precompensator)
from .latency import (KernelNotFinitelyGenerated, compensation_equivalence,
                      latency_kernel)
from .matrixio import (InputFormatError, dump_matrix, load_constant_matrix,
                       load_matrix, matrix_to_json)
from .rational import ORD_INF
from .simulate import simulate_response, verification_horizon
from .transfer import SingularMatrixError, TransferMatrix


def _fmt_order(o):
    return "inf" if o == ORD_INF else o


def _fmt_frac(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _const_json(a):
    return [[_fmt_frac(Fraction(c)) for c in row] for row in a]


def _vector_json(u):
    return [{"num": [_fmt_frac(c) for c in e.num.coeffs] or ["0"],
             "den": [_fmt_frac(c) for c in e.den.coeffs]} for e in u]


def _series_json(series):
    out = []
    for t in range(series.start, series.horizon + 1):
        m = series.coeff(t)
        out.append({"index": t, "coeff": _const_json(m)})
    return out


def cmd_classify(args):
    f = load_matrix(args.matrix)
    report = f.classify().as_dict()
    return {"command": "classify", "input": args.matrix, "report": report}, 0


def cmd_latency(args):
    f = load_matrix(args.matrix)
    k = latency_kernel(f)
    chain = {
        "k_lower": k.chain.k_lower,
        "k_upper": k.chain.k_upper,
        "mu": {str(j): k.chain.mu[j] for j in sorted(k.chain.mu)},
        "subspaces": {str(j): _const_json(k.chain.subspaces[j])
                      for j in sorted(k.chain.subspaces)},
    }
    report = {
        "generator": matrix_to_json(k.generator),
        "poly_generator": (matrix_to_json(k.poly_generator)
                           if k.poly_generator is not None else None),
        "orders": list(k.orders),
        "latency_indices": list(k.indices),
        "order_chain": chain,
        "strictly_causal_input": k.strictly_causal_input,
    }
    return {"command": "latency", "input": args.matrix, "report": report}, 0


def cmd_factor(args):
    f = load_matrix(args.f)
    h = load_matrix(args.h)
    if args.static:
        g = static_factor(f, h)
        if g is None:
            return {"command": "factor", "mode": "static",
                    "decision": "no"}, 1
        return {"command": "factor", "mode": "static", "decision": "yes",
                "gain": _const_json(constant_matrix(g))}, 0
    outcome = causal_factor(f, h)
    if outcome.decision:
        return {"command": "factor", "mode": "causal", "decision": "yes",
                "factor": matrix_to_json(outcome.g)}, 0
    return {"command": "factor", "mode": "causal", "decision": "no",
            "witness": _vector_json(outcome.witness)}, 1


def cmd_equiv(args):
    f1 = load_matrix(args.f1)
    f2 = load_matrix(args.f2)
    mode = args.mode.replace("-", "_")
    res = compensation_equivalence(f1, f2, mode)
    report = {"command": "equiv", "mode": args.mode,
              "equivalent": res.equivalent}
    if res.equivalent:
        if res.post is not None:
            report["post"] = matrix_to_json(res.post)
        if res.pre is not None:
            report["pre"] = matrix_to_json(res.pre)
        return report, 0
    report["detail"] = res.detail
    if mode == "two_sided":
        report["witness"] = {"indices_first": list(res.witness[0]),
                             "indices_second": list(res.witness[1])}
    else:
        report["witness"] = _vector_json(res.witness)
    return report, 1


def cmd_realize(args):
    f = load_matrix(args.f)
    l = load_matrix(args.l)
    rep = vg_representation(f, l)
    horizon = verification_horizon()
    from .latency import InternalCheckError
    from .simulate import SeriesMatrix
    lhs = SeriesMatrix.from_transfer(l, horizon)
    loop = TransferMatrix.identity(f.cols) + rep.g * f
    rhs = (SeriesMatrix.from_transfer(loop, horizon).inverse()
           * SeriesMatrix.from_transfer(rep.v, horizon))
    if not lhs.agrees_with(rhs):
        raise InternalCheckError("simulation cross-check failed")
    os.makedirs(args.out_dir, exist_ok=True)
    v_path = os.path.join(args.out_dir, "v.json")
    g_path = os.path.join(args.out_dir, "g.json")
    dump_matrix(rep.v, v_path)
    dump_matrix(rep.g, g_path)
    report = {
        "command": "realize",
        "sigma": list(rep.sigma),
        "nu": list(rep.nu),
        "v": matrix_to_json(rep.v),
        "g": matrix_to_json(rep.g),
        "files": {"v": v_path, "g": g_path},
        "simulation_horizon": horizon,
    }
    return report, 0


def cmd_worstcase(args):
    f = load_matrix(args.matrix)
    l = worst_case_precompensator(f)
    if args.out:
        dump_matrix(l, args.out)
    report = {"command": "worstcase", "precompensator": matrix_to_json(l)}
    if args.out:
        report["file"] = args.out
    return report, 0


def cmd_expand(args):
    if args.terms < 1:
        raise InputFormatError("--terms must be positive")
    f = load_matrix(args.matrix)
    order = f.order()
    start = 0 if order == ORD_INF else order
    terms = [{"index": t, "coeff": _const_json(f.markov(t))}
             for t in range(start, start + args.terms)]
    report = {
        "command": "expand",
        "map_order": _fmt_order(order),
        "terms": terms,
    }
    return report, 0


def cmd_statespace(args):
    a = load_constant_matrix(args.a)
    b = load_constant_matrix(args.b)
    c = load_constant_matrix(args.c) if args.c else None
    f = from_state_space(StateSpace(a, b, c))
    if args.out:
        dump_matrix(f, args.out)
    report = {"command": "statespace", "transfer": matrix_to_json(f)}
    if args.out:
        report["file"] = args.out
    return report, 0


def cmd_simulate(args):
    f = load_matrix(args.f)
    u_mat = load_matrix(args.u)
    if u_mat.cols != 1:
        raise InputFormatError("input file must be a column vector")
    horizon = args.horizon if args.horizon is not None else verification_horizon()
    u = [u_mat.entry(i, 0) for i in range(u_mat.rows)]
    series = simulate_response(f, u, horizon)
    report = {
        "command": "simulate",
        "horizon": horizon,
        "output": _series_json(series),
    }
    return report, 0


def _render_text(obj, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        if set(obj) == {"rows", "cols", "entries"} and isinstance(
                obj.get("entries"), list) and obj["entries"] and isinstance(
                obj["entries"][0], list) and obj["entries"][0] and isinstance(
                obj["entries"][0][0], dict):
            from .matrixio import matrix_from_json
            lines.append(pad + str(matrix_from_json(obj)))
            return lines
        for key in obj:
            val = obj[key]
            if isinstance(val, (dict, list)):
                lines.append(f"{pad}{key}:")
                lines.extend(_render_text(val, indent + 1))
            else:
                lines.append(f"{pad}{key}: {val}")
        return lines
    if isinstance(obj, list):
        if all(not isinstance(x, (dict, list)) for x in obj):
            lines.append(pad + "[" + ", ".join(str(x) for x in obj) + "]")
            return lines
        for x in obj:
            lines.extend(_render_text(x, indent))
        return lines
    lines.append(pad + str(obj))
    return lines


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latkern",
        description="Exact causal factorization, latency kernels and "
                    "feedback realization for rational transfer matrices.")
    parser.add_argument("--json", action="store_true",
                        help="emit the report as JSON")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("classify", help="causality classification of a map")
    p.add_argument("matrix")
    p.set_defaults(run=cmd_classify)

    p = sub.add_parser("latency", help="latency kernel, indices, order chain")
    p.add_argument("matrix")
    p.set_defaults(run=cmd_latency)

    p = sub.add_parser("factor", help="causal (or static) factorization H = G*F")
    p.add_argument("f")
    p.add_argument("h")
    p.add_argument("--static", action="store_true",
                   help="look for a constant factor instead")
    p.set_defaults(run=cmd_factor)

    p = sub.add_parser("equiv", help="bicausal compensation equivalence")
    p.add_argument("f1")
    p.add_argument("f2")
    p.add_argument("--mode", required=True,
                   choices=["post", "pre", "two-sided", "two_sided"])
    p.set_defaults(run=cmd_equiv)

    p = sub.add_parser("realize",
                       help="feedback realization of a precompensator")
    p.add_argument("f")
    p.add_argument("l")
    p.add_argument("--out-dir", default=".",
                   help="directory for v.json and g.json (default .)")
    p.set_defaults(run=cmd_realize)

    p = sub.add_parser("worstcase",
                       help="precompensator needing the full latency budget")
    p.add_argument("matrix")
    p.add_argument("--out", help="also write the result to this file")
    p.set_defaults(run=cmd_worstcase)

    p = sub.add_parser("expand", help="truncated expansion of a map")
    p.add_argument("matrix")
    p.add_argument("--terms", type=int, required=True)
    p.set_defaults(run=cmd_expand)

    p = sub.add_parser("statespace",
                       help="transfer matrix C(zI-A)^-1 B from constant data")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("c", nargs="?", default=None)
    p.add_argument("--out", help="also write the result to this file")
    p.set_defaults(run=cmd_statespace)

    p = sub.add_parser("simulate",
                       help="convolution response to a rational input")
    p.add_argument("f")
    p.add_argument("u")
    p.add_argument("--horizon", type=int, default=None)
    p.set_defaults(run=cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, code = args.run(args)
    except (InputFormatError, PreconditionError, KernelNotFinitelyGenerated,
            SingularMatrixError, ValueError) as exc:
        diag = {"command": args.subcommand, "error": str(exc)}
        if args.json:
            print(json.dumps(diag, indent=2, sort_keys=True))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 2
    report["exit_status"] = code
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print("\n".join(_render_text(report)))
    return code


if __name__ == "__main__":
    sys.exit(main())
