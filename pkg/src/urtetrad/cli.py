"""Command-line front end: tetrad emission, verification sweeps, Fock
operator queries, and the expansion law.  All results go to stdout as
JSON with a fixed key order and floats printed to 17 significant digits,
so identical flags give byte-identical output; diagnostics go to stderr.

Exit codes: 0 success, 1 verification or physics failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import cosmos, fock, spinor, tetrad
from .verify import SUITES, run_verification

__all__ = ["main", "build_parser", "dumps17"]

_CONVENTION = (
    "signature diag(-1,1,1,1); sigma^mu = (1, sigma_x, sigma_y, sigma_z) "
    "with the first spinor slot conjugated; null vectors carry 1/sqrt(2)"
)


def _emit(obj, out):
    if isinstance(obj, (bool, np.bool_)):
        out.append("true" if obj else "false")
    elif obj is None:
        out.append("null")
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(format(float(obj), ".17g"))
    elif isinstance(obj, dict):
        out.append("{")
        for i, (key, val) in enumerate(obj.items()):
            if i:
                out.append(",")
            out.append(json.dumps(str(key)))
            out.append(":")
            _emit(val, out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, val in enumerate(obj):
            if i:
                out.append(",")
            _emit(val, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj)!r}")


def dumps17(obj) -> str:
    """Deterministic JSON: insertion-ordered keys, 17-significant-digit floats."""
    out = []
    _emit(obj, out)
    return "".join(out)


def _pair(z) -> list:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _complex_vector(vec) -> list:
    return [_pair(z) for z in vec]


def _real_vector(vec) -> list:
    return [float(x) for x in vec]


def _element_from_args(args) -> spinor.GroupElement:
    if args.quat is not None:
        if args.a is not None or args.b is not None:
            raise ValueError("give either --quat or the pair --a/--b, not both")
        q = spinor.QuaternionPoint(*args.quat)
        return spinor.from_quaternion(q, args.phi)
    if args.a is None or args.b is None:
        raise ValueError("need --quat W X Y Z or both --a RE IM and --b RE IM")
    return spinor.GroupElement(complex(*args.a), complex(*args.b), args.phi)


def _cmd_tetrad(args) -> int:
    g = _element_from_args(args)
    q = spinor.to_quaternion(g)
    doc = {
        "command": "tetrad",
        "frame": "real" if args.real else "null",
        "input": {
            "a": _pair(g.a),
            "b": _pair(g.b),
            "phi": g.phi,
            "quaternion": _real_vector(q.as_array()),
        },
        "convention": _CONVENTION,
    }
    d = spinor.dyad_from_element(g)
    if args.real:
        rt = tetrad.real_tetrad(d)
        doc["t"] = _real_vector(rt.t)
        doc["z"] = _real_vector(rt.z)
        doc["x"] = _real_vector(rt.x)
        doc["y"] = _real_vector(rt.y)
    else:
        nt = tetrad.null_tetrad(d)
        doc["l"] = _complex_vector(nt.l)
        doc["l_star"] = _complex_vector(nt.l_star)
        doc["m"] = _complex_vector(nt.m)
        doc["n"] = _complex_vector(nt.n)
    print(dumps17(doc))
    return 0


def _cmd_verify(args) -> int:
    if args.samples < 1:
        print("error: --samples must be at least 1", file=sys.stderr)
        return 2
    if args.cutoff < 0:
        print("error: --cutoff must be nonnegative", file=sys.stderr)
        return 2
    report = run_verification(
        suite=args.suite,
        samples=args.samples,
        seed=args.seed,
        tol=args.tol,
        cutoff=args.cutoff,
    )
    print(dumps17(report))
    if not report["pass"]:
        failed = [r["name"] for r in report["records"] if not r["pass"]]
        print(f"verification failed: {', '.join(failed)}", file=sys.stderr)
        return 1
    return 0


_TAU_ARITY = 3


def _parse_op(tokens):
    name = tokens[0]
    if name == "tau":
        if len(tokens) != _TAU_ARITY:
            raise ValueError("operator tau needs two mode indices, e.g. --op tau 1 2")
        try:
            r, s = int(tokens[1]), int(tokens[2])
        except ValueError:
            raise ValueError("tau mode indices must be integers 1..4") from None
        if r not in (1, 2, 3, 4) or s not in (1, 2, 3, 4):
            raise ValueError("tau mode indices must be in 1..4")
        return ("tau", r, s)
    if len(tokens) == 1 and name in fock.TETRAD_BILINEARS:
        return (name,)
    known = ", ".join(sorted(fock.TETRAD_BILINEARS)) + ", tau R S"
    raise ValueError(f"unknown operator {' '.join(tokens)!r}; known: {known}")


def _build_op(space, op_spec):
    if op_spec[0] == "tau":
        return space.tau(op_spec[1], op_spec[2])
    return fock.tetrad_component(space, op_spec[0])


def _classical_expectation(op_spec, g, scale):
    """Analytic prediction for the coherent-state expectation of the operator.

    Spatial tetrad components compare against scale^2 times the classical
    real-tetrad component; the time component keeps its zero-point shift 2;
    tau components use the coherent moment conj(alpha_r) alpha_s plus the
    diagonal half.
    """
    amps = fock.BispinorAmplitudes.from_element(g)
    if op_spec[0] == "tau":
        return fock.coherent_bilinear_value(amps, scale, ((1.0, op_spec[1], op_spec[2]),))
    name = op_spec[0]
    if name == "t0":
        return fock.coherent_bilinear_value(amps, scale, fock.TETRAD_BILINEARS["t0"])
    rt = tetrad.real_tetrad(spinor.dyad_from_element(g))
    vec = {"z": rt.z, "x": rt.x, "y": rt.y}[name[0]]
    return complex(scale * scale * vec[int(name[1])])


def _cmd_fock(args) -> int:
    op_spec = _parse_op(args.op)
    space = fock.FockSpace(args.cutoff)
    op = _build_op(space, op_spec)
    doc = {
        "command": "fock",
        "cutoff": space.cutoff,
        "dimension": space.dimension,
        "op": " ".join(args.op),
    }
    if args.matrix:
        doc["triplets"] = [
            {"row": r, "col": c, "re": v.real, "im": v.imag} for r, c, v in op.triplets()
        ]
    else:
        a_re, a_im, b_re, b_im, phi, scale = args.expect_coherent
        g = spinor.GroupElement(complex(a_re, a_im), complex(b_re, b_im), phi)
        amps = fock.BispinorAmplitudes.from_element(g)
        state = fock.coherent_state(space, amps, scale)
        value = fock.expectation(op, state)
        classical = _classical_expectation(op_spec, g, scale)
        doc["input"] = {"a": _pair(g.a), "b": _pair(g.b), "phi": g.phi, "scale": float(scale)}
        doc["expectation"] = _pair(value)
        doc["classical"] = _pair(classical)
        doc["abs_diff"] = abs(value - classical)
    print(dumps17(doc))
    return 0


def _cmd_cosmos(args) -> int:
    model = cosmos.ExpansionModel(args.r0, args.c)
    radius = cosmos.radius_at(model, args.epoch)
    doc = {
        "command": "cosmos",
        "r0": model.r0,
        "c": model.c,
        "epoch": float(args.epoch),
        "radius": radius,
        "ur_count_reference": cosmos.ur_count_reference(),
    }
    print(dumps17(doc))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="urtetrad",
        description="Spinor dyads, null/real tetrads, metric reconstruction, "
        "and the second-quantized tetrad on a truncated Fock space.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tetrad", help="emit the null or real tetrad of a group element")
    p.add_argument("--a", nargs=2, type=float, metavar=("RE", "IM"), help="complex a")
    p.add_argument("--b", nargs=2, type=float, metavar=("RE", "IM"), help="complex b")
    p.add_argument("--quat", nargs=4, type=float, metavar=("W", "X", "Y", "Z"),
                   help="S^3 point, alternative to --a/--b")
    p.add_argument("--phi", type=float, default=0.0, help="phase, default 0")
    frame = p.add_mutually_exclusive_group(required=True)
    frame.add_argument("--null", action="store_true", help="null tetrad (l, l*, m, n)")
    frame.add_argument("--real", action="store_true", help="real tetrad (t, z, x, y)")
    p.set_defaults(func=_cmd_tetrad)

    p = sub.add_parser("verify", help="run seeded invariant sweeps, report as JSON")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-12,
                   help="tolerance for algebraic identities (default 1e-12)")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--cutoff", type=int, default=4, help="Fock cutoff for the fock suite")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("fock", help="emit a Fock operator matrix or a coherent expectation")
    p.add_argument("--cutoff", type=int, required=True)
    p.add_argument("--op", nargs="+", required=True, metavar="NAME",
                   help="t0 | z1..z3 | x1..x3 | y1..y3 | tau R S")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--matrix", action="store_true", help="emit sparse triplets")
    mode.add_argument("--expect-coherent", nargs=6, type=float,
                      metavar=("A_RE", "A_IM", "B_RE", "B_IM", "PHI", "SCALE"),
                      help="coherent-state expectation with classical comparison")
    p.set_defaults(func=_cmd_fock)

    p = sub.add_parser("cosmos", help="evaluate the linear expansion law")
    p.add_argument("--r0", type=float, required=True, help="radius at epoch 0")
    p.add_argument("--c", type=float, required=True, help="limiting velocity")
    p.add_argument("--epoch", type=float, required=True)
    p.set_defaults(func=_cmd_cosmos)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args)
    except fock.TruncationTooLossyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
