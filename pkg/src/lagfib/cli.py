"""``lagfib`` command line front end.

Every subcommand prints JSON on stdout.  Exit codes: 0 success, 1 parse
error, 2 precondition violation, 3 failed verification.
"""

import argparse
import json
import sys

from .affine import IntAffine2
from .cohomology import h2, twisting_moduli
from .errors import LagfibError, ParseError, PreconditionError
from .fibration import (FibrationSpec, build_for, build_t3_example, classify, enumerate_fibrations,
                        verify)
from .lattice import LatticeNF, is_isomorphic, normalize
from .svg import render_domain

PARAM_FLAGS = ("m", "n", "delta", "x", "y", "u", "v", "w", "z")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _emit(obj, args):
    text = json.dumps(obj, indent=2) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_json(args, required=True):
    raw = None
    if getattr(args, "json", None) is not None:
        raw = args.json
    elif getattr(args, "input", None):
        if args.input == "-":
            raw = sys.stdin.read()
        else:
            with open(args.input) as fh:
                raw = fh.read()
    if raw is None:
        if required:
            raise ParseError("no input: pass --json TEXT or --input FILE (use - for stdin)")
        return None
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from None


def _lattice(args):
    if args.series:
        params = {k: getattr(args, k) for k in PARAM_FLAGS if getattr(args, k) is not None}
        series = args.series
        if series.upper() in ("T2NYX", "C2NY") and "m" in params and "n" not in params:
            params["n"] = params.pop("m")
        return LatticeNF(series, params)
    data = _read_json(args)
    if isinstance(data, dict) and "lattice" in data and "series" not in data:
        data = data["lattice"]
    return LatticeNF.from_json(data)


def _add_io(p, inline=True):
    if inline:
        p.add_argument("--json", help="inline JSON input")
        p.add_argument("--input", help="JSON input file, or - for stdin")
    p.add_argument("--out", help="write output to this file")


def _add_series(p):
    p.add_argument("--series", help="R2, C2uv, C2ny, M2, T2uvwz, T2nyx or K2")
    for k in PARAM_FLAGS:
        p.add_argument(f"--{k}")


def cmd_normalize(args):
    data = _read_json(args, required=False)
    if data is None:
        data = {"generators": []}
    gens = data.get("generators") if isinstance(data, dict) else data
    if not isinstance(gens, list):
        raise ParseError("presentation needs a 'generators' list")
    cert = normalize([IntAffine2.from_json(g) for g in gens])
    _emit(cert.to_json(), args)
    return 0


def cmd_isomorphic(args):
    data = _read_json(args)
    pair = data if isinstance(data, list) else (data.get("lattices") if isinstance(data, dict) else None)
    if not isinstance(pair, list) or len(pair) != 2:
        raise ParseError("expected two lattice records, as a list or under 'lattices'")
    nf1, nf2 = (LatticeNF.from_json(r) for r in pair)
    _emit(is_isomorphic(nf1, nf2).to_json(), args)
    return 0


def cmd_cohomology(args):
    nf = _lattice(args)
    out = h2(nf).to_json()
    out["lattice"] = nf.to_json()
    out["twisting"] = twisting_moduli(nf).to_json()
    _emit(out, args)
    return 0


def cmd_enumerate(args):
    res = enumerate_fibrations(_lattice(args))
    _emit(res.to_json() if args.summary else [s.to_json() for s in res.specs], args)
    return 0


def cmd_build(args):
    if args.t3:
        spec = build_t3_example()
    else:
        spec = build_for(_lattice(args), int(args.m0), int(args.n0), args.twist)
    _emit(spec.to_json(), args)
    return 0


def cmd_verify(args):
    spec = FibrationSpec.from_json(_read_json(args))
    report = verify(spec)
    out = report.to_json()
    if report.ok and spec.lattice is not None and args.classify:
        out["classification"] = classify(spec).to_json()
    _emit(out, args)
    return 0 if report.ok else 3


def cmd_classify(args):
    spec = FibrationSpec.from_json(_read_json(args))
    _emit(classify(spec).to_json(), args)
    return 0


def cmd_render(args):
    svg = render_domain(_lattice(args), args.width, args.height)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)
    return 0


def build_parser():
    p = _Parser(prog="lagfib", description="Lattices, obstruction groups and Lagrangian fibrations over surfaces.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    q = sub.add_parser("normalize", help="reduce a presentation to its normal form")
    _add_io(q)
    q.set_defaults(func=cmd_normalize)

    q = sub.add_parser("isomorphic", help="decide isomorphism of two normal forms")
    _add_io(q)
    q.set_defaults(func=cmd_isomorphic)

    q = sub.add_parser("cohomology", help="obstruction group and twisting moduli")
    _add_io(q)
    _add_series(q)
    q.set_defaults(func=cmd_cohomology)

    q = sub.add_parser("enumerate", help="one fibration per obstruction class")
    _add_io(q)
    _add_series(q)
    q.add_argument("--summary", action="store_true", help="include pattern and moduli description")
    q.set_defaults(func=cmd_enumerate)

    q = sub.add_parser("build", help="build the explicit gluing data of a fibration")
    _add_io(q)
    _add_series(q)
    q.add_argument("--m0", default="0")
    q.add_argument("--n0", default="0")
    q.add_argument("--lambda", dest="twist", default="0")
    q.add_argument("--t3", action="store_true", help="the six-dimensional example over the 3-torus")
    q.set_defaults(func=cmd_build)

    q = sub.add_parser("verify", help="check a fibration record")
    _add_io(q)
    q.add_argument("--classify", action="store_true", help="also report the classification triple")
    q.set_defaults(func=cmd_verify)

    q = sub.add_parser("classify", help="invariant triple of a fibration record")
    _add_io(q)
    q.set_defaults(func=cmd_classify)

    q = sub.add_parser("render-domain", help="SVG of the fundamental domain")
    _add_io(q)
    _add_series(q)
    q.add_argument("--width", type=int, default=480)
    q.add_argument("--height", type=int, default=480)
    q.set_defaults(func=cmd_render)
    return p


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "command", None):
            raise ParseError("missing subcommand")
        return args.func(args)
    except ParseError as exc:
        sys.stdout.write(json.dumps(exc.to_json()) + "\n")
        return 1
    except PreconditionError as exc:
        sys.stdout.write(json.dumps(exc.to_json()) + "\n")
        return 2
    except LagfibError as exc:
        sys.stdout.write(json.dumps(exc.to_json()) + "\n")
        return 2
    except OSError as exc:
        sys.stdout.write(json.dumps({"error": "io_error", "message": str(exc)}) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
