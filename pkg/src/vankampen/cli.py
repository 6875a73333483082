"""Command-line surface: generation, decisions, walks, surgery, verification.

Every run emits a manifest (argv, seed, parameters, tool version, input
digests) on stderr or to --manifest, sufficient to reproduce the output
byte-for-byte: all randomness is seeded and all iteration orders canonical.
Exit codes: 0 success/decided, 1 property violation, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys

from . import __version__
from .complexes import (
    Complex,
    boundary_of_simplex,
    complex_from_dict,
    complex_from_text,
    complex_to_dict,
    complex_to_text,
    full_simplex,
    h_vector,
    missing_faces,
    simplex,
    skeleton,
    vk_skeleton,
    with_face,
)
from .deleted_product import CellBudgetExceeded, PairChain
from .homology import betti_gf2, betti_int
from .obstruction import evaluate, obstruction
from .pachner import (
    MoveDescriptor,
    applicable_moves,
    apply_move,
    apply_trace,
    cyclic_sphere,
    random_walk,
    stellar_subdivide,
    trace_from_dict,
    trace_states,
    trace_to_dict,
)
from .reconstruction import reconstruct
from .surgery import (
    SurgeryError,
    fresh_face_context,
    missing_face_witness,
    transport_context,
    transport_witness,
    verify_missing_face_theorem,
)
from .verification import AcceptanceSuite

DEFAULT_CELL_BUDGET = 10**6
BUDGET_ENV = "VANKAMPEN_CELL_BUDGET"


class UsageError(Exception):
    pass


def _read_file(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_complex(path: str, fmt: str) -> Complex:
    text = _read_file(path)
    if fmt == "text" or (fmt == "auto" and not text.lstrip().startswith("{")):
        return complex_from_text(text)
    return complex_from_dict(json.loads(text))


def _parse_face(text: str):
    try:
        return simplex(int(tok) for tok in text.replace(",", " ").split())
    except ValueError as exc:
        raise UsageError(f"bad face {text!r}: {exc}") from exc


def _cell_budget(args) -> int:
    if getattr(args, "cell_budget", None) is not None:
        return args.cell_budget
    return int(os.environ.get(BUDGET_ENV, DEFAULT_CELL_BUDGET))


def _emit(args, payload, as_complex: bool = False) -> None:
    if as_complex and args.format == "text":
        out = complex_to_text(payload)
    elif as_complex:
        out = json.dumps(complex_to_dict(payload), indent=None, sort_keys=False) + "\n"
    else:
        out = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _manifest(args, argv) -> None:
    digests = {}
    for attr in ("input", "trace", "witness"):
        path = getattr(args, attr, None)
        if path and path != "-":
            try:
                digests[path] = hashlib.sha256(
                    open(path, "rb").read()
                ).hexdigest()
            except OSError:
                digests[path] = None
    manifest = {
        "command": list(argv),
        "version": __version__,
        "seed": getattr(args, "seed", None),
        "parameters": {
            k: v
            for k, v in sorted(vars(args).items())
            if k not in {"func"} and not k.startswith("_")
            and isinstance(v, (int, str, bool, type(None)))
        },
        "input_digests": digests,
        "rng": "python-random-mersenne-twister",
    }
    line = json.dumps(manifest, sort_keys=True)
    if args.manifest:
        with open(args.manifest, "w", encoding="utf-8") as fh:
            fh.write(line + "\n")
    else:
        print(line, file=sys.stderr)


# -- subcommands --------------------------------------------------------------


def _cmd_gen(args) -> int:
    kind = args.kind
    if kind == "boundary-simplex":
        c = boundary_of_simplex(range(args.dim + 1), name=f"boundary-simplex-{args.dim}")
    elif kind == "vk-complex":
        c = vk_skeleton(args.d)
    elif kind == "cyclic":
        c = cyclic_sphere(args.n, args.sphere_dim)
    elif kind == "skeleton":
        if not args.input:
            raise UsageError("gen --kind skeleton needs --input")
        c = skeleton(_load_complex(args.input, args.format), args.d).with_name(
            f"skeleton-{args.d}"
        )
    elif kind == "stellar":
        if not args.input or not args.face:
            raise UsageError("gen --kind stellar needs --input and --face")
        c = stellar_subdivide(_load_complex(args.input, args.format), _parse_face(args.face))
    else:
        raise UsageError(f"unknown kind {kind!r}")
    if args.name:
        c = c.with_name(args.name)
    _emit(args, c, as_complex=True)
    return 0


def _cmd_missing(args) -> int:
    c = _load_complex(args.input, args.format)
    faces = sorted(missing_faces(c, args.d))
    _emit(args, {"d": args.d, "missing_faces": [list(f) for f in faces]})
    return 0


def _cmd_homology(args) -> int:
    c = _load_complex(args.input, args.format)
    if args.coeff == "gf2":
        betti = betti_gf2(c, reduced=not args.unreduced)
        low = 0 if args.unreduced else -1
        payload = {
            "coefficients": "gf2",
            "reduced": not args.unreduced,
            "betti": {str(low + i): b for i, b in enumerate(betti)},
        }
    else:
        free, torsion = betti_int(c)
        payload = {
            "coefficients": "int",
            "reduced": True,
            "free": {str(-1 + i): b for i, b in enumerate(free)},
            "torsion": {str(-1 + i): list(t) for i, t in enumerate(torsion)},
        }
    _emit(args, payload)
    return 0


def _cmd_obstruction(args) -> int:
    c = _load_complex(args.input, args.format)
    r = args.target_dim if args.target_dim is not None else 2 * c.dim
    report = obstruction(c, r, cell_budget=_cell_budget(args))
    payload = report.to_json_dict()
    if not args.emit_witness:
        payload["witness"] = None
    if args.emit_cochain:
        from .deleted_product import build_deleted_product
        from .obstruction import _cochain_with_retries

        dp = build_deleted_product(c, cell_budget=_cell_budget(args))
        payload["cochain"] = _cochain_with_retries(c, dp, r, None).to_json_list()
    _emit(args, payload)
    return 0


def _cmd_pachner(args) -> int:
    c = _load_complex(args.input, args.format)
    if args.action == "list":
        _emit(args, [m.to_json_dict() for m in applicable_moves(c)])
        return 0
    if args.action == "apply":
        if not args.sigma or not args.tau:
            raise UsageError("pachner apply needs --sigma and --tau")
        sigma, tau = _parse_face(args.sigma), _parse_face(args.tau)
        move = MoveDescriptor(len(sigma) - 1, len(tau) - 1, sigma, tau)
        _emit(args, apply_move(c, move), as_complex=True)
        return 0
    if args.action == "walk":
        final, trace = random_walk(c, args.steps, args.seed)
        payload = trace_to_dict(c, trace, seed=args.seed, steps=args.steps)
        payload["final"] = complex_to_dict(final)
        _emit(args, payload)
        return 0
    raise UsageError(f"unknown pachner action {args.action!r}")


def _load_trace(args):
    data = json.loads(_read_file(args.trace))
    return trace_from_dict(data)


def _cmd_surgery(args) -> int:
    start, moves = _load_trace(args)
    d = args.dim
    if args.action == "verify-theorem":
        stats: dict = {}
        report = verify_missing_face_theorem(start, moves, d, stats=stats)
        payload = {
            "entries": [
                {
                    "missing_face": list(e.missing_face),
                    "pairing": e.pairing,
                    "direct_vanishes": e.direct.vanishes,
                    "witness_cells": len(e.witness),
                    "ok": e.ok,
                }
                for e in report.entries
            ],
            "stats": stats,
            "ok": report.ok,
        }
        _emit(args, payload)
        return 0 if report.ok else 1
    if args.missing is None or args.index is None:
        raise UsageError(f"surgery {args.action} needs --index and --missing")
    m_face = _parse_face(args.missing)
    states = trace_states(start, moves)
    sphere, move = states[args.index], moves[args.index]
    if args.action == "missing-face":
        ctx = fresh_face_context(sphere, move, m_face, d)
        witness = missing_face_witness(ctx, m_face)
        pairing = evaluate(ctx.complex_after, 2 * d, witness)
        _emit(
            args,
            {
                "missing_face": list(m_face),
                "witness": {"dim": 2 * d, "cells": witness.to_json_list()},
                "pairing": pairing,
            },
        )
        return 0 if pairing == 1 else 1
    if args.action == "transport":
        if not args.witness:
            raise UsageError("surgery transport needs --witness")
        wdata = json.loads(_read_file(args.witness))
        omega = PairChain.from_json_list(int(wdata["dim"]), wdata["cells"])
        ctx = transport_context(sphere, move, m_face, d)
        stats = {}
        moved = transport_witness(ctx, omega, stats=stats)
        pairing = evaluate(ctx.complex_after, 2 * d, moved)
        _emit(
            args,
            {
                "missing_face": list(m_face),
                "witness": {"dim": 2 * d, "cells": moved.to_json_list()},
                "pairing": pairing,
                "stats": stats,
            },
        )
        return 0 if pairing == 1 else 1
    raise UsageError(f"unknown surgery action {args.action!r}")


def _cmd_dancis(args) -> int:
    c = _load_complex(args.input, args.format)
    rebuilt = reconstruct(c, args.d)
    _emit(args, rebuilt, as_complex=True)
    return 0


def _cmd_hvector(args) -> int:
    c = _load_complex(args.input, args.format)
    _emit(args, {"d": args.d, "h_vector": list(h_vector(c, args.d))})
    return 0


def _cmd_verify(args) -> int:
    suite = AcceptanceSuite(seed=args.seed, quick=args.quick)
    only = None
    if args.only:
        only = [int(tok) for tok in args.only.replace(",", " ").split()]
    results = suite.run(only=only)
    for r in results:
        print(r.line())
    return 0 if all(r.ok for r in results) else 1


# -- parser ------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vankampen",
        description="Mod-2 van Kampen obstruction decisions and witness surgery",
    )
    parser.add_argument("--manifest", help="write the run manifest to this file")

    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("auto", "json", "text"), default="auto")
        p.add_argument("-o", "--output", help="output path (default stdout)")

    p = sub.add_parser("gen", help="generate a complex")
    common(p)
    p.add_argument("--kind", required=True,
                   choices=("boundary-simplex", "skeleton", "cyclic", "stellar", "vk-complex"))
    p.add_argument("--dim", type=int, default=3, help="simplex dimension for boundary-simplex")
    p.add_argument("--d", type=int, default=1, help="skeleton / vk-complex dimension")
    p.add_argument("--n", type=int, default=6, help="vertex count for cyclic spheres")
    p.add_argument("--sphere-dim", type=int, default=2, help="cyclic sphere dimension")
    p.add_argument("--input", help="input complex for skeleton/stellar")
    p.add_argument("--face", help="face to subdivide, e.g. '0 1 2'")
    p.add_argument("--name", help="name for the generated complex")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("missing", help="list missing d-faces")
    common(p)
    p.add_argument("--input", required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=_cmd_missing)

    p = sub.add_parser("homology", help="reduced Betti numbers")
    common(p)
    p.add_argument("--input", required=True)
    p.add_argument("--coeff", choices=("gf2", "int"), default="gf2")
    p.add_argument("--unreduced", action="store_true")
    p.set_defaults(func=_cmd_homology)

    p = sub.add_parser("obstruction", help="decide obstruction vanishing")
    common(p)
    p.add_argument("--input", required=True)
    p.add_argument("--target-dim", type=int, help="degree r (default 2 * dim)")
    p.add_argument("--emit-witness", action="store_true")
    p.add_argument("--emit-cochain", action="store_true",
                   help="include all intersection values, sorted by cell")
    p.add_argument("--cell-budget", type=int)
    p.set_defaults(func=_cmd_obstruction)

    p = sub.add_parser("pachner", help="bistellar moves")
    common(p)
    p.add_argument("action", choices=("list", "apply", "walk"))
    p.add_argument("--input", required=True)
    p.add_argument("--sigma")
    p.add_argument("--tau")
    p.add_argument("--steps", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_pachner)

    p = sub.add_parser("surgery", help="witness transport and theorem replay")
    common(p)
    p.add_argument("action", choices=("transport", "missing-face", "verify-theorem"))
    p.add_argument("--trace", required=True, help="trace JSON file")
    p.add_argument("--dim", type=int, required=True, help="skeleton dimension d")
    p.add_argument("--index", type=int, help="move index within the trace")
    p.add_argument("--missing", help="missing face, e.g. '0 1 2'")
    p.add_argument("--witness", help="witness JSON file for transport")
    p.set_defaults(func=_cmd_surgery)

    p = sub.add_parser("dancis", help="sphere reconstruction from a skeleton")
    common(p)
    p.add_argument("--input", required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=_cmd_dancis)

    p = sub.add_parser("hvector", help="h-vector of a pure complex")
    common(p)
    p.add_argument("--input", required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=_cmd_hvector)

    p = sub.add_parser("verify", help="run the acceptance suite")
    common(p)
    p.add_argument("--quick", action="store_true", help="smaller corpora")
    p.add_argument("--seed", type=int, default=20250809)
    p.add_argument("--only", help="comma-separated criterion numbers")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        code = args.func(args)
        _manifest(args, argv)
        return code
    except (UsageError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, SurgeryError, CellBudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
