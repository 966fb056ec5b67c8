"""Command-line front end.

Exit codes: 0 pass, 1 fail, 2 invalid input, 3 inconclusive.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import admissible as adm
from .certificate import FAIL, INCONCLUSIVE, Certificate
from .gcslin import SYMMETRIC, GCStructure, bfield_decompose, random_structure
from .leftinv import Connection
from .liealg import VoganDiagram, build_real_form, build_weyl_algebra
from .rootsys import SearchBudgetExceeded, UnknownType, classify_subset, enumerate_sigma_parabolic
from .scalars import Scalar

EXIT_PASS, EXIT_FAIL, EXIT_INVALID, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class InputError(Exception):
    pass


def _scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        if isinstance(x, float) and not x.is_integer():
            raise InputError(f"use exact strings such as '1/3' instead of the float {x}")
        return Scalar(int(x))
    if isinstance(x, str):
        try:
            return Scalar.parse(x)
        except Exception as exc:
            raise InputError(f"cannot parse scalar {x!r}: {exc}") from None
    raise InputError(f"expected a number or string, got {x!r}")


def _matrix(rows) -> list:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise InputError("expected a list of rows")
    return [[_scalar(x) for x in r] for r in rows]


def _load_json(src: str, what: str):
    """Inline JSON (starting with '{') or a file path."""
    text = src
    if not src.lstrip().startswith(("{", "[")):
        try:
            text = Path(src).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {what} file {src}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed {what} JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _vogan(args) -> VoganDiagram:
    if getattr(args, "vogan", None):
        data = _load_json(args.vogan, "vogan")
        if not isinstance(data, dict) or "type" not in data:
            raise InputError("vogan JSON needs a 'type' field")
        return VoganDiagram.from_json(data)
    if getattr(args, "type", None):
        return VoganDiagram.make(args.type)
    raise InputError("give --type or --vogan")


def _form(vd: VoganDiagram):
    W = build_weyl_algebra(vd.cartan_type)
    return W, build_real_form(W, vd)


def _emit(obj: dict, text: str, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


def _exit_for(cert: Certificate) -> int:
    return {FAIL: EXIT_FAIL, INCONCLUSIVE: EXIT_INCONCLUSIVE}.get(cert.status, EXIT_PASS)


# -- commands ---------------------------------------------------------------------------


def cmd_algebra(args, out) -> int:
    if args.vogan:
        vd = _vogan(args)
        W, F = _form(vd)
    else:
        if not args.type:
            raise InputError("give --type or --vogan")
        W, F = build_weyl_algebra(args.type), None
    R = W.root_system
    data = W.to_json()
    # N_ji = -N_ij, so one entry per unordered pair
    data["N"] = [[i, j, str(W.N[(i, j)])] for (i, j) in sorted(W.N) if i < j]
    data["dim"] = W.dim
    if F is not None:
        data["real_form"] = {
            "vogan": vd.to_json(),
            "inner": F.is_inner,
            "sigma": [F.sigma(k) for k in range(R.n_roots)],
            "a": [str(x) for x in F.a],
            "real_basis": list(F.real_labels),
        }
    lines = [
        f"type {'+'.join(f'{f}{n}' for f, n in R.cartan_type)}: rank {R.rank}, {R.n_roots} roots, dim {W.dim}",
        f"nonzero N entries (i < j): {len(data['N'])}",
    ]
    for k, r in enumerate(R.roots):
        lines.append(f"  root {k}: {list(r)}")
    if F is not None:
        lines.append(f"real form: {'inner' if F.is_inner else 'outer'}, a = {[str(x) for x in F.a]}")
    _emit(data, "\n".join(lines), args.format, out)
    return EXIT_PASS


def parse_triple(data: dict):
    """Triple JSON -> (form, AdmissibleTriple, sub, params)."""
    if not isinstance(data, dict):
        raise InputError("triple JSON must be an object")
    for key in ("vogan", "h_k", "R0"):
        if key not in data:
            raise InputError(f"triple JSON is missing {key!r}")
    vd = VoganDiagram.from_json(data["vogan"])
    W, F = _form(vd)
    h_k = _matrix(data["h_k"])
    R0 = [int(k) for k in data["R0"]]
    conn = data.get("connection", "D0")
    if isinstance(conn, dict):
        table = [[[_scalar(x) for x in v] for v in row] for row in conn["table"]]
        conn = Connection(F.real_algebra, table)
    elif conn not in ("D0", "Dc"):
        raise InputError(f"unknown connection {conn!r}")
    if "epsilon" in data:
        T = adm.regular_triple(F, h_k, R0, adm.EpsilonParams([], {}, {}), conn)
        T.epsilon = _matrix(data["epsilon"])
        T.params = None
        return F, T
    p = data.get("params", {})
    P = adm.EpsilonParams(
        _matrix(p.get("epsilon0", [])),
        {int(k): _scalar(v) for k, v in p.get("mu", {}).items()},
        {int(k): _scalar(v) for k, v in p.get("nu", {}).items()},
    )
    T = adm.regular_triple(F, h_k, R0, P, conn, strict=False)
    return F, T


def cmd_verify(args, out) -> int:
    data = _load_json(args.triple, "triple")
    F, T = parse_triple(data)
    if args.check == "mainapplic":
        if T.params is None:
            raise InputError("the theorem check needs 'params', not an explicit epsilon")
        cert = adm.check_mainapplic(F, T.sub, params=T.params)
    else:
        cert = adm.check_admissible(T)
    _emit(cert.to_json(), cert.render(), args.format, out)
    return _exit_for(cert)


def cmd_search(args, out) -> int:
    vd = _vogan(args)
    W, F = _form(vd)
    try:
        results = adm.search_triples(F, budget=args.budget)
    except SearchBudgetExceeded as exc:
        _emit({"status": "budget_exceeded", "detail": str(exc)}, f"budget exceeded: {exc}", args.format, out)
        return EXIT_INCONCLUSIVE
    verified = [r for r in results if r.status == "verified"]
    data = {
        "vogan": vd.to_json(),
        "candidates": [r.to_json() for r in results],
        "verified": len(verified),
    }
    lines = [f"{len(results)} sigma-parabolic subsets, {len(verified)} verified triples"]
    for r in results:
        lines.append(f"  R0={r.R0}: {r.status}" + (f" ({r.detail})" if r.detail else ""))
    _emit(data, "\n".join(lines), args.format, out)
    return EXIT_PASS


def cmd_enumerate(args, out) -> int:
    vd = _vogan(args)
    W, F = _form(vd)
    try:
        subsets = enumerate_sigma_parabolic(
            W.root_system, F.sigma, positive_only=args.positive_only, budget=args.budget
        )
    except SearchBudgetExceeded as exc:
        _emit({"status": "budget_exceeded", "detail": str(exc)}, f"budget exceeded: {exc}", args.format, out)
        return EXIT_INCONCLUSIVE
    rows = []
    for S in subsets:
        c = classify_subset(S, F.sigma)
        rows.append({
            "R0": sorted(S.members),
            "sigma_positive": c.sigma_positive,
            "symmetric_part": sorted(c.symmetric_part),
        })
    lines = [f"{len(rows)} sigma-parabolic subsets"]
    lines += [f"  {r['R0']}{'  (sigma-positive)' if r['sigma_positive'] else ''}" for r in rows]
    _emit({"vogan": vd.to_json(), "subsets": rows}, "\n".join(lines), args.format, out)
    return EXIT_PASS


def cmd_decompose(args, out) -> int:
    if args.gcs:
        data = _load_json(args.gcs, "structure")
        J = GCStructure(_matrix(data["J"]), data.get("kind", SYMMETRIC))
    elif args.random:
        rng = random.Random(args.seed)
        J = random_structure(rng, args.random, SYMMETRIC)
    else:
        raise InputError("give --gcs FILE or --random N")
    bad = J.defects()
    if bad:
        raise InputError("not a generalized complex structure: " + ", ".join(bad))
    nf = bfield_decompose(J)
    data = {"structure": J.to_json(), "decomposition": nf.to_json()}
    text = "\n".join([
        f"dim V = {J.n}, dim Delta = {len(nf.Delta)}, dim N = {len(nf.N)}",
        "B = " + json.dumps([[str(x) for x in r] for r in nf.B]),
    ])
    _emit(data, text, args.format, out)
    return EXIT_PASS


# -- entry point -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="liegcs", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=2_000_000)
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("algebra", parents=[common], help="Weyl basis data (and a real form)")
    a.add_argument("--type")
    a.add_argument("--vogan", help="Vogan diagram JSON file or inline JSON")
    a.set_defaults(func=cmd_algebra)

    v = sub.add_parser("verify", parents=[common], help="verify a triple")
    v.add_argument("--triple", required=True)
    v.add_argument("--check", choices=("admissible", "mainapplic"), default="admissible")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", parents=[common], help="search admissible triples over R0")
    s.add_argument("--type")
    s.add_argument("--vogan")
    s.set_defaults(func=cmd_search)

    e = sub.add_parser("enumerate", parents=[common], help="list sigma-parabolic subsets")
    e.add_argument("--type")
    e.add_argument("--vogan")
    e.add_argument("--positive-only", action="store_true")
    e.set_defaults(func=cmd_enumerate)

    d = sub.add_parser("decompose", parents=[common], help="B-field normal form of a linear structure")
    d.add_argument("--gcs", help="JSON with 'J' (2n x 2n) and optional 'kind'")
    d.add_argument("--random", type=int, metavar="N", help="decompose a seeded random structure on R^N")
    d.set_defaults(func=cmd_decompose)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_PASS
    try:
        return args.func(args, out)
    except (InputError, UnknownType, KeyError, TypeError, ValueError) as exc:
        msg = f"{type(exc).__name__}: {exc}"
        if args.format == "json":
            out.write(json.dumps({"status": "invalid_input", "error": msg}, sort_keys=True) + "\n")
        else:
            out.write(f"invalid input: {msg}\n")
        return EXIT_INVALID


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
