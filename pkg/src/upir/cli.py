"""Command-line interface.

Exit codes: 0 success (a "no" verdict included), 1 input or validation
error, 2 cap or budget exceeded, 3 internal check failure or audit
disagreement.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any

import numpy as np

from . import catalog, criterion, document
from .errors import AxiomError, CapExceeded, DimensionError, InternalCheckFailed, NotAnIdeal, ParseError
from .gfp import Subspace
from .ideals import DEFAULT_MAX_ELEMENTS, DEFAULT_MAX_LATTICE
from .uenv import DEFAULT_MAX_ENV_DIM, EnvAlgebra

REPORT_SCHEMA_VERSION = 1

EXIT_OK, EXIT_INPUT, EXIT_CAP, EXIT_INTERNAL = 0, 1, 2, 3


def _jsonable(obj: Any):
    if isinstance(obj, Subspace):
        return obj.basis.tolist()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _verdict_dict(v) -> dict:
    stats = {k: v for k, v in v.stats.items() if k != "elapsed"}
    for side in ("right", "left"):
        if isinstance(stats.get(side), dict):
            stats[side] = {k: x for k, x in stats[side].items() if k != "elapsed"}
    return {"is_pir": v.is_pir, "method": v.method, "certificate": _jsonable(v.certificate), "stats": stats}


def _caps(args) -> dict:
    return {
        "max_env_dim": args.max_env_dim,
        "max_elements": args.max_elements,
        "max_lattice": args.max_lattice,
    }


def cmd_validate(args) -> tuple[int, dict]:
    L = document.load(args.file, validate=False)
    report = L.validate()
    return (EXIT_OK if report.ok else EXIT_INPUT), {
        "p": L.p,
        "dim": L.dim,
        "ok": report.ok,
        "violations": report.violations,
    }


def cmd_analyze(args) -> tuple[int, dict]:
    L = document.load(args.file)
    gammas = []
    i = 1
    while True:
        g = L.gamma(i)
        gammas.append(g)
        if i > 1 and g == gammas[-2]:
            break
        i += 1
    dn_table = []
    for n in range(1, 2 * L.p * max(L.dim, 1) + 1):
        dn_table.append({"n": n, "dim": L.dn(n, args.max_elements).dim})
    out = {
        "p": L.p,
        "dim": L.dim,
        "abelian": L.is_abelian(),
        "lower_central_series_dims": [g.dim for g in gammas],
        "center": _jsonable(L.center()),
        "derived": _jsonable(L.derived()),
        "frattini": _jsonable(L.frattini()),
        "dn": dn_table,
        "torus": L.is_torus(),
    }
    if L.is_abelian():
        T, N = L.fitting()
        out["fitting"] = {"torus": _jsonable(T), "nil": _jsonable(N)}
    try:
        cyc, gen = L.is_cyclic(args.max_elements)
        nil, ngen = L.is_nilcyclic(args.max_elements)
    except CapExceeded:
        if L.is_abelian():
            raise
        cyc, gen, nil, ngen = False, None, False, None
    out["cyclic"] = {"value": cyc, "generator": _jsonable(gen)}
    out["nilcyclic"] = {"value": nil, "generator": _jsonable(ngen)}
    return EXIT_OK, out


def cmd_env(args) -> tuple[int, dict]:
    L = document.load(args.file)
    A = EnvAlgebra(L, args.max_env_dim)
    ints = A.integrals()
    t = ints.left.basis[0]
    descent = []
    n = 1
    while True:
        w = A.omega_power(n)
        descent.append({"n": n, "dim": w.dim})
        if w.dim == 0 or (n > 1 and w.dim == descent[-2]["dim"]):
            break
        n += 1
    return EXIT_OK, {
        "p": L.p,
        "dim_lie": L.dim,
        "dim_env": A.dim,
        "left_integral": _jsonable(ints.left),
        "right_integral": _jsonable(ints.right),
        "left_integral_element": repr(A.element(t)),
        "epsilon_left_integral": int(t[0]),
        "omega_power_dims": descent,
    }


def cmd_pir(args) -> tuple[int, dict]:
    L = document.load(args.file)
    out: dict[str, Any] = {"p": L.p, "dim": L.dim, "method": args.method}
    code = EXIT_OK
    if args.method in ("structural", "both"):
        out["structural"] = _verdict_dict(criterion.structural_decision(L, args.max_elements))
    if args.method in ("brute", "both"):
        out["brute"] = _verdict_dict(criterion.brute_decision(L, **_caps(args)))
    if args.method == "both":
        agree = out["structural"]["is_pir"] == out["brute"]["is_pir"]
        out["agreement"] = agree
        if not agree:
            code = EXIT_INTERNAL
    return code, out


def cmd_audit(args) -> tuple[int, dict]:
    mode = "sampled" if args.sample is not None else "exhaustive"
    report = criterion.audit(
        args.p,
        args.dim,
        mode,
        sample_size=args.sample or 0,
        seed=args.seed,
        max_candidates=args.max_candidates,
        **_caps(args),
    )
    if args.out and report.disagreements:
        os.makedirs(args.out, exist_ok=True)
        for k, d in enumerate(report.disagreements):
            with open(os.path.join(args.out, f"disagreement_{k:04d}.alg"), "w", encoding="utf-8") as fh:
                json.dump(d["algebra"], fh, indent=2)
                fh.write("\n")
    return (EXIT_OK if report.passed else EXIT_INTERNAL), report.to_dict()


def cmd_catalog(args) -> tuple[int, dict]:
    if args.action == "list":
        return EXIT_OK, {"kinds": list(catalog.KINDS)}
    if not args.kind:
        raise ParseError("catalog emit needs a KIND")
    L = catalog.make(args.kind, args.p, d=args.d, a=args.a, b=args.b)
    return EXIT_OK, {"document": document.to_dict(L)}


def _add_caps(sp):
    sp.add_argument("--max-elements", type=int, default=DEFAULT_MAX_ELEMENTS, help="element scan budget")
    sp.add_argument("--max-lattice", type=int, default=DEFAULT_MAX_LATTICE, help="ideal lattice size cap")
    sp.add_argument("--max-env-dim", type=int, default=DEFAULT_MAX_ENV_DIM, help="cap on dim u(L)")
    sp.add_argument("--json", action="store_true", help="emit a machine-readable report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="upir", description="Restricted Lie algebras and principal-ideal-ring deciders")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("validate", help="check the restricted Lie algebra axioms")
    sp.add_argument("file")
    _add_caps(sp)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("analyze", help="series, center, D_n table, Fitting, torus/cyclic flags")
    sp.add_argument("file")
    _add_caps(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("env", help="enveloping algebra: dimension, integrals, omega-power descent")
    sp.add_argument("file")
    _add_caps(sp)
    sp.set_defaults(func=cmd_env)

    sp = sub.add_parser("pir", help="decide whether u(L) is a principal ideal ring")
    sp.add_argument("file")
    sp.add_argument("--method", choices=("structural", "brute", "both"), default="both")
    _add_caps(sp)
    sp.set_defaults(func=cmd_pir)

    sp = sub.add_parser("audit", help="compare both deciders over enumerated algebras")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--dim", type=int, required=True)
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--exhaustive", action="store_true")
    group.add_argument("--sample", type=int, metavar="N")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-candidates", type=int, default=criterion.DEFAULT_MAX_CANDIDATES)
    sp.add_argument("--out", help="directory for disagreement reproduction files")
    _add_caps(sp)
    sp.set_defaults(func=cmd_audit)

    sp = sub.add_parser("catalog", help="list catalog kinds or emit one as a document")
    sp.add_argument("action", choices=("list", "emit"))
    sp.add_argument("kind", nargs="?")
    sp.add_argument("--p", type=int, default=2)
    sp.add_argument("--d", type=int)
    sp.add_argument("--a", type=int)
    sp.add_argument("--b", type=int)
    sp.add_argument("--json", action="store_true", help="emit a machine-readable report")
    sp.set_defaults(func=cmd_catalog)
    return parser


def _human(command: str, out: dict) -> str:
    if command == "catalog" and "document" in out:
        return json.dumps(out["document"], indent=2)
    if command == "catalog":
        return "\n".join(out["kinds"])
    if command == "pir":
        lines = [f"p={out['p']} dim={out['dim']}"]
        for m in ("structural", "brute"):
            if m in out:
                v = out[m]
                lines.append(f"{m}: {'yes' if v['is_pir'] else 'no'}  certificate={json.dumps(v['certificate'])}")
        if "agreement" in out:
            lines.append("agreement: " + ("yes" if out["agreement"] else "NO"))
        return "\n".join(lines)
    if command == "audit":
        return (
            f"audit p={out['p']} dim={out['dim']} mode={out['mode']}: "
            f"{out['count']} algebras, {out['agreements']} agreements, "
            f"{len(out['disagreements'])} disagreements, {out['pir_count']} PIR"
        )
    return "\n".join(f"{k}: {json.dumps(v)}" for k, v in out.items())


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, out = args.func(args)
    except (ParseError, AxiomError, DimensionError, NotAnIdeal, OSError) as exc:
        code, out = EXIT_INPUT, {"error": type(exc).__name__, "message": str(exc)}
    except CapExceeded as exc:
        code, out = EXIT_CAP, {"error": "CapExceeded", "message": str(exc)}
    except (InternalCheckFailed, AssertionError) as exc:
        code, out = EXIT_INTERNAL, {"error": type(exc).__name__, "message": str(exc)}
    report = {"schema_version": REPORT_SCHEMA_VERSION, "command": argv, "exit_code": code, **out}
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    elif "error" in out:
        print(f"error ({out['error']}): {out['message']}", file=sys.stderr)
    else:
        print(_human(args.command, out))
    return code


if __name__ == "__main__":
    sys.exit(main())
