"""Command-line driver.

    python -m dualshift verify --config campaign.toml [--suite defect]...
    python -m dualshift matrix --op D --u '{"zeros": [[0.5, 0]]}' --n 8 --out out/D
    python -m dualshift subspace --t '{"op": "D", "u": {...}}' --s '{"kind": "gamma_u_h2", ...}' --n 64

Descriptors are JSON (or ``@path`` to a JSON file).  Exit codes: 0 all checks
passed, 1 some check failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Any

import numpy as np

from .blaschke import BlaschkeProduct
from .config import SUITE_NAMES, ConfigError, default_config, load_config
from .dual import (ambient_basis, bilateral_shift, build_D, build_D_star, build_dual_tt, build_hankel,
                   build_Q, build_S_u, build_truncated_toeplitz)
from .equivalence import build_U, build_V, build_W_uv, origin_branch, s_plus_s_star
from .errors import DualShiftError
from .fourier import FourierVector
from .matrix_io import write_matrix
from .model_space import tm_basis
from . import subspaces as SS
from .suites import run

OPS = ("D", "Dstar", "Su", "U", "V", "Vinv", "W", "M", "Q", "A_phi", "D_phi", "Hankel")
LOG_LEVELS = {"quiet": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}


class InputError(ValueError):
    pass


def _setup_logging() -> None:
    level = os.environ.get("MODELSPACE_LOG", "quiet").lower()
    logging.basicConfig(level=LOG_LEVELS.get(level, logging.ERROR), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def _load_json(text: str) -> Any:
    try:
        if text.startswith("@"):
            text = Path(text[1:]).read_text(encoding="utf-8")
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"bad descriptor {text[:60]!r}: {e}") from e


def parse_inner(d: Any) -> BlaschkeProduct:
    if isinstance(d, str):
        d = _load_json(d)
    if not isinstance(d, dict):
        raise InputError(f"inner descriptor must be an object, got {d!r}")
    try:
        return BlaschkeProduct.from_descriptor(d)
    except (TypeError, ValueError, KeyError) as e:
        raise InputError(f"bad inner descriptor {d!r}: {e}") from e


def parse_symbol(d: Any) -> FourierVector:
    """{"<frequency>": [re, im], ...}"""
    if isinstance(d, str):
        d = _load_json(d)
    try:
        return FourierVector.from_dict({int(k): complex(v[0], v[1]) for k, v in d.items()})
    except (AttributeError, TypeError, ValueError, IndexError) as e:
        raise InputError(f"bad symbol descriptor {d!r}: {e}") from e


def _complex(x) -> complex:
    if isinstance(x, (int, float)):
        return complex(x)
    return complex(x[0], x[1])


# -- verify ------------------------------------------------------------------------

def cmd_verify(args) -> int:
    try:
        cfg = load_config(args.config) if args.config else default_config()
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2
    ok = True
    for rep in run(cfg, args.suite or None):
        ok &= rep.passed
        print(json.dumps(rep.to_dict(timing=not args.no_timing)), flush=True)
    return 0 if ok else 1


# -- matrix ------------------------------------------------------------------------

def build_operator(op: str, u: BlaschkeProduct, n: int, v=None, phi=None):
    if op == "M":
        return bilateral_shift(n)
    if op == "Q":
        return build_Q(n)
    if op == "Hankel":
        return build_hankel(_need(phi, "--phi"), n)
    if op in ("Su", "A_phi"):
        model = tm_basis(u)
        return build_S_u(u, model) if op == "Su" else build_truncated_toeplitz(u, _need(phi, "--phi"), model)
    if op == "W":
        return build_W_uv(u, _need(v, "--v"), n).matrix
    basis = ambient_basis(u, n)
    if op == "D":
        return build_D(basis)
    if op == "Dstar":
        return build_D_star(basis)
    if op == "U":
        return build_U(basis)
    if op == "D_phi":
        return build_dual_tt(u, _need(phi, "--phi"), basis)
    if op in ("V", "Vinv"):
        cert = build_V(basis)
        return cert.matrix if op == "V" else cert.inverse
    raise InputError(f"unknown operator {op}")


def _need(x, flag):
    if x is None:
        raise InputError(f"this operator needs {flag}")
    return x


def cmd_matrix(args) -> int:
    u = parse_inner(args.u)
    v = parse_inner(args.v) if args.v else None
    phi = parse_symbol(args.phi) if args.phi else None
    op = build_operator(args.op, u, args.n, v, phi)
    meta = {"op": args.op, "u": u, "N": args.n}
    if v is not None:
        meta["v"] = v
    if phi is not None:
        meta["phi"] = {str(k): complex(phi.coeff(k)) for k in phi.frequencies if phi.coeff(k) != 0}
    csv_path, json_path = write_matrix(op, args.out, meta)
    print(json.dumps({"csv": str(csv_path), "json": str(json_path), "shape": list(op.shape)}))
    return 0


# -- subspace ------------------------------------------------------------------------

def build_subspace(desc: dict, basis, n: int) -> tuple[SS.SubspaceBasis, dict]:
    kind = desc.get("kind")
    extra: dict[str, Any] = {}
    u = basis.u if basis is not None else None
    if kind == "gamma_u_h2":
        s = SS.subspace_gamma_uH2(parse_inner(desc.get("gamma", {})), basis)
    elif kind == "u_h2":
        s = SS.u_chain(basis)
    elif kind == "h2_0_bar":
        s = SS.zbar_chain(basis)
    elif kind == "zbar_conj_k":
        s = SS.subspace_zbar_conj_K(parse_inner(desc["alpha"]), basis)
    elif kind == "direct_sum":
        parts = [build_subspace(p, basis, n)[0] for p in desc["parts"]]
        s = SS.direct_sum(*parts)
    elif kind == "pullback":
        w = desc["w"]
        s = SS.pullback_V_inv(u, SS.QuotientInner(parse_inner(w.get("alpha", {})),
                                                  parse_inner(w.get("beta", {}))), basis)
    elif kind == "char_fn":
        s = SS.pullback_V_inv(u, SS.CharFn(SS.ArcUnion(tuple(map(tuple, desc["arcs"])))), basis)
    elif kind == "proper_containment":
        lam = _complex(desc.get("lambda", 0.5))
        out = SS.example_6_3_proper_containment(lam, n)
        s = out["S1"]
        extra = {"distance": out["distance"], "containment": out["report"].residual}
    elif kind == "cyclic":
        seed = desc.get("seed", {"kernel": 0.5})
        if "kernel" in seed:
            k = SS.kernel_coords(_complex(seed["kernel"]), n)
            vec = np.concatenate([k, k])
        else:
            vec = np.array([_complex(x) for x in seed["coords"]])
        s = SS.cyclic_subspace(s_plus_s_star(n), vec, n_max=4 * n)
    else:
        raise InputError(f"unknown subspace kind {kind!r}")
    return s, extra


def cmd_subspace(args) -> int:
    t_desc = _load_json(args.t)
    s_desc = _load_json(args.s)
    if not isinstance(t_desc, dict) or not isinstance(s_desc, dict):
        raise InputError("descriptors must be JSON objects")
    n = args.n
    op = t_desc.get("op", "D")
    out: dict[str, Any] = {"T": op, "subspace": s_desc.get("kind"), "N": n}
    if s_desc.get("kind") == "proper_containment":
        lam = _complex(s_desc.get("lambda", 0.5))
        t_desc = {"op": "D", "u": BlaschkeProduct.mobius(lam).descriptor()}
    if op == "S_plus_Sstar":
        T, basis = s_plus_s_star(n), None
    elif op == "D":
        u = parse_inner(t_desc.get("u", s_desc.get("u", {})))
        basis = ambient_basis(u, n)
        T = build_D(basis)
        out["u"] = u.descriptor()
    else:
        raise InputError(f"unsupported operator {op!r} (use D or S_plus_Sstar)")
    s, extra = build_subspace(s_desc, basis, n)
    out.update(extra)
    out["dim"] = s.dim
    approximate = bool(s.construction.get("approximate"))
    margin = s.construction.get("edge_margin", 0)
    tol = SS.CHARFN_TOL if approximate else SS.INVARIANCE_TOL
    res = SS.invariance_residual(T, s, edge_margin=margin)
    out.update({"invariance_residual": res, "tolerance": tol, "approximate": approximate,
                "pass": res <= tol})
    if basis is not None and not approximate and res <= SS.INVARIANCE_TOL:
        out["classification"] = SS.classify_orthogonal_sum(s, basis, T).to_dict()
        try:
            pm = SS.classify_pminus_image(s, basis)
            out["pminus"] = {"kind": pm.kind, "dimension": pm.dimension}
        except DualShiftError as e:
            out["pminus"] = {"error": str(e)}
    if "distance" in extra:
        out["pass"] = out["pass"] and extra["distance"] > 0.01
    print(json.dumps(out, sort_keys=True))
    return 0 if out["pass"] else 1


# -- entry point --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dualshift", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites, one JSON report per line")
    v.add_argument("--config", help="TOML campaign file (default: built-in campaign)")
    v.add_argument("--suite", action="append", choices=SUITE_NAMES,
                   help="suite to run (repeatable; default: the config's list)")
    v.add_argument("--no-timing", action="store_true", help="omit runtime_ms for byte-stable output")
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("matrix", help="dump an operator matrix as CSV + JSON sidecar")
    m.add_argument("--op", required=True, choices=OPS)
    m.add_argument("--u", default='{"zeros": [[0, 0]]}', help="inner function descriptor (JSON)")
    m.add_argument("--v", help="second inner function, for W")
    m.add_argument("--phi", help='symbol, e.g. {"1": [1, 0], "-1": [1, 0]}')
    m.add_argument("--n", type=int, default=64)
    m.add_argument("--out", required=True, help="output path prefix")
    m.set_defaults(func=cmd_matrix)

    s = sub.add_parser("subspace", help="check invariance and classify a subspace")
    s.add_argument("--t", required=True, help='operator descriptor, e.g. {"op": "D", "u": {...}}')
    s.add_argument("--s", required=True, help="subspace descriptor (JSON)")
    s.add_argument("--n", type=int, default=64)
    s.set_defaults(func=cmd_subspace)
    return p


def main(argv: list[str] | None = None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    if getattr(args, "n", 2) < 2:
        print("error: --n must be >= 2", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (InputError, DualShiftError, ValueError, KeyError, TypeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        # Reader closed early (e.g. piped into head); silence the flush at exit.
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0


if __name__ == "__main__":
    sys.exit(main())
