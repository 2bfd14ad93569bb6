"""``parastat`` command line: tensor and tableau I/O, checks, generators, verification.

Every command prints one JSON document on stdout; diagnostics go to stderr.
Exit codes: 0 success, 1 verification failure, 2 usage/parse error,
3 numerical failure, 4 domain precondition failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import generators as gen
from . import tensor_core as tc
from . import young
from .analysis import (
    RankOptions,
    SymmetryError,
    ZeroTensorError,
    check_simple,
    check_simple_alpha,
    slot_ranks,
)
from .measures import convex_roof_upper
from .states_segre import (
    DensityError,
    DependentFactorsError,
    segre_tensor_alpha,
)
from .verify import SUITES, VerifyConfig, run_all

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_NUMERIC, EXIT_DOMAIN = 0, 1, 2, 3, 4
DEFAULT_TOL = 1e-9


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


# -- file formats -----------------------------------------------------------


def _load_json(source: str):
    try:
        text = sys.stdin.read() if source == "-" else Path(source).read_text()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read {source}: {exc}", EXIT_USAGE) from exc


def tensor_from_json(doc) -> np.ndarray:
    try:
        n, k = int(doc["dim"]), int(doc["order"])
        re = np.asarray(doc["re"], dtype=float)
        im = np.asarray(doc.get("im", [0.0] * len(doc["re"])), dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError(f"malformed tensor file: {exc}", EXIT_USAGE) from exc
    if n < 1 or k < 0 or re.ndim != 1 or re.shape != im.shape or re.size != n**k:
        raise CliError(f"tensor file needs {n}**{k} real and imaginary parts", EXIT_USAGE)
    if not (np.all(np.isfinite(re)) and np.all(np.isfinite(im))):
        raise CliError("tensor has non-finite coefficients", EXIT_NUMERIC)
    return (re + 1j * im).reshape((n,) * k)


def tensor_to_json(u: np.ndarray) -> dict:
    flat = np.asarray(u, dtype=np.complex128).reshape(-1)
    return {
        "dim": int(u.shape[0]) if u.ndim else 1,
        "order": int(u.ndim),
        "re": [float(x) for x in flat.real],
        "im": [float(x) for x in flat.imag],
    }


def read_tensor(path: str) -> np.ndarray:
    return tensor_from_json(_load_json(path))


def write_tensor(path: str, u: np.ndarray) -> None:
    Path(path).write_text(json.dumps(tensor_to_json(u)))


def tableau_from_json(doc) -> young.YoungTableau:
    try:
        return young.YoungTableau.from_rows(doc["rows"])
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError(f"malformed tableau: {exc}", EXIT_USAGE) from exc


def read_tableau(source: str) -> young.YoungTableau:
    # Accept a path or an inline JSON document.
    text = source.strip()
    doc = json.loads(text) if text.startswith("{") else _load_json(source)
    return tableau_from_json(doc)


def matrix_from_json(doc) -> np.ndarray:
    try:
        dim = int(doc["dim"])
        re = np.asarray(doc["re"], dtype=float)
        im = np.asarray(doc.get("im", np.zeros_like(re)), dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError(f"malformed matrix file: {exc}", EXIT_USAGE) from exc
    if re.size != dim * dim or im.shape != re.shape:
        raise CliError(f"matrix file needs {dim}*{dim} entries", EXIT_USAGE)
    if not (np.all(np.isfinite(re)) and np.all(np.isfinite(im))):
        raise CliError("matrix has non-finite entries", EXIT_NUMERIC)
    return (re + 1j * im).reshape(dim, dim)


def factors_from_json(source: str) -> list[np.ndarray]:
    """``{"re": [[...], ...], "im": [[...], ...]}`` or a plain list of real vectors."""
    text = source.strip()
    doc = json.loads(text) if text[:1] in "[{" else _load_json(source)
    try:
        if isinstance(doc, list):
            return [np.asarray(v, dtype=float).astype(np.complex128) for v in doc]
        re = doc["re"]
        im = doc.get("im", [[0.0] * len(v) for v in re])
        return [np.asarray(a, dtype=float) + 1j * np.asarray(b, dtype=float) for a, b in zip(re, im)]
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError(f"malformed factor list: {exc}", EXIT_USAGE) from exc


def _tolerance(args) -> RankOptions:
    tol = args.tol
    if tol is None:
        tol = float(os.environ.get("PARASTAT_TOL", DEFAULT_TOL))
    try:
        return RankOptions(tol)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc


# -- commands ---------------------------------------------------------------


def cmd_srank(args) -> dict:
    u = read_tensor(args.input)
    per_slot = slot_ranks(u, _tolerance(args))
    return {"s_rank": max(per_slot), "per_slot": list(per_slot)}


def cmd_check(args) -> dict:
    u = read_tensor(args.input)
    opts = _tolerance(args)
    if args.stats == "alpha":
        if not args.tableau:
            raise CliError("--stats alpha requires --tableau", EXIT_USAGE)
        return check_simple_alpha(u, read_tableau(args.tableau), opts).to_dict()
    return check_simple(u, args.stats, opts).to_dict()


def cmd_segre(args) -> dict:
    xs = factors_from_json(args.factors)
    opts = _tolerance(args)
    if args.stats == "bose":
        if len(xs) != 1 or args.k is None:
            raise CliError("bose needs exactly one factor and --k", EXIT_USAGE)
        v = tc.product_of(xs * args.k)
        report = check_simple(v, "bose", opts)
    elif args.stats == "fermi":
        alpha = young.column_tableau(len(xs))
        v = segre_tensor_alpha(alpha, xs)
        report = check_simple(v, "fermi", opts)
    elif args.stats == "alpha":
        if not args.tableau:
            raise CliError("--stats alpha requires --tableau", EXIT_USAGE)
        alpha = read_tableau(args.tableau)
        if len(xs) != alpha.num_rows:
            raise CliError(f"tableau has {alpha.num_rows} rows, got {len(xs)} factors", EXIT_USAGE)
        v = segre_tensor_alpha(alpha, xs)
        report = check_simple_alpha(v, alpha, opts)
    else:
        v = tc.product_of(xs)
        report = check_simple(v, "dist", opts)
    if args.output:
        write_tensor(args.output, v)
    return {"tensor": tensor_to_json(v), "norm": tc.norm(v), "report": report.to_dict()}


def cmd_dims(args) -> dict:
    if args.n < 1 or not 1 <= args.k <= young.MAX_K:
        raise CliError(f"need n >= 1 and 1 <= k <= {young.MAX_K}", EXIT_USAGE)
    rows, total = [], 0
    for lam in young.enumerate_partitions(args.k):
        f, d = young.count_standard_tableaux(lam), young.gl_dim(lam, args.n)
        total += f * d
        rows.append({"partition": list(lam), "f": f, "gl_dim": d, "mu": young.mu(lam)})
    return {"n": args.n, "k": args.k, "rows": rows, "sum": total,
            "expected": args.n**args.k, "schur_weyl_ok": total == args.n**args.k}


def cmd_decompose(args) -> dict:
    u = read_tensor(args.input)
    if not 1 <= u.ndim <= 5:
        raise CliError("decompose supports orders 1..5", EXIT_USAGE)
    parts, acc = [], np.zeros_like(u)
    for lam in young.enumerate_partitions(u.ndim):
        piece = young.central_projector(lam, u)
        acc += piece
        parts.append({"partition": list(lam), "norm_sq": tc.norm(piece) ** 2})
    return {"parts": parts, "total_norm_sq": tc.norm(u) ** 2, "residual": tc.norm(acc - u)}


def cmd_roof(args) -> dict:
    doc = _load_json(args.input)
    rho = matrix_from_json(doc)
    n = args.n or doc.get("n")
    if not n:
        raise CliError("ambient one-particle dimension needed (--n or \"n\" in the file)", EXIT_USAGE)
    stats = args.stats or doc.get("stats", "dist")
    if stats not in ("dist", "bose", "fermi"):
        raise CliError(f"roof supports dist, bose, fermi; got {stats}", EXIT_USAGE)
    est = convex_roof_upper(rho, stats, int(n), restarts=args.restarts, steps=args.steps,
                            seed=args.seed, components=args.components)
    return est.to_dict()


def cmd_verify(args) -> tuple[dict, int]:
    if args.trials == 0:
        print("warning: --trials 0 runs randomized suites vacuously", file=sys.stderr)
    cfg = VerifyConfig(trials=args.trials, kmax=args.kmax, nmax=args.nmax, opts=_tolerance(args))
    only = args.suite or None
    if only:
        unknown = set(only) - {name for name, _, _ in SUITES}
        if unknown:
            raise CliError(f"unknown suites: {sorted(unknown)}", EXIT_USAGE)
    results = run_all(args.seed, cfg, only)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} {r.name} ({r.checks} checks, {r.failures} failures) {r.detail}".rstrip(),
              file=sys.stderr)
    ok = all(r.passed for r in results)
    return {"passed": ok, "seed": args.seed, "suites": [r.to_dict() for r in results]}, (
        EXIT_OK if ok else EXIT_VERIFY
    )


def cmd_gen(args) -> dict:
    rng = np.random.default_rng(args.seed)
    n, k = args.n, args.k
    if n < 1 or k < 1 or n**k > 4096:
        raise CliError("need n, k >= 1 and n**k <= 4096", EXIT_USAGE)
    what = args.what
    if what in ("ghz", "w"):
        if n < 2:
            raise CliError(f"{what} needs n >= 2", EXIT_USAGE)
        u = gen.ghz(n, k) if what == "ghz" else gen.w_state(n, k)
    elif what == "product":
        u = gen.random_simple(rng, "dist", n, k)
    elif what == "bose":
        u = gen.random_simple(rng, "bose", n, k)
    elif what == "fermi":
        if k > n:
            raise CliError("fermi needs k <= n", EXIT_USAGE)
        u = gen.random_simple(rng, "fermi", n, k)
    elif what == "alpha":
        if not args.tableau:
            raise CliError("--what alpha requires --tableau", EXIT_USAGE)
        alpha = read_tableau(args.tableau)
        u = gen.random_alpha(rng, alpha, n)
    else:
        u = gen.random_tensor(rng, n, k)
    if args.output:
        write_tensor(args.output, u)
    return tensor_to_json(u)


# -- entry point ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="parastat", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def tol(sp):
        sp.add_argument("--tol", type=float, default=None,
                        help="relative singular-value cutoff (default $PARASTAT_TOL or 1e-9)")

    sp = sub.add_parser("srank", help="S-rank of a tensor file")
    sp.add_argument("input")
    tol(sp)
    sp.set_defaults(func=cmd_srank)

    sp = sub.add_parser("check", help="simplicity certificate")
    sp.add_argument("input")
    sp.add_argument("--stats", choices=["dist", "bose", "fermi", "alpha"], default="dist")
    sp.add_argument("--tableau", help="tableau file or inline JSON, e.g. '{\"rows\": [[1,2],[3]]}'")
    tol(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("segre", help="simple tensor from Segre factors")
    sp.add_argument("factors", help="factor vectors: file or inline JSON")
    sp.add_argument("--stats", choices=["dist", "bose", "fermi", "alpha"], default="dist")
    sp.add_argument("--tableau")
    sp.add_argument("--k", type=int, help="number of bosons")
    sp.add_argument("-o", "--output")
    tol(sp)
    sp.set_defaults(func=cmd_segre)

    sp = sub.add_parser("dims", help="irrep dimensions and multiplicities")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.set_defaults(func=cmd_dims)

    sp = sub.add_parser("decompose", help="isotypic decomposition of a tensor")
    sp.add_argument("input")
    tol(sp)
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("roof", help="convex-roof upper bound for a density matrix")
    sp.add_argument("input")
    sp.add_argument("--n", type=int)
    sp.add_argument("--stats", choices=["dist", "bose", "fermi"])
    sp.add_argument("--restarts", type=int, default=200)
    sp.add_argument("--steps", type=int, default=100)
    sp.add_argument("--components", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_roof)

    sp = sub.add_parser("verify", help="run the randomized verification suites")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--kmax", type=int, default=4)
    sp.add_argument("--nmax", type=int, default=4)
    sp.add_argument("--suite", action="append", help="run only this suite (repeatable)")
    tol(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("gen", help="write a named or random tensor")
    sp.add_argument("--what", choices=["ghz", "w", "product", "bose", "fermi", "alpha", "random"],
                    required=True)
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--k", type=int, default=3)
    sp.add_argument("--tableau")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_gen)
    return p


def _emit(doc) -> None:
    print(json.dumps(doc, allow_nan=False))


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "kmax", 4) > 4 or getattr(args, "nmax", 4) > 4:
        print("warning: kmax/nmax above 4 may be slow", file=sys.stderr)
    try:
        out = args.func(args)
    except CliError as exc:
        code, msg = exc.code, str(exc)
    except ZeroTensorError as exc:
        code, msg = EXIT_NUMERIC, str(exc)
    except SymmetryError:
        code, msg = EXIT_DOMAIN, "not in symmetry class"
    except (DependentFactorsError, DensityError) as exc:
        code, msg = EXIT_DOMAIN, str(exc)
    except (tc.ShapeError, ValueError) as exc:
        code, msg = EXIT_USAGE, str(exc)
    else:
        code = EXIT_OK
        if isinstance(out, tuple):
            out, code = out
        _emit(out)
        return code
    print(f"parastat: {msg}", file=sys.stderr)
    _emit({"error": msg})
    return code


if __name__ == "__main__":
    sys.exit(main())
