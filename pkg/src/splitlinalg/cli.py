"""Command-line front end: ``splitlinalg <command> ...``.

Input matrices use the matrix-pair JSON format::

    {"field": "real", "A": [[...]], "B": [[...]]}

(``B`` defaults to ``A^T``; complex entries are ``[re, im]`` pairs).

Exit codes: 0 success, 2 for an infeasible or error verdict (with diagnostic
JSON on stdout), 1 for usage, I/O and parse errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass

import numpy as np

from . import decompositions as dec
from . import pivoted, yaglom
from .jordan_svd import (
    jordan_svd,
    penrose_check,
    pinv,
)
from .errors import LinalgError, RankMismatch
from .matrices import DoubleMatrix, from_json_dict, to_json_dict
from .real_linalg import eigenvalues

EXIT_OK, EXIT_IO, EXIT_VERDICT = 0, 1, 2

METHODS = (
    "ldl", "ldu", "qr-comp", "qr-gs", "qr-hh", "svd-lr", "polar",
    "jsvd", "lup", "lup-restricted", "bkp", "rrqr",
)

DEFAULT_SEED = 1234


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    inputs: list
    tol: float | None = None
    iters: int = 20
    fmt: str = "json"
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.tol is not None and not self.tol > 0:
            raise UsageError("--tol must be positive")
        if self.iters < 1:
            raise UsageError("--iters must be at least 1")


# -- JSON helpers ----------------------------------------------------------

def _round(x):
    """Round every float in a JSON-ready structure to 12 significant digits."""
    if isinstance(x, float):
        return float(f"{x:.12g}") + 0.0 if np.isfinite(x) else str(x)  # + 0.0 drops -0.0
    if isinstance(x, dict):
        return {k: _round(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_round(v) for v in x]
    if isinstance(x, (np.floating, np.integer, np.bool_)):
        return _round(x.item())
    return x


def _is_number(x):
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def _is_row(x):
    # a list of numbers, or a list of [re, im] pairs
    return isinstance(x, list) and bool(x) and (
        all(_is_number(v) for v in x)
        or all(isinstance(v, list) and v and all(_is_number(u) for u in v) for v in x)
    )


def _inline_rows(x, rows):
    if _is_row(x):
        rows.append(json.dumps(x, separators=(", ", ": ")))
        return f"\x00{len(rows) - 1}\x00"
    if isinstance(x, dict):
        return {k: _inline_rows(v, rows) for k, v in x.items()}
    if isinstance(x, list):
        return [_inline_rows(v, rows) for v in x]
    return x


def dumps(obj):
    """Deterministic JSON: rounded, indented, with each matrix row on one line."""
    rows = []
    text = json.dumps(_inline_rows(_round(obj), rows), indent=2)
    return re.sub(r'"\\u0000(\d+)\\u0000"', lambda m: rows[int(m.group(1))], text)


def _complex(z):
    z = complex(z)
    return [z.real, z.imag]


def _matrix(M):
    return to_json_dict(M)


def _blocks(blocks):
    return [[_complex(lam), int(k)] for lam, k in blocks]


def _load(path):
    try:
        if path == "-":
            data = json.load(sys.stdin)
        else:
            with open(path) as fh:
                data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None
    return data


def load_matrix(path):
    data = _load(path)
    if not isinstance(data, dict):
        raise UsageError(f"{path}: expected a matrix-pair object")
    try:
        return from_json_dict(data)
    except LinalgError as exc:
        raise UsageError(f"{path}: {exc}") from None
    except (ValueError, TypeError, KeyError) as exc:
        raise UsageError(f"{path}: malformed matrix pair ({exc})") from None


# -- decompositions --------------------------------------------------------

def _residual(M, R):
    return float((R - M).norm())


def _factorization(method, M, factors, order, **extra):
    """Result record; ``order`` lists the factors whose product is ``M``.

    A name may carry suffixes: ``*`` for the conjugate transpose and ``^-1``
    for the inverse (in that order).
    """
    product = _product(factors, order)
    out = {
        "method": method,
        "factors": {name: _matrix(F) for name, F in factors.items()},
        "reconstruct": list(order),
        "residual": _residual(M, product),
    }
    out.update(extra)
    return out


def _factor(factors, token):
    name, inverse = (token[:-3], True) if token.endswith("^-1") else (token, False)
    name, star = (name[:-1], True) if name.endswith("*") else (name, False)
    F = factors[name]
    if star:
        F = F.H
    if inverse:
        F = DoubleMatrix(np.linalg.inv(F.A), np.linalg.inv(F.B))
    return F


def _product(factors, order):
    out = _factor(factors, order[0])
    for token in order[1:]:
        out = out @ _factor(factors, token)
    return out


def _target(method, M):
    """The double matrix a method factors: ``ldu`` is the real LDU of ``A``, read off ``[A, A]``."""
    if method == "ldu":
        return DoubleMatrix(M.A, M.A.copy())
    return M


def decompose(method, M, cfg):
    M = _target(method, M)
    tol_kw = {} if cfg.tol is None else {"tol": cfg.tol}
    if method == "ldl":
        r = dec.ldl_double(M, **tol_kw)
        return _factorization(method, M, {"L": r.L, "D": r.D}, ["L", "D", "L*"])
    if method == "ldu":
        r = dec.ldl_double(M, **tol_kw)
        L, D, U = r.L.A, r.D.A, r.L.B
        return _factorization(
            method, M, {"L": r.L, "D": r.D, "U": r.L.H}, ["L", "D", "U"],
            components={"L": _matrix_rows(L), "D": _matrix_rows(D), "U": _matrix_rows(U)},
        )
    if method in ("qr-comp", "qr-gs", "qr-hh"):
        if method == "qr-comp":
            r = dec.qr_components(M)
        elif method == "qr-gs":
            r = dec.qr_gram_schmidt(M, **tol_kw)
        else:
            r = dec.qr_householder(M, **tol_kw)
        n = M.shape[0]
        unit = float((r.Q.H @ r.Q - DoubleMatrix.identity(n)).norm())
        return _factorization(method, M, {"Q": r.Q, "R": r.R}, ["Q", "R"], unitarity=unit)
    if method == "svd-lr":
        S = dec.svd_lr(M, cfg.iters)
        return _svd_lr_record(M, S, cfg.iters)
    if method == "polar":
        Un, P = dec.polar(M)
        return _factorization(method, M, {"U": Un, "P": P}, ["U", "P"])
    if method == "jsvd":
        s = jordan_svd(M.complexify())
        return _factorization(
            method, M, {"U": s.U, "middle": s.middle, "V": s.V}, ["U", "middle", "V*"],
            blocks=_blocks(s.blocks),
            unitarity={"U": _unitarity(s.U), "V": _unitarity(s.V)},
        )
    if method == "lup":
        r = pivoted.lup_general(M)
        return _factorization(
            method, M, {"lower": r.lower, "upper": r.upper, "perm": r.perm.as_double()},
            ["lower", "upper", "perm"],
        )
    if method == "lup-restricted":
        r = pivoted.lup_restricted(M)
        if isinstance(r, pivoted.Infeasible):
            return {"method": method, "verdict": "infeasible", "reason": r.reason}
        out = _factorization(
            method, M, {"lower": r.lower, "upper": r.upper, "perm": r.perm.as_double()},
            ["lower", "upper", "perm"],
        )
        out["verdict"] = "feasible"
        return out
    if method == "bkp":
        r = pivoted.bkp_double(M, cfg.tol)
        p = r.perm.as_double()
        return _factorization(
            method, M, {"perm": p, "L": r.L, "D": r.D, "U": r.U},
            ["perm^-1", "L", "D", "U", "perm*^-1"], rank=r.rank,
        )
    if method == "rrqr":
        r = pivoted.rrqr_double(M, cfg.tol)
        return _factorization(
            method, M, {"Q": r.Q, "R": r.R, "perm": r.perm.as_double()}, ["Q", "R", "perm^-1"],
        )
    raise UsageError(f"unknown method {method!r}")


def _unitarity(W):
    return float((W.H @ W - DoubleMatrix.identity(W.shape[0])).norm())


def _matrix_rows(X):
    X = np.asarray(X)
    if np.iscomplexobj(X):
        return [[_complex(v) for v in row] for row in X]
    return X.tolist()


def _svd_lr_record(M, S, iters):
    p, q = np.diag(S.A), np.diag(S.B)
    ref = _sorted_complex(eigenvalues(M.B @ M.A))
    got = _sorted_complex(np.asarray(p, dtype=complex) ** 2)
    return {
        "method": "svd-lr",
        "iters": iters,
        "factors": {"D": _matrix(S)},
        "squared": [_complex(z) for z in got],
        "eigenvalues_BA": [_complex(z) for z in ref],
        "residual": float(np.max(np.abs(got - ref))) if len(ref) else 0.0,
        "components_equal": bool(np.allclose(p, q)),
    }


def _sorted_complex(values):
    return np.array(sorted(np.asarray(values, dtype=complex), key=lambda z: (-abs(z), z.real, z.imag)))


def check_result(result, M, slack=1e-9):
    """Recompose a decomposition record and compare with ``M``.

    Returns ``(ok, residual)``; the allowance is the reported residual plus
    ``slack * max(1, |M|)`` to absorb the 12-digit rounding of the record.
    """
    M = _target(result.get("method"), M)
    allowance = float(result.get("residual", 0.0)) + slack * max(1.0, M.norm())
    if result.get("method") == "svd-lr":
        S = from_json_dict(result["factors"]["D"])
        resid = _svd_lr_record(M, S, result.get("iters", 0))["residual"]
        return resid <= allowance, resid
    if "reconstruct" not in result:
        raise UsageError("result record has nothing to recompose")
    factors = {k: from_json_dict(v) for k, v in result["factors"].items()}
    resid = _residual(M.complexify(), _product(factors, result["reconstruct"]).complexify())
    return resid <= allowance, resid


# -- pinv / yaglom -----------------------------------------------------------

def pinv_record(M):
    X = pinv(M.complexify())
    report = penrose_check(M, X)
    return {
        "pinv": _matrix(X),
        "penrose": report.as_dict(),
        "penrose_residuals": list(report.residuals),
        "all": report.all,
    }


def yaglom_check_record(M):
    verdict = yaglom.classify(M)
    return {
        "invariant": verdict.invariant.as_dict(),
        "covered": verdict.covered,
        "kind": verdict.kind,
        "kinds": list(verdict.kinds),
        "proposed_covers": yaglom.proposed_family_covers(M),
    }


# -- output ----------------------------------------------------------------

def _emit(obj, fmt, text=None):
    if fmt == "text" and text is not None:
        print(text)
    elif fmt == "text":
        print(_as_text(obj))
    else:
        print(dumps(obj))


def _as_text(obj, indent=0):
    pad = " " * indent
    lines = []
    for key, value in obj.items():
        if isinstance(value, dict) and {"A", "B"} <= set(value):
            lines.append(f"{pad}{key}:")
            for comp in ("A", "B"):
                arr = np.array(value[comp], dtype=object if value["field"] == "complex" else float)
                lines.append(f"{pad}  {comp} = {np.array2string(np.asarray(_round(arr.tolist())))}")
        elif isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.append(_as_text(value, indent + 2))
        else:
            lines.append(f"{pad}{key}: {_round(value)}")
    return "\n".join(lines)


# -- parser ----------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="tolerance override (> 0)")
    common.add_argument("--iters", type=int, default=20, help="LR-SVD iterations (default 20)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for verify")
    common.add_argument("--format", choices=("json", "text"), default="json", dest="fmt")

    parser = _Parser(prog="splitlinalg", description="Decompositions of double and double-complex matrices.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("decompose", parents=[common], help="factor a matrix pair")
    p.add_argument("method", choices=METHODS)
    p.add_argument("input", help="matrix-pair JSON file ('-' for stdin)")
    p.add_argument("--check", metavar="RESULT", help="recompose RESULT (a previous output) and compare with input")

    p = sub.add_parser("pinv", parents=[common], help="pseudoinverse with Penrose checks")
    p.add_argument("input")

    p = sub.add_parser("yaglom", parents=[common], help="LFT classification checker")
    ysub = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    yc = ysub.add_parser("check", parents=[common])
    yc.add_argument("input")
    ysub.add_parser("demo", parents=[common])

    sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    return parser


def _config(args):
    inputs = [x for x in (getattr(args, "input", None),) if x]
    command = args.command
    if command == "decompose":
        command = f"decompose {args.method}"
    elif command == "yaglom":
        command = f"yaglom {args.action}"
    return RunConfig(command, inputs, args.tol, args.iters, args.fmt, args.seed)


def _dispatch(args, cfg):
    if args.command == "decompose":
        M = load_matrix(args.input)
        if args.check:
            record = _load(args.check)
            if not isinstance(record, dict):
                raise UsageError(f"{args.check}: expected a result object")
            ok, resid = check_result(record, M)
            _emit({"method": record.get("method"), "check": ok, "residual": resid}, cfg.fmt)
            return EXIT_OK if ok else EXIT_VERDICT
        out = decompose(args.method, M, cfg)
        _emit(out, cfg.fmt)
        return EXIT_VERDICT if out.get("verdict") == "infeasible" else EXIT_OK
    if args.command == "pinv":
        M = load_matrix(args.input)
        try:
            out = pinv_record(M)
        except RankMismatch as exc:
            _emit({"verdict": "rank-mismatch", "ranks": list(exc.ranks), "message": str(exc)}, cfg.fmt)
            return EXIT_VERDICT
        _emit(out, cfg.fmt)
        return EXIT_OK if out["all"] else EXIT_VERDICT
    if args.command == "yaglom":
        if args.action == "demo":
            result = yaglom.demo()
            _emit(result, cfg.fmt, yaglom.format_demo(result))
            return EXIT_OK
        M = load_matrix(args.input)
        if M.shape != (2, 2):
            raise UsageError("yaglom check needs a 2x2 matrix pair")
        _emit(yaglom_check_record(M), cfg.fmt)
        return EXIT_OK
    if args.command == "verify":
        from .verification import format_results, run_all

        results = run_all(seed=cfg.seed)
        passed = all(r.passed for r in results)
        _emit({"seed": cfg.seed, "passed": passed, "criteria": [r.as_dict() for r in results]},
              cfg.fmt, format_results(results))
        return EXIT_OK if passed else EXIT_VERDICT
    raise UsageError(f"unknown command {args.command!r}")


def run(argv=None):
    """Run the CLI and return the exit code (never raises)."""
    try:
        args = build_parser().parse_args(argv)
        cfg = _config(args)
        return _dispatch(args, cfg)
    except UsageError as exc:
        print(f"splitlinalg: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else EXIT_IO
    except LinalgError as exc:
        diag = {"verdict": "error", "error": type(exc).__name__, "message": str(exc)}
        for attr in ("ranks", "minor", "index", "column"):
            if hasattr(exc, attr):
                diag[attr] = getattr(exc, attr)
        print(dumps(diag))
        return EXIT_VERDICT
    except np.linalg.LinAlgError as exc:
        print(dumps({"verdict": "error", "error": "LinAlgError", "message": str(exc)}))
        return EXIT_VERDICT


def main():
    sys.exit(run())
