"""Command-line interface.

Exit codes: 0 success, 2 usage or parse error, 3 domain error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Sequence

import numpy as np

from . import __version__
from .bipartite import (
    OverlapState,
    canonical_matrix,
    concurrence_closed_form,
    concurrence_oracle,
    entanglement_entropy,
    entropy_from_concurrence,
    normalization_constant,
)
from .classification import DEFAULT_TOL, is_mes, principal_angle
from .coherent import (
    CoherentPairState,
    antisymmetric_mes,
    as_overlap_state,
    coherent_overlap,
    overlap_underflows,
    quarter_phase_family,
    quartet,
    same_phase_family,
)
from .errors import EntlabError, LinearlyDependent
from .fock import (
    LIMIT_TARGET,
    MAX_MODULUS,
    fock_coefficients,
    limit_convergence_scan,
    numeric_concurrence,
    truncation_cutoff,
)

SCHEMA_VERSION = "1"
MAX_GRID = 10**6
EXIT_USAGE = 2
EXIT_DOMAIN = 3


class UsageError(Exception):
    pass


# -- argument parsing ------------------------------------------------------

def parse_complex(text: str) -> complex:
    """Parse ``"RE,IM"`` (a bare ``"RE"`` means zero imaginary part)."""
    parts = text.split(",")
    if len(parts) > 2 or not all(p.strip() for p in parts):
        raise argparse.ArgumentTypeError(f"expected RE,IM but got {text!r}")
    try:
        values = [float(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected RE,IM but got {text!r}") from None
    if not all(math.isfinite(v) for v in values):
        raise argparse.ArgumentTypeError(f"non-finite value in {text!r}")
    return complex(values[0], values[1] if len(values) == 2 else 0.0)


def render_complex(z: complex) -> str:
    return f"{fmt_float(z.real)},{fmt_float(z.imag)}"


def parse_range(text: str) -> tuple[float, float]:
    z = parse_complex(text)
    return z.real, z.imag


def parse_sign(text: str) -> int:
    table = {"+": 1, "+1": 1, "1": 1, "-": -1, "-1": -1}
    if text not in table:
        raise argparse.ArgumentTypeError(f"sign must be + or -, got {text!r}")
    return table[text]


def fmt_float(x: float) -> str:
    """Shortest round-trip decimal."""
    return repr(float(x))


def default_tol() -> float:
    raw = os.environ.get("ENTLAB_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise UsageError(f"ENTLAB_TOL is not a number: {raw!r}") from None
    if not tol > 0:
        raise UsageError("ENTLAB_TOL must be positive")
    return tol


# -- output ----------------------------------------------------------------

def _jsonable(x: Any) -> Any:
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def envelope(command: str, inputs: dict, outputs: dict, warnings: list[str]) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": _jsonable(inputs),
        "outputs": _jsonable(outputs),
        "warnings": list(warnings),
    }
    return json.dumps(doc, ensure_ascii=False, allow_nan=False)


def _text_value(v: Any) -> str:
    if isinstance(v, complex):
        return render_complex(v)
    if isinstance(v, float):
        return fmt_float(v)
    if isinstance(v, (list, tuple)):
        return " ".join(_text_value(x) for x in v) or "-"
    if v is None:
        return "-"
    return str(v)


def emit(args, inputs: dict, outputs: dict, warnings: list[str]) -> None:
    if args.json:
        print(envelope(args.command, inputs, outputs, warnings))
        return
    width = max(len(k) for k in outputs)
    for k, v in outputs.items():
        print(f"{k:<{width}}  {_text_value(v)}")
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)


def write_table(header: Sequence[str], rows: Sequence[Sequence[Any]], as_csv: bool) -> str:
    cells = [[_cell(v) for v in row] for row in rows]
    buf = io.StringIO()
    if as_csv:
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(cells)
    else:
        widths = [max([len(h)] + [len(r[i]) for r in cells]) for i, h in enumerate(header)]
        buf.write("  ".join(h.rjust(n) for h, n in zip(header, widths)) + "\n")
        for r in cells:
            buf.write("  ".join(c.rjust(n) for c, n in zip(r, widths)) + "\n")
    return buf.getvalue()


def _cell(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return fmt_float(v)
    return str(v)


def _map(fn: Callable, items: Sequence, workers: int) -> list:
    """Order-preserving map; results do not depend on ``workers``."""
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))


# -- commands --------------------------------------------------------------

def _overlap_state(args) -> OverlapState:
    return OverlapState(args.mu, args.nu, args.p, args.q)


def _state_inputs(args) -> dict:
    return {"mu": args.mu, "nu": args.nu, "p": args.p, "q": args.q}


def _entropy(s: OverlapState, c: float) -> float:
    try:
        return entanglement_entropy(canonical_matrix(s))
    except LinearlyDependent:
        return entropy_from_concurrence(c)


def cmd_concurrence(args) -> int:
    s = _overlap_state(args)
    c = concurrence_closed_form(s)
    outputs = {
        "concurrence": c,
        "normalization": normalization_constant(s),
        "entropy": _entropy(s, c),
    }
    emit(args, _state_inputs(args), outputs, [])
    return 0


def cmd_classify(args) -> int:
    s = _overlap_state(args)
    tol = args.tol if args.tol is not None else default_tol()
    rep = is_mes(s, tol)
    outputs = {
        "verdict": rep.verdict.value,
        "theta": rep.params.theta if rep.params else None,
        "residual": rep.residual,
        "concurrence": rep.concurrence,
        "reason": rep.reason.value if rep.reason else None,
    }
    inputs = _state_inputs(args) | {"tol": tol}
    emit(args, inputs, outputs, [])
    return 0


def _build_family(args) -> tuple[CoherentPairState, dict]:
    fam = args.family
    if fam == "antisym":
        _require(args, "alpha", "beta")
        return antisymmetric_mes(args.alpha, args.beta), {"alpha": args.alpha, "beta": args.beta}
    if fam == "same-phase":
        _require(args, "alpha", "beta", "lambda_prime")
        st = same_phase_family(args.alpha, args.beta, args.lambda_prime, args.sign)
        return st, {"alpha": args.alpha, "beta": args.beta, "lambda": args.lambda_prime, "sign": args.sign}
    if fam == "quarter-phase":
        _require(args, "alpha", "beta", "gamma_mod", "delta_mod")
        st = quarter_phase_family(args.alpha, args.beta, args.gamma_mod, args.delta_mod, args.sign)
        inputs = {"alpha": args.alpha, "beta": args.beta, "gamma_mod": args.gamma_mod,
                  "delta_mod": args.delta_mod, "sign": args.sign}
        return st, inputs
    _require(args, "alpha", "which")
    return quartet(args.alpha, args.which), {"alpha": args.alpha, "which": args.which}


def _require(args, *names: str) -> None:
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        flags = ", ".join("--" + n.replace("_prime", "").replace("_", "-") for n in missing)
        raise UsageError(f"construct {args.family} needs {flags}")


def cmd_construct(args) -> int:
    st, inputs = _build_family(args)
    ov = as_overlap_state(st)
    tol = args.tol if args.tol is not None else default_tol()
    rep = is_mes(ov, tol)
    warnings = [f"note: {n}" for n in st.notes]
    if overlap_underflows(st.alpha, st.gamma) or overlap_underflows(st.beta, st.delta):
        warnings.append("overlap underflowed to zero")
    outputs: dict[str, Any] = {
        "mu": st.mu, "nu": st.nu,
        "alpha": st.alpha, "beta": st.beta, "gamma": st.gamma, "delta": st.delta,
        "theta": rep.params.theta if rep.params else None,
        "verdict": rep.verdict.value,
        "concurrence": rep.concurrence,
        "normalization": normalization_constant(ov),
    }
    try:
        cutoff = args.cutoff if args.cutoff is not None else truncation_cutoff(st.labels)
        t = fock_coefficients(st, cutoff)
        outputs |= {"concurrence_fock": numeric_concurrence(t), "cutoff": t.cutoff,
                    "captured_norm": t.captured_norm}
    except EntlabError as exc:
        warnings.append(f"fock check skipped: {exc}")
        outputs |= {"concurrence_fock": None, "cutoff": None, "captured_norm": None}
    inputs |= {"family": args.family, "tol": tol}
    emit(args, inputs, outputs, warnings)
    return 0


def _limit_family(text: str):
    if text in ("1", "2", "3", "4"):
        return int(text)
    if text in LIMIT_TARGET:
        return text
    raise argparse.ArgumentTypeError(
        f"--which must be 1..4, cat_antisymmetric or cat_triple, got {text!r}")


def limit_scan_rows(which, alpha_start: float, alpha_end: float, steps: int,
                    target: int | None = None, cutoff: int | None = None, workers: int = 1):
    alphas = [float(a) for a in np.geomspace(alpha_start, alpha_end, steps)]
    return _map(lambda a: limit_convergence_scan(which, [a], target, cutoff)[0], alphas, workers)


def cmd_limit_scan(args) -> int:
    if not (0 < args.alpha_end < args.alpha_start <= MAX_MODULUS):
        raise UsageError(f"need 0 < alpha-end < alpha-start <= {MAX_MODULUS:g}")
    if args.steps < 2:
        raise UsageError("steps must be >= 2")
    rows = limit_scan_rows(args.which, args.alpha_start, args.alpha_end, args.steps,
                           args.target, args.cutoff, args.workers)
    header = ("alpha", "infidelity", "concurrence", "captured_norm")
    table = [(r.alpha, r.infidelity, r.concurrence, r.captured_norm) for r in rows]
    sys.stdout.write(write_table(header, table, args.csv))
    return 0


def sweep_points(vary: str, x_range, y_range, nx: int, ny: int) -> list[tuple[float, float]]:
    xs = np.linspace(x_range[0], x_range[1], nx)
    ys = np.linspace(y_range[0], y_range[1], ny)
    pts = [(float(x), float(y)) for x in xs for y in ys]
    if vary in ("p", "q"):
        # only the closed unit disk holds valid overlaps
        pts = [(x, y) for x, y in pts if math.hypot(x, y) <= 1.0]
    return pts


def sweep_rows(mu: complex, nu: complex, p: complex, q: complex, vary: str,
               x_range, y_range, nx: int, ny: int, tol: float, workers: int = 1):
    if nx < 1 or ny < 1:
        raise UsageError("grid dimensions must be >= 1")
    if nx * ny > MAX_GRID:
        raise UsageError(f"grid of {nx * ny} points exceeds {MAX_GRID}")
    pts = sweep_points(vary, x_range, y_range, nx, ny)

    def point(xy):
        x, y = xy
        m, n, pp, qq = mu, nu, p, q
        if vary == "p":
            pp = complex(x, y)
        elif vary == "q":
            qq = complex(x, y)
        else:
            # x = relative phase theta, y = modulus ratio k
            m = y * nu * complex(math.cos(x), math.sin(x))
        try:
            rep = is_mes(OverlapState(m, n, pp, qq), tol)
        except EntlabError:
            return (x, y, math.nan, False)
        return (x, y, rep.concurrence, rep.verdict.is_mes)

    return _map(point, pts, workers)


def cmd_sweep(args) -> int:
    tol = args.tol if args.tol is not None else default_tol()
    if args.vary == "theta":
        xr = args.x_range or (-math.pi, math.pi)
        yr = args.y_range or (0.5, 2.0)
        if yr[0] < 0 or yr[1] < 0:
            raise UsageError("modulus ratio range must be non-negative")
    else:
        xr = args.x_range or (-1.0, 1.0)
        yr = args.y_range or (-1.0, 1.0)
    rows = sweep_rows(args.mu, args.nu, args.p, args.q, args.vary, xr, yr,
                      args.nx, args.ny, tol, args.workers)
    bad = sum(1 for r in rows if math.isnan(r[2]))
    if bad:
        print(f"warning: {bad} degenerate grid points reported as nan", file=sys.stderr)
    header = ("param1", "param2", "concurrence", "is_mes")
    sys.stdout.write(write_table(header, rows, args.csv))
    return 0


def cmd_overlap(args) -> int:
    z = coherent_overlap(args.a, args.g)
    warnings = ["overlap underflowed to zero"] if overlap_underflows(args.a, args.g) else []
    outputs = {"overlap": z, "modulus": abs(z), "phase": principal_angle(math.atan2(z.imag, z.real))}
    emit(args, {"a": args.a, "g": args.g}, outputs, warnings)
    return 0


def selftest_max_error(seed: int, samples: int) -> float:
    """Largest gap between the closed form and the SVD route on random states."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        mu, nu = (rng.uniform(0, 10) * np.exp(2j * np.pi * rng.uniform()) for _ in range(2))
        p, q = (rng.uniform(0, 0.99) * np.exp(2j * np.pi * rng.uniform()) for _ in range(2))
        s = OverlapState(mu, nu, p, q)
        worst = max(worst, abs(concurrence_closed_form(s) - concurrence_oracle(canonical_matrix(s))))
    return worst


def cmd_selftest(args) -> int:
    worst = selftest_max_error(args.seed, args.samples)
    ok = worst < 1e-12
    outputs = {"samples": args.samples, "max_abs_error": worst, "passed": ok}
    emit(args, {"seed": args.seed, "samples": args.samples}, outputs, [])
    return 0 if ok else EXIT_DOMAIN


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable JSON report")
    common.add_argument("--tol", type=float, default=None,
                        help="classification tolerance (default: $ENTLAB_TOL or 1e-9)")
    common.add_argument("--cutoff", type=int, default=None, help="override Fock truncation")

    state = argparse.ArgumentParser(add_help=False)
    for name, default in (("mu", None), ("nu", None), ("p", None), ("q", None)):
        state.add_argument(f"--{name}", type=parse_complex, required=default is None,
                           metavar="RE,IM")

    parser = argparse.ArgumentParser(prog="entlab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("concurrence", parents=[common, state], help="concurrence of a two-branch state")
    p.set_defaults(func=cmd_concurrence)

    p = sub.add_parser("classify", parents=[common, state], help="maximal-entanglement verdict")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("construct", parents=[common], help="build a maximally entangled coherent state")
    p.add_argument("family", choices=("antisym", "same-phase", "quarter-phase", "quartet"))
    p.add_argument("--alpha", type=parse_complex, metavar="RE,IM")
    p.add_argument("--beta", type=parse_complex, metavar="RE,IM")
    p.add_argument("--lambda", dest="lambda_prime", type=float)
    p.add_argument("--gamma-mod", type=float)
    p.add_argument("--delta-mod", type=float)
    p.add_argument("--sign", type=parse_sign, default=1)
    p.add_argument("--which", type=int)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("limit-scan", parents=[common], help="small-alpha convergence to Bell-like states")
    p.add_argument("--which", type=_limit_family, required=True)
    p.add_argument("--target", type=int, choices=(1, 2, 3, 4), default=None,
                   help="Bell-like state to compare with (default: the actual limit)")
    p.add_argument("--alpha-start", type=float, required=True)
    p.add_argument("--alpha-end", type=float, required=True)
    p.add_argument("--steps", type=int, default=9)
    p.add_argument("--csv", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_limit_scan)

    p = sub.add_parser("sweep", parents=[common, state], help="concurrence over a parameter grid")
    p.add_argument("--vary", choices=("p", "q", "theta"), required=True,
                   help="p/q: grid over (Re, Im); theta: grid over (theta, |mu|/|nu|)")
    p.add_argument("--x-range", type=parse_range, metavar="LO,HI")
    p.add_argument("--y-range", type=parse_range, metavar="LO,HI")
    p.add_argument("--nx", type=int, default=41)
    p.add_argument("--ny", type=int, default=41)
    p.add_argument("--csv", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("overlap", parents=[common], help="overlap of two coherent states")
    p.add_argument("--a", type=parse_complex, required=True, metavar="RE,IM")
    p.add_argument("--g", type=parse_complex, required=True, metavar="RE,IM")
    p.set_defaults(func=cmd_overlap)

    p = sub.add_parser("selftest", parents=[common], help="randomized closed-form vs SVD check")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=10_000)
    p.set_defaults(func=cmd_selftest)
    return parser


_NEGATIVE_VALUE = re.compile(r"^-(\d|\.\d)")


def attach_negative_values(argv: Sequence[str]) -> list[str]:
    """Rewrite ``--flag -0.5,0`` as ``--flag=-0.5,0`` so argparse sees a value."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        out.append(tok)
        if tok.startswith("--") and "=" not in tok:
            nxt = next(it, None)
            if nxt is None:
                break
            if _NEGATIVE_VALUE.match(nxt):
                out[-1] = f"{tok}={nxt}"
            else:
                out.append(nxt)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(attach_negative_values(argv))
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else 0
    if getattr(args, "workers", 1) < 1:
        print("entlab: error: workers must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"entlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EntlabError as exc:
        print(f"entlab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except AssertionError as exc:
        print(f"entlab: internal consistency check failed: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
