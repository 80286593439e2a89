"""Command-line front end.

    cryptoherm spectrum --N 6 9 --a 1 2 3 --format csv
    cryptoherm metric --N 5 --a 1 --k 2 --source closed --verify
    cryptoherm analyze --N 4 --a 1 --k 1 --ray +1
    cryptoherm analyze --N 6 --a 2 --k 1 --alpha 0.05 --evolve --init e1 --tmax 10 --steps 100
    cryptoherm verify-paper

Exit codes: 0 ok, 2 bad configuration, 3 numeric failure (including a
non-PD metric where PD is required), 4 verification failure (nonzero
residual, boundary-element violation).  Data goes to stdout (or ``--out``), diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

import numpy as np

from . import analysis, closed_forms, dieudonne, spectrum
from .errors import ConjectureViolation, CryptohermError, DomainError, NumericError
from .model import ModelParams, build_laguerre_hamiltonian
from .scalars import FLOAT, RATIONAL, parse_scalar, to_json_scalar

log = logging.getLogger("cryptoherm")

EXIT_CONFIG, EXIT_NUMERIC, EXIT_VERIFY = 2, 3, 4
SIG = 10


class ConfigError(Exception):
    pass


class VerificationFailed(Exception):
    pass


def fmt(x: float) -> str:
    return f"{float(x):.{SIG}g}"


def _round(x):
    """Round floats to 10 significant digits, recursively, for stable JSON."""
    if isinstance(x, float):
        return float(fmt(x))
    if isinstance(x, dict):
        return {k: _round(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_round(v) for v in x]
    return x


def dump_json(obj) -> str:
    return json.dumps(_round(obj), sort_keys=False, ensure_ascii=False) + "\n"


@dataclass
class RunConfig:
    command: str
    N: List[int]
    a: List[str]
    k: int = 0
    alphas: List[str] = field(default_factory=list)
    backend: str = RATIONAL
    source: str = "closed"
    sites: Optional[List[float]] = None
    tmax: float = 10.0
    steps: int = 100
    fmt: str = "json"
    out: Optional[str] = None


def _scalar(text: str, backend: str):
    try:
        return parse_scalar(text, backend)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _params(N: int, a_text: str, backend: str) -> ModelParams:
    if N < 1:
        raise ConfigError("--N must be positive")
    try:
        return ModelParams(N, _scalar(a_text, backend))
    except (CryptohermError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def _split(values: Optional[List[str]]) -> List[str]:
    out: List[str] = []
    for v in values or []:
        out.extend(p for p in v.split(",") if p.strip())
    return out


# -- spectrum ----------------------------------------------------------------

def cmd_spectrum(args) -> str:
    rows = []
    for N in args.N:
        for a in args.a:
            p = _params(N, a, FLOAT)
            rows.append((p, spectrum.compute_spectrum(p)))
    if args.format == "csv":
        width = max(len(E) for _, E in rows)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(["N", "a"] + [f"E_{i}" for i in range(width)])
        for p, E in rows:
            w.writerow([p.N, fmt(p.a)] + [fmt(e) for e in E] + [""] * (width - len(E)))
        return buf.getvalue()
    records = [spectrum.spectrum_record(p, E) for p, E in rows]
    return dump_json(records[0] if len(records) == 1 else records)


# -- metric ------------------------------------------------------------------

def _metric_source(params, k, source):
    if source == "closed":
        if k > 3:
            raise ConfigError("closed forms exist for k <= 3; use --source oracle")
        return [closed_forms.pseudometric_table(params, j) for j in range(k + 1)]
    return list(dieudonne.solve_band_pseudometrics(params, k).P)


def cmd_metric(args) -> str:
    backend = args.backend
    params = _params(args.N, args.a, backend)
    k = args.k
    if k < 0 or k > params.N - 1:
        raise ConfigError(f"--k must lie in 0..N-1 = 0..{params.N - 1}")
    alphas = [_scalar(x, backend) for x in _split(args.alphas)]
    if alphas and len(alphas) != k:
        raise ConfigError(f"--alphas needs {k} values")
    items = _metric_source(params, k, args.source)
    mats = [it.matrix if isinstance(it, closed_forms.ClosedFormTable) else it for it in items]
    if backend == FLOAT:
        mats = [m.to_float() for m in mats]
    out = {
        "N": params.N,
        "a": to_json_scalar(params.a),
        "k": k,
        "source": args.source,
        "backend": backend,
        "P": [],
    }
    for j, (it, m) in enumerate(zip(items, mats)):
        entry = {"j": j, "bands": m.to_json()}
        if isinstance(it, closed_forms.ClosedFormTable):
            entry["provenance"] = [list(b) for b in it.provenance]
        out["P"].append(entry)
    if alphas:
        theta = mats[0]
        for c, m in zip(alphas, mats[1:]):
            theta = theta + m.scale(c)
        out["alphas"] = [to_json_scalar(x) for x in alphas]
        out["theta"] = theta.to_json()
    else:
        theta = mats[0]
    if args.verify:
        out["verification"] = _verify_metric(params, k, mats, theta, args.source)
    return dump_json(out)


def _verify_metric(params, k, mats, theta, source) -> dict:
    H = build_laguerre_hamiltonian(params)
    residuals = [dieudonne.dieudonne_residual(H, m) for m in mats + [theta]]
    worst = max(residuals)
    exact = H.exact and theta.exact
    if exact:
        ok = worst == 0
        print(f"residual: {worst} (exact)", file=sys.stderr)
    else:
        scale = max(abs(float(x)) for m in mats for b in m.bands for x in b) * max(abs(float(x)) for x in H.diag)
        ok = worst <= 1e-12 * scale
        print(f"residual: {float(worst):.3e} (float)", file=sys.stderr)
    other = "oracle" if source == "closed" else "closed"
    equal = None
    if other == "oracle" or k <= 3:
        exact_params = params if params.exact else ModelParams(params.N, Fraction(params.a))
        ref = [m for m in closed_forms.pseudometrics_for(exact_params, k, other)]
        if exact:
            equal = all(x == y for x, y in zip(ref, mats))
        else:
            equal = all(
                np.allclose(x.to_float().band_array(), y.band_array(), rtol=1e-10, atol=0) for x, y in zip(ref, mats)
            )
        print(f"{other}-equivalence: {'yes' if equal else 'NO'}", file=sys.stderr)
    if not ok or equal is False:
        raise VerificationFailed(f"metric verification failed (residual {worst}, {other}-equal {equal})")
    return {"residual": to_json_scalar(worst), "exact": exact, f"{other}_equal": equal}


# -- analyze -----------------------------------------------------------------

def _initial_state(spec: str, params: ModelParams) -> np.ndarray:
    N = params.N
    spec = spec.strip()
    if spec.startswith("e") and spec[1:].isdigit():
        s = int(spec[1:])
        if not 1 <= s <= N:
            raise ConfigError(f"site {s} outside 1..{N}")
        v = np.zeros(N)
        v[s - 1] = 1.0
        return v
    if spec.startswith("psi") and spec[3:].isdigit():
        n = int(spec[3:])
        if not 0 <= n < N:
            raise ConfigError(f"eigenstate {n} outside 0..{N - 1}")
        E = spectrum.compute_spectrum(params)
        return spectrum.right_eigenvector(params, E[n])
    try:
        v = np.array([float(x) for x in spec.split(",")])
    except ValueError as exc:
        raise ConfigError(f"cannot parse --init {spec!r}") from exc
    if v.shape != (N,):
        raise ConfigError(f"--init needs {N} components")
    return v


def cmd_analyze(args) -> str:
    params = _params(args.N, args.a, FLOAT)
    k = args.k
    if k < 0 or k > params.N - 1:
        raise ConfigError(f"--k must lie in 0..{params.N - 1}")
    alphas = [float(_scalar(x, FLOAT)) for x in _split(args.alphas)]
    if not alphas:
        alphas = [0.0] * k
    if len(alphas) != k:
        raise ConfigError(f"--alpha/--alphas needs {k} values")
    rays = []
    for r in args.ray or []:
        ray = [float(_scalar(x, FLOAT)) for x in r.split(",")]
        if len(ray) != max(k, 1) and k > 0:
            raise ConfigError(f"--ray needs {k} components")
        rays.append(ray if k else [])
    if args.source == "closed" and k > 3:
        raise ConfigError("closed forms exist for k <= 3; use --source oracle")
    report = analysis.analysis_report(params, k, alphas, rays, args.source)
    if not args.evolve:
        return dump_json(report)
    fam = closed_forms.assemble_metric(params, k, alphas, args.source)
    if fam.positivity != "positive-definite":
        raise DomainError("metric is not positive definite; evolution needs a PD metric")
    sites = [float(x) for x in _split(args.sites)] if args.sites else None
    times = np.linspace(0.0, args.tmax, args.steps + 1)
    res = analysis.evolve(params, fam.theta, _initial_state(args.init, params), times, sites)
    if args.format == "json":
        report["evolution"] = {
            "times": res.times.tolist(),
            "rho": res.site_probabilities.tolist(),
            "theta_norm": res.theta_norms.tolist(),
        }
        return dump_json(report)
    print(dump_json(report), end="", file=sys.stderr)
    return trajectory_csv(res)


def trajectory_csv(res: "analysis.EvolutionResult") -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(["t", "s", "re_psi", "im_psi", "rho"])
    for ti, t in enumerate(res.times):
        for s in range(res.smeared.shape[1]):
            z = res.smeared[ti, s]
            w.writerow([fmt(t), s + 1, fmt(z.real), fmt(z.imag), fmt(res.site_probabilities[ti, s])])
    return buf.getvalue()


# -- verify-paper ------------------------------------------------------------

def cmd_verify_paper(args) -> str:
    from .verification import verify_all

    checks = verify_all(Nmax=args.Nmax)
    lines = [c.line() for c in checks]
    failed = sum(not c.passed for c in checks)
    lines.append(f"{len(checks) - failed}/{len(checks)} checks passed")
    text = "\n".join(lines) + "\n"
    if failed:
        sys.stdout.write(text)
        raise VerificationFailed(f"{failed} checks failed")
    return text


# -- plumbing ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cryptoherm", description=__doc__.split("\n")[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, multi=False):
        nargs = "+" if multi else None
        sp.add_argument("--N", type=int, nargs=nargs, required=True)
        sp.add_argument("--a", nargs=nargs, required=True, help="decimal or p/q")
        sp.add_argument("--format", choices=["json", "csv"], default=None)
        sp.add_argument("--out", default=None)

    s = sub.add_parser("spectrum", help="energies for each (N, a)")
    common(s, multi=True)

    m = sub.add_parser("metric", help="pseudometrics P_0..P_k and the assembled metric")
    common(m)
    m.add_argument("--k", type=int, default=0)
    m.add_argument("--alphas", "--alpha", dest="alphas", action="append")
    m.add_argument("--backend", choices=[RATIONAL, FLOAT], default=RATIONAL)
    m.add_argument("--source", choices=["closed", "oracle"], default="closed")
    m.add_argument("--verify", action="store_true")

    an = sub.add_parser("analyze", help="positivity, alpha boundaries, spectral weights, evolution")
    common(an)
    an.add_argument("--k", type=int, default=0)
    an.add_argument("--alphas", "--alpha", dest="alphas", action="append")
    an.add_argument("--source", choices=["closed", "oracle"], default="closed")
    an.add_argument("--ray", action="append", help="direction in alpha-space, comma separated")
    an.add_argument("--evolve", action="store_true")
    an.add_argument("--init", default="e1", help="e<s>, psi<n>, or comma-separated components")
    an.add_argument("--tmax", type=float, default=10.0)
    an.add_argument("--steps", type=int, default=100)
    an.add_argument("--sites", action="append")

    v = sub.add_parser("verify-paper", help="closed forms vs exact solver, listed elements, spectra")
    v.add_argument("--Nmax", type=int, default=12)
    v.add_argument("--out", default=None)
    return p


COMMANDS = {
    "spectrum": cmd_spectrum,
    "metric": cmd_metric,
    "analyze": cmd_analyze,
    "verify-paper": cmd_verify_paper,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else 0
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)
    if getattr(args, "format", None) is None:
        args.format = "csv" if getattr(args, "evolve", False) else "json"
    try:
        text = COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (VerificationFailed, ConjectureViolation) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (NumericError, DomainError, CryptohermError, np.linalg.LinAlgError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
