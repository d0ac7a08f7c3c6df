"""Command-line front end: spectra, branch sweeps, transmission and checks as
machine-readable CSV (or a JSON mirror of the same table).

Exit codes: 0 success, 1 failed invariant check, 2 invalid parameters,
3 solver consistency error.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .asymptotics import count_bound_states
from .checks import run_checks
from .potentials import DeltaPotential, DimensionlessParams
from .rootfinder import (
    AXIS_TOL,
    ConsistencyError,
    SearchWindow,
    SweepCurve,
    find_all_states,
    newton_solve,
    sweep_branch,
)
from .secular import SecularEquation
from .states import Parity
from .transmission import (
    TransmissionSpectrum,
    select_states,
    t_mittag_leffler,
)
from .wavefunction import build_wave_double, build_wave_triple

NUM_FMT = "{:.12g}"


def _fmt(value) -> str:
    if isinstance(value, float):
        return NUM_FMT.format(value)
    return str(value)


def _write_table(path: str | None, meta: dict, header: list[str], rows: list[tuple], fmt: str) -> None:
    if fmt == "json":
        payload = {"meta": meta, "columns": header, "rows": [list(r) for r in rows]}
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        lines = [f"# {key} = {meta[key]}" for key in sorted(meta)]
        lines.append(",".join(header))
        for row in rows:
            lines.append(",".join(_fmt(v) for v in row))
        text = "\n".join(lines) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _params_from_args(args) -> tuple[DimensionlessParams, str]:
    structure = args.structure
    if getattr(args, "gamma", None) is not None:
        a = args.a if args.a is not None else 1.0
        if structure == "double":
            pot = DeltaPotential.double(args.gamma, a)
        else:
            beta = args.beta if args.beta is not None else 0.0
            b = args.b if args.b is not None else 0.0
            pot = DeltaPotential.triple(args.gamma, beta, a, b)
        return pot.to_dimensionless(), structure
    if args.alpha is None:
        raise ValueError("either --alpha or --gamma is required")
    eps = getattr(args, "epsilon", None)
    if structure == "triple" and eps is None:
        raise ValueError("--epsilon is required for a triple structure")
    return (
        DimensionlessParams(
            alpha=args.alpha,
            epsilon=eps if eps is not None else 0.0,
            b_over_a=getattr(args, "b_over_a", 0.0) or 0.0,
        ),
        structure,
    )


def _meta(args, params: DimensionlessParams, extra: dict | None = None) -> dict:
    meta = {
        "artifact": f"deltawells {__version__}",
        "command": args.command,
        "structure": args.structure,
        "alpha": _fmt(params.alpha),
        "epsilon": _fmt(params.epsilon),
        "b_over_a": _fmt(params.b_over_a),
    }
    if extra:
        meta.update({k: _fmt(v) if isinstance(v, float) else str(v) for k, v in extra.items()})
    return meta


# ---------------------------------------------------------------------------
# Subcommands.
# ---------------------------------------------------------------------------

def cmd_spectrum(args) -> int:
    params, _ = _params_from_args(args)
    window = SearchWindow(args.window, args.im_min, args.seed_density)
    states = find_all_states(params, window, args.tol)
    header = ["n", "re_ka", "im_ka", "class", "parity", "re_Ea2", "im_Ea2"]
    rows = [
        (
            n,
            st.k.real,
            st.k.imag,
            st.state_class.value,
            st.parity.value,
            st.energy.real,
            st.energy.imag,
        )
        for n, st in enumerate(states)
    ]
    extra = {"window_re_max": args.window, "window_im_min": args.im_min,
             "seed_density": args.seed_density, "n_states": len(states),
             "predicted_bound": count_bound_states(params.alpha, params.epsilon or None)
             if params.b_over_a == 0 else "n/a"}
    _write_table(args.output, _meta(args, params, extra), header, rows, args.format)
    return 0


def _branch_start_roots(params: DimensionlessParams, structure: str, parameter: str,
                        start: float) -> dict[str, tuple[SecularEquation, complex]]:
    """On-axis start roots per branch at the start parameter value."""
    out: dict[str, tuple[SecularEquation, complex]] = {}
    if structure == "double":
        sectors = [("even", "double_even"), ("odd", "double_odd")]
    else:
        sectors = [("even", "triple_sym_even"), ("odd", "double_odd")]
        if params.b_over_a != 0:
            raise ValueError("sweeps are defined for on-axis branches; set b_over_a = 0")
    for label, family in sectors:
        base = params if family.startswith("triple") else DimensionlessParams(params.alpha)
        eq = SecularEquation(family, base)
        eq0 = eq.with_param(parameter, start)
        roots = []
        for y in np.arange(0.05, max(2.0, abs(eq0.params.alpha)) * 2.0, 0.05):
            r = newton_solve(eq0, 1j * y, 1e-12)
            if r is None or abs(r) <= 1e-9 or abs(r.real) > AXIS_TOL:
                continue
            if all(abs(r - other) > 1e-7 for other in roots):
                roots.append(r)
        roots.sort(key=lambda z: -z.imag)
        if family == "triple_sym_even" and len(roots) >= 2:
            out["even_ground"] = (eq, roots[0])
            out["even_excited"] = (eq, roots[1])
        elif roots:
            out[label if structure == "double" else f"{label}_ground"] = (eq, roots[0])
    return out


def cmd_sweep(args) -> int:
    params, structure = _params_from_args(args)
    parameter = args.parameter.replace("-", "_")
    starts = _branch_start_roots(params, structure, parameter, args.start)
    wanted = None if args.branch == "all" else args.branch.replace("-", "_")
    header = ["param", "re_s", "im_s", "class"]
    wrote_any = False
    for label, (eq, root) in sorted(starts.items()):
        if wanted is not None and label != wanted:
            continue
        curve = sweep_branch(
            eq, parameter, args.start, args.stop, args.step, root, branch=label
        )
        rows = []
        for (p, z), cls in zip(curve.points, curve.classes):
            s = -2j * z
            rows.append((p, s.real, s.imag, cls.value if cls is not None else "origin"))
        for ev in curve.events:
            s = -2j * ev.z
            rows.append((ev.param, s.real, s.imag, ev.kind))
        meta = _meta(args, params, {"parameter": parameter, "branch": label,
                                    "start": args.start, "stop": args.stop, "step": args.step})
        path = args.output
        if path not in (None, "-"):
            stem, dot, ext = path.rpartition(".")
            path = f"{stem}_{label}.{ext}" if dot else f"{path}_{label}"
        _write_table(path, meta, header, rows, args.format)
        wrote_any = True
        for ev in curve.events:
            if ev.kind == "truncated":
                print(f"warning: branch {label} truncated at {parameter} = {ev.param:g}: "
                      f"{ev.message}", file=sys.stderr)
    if not wrote_any:
        print("warning: no branch had a start root at the range start", file=sys.stderr)
    return 0


def cmd_transmission(args) -> int:
    params, structure = _params_from_args(args)
    grid = np.linspace(args.k_min, args.k_max, args.points)
    method = args.method
    if method == "transfer-matrix":
        pot = DeltaPotential.from_params(params, structure)
        spec = TransmissionSpectrum.from_transfer(pot, grid)
    elif structure != "double":
        raise ValueError("analytic and ml methods are defined for the double structure")
    elif method == "analytic":
        spec = TransmissionSpectrum.analytic(params.alpha, grid)
    else:  # ml
        window = SearchWindow(args.ml_window, -4.0, 6)
        states = find_all_states(params, window)
        subset = select_states(
            states,
            n_pairs=args.n_pairs,
            re_window=args.all_in_window,
        )
        t = t_mittag_leffler(grid, subset, params.alpha)
        spec = TransmissionSpectrum(grid, t, "mittag_leffler", n_states=len(subset))
    header = ["ka", "re_t", "im_t", "T", "method", "n_states"]
    n_states = spec.n_states if spec.n_states is not None else ""
    rows = [
        (float(k), tv.real, tv.imag, float(abs(tv) ** 2), spec.method, n_states)
        for k, tv in zip(spec.k_grid, spec.t)
    ]
    extra = {"method": spec.method, "k_min": args.k_min, "k_max": args.k_max,
             "points": args.points}
    _write_table(args.output, _meta(args, params, extra), header, rows, args.format)
    return 0


def cmd_wave(args) -> int:
    params, structure = _params_from_args(args)
    window = SearchWindow(args.window, args.im_min, args.seed_density)
    states = find_all_states(params, window, args.tol)
    if not 0 <= args.index < len(states):
        raise ValueError(f"--index must be in [0, {len(states) - 1}] for this window")
    st = states[args.index]
    if structure == "double" or params.epsilon == 0:
        wave = build_wave_double(st.k, st.parity, params.alpha)
    elif st.parity is Parity.ODD:
        wave = build_wave_double(st.k, st.parity, params.alpha)
    else:
        wave = build_wave_triple(st.k, params.alpha, params.epsilon, params.b_over_a, tol=1e-8)
    xs = np.linspace(args.x_min, args.x_max, args.points)
    vals = wave(xs)
    header = ["x_over_a", "re_psi", "im_psi"]
    rows = [(float(x), v.real, v.imag) for x, v in zip(xs, vals)]
    extra = {"index": args.index, "re_ka": st.k.real, "im_ka": st.k.imag,
             "class": st.state_class.value, "parity": st.parity.value}
    _write_table(args.output, _meta(args, params, extra), header, rows, args.format)
    return 0


def cmd_check(args) -> int:
    results = run_checks(alpha=args.alpha, epsilon=args.epsilon, re_max=args.window)
    failed = [r for r in results if not r.passed]
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail}")
    if failed:
        print(f"{len(failed)} check(s) failed: " + ", ".join(r.name for r in failed))
        return 1
    print(f"all {len(results)} checks passed")
    return 0


# ---------------------------------------------------------------------------
# Argument parsing.
# ---------------------------------------------------------------------------

def _add_structure_args(p: argparse.ArgumentParser, default_structure: str = "double") -> None:
    p.add_argument("--structure", choices=("double", "triple"), default=default_structure)
    p.add_argument("--alpha", type=float, default=None, help="gamma * a")
    p.add_argument("--epsilon", type=float, default=None, help="beta / gamma (triple)")
    p.add_argument("--b-over-a", dest="b_over_a", type=float, default=0.0)
    p.add_argument("--gamma", type=float, default=None, help="raw outer strength")
    p.add_argument("--beta", type=float, default=None, help="raw middle strength")
    p.add_argument("--a", type=float, default=None, help="half width")
    p.add_argument("--b", type=float, default=None, help="middle delta position")


def _add_window_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--window", type=float, default=10.0, help="search |Re ka| <= window")
    p.add_argument("--im-min", dest="im_min", type=float, default=-4.0)
    p.add_argument("--seed-density", dest="seed_density", type=int, default=6)
    p.add_argument("--tol", type=float, default=1e-12)


def _add_output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--output", "-o", default=None, help="file path, '-' or omit for stdout")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="deltawells",
        description="Resonant states and transmission of double/triple delta wells",
    )
    parser.add_argument("--version", action="version", version=f"deltawells {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="all resonant states in a window")
    _add_structure_args(p)
    _add_window_args(p)
    _add_output_args(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("sweep", help="track bound/anti-bound branches over a parameter range")
    _add_structure_args(p)
    p.add_argument("--parameter", choices=("alpha", "epsilon", "beta-a"), default="alpha")
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--step", type=float, default=0.005)
    p.add_argument("--branch", default="all",
                   help="all | even | odd | even-ground | even-excited | odd-ground")
    _add_output_args(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("transmission", help="|t|^2 spectra by any method")
    _add_structure_args(p)
    p.add_argument("--method", choices=("analytic", "ml", "transfer-matrix"), default="analytic")
    p.add_argument("--n-pairs", dest="n_pairs", type=int, default=None)
    p.add_argument("--all-in-window", dest="all_in_window", type=float, default=None)
    p.add_argument("--ml-window", dest="ml_window", type=float, default=32.0)
    p.add_argument("--k-min", dest="k_min", type=float, default=0.005)
    p.add_argument("--k-max", dest="k_max", type=float, default=10.0)
    p.add_argument("--points", type=int, default=2001)
    _add_output_args(p)
    p.set_defaults(func=cmd_transmission)

    p = sub.add_parser("wave", help="tabulate one normalized wavefunction")
    _add_structure_args(p)
    _add_window_args(p)
    p.add_argument("--index", type=int, required=True, help="state index in spectrum order")
    p.add_argument("--x-min", dest="x_min", type=float, default=-3.0)
    p.add_argument("--x-max", dest="x_max", type=float, default=3.0)
    p.add_argument("--points", type=int, default=601)
    _add_output_args(p)
    p.set_defaults(func=cmd_wave)

    p = sub.add_parser("check", help="run the invariant suite")
    p.add_argument("--alpha", type=float, default=3.0)
    p.add_argument("--epsilon", type=float, default=2.0)
    p.add_argument("--window", type=float, default=12.0)
    p.set_defaults(func=cmd_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConsistencyError as exc:
        print(f"solver consistency error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, ArithmeticError) as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
