"""ringflock command line: config ingestion, subcommands, CSV emission.

Exit codes: 0 stable / ok, 1 usage or I/O failure, 2 domain-negative result
(instability, violated bound), 3 marginal or inconclusive.
"""

import argparse
import os
import sys
from pathlib import Path

from .errors import ConfigError, DegenerateBranches, RingflockError
from .model import FlockParams, normalize, validate
from .sim import front_overlay, impulse_experiment, positions
from .spectral import eigencurve, hausdorff, spectrum
from .stability import instability_witness, spectral_verdict, stable_for_all_n
from .wavefield import (
    phase_velocities,
    power_law_coefficients,
    signal_velocities,
    verify_wave_bound,
)

DEFAULTS = {
    "n": 200,
    "g_x": -2.0,
    "g_v": -2.0,
    "rho_x.m1": -0.5,
    "rho_x.0": 1.0,
    "rho_x.p1": -0.5,
    "rho_v.m1": -0.5,
    "rho_v.0": 1.0,
    "rho_v.p1": -0.5,
    "n_phi": 4096,
    "alpha": 0.3,
    "beta": 0.7,
    "K": 2.0,
    "p": 2.0,
    "t_end": None,   # simulate: 0.6 * n / min signal speed
    "dt": None,      # simulate: largest stable step
    "v_impulse": 1.0,
    "seed": 0,
    "n_sweep": (256, 512, 1024),
    "output_dir": "out",
}

_INT_KEYS = {"n", "n_phi", "seed"}
_STR_KEYS = {"output_dir"}
_LIST_KEYS = {"n_sweep"}


def _convert(key, text):
    if key in _STR_KEYS:
        return text
    if key in _LIST_KEYS:
        return tuple(int(part) for part in text.split(","))
    if key in _INT_KEYS:
        return int(text)
    return float(text)


def parse_config(path):
    """Read 'key = value' lines; '#' starts a comment."""
    cfg = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(path, lineno, "expected 'key = value'")
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if key not in DEFAULTS:
                raise ConfigError(path, lineno, f"unknown key '{key}'")
            try:
                cfg[key] = _convert(key, value)
            except ValueError:
                raise ConfigError(path, lineno, f"bad value '{value}' for key '{key}'")
    return cfg


def build_params(cfg) -> FlockParams:
    params = FlockParams(
        n=cfg["n"],
        g_x=cfg["g_x"],
        g_v=cfg["g_v"],
        rho_x={-1: cfg["rho_x.m1"], 0: cfg["rho_x.0"], 1: cfg["rho_x.p1"]},
        rho_v={-1: cfg["rho_v.m1"], 0: cfg["rho_v.0"], 1: cfg["rho_v.p1"]},
    )
    return validate(params)


def _fmt(value):
    if value is None:
        return "auto"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, tuple):
        return ",".join(str(v) for v in value)
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _write_rows(path: Path, header, rows):
    """Atomic CSV write; floats carry 17 significant digits."""
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")
    os.replace(tmp, path)


def _echo_config(cfg, out_dir: Path):
    lines = [f"{key}={_fmt(cfg[key])}" for key in sorted(cfg)]
    tmp = out_dir / "resolved_config.tmp"
    with open(tmp, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    os.replace(tmp, out_dir / "resolved_config")


def cmd_stability(cfg, out_dir):
    params = build_params(cfg)
    gate = stable_for_all_n(params)
    report = spectral_verdict(params)
    print(f"ring of {params.n} agents, g_x={params.g_x:g}, g_v={params.g_v:g}")
    print(f"closed_form={_fmt(gate)}")
    print(f"spectral={_fmt(report.spectral_stable)}")
    print(f"max_re={_fmt(report.max_real_part)}")
    if gate:
        return 0
    if report.marginal:
        print("verdict=marginal")
        return 3
    if not report.spectral_stable:
        m, branch, nu = report.witness
        print(f"witness_m={m}")
        print(f"witness_n={report.n}")
        print(f"witness_branch={branch}")
        print(f"witness_re={_fmt(nu.real)}")
        return 2
    found = instability_witness(params, n_max=4096)
    if found is None:
        print("verdict=inconclusive  # no witness up to n=4096")
        return 3
    n_bad, m, nu = found
    print(f"witness_m={m}")
    print(f"witness_n={n_bad}")
    print(f"witness_re={_fmt(nu.real)}")
    return 2


def cmd_spectrum(cfg, out_dir):
    params = build_params(cfg)
    spec = spectrum(params)
    _write_rows(out_dir / "spectrum.csv",
                ["m", "re_lambda_x", "im_lambda_x", "re_lambda_v", "im_lambda_v",
                 "re_nu_plus", "im_nu_plus", "re_nu_minus", "im_nu_minus"],
                ((int(m), lx.real, lx.imag, lv.real, lv.imag,
                  np_.real, np_.imag, nm.real, nm.imag)
                 for m, lx, lv, np_, nm in zip(spec.ms, spec.lambda_x, spec.lambda_v,
                                               spec.nu_plus, spec.nu_minus)))
    curve = eigencurve(params, cfg["n_phi"])
    _write_rows(out_dir / "eigencurve.csv",
                ["phi", "re_nu_1", "im_nu_1", "re_nu_2", "im_nu_2"],
                ((phi, r1.real, r1.imag, r2.real, r2.imag)
                 for phi, (r1, r2) in zip(curve.phi, curve.roots)))
    d_h = hausdorff(spec.all_nus(), curve.points())
    print(f"modes={params.n}")
    print(f"hausdorff={_fmt(d_h)}")
    return 0


def cmd_velocities(cfg, out_dir):
    params = build_params(cfg)
    if not stable_for_all_n(params):
        print("closed_form=false")
        return 2
    try:
        pv = phase_velocities(params)
    except DegenerateBranches as exc:
        print(f"degenerate_branches=true  # {exc}")
        return 3
    sigs = signal_velocities(normalize(params))
    _write_rows(out_dir / "velocities.csv",
                ["m", "c_plus", "c_minus", "re_nu_plus", "re_nu_minus"],
                ((int(m), cp, cm, rp, rm)
                 for m, cp, cm, rp, rm in zip(pv.ms, pv.c_plus, pv.c_minus,
                                              pv.re_nu_plus, pv.re_nu_minus)))
    print(f"c_plus={sigs.c_plus:.6f}")
    print(f"c_minus={sigs.c_minus:.6f}")
    print(f"a={_fmt(sigs.a)}")
    return 0


def cmd_simulate(cfg, out_dir):
    params = build_params(cfg)
    if not stable_for_all_n(params):
        print("closed_form=false")
        return 2
    traj, front = impulse_experiment(params, v_impulse=cfg["v_impulse"],
                                     t_end=cfg["t_end"], dt=cfg["dt"])
    n = params.n
    _write_rows(out_dir / "trajectory.csv",
                ["t", "k", "z", "zdot"],
                ((t, k, traj.z[i, k], traj.zdot[i, k])
                 for i, t in enumerate(traj.times) for k in range(n)))

    def branch_of(k):
        if k == 0:
            return "0"
        return "+" if k <= n // 2 else "-"

    _write_rows(out_dir / "wavefront.csv",
                ["k", "arrival_time", "branch"],
                ((k, front.arrival_time[k], branch_of(k)) for k in range(n)))

    x = positions(traj, delta=1.0, v_nominal=0.0)
    speed = traj.zdot
    fp, fm = front_overlay(traj, front.predicted_c_plus, front.predicted_c_minus,
                           delta=1.0, v_nominal=0.0)
    path = out_dir / "orbits.csv"
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w") as fh:
        fh.write("t,k,x,speed\n")
        for i, t in enumerate(traj.times):
            for k in range(n):
                fh.write(f"{_fmt(t)},{k},{_fmt(x[i, k])},{_fmt(speed[i, k])}\n")
        fh.write("\nt,front_plus_x,front_minus_x\n")
        for i, t in enumerate(traj.times):
            fh.write(f"{_fmt(t)},{_fmt(fp[i])},{_fmt(fm[i])}\n")
    os.replace(tmp, path)

    print(f"fitted_c_plus={_fmt(front.fitted_c_plus)}")
    print(f"fitted_c_minus={_fmt(front.fitted_c_minus)}")
    print(f"predicted_c_plus={_fmt(front.predicted_c_plus)}")
    print(f"predicted_c_minus={_fmt(front.predicted_c_minus)}")
    print(f"no_arrival_count={len(front.no_arrival)}")
    if front.no_arrival:
        print("no_arrival=" + ",".join(str(k) for k in front.no_arrival))
    return 0


def cmd_wave_verify(cfg, out_dir):
    params = build_params(cfg)
    alpha, beta = cfg["alpha"], cfg["beta"]
    if alpha >= 1.0 / 3.0:
        print(f"alpha_guarantee=false  # alpha={alpha:g} outside the alpha < 1/3 regime")
    else:
        print("alpha_guarantee=true")
    rows = []
    rel_errors = []
    d_const = None
    for n in cfg["n_sweep"]:
        coeffs = power_law_coefficients(n, cfg["p"], seed=cfg["seed"])
        report = verify_wave_bound(params.with_n(n), coeffs, alpha, beta,
                                     cfg["K"], cfg["p"], d_const=d_const)
        if d_const is None:
            d_const = report.d_const
            print(f"d_const={_fmt(d_const)}  # fitted at n={n}, frozen afterwards")
        for i, t in enumerate(report.ts):
            rows.append((n, t, report.measured[i], report.term1[i],
                         report.term2[i], report.term3[i]))
        rel = report.measured[0] / report.signal_sup[0]
        rel_errors.append(rel)
        print(f"n={n} rel_error={_fmt(rel)} bound_holds={_fmt(report.bound_holds())}")
    _write_rows(out_dir / "wave_verify.csv",
                ["n", "t", "measured_error", "bound_term1", "bound_term2", "bound_term3"],
                rows)
    monotone = all(rel_errors[i + 1] < rel_errors[i] for i in range(len(rel_errors) - 1))
    print(f"rel_error_monotone={_fmt(monotone)}")
    all_hold = all(
        row[2] <= row[3] + row[4] + row[5] + 1e-9 for row in rows)
    return 0 if all_hold else 2


_COMMANDS = {
    "stability": cmd_stability,
    "spectrum": cmd_spectrum,
    "velocities": cmd_velocities,
    "simulate": cmd_simulate,
    "wave-verify": cmd_wave_verify,
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="ringflock",
        description="Spectral analysis and wave diagnostics of ring flocks. "
                    "RINGFLOCK_THREADS caps internal parallelism.")
    parser.add_argument("command", choices=sorted(_COMMANDS))
    parser.add_argument("--config", required=True, help="key = value config file")
    parser.add_argument("--out", default=None, help="output directory")
    parser.add_argument("--n", type=int, default=None, help="override agent count")
    parser.add_argument("--seed", type=int, default=None, help="override seed")
    args = parser.parse_args(argv)

    try:
        cfg = dict(DEFAULTS)
        cfg.update(parse_config(args.config))
        if args.n is not None:
            cfg["n"] = args.n
        if args.seed is not None:
            cfg["seed"] = args.seed
        out_dir = Path(args.out if args.out is not None else cfg["output_dir"])
        out_dir.mkdir(parents=True, exist_ok=True)
        _echo_config(cfg, out_dir)
        return _COMMANDS[args.command](cfg, out_dir)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1
    except RingflockError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
