"""Command-line front end for the tomogram toolkit.

Six subcommands: ``catalog`` lists the built-in states, ``transform``
moves one state between representations, ``validate`` runs membership
checks, ``conserve`` runs the normalization-conservation suite,
``evolve`` runs a drift experiment, and ``report`` merges earlier JSON
reports.  Exit codes: 0 when every bound check passed, 1 when at least
one failed, 2 for usage or data errors.  Numeric results go to JSON and
CSV files; stdout carries one summary line per check.  Identical argv
and seed produce byte-identical JSON, so reports never embed wall-clock
data.
"""

import argparse
import json
import math
import os
import sys

import numpy as np

from .conservation import (
    harmonic_residual,
    moment_profile,
    normalization_flux_cubic,
    ode_residual,
    symplectic_moment_residual,
)
from .core.catalog import (
    DEFAULT_N_MAX,
    StateSpec,
    analytic_source,
    available_states,
    catalog_fock,
    catalog_optical_grid,
    catalog_wigner_grid,
)
from .core.grids import GridSpec, OpticalTomogramGrid, WignerGrid, load_grid, save_grid
from .evolution import PolynomialPotential, drift_experiment
from .transforms import (
    CharacteristicSamples,
    characteristic_grid,
    inverse_radon_optical,
    optical_to_symplectic,
    radon_optical,
    save_characteristic,
)
from .validation import (
    check_hirschman,
    check_positivity,
    check_radon_fixed_point,
    check_structural,
    pure_state_overlap,
)

__all__ = ["COUNTEREXAMPLE_CHECKS", "build_parser", "main"]

_VERSION = "0.1.0"

_ALL_CHECKS = ("structural", "hirschman", "positivity", "overlap", "fixedpoint")
_CHECK_TOKENS = set(_ALL_CHECKS) | {"klm", "bochner", "all"}

# Which command and check demonstrates each catalog non-state, and the
# sampling seed that reproduces the violation where one is needed.
COUNTEREXAMPLE_CHECKS = {
    "example-cos3": {"command": "conserve", "check": "harmonics-m1",
                     "args": ("--mmax", "1", "--flux-c3", "1")},
    "f1": {"command": "validate", "check": "fixedpoint",
           "args": ("--checks", "fixedpoint")},
    "w1": {"command": "validate", "check": "overlap",
           "args": ("--checks", "overlap", "--against", "fock0")},
    "w1-quartic": {"command": "validate", "check": "klm",
                   "args": ("--checks", "klm", "--seed", "5")},
    "m1": {"command": "validate", "check": "klm",
           "args": ("--checks", "klm", "--seed", "5")},
}


# -- shared plumbing ---------------------------------------------------------------


def _positive_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not math.isfinite(value) or value <= 0.0:
        raise argparse.ArgumentTypeError(f"not a positive real: {text!r}")
    return value


def _parse_state_spec(text):
    """'name' or 'name:key=val,key=val' into a StateSpec."""
    name, _, rest = text.partition(":")
    params = {}
    if rest:
        for part in rest.split(","):
            key, eq, val = part.partition("=")
            key = key.strip()
            if not eq or not key:
                raise ValueError(f"malformed state parameter {part!r}")
            try:
                params[key] = float(val)
            except ValueError:
                raise ValueError(f"state parameter {key} is not a number: {val!r}")
    return StateSpec(name.strip(), params)


def _grid_spec(args):
    overrides = [getattr(args, k, None) for k in ("x_max", "n_x", "n_theta")]
    if all(v is None for v in overrides):
        return None
    x_max = args.x_max if args.x_max is not None else 7.0
    return GridSpec(x_min=-x_max, x_max=x_max,
                    n_x=args.n_x if args.n_x is not None else 281,
                    n_theta=args.n_theta if args.n_theta is not None else 64)


class Subject:
    """One resolved --state argument with the views each check consumes."""

    def __init__(self, text, grid_spec=None):
        self.label = text
        self.entry = None
        if text.endswith(".json"):
            grid = load_grid(text)
            self.label = os.path.basename(text)[:-5]
            if isinstance(grid, OpticalTomogramGrid):
                self.optical = grid
            else:
                self.optical = radon_optical(grid, grid_spec)
            self.source = grid
            self.structural_kind = "optical"
            self.char_source = self.optical
            self.overlap_candidate = self.source
            self.moment_source = None
            return
        spec = _parse_state_spec(text)
        src = analytic_source(spec)
        self.source = src
        self.entry = src.entry
        self.label = src.name
        if self.entry.optical is not None:
            self.optical = catalog_optical_grid(spec, grid_spec)
        elif self.entry.wigner is not None:
            self.optical = radon_optical(catalog_wigner_grid(spec, grid_spec),
                                         grid_spec)
        else:
            raise ValueError(f"{self.label} has no projectable representation")
        has_symplectic = self.entry.symplectic is not None
        self.structural_kind = "symplectic" if has_symplectic else "optical"
        self.char_source = src if has_symplectic else self.optical
        self.overlap_candidate = src
        self.moment_source = src if has_symplectic else None

    @property
    def structural_source(self):
        return self.source if self.entry is not None and \
            self.entry.optical is not None else self.optical

    @property
    def fixed_candidate(self):
        if self.entry is not None and self.entry.symplectic is not None:
            return self.source
        return optical_to_symplectic(self.optical)


def _meta(command, argv):
    return {"program": "tomokit", "version": _VERSION,
            "command": command, "argv": list(argv)}


def _jsonable(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def _write_json(path, payload):
    text = json.dumps(payload, sort_keys=True, indent=2, default=_jsonable)
    with open(path, "w") as fh:
        fh.write(text + "\n")


def _emit(entry, label):
    verdict = "PASS" if entry["pass"] else "FAIL"
    print(f"{entry['check']:<14} {label:<14} metric={entry['metric']: .6e} "
          f"threshold={entry['threshold']: .3e} {verdict}")


def _exit_code(entries):
    return 0 if all(e["pass"] for e in entries) else 1


# -- validate ----------------------------------------------------------------------


def _overlap_entry(subject, against, tolerance):
    spec = _parse_state_spec(against)
    n_max = DEFAULT_N_MAX
    if spec.kind.startswith("fock") and spec.kind[4:].isdigit():
        n_max = int(spec.kind[4:])
    elif spec.kind == "ground":
        n_max = 0
    rho = catalog_fock(spec, n_max=n_max)
    metric = pure_state_overlap(subject.overlap_candidate, rho)
    return {"check": "overlap", "metric": metric, "threshold": -tolerance,
            "pass": metric >= -tolerance, "seeds": {"against": spec.kind},
            "grid": ""}


def _positivity_entry(subject, seed, tol_scale):
    klm = check_positivity(subject.char_source, mode="quantum", seed=seed,
                           tol_scale=tol_scale).as_dict()
    bochner = check_positivity(subject.char_source, mode="classical", seed=seed,
                               tol_scale=tol_scale).as_dict()
    best = max((klm, bochner), key=lambda r: r["metric"] - r["threshold"])
    return {"check": "positivity", "metric": best["metric"],
            "threshold": best["threshold"],
            "pass": klm["pass"] or bochner["pass"],
            "seeds": {"base": seed}, "grid": best["grid"],
            "detail": {"klm": klm, "bochner": bochner}}


def _run_validate(args, argv):
    tokens = [t.strip() for t in args.checks.split(",") if t.strip()]
    unknown = [t for t in tokens if t not in _CHECK_TOKENS]
    if unknown:
        raise ValueError(f"unknown checks: {', '.join(unknown)}")
    if "all" in tokens:
        tokens = list(_ALL_CHECKS)
    subject = Subject(args.state, _grid_spec(args))
    tolerances = {"structural": args.tol_structural,
                  "hirschman": args.tol_hirschman,
                  "positivity": args.tol_positivity,
                  "overlap": args.tol_overlap,
                  "fixedpoint": args.tol_fixedpoint}
    entries = []
    for token in tokens:
        if token == "structural":
            reports = check_structural(subject.structural_source,
                                       kind=subject.structural_kind,
                                       tolerance=args.tol_structural)
            entries.extend(r.as_dict() for r in reports)
        elif token == "hirschman":
            entries.append(check_hirschman(subject.optical,
                                           tolerance=args.tol_hirschman).as_dict())
        elif token == "positivity":
            entries.append(_positivity_entry(subject, args.seed,
                                             args.tol_positivity))
        elif token in ("klm", "bochner"):
            mode = "quantum" if token == "klm" else "classical"
            entries.append(check_positivity(subject.char_source, mode=mode,
                                            seed=args.seed,
                                            tol_scale=args.tol_positivity).as_dict())
        elif token == "overlap":
            entries.append(_overlap_entry(subject, args.against,
                                          args.tol_overlap))
        elif token == "fixedpoint":
            entries.append(check_radon_fixed_point(
                subject.fixed_candidate,
                tolerance=args.tol_fixedpoint).as_dict())
    for entry in entries:
        _emit(entry, subject.label)
    payload = {"command": "validate", "state": subject.label,
               "seed": args.seed, "checks": entries,
               "tolerances": tolerances,
               "pass": all(e["pass"] for e in entries),
               "meta": _meta("validate", argv)}
    if args.json:
        _write_json(args.json, payload)
    return _exit_code(entries)


# -- conserve ----------------------------------------------------------------------


def _harmonic_entry(w, m, tolerance):
    g = moment_profile(w, m)
    fit = harmonic_residual(g)
    resid = ode_residual(g)
    l2 = float(math.sqrt(np.sum(resid ** 2) * (g.theta[1] - g.theta[0])))
    return {"check": f"harmonics-m{m}", "metric": fit.residual,
            "threshold": tolerance, "pass": fit.residual <= tolerance,
            "allowed": {str(k): [float(c), float(s)]
                        for k, (c, s) in sorted(fit.allowed.items())},
            # amplitudes at rounding level would drown the table
            "forbidden": {str(k): [float(c), float(s)]
                          for k, (c, s) in sorted(fit.forbidden.items())
                          if max(abs(c), abs(s)) >= 1e-14},
            "ode_l2": l2, "grid": w.spec.describe_optical()}, g


def _flux_entry(w, coupling, tolerance):
    flux = normalization_flux_cubic(w, coupling)
    theta = w.spec.theta
    dtheta = theta[1] - theta[0]
    return {"check": "flux", "metric": float(np.abs(flux).max()),
            "threshold": tolerance,
            "pass": float(np.abs(flux).max()) <= tolerance,
            "coupling": coupling,
            "at_quarter_pi": float(np.interp(math.pi / 4.0, theta, flux)),
            "l2": float(math.sqrt(np.sum(flux ** 2) * dtheta)),
            "theta_integral": float(np.sum(flux) * dtheta),
            "grid": w.spec.describe_optical()}


def _run_conserve(args, argv):
    subject = Subject(args.state, _grid_spec(args))
    w = subject.optical
    entries = []
    profiles = []
    for m in range(1, args.mmax + 1):
        entry, g = _harmonic_entry(w, m, args.tol_harmonic)
        entries.append(entry)
        profiles.append(g)
    if args.flux_c3 is not None:
        entries.append(_flux_entry(w, args.flux_c3, args.tol_flux))
    if subject.moment_source is not None:
        for m in range(1, args.mmax + 1):
            resid = symplectic_moment_residual(subject.moment_source, m)
            entries.append({"check": f"moment-m{m}", "metric": resid,
                            "threshold": args.tol_moment,
                            "pass": resid <= args.tol_moment, "grid": ""})
    for entry in entries:
        _emit(entry, subject.label)
    payload = {"command": "conserve", "state": subject.label,
               "mmax": args.mmax, "flux_c3": args.flux_c3,
               "checks": entries,
               "tolerances": {"harmonic": args.tol_harmonic,
                              "flux": args.tol_flux,
                              "moment": args.tol_moment},
               "pass": all(e["pass"] for e in entries),
               "meta": _meta("conserve", argv)}
    if args.json:
        _write_json(args.json, payload)
    if args.csv and profiles:
        columns = [profiles[0].theta] + [g.values for g in profiles]
        header = "theta," + ",".join(f"g{g.order}" for g in profiles)
        np.savetxt(args.csv, np.column_stack(columns), delimiter=",",
                   header=header, comments="")
    return _exit_code(entries)


# -- evolve ------------------------------------------------------------------------


def _run_evolve(args, argv):
    potential = PolynomialPotential.parse(args.potential)
    state = args.state
    if state.endswith(".json"):
        grid = load_grid(state)
        if not isinstance(grid, OpticalTomogramGrid):
            raise ValueError("evolve needs an optical tomogram input")
        state = grid
        label = os.path.basename(args.state)[:-5]
    else:
        label = _parse_state_spec(state).kind
        state = _parse_state_spec(state)
    report = drift_experiment(state, potential, args.t, n_max=args.n_max,
                              class_tol=args.tol_drift)
    if report["passed"] is None:
        print(f"{'drift':<14} {label:<14} {report['note']} SKIP")
        entries = []
    elif report["class_member"]:
        entries = [{"check": "drift", "metric": report["max_defect"],
                    "threshold": args.tol_drift,
                    "pass": bool(report["passed"]),
                    "grid": f"checkpoints={len(report['checkpoints'])}"}]
    else:
        entries = [{"check": "flux", "metric": report["flux"]["max_abs"],
                    "threshold": 1e-6, "pass": bool(report["passed"]),
                    "grid": ""}]
    for entry in entries:
        _emit(entry, label)
    payload = {"command": "evolve", "state": label, "t": args.t,
               "potential": potential.as_dict(), "report": report,
               "checks": entries,
               "tolerances": {"drift": args.tol_drift},
               "pass": all(e["pass"] for e in entries),
               "meta": _meta("evolve", argv)}
    if args.json:
        _write_json(args.json, payload)
    if args.csv and report.get("checkpoints"):
        np.savetxt(args.csv,
                   np.column_stack([report["checkpoints"],
                                    report["normalization_defect"]]),
                   delimiter=",", header="t,normalization_defect", comments="")
    return _exit_code(entries)


# -- transform ---------------------------------------------------------------------


def _run_transform(args, argv):
    subject = Subject(args.state, _grid_spec(args))
    summary = {}
    if args.op == "radon":
        w = subject.optical
        save_grid(w, args.out)
        summary = {"kind": "optical", "grid": w.spec.describe_optical(),
                   "normalization_defect": w.normalization_defect()}
        print(f"{'radon':<14} {subject.label:<14} {w.spec.describe_optical()} "
              f"defect={summary['normalization_defect']:.3e}")
    elif args.op == "iradon":
        W = inverse_radon_optical(subject.optical, _grid_spec(args))
        save_grid(W, args.out)
        summary = {"kind": "wigner", "grid": W.spec.describe_phase(),
                   "mass": W.mass()}
        print(f"{'iradon':<14} {subject.label:<14} {W.spec.describe_phase()} "
              f"mass={summary['mass']:.9f}")
    else:
        grid = characteristic_grid(subject.char_source,
                                   half_width=args.half_width, n=args.n_phi)
        mu_mesh, nu_mesh = np.meshgrid(grid.mu, grid.nu, indexing="ij")
        samples = CharacteristicSamples(
            np.column_stack([mu_mesh.ravel(), nu_mesh.ravel()]),
            grid.values.ravel())
        save_characteristic(samples, args.out)
        center = grid.values[len(grid.mu) // 2, len(grid.nu) // 2]
        summary = {"kind": "characteristic", "n": args.n_phi,
                   "half_width": args.half_width,
                   "phi_at_origin": [float(center.real), float(center.imag)]}
        print(f"{'char':<14} {subject.label:<14} "
              f"{args.n_phi}x{args.n_phi} phi(0,0)={center.real:.9f}")
    payload = {"command": "transform", "state": subject.label, "op": args.op,
               "out": args.out, "summary": summary, "pass": True,
               "meta": _meta("transform", argv)}
    if args.json:
        _write_json(args.json, payload)
    return 0


# -- catalog and report ------------------------------------------------------------


def _run_catalog(args, argv):
    states = []
    for name, entry in available_states():
        reps = [r for r in ("optical", "symplectic", "wigner", "fock")
                if entry.has(r)]
        states.append({"name": name, "summary": entry.summary,
                       "genuine": entry.genuine, "diagnosis": entry.diagnosis,
                       "representations": reps})
        status = "genuine" if entry.genuine else "counterexample"
        print(f"{name:<14} {status:<15} {','.join(reps):<31} {entry.summary}")
    payload = {"command": "catalog", "states": states, "pass": True,
               "meta": _meta("catalog", argv)}
    if args.json:
        _write_json(args.json, payload)
    return 0


def _run_report(args, argv):
    reports = []
    failed = False
    for path in args.merge:
        with open(path) as fh:
            loaded = json.load(fh)
        if "command" not in loaded or "pass" not in loaded:
            raise ValueError(f"{path} is not a tomokit report")
        reports.append(loaded)
        verdict = "PASS" if loaded["pass"] else "FAIL"
        failed = failed or not loaded["pass"]
        print(f"{loaded['command']:<14} {loaded.get('state', '-'):<14} "
              f"{os.path.basename(path)} {verdict}")
    payload = {"command": "report", "reports": reports, "pass": not failed,
               "meta": _meta("report", argv)}
    if args.json:
        _write_json(args.json, payload)
    return 1 if failed else 0


# -- parser ------------------------------------------------------------------------


def _add_grid_options(sub):
    sub.add_argument("--x-max", type=_positive_float, default=None,
                     help="half-width of the quadrature axis (default 7)")
    sub.add_argument("--n-x", type=int, default=None,
                     help="quadrature points per row (default 281)")
    sub.add_argument("--n-theta", type=int, default=None,
                     help="angle rows on [0, pi) (default 64)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="tomokit",
        description="Tomogram membership, conservation, and evolution checks.")
    subparsers = parser.add_subparsers(dest="command", required=True)

    cat = subparsers.add_parser("catalog", help="list built-in states")
    cat.add_argument("--json", default=None, help="write the table as JSON")
    cat.set_defaults(handler=_run_catalog)

    tr = subparsers.add_parser("transform", help="change representation")
    tr.add_argument("--state", required=True,
                    help="catalog name[:k=v,..] or grid manifest path")
    tr.add_argument("--op", required=True, choices=("radon", "iradon", "char"))
    tr.add_argument("--out", required=True, help="output manifest or CSV path")
    tr.add_argument("--json", default=None, help="write a summary report")
    tr.add_argument("--half-width", type=_positive_float, default=12.0,
                    help="characteristic-mesh half width (char only)")
    tr.add_argument("--n-phi", type=int, default=241,
                    help="characteristic-mesh points per axis (char only)")
    _add_grid_options(tr)
    tr.set_defaults(handler=_run_transform)

    val = subparsers.add_parser("validate", help="membership checks")
    val.add_argument("--state", required=True,
                     help="catalog name[:k=v,..] or grid manifest path")
    val.add_argument("--checks", default="all",
                     help="comma list: structural,hirschman,positivity,"
                          "klm,bochner,overlap,fixedpoint or all")
    val.add_argument("--against", default="fock0",
                     help="pure state for the overlap pairing")
    val.add_argument("--seed", type=int, default=42,
                     help="base seed for sampled point sets")
    val.add_argument("--json", default=None, help="write the full report")
    val.add_argument("--tol-structural", type=_positive_float, default=1e-8)
    val.add_argument("--tol-hirschman", type=_positive_float, default=1e-3)
    val.add_argument("--tol-positivity", type=_positive_float, default=1e-8,
                     help="eigenvalue floor scale for klm and bochner")
    val.add_argument("--tol-overlap", type=_positive_float, default=1e-6)
    val.add_argument("--tol-fixedpoint", type=_positive_float, default=5e-3)
    _add_grid_options(val)
    val.set_defaults(handler=_run_validate)

    con = subparsers.add_parser("conserve", help="conservation checks")
    con.add_argument("--state", required=True,
                     help="catalog name[:k=v,..] or grid manifest path")
    con.add_argument("--mmax", type=int, default=4,
                     help="highest moment order to test")
    con.add_argument("--flux-c3", type=float, default=None,
                     help="cubic coupling for the flux functional")
    con.add_argument("--json", default=None, help="write the full report")
    con.add_argument("--csv", default=None, help="write moment profiles as CSV")
    con.add_argument("--tol-harmonic", type=_positive_float, default=1e-6)
    con.add_argument("--tol-flux", type=_positive_float, default=1e-6)
    con.add_argument("--tol-moment", type=_positive_float, default=1e-8)
    _add_grid_options(con)
    con.set_defaults(handler=_run_conserve)

    ev = subparsers.add_parser("evolve", help="normalization drift experiment")
    ev.add_argument("--state", required=True,
                    help="catalog name[:k=v,..] or optical manifest path")
    ev.add_argument("--potential", required=True,
                    help='for example "c2=0.5, c3=0.1"')
    ev.add_argument("--t", type=_positive_float, required=True,
                    help="evolution time")
    ev.add_argument("--n-max", type=int, default=DEFAULT_N_MAX,
                    help="number-basis cutoff for the propagator")
    ev.add_argument("--json", default=None, help="write the full report")
    ev.add_argument("--csv", default=None, help="write the defect trace as CSV")
    ev.add_argument("--tol-drift", type=_positive_float, default=1e-6)
    ev.set_defaults(handler=_run_evolve)

    rep = subparsers.add_parser("report", help="merge JSON reports")
    rep.add_argument("--merge", nargs="+", required=True,
                     help="report files to combine")
    rep.add_argument("--json", default=None, help="write the merged report")
    rep.set_defaults(handler=_run_report)

    return parser


def main(argv=None):
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args, argv)
    except (ValueError, OSError) as exc:
        print(f"tomokit: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
