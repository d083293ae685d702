"""Command-line interface.

Subcommands: coherence (state or expectation files), fig1 (panel data
regeneration), harness (randomized verification campaigns), aklt, squeeze.
All outputs are CSVs with documented headers; every command is
deterministic given its flags and seed (COHKIT_SEED is the fallback seed).

Exit codes: 0 success, 2 usage or parse failure, 3 domain-invariant
violation, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

import numpy as np

from . import aklt as akltmod
from . import channels, coherence, dynamics, states
from .errors import (
    CohkitError,
    ConvergenceFailureError,
    IntegrationUnstableError,
    ParseError,
)
from .opbasis import gell_mann_basis, parse_basis, pauli_basis, spin_truncated_basis
from .statefiles import load_expectations, load_state

FIG1A_HEADER = ["mu", "C", "C_L", "delta"]
FIG1B_HEADER = ["mu", "C", "C_L", "delta", "C_tr", "C_L_tr", "delta_tr"]
FIG1C_HEADER = ["t", "n", "C", "C_L", "delta", "norm", "basis"]
SQUEEZE_HEADER = ["t", "C", "C_L", "delta", "norm", "basis"]
AKLT_HEADER = ["g", "r", "C_full", "C_truncated_frobenius", "C_truncated_schatten1",
               "C_analytic_full", "C_analytic_truncated"]
SCAN_HEADER = ["dim", "trials", "violations", "frequency", "mean_violation"]
C2B_HEADER = ["dim", "n_kraus", "trials", "violations"]


def _default_seed() -> int:
    raw = os.environ.get("COHKIT_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        return 0


def _write_csv(path: str, header: list[str], rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


def _fmt(x: float) -> str:
    return repr(float(x))


# ---------------------------------------------------------------------------
# coherence
# ---------------------------------------------------------------------------

def _coherence_from_state(args) -> int:
    rho = load_state(args.state)
    tag = args.basis or f"standard:{rho.dim}"
    basis = parse_basis(tag)
    if basis.dim != rho.dim:
        raise ParseError(
            f"basis {tag!r} acts on dimension {basis.dim}, state has {rho.dim}"
        )
    rows = []
    if rho.split is not None and basis.product_structure is not None:
        ba, bb = basis.product_structure
        rep = coherence.report(rho, ba, bb, norm=args.norm, approximate=args.approximate)
        print(f"C         = {rep.C:.12g}")
        print(f"C_L       = {rep.C_L:.12g}")
        print(f"delta     = {rep.delta:.12g}")
        print(f"slack     = {rep.slack:.12g}")
        print(f"norm      = {rep.norm}")
        print(f"truncated = {'yes' if rep.truncated else 'no'}")
        rows.append([_fmt(rep.C), _fmt(rep.C_L), _fmt(rep.delta), _fmt(rep.slack),
                     rep.norm, rep.truncated])
        header = ["C", "C_L", "delta", "slack", "norm", "truncated"]
    else:
        c = coherence.coherence_total(rho, basis, norm=args.norm,
                                      approximate=args.approximate)
        norm = args.norm or ("schatten1" if basis.complete else "frobenius")
        print(f"C         = {c:.12g}")
        print(f"norm      = {norm}")
        print(f"truncated = {'yes' if not basis.complete else 'no'}")
        rows.append([_fmt(c), norm, not basis.complete])
        header = ["C", "norm", "truncated"]
    if args.csv:
        _write_csv(args.csv, header, rows)
    return 0


def _coherence_from_expectations(args) -> int:
    data = load_expectations(args.expectations)
    basis = parse_basis(data.basis_tag)
    labels = set(basis.labels)
    proj_labels = [f"P{k}" for k in range(basis.dim)]

    extra = set(data.values) - labels - set(proj_labels)
    if extra:
        raise ParseError(f"unknown operator labels in expectations: {sorted(extra)}")
    missing = labels - set(data.values)
    if missing:
        raise ParseError(f"missing expectations for operators: {sorted(missing)}")
    values = np.array([data.values[l] for l in basis.labels])

    if data.dephased is not None:
        if set(data.dephased) != labels:
            raise ParseError("dephased_expectations must cover exactly the basis labels")
        dephased = np.array([data.dephased[l] for l in basis.labels])
    else:
        missing_p = [p for p in proj_labels if p not in data.values]
        if missing_p:
            raise ParseError(f"diagonal projector values missing: {missing_p}")
        probs = np.array([data.values[p] for p in proj_labels])
        dephased = coherence.dephased_values_from_probabilities(basis, probs)

    c = coherence.coherence_from_values(basis, values, dephased, norm=args.norm,
                                        approximate=args.approximate)
    norm = args.norm or ("schatten1" if basis.complete else "frobenius")
    print(f"C         = {c:.12g}")
    print(f"norm      = {norm}")
    print(f"truncated = {'yes' if not basis.complete else 'no'}")
    header = ["C", "norm", "truncated"]
    row = [_fmt(c), norm, not basis.complete]
    if basis.product_structure is not None and basis.complete:
        d = coherence.global_correlation_from_values(basis, values, dephased,
                                                     norm=args.norm,
                                                     approximate=args.approximate)
        print(f"delta     = {d:.12g}")
        header.append("delta")
        row.append(_fmt(d))
    if args.csv:
        _write_csv(args.csv, header, [row])
    return 0


def cmd_coherence(args) -> int:
    if args.state:
        return _coherence_from_state(args)
    return _coherence_from_expectations(args)


# ---------------------------------------------------------------------------
# fig1
# ---------------------------------------------------------------------------

def _fig1_ab(dim: int, points: int, out: str):
    full = gell_mann_basis(3) if dim == 3 else pauli_basis()
    rows = []
    for mu in np.linspace(0.0, 1.0, points):
        rho = states.separable_entangled_family(dim, float(mu))
        rep = coherence.report(rho, full, full, norm="schatten1")
        row = [_fmt(mu), _fmt(rep.C), _fmt(rep.C_L), _fmt(rep.delta)]
        if dim == 3:
            tr = spin_truncated_basis(2)
            rep_tr = coherence.report(rho, tr, tr, norm="frobenius")
            row += [_fmt(rep_tr.C), _fmt(rep_tr.C_L), _fmt(rep_tr.delta)]
        rows.append(row)
    _write_csv(out, FIG1A_HEADER if dim == 2 else FIG1B_HEADER, rows)


def _fig1_c(ns, gamma, t_max, dt, sample_every, out: str):
    rows = []
    for n in ns:
        for kind in ("gellmann", "spin"):
            if kind == "gellmann":
                ba = bb = gell_mann_basis(n + 1)
                norm, tag = "schatten1", f"gellmann:{n + 1}"
            else:
                ba = bb = spin_truncated_basis(n)
                norm, tag = "frobenius", f"spin:{n}"
            traj = dynamics.evolve_squeezing(n, gamma, t_max=t_max, dt=dt,
                                             sample_every=sample_every,
                                             basis_a=ba, basis_b=bb, norm=norm)
            for t, rep in zip(traj.times, traj.reports):
                rows.append([_fmt(t), n, _fmt(rep.C), _fmt(rep.C_L), _fmt(rep.delta),
                             rep.norm, f"prod({tag},{tag})"])
    _write_csv(out, FIG1C_HEADER, rows)


def _aklt_rows(g_values, r: int):
    rows = []
    for g in g_values:
        p = akltmod.AkltParams(float(g), r)
        full = akltmod.aklt_coherence_numeric(p, "prod(gellmann:3,gellmann:3)",
                                              norm="schatten1")
        tr_f = akltmod.aklt_coherence_numeric(p, "prod(spin:2,spin:2)", norm="frobenius")
        tr_s = akltmod.aklt_coherence_numeric(p, "prod(spin:2,spin:2)",
                                              norm="schatten1", approximate=True)
        rows.append([
            _fmt(g), r, _fmt(full.C), _fmt(tr_f.C), _fmt(tr_s.C),
            _fmt(akltmod.aklt_coherence_analytic(p, "full")),
            _fmt(akltmod.aklt_coherence_analytic(p, "truncated")),
        ])
    return rows


def cmd_fig1(args) -> int:
    if args.panel == "a":
        _fig1_ab(2, args.points, args.out)
    elif args.panel == "b":
        _fig1_ab(3, args.points, args.out)
    elif args.panel == "c":
        ns = [int(x) for x in args.n.split(",") if x]
        _fig1_c(ns, args.gamma, args.t_max, args.dt, args.sample_every, args.out)
    else:
        grid = np.linspace(args.g_min, args.g_max, args.points)
        grid = [g for g in grid if abs(1 + 2 * g) >= 1e-6]
        _write_csv(args.out, AKLT_HEADER, _aklt_rows(grid, args.r))
    print(f"wrote {args.out}")
    return 0


# ---------------------------------------------------------------------------
# harness
# ---------------------------------------------------------------------------

def cmd_harness(args) -> int:
    try:
        with open(args.config) as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ParseError(f"{args.config}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"{args.config}: line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(cfg, dict) or not ({"c2b", "scan"} & set(cfg)):
        raise ParseError(f"{args.config}: config needs a 'c2b' and/or 'scan' section")
    os.makedirs(args.out_dir, exist_ok=True)

    if "c2b" in cfg:
        c = cfg["c2b"]
        try:
            params = [tuple(p) for p in c["params"]]
            trials = int(c["trials"])
            seed = int(c.get("seed", _default_seed()))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"{args.config}: bad c2b section: {exc}") from exc
        rows = channels.c2b_campaign(params, trials, seed=seed)
        out = os.path.join(args.out_dir, "c2b.csv")
        _write_csv(out, C2B_HEADER,
                   [[r.dim, r.n_kraus, r.trials, r.violations] for r in rows])
        total = sum(r.violations for r in rows)
        print(f"c2b: {len(rows)} parameter sets x {trials} trials, "
              f"{total} violations -> {out}")

    if "scan" in cfg:
        s = cfg["scan"]
        try:
            dims = [int(d) for d in s["dims"]]
            trials = int(s["trials"])
            seed = int(s.get("seed", _default_seed()))
            split_rule = s.get("split_rule", "bernoulli")
            ensemble = s.get("ensemble", "gaussian-offdiag")
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"{args.config}: bad scan section: {exc}") from exc
        rows = []
        for d in dims:
            r = channels.truncation_violation_scan(d, trials, split_rule=split_rule,
                                                   seed=seed, ensemble=ensemble)
            rows.append([r.dim, r.trials, round(r.violation_frequency * r.trials),
                         _fmt(r.violation_frequency), _fmt(r.mean_violation)])
            print(f"scan dim={d}: frequency {100 * r.violation_frequency:.3f}%, "
                  f"mean violation {100 * r.mean_violation:.3f}%")
        out = os.path.join(args.out_dir, "scan.csv")
        _write_csv(out, SCAN_HEADER, rows)
        print(f"scan -> {out}")
    return 0


# ---------------------------------------------------------------------------
# aklt / squeeze
# ---------------------------------------------------------------------------

def cmd_aklt(args) -> int:
    grid = np.linspace(args.g_min, args.g_max, args.points)
    grid = [g for g in grid if abs(1 + 2 * g) >= 1e-6]
    _write_csv(args.out, AKLT_HEADER, _aklt_rows(grid, args.r))
    print(f"wrote {args.out}")
    return 0


def cmd_squeeze(args) -> int:
    n = args.n
    if args.basis == "gellmann":
        ba = bb = gell_mann_basis(n + 1)
        tag = f"gellmann:{n + 1}"
    else:
        ba = bb = spin_truncated_basis(n)
        tag = f"spin:{n}"
    traj = dynamics.evolve_squeezing(n, args.gamma, t_max=args.t_max, dt=args.dt,
                                     sample_every=args.sample_every,
                                     basis_a=ba, basis_b=bb, norm=args.norm,
                                     approximate=args.approximate,
                                     dephase_mode=args.dephase)
    rows = [[_fmt(t), _fmt(rep.C), _fmt(rep.C_L), _fmt(rep.delta), rep.norm,
             f"prod({tag},{tag})"]
            for t, rep in zip(traj.times, traj.reports)]
    _write_csv(args.out, SQUEEZE_HEADER, rows)
    print(f"wrote {args.out}")
    return 0


# ---------------------------------------------------------------------------
# parser / entry
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cohkit",
                                description="coherence from measurement observables")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("coherence", help="coherence of a state or expectation file")
    src = c.add_mutually_exclusive_group(required=True)
    src.add_argument("--state", help="density matrix JSON file")
    src.add_argument("--expectations", help="measured expectation JSON file")
    c.add_argument("--basis", help="basis tag (default standard:D of the state)")
    c.add_argument("--norm", choices=["schatten1", "frobenius"])
    c.add_argument("--approximate", action="store_true",
                   help="allow Schatten-1 on truncated bases (estimate only)")
    c.add_argument("--csv", help="also write the report as CSV")
    c.set_defaults(func=cmd_coherence)

    f = sub.add_parser("fig1", help="regenerate figure-panel data as CSV")
    f.add_argument("--panel", choices=["a", "b", "c", "d"], required=True)
    f.add_argument("--out", required=True)
    f.add_argument("--points", type=int, default=101, help="grid points (panels a/b/d)")
    f.add_argument("--n", default="4,8", help="comma-separated ensemble sizes (panel c)")
    f.add_argument("--gamma", type=float, default=1.0, help="dephasing rate (panel c)")
    f.add_argument("--t-max", type=float, default=2.0)
    f.add_argument("--dt", type=float, default=1e-3)
    f.add_argument("--sample-every", type=int, default=10)
    f.add_argument("--g-min", type=float, default=-2.0, help="coupling range (panel d)")
    f.add_argument("--g-max", type=float, default=2.0)
    f.add_argument("--r", type=int, default=2, help="site separation (panel d)")
    f.set_defaults(func=cmd_fig1)

    h = sub.add_parser("harness", help="randomized verification campaigns")
    h.add_argument("--config", required=True, help="JSON config file")
    h.add_argument("--out-dir", required=True)
    h.set_defaults(func=cmd_harness)

    a = sub.add_parser("aklt", help="coherence sweep of the spin-1 chain state")
    a.add_argument("--g-min", type=float, default=-2.0)
    a.add_argument("--g-max", type=float, default=2.0)
    a.add_argument("--points", type=int, default=101)
    a.add_argument("--r", type=int, default=2)
    a.add_argument("--out", required=True)
    a.set_defaults(func=cmd_aklt)

    s = sub.add_parser("squeeze", help="dephased two-axis squeezing trajectory")
    s.add_argument("--n", type=int, default=4)
    s.add_argument("--gamma", type=float, default=1.0)
    s.add_argument("--t-max", type=float, default=2.0)
    s.add_argument("--dt", type=float, default=1e-3)
    s.add_argument("--sample-every", type=int, default=10)
    s.add_argument("--basis", choices=["gellmann", "spin"], default="gellmann")
    s.add_argument("--norm", choices=["schatten1", "frobenius"])
    s.add_argument("--approximate", action="store_true")
    s.add_argument("--dephase", choices=["both", "joint"], default="both")
    s.add_argument("--seed", type=int, default=None,
                   help="reserved; the evolution is deterministic")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_squeeze)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ConvergenceFailureError, IntegrationUnstableError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 4
    except CohkitError as exc:
        print(f"invariant violation: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
