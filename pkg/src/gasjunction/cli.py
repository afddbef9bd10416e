"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 solver-domain error, 3 internal
consistency failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import reference
from .errors import (
    CFLViolation,
    ConsistencyError,
    DomainError,
    GasJunctionError,
    NoConvergence,
    NonConvergedQuadrature,
    NoSubsonicSolution,
    ProblemFileError,
)
from .euler import GaussianMixture, solve_euler_junction
from .gas import GasLaw, State
from .junction import CouplingKind, JunctionProblem, dissipation_report, solve_junction
from .kinetic import MaxwellianTrace, Side, half_flux, kinetic_rho_star
from .levelset import level_curves
from .netsim import SimConfig, network_from_states, simulate
from .problem import LevelsetSection, load_problem

EXIT_OK, EXIT_INPUT, EXIT_DOMAIN, EXIT_CONSISTENCY = 0, 1, 2, 3

COUPLING_ORDER = (
    CouplingKind.EQUAL_PRESSURE,
    CouplingKind.EQUAL_MOMENTUM_FLUX,
    CouplingKind.EQUAL_BERNOULLI,
    CouplingKind.ARTIFICIAL_DENSITY,
)


class UsageError(GasJunctionError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def fmt(x) -> str:
    """Ten significant digits; ``nan`` for missing values."""
    if x is None:
        return "nan"
    return f"{float(x):.9e}"


def _rounded(x):
    if x is None or not math.isfinite(x):
        return None
    return float(fmt(x))


def _write_csv(header: Sequence[str], rows, stream) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) if isinstance(v, float) else v for v in row])


def _emit(name: str, header, rows, payload, args) -> None:
    """Write a table to ``--out`` in the chosen format, or JSON to stdout."""
    if args.out is not None:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        if args.format == "json":
            (out / f"{name}.json").write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        else:
            with open(out / f"{name}.csv", "w", newline="") as fh:
                _write_csv(header, rows, fh)
    elif args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))


def _text_wanted(args) -> bool:
    return not (args.format == "json" and args.out is None)


def _coupling(text: Optional[str]) -> Optional[CouplingKind]:
    if text is None:
        return None
    try:
        return CouplingKind.parse(text)
    except ValueError:
        raise UsageError(f"--coupling: unknown coupling {text!r}") from None


def _junction(path) -> JunctionProblem:
    pf = load_problem(path)
    if pf.junction is None:
        raise ProblemFileError(f"{path}: missing [junction] section")
    return pf.junction


# ---------------------------------------------------------------------------
# solve


def cmd_solve(args) -> int:
    problem = _junction(args.problem)
    coupling = _coupling(args.coupling) or problem.coupling
    law = problem.law
    sol = solve_junction(law, problem, coupling, tol=args.tol)
    rep = dissipation_report(law, sol)
    ref = reference.TRACES[coupling] if reference.is_benchmark(problem) else None
    rows = []
    for k, (a, s0, s) in enumerate(zip(problem.areas, problem.initial, sol.traces)):
        region = sol.regions[k].value if sol.regions else ""
        rows.append([k + 1, a, s0.rho, s0.momentum, s.rho, s.momentum, s.u, sol.wave_types[k].value, region])
    header = ["pipe", "area", "rho_init", "mom_init", "rho", "mom", "u", "wave2", "region"]
    payload = {
        "coupling": coupling.value,
        "rho_star": _rounded(sol.rho_star),
        "mass_residual": _rounded(sol.mass_residual),
        "energy_flux_sum": _rounded(sol.energy_flux_sum),
        "bernoulli_identity": _rounded(rep.bernoulli_identity),
        "pipes": [
            {"pipe": r[0], "rho": _rounded(r[4]), "mom": _rounded(r[5]), "u": _rounded(r[6]),
             "wave2": r[7], "region": r[8] or None}
            for r in rows
        ],
    }
    if ref is not None:
        payload["reference"] = [{"rho": r, "mom": m} for r, m in ref]
    _emit("solve", header, rows, payload, args)
    if _text_wanted(args):
        print(f"coupling: {coupling.value}")
        if sol.rho_star is not None:
            print(f"rho*: {fmt(sol.rho_star)}")
        print(f"{'pipe':>4} {'rho':>17} {'rho*u':>17} {'wave2':>12} {'region':>6}")
        for r in rows:
            print(f"{r[0]:>4} {fmt(r[4]):>17} {fmt(r[5]):>17} {r[7]:>12} {r[8]:>6}")
        print(f"mass residual: {fmt(sol.mass_residual)}")
        print(f"sum A G: {fmt(sol.energy_flux_sum)}")
        if ref is not None:
            print("reference traces (4 decimals) and deltas:")
            for k, ((rr, rm), s) in enumerate(zip(ref, sol.traces)):
                print(f"{k + 1:>4} {rr:+.4f} {rm:+.4f}   d_rho={s.rho - rr:+.2e} d_mom={s.momentum - rm:+.2e}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# compare


def compare_all(problem: JunctionProblem, tol: Optional[float] = None) -> dict:
    """Solve every coupling; failures are kept as error strings."""
    out = {}
    for c in COUPLING_ORDER:
        try:
            out[c] = solve_junction(problem.law, problem, c, tol=tol)
        except (NoSubsonicSolution, DomainError, NoConvergence) as exc:
            out[c] = f"{type(exc).__name__}: {exc}"
    return out


def cmd_compare(args) -> int:
    problem = _junction(args.problem)
    results = compare_all(problem, args.tol)
    bench = reference.is_benchmark(problem)
    rows = []
    payload = {}
    for c, sol in results.items():
        if isinstance(sol, str):
            rows.append([c.value, "", "", "", "", "", sol])
            payload[c.value] = {"status": sol}
            continue
        for k, s in enumerate(sol.traces):
            rows.append([c.value, k + 1, s.rho, s.momentum, sol.wave_types[k].value, sol.energy_flux_sum, "ok"])
        payload[c.value] = {
            "status": "ok",
            "rho_star": _rounded(sol.rho_star),
            "energy_flux_sum": _rounded(sol.energy_flux_sum),
            "traces": [[_rounded(s.rho), _rounded(s.momentum)] for s in sol.traces],
            "wave2": [w.value for w in sol.wave_types],
        }
    solved = {c: s for c, s in results.items() if not isinstance(s, str)}
    ranking = sorted(solved, key=lambda c: solved[c].energy_flux_sum)
    payload["dissipation_ranking"] = [c.value for c in ranking]
    _emit("compare", ["coupling", "pipe", "rho", "mom", "wave2", "energy_flux_sum", "status"], rows, payload, args)
    if not _text_wanted(args):
        return EXIT_OK
    for c, sol in results.items():
        print(f"[{c.value}]")
        if isinstance(sol, str):
            print(f"  failed: {sol}")
            continue
        if sol.rho_star is not None:
            print(f"  rho*: {fmt(sol.rho_star)}")
        ref = reference.TRACES[c] if bench else None
        for k, s in enumerate(sol.traces):
            line = f"  pipe {k + 1}: rho={fmt(s.rho)} rho*u={fmt(s.momentum)} wave2={sol.wave_types[k].value}"
            if ref is not None:
                rr, rm = ref[k]
                expect = reference.WAVES[c][k].value
                line += f"  ref=({rr:+.4f}, {rm:+.4f}) delta=({s.rho - rr:+.1e}, {s.momentum - rm:+.1e})"
                line += f" ref_wave={expect}"
            print(line)
        print(f"  sum A G (computed at traces): {fmt(sol.energy_flux_sum)}")
        if bench:
            printed = reference.PRINTED_DISSIPATION[c]
            shown = "approximately 0" if printed is None else f"{printed:+.4e}"
            print(f"  reference dissipation row (not consistent with the traces): {shown}")
    if ranking:
        print("dissipation ranking (most negative first): " + ", ".join(c.value for c in ranking))
    return EXIT_OK


# ---------------------------------------------------------------------------
# levelset


def cmd_levelset(args) -> int:
    pf = load_problem(args.problem)
    sec = pf.levelset or LevelsetSection()
    curves = level_curves(pf.law, sec.base_state, sec.quantities, sec.rho_range, sec.points, sec.velocity_range)
    rows = [[c.quantity, name, r, m] for c in curves for name, r, m in c.points()]
    header = ["quantity", "branch", "rho", "mom"]
    payload = {
        c.quantity: {
            "level": _rounded(c.level),
            "bounded": c.bounded,
            "branches": {n: {"rho": [_rounded(x) for x in r], "mom": [_rounded(x) for x in m]}
                         for n, (r, m) in c.branches.items()},
        }
        for c in curves
    }
    if args.out is None and args.format == "csv":
        _write_csv(header, rows, sys.stdout)
        return EXIT_OK
    _emit("levelset", header, rows, payload, args)
    if _text_wanted(args):
        for c in curves:
            extent = "bounded" if c.bounded else "unbounded"
            print(f"{c.quantity}: level={fmt(c.level)} {extent} points={sum(len(r) for r, _ in c.branches.values())}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# simulate


def cmd_simulate(args) -> int:
    pf = load_problem(args.problem)
    if pf.junction is None:
        raise ProblemFileError(f"{args.problem}: missing [junction] section")
    if pf.simulation is None:
        raise ProblemFileError(f"{args.problem}: missing [simulation] section")
    sim, jp = pf.simulation, pf.junction
    coupling = _coupling(args.coupling) or jp.coupling
    net = network_from_states(pf.law, jp.areas, jp.initial, sim.cells, sim.length, coupling, sim.far_end)
    res = simulate(net, SimConfig(cfl=sim.cfl, t_end=sim.t_end, output_every=sim.output_every))
    rep = res.report

    snap_rows = []
    for t, pipes in res.snapshots:
        for k, p in enumerate(pipes):
            for x, r, u in zip(p.centers(), p.rho, p.velocity()):
                snap_rows.append([t, k + 1, float(x), float(r), float(u)])
    d = len(jp.areas)
    log_header = ["t", "rho_star"] + [f"{q}_{k + 1}" for k in range(d) for q in ("rho", "mom")]
    log_header += ["energy_flux_sum", "mass_residual"]
    log_rows = []
    for rec in res.junction_log:
        row = [rec.t, rec.rho_star if rec.rho_star is not None else math.nan]
        for s in rec.traces:
            row += [s.rho, s.momentum]
        log_rows.append(row + [rec.energy_flux_sum, rec.mass_residual])

    if args.out is not None:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        if args.format == "json":
            (out / "snapshots.json").write_text(json.dumps(
                [dict(zip(("t", "pipe", "x", "rho", "u"), [_rounded(v) if isinstance(v, float) else v for v in r]))
                 for r in snap_rows]) + "\n")
            (out / "junction.json").write_text(json.dumps(
                [dict(zip(log_header, [_rounded(v) for v in r])) for r in log_rows]) + "\n")
        else:
            with open(out / "snapshots.csv", "w", newline="") as fh:
                _write_csv(["t", "pipe", "x", "rho", "u"], snap_rows, fh)
            with open(out / "junction.csv", "w", newline="") as fh:
                _write_csv(log_header, log_rows, fh)

    summary = {
        "steps": res.steps,
        "t_end": _rounded(net.t),
        "mass_initial": _rounded(rep.mass[0] - rep.mass_defect[0]) if rep.mass else _rounded(net.mass()),
        "mass_final": _rounded(net.mass()),
        "max_mass_defect": _rounded(rep.max_mass_defect),
        "max_energy_budget": _rounded(rep.max_energy_budget),
        "energy_nonincreasing": rep.max_energy_budget <= 1e-10,
        "omega_min": _rounded(min(rep.omega_min, default=net.invariant_range()[0])),
        "omega_max": _rounded(max(rep.omega_max, default=net.invariant_range()[1])),
        "rho_star_first": _rounded(res.junction_log[0].rho_star) if res.junction_log else None,
        "rho_star_last": _rounded(res.junction_log[-1].rho_star) if res.junction_log else None,
    }
    if _text_wanted(args):
        for key, value in summary.items():
            print(f"{key}: {fmt(value) if isinstance(value, float) else value}")
    else:
        print(json.dumps(summary, indent=2, sort_keys=True))
    return EXIT_OK


# ---------------------------------------------------------------------------
# kinetic / euler


def _floats(text: str, n: int, flag: str) -> tuple:
    try:
        vals = tuple(float(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"{flag}: expected {n} comma-separated numbers, got {text!r}") from None
    if len(vals) != n or not all(math.isfinite(v) for v in vals):
        raise UsageError(f"{flag}: expected {n} comma-separated finite numbers, got {text!r}")
    return vals


def _areas(text: Optional[str], d: int) -> tuple:
    if text is None:
        return (1.0,) * d
    vals = _floats(text, len(text.split(",")), "--areas")
    if len(vals) != d:
        raise UsageError(f"--areas: {len(vals)} entries for {d} inflows")
    if any(not a > 0.0 for a in vals):
        raise UsageError("--areas: areas must be positive")
    return vals


def cmd_kinetic(args) -> int:
    if args.problem is not None:
        jp = _junction(args.problem)
        law, areas, states = jp.law, jp.areas, list(jp.initial)
    else:
        if not args.inflow:
            raise UsageError("kinetic: give a problem file or at least one --inflow RHO,MOM")
        try:
            law = GasLaw(args.kappa, args.gamma)
        except DomainError as exc:
            raise UsageError(str(exc)) from None
        states = []
        for text in args.inflow:
            rho, mom = _floats(text, 2, "--inflow")
            if rho < 0.0 or (rho == 0.0 and mom != 0.0):
                raise UsageError(f"--inflow: ({rho}, {mom}) is not an admissible state")
            states.append(State.from_conserved(rho, mom))
        areas = _areas(args.areas, len(states))
    incoming = [MaxwellianTrace(s, Side.INCOMING) for s in states]
    rho_star = kinetic_rho_star(law, areas, incoming)
    inflow = -math.fsum(a * g.mass_flux(law) for a, g in zip(areas, incoming))
    outflow = math.fsum(areas) * half_flux(law, rho_star)
    payload = {"rho_star": _rounded(rho_star), "inflow_mass": _rounded(inflow),
               "outflow_mass": _rounded(outflow), "mass_residual": _rounded(outflow - max(inflow, 0.0))}
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for key, value in payload.items():
            print(f"{key}: {fmt(value)}")
    return EXIT_OK


def cmd_euler(args) -> int:
    if not args.inflow:
        raise UsageError("euler: give at least one --inflow RHO,U,THETA")
    comps = []
    for text in args.inflow:
        rho, u, theta = _floats(text, 3, "--inflow")
        if rho < 0.0 or not theta > 0.0:
            raise UsageError(f"--inflow: need rho >= 0 and theta > 0, got {text!r}")
        comps.append(GaussianMixture(((rho, u, theta),), incoming=True))
    areas = _areas(args.areas, len(comps))
    res = solve_euler_junction(areas, comps)
    payload = {
        "rho_star": _rounded(res.rho_star),
        "theta_star": _rounded(res.theta_star),
        "mass_residual": _rounded(res.mass_residual),
        "energy_residual": _rounded(res.energy_residual),
        "entropy_flux_sum": _rounded(res.entropy_flux_sum),
        "inflow_mass": _rounded(res.inflow_mass),
        "inflow_energy": _rounded(res.inflow_energy),
    }
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for key, value in payload.items():
            print(f"{key}: {fmt(value)}")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gasjunction", description="Isentropic gas junction solver.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, coupling=True, tol=True):
        if coupling:
            p.add_argument("--coupling", help="artificial_density, equal_pressure, "
                                              "equal_momentum_flux or equal_bernoulli")
        if tol:
            p.add_argument("--tol", type=float, help="solver tolerance")
        p.add_argument("--out", help="directory for output files")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("solve", help="solve one junction Riemann problem")
    p.add_argument("problem")
    common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("compare", help="solve with all four couplings")
    p.add_argument("problem")
    common(p, coupling=False)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("levelset", help="sample level sets through a base state")
    p.add_argument("problem")
    common(p, coupling=False, tol=False)
    p.set_defaults(func=cmd_levelset)

    p = sub.add_parser("simulate", help="run the finite-volume network simulation")
    p.add_argument("problem")
    common(p, tol=False)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("kinetic", help="kinetic artificial density for Maxwellian inflows")
    p.add_argument("problem", nargs="?")
    p.add_argument("--kappa", type=float, default=1.0)
    p.add_argument("--gamma", type=float, default=1.4)
    p.add_argument("--inflow", action="append", metavar="RHO,MOM")
    p.add_argument("--areas", metavar="A1,A2,...")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_kinetic)

    p = sub.add_parser("euler", help="(rho*, theta*) for Gaussian inflows")
    p.add_argument("--inflow", action="append", metavar="RHO,U,THETA")
    p.add_argument("--areas", metavar="A1,A2,...")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_euler)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ProblemFileError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except (NoSubsonicSolution, DomainError, NoConvergence, NonConvergedQuadrature, CFLViolation) as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
