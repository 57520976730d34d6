"""Command-line front end: classification, equilibria, RDE selection, sweeps,
table reproduction and oracle self-checks, with CSV/JSON output.

Exit codes: 0 success, 1 validation error, 2 check failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import ewl, game_core, quantum_rde, risk_dominance
from .errors import QpdError
from .game_core import DilemmaParams, StrategyProfile

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CHECK_FAILED = 2

_QUANTITIES = ("class", "ne", "rde", "payoffs", "sensitivity", "thresholds")


def _fmt(x: float) -> str:
    """12-significant-digit fixed formatting for CSV cells."""
    return f"{x:.12g}"


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage errors follow the exit-code contract."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _params_from(args) -> DilemmaParams:
    return DilemmaParams(args.dg, args.dr)


def _gamma_from(args) -> float | None:
    if args.gamma is None:
        return None
    gamma = math.radians(args.gamma) if args.degrees else args.gamma
    if not (0.0 <= gamma <= math.pi / 2):
        raise QpdError(f"gamma must lie in [0, pi/2] radians, got {gamma}")
    return gamma


def _write_output(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _profile_label(profile: StrategyProfile, labels: tuple[str, str]) -> str:
    row = 0 if profile.p == 1.0 else 1
    col = 0 if profile.q == 1.0 else 1
    return f"({labels[row]},{labels[col]})"


def _emit_report(payload: dict, args) -> None:
    if getattr(args, "format", None) == "json":
        _write_output(json.dumps(payload, indent=2) + "\n", getattr(args, "out", None))
    else:
        lines = []
        for key, value in payload.items():
            if isinstance(value, float):
                value = _fmt(value)
            lines.append(f"{key}: {value}")
        _write_output("\n".join(lines) + "\n", getattr(args, "out", None))


def _ne_labels(records, labels) -> list[str]:
    return [_profile_label(rec.profile, labels) for rec in records]


# ---------------------------------------------------------------------------
# classify / ne


def cmd_classify(args) -> int:
    params = _params_from(args)
    cls = game_core.classify_dilemma(params)
    matrix = game_core.build_dilemma_matrix(params)
    records = game_core.enumerate_pure_ne(matrix)
    payload = {
        "d_g": params.d_g,
        "d_r": params.d_r,
        "class": cls.kind.value,
        "boundary": cls.boundary,
        "pure_ne": _ne_labels(records, matrix.labels),
        "pure_ne_payoffs": [list(rec.payoffs) for rec in records],
    }
    _emit_report(payload, args)
    return EXIT_OK


def cmd_ne(args) -> int:
    params = _params_from(args)
    gamma = _gamma_from(args)
    if gamma is None:
        matrix = game_core.build_dilemma_matrix(params)
        records = game_core.enumerate_pure_ne(matrix)
        payload = {
            "d_g": params.d_g,
            "d_r": params.d_r,
            "mode": "classical",
            "pure_ne": _ne_labels(records, matrix.labels),
            "pure_ne_payoffs": [list(rec.payoffs) for rec in records],
        }
    else:
        report = ewl.classify_quantum_ne(params, gamma)
        labels = ("Q", "D")
        payload = {
            "d_g": params.d_g,
            "d_r": params.d_r,
            "gamma": gamma,
            "mode": "quantum",
            "phase": report.phase,
            "pure_ne": _ne_labels(report.equilibria, labels),
            "pure_ne_payoffs": [list(rec.payoffs) for rec in report.equilibria],
        }
    _emit_report(payload, args)
    return EXIT_OK


# ---------------------------------------------------------------------------
# rde


def _classical_rde(params: DilemmaParams):
    """RDE (or unique NE) of the classical dilemma, with deviation-loss products."""
    kind = game_core.classify_dilemma(params).kind
    matrix = game_core.build_dilemma_matrix(params)
    if kind is game_core.DilemmaKind.CH:
        cd, dc = risk_dominance.deviation_losses_asymmetric(matrix)
        return risk_dominance.rde_chicken(params), {"delta_cd": cd.product, "delta_dc": dc.product}
    if kind is game_core.DilemmaKind.SH:
        cc, dd = risk_dominance.deviation_losses_symmetric(matrix)
        return risk_dominance.rde_staghunt(params), {"delta_cc": cc.product, "delta_dd": dd.product}
    if kind is game_core.DilemmaKind.PD:
        outcome = risk_dominance.RdeOutcome("pure", StrategyProfile(0.0, 0.0),
                                            matrix.payoff(1, 1), "(D,D)")
    else:  # TRIVIAL: cooperation dominates
        outcome = risk_dominance.RdeOutcome("pure", StrategyProfile(1.0, 1.0),
                                            matrix.payoff(0, 0), "(C,C)")
    return outcome, {}


def cmd_rde(args) -> int:
    params = _params_from(args)
    gamma = _gamma_from(args)
    if gamma is None:
        outcome, deltas = _classical_rde(params)
        payload = {"d_g": params.d_g, "d_r": params.d_r, "mode": "classical"}
    else:
        phase, outcome = quantum_rde.select_rde_quantum(params, gamma)
        thr = ewl.thresholds(params)
        deltas = {}
        if phase in ("transitional", "coexistence"):
            first, second = quantum_rde.deviation_losses_quantum(params, gamma, phase)
            key1, key2 = (("delta_qd", "delta_dq") if phase == "transitional"
                          else ("delta_qq", "delta_dd"))
            deltas = {key1: first.product, key2: second.product}
        payload = {
            "d_g": params.d_g, "d_r": params.d_r, "gamma": gamma,
            "mode": "quantum", "phase": phase,
            "gamma1": thr.gamma1, "gamma2": thr.gamma2, "gamma_star": thr.gamma_star,
        }
    payload.update({
        "rde_kind": outcome.kind,
        "rde_label": outcome.label,
        "p": outcome.profile.p,
        "q": outcome.profile.q,
        "payoff_a": outcome.payoffs[0],
        "payoff_b": outcome.payoffs[1],
    })
    payload.update(deltas)
    _emit_report(payload, args)
    return EXIT_OK


def cmd_sensitivity(args) -> int:
    params = _params_from(args)
    gamma = _gamma_from(args)
    if gamma is None:
        raise QpdError("sensitivity requires --gamma")
    report = quantum_rde.sensitivity_indices(params, gamma)
    angles = quantum_rde.sensitivity_critical_angles(params)
    payload = {
        "d_g": params.d_g, "d_r": params.d_r, "gamma": gamma,
        "p_star": report.p_star,
        "partial_dg": report.partial_dg,
        "partial_dr": report.partial_dr,
        "partial_gamma": report.partial_gamma,
        "index_dg": report.index_dg,
        "index_dr": report.index_dr,
        "index_gamma": report.index_gamma,
        "semi_elasticity_gamma": report.semi_elasticity_gamma,
        "gamma_g": angles.gamma_g,
        "gamma_r": angles.gamma_r,
    }
    _emit_report(payload, args)
    return EXIT_OK


# ---------------------------------------------------------------------------
# sweep


def _axis(single, rng, name, lo, hi):
    if rng is not None:
        start, stop, steps = rng
        steps = int(steps)
        if steps < 1:
            raise QpdError(f"{name} steps must be >= 1")
        if not (lo <= start <= hi and lo <= stop <= hi):
            raise QpdError(f"{name} range must lie within [{lo}, {hi}]")
        if steps == 1:
            return [start]
        return list(np.linspace(start, stop, steps))
    value = single if single is not None else 0.0
    if not (lo <= value <= hi):
        raise QpdError(f"{name} must lie within [{lo}, {hi}]")
    return [value]


def _sweep_row(dg: float, dr: float, gamma: float, quantities) -> dict:
    row = {"d_g": dg, "d_r": dr, "gamma": gamma}
    params = DilemmaParams(dg, dr)
    quantum_regime = dg > 0.0 and dr > 0.0

    if "class" in quantities:
        cls = game_core.classify_dilemma(params)
        row["class"] = cls.kind.value
        row["boundary"] = int(cls.boundary)

    if "ne" in quantities:
        if quantum_regime:
            report = ewl.classify_quantum_ne(params, gamma)
            row["ne_phase"] = report.phase
            row["ne_count"] = len(report.equilibria)
            row["ne_list"] = "|".join(_ne_labels(report.equilibria, ("Q", "D")))
        else:
            matrix = game_core.build_dilemma_matrix(params)
            records = game_core.enumerate_pure_ne(matrix)
            row["ne_phase"] = "classical"
            row["ne_count"] = len(records)
            row["ne_list"] = "|".join(_ne_labels(records, matrix.labels))

    if "rde" in quantities:
        if quantum_regime:
            _, outcome = quantum_rde.select_rde_quantum(params, gamma)
        else:
            outcome, _ = _classical_rde(params)
        row["rde_kind"] = outcome.kind
        row["rde_label"] = outcome.label or ""
        row["rde_p"] = outcome.profile.p
        row["rde_q"] = outcome.profile.q
        row["rde_payoff_a"] = outcome.payoffs[0]
        row["rde_payoff_b"] = outcome.payoffs[1]

    if "payoffs" in quantities:
        qmat = ewl.pure_quantum_matrix(params, gamma)
        row["pi_q"] = qmat.pi_q
        row["pi_d"] = qmat.pi_d

    if "sensitivity" in quantities:
        try:
            report = quantum_rde.sensitivity_indices(params, gamma)
            row.update({
                "p_star": report.p_star,
                "partial_dg": report.partial_dg,
                "partial_dr": report.partial_dr,
                "partial_gamma": report.partial_gamma,
                "s_dg": report.index_dg,
                "s_dr": report.index_dr,
                "s_gamma": report.index_gamma,
                "semi_elasticity_gamma": report.semi_elasticity_gamma,
            })
        except QpdError:
            row.update(dict.fromkeys(
                ["p_star", "partial_dg", "partial_dr", "partial_gamma",
                 "s_dg", "s_dr", "s_gamma", "semi_elasticity_gamma"], None))

    if "thresholds" in quantities:
        thr = ewl.thresholds(params)
        row["gamma1"] = thr.gamma1
        row["gamma2"] = thr.gamma2
        row["gamma_star"] = thr.gamma_star

    return row


def cmd_sweep(args) -> int:
    quantities = tuple(q.strip() for q in args.quantities.split(",") if q.strip())
    for q in quantities:
        if q not in _QUANTITIES:
            raise QpdError(f"unknown quantity {q!r}; choose from {', '.join(_QUANTITIES)}")

    dgs = _axis(args.dg, args.dg_range, "dg", -1.0, 1.0)
    drs = _axis(args.dr, args.dr_range, "dr", -1.0, 1.0)
    gammas = _axis(args.gamma, args.gamma_range, "gamma", 0.0, math.pi / 2)
    if args.degrees:
        gammas = [math.radians(g) for g in gammas]
        if any(not (0.0 <= g <= math.pi / 2) for g in gammas):
            raise QpdError("gamma range must lie within [0, 90] degrees")

    rows = [_sweep_row(dg, dr, g, quantities)
            for dg in dgs for dr in drs for g in gammas]

    if args.format == "json":
        text = json.dumps(rows, indent=2) + "\n"
    else:
        header = list(rows[0].keys()) if rows else []
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            cells = []
            for key in header:
                value = row[key]
                if value is None:
                    cells.append("")
                elif isinstance(value, float):
                    cells.append(_fmt(value))
                else:
                    cells.append(str(value))
            writer.writerow(cells)
        text = buf.getvalue()
    _write_output(text, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# tables


class _TableReport:
    def __init__(self):
        self.lines: list[str] = []
        self.failed = False

    def check(self, name: str, ok: bool, detail: str = ""):
        status = "PASS" if ok else "FAIL"
        if not ok:
            self.failed = True
        self.lines.append(f"[{status}] {name}" + (f": {detail}" if detail else ""))

    def deviation(self, name: str, ok: bool, detail: str):
        # Printed-value mismatch that is documented and re-verified independently.
        status = "DOCUMENTED-DEVIATION" if ok else "FAIL"
        if not ok:
            self.failed = True
        self.lines.append(f"[{status}] {name}: {detail}")


def _check_table2(rep: _TableReport) -> None:
    cases = [
        ((0.5, 0.5), "PD", {"(D,D)"}),
        ((0.5, -0.5), "CH", {"(D,C)", "(C,D)"}),
        ((-0.5, 0.5), "SH", {"(C,C)", "(D,D)"}),
    ]
    for (dg, dr), expected_class, expected_ne in cases:
        params = DilemmaParams(dg, dr)
        cls = game_core.classify_dilemma(params).kind.value
        matrix = game_core.build_dilemma_matrix(params)
        found = set(_ne_labels(game_core.enumerate_pure_ne(matrix), matrix.labels))
        rep.check(f"Table2 class({dg},{dr})", cls == expected_class,
                  f"computed {cls}, expected {expected_class}")
        rep.check(f"Table2 NE({dg},{dr})", found == expected_ne,
                  f"computed {sorted(found)}, expected {sorted(expected_ne)}")


def _check_table5(rep: _TableReport) -> None:
    cases = [
        # (dg, dr), [(sample gamma per band, expected NE set), ...]
        ((0.9, 0.2), [(0.15, {"(D,D)"}), (0.5, {"(D,Q)", "(Q,D)"}), (1.2, {"(Q,Q)"})]),
        ((0.5, 0.5), [(0.3, {"(D,D)"}), (1.0, {"(Q,Q)"})]),
        ((0.2, 0.9), [(0.2, {"(D,D)"}), (0.45, {"(D,D)", "(Q,Q)"}), (1.0, {"(Q,Q)"})]),
    ]
    for (dg, dr), bands in cases:
        params = DilemmaParams(dg, dr)
        for gamma, expected in bands:
            report = ewl.classify_quantum_ne(params, gamma)
            found = set(_ne_labels(report.equilibria, ("Q", "D")))
            certified = all(
                max(ewl.grid_best_response_gain(params, rec.profile.p, rec.profile.q,
                                                gamma)) <= 1e-9
                for rec in report.equilibria)
            rep.check(f"Table5 NE set ({dg},{dr}) at gamma={gamma}",
                      found == expected and certified,
                      f"computed {sorted(found)}, expected {sorted(expected)}"
                      + ("" if certified else "; grid certification failed"))


def _fd_index(dg: float, dr: float, gamma: float, which: str, h: float = 1e-6) -> float:
    """Finite-difference elasticity oracle for the transitional mixing probability."""

    def p_star(dg_, dr_, g_):
        return quantum_rde.transitional_mixing_probability(DilemmaParams(dg_, dr_), g_)

    base = p_star(dg, dr, gamma)
    if which == "dg":
        partial = (p_star(dg + h, dr, gamma) - p_star(dg - h, dr, gamma)) / (2 * h)
        return partial * dg / base
    partial = (p_star(dg, dr + h, gamma) - p_star(dg, dr - h, gamma)) / (2 * h)
    return partial * dr / base


def _check_table6(rep: _TableReport) -> None:
    params = DilemmaParams(0.9, 0.2)

    s_dg = quantum_rde.sensitivity_indices(params, math.pi / 6).index_dg
    rep.check("Table6 S_Dg(pi/6)", abs(s_dg - (-0.593)) <= 0.005, f"computed {_fmt(s_dg)}")

    s_dr = quantum_rde.sensitivity_indices(params, math.pi / 5).index_dr
    rep.check("Table6 S_Dr(pi/5)", abs(s_dr - 0.037) <= 0.001, f"computed {_fmt(s_dr)}")

    semi = quantum_rde.sensitivity_indices(params, math.pi / 6).semi_elasticity_gamma
    rep.check("Table6 S_gamma(pi/6) as semi-elasticity", abs(semi - 5.596) <= 0.01,
              f"computed {_fmt(semi)}")

    # Printed values that do not reproduce; re-verified against finite differences.
    s_dg9 = quantum_rde.sensitivity_indices(params, math.pi / 9).index_dg
    ok = (abs(s_dg9 - _fd_index(0.9, 0.2, math.pi / 9, "dg")) <= 1e-6 * abs(s_dg9)
          and abs(s_dg9 - 1.020) <= 0.005)
    rep.deviation("Table6 S_Dg(pi/9)", ok,
                  f"computed {_fmt(s_dg9)} vs printed 1.029; finite-difference confirmed")

    s_dr6 = quantum_rde.sensitivity_indices(params, math.pi / 6).index_dr
    ok = (abs(s_dr6 - _fd_index(0.9, 0.2, math.pi / 6, "dr")) <= 1e-6 * abs(s_dr6)
          and abs(s_dr6 - (-0.1758)) <= 0.0005)
    rep.deviation("Table6 S_Dr(pi/6)", ok,
                  f"computed {_fmt(s_dr6)} vs printed -0.173; finite-difference confirmed")


def cmd_tables(args) -> int:
    rep = _TableReport()
    _check_table2(rep)
    _check_table5(rep)
    _check_table6(rep)
    _write_output("\n".join(rep.lines) + "\n", args.out)
    return EXIT_CHECK_FAILED if rep.failed else EXIT_OK


# ---------------------------------------------------------------------------
# oracle check


def cmd_oracle_check(args) -> int:
    density = args.grid
    if density < 2:
        raise QpdError("--grid must be >= 2")
    rng = np.random.default_rng(args.seed)
    points = [(p, q, g)
              for p in np.linspace(0.0, 1.0, density)
              for q in np.linspace(0.0, 1.0, density)
              for g in np.linspace(0.0, math.pi / 2, density)]
    points += [(rng.uniform(), rng.uniform(), rng.uniform(0.0, math.pi / 2))
               for _ in range(100)]

    max_dev = 0.0
    max_norm_dev = 0.0
    for p, q, gamma in points:
        amps = ewl.final_state(p, q, gamma, tampered=args.tampered_gate)
        probs = np.abs(amps) ** 2
        closed = ewl.joint_distribution(p, q, gamma).as_array()
        max_dev = max(max_dev, float(np.max(np.abs(probs - closed))))
        max_norm_dev = max(max_norm_dev, abs(float(np.sum(probs)) - 1.0))

    ok = max_dev <= 1e-12 and max_norm_dev <= 1e-12
    lines = [
        f"points: {len(points)}",
        f"max |state-vector - closed-form| deviation: {max_dev:.3e}",
        f"max normalization deviation: {max_norm_dev:.3e}",
        f"result: {'PASS' if ok else 'FAIL'}",
    ]
    _write_output("\n".join(lines) + "\n", args.out)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# parser


def build_parser() -> _Parser:
    parser = _Parser(prog="qpd-rde",
                     description="Risk-dominant equilibria of 2x2 dilemmas and their "
                                 "EWL quantum extension")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, gamma=True, fmt=True):
        p.add_argument("--dg", type=float, required=True, help="gamble-intending strength")
        p.add_argument("--dr", type=float, required=True, help="risk-averting strength")
        if gamma:
            p.add_argument("--gamma", type=float, default=None, help="entanglement angle")
            p.add_argument("--degrees", action="store_true", help="interpret angles as degrees")
        if fmt:
            p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--out", default=None, help="write output to FILE")

    p = sub.add_parser("classify", help="dilemma class and pure NEs")
    add_common(p, gamma=False)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("ne", help="Nash equilibria (classical, or quantum with --gamma)")
    add_common(p)
    p.set_defaults(func=cmd_ne)

    p = sub.add_parser("rde", help="risk-dominant equilibrium selection")
    add_common(p)
    p.set_defaults(func=cmd_rde)

    p = sub.add_parser("sensitivity", help="sensitivity of the transitional RDE")
    add_common(p)
    p.set_defaults(func=cmd_sensitivity)

    p = sub.add_parser("sweep", help="parameter sweep emitting CSV/JSON rows")
    p.add_argument("--dg", type=float, default=None)
    p.add_argument("--dr", type=float, default=None)
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument("--dg-range", type=float, nargs=3, metavar=("START", "STOP", "STEPS"))
    p.add_argument("--dr-range", type=float, nargs=3, metavar=("START", "STOP", "STEPS"))
    p.add_argument("--gamma-range", type=float, nargs=3, metavar=("START", "STOP", "STEPS"))
    p.add_argument("--degrees", action="store_true")
    p.add_argument("--quantities", default="class,rde",
                   help=f"comma-separated subset of {{{','.join(_QUANTITIES)}}}")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("tables", help="reproduce the reference tables with pass/fail lines")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("oracle-check", help="state-vector vs closed-form equivalence check")
    p.add_argument("--grid", type=int, default=11, help="grid density per axis")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tampered-gate", action="store_true",
                   help="debug: use the wrong sigma_x entangler (check must fail)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_oracle_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (QpdError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
