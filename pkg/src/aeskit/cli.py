"""Command-line front end: solve | classify | moments | verify.

JSON and CSV go to stdout, diagnostics to stderr. Exit codes: 0 success,
1 verification/invariant failure, 2 inadmissible input. Complex numbers
are written as two-element [re, im] arrays in JSON and parsed from
"a+bi" strings on input. AESKIT_TOL overrides the residual tolerance.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import oracle, su2, su11, verify
from .errors import (
    AeskitError,
    ClassMismatch,
    ForbiddenRegion,
    InvalidQuantumNumber,
    InvalidRep,
    OutsideUnitDisk,
    ZeroWeight,
)
from .spectrum import SpectrumClass

DEFAULT_TOL = 1e-8

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INADMISSIBLE = 2

_INADMISSIBLE = (
    ZeroWeight,
    InvalidRep,
    InvalidQuantumNumber,
    ClassMismatch,
    ForbiddenRegion,
    OutsideUnitDisk,
    ValueError,
)


class CliInputError(ValueError):
    pass


def parse_complex(text: str) -> complex:
    """Parse 'a+bi' (or 'a+bj') into a complex number."""
    cleaned = text.strip().replace(" ", "").replace("i", "j").replace("I", "j")
    try:
        return complex(cleaned)
    except ValueError:
        raise CliInputError(f"cannot parse complex number from {text!r}") from None


def parse_beta(text: str) -> tuple[complex, complex, complex]:
    parts = text.split(",")
    if len(parts) != 3:
        raise CliInputError(f"--beta needs three comma-separated components, got {text!r}")
    b1, b2, b3 = (parse_complex(p) for p in parts)
    return b1, b2, b3


def preset_beta(tokens: list[str]) -> tuple[complex, complex, complex]:
    """Expand a --preset specification into weight components.

    su2-sphere THETA PHI        unit vector on the sphere
    su11-hyperboloid CHI PHI    unit pseudo-vector on the hyperboloid
    is-generalized ETA          (eta, -i, 0)
    is-ordinary PAIR GAMMA      PAIR in j1j2/j1j3/j2j3/k1k2/k1k3/k2k3
    """
    name = tokens[0]
    if name == "su2-sphere":
        if len(tokens) != 3:
            raise CliInputError("preset su2-sphere takes THETA PHI")
        theta, phi = float(tokens[1]), float(tokens[2])
        return (
            complex(np.sin(theta) * np.cos(phi)),
            complex(np.sin(theta) * np.sin(phi)),
            complex(np.cos(theta)),
        )
    if name == "su11-hyperboloid":
        if len(tokens) != 3:
            raise CliInputError("preset su11-hyperboloid takes CHI PHI")
        chi, phi = float(tokens[1]), float(tokens[2])
        return (
            complex(np.sinh(chi) * np.cos(phi)),
            complex(np.sinh(chi) * np.sin(phi)),
            complex(np.cosh(chi)),
        )
    if name == "is-generalized":
        if len(tokens) != 2:
            raise CliInputError("preset is-generalized takes ETA")
        return parse_complex(tokens[1]), -1j, 0j
    if name == "is-ordinary":
        if len(tokens) != 3:
            raise CliInputError("preset is-ordinary takes PAIR GAMMA")
        pair, gamma = tokens[1].lower(), float(tokens[2])
        table = {
            "j1j2": (1.0 + 0j, 1j * gamma, 0j),
            "j1j3": (1.0 + 0j, 0j, 1j * gamma),
            "j2j3": (0j, 1.0 + 0j, 1j * gamma),
        }
        table["k1k2"], table["k1k3"], table["k2k3"] = table["j1j2"], table["j1j3"], table["j2j3"]
        if pair not in table:
            raise CliInputError(f"unknown ordinary pair {pair!r}")
        return table[pair]
    raise CliInputError(f"unknown preset {name!r}")


def _c(value: complex) -> list[float]:
    value = complex(value)
    return [float(value.real), float(value.imag)]


def residual_tolerance() -> float:
    raw = os.environ.get("AESKIT_TOL", "")
    if not raw:
        return DEFAULT_TOL
    try:
        return float(raw)
    except ValueError:
        raise CliInputError(f"AESKIT_TOL must be a float, got {raw!r}") from None


def _emit_json(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def _emit_csv(header: list[str], rows: list[list]) -> None:
    sys.stdout.write(",".join(header) + "\n")
    for row in rows:
        sys.stdout.write(",".join("" if v is None else repr(v) if isinstance(v, float) else str(v) for v in row) + "\n")


def _weight_for(args) -> tuple[str, object]:
    if args.preset:
        beta = preset_beta(args.preset)
    elif args.beta:
        beta = parse_beta(args.beta)
    else:
        raise CliInputError("one of --beta or --preset is required")
    if args.group == "su2":
        return "su2", su2.Su2Weight(*beta)
    return "su11", su11.Su11Weight(*beta)


def _rep_for(args) -> float:
    if args.group == "su2":
        if args.j is None:
            raise CliInputError("--j is required for group su2")
        return float(args.j)
    if args.k is None:
        raise CliInputError("--k is required for group su11")
    return float(args.k)


def _label_kwargs(args) -> dict:
    out = {}
    if getattr(args, "l", None) is not None:
        out["l"] = int(args.l)
    if getattr(args, "lam", None):
        out["lam"] = parse_complex(args.lam)
    return out


# ------------------------------------------------------------------ solve


def cmd_solve(args) -> int:
    tol = residual_tolerance()
    group, weight = _weight_for(args)
    rep = _rep_for(args)
    if group == "su2":
        m0 = float(args.m0) if args.m0 is not None else None
        sol = su2.solve_aes(rep, weight, m0)
        matrix = su2.weight_matrix(rep, weight)
        residual = oracle.eigen_residual(matrix, sol.lam, sol.state)
        doc = {
            "group": group,
            "rep": rep,
            "beta": [_c(weight.beta1), _c(weight.beta2), _c(weight.beta3)],
            "label": {"m0": sol.m0},
            "eigenvalue": _c(sol.lam),
            "spectrum_class": sol.spectrum_class.value,
            "norm_factor": sol.norm_factor,
            "residual": residual,
            "residual_tolerance": tol,
            "tail_bound": None,
            "truncation": None,
            "amplitudes": [_c(a) for a in sol.state.amplitudes],
        }
        labels = [f"m={m:+g}" for m in sol.state.m_values]
    else:
        sol = su11.solve_aes_su11(rep, weight, N=int(args.N), **_label_kwargs(args))
        matrix = oracle.su11_weight_matrix(rep, weight, sol.state.truncation)
        residual = oracle.eigen_residual(matrix, sol.lam, sol.state, drop_rows=2)
        doc = {
            "group": group,
            "rep": rep,
            "beta": [_c(weight.beta1), _c(weight.beta2), _c(weight.beta3)],
            "label": {"l": sol.l} if sol.l is not None else {"lambda": _c(sol.lam)},
            "eigenvalue": _c(sol.lam),
            "spectrum_class": sol.spectrum_class.value,
            "norm_factor": sol.norm_factor,
            "residual": residual,
            "residual_tolerance": tol,
            "tail_bound": sol.state.tail_bound,
            "truncation": sol.state.truncation,
            "amplitudes": [_c(a) for a in sol.state.amplitudes],
        }
        labels = [f"n={n}" for n in sol.state.n_values]

    if args.format == "json":
        _emit_json(doc)
    elif args.format == "csv":
        rows = [[lab, amp[0], amp[1]] for lab, amp in zip(labels, doc["amplitudes"])]
        _emit_csv(["basis", "re", "im"], rows)
    else:
        print(f"group            {doc['group']}  rep {doc['rep']}")
        print(f"spectrum class   {doc['spectrum_class']}")
        print(f"eigenvalue       {complex(*doc['eigenvalue']):.12g}")
        print(f"norm factor      {doc['norm_factor']:.12g}")
        print(f"residual         {doc['residual']:.3e}  (tolerance {tol:.1e})")
        if doc["tail_bound"] is not None:
            print(f"tail bound       {doc['tail_bound']:.3e}  at truncation {doc['truncation']}")
        print("amplitudes:")
        for lab, amp in zip(labels, doc["amplitudes"]):
            print(f"  {lab:>8}  {amp[0]:+.12e}  {amp[1]:+.12e}")
    if residual > tol:
        print(f"residual {residual:.3e} exceeds tolerance {tol:.1e}", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


# --------------------------------------------------------------- classify


def cmd_classify(args) -> int:
    group, weight = _weight_for(args)
    if group == "su2":
        cls = SpectrumClass.DISCRETE_SU2
        doc = {
            "group": group,
            "branch": weight.branch,
            "class": cls.value,
            "admissible": True,
            "b": _c(weight.b),
        }
        if weight.branch == su2.BRANCH_GENERAL:
            doc.update(
                tau_plus=_c(weight.tau_plus),
                tau_minus=_c(weight.tau_minus),
                s_plus=weight.s_plus,
                s_minus=weight.s_minus,
                t=weight.t,
                Y=weight.Y,
            )
    else:
        cls = su11.classify(weight)
        doc = {
            "group": group,
            "branch": weight.branch,
            "class": cls.value,
            "admissible": cls.admissible,
            "b": _c(weight.b),
        }
        if weight.branch == su11.BRANCH_GENERAL:
            doc.update(
                tau_plus=_c(weight.tau_plus),
                tau_minus=_c(weight.tau_minus),
                s_plus=weight.s_plus,
                s_minus=weight.s_minus,
                t=weight.t,
                Y=weight.Y,
            )
        elif weight.branch == su11.BRANCH_BETA_PLUS_ZERO:
            doc["tau_plus"] = _c(weight.tau_plus)
        else:
            doc["tau"] = _c(weight.tau_degenerate)
        if not cls.admissible:
            doc["diagnostic"] = su11.forbidden_reason(weight)

    if args.format == "json":
        _emit_json(doc)
    elif args.format == "csv":
        keys = list(doc.keys())
        _emit_csv(keys, [[doc[key] for key in keys]])
    else:
        for key, value in doc.items():
            print(f"{key:>12}  {value}")
    return EXIT_OK


# ---------------------------------------------------------------- moments


def cmd_moments(args) -> int:
    group, weight = _weight_for(args)
    rep = _rep_for(args)
    rows = []
    if group == "su2":
        labels = [float(args.m0)] if args.m0 is not None else list(su2.m_values(rep))
        if weight.b_is_zero:
            labels = [None]
        for m0 in labels:
            mean_c, var_c = su2.j3_moments(rep, weight, m0)
            sol = su2.solve_aes(rep, weight, m0)
            probs = np.abs(sol.state.amplitudes) ** 2
            ms = sol.state.m_values
            mean_d = float(np.sum(ms * probs))
            var_d = float(np.sum(ms**2 * probs) - mean_d**2)
            gap = max(abs(mean_c - mean_d), abs(var_c - var_d))
            name = "degenerate" if m0 is None else f"{m0:+g}"
            rows.append([name, mean_c, var_c, gap])
    else:
        cls = su11.classify(weight)
        if not cls.admissible:
            raise ForbiddenRegion(su11.forbidden_reason(weight))
        if cls.discrete:
            if args.l is not None:
                label_sets = [{"l": int(args.l)}]
            else:
                label_sets = [{"l": l} for l in range(int(args.lmax) + 1)]
        else:
            if not args.lam:
                raise CliInputError(
                    f"class {cls.value} has a continuous spectrum; provide --lambda"
                )
            label_sets = [{"lam": parse_complex(tok)} for tok in args.lam.split(";")]
        for label in label_sets:
            mean_c, var_c = su11.k3_moments(rep, weight, N=int(args.N), **label)
            sol = su11.solve_aes_su11(rep, weight, N=int(args.N), tail_target=1e-15, **label)
            probs = np.abs(sol.state.amplitudes) ** 2
            levels = rep + sol.state.n_values
            mean_d = float(np.sum(levels * probs))
            var_d = float(np.sum(levels**2 * probs) - mean_d**2)
            gap = max(abs(mean_c - mean_d), abs(var_c - var_d))
            name = f"l={label['l']}" if "l" in label else f"lambda={label['lam']}"
            rows.append([name, mean_c, var_c, gap])

    header = ["label", "mean", "variance", "closed_form_vs_direct_gap"]
    if args.format == "json":
        _emit_json({"group": group, "rep": rep, "rows": [dict(zip(header, r)) for r in rows]})
    elif args.format == "csv":
        _emit_csv(header, rows)
    else:
        print(f"{'label':>16}  {'mean':>20}  {'variance':>20}  {'gap':>10}")
        for name, mean, var, gap in rows:
            print(f"{name:>16}  {mean:>20.12g}  {var:>20.12g}  {gap:>10.2e}")
    return EXIT_OK


# ----------------------------------------------------------------- verify


def cmd_verify(args) -> int:
    results = verify.run_checks(scope=args.scope, seed=int(args.seed), corrupt=args.inject_corruption)
    failed = [r for r in results if not r.passed]
    for res in results:
        tag = "PASS" if res.passed else "FAIL"
        print(f"[{tag}] {res.name}: {res.detail}")
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    if failed:
        for res in failed:
            print(f"violated invariant: {res.name}", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


# ------------------------------------------------------------------ main


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aeskit",
        description="Construct and verify SU(2)/SU(1,1) algebra eigenstates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_label=True):
        p.add_argument("--group", choices=("su2", "su11"), required=True)
        p.add_argument("--j", type=float, help="SU(2) representation label")
        p.add_argument("--k", type=float, help="SU(1,1) discrete-series label")
        p.add_argument("--beta", help="three complex components, e.g. '1+0.5i,0,2'")
        p.add_argument(
            "--preset",
            nargs="+",
            metavar="TOKEN",
            help="su2-sphere THETA PHI | su11-hyperboloid CHI PHI | "
            "is-generalized ETA | is-ordinary PAIR GAMMA",
        )
        p.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
        if with_label:
            p.add_argument("--m0", type=float, help="SU(2) eigenvalue label")
            p.add_argument("--l", type=int, help="discrete SU(1,1) label l = 0, 1, ...")
            p.add_argument(
                "--lambda",
                dest="lam",
                help="continuous SU(1,1) eigenvalue; moments accept a ';'-separated list",
            )
            p.add_argument("--N", type=int, default=su11.DEFAULT_TRUNCATION)

    p_solve = sub.add_parser("solve", help="construct one eigenstate")
    add_common(p_solve)
    p_solve.set_defaults(func=cmd_solve)

    p_classify = sub.add_parser("classify", help="spectrum class and derived quantities")
    add_common(p_classify, with_label=False)
    p_classify.set_defaults(func=cmd_classify)

    p_moments = sub.add_parser("moments", help="J3/K3 mean and variance per label")
    add_common(p_moments)
    p_moments.add_argument("--lmax", type=int, default=5, help="sweep l = 0..lmax")
    p_moments.set_defaults(func=cmd_moments)

    p_verify = sub.add_parser("verify", help="run the invariant suites")
    p_verify.add_argument("--scope", choices=verify.SCOPES, default="all")
    p_verify.add_argument("--seed", type=int, default=1234)
    p_verify.add_argument("--inject-corruption", action="store_true", help=argparse.SUPPRESS)
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _INADMISSIBLE as exc:
        print(f"aeskit: {exc}", file=sys.stderr)
        return EXIT_INADMISSIBLE
    except AeskitError as exc:
        print(f"aeskit: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
