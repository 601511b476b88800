"""Command-line driver: reproducible batch runs with JSON on stdout and a
human summary on stderr.

Exit codes: 0 success, 1 an identity check exceeded its tolerance,
2 malformed input.  Output is byte-identical for identical inputs: keys
are sorted and floats use shortest round-trip repr.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from .chars import (
    ThetaCharacteristic,
    all_characteristics,
    dedupe_systems,
    enumerate_fundamental_systems,
)
from .curves import CurveError, HyperellipticCurve
from .identities import (
    check_fourth_power,
    check_guardia_all,
    check_jacobi,
    check_lockhart,
    check_product_theorem,
    check_rosenhain,
    check_vanishing_structure,
)
from .norms import green_prime, norm_delta, norm_j, norm_phi
from .periods import (
    BasisCalibrationError,
    PathError,
    QuadratureError,
    j_invariant,
    period_matrix,
    weierstrass_dictionary_residuals,
)
from .suite import run_suite
from .theta import (
    LatticeBudgetError,
    SiegelError,
    SiegelPoint,
    jacobian_nullwert,
    theta,
    theta_gradient_null,
)

SCHEMA_VERSION = 1
PRECISION_ENV = "HYPERTHETA_PRECISION"

USAGE_ERROR = 2
CHECK_FAILED = 1


@dataclass
class RunConfig:
    command: str
    genus: int | None = None
    roots: list | None = None
    coeffs: list | None = None
    tau: list | None = None  # row-major [re, im] pairs
    tolerance: float = 1e-12
    residual_tolerance: float | None = None
    precision: str = "standard"
    dps: int = 30
    seed: int = 0
    output: str | None = None
    emit_audit: bool = False
    extras: dict = field(default_factory=dict)

    def validate(self):
        sources = sum(x is not None for x in (self.roots, self.coeffs, self.tau))
        if sources > 1:
            raise ValueError("give exactly one of --roots, --coeffs, --tau")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.precision not in ("standard", "extended"):
            raise ValueError("precision must be 'standard' or 'extended'")


def parse_complex(text: str) -> complex:
    s = text.strip().replace(" ", "").replace("I", "i").replace("J", "i").replace("j", "i")
    if not s:
        raise ValueError("empty complex literal")
    s = s.replace("i", "j")
    idx = s.find("j")
    if idx >= 0:
        if idx == 0 or s[idx - 1] in "+-":
            s = s[:idx] + "1" + s[idx:]
    try:
        return complex(s)
    except ValueError as exc:
        raise ValueError(f"malformed complex literal {text!r}") from exc


def _complex_pair(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def _matrix_pairs(mat) -> list:
    mat = np.atleast_2d(np.asarray(mat, dtype=complex))
    return [_complex_pair(v) for v in mat.reshape(-1)]


def _vector_pairs(vec) -> list:
    return [_complex_pair(v) for v in np.atleast_1d(np.asarray(vec, dtype=complex))]


def _tau_from_pairs(pairs) -> SiegelPoint:
    n = len(pairs)
    g = int(round(math.isqrt(n)))
    if g * g != n:
        raise ValueError(f"tau needs a square number of entries, got {n}")
    vals = [complex(re, im) for re, im in pairs]
    mat = np.array(vals, dtype=complex).reshape(g, g)
    return SiegelPoint.from_matrix(mat)


def _parse_tau_literal(text: str) -> list:
    rows = [r for r in text.strip().split(";") if r]
    entries = []
    for row in rows:
        for item in row.split(","):
            entries.append(_complex_pair(parse_complex(item)))
    return entries


def _parse_point(text: str):
    if "@" in text:
        x_str, sheet_str = text.rsplit("@", 1)
        return parse_complex(x_str), int(sheet_str)
    return parse_complex(text), 0


def _load_config(args) -> RunConfig:
    cfg = RunConfig(command=args.command)
    file_values = {}
    if getattr(args, "config", None):
        with open(args.config) as fh:
            file_values = json.load(fh)
    def pick(name, default=None):
        flag = getattr(args, name, None)
        if flag is not None:
            return flag
        if name in file_values:
            return file_values[name]
        return default

    cfg.genus = pick("genus")
    roots = pick("roots")
    if roots is not None:
        cfg.roots = (
            [parse_complex(r) for r in roots.split(",")]
            if isinstance(roots, str)
            else [complex(re, im) for re, im in roots]
        )
    coeffs = pick("coeffs")
    if coeffs is not None:
        cfg.coeffs = (
            [parse_complex(c) for c in coeffs.split(",")]
            if isinstance(coeffs, str)
            else [complex(re, im) for re, im in coeffs]
        )
    tau = pick("tau")
    if tau is not None:
        cfg.tau = _parse_tau_literal(tau) if isinstance(tau, str) else tau
    cfg.tolerance = float(pick("tolerance", 1e-12))
    rt = pick("residual_tolerance")
    cfg.residual_tolerance = None if rt is None else float(rt)
    cfg.precision = pick(
        "precision", os.environ.get(PRECISION_ENV, "standard")
    )
    cfg.dps = int(pick("dps", 30))
    cfg.seed = int(pick("seed", 0))
    cfg.output = pick("output")
    cfg.emit_audit = bool(pick("emit_audit", False))
    for name in ("char", "z", "grad", "jacobian", "subset", "identity", "green_p", "green_q", "list_f"):
        val = getattr(args, name, None)
        if val is None:
            val = file_values.get(name)
        cfg.extras[name] = val
    cfg.validate()
    return cfg


def _curve_from_config(cfg: RunConfig) -> HyperellipticCurve:
    if cfg.roots is not None:
        return HyperellipticCurve.from_roots(cfg.roots)
    if cfg.coeffs is not None:
        return HyperellipticCurve.from_coeffs(cfg.coeffs)
    raise ValueError("this command needs a curve (--roots or --coeffs)")


def _emit(cfg: RunConfig, payload, stream=None):
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text + "\n")
    else:
        (stream or sys.stdout).write(text + "\n")


def _normed_dict(nv, emit_audit: bool) -> dict:
    out = {"value": nv.value, "log_value": nv.log_value}
    if emit_audit:
        out["components"] = dict(nv.components)
        out["audit_defect"] = nv.audit_defect()
    return out


def cmd_chars(cfg: RunConfig) -> int:
    g = cfg.genus
    if g is None:
        raise ValueError("chars needs --genus")
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "chars",
        "genus": g,
        "characteristics": [
            {"char": c.text(), "parity": c.parity()} for c in all_characteristics(g)
        ],
        "odd_count": sum(1 for c in all_characteristics(g) if c.is_odd()),
    }
    if cfg.extras.get("char"):
        c = ThetaCharacteristic.parse(cfg.extras["char"])
        payload["queried"] = {"char": c.text(), "parity": c.parity()}
    if cfg.extras.get("list_f"):
        systems = enumerate_fundamental_systems(g)
        payload["fundamental_systems"] = [
            {
                "source_subset": list(fs.source_subset),
                "odd": [c.text() for c in fs.odd_part],
                "even": [c.text() for c in fs.even_part],
            }
            for fs in systems
        ]
        payload["system_count"] = len(systems)
        payload["system_count_deduped"] = len(dedupe_systems(systems))
    _emit(cfg, payload)
    print(f"chars: genus {g}, {payload['odd_count']} odd characteristics", file=sys.stderr)
    return 0


def cmd_periods(cfg: RunConfig) -> int:
    curve = _curve_from_config(cfg)
    pd = period_matrix(curve, tol=max(cfg.tolerance, 1e-13))
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "periods",
        "genus": pd.genus,
        "mu": _matrix_pairs(pd.mu),
        "mu_prime": _matrix_pairs(pd.mu_prime),
        "tau": _matrix_pairs(pd.tau.tau),
        "det_mu": _complex_pair(pd.det_mu),
        "kappa": _vector_pairs(pd.kappa),
        "tau_symmetry_defect": pd.tau.symmetry_defect,
        "dictionary_worst_residual": pd.path_log["dictionary_worst_residual"],
        "path_log": {
            "detour_side": pd.path_log["detour_side"],
            "flips": list(pd.path_log["flips"]),
            "segment_nodes": [int(n) for n in pd.path_log["segment_nodes"]],
            "segment_signs": list(pd.path_log["segment_signs"]),
            "ray_nodes": [int(n) for n in pd.path_log["ray_nodes"]],
            "ray_direction": pd.path_log["ray_direction"],
            "sigma": pd.path_log["sigma"],
        },
    }
    if pd.genus == 1:
        payload["j_invariant"] = _complex_pair(j_invariant(pd.tau))
    _emit(cfg, payload)
    print(
        f"periods: genus {pd.genus}, dictionary residual "
        f"{pd.path_log['dictionary_worst_residual']:.2e}",
        file=sys.stderr,
    )
    return 0


def cmd_theta(cfg: RunConfig) -> int:
    if cfg.tau is not None:
        sp = _tau_from_pairs(cfg.tau)
    else:
        sp = period_matrix(_curve_from_config(cfg)).tau
    if cfg.extras.get("jacobian"):
        chars = [ThetaCharacteristic.parse(t) for t in cfg.extras["jacobian"].split(",")]
        jv = jacobian_nullwert(chars, sp, cfg.tolerance, cfg.precision, cfg.dps)
        payload = {
            "schema_version": SCHEMA_VERSION,
            "command": "theta",
            "genus": sp.genus,
            "chars": [c.text() for c in chars],
            "jacobian_nullwert": _complex_pair(complex(jv.value)),
            "truncation_bound": jv.truncation_bound,
            "lattice_radius": jv.lattice_radius,
        }
        _emit(cfg, payload)
        print(f"theta: Jacobian Nullwert at genus {sp.genus}", file=sys.stderr)
        return 0
    char_text = cfg.extras.get("char") or "0" * sp.genus + "|" + "0" * sp.genus
    char = ThetaCharacteristic.parse(char_text)
    z = np.zeros(sp.genus, dtype=complex)
    if cfg.extras.get("z"):
        z = np.array([parse_complex(v) for v in cfg.extras["z"].split(",")])
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "theta",
        "genus": sp.genus,
        "char": char.text(),
        "z": _vector_pairs(z),
    }
    if cfg.extras.get("grad"):
        gr = theta_gradient_null(char, sp, cfg.tolerance, cfg.precision, cfg.dps)
        payload["gradient"] = _vector_pairs([complex(v) for v in gr.value])
        payload["truncation_bound"] = gr.truncation_bound
        payload["lattice_radius"] = gr.lattice_radius
        payload["even_input"] = gr.even_input
    else:
        tv = theta(char, z, sp, cfg.tolerance, cfg.precision, cfg.dps)
        payload["value"] = _complex_pair(complex(tv.value))
        payload["truncation_bound"] = tv.truncation_bound
        payload["lattice_radius"] = tv.lattice_radius
    _emit(cfg, payload)
    print(f"theta: char {char.text()} at genus {sp.genus}", file=sys.stderr)
    return 0


def cmd_norms(cfg: RunConfig) -> int:
    curve = _curve_from_config(cfg)
    pd = period_matrix(curve)
    g = pd.genus
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "norms",
        "genus": g,
        "norm_phi": _normed_dict(
            norm_phi(pd, cfg.tolerance, cfg.precision, cfg.dps), cfg.emit_audit
        ),
        "norm_delta": _normed_dict(
            norm_delta(pd, cfg.tolerance, cfg.precision, cfg.dps), cfg.emit_audit
        ),
    }
    if cfg.extras.get("subset"):
        if cfg.extras["subset"] == "all":
            import itertools

            subsets = list(itertools.combinations(range(1, 2 * g + 3), g))
        else:
            subsets = [tuple(int(v) for v in cfg.extras["subset"].split(","))]
        payload["norm_j"] = {
            ",".join(map(str, subset)): _normed_dict(
                norm_j(pd, subset, cfg.tolerance, cfg.precision, cfg.dps),
                cfg.emit_audit,
            )
            for subset in subsets
        }
    if cfg.extras.get("green_p") and cfg.extras.get("green_q"):
        xp, sp_idx = _parse_point(cfg.extras["green_p"])
        xq, sq_idx = _parse_point(cfg.extras["green_q"])
        yp = complex(np.sqrt(complex(curve.f(xp)))) * (1 if sp_idx == 0 else -1)
        yq = complex(np.sqrt(complex(curve.f(xq)))) * (1 if sq_idx == 0 else -1)
        payload["green_prime"] = green_prime(pd, (xp, yp), (xq, yq), cfg.tolerance)
    _emit(cfg, payload)
    print(f"norms: genus {g}", file=sys.stderr)
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    identity = cfg.extras.get("identity") or "all"
    curve = None
    pd = None
    if cfg.tau is not None:
        sp = _tau_from_pairs(cfg.tau)
    else:
        curve = _curve_from_config(cfg)
        pd = period_matrix(curve)
        sp = pd.tau
    g = sp.genus
    tol = cfg.residual_tolerance
    reports = []

    def needs_curve(name):
        if pd is None:
            raise ValueError(f"identity {name!r} needs a curve, not a bare tau")

    if identity != "all":
        selected = [identity]
    elif g == 1:
        selected = ["jacobi", "product"] + (["lockhart"] if pd is not None else [])
    else:
        selected = (["rosenhain"] if g == 2 else []) + ["guardia", "product"]
        if g in (2, 3):
            selected.append("vanishing")
        if pd is not None:
            selected += ["fourthpower", "lockhart", "dictionary"]
    for name in selected:
        if name == "jacobi":
            reports.append(check_jacobi(sp, tol, cfg.tolerance))
        elif name == "rosenhain":
            reports.append(check_rosenhain(sp, tol, cfg.tolerance, cfg.precision, cfg.dps))
        elif name == "guardia":
            reports.append(check_guardia_all(sp, tol, cfg.tolerance, cfg.precision, cfg.dps))
        elif name == "product":
            reports.append(check_product_theorem(sp, tol, cfg.tolerance, cfg.precision, cfg.dps))
        elif name == "fourthpower":
            needs_curve(name)
            reports.append(check_fourth_power(pd, tol, cfg.tolerance, cfg.precision, cfg.dps))
        elif name == "lockhart":
            needs_curve(name)
            reports.append(check_lockhart(pd, tol, cfg.tolerance, cfg.precision, cfg.dps))
        elif name == "vanishing":
            reports.append(check_vanishing_structure(sp, theta_tol=cfg.tolerance,
                                                     precision=cfg.precision, dps=cfg.dps))
        elif name == "dictionary":
            needs_curve(name)
            res = weierstrass_dictionary_residuals(pd)
            worst = max(res.values())
            dict_tol = tol if tol is not None else 1e-6
            from .identities import IdentityReport, _digest

            reports.append(
                IdentityReport(
                    "dictionary", g, worst, None, dict_tol, _digest(sp),
                    details={"classes": len(res)},
                )
            )
        else:
            raise ValueError(f"unknown identity {identity!r}")

    lines = [
        json.dumps(
            {"schema_version": SCHEMA_VERSION, **r.to_json_dict()},
            sort_keys=True,
            separators=(",", ":"),
        )
        for r in reports
    ]
    text = "\n".join(lines) + "\n"
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    failed = [r for r in reports if not r.passed]
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} {r.identity_name}: residual {r.relative_residual:.3e}"
              f" (tol {r.tolerance_used:.1e})", file=sys.stderr)
    return CHECK_FAILED if failed else 0


def cmd_suite(cfg: RunConfig) -> int:
    results = run_suite(stream=sys.stderr)
    lines = []
    for r in results:
        payload = {"schema_version": SCHEMA_VERSION, "command": "suite", **_plain(r)}
        payload.pop("elapsed_s", None)  # keep stdout byte-identical across runs
        lines.append(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    text = "\n".join(lines) + "\n"
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if all(r["passed"] for r in results) else CHECK_FAILED


def _plain(obj):
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypertheta",
        description="Theta characteristics, hyperelliptic periods, and "
        "product-identity verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--genus", type=int)
        p.add_argument("--roots", help="comma-separated ordered roots, e.g. '-1,0,1'")
        p.add_argument("--coeffs", help="monic coefficients, highest first")
        p.add_argument("--tau", help="tau literal, rows ';'-separated, e.g. 'i' or '1+2i,i;i,2i'")
        p.add_argument("--tolerance", type=float)
        p.add_argument("--residual-tolerance", dest="residual_tolerance", type=float)
        p.add_argument("--precision", choices=["standard", "extended"])
        p.add_argument("--dps", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--output")
        p.add_argument("--config", help="JSON file supplying any of the flags")
        p.add_argument("--emit-audit", dest="emit_audit", action="store_true", default=None)

    p = sub.add_parser("chars", help="enumerate characteristics and fundamental systems")
    common(p)
    p.add_argument("--char", help="characteristic to inspect, e.g. '10|01'")
    p.add_argument("--list-F", dest="list_f", action="store_true", default=None)

    p = sub.add_parser("periods", help="period matrices and tau for a curve")
    common(p)

    p = sub.add_parser("theta", help="evaluate theta or its gradient at a tau")
    common(p)
    p.add_argument("--char")
    p.add_argument("--z", help="comma-separated complex vector")
    p.add_argument("--grad", action="store_true", default=None)
    p.add_argument(
        "--jacobian",
        help="comma-separated odd characteristics for the Jacobian Nullwert",
    )

    p = sub.add_parser("norms", help="Petersson norms, normalized Nullwerte, Green function")
    common(p)
    p.add_argument(
        "--subset",
        help="comma-separated Weierstrass indices for the J norm, or 'all'",
    )
    p.add_argument("--green-p", dest="green_p", help="point 'x@sheet' for G'")
    p.add_argument("--green-q", dest="green_q", help="point 'x@sheet' for G'")

    p = sub.add_parser("verify", help="run identity checks")
    common(p)
    p.add_argument(
        "--identity",
        choices=["jacobi", "rosenhain", "guardia", "product", "fourthpower",
                 "lockhart", "vanishing", "dictionary", "all"],
    )

    p = sub.add_parser("suite", help="run the full acceptance corpus")
    common(p)
    return parser


COMMANDS = {
    "chars": cmd_chars,
    "periods": cmd_periods,
    "theta": cmd_theta,
    "norms": cmd_norms,
    "verify": cmd_verify,
    "suite": cmd_suite,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        cfg = _load_config(args)
        return COMMANDS[args.command](cfg)
    except (ValueError, CurveError, SiegelError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (QuadratureError, PathError, BasisCalibrationError, LatticeBudgetError) as exc:
        print(f"computation failed: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
