"""Command-line interface: ``thetabounds <subcommand> ...``.

Spectral parameters are given as comma-separated coordinates. A plain
number x stands for the tempered coordinate i*x; entries containing ``j``
are read as Python complex literals (``0.5+3j``).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import acceptance
from . import density as dens
from . import exponents as ex
from . import finorders as fo
from . import paleywiener as pw
from . import thetatransfer as tt
from .config import ConfigError, load_config
from .rootsys import Family, SpectralParameter, SymmetricSpaceDescriptor, build_root_system, weyl_group


def parse_lambda(text: str) -> SpectralParameter:
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        out.append(complex(tok) if "j" in tok else 1j * float(tok))
    if not out:
        raise argparse.ArgumentTypeError("empty parameter")
    return SpectralParameter(out)


def _exact(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    return str(int(x))


def _descriptor(args) -> SymmetricSpaceDescriptor:
    fam = Family(args.family)
    n = args.n if fam.indefinite else None
    return SymmetricSpaceDescriptor(fam, args.m, n)


def _fmt_float(x) -> float:
    return float(f"{float(x):.12g}")


# subcommands


def cmd_roots(args, cfg):
    desc = _descriptor(args)
    sys_ = build_root_system(desc)
    roots = [{"root": list(a), "multiplicity": m} for a, m in sys_.roots]
    if cfg.format == "csv":
        lines = ["root,multiplicity"] + [f"{';'.join(map(str, r['root']))},{r['multiplicity']}" for r in roots]
        return "\n".join(lines) + "\n"
    payload = {"space": desc.label(), "type": sys_.type_tag, "rank": sys_.rank, "dimension": desc.dimension(),
               "roots": roots, "multiplicity_sum": sys_.multiplicity_sum(),
               "dim_minus_rank": desc.dimension() - desc.rank(),
               "weyl_order": len(weyl_group(sys_.rank)) if sys_.rank <= 8 else None}
    return json.dumps(payload, indent=2) + "\n"


def cmd_density(args, cfg):
    sys_ = build_root_system(_descriptor(args))
    nu = args.nu
    if nu.rank != sys_.rank:
        raise ValueError(f"nu has {nu.rank} coordinates, the system has rank {sys_.rank}")
    grid = dens.density_grid(sys_, nu, args.radius, args.samples)
    if cfg.format == "csv":
        return grid.to_csv()
    payload = {"nu": [f"{c.imag:.6f}i" for c in nu.coords],
               "beta": _fmt_float(dens.beta(sys_, nu, cfg.pole_guard)),
               "beta_tilde": _fmt_float(dens.beta_tilde(sys_, nu)),
               "grid": [{"lambda": [f"{c.imag:.6f}i" for c in lam], "beta": _fmt_float(b), "beta_tilde": _fmt_float(bt)}
                        for lam, b, bt in grid.values]}
    if args.ball:
        payload["ball_integral"] = _fmt_float(dens.ball_integral(sys_, nu, args.ball, rtol=cfg.quad_rtol))
    return json.dumps(payload, indent=2) + "\n"


def cmd_testfn(args, cfg):
    sys_ = build_root_system(_descriptor(args))
    if sys_.rank > 2:
        raise ValueError("testfn supports rank <= 2")
    bump = pw.BumpSpec(cfg.bump_radius, cfg.radius_cap)
    nu = args.nu
    t = pw.TestFunctionTransform(bump, nu, sys_)
    rng = np.random.default_rng(cfg.seed)
    W = len(weyl_group(sys_.rank))
    if args.property == 1:
        # |k_hat| <= |W|^2 exp(R ||Re lambda||), plus the decay constant for A
        re = rng.uniform(-5.0, 5.0, (cfg.random_trials, sys_.rank))
        im = nu.coords.imag + rng.uniform(-60.0, 60.0, (cfg.random_trials, sys_.rank))
        lam = re + 1j * im
        bound = W ** 2 * np.exp(bump.radius * np.linalg.norm(re, axis=1))
        ratio = np.abs(t.khat(lam)) / bound
        grid = {"kind": "random complex", "points": cfg.random_trials, "re_max": 5.0, "im_halfwidth": 60.0,
                "A": args.A, "decay_constant": _fmt_float(pw.decay_constant(t, args.A))}
        min_value = float((1.0 - ratio).min())
        violation = float(max(ratio.max() - 1.0, 0.0))
    elif args.property == 2:
        xi = rng.uniform(-100.0, 100.0, (cfg.random_trials, sys_.rank))
        vals = t.khat(1j * xi).real
        grid = {"kind": "random tempered", "points": cfg.random_trials, "halfwidth": 100.0}
        min_value = float(vals.min())
        violation = float(max(-min_value - acceptance.NONNEG_SLACK, 0.0))
    else:
        min_value = pw.khat_ball_minimum(t, 1.0)
        grid = {"kind": "polar ball", "radius": 1.0, "floor": acceptance.KHAT_FLOOR}
        violation = float(max(acceptance.KHAT_FLOOR - min_value, 0.0))
    payload = {"property": args.property, "grid": grid, "min_value": _fmt_float(min_value),
               "max_violation": _fmt_float(violation), "verdict": "PASS" if violation == 0 else "FAIL"}
    return json.dumps(payload, indent=2) + "\n"


def cmd_orders(args, cfg):
    datum = fo.LocalGroupDatum(fo.GroupFamily(args.family), args.size, args.q, args.level, args.epsilon)
    out = {"formula_value": _exact(fo.congruence_index(datum))}
    if args.oracle:
        oracle = fo.brute_force_order(datum, cap=cfg.enum_cap)
        out["oracle_value"] = _exact(oracle)
        out["match"] = oracle == int(out["formula_value"])
    if cfg.format == "csv":
        return ",".join(out) + "\n" + ",".join(str(v).lower() if isinstance(v, bool) else v for v in out.values()) + "\n"
    return json.dumps(out, indent=2) + "\n"


def cmd_exponents(args, cfg):
    c = ex.ConfigurationCase(args.n, args.m, ex.Case(args.case), relaxed=args.relaxed)
    if args.nu is not None or args.ideal_norm is not None:
        nu = args.nu if args.nu is not None else SpectralParameter.tempered([cfg.nu_norm_min] * c.m)
        rep = ex.hybrid_bound_report(c, nu, args.ideal_norm or 1, q=args.q, level_max=args.levels)
    else:
        rep = ex.exponent_report(c, args.q, args.levels)
    slope = "" if rep.measured_slope is None else str(rep.measured_slope)
    row = {"case": c.case.value, "n": c.n, "m": c.m, "E": str(rep.E), "nontrivial": str(rep.nontrivial).lower(),
           "slope": slope, "hybrid_factors": rep.hybrid_factors_str()}
    if cfg.format == "json":
        row["volume_exponents"] = [str(x) for x in rep.volume_exponents]
        bound = rep.hybrid.bound() if rep.hybrid else None
        row["bound"] = None if bound is None else _fmt_float(bound)
        row["notes"] = list(rep.notes)
        return json.dumps(row, indent=2) + "\n"
    return ",".join(row) + "\n" + ",".join(str(v) for v in row.values()) + "\n"


def cmd_theta(args, cfg):
    c = ex.ConfigurationCase(args.n, args.m, ex.Case(args.case))
    out = {"case": c.case.value, "n": c.n, "m": c.m, "mode": args.mode}
    if args.mode == "tempered":
        if args.lam is None:
            raise ValueError("--lambda is required for mode tempered")
        k, lam = tt.transfer_tempered(c, args.lam)
        out["ktype"] = [str(p) for p in k.powers]
        out["spectral_parameter"] = tt.as_parameter(lam).to_strings()
    elif args.mode == "trivial":
        k, p = tt.transfer_trivial(c)
        out["ktype"] = [str(x) for x in k.powers]
        out["parameter"] = p.to_strings()
        if p.note:
            out["note"] = p.note
        if c.case is ex.Case.UNITARY:
            lhs, rhs = tt.trivial_lift_identity(c)
            out["ambient_rho"] = lhs.to_strings()
            out["rho_identity_holds"] = lhs.re == rhs.re
    else:
        lam = args.lam if args.lam is not None else SpectralParameter.tempered([k + 1.0 for k in range(c.m)])
        rows = []
        for mp in ([args.m_prime] if args.m_prime else range(1, c.m + 1)):
            w = tt.first_occurrence_witness(c, mp)
            rows.append({"m_prime": mp, "vanishes": tt.first_occurrence_vanishes(c, mp, lam),
                         "witness_display": None if w is None else [str(x) for x in w.display],
                         "witness_direct": None if w is None else [str(x) for x in w.direct]})
        out["lambda"] = tt.as_parameter(lam).to_strings()
        out["first_occurrence"] = rows
    return json.dumps(out, indent=2) + "\n"


def cmd_verify_all(args, cfg):
    results = acceptance.run_all(cfg, determinism=not args.skip_determinism)
    for r in results:
        print(r.line(), file=sys.stderr)
    report = acceptance.render(results, cfg.format)
    return report, all(r.passed for r in results)


COMMANDS = {"roots": ("rootsys", cmd_roots), "density": ("density", cmd_density),
            "testfn": ("paleywiener", cmd_testfn), "orders": ("finorders", cmd_orders),
            "exponents": ("exponents", cmd_exponents), "theta": ("thetatransfer", cmd_theta),
            "verify-all": ("acceptance", cmd_verify_all)}

DEFAULT_FORMAT = {"density": "csv", "exponents": "csv"}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="thetabounds", description=__doc__.splitlines()[0])
    p.add_argument("--config", help="key = value file with RunConfig fields")
    p.add_argument("--format", choices=("json", "csv"))
    p.add_argument("--out", help="write the artifact here instead of stdout")
    p.add_argument("--seed", type=int)
    sub = p.add_subparsers(dest="command", required=True)

    def space(sp):
        sp.add_argument("--family", choices=[f.value for f in Family], required=True)
        sp.add_argument("--n", type=int)
        sp.add_argument("--m", type=int, required=True)

    space(sub.add_parser("roots", help="restricted root system"))
    d = sub.add_parser("density", help="beta and beta_tilde on a grid")
    space(d)
    d.add_argument("--nu", type=parse_lambda, required=True)
    d.add_argument("--radius", type=float, default=1.0)
    d.add_argument("--samples", type=int, default=5)
    d.add_argument("--ball", type=float, help="also integrate beta over the ball of this radius")
    t = sub.add_parser("testfn", help="verify a property of the test-function transform")
    space(t)
    t.add_argument("--nu", type=parse_lambda, required=True)
    t.add_argument("--property", type=int, choices=(1, 2, 3), required=True)
    t.add_argument("--A", type=float, default=4.0)
    o = sub.add_parser("orders", help="finite group orders")
    o.add_argument("--family", choices=[f.value for f in fo.GroupFamily], required=True)
    o.add_argument("--size", type=int, required=True)
    o.add_argument("--q", type=int, required=True)
    o.add_argument("--level", type=int, default=1)
    o.add_argument("--epsilon", type=int, default=0)
    o.add_argument("--oracle", action="store_true")
    e = sub.add_parser("exponents", help="volume exponents and E")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--m", type=int, required=True)
    e.add_argument("--case", choices=[c.value for c in ex.Case], required=True)
    e.add_argument("--q", type=int)
    e.add_argument("--levels", type=int, default=3)
    e.add_argument("--nu", type=parse_lambda)
    e.add_argument("--ideal-norm", type=int)
    e.add_argument("--relaxed", action="store_true", help="drop the parity and n+m >= 4 hypotheses")
    th = sub.add_parser("theta", help="theta transfer parameters")
    th.add_argument("--n", type=int, required=True)
    th.add_argument("--m", type=int, required=True)
    th.add_argument("--case", choices=[c.value for c in ex.Case], required=True)
    th.add_argument("--mode", choices=("tempered", "trivial", "first-occurrence"), required=True)
    th.add_argument("--lambda", dest="lam", type=parse_lambda)
    th.add_argument("--m-prime", type=int)
    v = sub.add_parser("verify-all", help="run the acceptance suite")
    v.add_argument("--skip-determinism", action="store_true")
    return p


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        fmt = args.format or (cfg.format if args.config else DEFAULT_FORMAT.get(args.command, "json"))
        cfg = cfg.replace(format=fmt, out=args.out, seed=args.seed)
    except (ConfigError, OSError) as exc:
        print(f"thetabounds: config error: {exc}", file=sys.stderr)
        return 2
    module, fn = COMMANDS[args.command]
    params = {k: v for k, v in vars(args).items() if k not in ("config", "format", "out", "seed")}
    ok = True
    try:
        result = fn(args, cfg)
        if isinstance(result, tuple):
            result, ok = result
    except Exception as exc:  # report the module and parameters, then fail
        print(f"thetabounds: error in {module}: {type(exc).__name__}: {exc}", file=sys.stderr)
        print(f"  parameters: {params}", file=sys.stderr)
        return 1
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(result)
    else:
        sys.stdout.write(result)
    return 0 if ok else 1


def main():
    sys.exit(run())
