"""Command-line front end.

    torusperiods [--config PATH] [--out PATH] [--jobs K] [--verify] COMMAND [ARGS]

The config is a JSON object.  Field values are coefficient maps over the
basis radicals ({"1": "1/2", "6": "-3"} is 1/2 - 3 sqrt 6), plain ints or
"p/q" strings; decimals are rejected.  Without a config the class
kappa = (1, sqrt2, sqrt3, sqrt5, sqrt6, sqrt7) and lambda = 2 over
Q(sqrt2, sqrt3, sqrt5, sqrt7) are used.

Exit status: 0 on success, 2 on a certified negative verdict (resonant
kappa, violated membership, non-identity Kronecker matrix), 1 on errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .cone import KappaProfile, kappa_profile, lambda_admissible
from .enumeration import (brute_force_delta_box, delta_class, enumerate_delta_in_ellipsoid,
                          finiteness_radius, generator_pump, is_delta_member)
from .exact_scalar import FieldContext
from .jsonio import field_from_json, scalar_to_json
from .lattice import GRAM, alt_form_of, frobenius_normal_form, kernel_sublattice, pairing, signature
from .monodromy import (ParityCertificate, boundary_samples, kronecker_matrix, pl_loop_parity,
                        winding_parity)
from .period import (PeriodMatrix, PeriodPoint, certify_in_D_lambda, family_zeros,
                     genericity_up_to_radius, on_hyperplane, pluecker, polarized_period,
                     search_polarized_period)

DEFAULT_RADICANDS = (2, 3, 5, 7)
DEFAULT_KAPPA = [1, {"2": 1}, {"3": 1}, {"5": 1}, {"6": 1}, {"7": 1}]


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    ctx: FieldContext
    kappa: tuple
    lam: Any
    raw: dict = field(default_factory=dict)
    jobs: int = 1

    @classmethod
    def from_mapping(cls, raw: dict, jobs: int = 1) -> "RunConfig":
        try:
            ctx = FieldContext(raw.get("radicands", DEFAULT_RADICANDS))
        except ValueError as exc:
            raise ConfigError(f"invalid radicands: {exc}") from exc
        kappa_raw = raw.get("kappa", DEFAULT_KAPPA)
        if len(kappa_raw) != 6:
            raise ConfigError(f"kappa needs 6 coordinates, got {len(kappa_raw)}")
        kappa = tuple(_field(x, ctx, "kappa") for x in kappa_raw)
        lam = _field(raw.get("lambda", 2), ctx, "lambda")
        return cls(ctx, kappa, lam, raw, int(raw.get("jobs", jobs)))

    def profile(self) -> KappaProfile:
        return kappa_profile(self.kappa, self.ctx)

    def delta(self, key: str = "delta") -> tuple[int, ...]:
        if key not in self.raw:
            raise ConfigError(f"config needs '{key}'")
        d = tuple(int(x) for x in self.raw[key])
        if len(d) != 6:
            raise ConfigError(f"'{key}' needs 6 integers")
        return d


def _field(x, ctx, what):
    if isinstance(x, float):
        raise ConfigError(f"{what}: decimals are not accepted, use a coefficient map or 'p/q'")
    try:
        return field_from_json(x, ctx)
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"{what}: cannot parse {x!r}: {exc}") from exc


def _rows(raw, ctx):
    from .jsonio import complex_from_json
    return [complex_from_json(x, ctx) for x in raw]


def _point(cfg: RunConfig, profile: KappaProfile) -> PeriodPoint:
    """The period point named by the config: 'phi', 'period_matrix', or built from 'rho'."""
    raw = cfg.raw
    if "phi" in raw or "period_matrix" in raw:
        return PeriodPoint.from_json(raw, cfg.ctx)
    constraints = [tuple(d) for d in raw.get("constraints", [])]
    if "rho" in raw:
        pm = polarized_period(profile, _rows(raw["rho"], cfg.ctx), constraints)
    else:
        pm = search_polarized_period(profile, constraints)
    return pluecker(pm, repair=False)


# -- commands ----------------------------------------------------------------------------

def cmd_gram(cfg, args):
    deltas = [tuple(int(x) for x in d) for d in cfg.raw.get("vectors", [])]
    out = {"gram": [list(r) for r in GRAM], "signature": list(signature())}
    if deltas:
        out["vectors"] = [{"vector": list(d), "square": pairing(d, d)} for d in deltas]
    return out, 0


def cmd_check_kappa(cfg, args):
    profile = cfg.profile()
    out = profile.resonance.to_json()
    out["kappa_squared"] = scalar_to_json(profile.kappa_sq)
    out["lambda_admissible"] = lambda_admissible(profile.kappa, cfg.lam)
    if args.verify and not profile.nonresonant:
        out["verified"] = pairing(profile.kappa, tuple(out["witness"])) == 0
    return out, 0 if profile.nonresonant else 2


def cmd_pump(cfg, args):
    profile = cfg.profile()
    deltas = generator_pump(profile, cfg.lam, args.n)
    out = {"lambda": scalar_to_json(cfg.lam), "deltas": [d.to_json() for d in deltas]}
    if args.verify:
        ok = all(is_delta_member(d.delta, profile, cfg.lam) for d in deltas)
        ok = ok and all((a.pairing_with_kappa - b.pairing_with_kappa).sign() > 0
                        for a, b in zip(deltas, deltas[1:]))
        out["verified"] = ok
    return out, 0


def cmd_enumerate(cfg, args):
    profile = cfg.profile()
    out: dict = {"lambda": scalar_to_json(cfg.lam)}
    box = args.box if args.box is not None else cfg.raw.get("box")
    have_point = (args.point or box is None
                  or any(k in cfg.raw for k in ("phi", "period_matrix", "rho", "constraints")))
    ell = None
    if have_point:
        pt = _point(cfg, profile)
        slack = Fraction(cfg.raw.get("slack", 0))
        form = finiteness_radius(profile, pt.x1, pt.x2, cfg.lam, slack)
        ell = enumerate_delta_in_ellipsoid(form, profile, cfg.lam, cfg.jobs)
        out["point"] = pt.to_json()
        out["ellipsoid"] = {"bound": scalar_to_json(form.bound), "slack": str(slack),
                            "deltas": [d.to_json() for d in ell]}
    if box is not None:
        found = brute_force_delta_box(profile, cfg.lam, int(box), cfg.jobs)
        out["box"] = {"radius": int(box), "count": len(found), "deltas": [d.to_json() for d in found]}
        if ell is not None:
            in_box = {d.delta for d in ell if max(map(abs, d.delta)) <= int(box)}
            in_ell = {d.delta for d in found if form.contains(d.delta)}
            out["agree_on_common_region"] = in_box == in_ell
    return out, 0


def cmd_normal_form(cfg, args):
    d = tuple(int(x) for x in args.delta.split(",")) if args.delta else cfg.delta()
    m = alt_form_of(d)
    f = frobenius_normal_form(m)
    out = {"delta": list(d), "square": pairing(d, d), "d1": f.d1, "d2": f.d2,
           "basis": [list(b) for b in f.basis], "canonical": f.canonical(),
           "kernel": kernel_sublattice(m)}
    if args.verify:
        u = f.matrix
        ut_m_u = [[sum(u[a][i] * m[a][b] * u[b][j] for a in range(4) for b in range(4))
                   for j in range(4)] for i in range(4)]
        out["verified"] = ut_m_u == f.canonical() and pairing(d, d) == 2 * f.d1 * f.d2
    return out, 0


def cmd_period(cfg, args):
    profile = cfg.profile()
    pt = _point(cfg, profile)
    constraints = [tuple(d) for d in cfg.raw.get("constraints", [])]
    out = {
        "point": pt.to_json(),
        "quadric_zero": pt.quadric().is_zero(),
        "hermitian_norm": scalar_to_json(pt.hermitian_norm()),
        "polarized": pt.pairing(profile.kappa).is_zero(),
        "on_constraints": [on_hyperplane(pt, d) for d in constraints],
    }
    if "genericity_radius" in cfg.raw:
        out["generic_up_to_radius"] = genericity_up_to_radius(pt, int(cfg.raw["genericity_radius"]))
    return out, 0


def cmd_certify(cfg, args):
    profile = cfg.profile()
    pt = _point(cfg, profile)
    cert = certify_in_D_lambda(pt, profile, cfg.lam, cfg.jobs)
    out = cert.to_json()
    if args.verify:
        replay = PeriodPoint.from_json(json.loads(json.dumps(out["point"])), cfg.ctx)
        if cert.violation is not None:
            ok = on_hyperplane(replay, cert.violation) and is_delta_member(cert.violation, profile, cfg.lam)
        else:
            ok = all(not on_hyperplane(replay, c) for c in cert.candidates)
            ok = ok and all(not any(_primitive(f.member(n)) for n in family_zeros(replay, f))
                            for f in cert.families)
        out["verified"] = ok
    return out, 0 if cert.violation is None else 2


def _primitive(v):
    import math
    return math.gcd(*v) == 1


def cmd_kronecker(cfg, args):
    profile = cfg.profile()
    deltas = generator_pump(profile, cfg.lam, args.n)
    matrix, certs = kronecker_matrix(deltas, profile, cfg.lam, cfg.jobs)
    out = {"lambda": scalar_to_json(cfg.lam), "deltas": [list(d.delta) for d in deltas],
           "matrix": matrix, "certificates": [c.to_json() for c in certs]}
    identity = all(matrix[i][j] == int(i == j) for i in range(len(matrix)) for j in range(len(matrix)))
    out["identity"] = identity
    if args.verify:
        out["verified"] = all(ParityCertificate.from_json(json.loads(json.dumps(c))).verify()
                              for c in out["certificates"])
    return out, 0 if identity else 2


def cmd_parity(cfg, args):
    raw = cfg.raw
    loop_raw = raw.get("loop")
    if isinstance(loop_raw, str):
        with open(loop_raw) as fh:
            loop_raw = json.load(fh)
    if not loop_raw:
        raise ConfigError("config needs 'loop': a list of period-point records or a path to one")
    loop = [PeriodPoint.from_json(p, cfg.ctx) for p in loop_raw]
    d = tuple(int(x) for x in args.delta.split(",")) if args.delta else cfg.delta()
    return {"delta": list(d), "vertices": len(loop), "parity": pl_loop_parity(loop, d)}, 0


COMMANDS = {
    "gram": cmd_gram,
    "check-kappa": cmd_check_kappa,
    "pump": cmd_pump,
    "enumerate": cmd_enumerate,
    "normal-form": cmd_normal_form,
    "period": cmd_period,
    "certify": cmd_certify,
    "kronecker": cmd_kronecker,
    "parity": cmd_parity,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="torusperiods", description=__doc__.split("\n\n")[0])
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for enumerations")
    p.add_argument("--verify", action="store_true", help="replay the emitted certificate")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("gram", help="Gram matrix and signature of E")
    sub.add_parser("check-kappa", help="non-resonance certificate for kappa")
    sp = sub.add_parser("pump", help="N elements of Delta from the continued-fraction pump")
    sp.add_argument("n", type=int)
    sp = sub.add_parser("enumerate", help="Delta in the ellipsoid of a point and/or in a box")
    sp.add_argument("--box", type=int, help="brute-force box radius")
    sp.add_argument("--point", action="store_true", help="also enumerate the ellipsoid of a point")
    sp = sub.add_parser("normal-form", help="Frobenius normal form of a class")
    sp.add_argument("--delta", help="comma-separated class, overrides the config")
    sub.add_parser("period", help="construct a polarized period point")
    sub.add_parser("certify", help="decide membership of a point in D_lambda")
    sp = sub.add_parser("kronecker", help="parity matrix of the first N generator loops")
    sp.add_argument("n", type=int)
    sp = sub.add_parser("parity", help="parity of a PL loop around H_delta")
    sp.add_argument("--delta", help="comma-separated class, overrides the config")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        raw = {}
        if args.config:
            with open(args.config) as fh:
                raw = json.load(fh)
            if not isinstance(raw, dict):
                raise ConfigError("config must be a JSON object")
        cfg = RunConfig.from_mapping(raw, args.jobs)
        if args.jobs != 1:
            cfg.jobs = args.jobs
        out, status = COMMANDS[args.command](cfg, args)
    except (ConfigError, ValueError, ArithmeticError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.verify and out.get("verified") is False:
        status = 1
    text = json.dumps(out, sort_keys=True, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
