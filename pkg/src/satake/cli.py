"""Command-line front end: datum selection, computations, verification batteries.

Every subcommand produces deterministic output for fixed inputs (sorted keys,
canonical polynomial printing).  Exit status: 0 success, 1 verification
failure, 2 usage error, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .grassmannian import Grassmannian
from .hecke import A_BASIS, HeckeAlgebra
from .rank1_oracle import Rank1Oracle, is_prime
from .rep_ring import RepRing, torus_point
from .root_datum import PRESETS, RootDatum, build_root_datum
from .whittaker import WhittakerModule

JOB_CAP = 16


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    datum: RootDatum
    output_format: Optional[str]
    v_value: Optional[Fraction]  # chosen square root of q, when q is rational
    jobs: int
    out_path: Optional[str]


def _load_datum(spec: str) -> RootDatum:
    if spec in PRESETS:
        return build_root_datum(spec)
    if os.path.isfile(spec):
        with open(spec) as fh:
            return build_root_datum(json.load(fh))
    raise UsageError(
        "unknown datum %r: expected a preset (%s) or a JSON file path"
        % (spec, ", ".join(sorted(PRESETS)))
    )


def _parse_coweight(text: str, datum: RootDatum) -> Tuple[int, ...]:
    try:
        coords = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise UsageError("cannot parse coweight %r (expected comma-separated integers)" % text)
    if len(coords) != datum.lattice_rank:
        raise UsageError(
            "coweight %r has %d coordinates; datum needs %d"
            % (text, len(coords), datum.lattice_rank)
        )
    return coords


def _parse_gamma(text: str, datum: RootDatum):
    try:
        values = [Fraction(part) for part in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise UsageError("cannot parse torus point %r (expected comma-separated rationals)" % text)
    try:
        return torus_point(values, datum)
    except ValueError as exc:
        raise UsageError(str(exc))


def _exact_sqrt(q: Fraction) -> Fraction:
    n = math.isqrt(q.numerator)
    d = math.isqrt(q.denominator)
    if n * n != q.numerator or d * d != q.denominator:
        raise UsageError("q = %s is not a perfect rational square; pass a square value" % q)
    return Fraction(n, d)


def _config(args) -> CliConfig:
    datum = _load_datum(args.datum)
    v_value = None
    if getattr(args, "q", None) is not None:
        try:
            q = Fraction(args.q)
        except (ValueError, ZeroDivisionError):
            raise UsageError("cannot parse q value %r" % args.q)
        if q <= 0:
            raise UsageError("q must be a positive rational")
        v_value = _exact_sqrt(q)
    jobs = getattr(args, "jobs", 1)
    if jobs < 0:
        raise UsageError("--jobs must be nonnegative")
    jobs = min(jobs, JOB_CAP) if jobs else 0
    return CliConfig(
        datum=datum,
        output_format=getattr(args, "format", None),
        v_value=v_value,
        jobs=jobs,
        out_path=getattr(args, "out", None),
    )


def _emit(text: str, config: CliConfig) -> None:
    if config.out_path:
        with open(config.out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _coweight_key(cw: Sequence[int]) -> str:
    return ",".join(str(x) for x in cw)


def _mult_map_output(mapping, config: CliConfig) -> str:
    items = sorted(mapping.items())
    fmt = config.output_format or "json"
    if fmt == "json":
        return _json_dump({_coweight_key(cw): mult for cw, mult in items})
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["coweight", "multiplicity"])
        for cw, mult in items:
            writer.writerow([_coweight_key(cw), mult])
        return buf.getvalue()
    return "".join("%s: %d\n" % (_coweight_key(cw), mult) for cw, mult in items)


# -- subcommands ---------------------------------------------------------------


def _cmd_tensor(args) -> int:
    config = _config(args)
    rep = RepRing(config.datum)
    lam = _parse_coweight(args.lam, config.datum)
    mu = _parse_coweight(args.mu, config.datum)
    _emit(_mult_map_output(rep.tensor_decompose(lam, mu), config), config)
    return 0


def _cmd_weights(args) -> int:
    config = _config(args)
    rep = RepRing(config.datum)
    lam = _parse_coweight(args.lam, config.datum)
    _emit(_mult_map_output(rep.weight_table(lam), config), config)
    return 0


def _cmd_satake(args) -> int:
    config = _config(args)
    algebra = HeckeAlgebra(config.datum)
    lam = _parse_coweight(args.lam, config.datum)
    element = algebra.satake_to_c(algebra.monomial(A_BASIS, lam))
    fmt = config.output_format or "json"
    if fmt == "pretty":
        lines = [
            "c_%s: %s" % (_coweight_key(cw), coeff) for cw, coeff in element.sorted_terms()
        ]
        lines.append("(q = v^2)")
        _emit("\n".join(lines) + "\n", config)
    else:
        _emit(_json_dump(element.to_json()), config)
    return 0


def _cmd_hecke_mul(args) -> int:
    config = _config(args)
    algebra = HeckeAlgebra(config.datum)
    lam = _parse_coweight(args.lam, config.datum)
    mu = _parse_coweight(args.mu, config.datum)
    product = algebra.mul(algebra.monomial(A_BASIS, lam), algebra.monomial(A_BASIS, mu))
    _emit(_json_dump(product.to_json()), config)
    return 0


def _cmd_whittaker_eval(args) -> int:
    config = _config(args)
    module = WhittakerModule(HeckeAlgebra(config.datum))
    gamma = _parse_gamma(args.gamma, config.datum)
    rows = []
    for lam in config.datum.dominant_box(args.cutoff):
        value = module.whittaker_value(gamma, lam)
        if config.v_value is not None:
            folded = value.evaluate(config.v_value)
            rows.append((lam, folded.numerator, folded.denominator, 0))
        else:
            rows.append((lam, value.coeff.numerator, value.coeff.denominator, value.v_power))
    fmt = config.output_format or "csv"
    if fmt == "json":
        payload = {
            _coweight_key(lam): {"num": num, "den": den, "v_power": power}
            for lam, num, den, power in rows
        }
        _emit(_json_dump(payload), config)
    else:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["lambda", "numerator", "denominator", "v_power"])
        for lam, num, den, power in rows:
            writer.writerow([_coweight_key(lam), num, den, power])
        _emit(buf.getvalue(), config)
    return 0


def _cmd_predict(args) -> int:
    config = _config(args)
    geometry = Grassmannian(RepRing(config.datum))
    lam = _parse_coweight(args.lam, config.datum)
    mu = _parse_coweight(args.mu, config.datum)
    nu = _parse_coweight(args.nu, config.datum)
    try:
        prediction = geometry.predicted_cohomology(lam, mu, nu)
    except ValueError as exc:
        raise UsageError(str(exc))
    fmt = config.output_format or "json"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["lambda", "mu", "nu", "vanishes", "k", "dim", "frob_weight"])
        writer.writerow(
            [
                _coweight_key(lam),
                _coweight_key(mu),
                _coweight_key(nu),
                prediction.vanishes,
                "" if prediction.degree is None else prediction.degree,
                prediction.dimension,
                "" if prediction.frobenius_weight is None else prediction.frobenius_weight,
            ]
        )
        _emit(buf.getvalue(), config)
    else:
        _emit(_json_dump(prediction.to_json()), config)
    return 0


def _cmd_strata(args) -> int:
    config = _config(args)
    geometry = Grassmannian(RepRing(config.datum))
    strata = geometry.drinfeld_strata(args.bound)
    fmt = config.output_format or "json"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["gamma", "codim"])
        for gamma, codim in strata:
            writer.writerow([_coweight_key(gamma), codim])
        _emit(buf.getvalue(), config)
    else:
        _emit(
            _json_dump([{"gamma": list(gamma), "codim": codim} for gamma, codim in strata]),
            config,
        )
    return 0


def _cmd_verify_cs(args) -> int:
    config = _config(args)
    algebra = HeckeAlgebra(config.datum)
    module = WhittakerModule(algebra)
    datum = config.datum
    box = datum.dominant_box(args.cutoff)
    checks = []

    phi0 = module.phi_zero()
    basis_fail = 0
    for lam in box:
        element = algebra.monomial(A_BASIS, lam)
        if module.act(phi0, element) != module.f_transform(element):
            basis_fail += 1
    checks.append(("basis-compatibility", len(box), basis_fail))

    module_fail = 0
    for lam in box:
        for mu in box:
            h1 = algebra.monomial(A_BASIS, lam)
            h2 = algebra.monomial(A_BASIS, mu)
            lhs = module.f_transform(algebra.mul(h1, h2))
            rhs = module.act(module.f_transform(h1), h2)
            if lhs != rhs:
                module_fail += 1
    checks.append(("module-axiom", len(box) * len(box), module_fail))

    rng = random.Random(args.seed)
    actions = [lam for lam in box if 0 < datum.pairing_2rho(lam) <= 4] or box[:1]
    eigen_fail = 0
    for _ in range(args.gammas):
        gamma = tuple(
            Fraction(rng.choice([k for k in range(-9, 10) if k]), rng.randint(1, 9))
            for _ in range(datum.lattice_rank)
        )
        for lam_act in actions:
            residual = module.eigen_residual(gamma, lam_act, args.cutoff)
            if any(value != 0 for value in residual.values()):
                eigen_fail += 1
    checks.append(("eigenfunction", args.gammas * len(actions), eigen_fail))

    ok = all(fail == 0 for _, _, fail in checks)
    fmt = config.output_format or "pretty"
    if fmt == "json":
        payload = {
            "checks": [
                {"name": name, "cases": cases, "failures": fail} for name, cases, fail in checks
            ],
            "pass": ok,
        }
        _emit(_json_dump(payload), config)
    else:
        lines = [
            "%s: %s (%d cases)" % (name, "PASS" if fail == 0 else "FAIL %d" % fail, cases)
            for name, cases, fail in checks
        ]
        _emit("\n".join(lines) + "\n", config)
    return 0 if ok else 1


def _cmd_verify_eq2(args) -> int:
    config = _config(args)
    for q in args.primes:
        if not is_prime(q):
            raise UsageError("q values must be primes; got %d" % q)
    try:
        oracle = Rank1Oracle(config.datum)
    except ValueError as exc:
        raise UsageError(str(exc))
    report = oracle.verify_eq2(args.m_max, args.primes, jobs=config.jobs or 0)
    fmt = config.output_format or "pretty"
    if fmt == "json":
        _emit(_json_dump(report.to_json()), config)
    else:
        lines = [report.summary()]
        for record in report.failures():
            lines.append(
                "FAIL lambda=%d mu=%d nu=%d q=%d: lhs=%s rhs=%s"
                % (record.lam, record.mu, record.nu, record.q, record.lhs, record.rhs)
            )
        _emit("\n".join(lines) + "\n", config)
    return 0 if report.all_pass else 1


# -- parser ---------------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--datum", default="PGL2", help="preset name or datum JSON file")
    parser.add_argument("--format", choices=["json", "csv", "pretty"], default=None)
    parser.add_argument("--q", default=None, help="rational value of q (perfect square)")
    parser.add_argument("--jobs", type=int, default=1, help="parallel workers (0 = auto)")
    parser.add_argument("--out", default=None, help="write output to a file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="satake",
        description="Exact spherical Hecke algebra and Whittaker-module calculator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tensor", help="decompose a tensor product of dual irreducibles")
    p.add_argument("lam")
    p.add_argument("mu")
    _add_common(p)
    p.set_defaults(func=_cmd_tensor)

    p = sub.add_parser("weights", help="weight multiplicity table of a dual irreducible")
    p.add_argument("lam")
    _add_common(p)
    p.set_defaults(func=_cmd_weights)

    p = sub.add_parser("satake", help="base change of an A-basis element to the c-basis")
    p.add_argument("lam")
    _add_common(p)
    p.set_defaults(func=_cmd_satake)

    p = sub.add_parser("hecke-mul", help="multiply two A-basis elements")
    p.add_argument("lam")
    p.add_argument("mu")
    _add_common(p)
    p.set_defaults(func=_cmd_hecke_mul)

    p = sub.add_parser("whittaker-eval", help="table of Whittaker values at a torus point")
    p.add_argument("--gamma", required=True, help="comma-separated rationals, e.g. 2/1,3/1")
    p.add_argument("--cutoff", type=int, default=6, help="bound on the pairing with 2*rho-check")
    _add_common(p)
    p.set_defaults(func=_cmd_whittaker_eval)

    p = sub.add_parser("predict", help="predicted twisted cohomology for (lambda, mu, nu)")
    p.add_argument("lam")
    p.add_argument("mu")
    p.add_argument("nu")
    _add_common(p)
    p.set_defaults(func=_cmd_predict)

    p = sub.add_parser("strata", help="compactification strata up to a defect bound")
    p.add_argument("bound", type=int)
    _add_common(p)
    p.set_defaults(func=_cmd_strata)

    p = sub.add_parser("verify-cs", help="basis / module-axiom / eigenfunction battery")
    p.add_argument("cutoff", type=int)
    p.add_argument("--gammas", type=int, default=5, help="random torus points to test")
    p.add_argument("--seed", type=int, default=20240601)
    _add_common(p)
    p.set_defaults(func=_cmd_verify_cs)

    p = sub.add_parser("verify-eq2", help="finite-field character-sum battery (rank 1)")
    p.add_argument("m_max", type=int)
    p.add_argument("primes", metavar="q", type=int, nargs="+", help="prime field sizes")
    _add_common(p)
    p.set_defaults(func=_cmd_verify_eq2)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write("error: %s\n" % exc)
        sys.stderr.write("run with --help for usage\n")
        return 2
    except ValueError as exc:
        sys.stderr.write("error: %s\n" % exc)
        sys.stderr.write("run with --help for usage\n")
        return 2
    except AssertionError as exc:
        sys.stderr.write("internal invariant violation: %s\n" % exc)
        return 3


if __name__ == "__main__":
    sys.exit(main())
