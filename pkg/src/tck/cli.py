"""Command line front end: JSON in, JSON out, exact values throughout.

Every invocation prints one JSON document: {"status": "ok", "payload": ...}
on success, {"status": "error", "payload": {"code", "message"}} on failure,
exit code 0 or 1 (argparse itself exits 2 on usage problems).  Non-integer
rationals and integers beyond 64-bit range are serialized as strings so
exact values survive any JSON consumer.  Output carries no timing unless
--timing is passed; identical invocations then produce byte-identical
documents.
"""

import argparse
import json
import time
from fractions import Fraction

from . import __version__
from .errors import ConsistencyError, DomainError, ResourceLimitError
from .fields import ScalingAutomorphism
from .roots import build_root_system, diagram_symmetries
from .chevalley import h_alpha, n_alpha, x_alpha
from .twisted import (
    automorphism_from_descriptor,
    group_from_descriptor,
    isogredience_count,
    reidemeister_number,
    twisted_classes,
)
from .spectrum import (
    ExtendedCount,
    heisenberg_reidemeister,
    lamplighter_r_infinity,
    metabelian_spectrum,
    reidemeister_zn,
)
from .witness import generate_witnesses, obstruction_check
from .acceptance import run_suite

_INT64_MAX = 2**63 - 1


def _encode_number(x):
    if isinstance(x, ExtendedCount):
        return _encode_number(x.value) if x.is_finite else "infinity"
    if isinstance(x, bool):
        return x
    if isinstance(x, int):
        return x if -_INT64_MAX <= x <= _INT64_MAX else str(x)
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return _encode_number(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    raise ConsistencyError(f"cannot serialize {x!r}")


def _encode_matrix(matrix):
    return [[_encode_number(entry) for entry in row] for row in matrix]


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"not a rational number: {text!r}") from exc


def _parse_matrix(text: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"matrix is not valid JSON: {exc}") from exc
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise DomainError("matrix must be a nonempty array of arrays")
    out = []
    for row in data:
        parsed = []
        for entry in row:
            if isinstance(entry, bool) or not isinstance(entry, (int, str)):
                raise DomainError(f"matrix entries must be integers or 'p/q' strings, got {entry!r}")
            parsed.append(entry if isinstance(entry, int) else _parse_rational(entry))
        out.append(parsed)
    return out


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise DomainError(f"{path} must hold a JSON object")
    return data


def _run_root_info(args):
    rs = build_root_system(args.type)
    payload = {
        "type": str(rs.type),
        "rank": rs.rank,
        "root_count": len(rs.roots),
        "positive_count": len(rs.positive_roots),
        "roots": [list(r) for r in rs.roots],
        "cartan": [list(row) for row in rs.cartan],
        "symmetry_orders": sorted(s.order for s in diagram_symmetries(rs)),
    }
    return payload, 0


def _run_chevalley_gen(args):
    rs = build_root_system(args.type)
    root = tuple(int(c) for c in args.root.split(","))
    t = _parse_rational(args.t)
    builder = {"x": x_alpha, "n": n_alpha, "h": h_alpha}[args.kind]
    matrix = builder(rs, root, t)
    payload = {
        "type": str(rs.type),
        "kind": args.kind,
        "root": list(root),
        "t": _encode_number(t),
        "matrix": _encode_matrix(matrix),
    }
    return payload, 0


def _load_group_and_automorphism(args):
    group = group_from_descriptor(_load_json(args.group))
    phi = automorphism_from_descriptor(group, _load_json(args.aut))
    return group, phi


def _run_twisted_classes(args):
    group, phi = _load_group_and_automorphism(args)
    partition = twisted_classes(group, phi)
    payload = {
        "group_order": len(group),
        "count": partition.count,
        "class_sizes": sorted(len(block) for block in partition.blocks),
    }
    return payload, 0


def _run_twisted_reidemeister(args):
    group, phi = _load_group_and_automorphism(args)
    payload = {"group_order": len(group), "reidemeister": reidemeister_number(group, phi)}
    return payload, 0


def _run_twisted_isogredience(args):
    group, phi = _load_group_and_automorphism(args)
    result = isogredience_count(group, phi)
    payload = {"group_order": len(group), "isogredience": result.count}
    return payload, 0


def _run_spectrum_zn(args):
    matrix = _parse_matrix(args.matrix)
    payload = {"reidemeister": _encode_number(reidemeister_zn(matrix))}
    return payload, 0


def _run_spectrum_heisenberg(args):
    matrix = _parse_matrix(args.matrix)
    payload = {"reidemeister": _encode_number(heisenberg_reidemeister(matrix))}
    return payload, 0


def _run_spectrum_lamplighter(args):
    payload = {"r_infinity": lamplighter_r_infinity(args.n)}
    return payload, 0


def _run_spectrum_metabelian(args):
    descriptor = metabelian_spectrum(
        _parse_rational(args.r), _parse_rational(args.s), args.p
    )
    payload = {
        "case": descriptor.case,
        "prime": descriptor.prime,
        "set": descriptor.set_form,
    }
    if args.member is not None:
        payload["member"] = {
            "value": args.member,
            "contained": descriptor.contains(args.member),
        }
    return payload, 0


def _run_witness(args):
    rs = build_root_system(args.type)
    scalars = [_parse_rational(part) for part in args.scale.split(",")]
    if len(scalars) == 1 and args.trdeg > 1:
        scalars = scalars * args.trdeg
    if len(scalars) != args.trdeg:
        raise DomainError(
            f"--scale provides {len(scalars)} values for transcendence degree {args.trdeg}"
        )
    scaling = ScalingAutomorphism(tuple(scalars))
    witnesses = generate_witnesses(rs, args.count)
    certificate = obstruction_check(rs, witnesses, None, scaling, args.index)
    payload = {
        "type": str(rs.type),
        "count": witnesses.count,
        "index": certificate.index,
        "bound": certificate.bound,
        "verdict": certificate.verdict,
        "family_size": certificate.family_size,
        "generators": [_encode_number(g) for g in certificate.generators],
        "certified": [
            {
                "position": list(entry.position),
                "block": entry.block,
                "eigencharacter": _encode_number(entry.eigencharacter),
            }
            for entry in certificate.entries
        ],
        "uncertified": [list(position) for position in certificate.uncertified],
    }
    return payload, 0


def _run_verify(args):
    outcomes = run_suite(args.filter)
    checks = []
    for outcome in outcomes:
        entry = {
            "number": outcome.number,
            "name": outcome.name,
            "passed": outcome.passed,
            "within_budget": outcome.within_budget,
            "budget_seconds": outcome.budget_seconds,
            "details": outcome.details,
        }
        if args.timing:
            entry["seconds"] = round(outcome.seconds, 3)
        checks.append(entry)
    failing = [c["number"] for c in checks if not (c["passed"] and c["within_budget"])]
    payload = {
        "checks": checks,
        "passed": len(checks) - len(failing),
        "failed": len(failing),
    }
    if failing:
        payload["failing"] = failing
    if args.filter is not None and not checks:
        payload["warning"] = f"no checks match filter {args.filter!r}"
    return payload, 1 if failing else 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tck",
        description="Exact twisted-conjugacy toolkit: root systems, Chevalley "
                    "generators, finite twisted classes, Reidemeister spectra, "
                    "and obstruction certificates.",
    )
    parser.add_argument("--json", action="store_true", default=True,
                        help="emit JSON (the default and only format)")
    parser.add_argument("--timing", action="store_true",
                        help="include wall-clock timing in the report")
    commands = parser.add_subparsers(dest="command", required=True)

    root = commands.add_parser("root", help="root system data")
    root_sub = root.add_subparsers(dest="subcommand", required=True)
    info = root_sub.add_parser("info", help="roots, Cartan matrix, symmetries")
    info.add_argument("type", help="root system type, e.g. A2")
    info.set_defaults(handler=_run_root_info)

    chevalley = commands.add_parser("chevalley", help="adjoint generator matrices")
    chevalley_sub = chevalley.add_subparsers(dest="subcommand", required=True)
    gen = chevalley_sub.add_parser("gen", help="x/n/h generator for a root and parameter")
    gen.add_argument("--type", required=True)
    gen.add_argument("--kind", required=True, choices=("x", "n", "h"))
    gen.add_argument("--root", required=True, help="simple-root coefficients, e.g. 1,0")
    gen.add_argument("--t", required=True, help="parameter as integer or p/q")
    gen.set_defaults(handler=_run_chevalley_gen)

    twisted = commands.add_parser("twisted", help="finite twisted conjugacy")
    twisted_sub = twisted.add_subparsers(dest="subcommand", required=True)
    for name, handler in (
        ("classes", _run_twisted_classes),
        ("reidemeister", _run_twisted_reidemeister),
        ("isogredience", _run_twisted_isogredience),
    ):
        sub = twisted_sub.add_parser(name)
        sub.add_argument("--group", required=True, help="path to a group descriptor JSON")
        sub.add_argument("--aut", required=True, help="path to an automorphism JSON")
        sub.set_defaults(handler=handler)

    spectrum = commands.add_parser("spectrum", help="Reidemeister spectra")
    spectrum_sub = spectrum.add_subparsers(dest="subcommand", required=True)
    zn = spectrum_sub.add_parser("zn", help="free abelian lattice automorphism")
    zn.add_argument("--matrix", required=True, help="integer matrix as JSON")
    zn.set_defaults(handler=_run_spectrum_zn)
    heis = spectrum_sub.add_parser("heisenberg", help="integral Heisenberg automorphism")
    heis.add_argument("--matrix", required=True, help="unimodular 2x2 integer matrix as JSON")
    heis.set_defaults(handler=_run_spectrum_heisenberg)
    lamp = spectrum_sub.add_parser("lamplighter")
    lamp.add_argument("--n", required=True, type=int)
    lamp.set_defaults(handler=_run_spectrum_lamplighter)
    meta = spectrum_sub.add_parser("metabelian")
    meta.add_argument("--r", required=True, help="first diagonal unit, e.g. 2 or 1/2")
    meta.add_argument("--s", required=True, help="second diagonal unit")
    meta.add_argument("--p", required=True, type=int, help="inverted prime")
    meta.add_argument("--member", type=int, help="test membership of this value")
    meta.set_defaults(handler=_run_spectrum_metabelian)

    witness = commands.add_parser("witness", help="obstruction certificates")
    witness_sub = witness.add_subparsers(dest="subcommand", required=True)
    run = witness_sub.add_parser("run")
    run.add_argument("--type", required=True)
    run.add_argument("--count", required=True, type=int)
    run.add_argument("--trdeg", required=True, type=int)
    run.add_argument("--scale", required=True,
                     help="field scalars, one rational or a comma list")
    run.add_argument("--index", required=True, type=int)
    run.set_defaults(handler=_run_witness)

    verify = commands.add_parser("verify", help="acceptance checks")
    verify_sub = verify.add_subparsers(dest="subcommand", required=True)
    suite = verify_sub.add_parser("suite")
    suite.add_argument("--filter", help="run only checks whose name contains this")
    suite.set_defaults(handler=_run_verify)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        payload, exit_code = args.handler(args)
        report = {"status": "ok", "payload": payload, "version": __version__}
    except DomainError as failure:
        report = {"status": "error", "version": __version__,
                  "payload": {"code": "domain-error", "message": str(failure)}}
        exit_code = 1
    except ResourceLimitError as failure:
        report = {"status": "error", "version": __version__,
                  "payload": {"code": "resource-limit", "message": str(failure)}}
        exit_code = 1
    except ConsistencyError as failure:
        report = {"status": "error", "version": __version__,
                  "payload": {"code": "internal-inconsistency", "message": str(failure)}}
        exit_code = 1
    if args.timing:
        report["timing_ms"] = int((time.perf_counter() - start) * 1000)
    print(json.dumps(report, sort_keys=True))
    return exit_code


if __name__ == "__main__":
    raise SystemExit(main())
