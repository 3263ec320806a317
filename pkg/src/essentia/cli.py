"""Command-line front end.

Grammar: ``essentia <subcommand> [input] [--json] [--ring ...]
[--max-order N] [--seed S]``.  Inputs are inline JSON (anything starting
with ``{``) or paths to JSON files.  ``--json`` switches to the
machine-readable rendering, which is byte-deterministic for identical
inputs and flags.

Exit codes: 0 success, 1 at least one verification check failed,
2 input or capacity error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import essential, fgmod, isotypes, oracle
from .closure import IntLattice, saturate
from .errors import CapacityError, DomainError, EssentiaError
from .fgmod import FGModule
from .pid import Ring, polynomial_ring, ZZ
from .report import Check, Report
from .smith import Matrix, presentation_to_module, smith_normal_form

#: sweeps beyond this order are refused (lattice sizes explode).
SWEEP_MAX_ORDER = 256
#: verify runs the quotient-transfer check on at most this many submodules.
GMKJ_LIMIT = 200


def _dump(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _load_input(arg: str):
    if arg.lstrip().startswith("{"):
        return json.loads(arg)
    with open(arg, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _parse_ring(text: str) -> Ring:
    if text == "int":
        return ZZ
    if text.startswith("polymod:"):
        return polynomial_ring(int(text.split(":", 1)[1]))
    raise DomainError(f"bad ring {text!r}: expected 'int' or 'polymod:p'")


# -- subcommands -------------------------------------------------------------


def _module_from_input(obj) -> FGModule:
    """Module JSON, or a relation-matrix presentation (keyed by 'entries')
    whose columns are the generators."""
    if isinstance(obj, dict) and "entries" in obj:
        matrix = Matrix.from_json(obj)
        return presentation_to_module(matrix.cols, matrix)
    return FGModule.from_json(obj)


def _cmd_classify(args) -> int:
    module = _module_from_input(_load_input(args.input))
    verdict = essential.has_proper_essential(module)
    decomposition = fgmod.socle_decomposition(module)
    payload = {
        "module": module.to_json(),
        "betti": module.betti,
        "invariant_factors": [a.to_json() for a in module.factors],
        "semisimple": fgmod.is_semisimple(module),
        "socle_decomposition": [[p.to_json(), mult] for p, mult in decomposition],
        "socle_essential": essential.is_socle_essential(module),
        "verdict": verdict.to_json(),
    }
    if args.json:
        print(_dump(payload))
    else:
        print(f"module: {module}")
        print(f"betti number: {module.betti}")
        print(f"invariant factors: {[str(a) for a in module.factors]}")
        print(f"semisimple: {payload['semisimple']}")
        print(f"socle: {' + '.join(f'({p})^{m}' for p, m in decomposition) or '0'}")
        print(f"socle proper essential: {payload['socle_essential']}")
        print(f"has proper essential submodule: {verdict.exists}"
              + (f" ({verdict.reason.to_json()['kind']})" if verdict.reason else ""))
    return 0


def _cmd_witness(args) -> int:
    module = _module_from_input(_load_input(args.input))
    verdict = essential.has_proper_essential(module)
    if not verdict.exists:
        raise DomainError("semisimple module has no proper essential submodule")
    payload = {"module": module.to_json(), "witness": verdict.to_json()["witness"]}
    if args.json:
        print(_dump(payload))
    else:
        print(f"module: {module}")
        cert = verdict.certificate
        print(f"witness: component {cert.component} shrunk to ideal ({cert.ideal_generator})")
        for g in verdict.witness.generators:
            print(f"  generator {g}")
    return 0


def _cmd_socle(args) -> int:
    module = _module_from_input(_load_input(args.input))
    sub, decomposition = fgmod.socle(module)
    payload = {
        "module": module.to_json(),
        "decomposition": [[p.to_json(), mult] for p, mult in decomposition],
        "generators": [g.to_json() for g in sub.generators],
        "cardinality": sub.cardinality(),
    }
    if args.json:
        print(_dump(payload))
    else:
        print(f"module: {module}")
        print(f"socle decomposition: {' + '.join(f'({p})^{m}' for p, m in decomposition) or '0'}")
        print(f"socle order: {sub.cardinality()}")
    return 0


def _cmd_smith(args) -> int:
    matrix = Matrix.from_json(_load_input(args.input))
    snf = smith_normal_form(matrix)
    payload = {"U": snf.U.to_json(), "S": snf.S.to_json(), "V": snf.V.to_json()}
    if args.json:
        print(_dump(payload))
    else:
        for name, mat in (("U", snf.U), ("S", snf.S), ("V", snf.V)):
            print(f"{name}:")
            for row in mat.entries:
                print("  [" + ", ".join(str(e) for e in row) + "]")
    return 0


def _module_report(module: FGModule) -> Report:
    """All oracle checks for one module, sharing one lattice."""
    lat = oracle.enumerate_submodules(module)
    checks = list(oracle.verify_semisimplicity_equivalences(module, lat).checks)
    checks += oracle.verify_socle_intersection(module, lat).checks
    checks += oracle.verify_socle_essentiality(module, lat).checks
    proper = [i for i, m in enumerate(lat.masks)
              if 1 < m.bit_count() < lat.full_mask.bit_count()]
    for i in proper[:GMKJ_LIMIT]:
        rep = oracle.verify_quotient_transfer(module, lat.submodule(i), lat)
        for c in rep.checks:
            checks.append(Check(f"{c.name}[{i}]", c.passed, c.detail))
    return Report(module.to_json(), tuple(checks))


def _cmd_verify(args) -> int:
    module = _module_from_input(_load_input(args.input))
    report = _module_report(module)
    if args.json:
        print(_dump(report.to_json()))
    else:
        print(f"module: {module}")
        for c in report.checks:
            print(f"  {'ok  ' if c.passed else 'FAIL'} {c.name} {c.detail}")
    return 0 if report.passed else 1


def _sweep_checks(module: FGModule) -> Report:
    lat = oracle.enumerate_submodules(module)
    verdict = essential.has_proper_essential(module)
    oracle_exists = any(lat.proper_essential)
    checks = [Check("criterion_oracle_agreement", verdict.exists == oracle_exists,
                    f"criterion={verdict.exists} oracle={oracle_exists}")]
    if verdict.exists:
        ok = essential.is_proper_essential(module, verdict.witness)
        checks.append(Check("witness_is_proper_essential", ok, ""))
    checks += oracle.verify_semisimplicity_equivalences(module, lat).checks
    checks += oracle.verify_socle_intersection(module, lat).checks
    checks += oracle.verify_socle_essentiality(module, lat).checks
    return Report(module.to_json(), tuple(checks))


def _cmd_sweep(args) -> int:
    ring = _parse_ring(args.ring)
    if args.max_order > SWEEP_MAX_ORDER:
        raise CapacityError(f"--max-order capped at {SWEEP_MAX_ORDER}")
    header = {"sweep": {"ring": ring.to_json(), "max_order": args.max_order, "seed": args.seed}}
    if args.json:
        print(_dump(header))
    failures = 0
    for module in isotypes.module_types(ring, args.max_order):
        report = _sweep_checks(module)
        if not report.passed:
            failures += 1
        if args.json:
            print(_dump(report.to_json()))
        else:
            status = "ok  " if report.passed else "FAIL"
            print(f"{status} {module} ({len(report.checks)} checks)")
    if not args.json:
        print(f"{'all types passed' if failures == 0 else f'{failures} types FAILED'}")
    return 0 if failures == 0 else 1


def _cmd_saturate(args) -> int:
    lattice = IntLattice.from_json(_load_input(args.input))
    ambient = IntLattice.full(lattice.ring, lattice.ambient_rank)
    closed = saturate(lattice, ambient)
    if args.json:
        print(_dump(closed.to_json()))
    else:
        print(f"saturation (rank {closed.rank}):")
        for row in closed.basis:
            print("  [" + ", ".join(str(e) for e in row) + "]")
    return 0


# -- driver ------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="essentia",
        description="Proper essential submodules, socles, Smith normal form, "
                    "and lattice saturation over Z and F_p[x].")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name, func, help_text, with_input=True):
        p = sub.add_parser(name, help=help_text)
        if with_input:
            p.add_argument("input", help="inline JSON or a path to a JSON file")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    add("classify", _cmd_classify, "decide proper-essential existence for a module")
    add("witness", _cmd_witness, "construct a proper essential submodule")
    add("socle", _cmd_socle, "socle and its semisimple decomposition")
    add("smith", _cmd_smith, "Smith normal form of a matrix")
    add("verify", _cmd_verify, "run every oracle check on one module")
    p = add("sweep", _cmd_sweep, "oracle/criterion agreement over all types", with_input=False)
    p.add_argument("--max-order", type=int, default=24,
                   help=f"largest module order (cap {SWEEP_MAX_ORDER})")
    p.add_argument("--ring", default="int", help="int or polymod:p")
    p.add_argument("--seed", type=int, default=0,
                   help="seed echoed into the report header (reserved for "
                        "randomized sweeps; the type sweep itself is exhaustive)")
    add("saturate", _cmd_saturate, "saturate a lattice in its ambient free module")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON at position {exc.pos}: {exc.msg}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except EssentiaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
