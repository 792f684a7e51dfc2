"""Command-line entry point ``equihom``.

Exit codes: 0 computed and verified, 2 input error, 3 budget exceeded,
4 an internal verification failed.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Any

from .document import InputDocument, InputError, parse_input
from .fingroup import GroupError
from .gcomplex import GComplex, NotTypePreservingError, SComplex
from .homalg import VerificationError

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_VERIFY = 0, 2, 3, 4

COMMANDS = ("bredon", "cosheaf", "compare-bc", "bs", "deloc", "hp", "check-paramixed",
            "hkr-check", "trace-check", "corpus")


class VerificationFailed(Exception):
    def __init__(self, report: dict):
        super().__init__("verification failed")
        self.report = report


def _dims(h: dict[int, int]) -> dict[str, int]:
    return {str(k): v for k, v in sorted(h.items())}


def _target(doc: InputDocument) -> GComplex:
    if doc.Y is not None:
        return doc.Y
    return GComplex.trivial_action(SComplex.point(), doc.group)


def _algebra(doc: InputDocument, which: str = "source"):
    from .cyclic.algebra import base_field, compact_operators, function_algebra_of, stabilize
    kind = doc.options.get("algebra", "functions")
    X = doc.X if which == "source" else _target(doc)
    if kind == "base-field":
        return base_field(doc.group)
    if kind == "compact-operators":
        return compact_operators(doc.group)
    if X.complex.dim != 0:
        raise InputError(f"algebra 'functions' needs a 0-dimensional {which} complex")
    A = function_algebra_of(X)
    return stabilize(A) if kind == "stabilized-functions" else A


def cmd_bredon(doc, opts):
    from .bredon import bredon_homology
    h, B = bredon_homology(doc.X)
    return ({"homology": _dims(h), "chain_dims": _dims(B.complex.dims),
             "subgroups": len(B.category.objects)}, {"d2_zero": True})


def cmd_cosheaf(doc, opts):
    from .cosheaf import cosheaf_homology
    h, S = cosheaf_homology(doc.X)
    return {"homology": _dims(h), "chain_dims": _dims(S.complex.dims)}, {"d2_zero": True}


def cmd_compare_bc(doc, opts):
    from .cosheaf import compare_bredon_cosheaf
    r = compare_bredon_cosheaf(doc.X)
    res = {"bredon_homology": _dims(r.bredon_homology),
           "cosheaf_homology": _dims(r.cosheaf_homology),
           "chain_dims": _dims(r.bredon_dims)}
    ver = {"phi_chain_map": r.chain_map, "psi_phi_identity": r.psi_phi_identity,
           "phi_psi_identity": r.phi_psi_identity, "is_iso": r.is_isomorphism,
           "homology_match": r.homology_match}
    return res, ver


def cmd_bs(doc, opts):
    from .delocalized import bs_bivariant
    return {"dims": _dims(bs_bivariant(doc.X, _target(doc)))}, {}


def cmd_deloc(doc, opts):
    from .delocalized import delocalized_point
    return {"dims": _dims(delocalized_point(doc.X))}, {}


def cmd_hp(doc, opts):
    from .cyclic.hp import hp_at_level
    m, n = opts["levels"]
    stab = bool(doc.options.get("stabilize", False))
    even, odd = hp_at_level(_algebra(doc, "source"), _algebra(doc, "target"), m, n,
                            stabilize=stab, budget=opts["budget"])
    return {"levels": [m, n], "stabilized": stab, "even": even, "odd": odd}, {}


def cmd_check_paramixed(doc, opts):
    from .cyclic.forms import omega_forms
    A = _algebra(doc)
    N = opts["max_degree"]
    # identities up to degree N need forms of degree N + 1
    om = omega_forms(A, N + 1, opts["budget"])
    ver = om.check_paramixed() | om.check_projector()
    return {"algebra": A.name, "dims": _dims({n: om.dim(n) for n in range(N + 2)}),
            "verified_up_to": N}, ver


def cmd_hkr_check(doc, opts):
    from .cyclic.hkr import hkr_map
    if doc.X.complex.dim != 0:
        raise InputError("hkr-check needs a 0-dimensional complex")
    r = hkr_map(doc.X, opts["max_degree"] + 1, opts["budget"])
    res = {"hochschild": _dims(r.hochschild), "fixed_points": r.fixed_points}
    ver = {"alpha_b_zero": r.alpha_b_zero, "degree_zero_iso": r.degree_zero_iso,
           "h0_matches_fixed_points": r.hochschild.get(0) == r.fixed_points,
           "higher_vanish": all(v == 0 for k, v in r.hochschild.items() if k > 0)}
    return res, ver


def cmd_trace_check(doc, opts):
    from .cyclic.trace import trace_map
    A = _algebra(doc)
    r = trace_map(A, opts["max_degree"], opts["budget"])
    ver = {"commutes_b": r.b, "commutes_B": r.B, "commutes_T": r.T,
           "equivariant": r.equivariant, "surjective_degree_zero": r.surjective_degree_zero}
    return {"algebra": A.name, "degrees": r.degrees}, ver


def cmd_corpus(doc, opts):
    from .corpus import CHECKS, run_corpus
    results = run_corpus()
    rows = [{"criterion": r.criterion, "instance": r.name, "passed": r.passed} for r in results]
    summary = {str(k): all(r.passed for r in results if r.criterion == k) for k in CHECKS}
    return {"checks": rows, "instances": len(rows)}, summary


HANDLERS = {
    "bredon": cmd_bredon, "cosheaf": cmd_cosheaf, "compare-bc": cmd_compare_bc,
    "bs": cmd_bs, "deloc": cmd_deloc, "hp": cmd_hp, "check-paramixed": cmd_check_paramixed,
    "hkr-check": cmd_hkr_check, "trace-check": cmd_trace_check, "corpus": cmd_corpus,
}


def run(command: str, doc: InputDocument | None, opts: dict[str, Any]) -> dict[str, Any]:
    if command not in HANDLERS:
        raise InputError(f"unknown command {command!r}")
    start = time.perf_counter()
    result, verified = HANDLERS[command](doc, opts)
    report = {"command": command,
              "input_digest": doc.digest() if doc is not None else None,
              "subdivided": doc.subdivided if doc is not None else False,
              "result": result, "verified": verified}
    if opts.get("timing"):
        report["seconds"] = round(time.perf_counter() - start, 3)
    if not all(verified.values()):
        raise VerificationFailed(report)
    return report


def _table(obj: Any, prefix: str = "") -> list[str]:
    if isinstance(obj, dict):
        lines = []
        for k in sorted(obj):
            lines += _table(obj[k], f"{prefix}.{k}" if prefix else str(k))
        return lines
    if isinstance(obj, list) and obj and isinstance(obj[0], dict):
        lines = []
        for i, x in enumerate(obj):
            lines += _table(x, f"{prefix}[{i}]")
        return lines
    return [f"{prefix:<40} {json.dumps(obj)}"]


def render(report: dict, fmt: str) -> str:
    if fmt == "table":
        return "\n".join(_table(report))
    return json.dumps(report, sort_keys=True, indent=2)


def _levels(text: str) -> tuple[int, int]:
    try:
        m, n = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("levels must look like 'm,n'") from None
    if m < 0 or n < 0:
        raise argparse.ArgumentTypeError("levels must be non-negative")
    return m, n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="equihom",
                                description="Equivariant homology of finite group actions.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", help="input document (JSON); optional for 'corpus'")
    p.add_argument("--subdivide", action="store_true", default=None,
                   help="subdivide when the action is not type-preserving")
    p.add_argument("--levels", type=_levels, help="Hodge levels m,n for 'hp' (default 2,1)")
    p.add_argument("--max-degree", type=int, help="degree bound for form checks (default 2)")
    p.add_argument("--budget", type=int, help="dimension budget for forms (default 20000)")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--timing", action="store_true", help="include wall-clock seconds")
    return p


def main(argv: list[str] | None = None) -> int:
    from .cyclic.forms import DEFAULT_BUDGET, BudgetExceeded

    args = build_parser().parse_args(argv)
    try:
        doc = None
        if args.input is not None:
            try:
                with open(args.input, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as e:
                raise InputError(f"cannot read {args.input}: {e.strerror}") from None
            doc = parse_input(text, args.subdivide)
        elif args.command != "corpus":
            raise InputError(f"command {args.command!r} needs --input")
        docopts = doc.options if doc is not None else {}
        opts = {
            "levels": args.levels or tuple(docopts.get("levels", (2, 1))),
            "max_degree": args.max_degree if args.max_degree is not None
            else docopts.get("max_degree", 2),
            "budget": args.budget or docopts.get("budget", DEFAULT_BUDGET),
            "timing": args.timing,
        }
        report = run(args.command, doc, opts)
    except (InputError, NotTypePreservingError, GroupError) as e:
        print(f"equihom: input error ({type(e).__module__}): {e}", file=sys.stderr)
        return EXIT_INPUT
    except (BudgetExceeded, OverflowError) as e:
        print(f"equihom: budget exceeded ({type(e).__module__}): {e}", file=sys.stderr)
        return EXIT_BUDGET
    except VerificationFailed as e:
        print(render(e.report, args.format))
        print("equihom: verification failed", file=sys.stderr)
        return EXIT_VERIFY
    except VerificationError as e:
        print(f"equihom: verification failed ({type(e).__module__}): {e}", file=sys.stderr)
        return EXIT_VERIFY
    except ValueError as e:
        print(f"equihom: input error ({type(e).__module__}): {e}", file=sys.stderr)
        return EXIT_INPUT
    print(render(report, args.format))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
