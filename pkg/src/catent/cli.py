"""``catent`` command-line interface.

Results go to stdout as JSON; diagnostics go to stderr.  Exit status is 0
on success, 1 on domain errors (reported as ``{"error_kind": ...}`` on
stderr) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from . import checks
from . import io as cio
from .entropy import (
    entropy_decomposition,
    explain_entropy,
    information_loss,
    signed_entropy,
    terminal_loss,
)
from .errors import CatentError
from .linalg import RationalMatrix, magnitude, mobius_inverse, solve_coweighting, solve_weighting
from .maxent import numeric_maximize, sup_entropy_by_subsets
from .triples import m_ary_weighted_sum, tensor, transition_step, weighted_sum

VERBS = ("validate", "magnitude", "weighting", "coweighting", "mobius", "entropy",
         "decompose", "pushforward", "tensor", "sum", "step", "maxent", "loss", "check")


class UsageError(Exception):
    pass


def nats(x: float) -> float:
    """Round to 12 significant digits for output."""
    return float(f"{x:.12g}")


def _vec(v):
    return None if v is None else cio.vector_to_json(v)


def _rational(x):
    return None if x is None else cio.format_rational(x)


def _need(args, name):
    value = getattr(args, name)
    if not value:
        raise UsageError(f"{args.verb} needs --{name.replace('_', '-')}")
    return value


def _matrix(args) -> RationalMatrix:
    if args.matrix:
        return cio.load_matrix(args.matrix)
    if args.category:
        C = cio.load_category(args.category, strict=args.strict)
        return RationalMatrix.from_rows(C.zeta)
    if args.triple:
        return cio.load_triple(args.triple[0], strict=args.strict).phi
    raise UsageError(f"{args.verb} needs --category, --matrix or --triple")


def _one_triple(args):
    paths = _need(args, "triple")
    if len(paths) != 1:
        raise UsageError(f"{args.verb} takes exactly one --triple")
    return cio.load_triple(paths[0], strict=args.strict)


def cmd_validate(args):
    if args.morphism:
        f = cio.load_morphism(args.morphism, strict=args.strict)
        return {"valid": True, "morphism": cio.morphism_to_json(f)}
    if args.triple:
        return {"valid": True, "triple": cio.triple_to_json(_one_triple(args))}
    if args.category:
        C = cio.load_category(args.category, strict=args.strict)
        return {"valid": True, "category": cio.category_to_json(C)}
    raise UsageError("validate needs --category, --triple or --morphism")


def cmd_magnitude(args):
    result = magnitude(_matrix(args))
    out = {
        "magnitude": _rational(result.magnitude),
        "weighting": _vec(result.weighting),
        "coweighting": _vec(result.coweighting),
    }
    if args.explain:
        out["has_nonnegative_weighting"] = result.has_nonnegative_weighting
        out["nonnegative_weighting"] = _vec(result.nonnegative_weighting)
    return out


def cmd_weighting(args):
    return {"weighting": _vec(solve_weighting(_matrix(args)))}


def cmd_coweighting(args):
    return {"coweighting": _vec(solve_coweighting(_matrix(args)))}


def cmd_mobius(args):
    inv = mobius_inverse(_matrix(args))
    return {"mobius": None if inv is None else cio.matrix_to_json(inv)}


def cmd_entropy(args):
    T = _one_triple(args)
    if T.signed:
        value = signed_entropy(T)
        out = {"nats": nats(value)}
        inner = T.phi @ T.p.weights
    else:
        ev = explain_entropy(T)
        out = {"nats": nats(ev.nats)}
        inner = ev.inner_sums
    if args.explain:
        out["exact_inner_sums"] = cio.vector_to_json(inner)
    return out


def cmd_decompose(args):
    T = _one_triple(args)
    h_p, d, h = entropy_decomposition(T)
    return {
        "shannon": nats(h_p),
        "divergence": nats(d),
        "nats": nats(h),
        "p_hat": cio.vector_to_json(transition_step(T)),
    }


def cmd_pushforward(args):
    f = cio.load_morphism(_need(args, "morphism"), strict=args.strict)
    return cio.triple_to_json(f.target)


def cmd_tensor(args):
    paths = _need(args, "triple")
    if len(paths) < 2:
        raise UsageError("tensor needs at least two --triple files")
    triples = [cio.load_triple(p, strict=args.strict) for p in paths]
    T = triples[0]
    for other in triples[1:]:
        T = tensor(T, other)
    return cio.triple_to_json(T)


def cmd_sum(args):
    paths = _need(args, "triple")
    triples = [cio.load_triple(p, strict=args.strict) for p in paths]
    if args.lambdas:
        lambdas = [cio.parse_rational(x) for x in args.lambdas.split(",")]
        T = m_ary_weighted_sum(triples, lambdas)
    else:
        if len(triples) != 2 or args.lam is None:
            raise UsageError("sum needs two --triple files and --lambda, or --lambdas")
        T = weighted_sum(triples[0], triples[1], cio.parse_rational(args.lam))
    return cio.triple_to_json(T)


def cmd_step(args):
    return {"p_hat": cio.vector_to_json(transition_step(_one_triple(args)))}


def cmd_maxent(args):
    category = None
    if args.triple:
        T = _one_triple(args)
        category, Z = T.category, T.phi
    elif args.category:
        category = cio.load_category(args.category, strict=args.strict)
        Z = RationalMatrix.from_rows(category.zeta)
    else:
        Z = _matrix(args)
    report = sup_entropy_by_subsets(category, Z)
    out = {
        "sup_entropy": nats(report.sup_entropy),
        "best_subset": list(report.best_subset),
        "subset_magnitude": cio.format_rational(report.subset_magnitude),
        "witness_distribution": _vec(report.witness_distribution),
        "nonsymmetric_kernel": report.nonsymmetric_kernel,
    }
    if args.grid or (report.nonsymmetric_kernel and Z.rows <= 6):
        out["numeric_estimate"] = nats(numeric_maximize(category, Z, grid=args.grid))
    return out


def cmd_loss(args):
    if args.morphism:
        return {"loss": nats(information_loss(cio.load_morphism(args.morphism, strict=args.strict)))}
    return {"loss": nats(terminal_loss(_one_triple(args)))}


def cmd_check(args):
    if args.suite not in checks.SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {sorted(checks.SUITES)}")
    results = checks.run_suite(args.suite, seed=args.seed, trials=args.trials)
    return {
        "suite": args.suite,
        "seed": args.seed,
        "results": results,
        "passed": sum(r["passed"] for r in results.values()),
        "failed": sum(r["failed"] for r in results.values()),
    }


COMMANDS = {verb: globals()[f"cmd_{verb}"] for verb in VERBS}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="catent",
        description="Magnitude of finite categories and categorical entropy of probabilistic triples.",
    )
    parser.add_argument("verb", choices=VERBS)
    parser.add_argument("--category", help="category JSON file")
    parser.add_argument("--matrix", help="JSON array of rational rows")
    parser.add_argument("--triple", action="append", help="triple JSON file (repeatable)")
    parser.add_argument("--morphism", help="morphism JSON file")
    parser.add_argument("--lambda", dest="lam", metavar="P/Q", help="mixing weight for sum")
    parser.add_argument("--lambdas", metavar="P/Q,...", help="mixing weights for an m-ary sum")
    parser.add_argument("--pretty", action="store_true", help="indented output")
    parser.add_argument("--explain", action="store_true", help="include exact intermediate values")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--suite", default="props")
    parser.add_argument("--trials", type=int, default=50, help="instances per property for check")
    parser.add_argument("--grid", type=int, help="simplex lattice denominator for numeric maxent")
    parser.add_argument("--no-strict", dest="strict", action="store_false",
                        help="downgrade composition-closure failures to warnings")
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    def emit_error(kind, message):
        print(json.dumps({"error_kind": kind, "message": message}), file=stderr)

    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            out = COMMANDS[args.verb](args)
        for w in caught:
            print(f"warning: {w.message}", file=stderr)
    except UsageError as exc:
        print(f"catent: error: {exc}", file=stderr)
        return 2
    except OSError as exc:
        print(f"catent: error: {exc}", file=stderr)
        return 2
    except CatentError as exc:
        emit_error(exc.kind, exc.message)
        return 1
    except ZeroDivisionError as exc:
        emit_error("ZeroDivision", str(exc))
        return 1

    print(json.dumps(out, indent=2 if args.pretty else None), file=stdout)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
