"""Command-line front end: parse JSON inputs, run the constructions, emit
deterministic JSON reports, and re-verify emitted reports from raw inputs.

Exit codes: 0 success/holds, 1 verified-failure (oracle disagreement, failed
witness, no candidate, failed re-verification), 2 input or usage errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Sequence

from .bitstrings import as_bits, string_to_set
from .enumop import EnumOperator, verify_enum_witness
from .errors import LabError, SchemaError
from .forcing import (
    DEFAULT_SCAN_CAP,
    DangerCertificate,
    NoCandidate,
    Requirement,
    avoidance_check,
    danger_certificate,
    danger_member,
    fixpoint_remove_witnesses,
    force_meet_or_avoid,
    witness_mask,
)
from .rightmost import (
    rightmost_construct,
    rightmost_oracle,
    tree_from_json,
)

SCAN_CAP_ENV = "RELCE_SCAN_CAP"


def _dump(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _emit(report: dict, out: str | None) -> None:
    text = _dump(report)
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _emit_error(kind: str, detail: str, payload: dict) -> None:
    error = {"kind": kind, "detail": detail}
    error.update(payload)
    sys.stderr.write(_dump({"error": error}))


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def _resolve_scan_cap(args: argparse.Namespace) -> int:
    cap = getattr(args, "scan_cap", None)
    if cap is not None:
        return cap
    env = os.environ.get(SCAN_CAP_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise SchemaError(f"{SCAN_CAP_ENV} must be an integer, got {env!r}") from None
    return DEFAULT_SCAN_CAP


def _cmd_rightmost(args: argparse.Namespace) -> int:
    tree = tree_from_json(_load_json(args.tree), seed_override=args.seed)
    result = rightmost_construct(tree)
    oracle = rightmost_oracle(tree)
    witness_report = verify_enum_witness(result.witness.as_operator(), result.x)
    report: dict = {"X": result.x, "C": result.witness.to_json()}
    if args.trace:
        report["trace"] = [stage.to_json() for stage in result.trace]
    report["oracle_agrees"] = result.x == oracle
    report["witness_holds"] = witness_report.holds
    _emit(report, args.out)
    return 0 if report["oracle_agrees"] and report["witness_holds"] else 1


def _cmd_fixpoint(args: argparse.Namespace) -> int:
    sigma0 = as_bits(args.sigma)
    result = fixpoint_remove_witnesses(sigma0, args.p)
    report: dict = {
        "sigma0": sigma0,
        "p": args.p,
        "sigma": result.sigma,
        "stages": len(result.trace),
    }
    if args.trace:
        report["trace"] = [stage.to_json() for stage in result.trace]
    _emit(report, args.out)
    return 0


def _cmd_demo3(args: argparse.Namespace) -> int:
    sigma = as_bits(args.sigma)
    op = EnumOperator.from_json(_load_json(args.op))
    outcome = danger_certificate(sigma, args.l, op)
    if isinstance(outcome, NoCandidate):
        report = {
            "no_candidate": True,
            "sigma0": sigma,
            "l": args.l,
            "candidates": sorted(outcome.candidates),
        }
        _emit(report, args.out)
        return 1
    report = outcome.to_json()
    if args.trace:
        trace = fixpoint_remove_witnesses(sigma, outcome.p).trace
        report["trace"] = [stage.to_json() for stage in trace]
    _emit(report, args.out)
    return 0


def _cmd_force(args: argparse.Namespace) -> int:
    loaded = _load_json(args.requirements)
    if not isinstance(loaded, list):
        raise SchemaError("requirements JSON must be a list of requirement objects")
    requirements = [Requirement.from_json(obj) for obj in loaded]
    result = force_meet_or_avoid(requirements, args.t, scan_cap=_resolve_scan_cap(args))
    report = {
        "sigma": result.sigma,
        "log": [decision.to_json() for decision in result.log],
    }
    _emit(report, args.out)
    return 0


def _require_input(value: str | None, flag: str, kind: str) -> str:
    if value is None:
        raise SchemaError(f"verifying a {kind} report needs {flag}")
    return value


def _verify_rightmost(report: dict, args: argparse.Namespace) -> dict:
    tree = tree_from_json(_load_json(_require_input(args.tree, "--tree", "rightmost")))
    result = rightmost_construct(tree)
    oracle = rightmost_oracle(tree)
    recomputed = verify_enum_witness(result.witness.as_operator(), result.x)
    checks = {
        "x_matches_construction": report.get("X") == result.x,
        "x_matches_oracle": report.get("X") == oracle,
        "witness_set_matches": report.get("C") == result.witness.to_json(),
        "witness_holds": recomputed.holds,
        "flags_match": report.get("oracle_agrees") is True
        and report.get("witness_holds") is True,
    }
    if "trace" in report:
        checks["trace_matches"] = report["trace"] == [
            stage.to_json() for stage in result.trace
        ]
    return checks


def _verify_fixpoint(report: dict, args: argparse.Namespace) -> dict:
    sigma0 = as_bits(report.get("sigma0", ""))
    result = fixpoint_remove_witnesses(sigma0, report.get("p", -1))
    sigma = result.sigma
    checks = {
        "sigma_matches": report.get("sigma") == sigma,
        "stage_count_matches": report.get("stages") == len(result.trace),
        "target_set": sigma[report["p"]] == "1",
        "no_bit_cleared": string_to_set(sigma0) <= string_to_set(sigma),
        "mask_preserved": witness_mask(sigma) == witness_mask(sigma0),
    }
    if "trace" in report:
        checks["trace_matches"] = report["trace"] == [
            stage.to_json() for stage in result.trace
        ]
    return checks


def _verify_certificate(report: dict, args: argparse.Namespace) -> dict:
    op = EnumOperator.from_json(
        _load_json(_require_input(args.op, "--op", "certificate"))
    )
    cert = DangerCertificate.from_json(report)
    mask = witness_mask(cert.sigma0)
    enumerated = op.evaluate(string_to_set(mask))
    hit, witness = danger_member(cert.tau, op)
    checks = {
        "shape_ok": len(cert.sigma0) == cert.t == len(cert.tau)
        and 0 <= cert.l <= cert.t,
        "candidate_ok": cert.p in enumerated
        and cert.l < cert.p < cert.t
        and cert.sigma0[cert.p] == "0"
        and mask[cert.p] == "0",
        "extends_common_prefix": cert.tau.startswith(cert.sigma0[: cert.l]),
        "target_set": cert.tau[cert.p] == "1",
        "mask_preserved": witness_mask(cert.tau) == mask,
        "danger_witness_matches": hit and witness == cert.danger_witness,
        "fixpoint_reproduces_tau": fixpoint_remove_witnesses(
            cert.sigma0, cert.p
        ).sigma
        == cert.tau,
        "avoidance_finds_counterexample": not avoidance_check(
            cert.sigma0, cert.l, cert.t, op, scan_cap=_resolve_scan_cap(args)
        ).holds,
    }
    return checks


def _verify_no_candidate(report: dict, args: argparse.Namespace) -> dict:
    op = EnumOperator.from_json(
        _load_json(_require_input(args.op, "--op", "no-candidate"))
    )
    outcome = danger_certificate(
        as_bits(report.get("sigma0", "")), report.get("l", -1), op
    )
    return {
        "still_no_candidate": isinstance(outcome, NoCandidate),
        "candidates_match": isinstance(outcome, NoCandidate)
        and sorted(outcome.candidates) == report.get("candidates"),
    }


def _verify_force(report: dict, args: argparse.Namespace) -> dict:
    loaded = _load_json(_require_input(args.requirements, "--requirements", "force"))
    if not isinstance(loaded, list):
        raise SchemaError("requirements JSON must be a list of requirement objects")
    requirements = [Requirement.from_json(obj) for obj in loaded]
    sigma = as_bits(report.get("sigma", ""))
    result = force_meet_or_avoid(
        requirements, len(sigma), scan_cap=_resolve_scan_cap(args)
    )
    return {
        "sigma_matches": sigma == result.sigma,
        "log_matches": report.get("log")
        == [decision.to_json() for decision in result.log],
    }


def _cmd_verify(args: argparse.Namespace) -> int:
    report = _load_json(args.report)
    if not isinstance(report, dict):
        raise SchemaError("report must be a JSON object")
    if "no_candidate" in report:
        kind, checks = "demo3-no-candidate", _verify_no_candidate(report, args)
    elif "danger_witness" in report:
        kind, checks = "demo3", _verify_certificate(report, args)
    elif "oracle_agrees" in report:
        kind, checks = "rightmost", _verify_rightmost(report, args)
    elif "log" in report:
        kind, checks = "force", _verify_force(report, args)
    elif "sigma" in report and "p" in report:
        kind, checks = "fixpoint", _verify_fixpoint(report, args)
    else:
        raise SchemaError("unrecognized report shape")
    verified = all(checks.values())
    _emit({"kind": kind, "verified": verified, "checks": checks}, args.out)
    return 0 if verified else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relce",
        description="Rightmost-path witness sets and finite-extension forcing "
        "over finite binary strings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    rightmost = sub.add_parser(
        "rightmost", help="walk a tree to its rightmost full-depth node"
    )
    rightmost.add_argument("--tree", required=True, help="tree JSON file")
    rightmost.add_argument("--trace", action="store_true", help="include the stage trace")
    rightmost.add_argument("--seed", type=int, default=None, help="override the generator seed")
    rightmost.add_argument("--out", default=None, help="write the report to this file")
    rightmost.set_defaults(handler=_cmd_rightmost)

    fixpoint = sub.add_parser(
        "fixpoint", help="set a position and remove change witnesses to a fixed point"
    )
    fixpoint.add_argument("--sigma", required=True, help="starting bit string")
    fixpoint.add_argument("--p", required=True, type=int, help="position to set")
    fixpoint.add_argument("--trace", action="store_true", help="include the stage trace")
    fixpoint.add_argument("--out", default=None)
    fixpoint.set_defaults(handler=_cmd_fixpoint)

    demo3 = sub.add_parser(
        "demo3", help="certify that a string cannot avoid a danger set above l"
    )
    demo3.add_argument("--sigma", required=True, help="stage approximation bit string")
    demo3.add_argument("--l", required=True, type=int, help="frozen common prefix length")
    demo3.add_argument("--op", required=True, help="operator JSON file")
    demo3.add_argument("--trace", action="store_true", help="include the fixed-point trace")
    demo3.add_argument("--out", default=None)
    demo3.set_defaults(handler=_cmd_demo3)

    force = sub.add_parser(
        "force", help="meet or avoid a requirement list by finite extension"
    )
    force.add_argument("--requirements", required=True, help="requirements JSON file")
    force.add_argument("--t", required=True, type=int, help="extension length bound")
    force.add_argument("--scan-cap", type=int, default=None, help="exhaustive scan budget")
    force.add_argument("--out", default=None)
    force.set_defaults(handler=_cmd_force)

    verify = sub.add_parser("verify", help="re-check an emitted report from raw inputs")
    verify.add_argument("--report", required=True, help="report JSON file")
    verify.add_argument("--tree", default=None, help="tree JSON file (rightmost reports)")
    verify.add_argument("--op", default=None, help="operator JSON file (demo3 reports)")
    verify.add_argument(
        "--requirements", default=None, help="requirements JSON file (force reports)"
    )
    verify.add_argument("--scan-cap", type=int, default=None)
    verify.add_argument("--out", default=None)
    verify.set_defaults(handler=_cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse handles -h and usage errors itself
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.handler(args)
    except LabError as exc:
        _emit_error(exc.kind, str(exc), exc.payload())
        return 2
    except json.JSONDecodeError as exc:
        _emit_error("malformed-json", str(exc), {})
        return 2
    except OSError as exc:
        _emit_error("io", str(exc), {})
        return 2
    except (ValueError, TypeError, LookupError) as exc:
        _emit_error("bad-input", str(exc), {})
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
