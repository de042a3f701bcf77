import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from pydantic import BaseModel, ValidationError

from . import config, records, schemas
from .errors import BranchInvariantsError, CheckFailure, InputError
from .semigroup import char_sequences, semigroup_from_char, semigroup_from_generators
from .theorems import (
    checked,
    class_sweep,
    families_verify,
    log_transfer_verify,
    ng2_verify,
    order_laws_verify,
    prop51_verify,
    tau_bounds,
    tjurina_verify,
    verify_all,
)

logger = logging.getLogger(__name__)

CHECKS = {
    "order_laws": order_laws_verify,
    "tjurina": tjurina_verify,
    "tau_bounds": tau_bounds,
    "families": families_verify,
    "prop51": prop51_verify,
    "log_transfer": log_transfer_verify,
    "ng2": ng2_verify,
}
LEVELLED = {"families", "prop51", "log_transfer"}


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a comma list of integers")


def _coefficients(text: str) -> dict[int, str]:
    """'9:1,10:-1/3' as {9: '1', 10: '-1/3'}."""
    coeffs = {}
    for item in text.split(","):
        exponent, sep, value = item.partition(":")
        if not sep:
            raise argparse.ArgumentTypeError(f"{item!r} is not exponent:coefficient")
        try:
            coeffs[int(exponent)] = str(schemas.parse_rational(value))
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc))
    return coeffs


def _dump(model) -> str:
    if isinstance(model, BaseModel):
        return model.model_dump_json(indent=2)
    return json.dumps([m.model_dump(mode="json") for m in model], indent=2)


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        print(text)
    else:
        out.write_text(text + "\n")
        logger.info("wrote %s", out)


def _load_branch(path: Path):
    try:
        record = schemas.BranchRecord.model_validate_json(path.read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}")
    except ValidationError as exc:
        raise InputError(f"{path} is not a branch record: {exc}")
    return records.branch_from_record(record)


def sweep_tsv(report: schemas.SweepReport) -> str:
    lines = ["lambda_minus_gamma\ttau\tcount"]
    for outcome in report.outcomes:
        values = ",".join(str(v) for v in outcome.lambda_minus_gamma)
        lines.append(f"{{{values}}}\t{outcome.tau}\t{outcome.count}")
    return "\n".join(lines)


# SEMIGROUP
def cmd_semigroup_info(args) -> int:
    if args.gens is not None:
        semigroup = semigroup_from_generators(args.gens)
    else:
        semigroup = semigroup_from_char(args.char)
    _emit(_dump(records.semigroup_info(semigroup)), None)
    return 0


def cmd_semigroup_list(args) -> int:
    found = [
        records.semigroup_record(semigroup_from_char(beta))
        for beta in char_sequences(args.beta0_max, args.beta_max)
    ]
    _emit(_dump(found), None)
    return 0


# BRANCH
def cmd_branch_make(args) -> int:
    request = schemas.BranchCreate(
        char=args.char, coeffs=args.coeffs, seed=args.seed, trunc=args.trunc
    )
    branch = records.branch_from_create(request)
    _emit(_dump(records.branch_record(branch)), args.out)
    return 0


def cmd_invariants(args) -> int:
    branch = _load_branch(args.branch)
    record = records.invariants_record(branch)
    _emit(_dump(record), None)
    if record.tau != record.tau_oracle:
        logger.warning("tau = %d but the oracle gives %d", record.tau, record.tau_oracle)
        return 1
    return 0


# VERIFY
def cmd_verify(args) -> int:
    branch = _load_branch(args.branch)
    if args.all or args.check is None:
        reports = verify_all(branch)
    elif args.check in LEVELLED:
        k = 1 if args.k is None else args.k
        reports = [checked(CHECKS[args.check], branch, k)]
    elif args.check == "tau_bounds" and args.k is not None:
        reports = [checked(tau_bounds, branch, args.k)]
    else:
        reports = [checked(CHECKS[args.check], branch)]
    _emit(_dump(reports), args.out)
    return 1 if any(r.status == schemas.Status.VIOLATED for r in reports) else 0


def cmd_sweep(args) -> int:
    semigroup = semigroup_from_generators(args.gens)
    report = class_sweep(semigroup, args.samples, args.seed, workers=args.workers)
    if args.out is None:
        _emit(sweep_tsv(report), None)
    else:
        _emit(sweep_tsv(report), args.out.with_suffix(".tsv"))
        _emit(_dump(report), args.out.with_suffix(".json"))
    if args.store:
        from .database import engine
        from .dependencies import open_db
        from . import crud, models

        models.Base.metadata.create_all(bind=engine)
        with open_db() as db:
            run = crud.create_sweep(db, report)
            logger.info("stored sweep %d", run.id)
            print(f"stored sweep {run.id}", file=sys.stderr)
    return 1 if report.status == schemas.Status.VIOLATED else 0


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("app.main:app", host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="branchinv", description="Exact invariants of plane branches."
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log at DEBUG")
    verbs = parser.add_subparsers(dest="verb", required=True)

    semigroup = verbs.add_parser("semigroup", help="semigroup structure")
    semigroup_verbs = semigroup.add_subparsers(dest="action", required=True)
    info = semigroup_verbs.add_parser("info")
    source = info.add_mutually_exclusive_group(required=True)
    source.add_argument("--gens", type=_int_list)
    source.add_argument("--char", type=_int_list)
    info.set_defaults(handler=cmd_semigroup_info)
    listing = semigroup_verbs.add_parser("list")
    listing.add_argument("--beta0-max", type=int, required=True)
    listing.add_argument("--beta-max", type=int, required=True)
    listing.set_defaults(handler=cmd_semigroup_list)

    branch = verbs.add_parser("branch", help="build branches")
    branch_verbs = branch.add_subparsers(dest="action", required=True)
    make = branch_verbs.add_parser("make")
    make.add_argument("--char", type=_int_list, required=True)
    choice = make.add_mutually_exclusive_group(required=True)
    choice.add_argument("--coeffs", type=_coefficients)
    choice.add_argument("--seed", type=int)
    make.add_argument("--trunc", type=int)
    make.add_argument("--out", type=Path)
    make.set_defaults(handler=cmd_branch_make)

    invariants = verbs.add_parser("invariants", help="mu, tau, extra values, semiroots")
    invariants.add_argument("--branch", type=Path, required=True)
    invariants.set_defaults(handler=cmd_invariants)

    verify = verbs.add_parser("verify", help="run theorem checks on a branch")
    verify.add_argument("--branch", type=Path, required=True)
    verify.add_argument("--all", action="store_true")
    verify.add_argument("--check", choices=sorted(CHECKS))
    verify.add_argument("--k", type=int)
    verify.add_argument("--out", type=Path)
    verify.set_defaults(handler=cmd_verify)

    sweep = verbs.add_parser("sweep", help="sample a class and tabulate outcomes")
    sweep.add_argument("--gens", type=_int_list, required=True)
    sweep.add_argument("--samples", type=int, default=20)
    sweep.add_argument("--seed", type=int, default=0)
    sweep.add_argument("--workers", type=int, default=config.SWEEP_WORKERS)
    sweep.add_argument("--out", type=Path, help="writes OUT.tsv and OUT.json")
    sweep.add_argument("--store", action="store_true", help="persist into the database")
    sweep.set_defaults(handler=cmd_sweep)

    serve = verbs.add_parser("serve", help="start the HTTP API")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(handler=cmd_serve)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else config.LOG_LEVEL,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.handler(args)
    except CheckFailure as exc:
        logger.error("check failed: %s", exc)
        return 1
    except (BranchInvariantsError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
