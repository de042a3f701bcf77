"""Mechanical checks relating a branch's value sets to those of its semiroots."""
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product, repeat
from typing import Callable, Optional

from . import config
from .branch import PuiseuxBranch, make_branch, semiroot_branch, valuation, with_trunc
from .differentials import (
    ValueSet,
    bm1_check,
    delta_set,
    form_value,
    jacobian_values,
    lambda_set,
    log_cofactor_values,
    log_form_search,
    rho_value,
    theta_table,
    tjurina_oracle,
)
from .errors import InputError, NotNg2Class, TruncationError
from .schemas import SampleRecord, Status, SweepOutcome, SweepReport, VerificationReport
from .semigroup import NumericalSemigroup, luengo_pfister_correction, semiroot_semigroup

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Families:
    first: tuple[int, ...]
    second: tuple[int, ...]
    third: tuple[int, ...]
    report: VerificationReport


def describe(branch: PuiseuxBranch) -> str:
    terms = " + ".join(
        f"{c}*t^{e}" if c != 1 else f"t^{e}" for e, c in sorted(branch.phi.coeffs.items())
    )
    return f"{branch.semigroup} (t^{branch.n}, {terms or '0'})"


def _report(theorem: str, branch: PuiseuxBranch, holds: bool, witness: dict) -> VerificationReport:
    if not holds:
        logger.warning("%s violated on %s: %s", theorem, describe(branch), witness)
    return VerificationReport(
        theorem=theorem,
        descriptor=describe(branch),
        status=Status.VERIFIED if holds else Status.VIOLATED,
        witness=witness,
    )


def _shifts(semigroup: NumericalSemigroup, k: int) -> list[int]:
    """sum_{i>k} s_i v_i with 0 <= s_{k+1} <= n_{k+1} - 2 and 0 <= s_i < n_i beyond."""
    v, n, g = semigroup.generators, semigroup.quotients, semigroup.genus
    ranges = [range(n[k] - 1)] + [range(n[i - 1]) for i in range(k + 2, g + 1)]
    return [
        sum(s * v[i] for s, i in zip(choice, range(k + 1, g + 1)))
        for choice in product(*ranges)
    ]


def _non_values(values: ValueSet) -> list[int]:
    return [r for r in values.semigroup.gaps if r not in values.extra]


def contagem_families(branch: PuiseuxBranch, k: int) -> Families:
    semigroup = branch.semigroup
    if not 0 <= k < semigroup.genus:
        raise InputError(f"k = {k} outside [0, {semigroup.genus})")
    v, e = semigroup.generators, semigroup.gcd_chain
    branch_k = semiroot_branch(branch, k)
    values_f = lambda_set(branch)
    values_k = lambda_set(branch_k)
    table = theta_table(branch_k, semigroup, k)
    shifts = _shifts(semigroup, k)

    first = [e[k] * d for d in table.first]
    second = [
        s + rho_value(semigroup, k, d, table.values[d]) for d in table.second for s in shifts
    ]
    deltas = _non_values(values_k) + [-a for a in branch_k.semigroup.gaps]
    third = [s + v[k + 1] - e[k] * d for d in deltas for s in shifts]

    pool = first + second + third
    outside = sorted(set(pool) - set(values_f.extra))
    disjoint = len(set(pool)) == len(pool)
    tau_k = values_k.tau
    witness = {
        "k": k,
        "F1": sorted(first),
        "F2": sorted(second),
        "F3": sorted(third),
        "lambda_minus_gamma": list(values_f.extra),
        "outside": outside,
        "disjoint": disjoint,
        "count_F2": len(second),
        "count_F3": len(third),
        "expected_count_F2": e[k + 1] * (semigroup.quotients[k] - 1) * len(table.second),
        "expected_count_F3": e[k + 1] * (semigroup.quotients[k] - 1) * tau_k,
    }
    counts = (
        witness["count_F2"] == witness["expected_count_F2"]
        and witness["count_F3"] == witness["expected_count_F3"]
    )
    report = _report(f"families k={k}", branch, disjoint and not outside and counts, witness)
    return Families(tuple(sorted(first)), tuple(sorted(second)), tuple(sorted(third)), report)


def families_verify(branch: PuiseuxBranch, k: int) -> VerificationReport:
    return contagem_families(branch, k).report


def tau_bounds(branch: PuiseuxBranch, k: Optional[int] = None) -> VerificationReport:
    semigroup = branch.semigroup
    g = semigroup.genus
    k = g - 1 if k is None else k
    if not 0 <= k < g:
        raise InputError(f"k = {k} outside [0, {g})")
    values = lambda_set(branch)
    mu, tau = semigroup.conductor, values.tau
    branch_k = semiroot_branch(branch, k)
    mu_k, tau_k = branch_k.semigroup.conductor, lambda_set(branch_k).tau
    e_next, n_next = semigroup.gcd_chain[k + 1], semigroup.quotients[k]
    n_g = semigroup.quotients[-1]
    mu_last = semiroot_semigroup(semigroup, g - 1).conductor

    upper_semiroot = mu - mu_k - e_next * (n_next - 2) * tau_k
    upper_last_times_4 = 4 * mu - (3 * n_g - 2) * mu_last
    slack = 8 * tau - 6 * mu + 1
    checks = {
        "semiroot_upper": tau <= upper_semiroot,
        "count_lower": len(values.extra) >= mu_k + e_next * (n_next - 2) * tau_k,
        "topological_upper": 4 * tau <= upper_last_times_4,
        "three_quarters_lower": 4 * tau >= 3 * mu,
        "refined_lower": slack >= 0 and slack * slack >= 1 + 4 * mu,
    }
    witness = {
        "k": k,
        "tau": tau,
        "mu": mu,
        "mu_k": mu_k,
        "tau_k": tau_k,
        "semiroot_upper_bound": upper_semiroot,
        "topological_upper_bound": f"{upper_last_times_4}/4",
        **checks,
    }
    return _report("tau_bounds", branch, all(checks.values()), witness)


def ng2_verify(branch: PuiseuxBranch) -> VerificationReport:
    semigroup = branch.semigroup
    if semigroup.is_trivial or semigroup.quotients[-1] != 2:
        raise NotNg2Class(f"{semigroup} does not have n_g = 2")
    g, mu = semigroup.genus, semigroup.conductor
    values_f = lambda_set(branch)
    if g == 1:
        holds = values_f.tau == mu
        return _report("ng2", branch, holds, {"tau": values_f.tau, "mu": mu})

    v_g = semigroup.generators[-1]
    branch_k = semiroot_branch(branch, g - 1)
    values_k = lambda_set(branch_k)
    table = theta_table(branch_k, semigroup, g - 1)
    rho_part = [rho_value(semigroup, g - 1, d, table.values[d]) for d in sorted(table.values)]
    minus_part = [v_g - 2 * d for d in _non_values(values_k)]
    plus_part = [v_g + 2 * d for d in branch_k.semigroup.gaps]
    pool = rho_part + minus_part + plus_part
    mu_k = branch_k.semigroup.conductor

    checks = {
        "disjoint": len(set(pool)) == len(pool),
        "decomposition": set(pool) == set(values_f.extra),
        "count": len(values_f.extra) == mu_k,
        "tau_formula": values_f.tau == mu - mu_k,
        "rho_injective": len(set(rho_part)) == len(values_k.extra),
    }
    if g == 2:
        checks["luengo_pfister"] = luengo_pfister_correction(semigroup) == mu_k
    witness = {
        "lambda_minus_gamma": list(values_f.extra),
        "rho_part": sorted(rho_part),
        "minus_part": sorted(minus_part),
        "plus_part": sorted(plus_part),
        "tau": values_f.tau,
        "mu": mu,
        "mu_g_minus_1": mu_k,
        **checks,
    }
    return _report("ng2", branch, all(checks.values()), witness)


def prop51_verify(branch: PuiseuxBranch, k: int) -> VerificationReport:
    semigroup = branch.semigroup
    if not 1 <= k < semigroup.genus:
        raise InputError(f"k = {k} outside [1, {semigroup.genus})")
    v, e = semigroup.generators, semigroup.gcd_chain
    values_f = lambda_set(branch)
    branch_k = semiroot_branch(branch, k)
    values_k = lambda_set(branch_k)
    table = theta_table(branch_k, semigroup, k)

    left = {x for x in values_f.extra if x < v[k + 1]}
    rho_part = [rho_value(semigroup, k, d, table.values[d]) for d in sorted(table.values)]
    minus_part = [v[k + 1] - e[k] * d for d in _non_values(values_k)]
    right = rho_part + minus_part
    holds = len(set(right)) == len(right) and set(right) == left
    witness = {
        "k": k,
        "left": sorted(left),
        "rho_part": sorted(rho_part),
        "minus_part": sorted(minus_part),
    }
    return _report(f"prop51 k={k}", branch, holds, witness)


def log_transfer_verify(branch: PuiseuxBranch, k: int) -> VerificationReport:
    """Values on C of the logarithmic forms of the k-semiroot."""
    semigroup = branch.semigroup
    if not 1 <= k < semigroup.genus:
        raise InputError(f"k = {k} outside [1, {semigroup.genus})")
    v, e = semigroup.generators, semigroup.gcd_chain
    branch_k = semiroot_branch(branch, k)
    values_k = lambda_set(branch_k)
    mu_k = branch_k.semigroup.conductor

    checked, mismatches = [], []
    for form in log_form_search(branch_k):
        delta = mu_k - 1 + v[0] // e[k] - valuation(branch_k, form.B).order
        expected = v[k + 1] - e[k] * delta
        observed = form_value(branch, form).order
        in_range = delta != 0 and (delta < 0 or delta not in values_k) and expected > 0
        checked.append(observed)
        if observed != expected or not in_range:
            mismatches.append({"delta": delta, "expected": expected, "observed": observed})
    witness = {"k": k, "values": sorted(checked), "mismatches": mismatches}
    return _report(f"log_transfer k={k}", branch, not mismatches, witness)


def order_laws_verify(branch: PuiseuxBranch) -> VerificationReport:
    semigroup = branch.semigroup
    mu, v = semigroup.conductor, semigroup.generators
    f = branch.weierstrass
    nu_fy = valuation(branch, f.diff_y()).order
    nu_fx = valuation(branch, f.diff_x()).order

    values = lambda_set(branch)
    jacobian = jacobian_values(branch)
    shifted = [x - (mu - 1) for x in jacobian.values]
    top = jacobian.high - (mu - 1)
    expected = [r for r in range(1, top + 1) if r in values]

    forms = log_form_search(branch)
    witnesses = [bm1_check(branch, form) for form in forms]
    residues = set(delta_set(values).values)
    cofactors = [
        c for c in log_cofactor_values(branch, forms) if c != 0 and -mu <= c <= mu
    ]
    checks = {
        "nu_f_y_law": nu_fy == mu - 1 + v[0],
        "nu_f_x_law": nu_fx == mu - 1 + v[1],
        "jacobian_values": shifted == expected,
        "jacobian_contains_semigroup": all(
            r in shifted for r in range(1, top + 1) if r in semigroup
        ),
        "bm1": all(w.order_law and w.lead_law for w in witnesses),
        "residue_duality": all(c in residues for c in cofactors),
    }
    witness = {
        "nu_f_y": nu_fy,
        "nu_f_x": nu_fx,
        "log_forms": len(forms),
        "bm1_failures": [
            {"nu_b": w.nu_b, "nu_m": w.nu_m, "k": w.k,
             "observed": str(w.observed_lead), "expected": str(w.expected_lead)}
            for w in witnesses if not (w.order_law and w.lead_law)
        ],
        "cofactor_values": cofactors,
        **checks,
    }
    return _report("order_laws", branch, all(checks.values()), witness)


def tjurina_verify(branch: PuiseuxBranch) -> VerificationReport:
    mu = branch.semigroup.conductor
    values = lambda_set(branch)
    oracle = tjurina_oracle(branch.weierstrass, cutoff=mu + 2)
    witness = {
        "lambda_minus_gamma": list(values.extra),
        "tau": values.tau,
        "tau_oracle": oracle,
        "mu": mu,
    }
    return _report("tjurina", branch, values.tau == oracle, witness)


def checked(check: Callable[..., VerificationReport], branch: PuiseuxBranch, *args) -> VerificationReport:
    """Run a check; on a truncation error retry once at doubled truncation."""
    try:
        return check(branch, *args)
    except TruncationError as exc:
        logger.warning(
            "%s ran out of truncation (%s), retrying at t^%d", check.__name__, exc, 2 * branch.trunc
        )
    try:
        return check(with_trunc(branch, 2 * branch.trunc), *args)
    except TruncationError as exc:
        return VerificationReport(
            theorem=check.__name__,
            descriptor=describe(branch),
            status=Status.INCONCLUSIVE,
            witness={"error": str(exc), "trunc": 2 * branch.trunc},
        )


def verify_all(branch: PuiseuxBranch) -> list[VerificationReport]:
    semigroup = branch.semigroup
    g = semigroup.genus
    reports = [checked(order_laws_verify, branch), checked(tjurina_verify, branch)]
    if g >= 1:
        reports.append(checked(tau_bounds, branch))
    for k in range(g):
        reports.append(checked(families_verify, branch, k))
    for k in range(1, g):
        reports.append(checked(prop51_verify, branch, k))
        reports.append(checked(log_transfer_verify, branch, k))
    if g >= 1 and semigroup.quotients[-1] == 2:
        reports.append(checked(ng2_verify, branch))
    return reports


def _sweep_sample(
    char: tuple[int, ...], seed: int, index: int
) -> tuple[SampleRecord, list[VerificationReport]]:
    branch = make_branch(char, seed=f"{seed}:{index}")
    semigroup = branch.semigroup
    reports = [checked(tjurina_verify, branch)]
    for k in range(semigroup.genus):
        reports.append(checked(families_verify, branch, k))
    reports.append(checked(tau_bounds, branch))
    if semigroup.quotients[-1] == 2:
        reports.append(checked(ng2_verify, branch))

    tjurina_report = reports[0]
    record = SampleRecord(
        index=index,
        lambda_minus_gamma=tjurina_report.witness.get("lambda_minus_gamma", []),
        tau=tjurina_report.witness.get("tau"),
        tau_oracle=tjurina_report.witness.get("tau_oracle"),
        statuses={r.theorem: r.status for r in reports},
    )
    return record, [r for r in reports if r.status != Status.VERIFIED]


def class_sweep(
    semigroup: NumericalSemigroup, samples: int, seed: int, workers: Optional[int] = None
) -> SweepReport:
    workers = config.SWEEP_WORKERS if workers is None else workers
    char = semigroup.char_exponents
    indices = range(samples)
    logger.info("sweeping %d samples of %s with %d workers", samples, semigroup, workers)
    if workers <= 1 or samples <= 1:
        results = list(map(_sweep_sample, repeat(char), repeat(seed), indices))
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(_sweep_sample, repeat(char), repeat(seed), indices))

    details = [record for record, _ in results]
    problems = [report for _, found in results for report in found]
    tally = Counter(
        (tuple(r.lambda_minus_gamma), r.tau) for r in details if r.tau is not None
    )
    outcomes = [
        SweepOutcome(lambda_minus_gamma=list(extra), tau=tau, count=count)
        for (extra, tau), count in sorted(tally.items(), key=lambda item: (item[0][1], item[0][0]))
    ]
    if any(p.status == Status.VIOLATED for p in problems):
        status = Status.VIOLATED
    elif problems:
        status = Status.INCONCLUSIVE
    else:
        status = Status.VERIFIED
    return SweepReport(
        generators=list(semigroup.generators),
        samples=samples,
        seed=seed,
        status=status,
        outcomes=outcomes,
        details=details,
        violations=problems,
    )
