import pytest

from app import config
from app.branch import make_branch, with_trunc
from app.errors import InputError, NotNg2Class
from app.schemas import Status
from app.semigroup import semigroup_from_generators
from app.theorems import (
    checked,
    class_sweep,
    contagem_families,
    describe,
    families_verify,
    log_transfer_verify,
    ng2_verify,
    order_laws_verify,
    prop51_verify,
    tau_bounds,
    tjurina_verify,
    verify_all,
)

EXAMPLE_ROWS = {
    ((16, 22, 26, 29, 32, 35, 41), 35),
    ((16, 22, 26, 32, 35, 41), 36),
    ((16, 22, 29, 32, 35, 41), 36),
    ((16, 22, 29, 35, 41), 37),
}


def test_describe(example_branch):
    assert describe(example_branch) == "<6,9,19> (t^6, t^9 + t^10)"


def test_families_of_the_example(example_branch):
    families = contagem_families(example_branch, 1)
    assert families.first == ()
    assert families.second == ()
    assert families.third == (16, 22, 35, 41)
    assert families.report.status == Status.VERIFIED
    assert families.report.witness["outside"] == []

    level_zero = contagem_families(example_branch, 0)
    assert level_zero.first == level_zero.second == level_zero.third == ()
    with pytest.raises(InputError):
        contagem_families(example_branch, 2)


def test_families_with_a_transfer_part(octic_branch):
    families = contagem_families(octic_branch, 1)
    assert families.first == (22,)
    assert families.report.status == Status.VERIFIED


def test_tau_bounds(example_branch, ng2_branch, cusp):
    report = tau_bounds(example_branch)
    assert report.status == Status.VERIFIED
    assert report.witness["semiroot_upper_bound"] == 38
    assert report.witness["tau"] == 35

    report = tau_bounds(ng2_branch)
    assert report.status == Status.VERIFIED
    assert report.witness["topological_upper_bound"] == "56/4"
    assert 4 * report.witness["tau"] == 56

    assert tau_bounds(cusp).status == Status.VERIFIED


def test_ng2(ng2_branch, cusp):
    report = ng2_verify(ng2_branch)
    assert report.status == Status.VERIFIED
    assert report.witness["lambda_minus_gamma"] == [11, 15]
    assert report.witness["minus_part"] == [11]
    assert report.witness["plus_part"] == [15]
    assert report.witness["rho_part"] == []
    assert report.witness["tau"] == 14
    assert report.witness["luengo_pfister"]
    assert ng2_verify(cusp).status == Status.VERIFIED


def test_ng2_rejects_other_classes(example_branch):
    with pytest.raises(NotNg2Class):
        ng2_verify(example_branch)


def test_prop51(example_branch):
    report = prop51_verify(example_branch, 1)
    assert report.status == Status.VERIFIED
    assert report.witness["left"] == [16]
    assert report.witness["minus_part"] == [16]
    with pytest.raises(InputError):
        prop51_verify(example_branch, 0)


def test_prop51_with_a_transfer_part(octic_branch):
    report = prop51_verify(octic_branch, 1)
    assert report.status == Status.VERIFIED
    assert report.witness["rho_part"] == [22]
    assert 22 in report.witness["left"]


def test_order_laws(example_branch, cusp, ng2_branch):
    for branch in (example_branch, cusp, ng2_branch):
        report = order_laws_verify(branch)
        assert report.status == Status.VERIFIED, report.witness
    report = order_laws_verify(example_branch)
    assert report.witness["nu_f_y"] == 47
    assert report.witness["jacobian_values"] and report.witness["jacobian_contains_semigroup"]
    assert report.witness["log_forms"] > 0
    assert order_laws_verify(cusp).witness["log_forms"] == 3


def test_log_transfer(example_branch, octic_branch):
    report = log_transfer_verify(example_branch, 1)
    assert report.status == Status.VERIFIED
    assert report.witness["values"] == [16, 22, 28]
    report = log_transfer_verify(octic_branch, 1)
    assert report.status == Status.VERIFIED
    assert all(v > 0 for v in report.witness["values"])


def test_truncation_retry(example_branch):
    short = with_trunc(example_branch, 30)
    report = checked(tjurina_verify, short)
    assert report.status == Status.VERIFIED
    assert report.witness["tau"] == report.witness["tau_oracle"] == 35

    report = checked(tjurina_verify, with_trunc(example_branch, 12))
    assert report.status == Status.INCONCLUSIVE
    assert report.witness["trunc"] == 24


def test_verify_all(example_branch, ng2_branch, cusp):
    for branch in (example_branch, ng2_branch, cusp):
        reports = verify_all(branch)
        assert reports
        assert all(r.status == Status.VERIFIED for r in reports), [
            (r.theorem, r.witness) for r in reports if r.status != Status.VERIFIED
        ]


def test_sweep_of_the_cusp_class():
    report = class_sweep(semigroup_from_generators((2, 3)), 3, seed=0, workers=1)
    assert report.status == Status.VERIFIED
    assert [(o.lambda_minus_gamma, o.tau, o.count) for o in report.outcomes] == [([], 2, 3)]


def test_sweep_of_an_ng2_class():
    report = class_sweep(semigroup_from_generators((4, 6, 13)), 10, seed=7, workers=1)
    assert report.status == Status.VERIFIED
    assert [(o.lambda_minus_gamma, o.tau, o.count) for o in report.outcomes] == [([11, 15], 14, 10)]
    assert [d.index for d in report.details] == list(range(10))
    assert all(d.tau == d.tau_oracle for d in report.details)


@pytest.mark.slow
def test_sweep_reproduces_the_example_table():
    report = class_sweep(semigroup_from_generators((6, 9, 19)), 200, seed=1)
    assert report.status == Status.VERIFIED
    assert sum(o.count for o in report.outcomes) == 200
    for outcome in report.outcomes:
        assert (tuple(outcome.lambda_minus_gamma), outcome.tau) in EXAMPLE_ROWS
        assert {16, 22, 35, 41} <= set(outcome.lambda_minus_gamma)
        assert outcome.tau <= 38


@pytest.mark.slow
@pytest.mark.parametrize(
    "beta, mu, mu_last, tau",
    [((4, 6, 9), 18, 2, 16), ((8, 10, 11), 64, 12, 52)],
)
def test_ng2_classes(beta, mu, mu_last, tau):
    for index in range(3):
        branch = make_branch(beta, seed=f"5:{index}")
        report = ng2_verify(branch)
        assert report.status == Status.VERIFIED
        assert report.witness["mu"] == mu
        assert report.witness["mu_g_minus_1"] == mu_last
        assert report.witness["tau"] == tau


@pytest.mark.slow
def test_tjurina_agrees_with_the_oracle_across_classes():
    classes = [
        (2, 5), (2, 7), (3, 4), (3, 5), (3, 7), (4, 5), (4, 7), (5, 6), (5, 7),
        (4, 6, 7), (4, 6, 9), (4, 10, 11), (6, 8, 9), (6, 9, 10), (6, 9, 11),
        (4, 6, 13), (6, 10, 11), (8, 12, 14, 15), (4, 14, 15), (6, 15, 16),
    ]
    for beta in classes:
        for index in range(10):
            branch = make_branch(beta, seed=f"3:{index}")
            report = tjurina_verify(branch)
            assert report.status == Status.VERIFIED, (beta, index, report.witness)


@pytest.mark.parametrize(
    "fixture, check, args",
    [
        ("example_branch", tjurina_verify, ()),
        ("ng2_branch", tjurina_verify, ()),
        ("example_branch", families_verify, (1,)),
        ("octic_branch", families_verify, (1,)),
        ("example_branch", tau_bounds, ()),
        ("ng2_branch", ng2_verify, ()),
    ],
)
def test_reports_survive_doubling_the_truncation(request, fixture, check, args):
    branch = request.getfixturevalue(fixture)
    report = check(branch, *args)
    doubled = check(with_trunc(branch, 2 * branch.trunc), *args)
    assert report.status == doubled.status == Status.VERIFIED
    assert doubled.witness == report.witness


def test_sweep_survives_doubling_the_truncation(monkeypatch):
    semigroup = semigroup_from_generators((4, 6, 13))
    report = class_sweep(semigroup, 3, seed=7, workers=1)
    monkeypatch.setattr(config, "TRUNC_FACTOR", 2)
    doubled = class_sweep(semigroup, 3, seed=7, workers=1)
    assert doubled.status == report.status == Status.VERIFIED
    assert doubled.outcomes == report.outcomes
