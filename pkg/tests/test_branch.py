import random
from fractions import Fraction

import pytest

from app.branch import (
    COEFFICIENT_POOL,
    adic_expansion,
    allowed_exponents,
    default_trunc,
    generic_coefficients,
    make_branch,
    reconstruct,
    semiroot,
    semiroot_branch,
    semiroot_system,
    valuation,
    with_trunc,
)
from app.errors import InputError, SupportViolation, ValueAboveTruncation
from app.series import Poly

x, y = Poly.x(), Poly.y()


def test_make_branch_explicit(example_branch, ng2_branch, cusp):
    assert example_branch.n == 6
    assert example_branch.semigroup.generators == (6, 9, 19)
    assert example_branch.trunc == default_trunc(example_branch.semigroup) == 80
    assert ng2_branch.semigroup.generators == (4, 6, 13)
    assert cusp.weierstrass == y**2 - x**3


def test_make_branch_rejects_bad_input():
    with pytest.raises(SupportViolation):
        make_branch((6, 9, 10), {9: 1})
    with pytest.raises(SupportViolation):
        make_branch((6, 9, 10), {8: 1, 9: 1, 10: 1})
    with pytest.raises(SupportViolation):
        make_branch((8, 10, 15), {10: 1, 11: 1, 15: 1})
    with pytest.raises(InputError):
        make_branch((2, 3), {3: 1}, seed=1)
    with pytest.raises(InputError):
        make_branch((2, 3))


def test_generic_branch_is_seeded():
    first = make_branch((6, 9, 10), seed="1:0")
    again = make_branch((6, 9, 10), seed="1:0")
    assert first == again
    assert set(first.phi.coeffs) <= set(allowed_exponents(first.semigroup, first.trunc))
    assert {9, 10} <= set(first.phi.coeffs)
    assert all(c in COEFFICIENT_POOL for c in first.phi.coeffs.values())
    assert generic_coefficients(first.semigroup, "1:0") == first.phi.coeffs


def test_valuation(example_branch):
    assert valuation(example_branch, x).order == 6
    value = valuation(example_branch, y**2 - x**3)
    assert (value.order, value.coeff) == (19, 2)
    f = example_branch.weierstrass
    assert valuation(example_branch, f.diff_y()).order == 47
    assert valuation(example_branch, f.diff_x()).order == 50
    with pytest.raises(ValueAboveTruncation):
        valuation(example_branch, f)


def test_semiroots(example_branch, ng2_branch):
    assert semiroot(example_branch, 1) == y**2 - x**3
    assert semiroot(example_branch, 0) == y
    assert semiroot(example_branch, 2) == example_branch.weierstrass
    assert valuation(example_branch, semiroot(example_branch, 1)).order == 19
    assert semiroot(ng2_branch, 1) == y**2 - x**3
    assert valuation(ng2_branch, semiroot(ng2_branch, 1)).order == 13


def test_semiroot_branch(octic_branch):
    branch_k = semiroot_branch(octic_branch, 1)
    assert branch_k.n == 4
    assert branch_k.phi.coeffs == {5: 1, 7: 1}
    assert branch_k.semigroup.generators == (4, 5)
    smooth = semiroot_branch(octic_branch, 0)
    assert smooth.n == 1 and smooth.semigroup.is_trivial
    assert semiroot_branch(octic_branch, 2) is octic_branch


def test_values_on_a_semiroot_scale_by_e_k(example_branch, octic_branch):
    rng = random.Random(11)
    for branch, e_k in ((example_branch, 3), (octic_branch, 2)):
        branch_k = semiroot_branch(branch, 1)
        for _ in range(100):
            h = Poly({
                (i, j): rng.choice(COEFFICIENT_POOL)
                for i in range(3)
                for j in range(branch_k.n)
                if rng.random() < 0.6
            })
            if h.is_zero():
                continue
            on_curve, on_semiroot = valuation(branch, h), valuation(branch_k, h)
            assert on_curve.order == e_k * on_semiroot.order
            assert on_curve.coeff == on_semiroot.coeff


def test_adic_expansion(cusp, example_branch):
    system = semiroot_system(cusp)
    f0, f1 = system.polys
    assert adic_expansion(f0 * f1, system) == {(1, 1): Poly.const(1)}
    assert adic_expansion(y**3, system) == {(1, 0): x**3, (1, 1): Poly.const(1)}

    system = semiroot_system(example_branch)
    h = (y**4).scale(Fraction(1, 2)) + x * y**3 - x**5
    expansion = adic_expansion(h, system)
    assert reconstruct(expansion, system) == h
    assert all(b.y_degree <= 0 for b in expansion.values())


def test_with_trunc_keeps_terms(example_branch):
    doubled = with_trunc(example_branch, 160)
    assert doubled.trunc == 160
    assert doubled.phi.coeffs == example_branch.phi.coeffs
    assert doubled.weierstrass == example_branch.weierstrass


SEEDED_CLASSES = [(2, 5), (3, 4), (4, 6, 7), (4, 6, 9), (6, 9, 10), (6, 8, 9)]


@pytest.mark.parametrize("beta", SEEDED_CLASSES)
@pytest.mark.parametrize("sample", range(2))
def test_semiroots_of_seeded_branches(beta, sample):
    branch = make_branch(beta, seed=f"4:{sample}")
    semigroup = branch.semigroup
    g, n = semigroup.genus, branch.n
    for k in range(g):
        f_k = semiroot(branch, k)
        assert f_k.y_degree == n // semigroup.gcd_chain[k]
        assert valuation(branch, f_k).order == semigroup.generators[k + 1]
    for k in range(g + 1):
        branch_k = semiroot_branch(branch, k)
        for j in range(k + 1):
            assert semiroot(branch_k, j) == semiroot(branch, j)


@pytest.mark.parametrize("beta", SEEDED_CLASSES + [(8, 10, 15), (8, 12, 14, 15)])
def test_semiroot_powers_reach_degree_n_minus_one(beta):
    branch = make_branch(beta, seed="4:0")
    product = Poly.const(1)
    for i, n_i in enumerate(branch.semigroup.quotients):
        product = product * semiroot(branch, i) ** (n_i - 1)
    assert product.y_degree == branch.n - 1


@pytest.mark.parametrize("fixture", ["example_branch", "ng2_branch", "octic_branch"])
def test_adic_terms_have_distinct_values(request, fixture):
    branch = request.getfixturevalue(fixture)
    system = semiroot_system(branch)
    quotients = branch.semigroup.quotients
    rng = random.Random(5)
    for _ in range(30):
        h = Poly({
            (i, j): rng.choice(COEFFICIENT_POOL)
            for i in range(2)
            for j in range(branch.n)
            if rng.random() < 0.5
        })
        if h.is_zero():
            continue
        expansion = adic_expansion(h, system)
        assert reconstruct(expansion, system) == h
        orders = []
        for alpha, b in expansion.items():
            assert alpha[-1] == 0
            assert all(0 <= a < n_i for a, n_i in zip(alpha, quotients))
            orders.append(valuation(branch, reconstruct({alpha: b}, system)).order)
        assert len(set(orders)) == len(orders)
        assert valuation(branch, h).order == min(orders)
