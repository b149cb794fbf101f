import functools

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from coringlab.amitsur import (AmitsurContext, GradedElement, amitsur_d, check_dg_axioms,
                               check_universal_forms, cohomology, coring_from_dg,
                               dg_iso_to_original, dg_product, galois_map,
                               omega_space, theta_iso, universal_forms,
                               verify_entwining_formulas, verify_homotopy,
                               verify_star_identity)
from coringlab.coring import Grouplike, check_coring_axioms, check_coring_map

import oracles
from conftest import GROUPLIKE

# dim H^n for n = 0..3, frozen from tests/oracles.py (see the oracle tests below)
EXPECTED_H = {
    "trivial_f2": [2, 0, 0, 0],
    "trivial_q": [3, 0, 0, 0],
    "f2_f4_sweedler": [1, 0, 0, 0],
    "qx2_sweedler": [1, 0, 0, 0],
    "flip_entwining": [2, 0, 0, 0],
    "superflip_entwining": [1, 0, 0, 0],
    "cobar_g0": [2, 0, 0, 0],
}
SWEEDLER_RANKS = [1, 3, 5, 11]


def _ctx(inst, n_max=4, reduced=False):
    g = inst.grouplike
    return AmitsurContext(g, n_max, reduced=reduced, ext=None if g.semi else inst.extension)


def test_oracle_sweedler_complex():
    mats = oracles.classical_amitsur(None, [1, 0], 4)
    dims = [2 ** (n + 1) for n in range(4)]
    assert [oracles.rank(D, 2) for D in mats] == SWEEDLER_RANKS
    assert [oracles.rank(D) for D in mats] == SWEEDLER_RANKS
    assert oracles.cohomology_dims(mats, dims, 2) == EXPECTED_H["f2_f4_sweedler"]
    assert oracles.cohomology_dims(mats, dims) == EXPECTED_H["qx2_sweedler"]
    assert oracles.cohomology_dims(mats, dims) == EXPECTED_H["superflip_entwining"]


def test_oracle_flip_and_cobar():
    flip = [oracles.kron_identity(2, D) for D in oracles.group_cobar(1, 2, 4)]
    assert oracles.cohomology_dims(flip, [2 * 2 ** n for n in range(4)]) == EXPECTED_H["flip_entwining"]
    point = [[[sum((-1) ** i for i in range(1, n + 1)) * (i == j) for j in range(2)] for i in range(2)]
             for n in range(4)]
    assert oracles.cohomology_dims(point, [2] * 4) == EXPECTED_H["cobar_g0"]


@pytest.mark.parametrize("name", sorted(EXPECTED_H))
def test_cohomology_matches_frozen_values(instances, name):
    ctx = _ctx(instances(name))
    assert cohomology(ctx, 3).h == EXPECTED_H[name]


@pytest.mark.parametrize("name", ["f2_f4_sweedler", "qx2_sweedler"])
def test_sweedler_ranks_match_oracle(instances, name):
    assert cohomology(_ctx(instances(name)), 3).ranks == SWEEDLER_RANKS


@pytest.mark.parametrize("name", ["trivial_f2", "trivial_q"])
def test_trivial_differential_alternates(instances, name):
    # every degree is R itself; d is zero in even degrees and invertible in odd ones
    ctx = _ctx(instances(name))
    F = ctx.field
    n = ctx.R.dim
    for k in range(4):
        assert ctx.d(k).shape == (n, n)
        assert F.rank(ctx.d(k)) == (n if k % 2 else 0)
        if k % 2:
            left_g = F.dot(ctx.product_matrix(1, k), F.kron(ctx.g.g.reshape(-1, 1), F.eye(n)))
            assert F.equal(ctx.d(k), left_g)


@pytest.mark.parametrize("name", GROUPLIKE)
@pytest.mark.parametrize("reduced", [False, True])
def test_dg_axioms(instances, name, reduced):
    ctx = _ctx(instances(name), 3, reduced)
    rep = check_dg_axioms(ctx, 3)
    assert rep.ok, rep.failed()


@pytest.mark.parametrize("name", GROUPLIKE)
def test_reduced_differential_two_routes(instances, name):
    red = _ctx(instances(name), 3, True)
    F = red.field
    for n in range(3):
        assert F.equal(red.reduced_d_formula(n), red.reduced_d_restricted(n))


@pytest.mark.parametrize("name", GROUPLIKE)
def test_reduced_complex_has_same_cohomology(instances, name):
    inst = instances(name)
    assert cohomology(_ctx(inst, 4, True), 3).h == EXPECTED_H[name]


@pytest.mark.parametrize("name", ["trivial_f2", "trivial_q", "f2_f4_sweedler",
                                  "qx2_sweedler", "superflip_entwining"])
def test_galois_homotopy(instances, name):
    inst = instances(name)
    gal = galois_map(inst.grouplike, inst.extension)
    assert gal.is_galois and gal.is_coring_map
    assert verify_star_identity(gal).ok
    rep = verify_homotopy(_ctx(inst, 5), gal, degrees=(1, 2, 3))
    assert rep.ok, rep.witnesses


def test_flip_is_not_galois(instances):
    gal = galois_map(instances("flip_entwining").grouplike)
    assert not gal.is_galois


@pytest.mark.parametrize("name", ["f2_f4_sweedler", "qx2_sweedler"])
def test_universal_forms_and_theta(instances, name):
    inst = instances(name)
    U = universal_forms(inst.extension, 3)
    assert [U.dim(n) for n in range(4)] == [2, 2, 2, 2]
    assert check_universal_forms(U, 3).ok
    red = _ctx(inst, 3, True)
    _, rep = theta_iso(red, U, 3)
    assert rep.ok, rep.witnesses


@pytest.mark.parametrize("name", ["f2_f4_sweedler", "qx2_sweedler", "superflip_entwining"])
def test_coring_from_truncated_dg_ring(instances, name):
    inst = instances(name)
    red = _ctx(inst, 3, True)
    K2, g2, rep = coring_from_dg(red.R, red.kmod, red.d(0), red.d(1))
    assert rep.ok, rep.witnesses
    assert check_coring_axioms(K2).ok
    phi = dg_iso_to_original(inst.grouplike, K2)
    assert check_coring_map(phi, inst.coring, K2)
    assert red.field.rank(phi) == inst.coring.dim


@pytest.mark.parametrize("name", ["flip_entwining", "superflip_entwining"])
def test_entwining_formulas(instances, name):
    inst = instances(name)
    ctx = _ctx(inst, 4)
    rep = verify_entwining_formulas(ctx, inst.rho_A, 4)
    assert rep.ok, rep.witnesses


@pytest.mark.parametrize("name", GROUPLIKE)
def test_zero_semi_grouplike_gives_a_complex(instances, name):
    K = instances(name).coring
    ctx = AmitsurContext(Grouplike(K, K.field.zeros(K.dim), semi=True), 4)
    F = ctx.field
    for n in range(3):
        assert F.is_zero(F.dot(ctx.d(n + 1), ctx.d(n)))


def _element(ctx, degree, coeffs):
    F = ctx.field
    dim = ctx.dim(degree)
    return GradedElement(degree, F.array((coeffs * dim)[:dim]))


@functools.lru_cache(maxsize=None)
def _superflip_ctx():
    from coringlab.io import load_bundled
    return _ctx(load_bundled("superflip_entwining"), 4)


@given(m=st.integers(0, 2), n=st.integers(0, 2),
       a=st.lists(st.integers(-2, 2), min_size=1, max_size=8),
       b=st.lists(st.integers(-2, 2), min_size=1, max_size=8))
def test_leibniz_on_random_elements(m, n, a, b):
    assume(m + n <= 3)
    ctx = _superflip_ctx()
    F = ctx.field
    x, y = _element(ctx, m, a), _element(ctx, n, b)
    lhs = amitsur_d(ctx, dg_product(ctx, x, y)).value
    t1 = dg_product(ctx, amitsur_d(ctx, x), y).value
    t2 = dg_product(ctx, x, amitsur_d(ctx, y)).value
    assert F.equal(lhs, F.normalize(t1 + t2 if m % 2 == 0 else t1 - t2))
    assert F.is_zero(amitsur_d(ctx, amitsur_d(ctx, x)).value)


def test_pure_tensors_embed(instances):
    ctx = _ctx(instances("f2_f4_sweedler"), 3)
    g = ctx.g.g
    one = omega_space(ctx, 2).embed(g, g)
    prod = dg_product(ctx, omega_space(ctx, 1).embed(g), omega_space(ctx, 1).embed(g))
    assert ctx.field.equal(one.value, prod.value)
    assert np.asarray(one.value).shape == (ctx.dim(2),)
