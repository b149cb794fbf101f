import pytest
from hypothesis import given, strategies as st

from coringlab.algebra import (Algebra, free_module, module_hom_space,
                               quotient_module, regular_bimodule)
from coringlab.amitsur import AmitsurContext
from coringlab.connections import (Connection, ModuleForms, check_connection,
                                   coaction_to_connection, connection_exists,
                                   connection_from_section, connection_to_coaction,
                                   cuntz_quillen_check, entwining_flat_connection_ac,
                                   entwining_flat_connection_ca, flatness_vs_coassociativity,
                                   morphism_correspondence, nonflat_connection,
                                   section_from_connection)
from coringlab.coring import check_comodule, comodule_hom_space, regular_comodule
from coringlab.exactla import GF, QQ

from conftest import GROUPLIKE


def _red(inst, n_max=3):
    return AmitsurContext(inst.grouplike, n_max, reduced=True, ext=inst.extension)


@pytest.mark.parametrize("name", GROUPLIKE)
def test_comodules_give_flat_connections_and_back(instances, name):
    inst = instances(name)
    red = _red(inst)
    F = red.field
    for X in inst.comodules.values():
        cn = coaction_to_connection(X, red)
        assert check_connection(cn).ok
        assert cn.is_flat()
        assert cn.extension_well_defined(1)
        Y = connection_to_coaction(cn)
        assert F.equal(Y.rho, X.rho)
        assert check_comodule(Y).ok


@pytest.mark.parametrize("name", ["f2_f4_sweedler", "qx2_sweedler", "superflip_entwining"])
def test_non_flat_connection_has_matching_defect(instances, name):
    inst = instances(name)
    red = _red(inst)
    cn = nonflat_connection(regular_bimodule(inst.coring.R), red)
    assert cn is not None and check_connection(cn).ok
    assert not cn.is_flat()
    rep, curv, defect = flatness_vs_coassociativity(cn)
    assert rep.ok, rep.witnesses
    assert not red.field.is_zero(defect)
    assert not check_comodule(connection_to_coaction(cn)).ok


@pytest.mark.parametrize("name", GROUPLIKE)
def test_sections_and_connections_are_inverse(instances, name):
    inst = instances(name)
    red = _red(inst)
    F = red.field
    for M in inst.modules.values():
        if M.name == "A_mod_x":
            continue
        cn = connection_exists(M, red)
        assert cn is not None, M.name
        j = section_from_connection(cn)
        again = connection_from_section(cn.forms, j)
        assert F.equal(again.nabla, cn.nabla)


def test_section_must_split_counit(instances):
    inst = instances("qx2_sweedler")
    forms = ModuleForms(regular_bimodule(inst.coring.R), _red(inst))
    with pytest.raises(ValueError):
        connection_from_section(forms, forms.field.zeros(forms.MC.dim, forms.M.dim))


def test_quotient_by_x_has_no_connection(instances):
    inst = instances("qx2_sweedler")
    assert connection_exists(inst.modules["A_mod_x"], _red(inst)) is None


def _dual_numbers(F):
    return Algebra.polynomial_quotient(F, [0, 0, 1], var="x")


@pytest.mark.parametrize("F", [QQ, GF(2), GF(3)], ids=repr)
def test_connections_detect_projectivity(F):
    A = _dual_numbers(F)
    Ar = regular_bimodule(A, left=False)
    cases = {
        "A": (Ar, True),
        "A^2": (free_module(A, 2), True),
        "A/(x)": (quotient_module(Ar, [A.basis(1)]), False),
    }
    for label, (M, projective) in cases.items():
        res = cuntz_quillen_check(M, A)
        assert res["projective"] is projective, label
        assert res["connection"] is projective, label
        assert res["agree"] and res["eps_is_action"], label


def test_connections_detect_projectivity_over_triangular_matrices():
    T = Algebra.from_matrices(QQ, [[[1, 0], [0, 0]], [[0, 1], [0, 0]], [[0, 0], [0, 1]]])
    res = cuntz_quillen_check(regular_bimodule(T, left=False), T)
    assert res["projective"] and res["connection"] and res["agree"]


@pytest.mark.parametrize("name", ["f2_f4_sweedler", "qx2_sweedler", "flip_entwining"])
def test_comodule_maps_are_connection_maps(instances, name):
    inst = instances(name)
    red = _red(inst)
    X = regular_comodule(inst.grouplike)
    Y = inst.comodules["C"]
    colinear = comodule_hom_space(X, Y)
    assert colinear
    for f in colinear:
        res = morphism_correspondence(f, X, Y, red)
        assert res["comodule_map"] and res["connection_map"] and res["defects_match"]
    # right-linear maps that are not colinear fail on both sides at once
    seen_failure = False
    for f in module_hom_space(X.M, Y.M, "right"):
        res = morphism_correspondence(f, X, Y, red)
        assert res["comodule_map"] == res["connection_map"]
        assert res["defects_match"]
        seen_failure |= not res["comodule_map"]
    assert seen_failure


@pytest.mark.parametrize("name", ["flip_entwining", "superflip_entwining"])
@pytest.mark.parametrize("n", [1, 2])
def test_entwining_connections(instances, name, n):
    inst = instances(name)
    red = AmitsurContext(inst.grouplike, n + 1, reduced=True, ext=inst.extension)
    cn, comod, rep = entwining_flat_connection_ac(red, inst.rho_A, n)
    assert rep.ok, rep.witnesses
    assert cn.is_flat()
    cn, comod, rep = entwining_flat_connection_ca(red, n)
    assert rep.ok, rep.witnesses
    assert cn.is_flat()


_QX2 = {}


def _qx2_forms():
    if not _QX2:
        from coringlab.io import load_bundled
        inst = load_bundled("qx2_sweedler")
        red = _red(inst, 2)
        base = connection_exists(regular_bimodule(inst.coring.R), red)
        homs = module_hom_space(base.forms.M, base.forms[1].with_sides(left=False), "right")
        _QX2.update(base=base, homs=homs)
    return _QX2["base"], _QX2["homs"]


@given(coeffs=st.lists(st.integers(-3, 3), min_size=8, max_size=8))
def test_connections_form_an_affine_space(coeffs):
    # adding any right-linear map M -> M (x) ker eps to a connection gives a connection
    base, homs = _qx2_forms()
    F = base.field
    phi = F.zeros(*base.nabla.shape)
    for c, h in zip(coeffs, homs):
        phi = F.normalize(phi + F.array(c) * h)
    cn = Connection(base.forms, F.normalize(base.nabla + phi))
    assert check_connection(cn).ok
    rep, _, _ = flatness_vs_coassociativity(cn)
    assert rep.ok
