import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from coringlab.algebra import Algebra, AlgebraMap, check_algebra_axioms, free_module
from coringlab.coring import (Grouplike, augmentation, check_comodule,
                              check_coring_axioms, check_coring_map,
                              coinvariant_subring, coinvariants, comodule_hom_space,
                              coring_comodule, decomposition_maps, dual_ring,
                              dual_to_endomorphisms, entwining_to_coring,
                              grouplike_ring_structure, hom_coinv_iso,
                              induction_comodule, regular_comodule,
                              search_grouplikes, sweedler_coring, trivial_coring,
                              verify_coinv_C_iso, verify_grouplike)
from coringlab.exactla import GF, QQ
from coringlab.io import load_bundled

from conftest import GROUPLIKE, MUTATED, VALID


@pytest.mark.parametrize("name", VALID)
def test_bundled_corings_satisfy_axioms(instances, name):
    inst = instances(name)
    assert check_coring_axioms(inst.coring).ok
    info = verify_grouplike(inst.coring, inst.grouplike.g)
    assert info["kind"] == ("semi-grouplike" if inst.grouplike.semi else "grouplike")
    for X in inst.comodules.values():
        assert check_comodule(X).ok, X.name


@pytest.mark.parametrize("name,witnesses", [
    ("broken_counit", {"counit_left": [0, 1], "counit_right": [0, 1]}),
    ("broken_balancing", {"delta_left_linear": [1], "delta_right_linear": [1]}),
])
def test_mutations_fail_with_witnesses(instances, name, witnesses):
    rep = check_coring_axioms(instances(name).coring)
    assert not rep.ok
    assert rep.witnesses == witnesses


def test_vectorised_grouplike_search_matches_enumeration(instances):
    K = instances("f2_f4_sweedler").coring
    F = K.field
    naive = []
    for v in itertools.product(range(2), repeat=K.dim):
        if any(v) and verify_grouplike(K, F.array(v))["kind"] == "grouplike":
            naive.append(tuple(v))
    found = sorted(tuple(int(x) for x in g) for g in search_grouplikes(K))
    assert found == sorted(naive)
    assert len(found) == 3      # frozen from the enumeration above


def test_superflip_grouplikes_over_f3():
    inst = load_bundled("superflip_entwining")
    E = inst.coring.entwining
    F = GF(3)
    A = Algebra.cyclic_group_algebra(F, 2)
    from coringlab.coring import EntwiningData
    E3 = EntwiningData(A, 2, F.array(E.delta_C.tolist()), F.array(E.eps_C.tolist()),
                       F.array(E.psi.tolist()))
    K3 = entwining_to_coring(E3)
    found = sorted(tuple(int(x) for x in g) for g in search_grouplikes(K3))
    # 1 (x) (d1 + ds) and 1 (x) (d1 - ds)
    assert found == [(1, 1, 0, 0), (1, 2, 0, 0)]


@given(r=st.lists(st.integers(-2, 2), min_size=2, max_size=2),
       c=st.lists(st.integers(-2, 2), min_size=4, max_size=4))
def test_coproduct_is_bilinear_on_elements(r, c):
    inst = load_bundled("qx2_sweedler")
    K = inst.coring
    F = K.field
    r, c = F.array(r), F.array(c)
    lhs = F.dot(K.delta, K.left_by(r, c))
    rhs = F.dot(K.CC.lmat(r), F.dot(K.delta, c))
    assert F.equal(lhs, rhs)
    lhs = F.dot(K.delta, K.right_by(c, r))
    rhs = F.dot(K.CC.rmat(r), F.dot(K.delta, c))
    assert F.equal(lhs, rhs)
    # counit laws on the element
    lift = F.dot(K.delta_canon, c)
    assert F.equal(F.dot(K.counit_left_k, lift), c)
    assert F.equal(F.dot(K.counit_right_k, lift), c)


def test_dual_ring_of_trivial_coring_is_opposite():
    R = Algebra.from_matrices(QQ, [[[1, 0], [0, 0]], [[0, 1], [0, 0]], [[0, 0], [0, 1]]])
    K, g = trivial_coring(R)
    D = dual_ring(K)
    F = R.field
    assert D.dim == 3
    at_one = np.stack([F.dot(D.element(F.basis_vector(3, i)), R.unit) for i in range(3)], axis=1)
    Rop = R.opposite()
    for i in range(3):
        for j in range(3):
            lhs = F.dot(at_one, D.algebra.mult[i, j])
            rhs = Rop.mul(at_one[:, i], at_one[:, j])
            assert F.equal(lhs, rhs)


def test_dual_ring_of_f4_sweedler(instances):
    inst = instances("f2_f4_sweedler")
    D = dual_ring(inst.coring)
    assert D.dim == 4
    assert check_algebra_axioms(D.algebra).ok
    assert D.lift_independent()
    _, rep = dual_to_endomorphisms(D, inst.extension)
    assert rep.ok
    _, rep = augmentation(D, inst.grouplike)
    assert rep.ok


@pytest.mark.parametrize("name,dim_S", [("trivial_f2", 2), ("trivial_q", 3), ("f2_f4_sweedler", 1),
                                        ("qx2_sweedler", 1), ("flip_entwining", 2),
                                        ("superflip_entwining", 1)])
def test_coinvariant_subring_dimension(instances, name, dim_S):
    assert coinvariant_subring(instances(name).grouplike).source.dim == dim_S


@pytest.mark.parametrize("name", GROUPLIKE)
def test_structural_isomorphisms(instances, name):
    inst = instances(name)
    g = inst.grouplike
    _, rep = verify_coinv_C_iso(g)
    assert rep.ok
    for X in inst.comodules.values():
        assert hom_coinv_iso(g, X)[2].ok
    assert grouplike_ring_structure(g)[3].ok
    assert decomposition_maps(g)[1].ok


def test_induced_comodules_descend(instances):
    inst = instances("f2_f4_sweedler")
    g = inst.grouplike
    S = inst.extension.source
    X = induction_comodule(free_module(S, 2), inst.extension, g)
    assert X.M.dim == 4
    assert coinvariants(X, g).shape[1] == 2
    assert len(comodule_hom_space(regular_comodule(g), X)) == 2


def test_identity_is_a_coring_map(instances):
    K = instances("qx2_sweedler").coring
    assert check_coring_map(K.field.eye(K.dim), K, K)
    assert not check_coring_map(K.field.zeros(K.dim, K.dim), K, K)


def test_sweedler_coring_of_ground_field_is_trivial():
    A = Algebra.ground(QQ)
    K, g = sweedler_coring(AlgebraMap.unit_map(A))
    assert K.dim == 1 and check_coring_axioms(K).ok
    assert isinstance(g, Grouplike)
    assert check_comodule(coring_comodule(K)).ok
