#!/usr/bin/env python3
"""
Tests for the C-group calculus and W-groups of field models
"""
import random

import pytest
from sympy import primerange

import algebra_config
from cgroups import (
    are_isomorphic,
    cyclic_c2,
    dictionary_check,
    dihedral,
    essential_from_subgroup,
    expected_type,
    free_c_group,
    free_product_c,
    frattini,
    has_c2_factor,
    has_quotient,
    is_essential,
    is_split_group,
    isomorphism_type,
    p_H,
    presentation_of,
    presentation_text,
    quotient,
    semidirect_chain,
    subgroup_closure,
    two_generator_census,
    wgroup_from_model,
    whole_group,
    with_frattini,
)
from descriptors import build_model
from errors import HypothesisError, SizeBoundError
from f2_algebra import all_subspaces, annihilator
from orderings import SubgroupT, classify


@pytest.fixture
def quaternion():
    f2 = free_c_group(2)
    return quotient(f2, [f2.sq_bit(0) ^ f2.sq_bit(1), f2.sq_bit(0) ^ f2.com_bit(0, 1)])


def test_free_group_orders():
    assert [free_c_group(n).order for n in (1, 2, 3)] == [4, 32, 512]
    assert isomorphism_type(free_c_group(1)) == "C4"
    assert isomorphism_type(free_c_group(2)) == "C4*C4"
    with pytest.raises(HypothesisError):
        free_c_group(0)
    with pytest.raises(SizeBoundError):
        free_c_group(algebra_config.MAX_WGROUP_GENERATORS + 1)


def test_group_axioms(quaternion):
    groups = [quaternion, dihedral(), free_c_group(2)]
    for g in groups:
        elements = list(g.elements())
        assert len(elements) == g.order
        for x in elements:
            assert g.mul(x, g.inverse(x)) == g.identity
            assert g.mul(g.square(x), g.square(x)) == g.identity
            for y in elements:
                assert g.mul(g.square(x), y) == g.mul(y, g.square(x))
                assert g.mul(g.commutator(x, y), y) == g.mul(y, g.commutator(x, y))


def test_associativity_on_dihedral():
    g = dihedral()
    elements = list(g.elements())
    for x in elements:
        for y in elements:
            for z in elements:
                assert g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z))


def test_small_types(quaternion):
    assert isomorphism_type(cyclic_c2()) == "C2"
    assert isomorphism_type(dihedral()) == "D"
    assert isomorphism_type(quaternion) == "Q"
    assert not dihedral().is_abelian()
    f2 = free_c_group(2)
    assert isomorphism_type(quotient(f2, [f2.com_bit(0, 1)])) == "C4xC4"
    assert quotient(f2, [f2.com_bit(0, 1)]).is_abelian()
    assert isomorphism_type(quotient(f2, [f2.sq_bit(1), f2.com_bit(0, 1)])) == "C4xC2"


def test_quaternion_is_not_split(quaternion):
    assert not is_split_group(quaternion)
    with pytest.raises(HypothesisError):
        semidirect_chain(quaternion)
    assert not has_quotient(quaternion, "D")


def test_free_products():
    assert isomorphism_type(free_product_c(cyclic_c2(), cyclic_c2())) == "D"
    assert isomorphism_type(free_product_c(free_c_group(1), cyclic_c2())) == "C2*C4"
    assert are_isomorphic(free_product_c(free_c_group(1), free_c_group(1)), free_c_group(2))
    assert are_isomorphic(free_product_c(cyclic_c2(), free_c_group(1)), free_product_c(free_c_group(1), cyclic_c2()))


def test_subgroups_and_frattini():
    g = free_c_group(2)
    assert whole_group(g).order == 32
    assert frattini(g).order == 8
    d = dihedral()
    assert are_isomorphic(presentation_of(whole_group(d)), d)
    assert is_essential(d, whole_group(d))


def test_quotients_and_factors():
    f2 = free_c_group(2)
    assert has_quotient(f2, "C4")
    assert not has_quotient(dihedral(), "C4")
    assert has_quotient(dihedral(), "D")
    assert has_c2_factor(quotient(f2, [f2.sq_bit(1), f2.com_bit(0, 1)]))
    assert not has_c2_factor(dihedral())


def test_dihedral_chain():
    assert semidirect_chain(dihedral()) == [(2, "C2"), (4, "C2"), (8, "C2")]


def test_two_generator_census():
    rows = two_generator_census()
    assert len(rows) == 16
    assert {row.type_name for row in rows if row.flagged} == {"D", "C2*C4", "C4*C4", "C4xC4", "C4:C4"}
    assert all(not row.split for row in rows if row.type_name == "Q")
    entry = rows[0].to_entry()
    assert entry.relations == [] and entry.order == 32 and entry.flagged


def test_dyadic_wgroup():
    w = wgroup_from_model(build_model("Qp:2"))
    assert w.group.order == 256
    assert w.group.relation_words(w.basis_labels) == ["sq(-1) + com(2,5)"]
    assert [order for order, _ in semidirect_chain(w.group)] == [4, 8, 32, 64, 256]
    assert "relations: sq(-1) + com(2,5)" in presentation_text(w)


@pytest.mark.parametrize("name", ["F5", "F7", "F13", "Q2", "Q3", "Q5", "Q7", "Q13", "R", "RX", "RXY"])
def test_symbol_duality(name):
    w = wgroup_from_model(build_model(name))
    assert w.group.relations.dim + w.symbol_kernel.dim == w.group.phi_dim
    assert w.symbol_rank == w.group.relations.dim


def test_small_wgroups():
    assert isomorphism_type(wgroup_from_model(build_model("R")).group) == "C2"
    assert isomorphism_type(wgroup_from_model(build_model("F5")).group) == "C4"
    assert are_isomorphic(wgroup_from_model(build_model("RX")).group, dihedral())
    with pytest.raises(SizeBoundError):
        wgroup_from_model(build_model("QS"))


@pytest.mark.parametrize("p", list(primerange(3, 51)))
def test_odd_prime_wgroups(p):
    model = build_model(f"Qp:{p}")
    group = wgroup_from_model(model).group
    assert group.order == 16
    assert isomorphism_type(group) == expected_type(classify(SubgroupT.squares(model)))


@pytest.mark.parametrize("name", algebra_config.get_suite("round_trip"))
def test_essential_round_trip(name):
    model = build_model(name)
    w = wgroup_from_model(model)
    for space in all_subspaces(model.dim):
        if space.codim == 0:
            continue
        t = SubgroupT(model, space)
        h = essential_from_subgroup(w, t)
        assert is_essential(w.group, h)
        assert p_H(w, h).subspace == space


@pytest.mark.parametrize("name", algebra_config.get_suite("round_trip"))
def test_essential_subgroups_with_tails_round_trip(name):
    rng = random.Random(5)
    w = wgroup_from_model(build_model(name))
    g = w.group
    tails = g.tail_representatives()
    with_tails = 0
    for space in all_subspaces(w.model.dim):
        if space.codim == 0:
            continue
        for _ in range(3):
            gens = [g.element(a, rng.choice(tails)) for a in annihilator(space).vectors]
            with_tails += any(x.tail for x in gens)
            h = subgroup_closure(g, gens)
            assert is_essential(g, h)
            t = p_H(w, h)
            assert t.subspace == space
            back = essential_from_subgroup(w, t)
            assert with_frattini(back).elements == with_frattini(h).elements
    assert with_tails > 0


def test_with_frattini_covers_frattini():
    g = dihedral()
    h = subgroup_closure(g, [g.generator(0)])
    assert with_frattini(h).order == 2 * frattini(g).order
    assert with_frattini(whole_group(g)).order == g.order


@pytest.mark.parametrize("name", algebra_config.get_suite("dictionary"))
def test_dictionary(name):
    assert dictionary_check(build_model(name)) == []
