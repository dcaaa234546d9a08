#!/usr/bin/env python3
"""
Tests for valuations, residue orderings and lifting
"""
import pytest

import algebra_config
from descriptors import build_model
from errors import DescriptorError, HypothesisError, ModelMismatchError
from field_models import FiniteField
from local_global import ordering_for_prime
from orderings import OrderingTag, SubgroupT, classify
from valuations import (
    find_compatible_valuation,
    get_valuation,
    is_compatible,
    lift_ordering,
    lift_with_class,
    product_lift,
    residue_ordering,
    valuations_of,
)

S = [2, 3, 5, 7, 13]


@pytest.fixture
def qs():
    return build_model("QS")


def test_valuation_names():
    assert [v.name for v in valuations_of(build_model("Q3"))] == ["3-adic"]
    assert [v.name for v in valuations_of(build_model("RXY"))] == ["Y-adic", "Y-adic/X-adic"]
    assert [v.name for v in valuations_of(build_model("QS"))] == ["3-adic", "5-adic", "7-adic", "13-adic"]
    assert valuations_of(build_model("F13")) == []
    assert get_valuation(build_model("RXY"), "Y-adic/X-adic").value_rank == 2
    with pytest.raises(DescriptorError):
        get_valuation(build_model("Q3"), "5-adic")


def test_unit_projection():
    q3 = build_model("Q3")
    v = get_valuation(q3, "3-adic")
    assert v.project(q3.square_class(2)) == 1
    assert not v.is_unit(q3.square_class(3))
    with pytest.raises(HypothesisError):
        v.project(q3.square_class(3))


@pytest.mark.parametrize("name", algebra_config.get_suite("lifting"))
def test_lift_then_residue_round_trip(name):
    model = build_model(name)
    v = get_valuation(model, algebra_config.get_valuation_chain(name)[0])
    t0 = SubgroupT.squares(v.residue_model)
    lifted = lift_ordering(v, t0)
    assert is_compatible(v, lifted)
    assert residue_ordering(v, lifted) == t0


@pytest.mark.parametrize(
    "name, selector, name_upstairs",
    [
        ("Q3", "3-adic", "S_I(1)"),
        ("Q7", "7-adic", "S_I(1)"),
        ("Q5", "5-adic", "C_I(1)"),
        ("Q13", "13-adic", "C_I(1)"),
        ("RX", "X-adic", "D_FAN2"),
        ("RXY", "Y-adic/X-adic", "D_I(2)"),
    ],
)
def test_lifted_squares_keep_their_family(name, selector, name_upstairs):
    v = get_valuation(build_model(name), selector)
    _, verdict = lift_with_class(v, SubgroupT.squares(v.residue_model))
    assert verdict.name == name_upstairs


def test_residue_field_squares_lift_to_s_type():
    v = get_valuation(build_model("Q3"), "3-adic")
    _, verdict = lift_with_class(v, SubgroupT.squares(FiniteField(3)))
    assert verdict.tag == OrderingTag.S_I


def test_lift_matches_prime_ordering(qs):
    v = get_valuation(qs, "13-adic")
    lifted = lift_ordering(v, SubgroupT.squares(v.residue_model))
    t13, verdict = ordering_for_prime(13, S)
    assert lifted == t13
    assert verdict.name == classify(lifted).name


@pytest.mark.parametrize("p", [3, 5, 7, 13])
def test_prime_orderings_are_compatible(qs, p):
    t, _ = ordering_for_prime(p, S)
    assert is_compatible(get_valuation(qs, f"{p}-adic"), t)


def test_incompatible_subgroup(qs):
    v = get_valuation(qs, "13-adic")
    squares = SubgroupT.squares(qs)
    assert not is_compatible(v, squares)
    with pytest.raises(HypothesisError):
        residue_ordering(v, squares)


def test_dyadic_residue_is_rejected():
    q2 = build_model("Q2")
    v = get_valuation(q2, "2-adic")
    assert v.residue_model is None
    with pytest.raises(HypothesisError):
        residue_ordering(v, SubgroupT.squares(q2))
    with pytest.raises(HypothesisError):
        lift_ordering(v, SubgroupT.squares(FiniteField(3)))


def test_mismatched_models():
    q3 = build_model("Q3")
    v = get_valuation(q3, "3-adic")
    with pytest.raises(ModelMismatchError):
        is_compatible(v, SubgroupT.squares(build_model("Q5")))
    with pytest.raises(ModelMismatchError):
        lift_ordering(v, SubgroupT.squares(FiniteField(5)))


def test_product_lift():
    q2 = build_model("Q2")
    product = product_lift(SubgroupT.from_labels(q2, ["5"]), SubgroupT.from_labels(q2, ["-1"]))
    assert product == SubgroupT.from_labels(q2, ["-1", "5"])
    with pytest.raises(ModelMismatchError):
        product_lift(SubgroupT.squares(q2), SubgroupT.squares(build_model("Q3")))


def test_find_compatible_valuation(qs):
    t13, _ = ordering_for_prime(13, S)
    assert find_compatible_valuation(qs, t13).name == "13-adic"
    t7, _ = ordering_for_prime(7, S)
    found = find_compatible_valuation(qs, t7)
    assert found is not None and is_compatible(found, t7)

    q3 = build_model("Q3")
    assert find_compatible_valuation(q3, SubgroupT.squares(q3)).name == "3-adic"
    q2 = build_model("Q2")
    assert find_compatible_valuation(q2, SubgroupT.squares(q2)) is None


def test_find_compatible_valuation_skips_unknown_selectors():
    q3 = build_model("Q3")
    # the Q5 chain names a valuation Q3 does not have
    assert find_compatible_valuation(q3, SubgroupT.squares(q3), model_name="Q5") is None


def test_find_compatible_valuation_outside_registry():
    model = build_model("Tower(Qp:3;T)")
    assert find_compatible_valuation(model, SubgroupT.squares(model)).name == "T-adic"
