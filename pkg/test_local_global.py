#!/usr/bin/env python3
"""
Tests for local isotropy, Hasse-Minkowski and the orderings T_p
"""
import itertools
import warnings

import pytest
from sympy import primerange

from errors import DescriptorError, HypothesisError, SizeBoundError
from field_models import REAL_PLACE, FiniteField, PAdicField, local_hilbert_symbol
from local_global import (
    QForm,
    form_from_text,
    hasse_minkowski,
    is_local_square,
    local_isotropic,
    ordering_for_prime,
    place_name,
    rational_point_oracle,
    reciprocity_audit,
    relevant_places,
)

S = [2, 3, 5, 7, 13]


@pytest.fixture
def quaternary():
    return QForm((1, 1, -7, -31))


def test_form_basics():
    q = QForm((1, 1, -7, -31))
    assert q.dim == 4
    assert q.discriminant == 217
    assert q.evaluate((1, 2, 0, 0)) == 5
    assert str(q) == "<1,1,-7,-31>"
    assert form_from_text(["1,1,-7", "-31"]) == q
    with pytest.raises(DescriptorError):
        QForm((1, 0))
    with pytest.raises(DescriptorError):
        QForm(())
    with pytest.raises(DescriptorError):
        form_from_text(["1", "x"])


def test_places(quaternary):
    assert relevant_places(quaternary) == [REAL_PLACE, 2, 7, 31]
    assert relevant_places(QForm((1, 1, 1))) == [REAL_PLACE, 2]
    assert place_name(REAL_PLACE) == "R"
    assert place_name(2) == "Q_2"


def test_local_squares():
    assert is_local_square(17, 2)
    assert not is_local_square(5, 2)
    assert is_local_square(-1, 5)
    assert not is_local_square(-1, 3)
    assert is_local_square(9, 3)
    assert not is_local_square(-4, REAL_PLACE)
    with pytest.raises(DescriptorError):
        is_local_square(0, 3)


def test_local_isotropy_examples():
    assert not local_isotropic(QForm((1, 1)), REAL_PLACE)
    assert local_isotropic(QForm((1, -1)), REAL_PLACE)
    assert local_isotropic(QForm((1, 1)), 5)
    assert not local_isotropic(QForm((1, 1)), 3)
    assert local_isotropic(QForm((1, 1, 1)), 3)
    assert not local_isotropic(QForm((1, 1, 1)), 2)
    assert not local_isotropic(QForm((3,)), 5)
    assert local_isotropic(QForm((1, 1, 1, 1, 1)), 2)


def test_quaternary_form_fails_only_at_two(quaternary):
    verdict = hasse_minkowski(quaternary)
    assert not verdict.isotropic
    assert verdict.failures == ["Q_2"]
    assert verdict.summary == "anisotropic; local failures: Q_2"
    for place in [REAL_PLACE, 7, 31] + list(primerange(3, 51)):
        assert local_isotropic(quaternary, place)


def test_hasse_minkowski_examples():
    assert hasse_minkowski(QForm((1, -1))).isotropic
    assert hasse_minkowski(QForm((1, -1))).summary == "isotropic"
    verdict = hasse_minkowski(QForm((1, 1, 1)))
    assert verdict.failures == ["R", "Q_2"]
    assert [p.place for p in verdict.places] == ["R", "Q_2"]
    assert not hasse_minkowski(QForm((1, 1, -3))).isotropic


@pytest.mark.parametrize("entries", [(1, 1, -1), (1, 1, 1), (1, 3, -5), (1, 1, -3), (2, 3, -7), (-1, -1, -1)])
def test_reciprocity(entries):
    assert reciprocity_audit(QForm(entries))


def test_reciprocity_needs_ternary(quaternary):
    with pytest.raises(HypothesisError):
        reciprocity_audit(quaternary)


def test_rational_point_oracle():
    assert rational_point_oracle(QForm((1, -1))) == (1, 1)
    assert rational_point_oracle(QForm((1, 1, -2))) == (1, 1, 1)
    point = rational_point_oracle(QForm((1, 1, -7, -31)), height_bound=8)
    assert point is None
    assert rational_point_oracle(QForm((1, 1, 1)), height_bound=5) is None
    assert rational_point_oracle(QForm((5,))) is None
    with pytest.raises(SizeBoundError):
        rational_point_oracle(QForm((1, -1)), height_bound=10 ** 6)


@pytest.mark.parametrize("entries", [(1, 2, -3), (1, -2, -7), (3, 5, -8), (1, 1, -1, -1)])
def test_oracle_points_are_zeros(entries):
    q = QForm(entries)
    assert hasse_minkowski(q).isotropic
    point = rational_point_oracle(q)
    assert point is not None and any(point)
    assert q.evaluate(point) == 0


STEPPED = list(range(-50, 51, 7))
COARSE = list(range(-50, 51, 11))


@pytest.mark.parametrize("a", [1, -3, 5, 11])
def test_isotropic_ternary_forms_have_witnesses(a):
    isotropic = 0
    for b, c in itertools.combinations_with_replacement(STEPPED, 2):
        q = QForm((a, b, c))
        if not hasse_minkowski(q).isotropic:
            continue
        isotropic += 1
        point = rational_point_oracle(q)
        assert point is not None, str(q)
        assert any(point)
        assert q.evaluate(point) == 0
    assert isotropic > 0


@pytest.mark.parametrize("a, b", [(1, 2), (1, -7), (1, 13), (-3, 2), (-3, -7), (-3, 13)])
def test_isotropic_quaternary_forms_have_witnesses(a, b):
    isotropic = 0
    for c, d in itertools.combinations_with_replacement(COARSE, 2):
        q = QForm((a, b, c, d))
        if not hasse_minkowski(q).isotropic:
            continue
        isotropic += 1
        point = rational_point_oracle(q)
        assert point is not None, str(q)
        assert q.evaluate(point) == 0
    assert isotropic > 0


def test_number_theory_without_deprecation_warnings():
    with warnings.catch_warnings():
        warnings.simplefilter("error", DeprecationWarning)
        assert FiniteField(7).nonsquare == 3
        assert PAdicField(11).square_class(2) == 1
        assert local_hilbert_symbol(7, 3, 7) == -1
        assert is_local_square(-1, 5)
        assert hasse_minkowski(QForm((1, 1, -7, -31))).failures == ["Q_2"]
        assert rational_point_oracle(QForm((1, 2, -3))) is not None


@pytest.mark.parametrize("p, name", [(13, "C_I(1)"), (5, "C_I(1)"), (7, "S_I(1)"), (3, "S_I(1)")])
def test_ordering_for_prime(p, name):
    t, verdict = ordering_for_prime(p, S)
    assert verdict.name == name
    assert t.index == 4


def test_ordering_for_prime_small_set():
    t, verdict = ordering_for_prime(3, [2, 3])
    assert verdict.name == "S_I(1)"
    assert t.index == 4


def test_ordering_for_prime_errors():
    with pytest.raises(HypothesisError):
        ordering_for_prime(2, S)
    with pytest.raises(HypothesisError):
        ordering_for_prime(11, S)
    with pytest.raises(HypothesisError):
        ordering_for_prime(3, [3, 5])
