#!/usr/bin/env python3
"""
Tests for field models, Hilbert symbols and levels
"""
import pytest

import algebra_config
from descriptors import build_model
from errors import DescriptorError, ModelMismatchError
from field_models import (
    INFINITE_LEVEL,
    REAL_PLACE,
    _binary_values,
    all_classes,
    binary_values,
    brauer_class,
    class_label,
    field_level,
    hilbert_symbol,
    hilbert_symbol_oracle,
    local_hilbert_symbol,
    local_symbols,
    minus_one,
    represents_binary,
    square_class,
    sum_of_squares_classes,
)

BUILTIN = [entry["model_name"] for entry in algebra_config.BUILTIN_MODEL_MAPPING["model_list"]]


def test_square_class_examples():
    q2 = build_model("Qp:2")
    assert square_class(q2, 7).coords == q2.minus_one
    assert square_class(build_model("Fq:13"), 4).coords == 0
    rx = build_model("Tower(R;X)")
    assert square_class(rx, "-X**3").coords == 0b11
    assert rx.square_class("X**2 - X**5") == 0
    assert rx.square_class("1/X") == 0b10


def test_square_class_errors():
    with pytest.raises(DescriptorError):
        build_model("Qp:2").square_class(0)
    with pytest.raises(DescriptorError):
        build_model("QS").square_class(11)
    with pytest.raises(DescriptorError):
        build_model("Fq:13").square_class(26)


def test_dimensions_and_bases():
    assert build_model("Fq:7").dim == 1
    assert build_model("Qp:7").basis_labels == ("3", "7")
    assert build_model("Qp:2").basis_labels == ("-1", "2", "5")
    assert build_model("QS").basis_labels == ("-1", "2", "3", "5", "7", "13")
    assert build_model("RXY").basis_labels == ("-1", "X", "Y")


def test_hilbert_symbol_examples():
    r = build_model("R")
    assert hilbert_symbol(r, 1, 1) == -1
    q2 = build_model("Qp:2")
    assert hilbert_symbol(q2, q2.square_class(2), q2.square_class(5)) == -1
    q3 = build_model("Qp:3")
    assert hilbert_symbol(q3, q3.square_class(3), q3.square_class(2)) == -1
    assert all(hilbert_symbol(build_model("Fq:7"), a, b) == 1 for a in range(2) for b in range(2))


def test_tower_symbols():
    rx = build_model("RX")
    minus, x = rx.square_class(-1), rx.square_class("X")
    assert hilbert_symbol(rx, minus, x) == -1
    assert hilbert_symbol(rx, x, x) == hilbert_symbol(rx, x, minus)
    assert hilbert_symbol(rx, x, minus ^ x) == 1


def test_mismatched_models():
    q2, q3 = build_model("Q2"), build_model("Q3")
    with pytest.raises(ModelMismatchError):
        hilbert_symbol(q2, square_class(q3, 3), 1)
    with pytest.raises(ModelMismatchError):
        square_class(q2, 3) * square_class(q3, 3)


@pytest.mark.parametrize("name", BUILTIN)
def test_bimultiplicative_and_alternating(name):
    model = build_model(name)
    for a in range(model.size):
        assert brauer_class(model, a, a ^ model.minus_one) == 0
        for b in range(model.size):
            assert brauer_class(model, a, b) == brauer_class(model, b, a)
            for c in range(model.size):
                assert brauer_class(model, a ^ c, b) == brauer_class(model, a, b) ^ brauer_class(model, c, b)


@pytest.mark.parametrize("name", ["Q2", "Q3", "Q5", "Q7", "Q13"])
def test_symbols_match_isotropy_oracle(name):
    model = build_model(name)
    for a in range(model.size):
        for b in range(a, model.size):
            ra, rb = int(model.representative(a)), int(model.representative(b))
            assert hilbert_symbol(model, a, b) == hilbert_symbol_oracle(model.p, ra, rb), (ra, rb)


def test_product_formula():
    qs = build_model("QS")
    for a in range(qs.size):
        for b in range(qs.size):
            symbols = local_symbols(qs, a, b)
            assert set(symbols) == {REAL_PLACE, 2, 3, 5, 7, 13}
            product = 1
            for value in symbols.values():
                product *= value
            assert product == 1


def test_local_symbol_steinberg():
    for place in (REAL_PLACE, 2, 3, 5, 7):
        for a in (2, 3, -5, 7, 10):
            assert local_hilbert_symbol(a, 1 - a, place) == 1


def test_represents_binary_examples():
    q2 = build_model("Qp:2")
    assert represents_binary(q2, q2.square_class(2), 0, 0)
    assert not represents_binary(q2, q2.minus_one, 0, 0)
    f13 = build_model("Fq:13")
    assert represents_binary(f13, f13.minus_one, 0, 0)


@pytest.mark.parametrize(
    "name, level",
    [("Q2", 4), ("R", INFINITE_LEVEL), ("F7", 2), ("F13", 1), ("Q3", 2), ("Q5", 1), ("RX", INFINITE_LEVEL)],
)
def test_field_level(name, level):
    assert field_level(build_model(name)) == level


def test_sum_of_squares_classes():
    q2 = build_model("Qp:2")
    assert sum_of_squares_classes(q2, 2) == {q2.square_class(x) for x in (1, 2, 5, 10)}
    r = build_model("R")
    assert all(sum_of_squares_classes(r, k) == {0} for k in (1, 2, 5))
    assert sum_of_squares_classes(build_model("Fq:13"), 2) == {0, 1}
    with pytest.raises(ValueError):
        sum_of_squares_classes(r, 0)


def test_labels_and_class_helpers():
    q2 = build_model("Qp:2")
    assert class_label(q2, q2.square_class(10)) == "10"
    assert class_label(q2, minus_one(q2)) == "-1"
    assert list(all_classes(q2)) == list(range(8))
    assert minus_one(build_model("Fq:13")) == 0
    rx = build_model("RX")
    assert class_label(rx, square_class(rx, "-X**3")) == "-X"


@pytest.mark.parametrize("name", ["Q3", "Q5"])
def test_symbols_match_oracle_at_sixth_power(name):
    model = build_model(name)
    for a in range(model.size):
        for b in range(a, model.size):
            ra, rb = int(model.representative(a)), int(model.representative(b))
            assert hilbert_symbol(model, a, b) == hilbert_symbol_oracle(model.p, ra, rb, exponent=6)


def test_binary_values_cache_is_bounded():
    assert _binary_values.cache_info().maxsize == algebra_config.BINARY_VALUES_CACHE_SIZE
    f13 = build_model("Fq:13")
    assert binary_values(f13, 0, 0) == frozenset({0, 1})
    assert _binary_values.cache_info().currsize <= algebra_config.BINARY_VALUES_CACHE_SIZE
