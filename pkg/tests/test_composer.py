"""Fractional-target planning: splits, routing, and minimal corpus sizes."""

import math
from fractions import Fraction

import pytest

from d3c.analytics import build_curve, g_r, query_load
from d3c.composer import (
    basic_communication,
    basic_computation,
    group_divisor,
    minimal_files,
    plan_for_target,
    plan_to_dict,
    safe_iva_bits,
    split_e1,
    split_e2,
    split_e3,
)
from d3c.errors import DivisibilityError, InvalidParameterError


def groups_as_tuples(groups):
    return [(sp.fraction, sp.r, sp.g) for sp in groups]


def test_storage_split_examples():
    alpha, groups = split_e1(10, "4.5", 2)
    assert alpha == Fraction(1, 2)
    assert groups_as_tuples(groups) == [
        (Fraction(1, 2), 4, 2),
        (Fraction(1, 2), 5, 2),
    ]

    alpha, groups = split_e1(10, 4, 2)
    assert alpha == 0
    assert groups_as_tuples(groups) == [(Fraction(1), 4, 2)]

    alpha, groups = split_e1(3, "1.5", 1)
    assert alpha == Fraction(1, 2)
    assert groups_as_tuples(groups) == [
        (Fraction(1, 2), 1, 1),
        (Fraction(1, 2), 2, 1),
    ]


def test_storage_split_weighted_identities():
    for r in (Fraction(9, 2), Fraction(17, 6), Fraction(2)):
        for g in range(1, math.floor(r) + 1):
            _, groups = split_e1(10, r, g)
            assert sum(sp.fraction for sp in groups) == 1
            assert sum(sp.fraction * sp.r for sp in groups) == r
            c = sum(sp.fraction * basic_computation(10, sp.r, sp.g) for sp in groups)
            assert c == Fraction(r, 10) + (1 - Fraction(r, 10)) * g
            L = sum(sp.fraction * basic_communication(10, sp.r, sp.g) for sp in groups)
            assert L == (1 - Fraction(r, 10)) / g


def test_storage_split_rejects_large_g():
    with pytest.raises(InvalidParameterError):
        split_e1(10, "4.5", 5)


def test_coding_split_examples():
    beta, groups = split_e2(10, "4.5", "1.5")
    assert beta == Fraction(1, 2)
    assert groups_as_tuples(groups) == [
        (Fraction(1, 4), 4, 1),
        (Fraction(1, 4), 5, 1),
        (Fraction(1, 4), 4, 2),
        (Fraction(1, 4), 5, 2),
    ]

    beta, groups = split_e2(10, "4.5", 2)
    assert beta == 0
    assert len(groups) == 2

    beta, groups = split_e2(4, 3, "2.25")
    assert beta == Fraction(1, 4)
    assert groups_as_tuples(groups) == [
        (Fraction(3, 4), 3, 2),
        (Fraction(1, 4), 3, 3),
    ]


def test_coding_split_rejects_saturation_range():
    with pytest.raises(InvalidParameterError, match="saturation"):
        split_e2(10, "4.5", "4.2")


def test_saturation_split_endpoint():
    theta, groups = split_e3(10, "4.5", "2.9")
    assert theta == Fraction(1, 2)
    assert groups_as_tuples(groups) == [
        (Fraction(1, 2), 4, 4),
        (Fraction(1, 2), 5, 5),
    ]


def test_saturation_split_interior():
    r = Fraction(5, 2)
    c = Fraction(5, 8) + Fraction(3, 8) * Fraction(11, 5)  # implied g = 2.2
    theta, groups = split_e3(4, r, c)
    assert theta == Fraction(3, 10)
    assert sum(sp.fraction * sp.r for sp in groups) == r
    assert sum(sp.fraction * basic_computation(4, sp.r, sp.g) for sp in groups) == c
    # the full group carries weight theta at (ceil(r), ceil(r))
    assert (theta, 3, 3) in groups_as_tuples(groups)


def test_saturation_split_errors():
    with pytest.raises(InvalidParameterError, match="fractional"):
        split_e3(10, 4, 3)
    with pytest.raises(InvalidParameterError, match="ceil"):
        split_e3(3, "2.5", "7/6")
    with pytest.raises(InvalidParameterError, match="outside"):
        split_e3(10, "4.5", 2)  # implied g below floor(r)


def test_route_labels_partition_the_domain():
    K = 10
    for r in (Fraction(3), Fraction(9, 2)):
        curve = build_curve(K, r)
        grid = [1 + (r - 1) * Fraction(i, 40) for i in range(41)]
        for c in grid:
            plan = plan_for_target(K, minimal_files(K, r, c), r, c)
            assert plan.route in {"corner", "e1", "e2", "e3", "clamp"}
            assert sum(sp.fraction for sp in plan.groups) == 1
            assert plan.predicted_r == r
            if plan.route == "clamp":
                assert plan.predicted_c <= c
            else:
                assert plan.predicted_c == c
            g_implied = (c - Fraction(r, K)) / (1 - Fraction(r, K))
            if plan.route == "corner":
                assert r.denominator == 1 and g_implied.denominator == 1
            elif plan.route == "e1":
                assert r.denominator > 1 and g_implied.denominator == 1
            elif plan.route == "e2":
                assert g_implied.denominator > 1 and g_implied < math.floor(r)
            elif plan.route == "e3":
                assert math.floor(r) < g_implied <= g_r(K, r)
            else:
                assert g_implied > g_r(K, r)


def test_predictions_match_curve_on_pre_saturation_routes():
    K = 10
    for r in (Fraction(3), Fraction(9, 2)):
        curve = build_curve(K, r)
        grid = [1 + (r - 1) * Fraction(i, 40) for i in range(41)]
        for c in grid:
            plan = plan_for_target(K, minimal_files(K, r, c), r, c)
            if plan.route in ("corner", "e1", "e2"):
                assert plan.predicted_L == query_load(curve, c), (r, c)


def test_unique_split_parameters_recoverable_from_plans():
    alpha, groups = split_e1(10, "4.5", 3)
    assert sum(sp.fraction for sp in groups if sp.r == 5) == alpha

    beta, groups = split_e2(10, "4.5", "2.5")
    assert sum(sp.fraction for sp in groups if sp.g == 3) == beta

    theta, groups = split_e3(10, "4.5", "2.8")
    assert sum(sp.fraction for sp in groups if (sp.r, sp.g) == (5, 5)) == theta
    # and theta solves the computation-budget equation
    c = sum(sp.fraction * basic_computation(10, sp.r, sp.g) for sp in groups)
    assert c == Fraction(9, 20) + Fraction(11, 20) * (4 + theta * Fraction(5, Fraction(11, 2)))


def test_minimal_files_values():
    assert minimal_files(10, "4.5", 1) == 5040
    assert minimal_files(10, "4.5", "1.8") == 55440
    assert minimal_files(10, "4.5", "2.9") == 2520
    assert minimal_files(10, "4.5", "3.5") == 2520
    assert minimal_files(3, 2, "4/3") == 3


def test_minimal_files_is_admissible_and_tight():
    for r, c in ((Fraction(9, 2), Fraction(9, 5)), (Fraction(5, 2), Fraction(3, 2))):
        K = 10 if r > 3 else 4
        need = minimal_files(K, r, c)
        plan = plan_for_target(K, need, r, c)
        for sp in plan.groups:
            assert sp.file_count == sp.fraction * need
            assert sp.file_count % group_divisor(K, sp.r, sp.g) == 0
        with pytest.raises(DivisibilityError) as err:
            plan_for_target(K, need - 1, r, c)
        assert err.value.min_files == need


def test_plan_for_golden_example():
    plan = plan_for_target(3, 6, 2, "4/3")
    assert plan.route == "corner"
    assert groups_as_tuples(plan.groups) == [(Fraction(1), 2, 2)]
    assert plan.predicted_L == Fraction(1, 6)
    assert plan.groups[0].file_count == 6
    assert list(plan.groups[0].file_ids) == [1, 2, 3, 4, 5, 6]


def test_plan_groups_tile_the_corpus():
    plan = plan_for_target(10, 55440, "4.5", "1.8")
    seen = []
    for sp in plan.groups:
        seen.extend(sp.file_ids)
    assert sorted(seen) == list(range(1, 55441))


def test_clamp_region_keeps_saturation_computation():
    plan = plan_for_target(10, 2520, "4.5", "3.5")
    assert plan.route == "clamp"
    assert plan.predicted_c == Fraction(29, 10)
    assert plan.target_c == Fraction(7, 2)
    assert groups_as_tuples(plan.groups) == [
        (Fraction(1, 2), 4, 4),
        (Fraction(1, 2), 5, 5),
    ]


def test_clamp_for_integer_storage():
    plan = plan_for_target(4, 6, 2, "1.9")
    assert plan.route == "clamp"
    assert groups_as_tuples(plan.groups) == [(Fraction(1), 2, 2)]
    assert plan.predicted_c == Fraction(3, 2)


def test_clamp_when_ceil_reaches_K():
    plan = plan_for_target(3, 6, "2.5", "2.2")
    assert plan.route == "clamp"
    assert groups_as_tuples(plan.groups) == [
        (Fraction(1, 2), 2, 2),
        (Fraction(1, 2), 3, 2),
    ]


def test_plan_rejects_bad_targets():
    with pytest.raises(InvalidParameterError):
        plan_for_target(10, 5040, "4.5", Fraction(1, 2))  # c below 1
    with pytest.raises(InvalidParameterError):
        plan_for_target(10, 5040, "4.5", 5)  # c above r
    with pytest.raises(InvalidParameterError):
        plan_for_target(10, 5040, 10, 2)  # r not below K


def test_plan_serialization_schema():
    plan = plan_for_target(3, 6, 2, "4/3")
    doc = plan_to_dict(plan)
    assert doc["K"] == 3 and doc["N"] == 6
    assert doc["target_r"] == "2" and doc["target_c"] == "4/3"
    assert doc["predicted_L"] == "1/6"
    assert doc["groups"] == [{"fraction": "1", "r": 2, "g": 2, "file_ids": [1, 2, 3, 4, 5, 6]}]


def test_safe_iva_bits_meets_segment_divisibility():
    for r, c in ((Fraction(9, 2), Fraction(9, 5)), (Fraction(9, 2), Fraction(29, 10))):
        plan = plan_for_target(10, minimal_files(10, r, c), r, c)
        T = safe_iva_bits(plan)
        for sp in plan.groups:
            eta = sp.file_count // group_divisor(10, sp.r, sp.g)
            assert (eta * T) % sp.g == 0
