#!/usr/bin/env python3
"""
Named end-to-end checks run by `cli.py selftest`.

Each check returns (passed, detail). The model groups come from the "suites"
section of BUILTIN_MODEL_MAPPING.
"""
import logging
from typing import Callable, Dict, List, Tuple

from pydantic import BaseModel
from sympy import primerange

import algebra_config
from cgroups import (
    CSubgroup,
    WGroupPresentation,
    are_isomorphic,
    dictionary_check,
    dihedral,
    essential_from_subgroup,
    expected_type,
    is_essential,
    isomorphism_type,
    p_H,
    semidirect_chain,
    subgroup_closure,
    two_generator_census,
    wgroup_from_model,
    with_frattini,
)
from descriptors import build_model
from f2_algebra import F2Subspace, all_subspaces, annihilator
from field_models import REAL_PLACE, FiniteField, PAdicField, hilbert_symbol, hilbert_symbol_oracle, local_symbols, sum_of_squares_classes
from local_global import QForm, hasse_minkowski, local_isotropic, ordering_for_prime
from orderings import (
    OrderingTag,
    SubgroupT,
    classify,
    enumerate_subgroups,
    intersect_c0,
    is_liftable_c4,
    level_of_T,
    rigid_trichotomy_check,
    t_plus_aT,
)
from valuations import get_valuation, lift_ordering, residue_ordering
from witt import c0_kernel_check, ring_iso, witt_ring

logger = logging.getLogger(__name__)

CheckOutcome = Tuple[bool, str]


class CheckResult(BaseModel):
    name: str
    passed: bool
    detail: str


def _suite(name: str):
    return [build_model(m) for m in algebra_config.get_suite(name)]


def check_dyadic_sums() -> CheckOutcome:
    q2 = build_model("Qp:2")
    t = SubgroupT.from_labels(q2, ["5"])
    sums = t_plus_aT(t, 0).classes
    want = {q2.square_class(x) for x in (1, 2, 5, 10, -2, -10)}
    tag, level = classify(t).tag, level_of_T(t)
    ok = sums == want and tag == OrderingTag.C4_STAR_C4 and level == 3
    return ok, f"T+T={sorted(q2.label(v) for v in sums)} type={tag.value} level={level}"


def check_dyadic_wgroup() -> CheckOutcome:
    w = wgroup_from_model(build_model("Qp:2"))
    words = w.group.relation_words(w.basis_labels)
    orders = [order for order, _ in semidirect_chain(w.group)]
    ok = w.group.order == 256 and words == ["sq(-1) + com(2,5)"] and orders == [4, 8, 32, 64, 256]
    return ok, f"order={w.group.order} relations={words} chain={orders}"


def check_census() -> CheckOutcome:
    rows = two_generator_census()
    flagged = {row.type_name for row in rows if row.flagged}
    quaternion_split = [row.split for row in rows if row.type_name == "Q"]
    want = {"D", "C2*C4", "C4*C4", "C4xC4", "C4:C4"}
    ok = flagged == want and quaternion_split and not any(quaternion_split)
    return bool(ok), f"flagged={sorted(flagged)} Q split={quaternion_split}"


def check_quaternary_form() -> CheckOutcome:
    q = QForm((1, 1, -7, -31))
    verdict = hasse_minkowski(q)
    places = [REAL_PLACE, 7, 31] + list(primerange(3, 51))
    local = all(local_isotropic(q, p) for p in places)
    ok = not verdict.isotropic and verdict.failures == ["Q_2"] and local
    return ok, verdict.summary


def check_prime_dictionary() -> CheckOutcome:
    bad = []
    for p in primerange(3, 51):
        model = PAdicField(p)
        verdict = classify(SubgroupT.squares(model))
        want = "C_I(1)" if p % 4 == 1 else "S_I(1)"
        group_type = isomorphism_type(wgroup_from_model(model).group)
        if verdict.name != want or group_type != expected_type(verdict):
            bad.append(f"Q_{p}: {verdict.name}, W-group {group_type}")
    return not bad, "; ".join(bad) or "all odd p <= 50 agree"


def _lifted_subgroups(w: WGroupPresentation, space: F2Subspace) -> List[CSubgroup]:
    """Subgroups generated by lifts of a basis of the annihilator of space, with rotating tails."""
    g = w.group
    heads = annihilator(space).vectors
    tails = g.tail_representatives()
    return [
        subgroup_closure(g, [g.element(a, tails[(i + shift) % len(tails)]) for i, a in enumerate(heads)])
        for shift in range(3)
    ]


def check_round_trip() -> CheckOutcome:
    bad = []
    for model in _suite("round_trip"):
        w = wgroup_from_model(model)
        for space in all_subspaces(model.dim):
            if space.codim == 0:
                continue
            t = SubgroupT(model, space)
            if p_H(w, essential_from_subgroup(w, t)).subspace != space:
                bad.append(f"{model.descriptor} {t.labels()}")
            for h in _lifted_subgroups(w, space):
                back = essential_from_subgroup(w, p_H(w, h))
                if not is_essential(w.group, h) or with_frattini(back).elements != with_frattini(h).elements:
                    bad.append(f"{model.descriptor} {t.labels()} (lift {sorted(h.generators)})")
    return not bad, "; ".join(bad) or "round trip holds"


def check_dictionary() -> CheckOutcome:
    problems = []
    for model in _suite("dictionary"):
        problems += dictionary_check(model)
    return not problems, "; ".join(problems[:5]) or "zero mismatches"


def check_trichotomy() -> CheckOutcome:
    failures = []
    for entry in algebra_config.BUILTIN_MODEL_MAPPING["model_list"]:
        failures += rigid_trichotomy_check(build_model(entry["descriptor"]), 8)
    return not failures, "; ".join(failures[:5]) or "every rigid T has level 1, 2 or inf"


def check_lifting() -> CheckOutcome:
    bad = []
    for name in algebra_config.get_suite("lifting"):
        model = build_model(name)
        selector = algebra_config.get_valuation_chain(name)[0]
        v = get_valuation(model, selector)
        t0 = SubgroupT.squares(v.residue_model)
        if residue_ordering(v, lift_ordering(v, t0)) != t0:
            bad.append(f"{name} along {selector}")
    rxy = build_model("RXY")
    composite = get_valuation(rxy, "Y-adic/X-adic")
    fan = classify(lift_ordering(composite, SubgroupT.squares(composite.residue_model)))
    q3 = build_model("Q3")
    s_type = classify(lift_ordering(get_valuation(q3, "3-adic"), SubgroupT.squares(FiniteField(3))))
    ok = not bad and fan.tag in (OrderingTag.D_FAN2, OrderingTag.D_I) and s_type.name == "S_I(1)"
    return ok, f"round trips failing: {bad}; R into RXY: {fan.name}; F_3 into Q_3: {s_type.name}"


def check_witt() -> CheckOutcome:
    failing = [m.descriptor for m in _suite("c0_kernel") if not c0_kernel_check(m)]
    t13, _ = ordering_for_prime(13, [2, 3, 5, 7, 13])
    q13 = build_model("Q13")
    iso = ring_iso(witt_ring(t13.model, t13), witt_ring(q13, SubgroupT.squares(q13)))
    return not failing and iso, f"c0 kernel failures={failing} W_T13 ~ W(Q_13): {iso}"


def check_liftable() -> CheckOutcome:
    q2 = build_model("Qp:2")
    t = SubgroupT.from_classes(q2, sum_of_squares_classes(q2, 2))
    tag, liftable = classify(t).tag, is_liftable_c4(t)
    ok = sorted(t.labels()) == sorted(["1", "2", "5", "10"]) and tag == OrderingTag.C4_LEVEL2 and not liftable
    return ok, f"T={t.labels()} type={tag.value} liftable={liftable}"


def check_c0_intersection() -> CheckOutcome:
    out = {}
    for name in ("Q2", "Q13", "F13"):
        model = build_model(name)
        common = intersect_c0(model)
        out[name] = None if common is None else common.classes
    q2, q13 = build_model("Q2"), build_model("Q13")
    ok = (
        out["Q2"] == {0, q2.minus_one}
        and out["Q13"] == {0, q13.minus_one}
        and out["F13"] == {0}
    )
    return ok, str({k: sorted(v) if v is not None else None for k, v in out.items()})


def check_symbol_oracle() -> CheckOutcome:
    bad = []
    for model in _suite("oracle"):
        for a in range(model.size):
            for b in range(a, model.size):
                ra, rb = int(model.representative(a)), int(model.representative(b))
                if hilbert_symbol(model, a, b) != hilbert_symbol_oracle(model.p, ra, rb):
                    bad.append(f"{model.descriptor} ({ra},{rb})")
    qs = build_model("QS")
    for a in range(qs.size):
        for b in range(qs.size):
            product = 1
            for value in local_symbols(qs, a, b).values():
                product *= value
            if product != 1:
                bad.append(f"product formula {qs.label(a)},{qs.label(b)}")
    return not bad, "; ".join(bad[:5]) or "symbols agree with the oracle"


def check_laurent_dihedral() -> CheckOutcome:
    rx = build_model("RX")
    dihedral_ok = are_isomorphic(wgroup_from_model(rx).group, dihedral())
    cones = len(enumerate_subgroups(rx, 2, OrderingTag.C2))
    pythagorean = sum_of_squares_classes(rx, 2) == {0}
    return dihedral_ok and cones == 2 and pythagorean, f"W ~ D: {dihedral_ok}, orderings={cones}, pythagorean={pythagorean}"


CHECKS: Dict[str, Callable[[], CheckOutcome]] = {
    "dyadic-sums": check_dyadic_sums,
    "dyadic-wgroup": check_dyadic_wgroup,
    "two-generator-census": check_census,
    "quaternary-form": check_quaternary_form,
    "prime-dictionary": check_prime_dictionary,
    "essential-round-trip": check_round_trip,
    "galois-additive-dictionary": check_dictionary,
    "rigid-trichotomy": check_trichotomy,
    "valuation-lifting": check_lifting,
    "witt-identities": check_witt,
    "liftable-c4": check_liftable,
    "c0-intersection": check_c0_intersection,
    "symbol-oracle": check_symbol_oracle,
    "laurent-dihedral": check_laurent_dihedral,
}


def run_checks(names: List[str] = None) -> List[CheckResult]:
    results = []
    for name in names or list(CHECKS):
        if name not in CHECKS:
            raise ValueError(f"Check '{name}' not found in CHECKS")
        try:
            passed, detail = CHECKS[name]()
        except Exception as e:
            logger.exception("check %s raised", name)
            passed, detail = False, f"{type(e).__name__}: {e}"
        logger.info("%s: %s", name, "ok" if passed else "FAILED")
        results.append(CheckResult(name=name, passed=bool(passed), detail=detail))
    return results
