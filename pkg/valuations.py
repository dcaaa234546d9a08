#!/usr/bin/env python3
"""
Valuations on the built-in models: compatibility with T, residue orderings
and lifting of residue orderings.

A valuation is recorded at square-class level: the unit classes U_v (a
coordinate subspace of the model's basis) and the residue projection
pi_v: U_v -> residue square classes, given on the unit basis.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from sympy.functions.combinatorial.numbers import legendre_symbol

import algebra_config
from errors import DescriptorError, HypothesisError, ModelMismatchError
from f2_algebra import F2Subspace, bits_of, map_kernel
from field_models import FieldModel, FiniteField, LaurentTower, PAdicField, RationalS
from orderings import OrderingClass, OrderingTag, SubgroupT, classify, same_model

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ValuationData:
    name: str
    model: FieldModel
    residue_model: Optional[FieldModel]
    value_rank: int
    unit_coords: Tuple[int, ...]
    residue_images: Tuple[int, ...]

    @property
    def unit_space(self) -> F2Subspace:
        return F2Subspace.span([1 << i for i in self.unit_coords], self.model.dim)

    def is_unit(self, v: int) -> bool:
        return self.unit_space.contains(v)

    def project(self, v: int) -> int:
        """pi_v on a unit class."""
        if not self.is_unit(v):
            raise HypothesisError(f"{self.model.label(v)} is not a unit class for the {self.name} valuation")
        out = 0
        for k, i in enumerate(self.unit_coords):
            if (v >> i) & 1:
                out ^= self.residue_images[k]
        return out

    def residue_kernel(self) -> F2Subspace:
        """Unit classes with trivial residue: the classes meeting 1 + M_v."""
        if self.residue_model is None:
            return self.unit_space
        width = self.residue_model.dim
        local = map_kernel(list(self.residue_images), width)
        vectors = []
        for coords in local.vectors:
            vectors.append(sum(1 << self.unit_coords[k] for k in bits_of(coords)))
        return F2Subspace.span(vectors, self.model.dim)


def _padic(model: PAdicField) -> ValuationData:
    if model.p == 2:
        # residue field F_2 has trivial square classes
        return ValuationData("2-adic", model, None, 1, (0, 2), (0, 0))
    residue = FiniteField(model.p)
    return ValuationData(f"{model.p}-adic", model, residue, 1, (0,), (1,))


def _rational_padic(model: RationalS, p: int) -> ValuationData:
    residue = FiniteField(p)
    reps = [-1] + list(model.primes)
    coords, images = [], []
    for i, rep in enumerate(reps):
        if rep == p:
            continue
        coords.append(i)
        images.append(0 if legendre_symbol(rep % p, p) == 1 else 1)
    return ValuationData(f"{p}-adic", model, residue, 1, tuple(coords), tuple(images))


def _t_adic(model: LaurentTower) -> ValuationData:
    nb = model.base.dim
    return ValuationData(f"{model.var}-adic", model, model.base, 1, tuple(range(nb)), tuple(1 << i for i in range(nb)))


def _composite(model: LaurentTower, inner: ValuationData) -> ValuationData:
    """The t-adic valuation refined by a valuation of the base field."""
    return ValuationData(
        f"{model.var}-adic/{inner.name}",
        model,
        inner.residue_model,
        inner.value_rank + 1,
        inner.unit_coords,
        inner.residue_images,
    )


def valuations_of(model: FieldModel) -> List[ValuationData]:
    """The finitely many built-in valuations of a model."""
    if isinstance(model, PAdicField):
        return [_padic(model)]
    if isinstance(model, RationalS):
        return [_rational_padic(model, p) for p in model.primes if p != 2]
    if isinstance(model, LaurentTower):
        out = [_t_adic(model)]
        out += [_composite(model, inner) for inner in valuations_of(model.base)]
        return out
    return []


def get_valuation(model: FieldModel, selector: str) -> ValuationData:
    for v in valuations_of(model):
        if v.name == selector:
            return v
    raise DescriptorError(f"Valuation '{selector}' not found for {model.descriptor}")


def _check_model(v: ValuationData, t: SubgroupT) -> None:
    if t.model != v.model:
        raise ModelMismatchError(f"valuation on {v.model.descriptor}, T on {t.model.descriptor}")


def is_compatible(v: ValuationData, t: SubgroupT) -> bool:
    """1 + M_v ⊆ T, decided as: unit classes with trivial residue lie in T."""
    _check_model(v, t)
    return v.residue_kernel().issubset(t.subspace)


def residue_ordering(v: ValuationData, t: SubgroupT) -> SubgroupT:
    """pi_v(T ∩ U_v) on the residue model."""
    _check_model(v, t)
    if v.residue_model is None:
        raise HypothesisError(f"the {v.name} valuation has residue characteristic 2")
    if not is_compatible(v, t):
        raise HypothesisError(f"T is not compatible with the {v.name} valuation")
    units = t.subspace.intersection(v.unit_space)
    return SubgroupT(v.residue_model, F2Subspace.span([v.project(x) for x in units.vectors], v.residue_model.dim))


S_FAMILY = {OrderingTag.S_I, OrderingTag.C4_LEVEL2}
C_FAMILY = {OrderingTag.C_I, OrderingTag.C4_LEVEL1}
FAN_FAMILY = {OrderingTag.C2, OrderingTag.D_FAN2, OrderingTag.D_I}


def _promised_family(t0: SubgroupT) -> set:
    if t0.index == 1:
        return C_FAMILY
    tag = classify(t0).tag
    for family in (S_FAMILY, C_FAMILY, FAN_FAMILY):
        if tag in family:
            return family
    raise HypothesisError(f"residue subgroup is a {tag.value}-ordering, which does not lift")


def lift_ordering(v: ValuationData, t0: SubgroupT) -> SubgroupT:
    """
    Lift a residue ordering: T = {x in U_v : pi_v(x) in T0}, times the squares.

    Args:
        v: a valuation with residue characteristic not 2
        t0: an S-type, C-type or fan-type subgroup of the residue model

    Returns:
        SubgroupT upstairs, checked to be of the same family as t0
    """
    if v.residue_model is None:
        raise HypothesisError(f"the {v.name} valuation has residue characteristic 2")
    if t0.model != v.residue_model:
        raise ModelMismatchError(f"residue model is {v.residue_model.descriptor}, got {t0.model.descriptor}")
    family = _promised_family(t0)
    width = v.residue_model.dim
    images = [t0.subspace.reduce(img) for img in v.residue_images]
    local = map_kernel(images, width)
    vectors = [sum(1 << v.unit_coords[k] for k in bits_of(coords)) for coords in local.vectors]
    lifted = SubgroupT(v.model, F2Subspace.span(vectors, v.model.dim))
    verdict = classify(lifted)
    if verdict.tag not in family:
        raise HypothesisError(f"lift along {v.name} is {verdict.name}, outside the residue ordering's family")
    logger.debug("lifted %s along %s to %s", t0.labels(), v.name, verdict.name)
    return lifted


def lift_with_class(v: ValuationData, t0: SubgroupT) -> Tuple[SubgroupT, OrderingClass]:
    lifted = lift_ordering(v, t0)
    return lifted, classify(lifted)


def product_lift(t1: SubgroupT, t2: SubgroupT) -> SubgroupT:
    """Class-level product T1 T2."""
    return SubgroupT(same_model(t1, t2), t1.subspace.sum(t2.subspace))


def find_compatible_valuation(model: FieldModel, t: SubgroupT, model_name: str = "") -> Optional[ValuationData]:
    """
    Walk the configured valuation chain and return the first compatible valuation.

    Models outside the registry fall back to all of their built-in valuations.
    """
    model_name = model_name or algebra_config.model_name_for_descriptor(model.descriptor)
    chain = algebra_config.get_valuation_chain(model_name) if model_name else []
    if not chain:
        chain = [v.name for v in valuations_of(model)]

    for selector in chain:
        try:
            v = get_valuation(model, selector)
        except DescriptorError as e:
            logger.warning("skipping valuation %s: %s", selector, e)
            continue
        if v.value_rank >= 1 and is_compatible(v, t):
            return v
        logger.debug("%s: %s valuation not compatible with %s", model.descriptor, selector, t.labels())
    return None
