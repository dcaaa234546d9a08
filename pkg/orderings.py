#!/usr/bin/env python3
"""
Additive structure of subgroups T of the square-class group and the ordering
classifier.

A subgroup T (always containing the squares) is held as an F_2 subspace of the
model's class vectors. Additive sets such as T + aT or the sums of elements of
T are unions of square classes and are kept as frozensets of class vectors.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Iterable, List, Optional, Set

from pydantic import BaseModel

import algebra_config
from errors import HypothesisError, ModelMismatchError, SizeBoundError
from f2_algebra import F2Subspace, all_subspaces
from field_models import (
    INFINITE_LEVEL,
    ClassLike,
    FieldModel,
    binary_values,
    coords_of,
    sum_of_squares_classes,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SubgroupT:
    """A subgroup of F*/F*^2, identified with its subspace of class vectors."""

    model: FieldModel
    subspace: F2Subspace

    @classmethod
    def from_classes(cls, model: FieldModel, classes: Iterable[ClassLike]) -> "SubgroupT":
        return cls(model, F2Subspace.span([coords_of(model, c) for c in classes], model.dim))

    @classmethod
    def from_labels(cls, model: FieldModel, labels: Iterable[str]) -> "SubgroupT":
        return cls.from_classes(model, [model.parse_class(label) for label in labels])

    @classmethod
    def squares(cls, model: FieldModel) -> "SubgroupT":
        return cls(model, F2Subspace.zero(model.dim))

    @property
    def index(self) -> int:
        return 1 << self.subspace.codim

    @property
    def classes(self) -> FrozenSet[int]:
        return frozenset(self.subspace.elements())

    def __contains__(self, v: int) -> bool:
        return self.subspace.contains(v)

    def coset(self, a: int) -> FrozenSet[int]:
        return frozenset(a ^ t for t in self.subspace.elements())

    def coset_key(self, a: int) -> int:
        return self.subspace.reduce(a)

    def coset_representatives(self) -> List[int]:
        return sorted({self.subspace.reduce(v) for v in range(self.model.size)})

    def adjoin(self, a: int) -> "SubgroupT":
        return SubgroupT(self.model, self.subspace.add_vectors([a]))

    def plus_minus(self) -> "SubgroupT":
        """T ∪ -T."""
        return self.adjoin(self.model.minus_one)

    def labels(self) -> List[str]:
        return [self.model.label(v) for v in sorted(self.classes)]

    def contains_minus_one(self) -> bool:
        return self.model.minus_one in self


@dataclass(frozen=True)
class AdditiveSet:
    """A union of square classes (never a zero class)."""

    model: FieldModel
    classes: FrozenSet[int]

    def __contains__(self, v: int) -> bool:
        return v in self.classes

    def __len__(self) -> int:
        return len(self.classes)

    def labels(self) -> List[str]:
        return [self.model.label(v) for v in sorted(self.classes)]


class OrderingTag(str, Enum):
    C2 = "C2"
    C4_LEVEL1 = "C4_LEVEL1"
    C4_LEVEL2 = "C4_LEVEL2"
    D_FAN2 = "D_FAN2"
    C_I = "C_I"
    S_I = "S_I"
    D_I = "D_I"
    C2_STAR_C4 = "C2_STAR_C4"
    C4_STAR_C4 = "C4_STAR_C4"
    NON_RIGID_OTHER = "NON_RIGID_OTHER"


CARD_TAGS = (OrderingTag.C_I, OrderingTag.S_I, OrderingTag.D_I)


class OrderingClass(BaseModel):
    """Classifier verdict plus the diagnostics it was based on."""

    tag: OrderingTag
    card: Optional[int] = None
    level: Optional[int] = None  # None means infinite level
    rigid: bool
    index: int

    @property
    def name(self) -> str:
        if self.tag in CARD_TAGS:
            return f"{self.tag.value}({self.card})"
        return self.tag.value

    @property
    def level_text(self) -> str:
        return "inf" if self.level is None else str(self.level)


def _check_model(t: SubgroupT, a: ClassLike) -> int:
    return coords_of(t.model, a)


def _multiply_sets(model: FieldModel, left: Iterable[int], right: Iterable[int]) -> Set[int]:
    right = list(right)
    return {x ^ y for x in left for y in right}


def t_plus_aT(t: SubgroupT, a: ClassLike) -> AdditiveSet:
    """
    Classes meeting T + aT.

    Uses <s, a t'> = s <1, a s t'>, so the representations reduce to
    T · D<1, ar> for r in T.

    Args:
        t: the subgroup T
        a: a class of the same model

    Returns:
        AdditiveSet containing T and aT
    """
    a = _check_model(t, a)
    model = t.model
    members = t.classes
    values: Set[int] = set()
    for r in members:
        values |= binary_values(model, 0, a ^ r)
    out = set(members) | {a ^ x for x in members} | _multiply_sets(model, members, values)
    return AdditiveSet(model, frozenset(out))


def t_plus_t(t: SubgroupT) -> AdditiveSet:
    return t_plus_aT(t, 0)


def _sums_step(t: SubgroupT, current: FrozenSet[int]) -> FrozenSet[int]:
    """S + T for a T-stable union of classes S."""
    model = t.model
    members = list(t.classes)
    reps = {t.coset_key(s) for s in current}
    grown: Set[int] = set(current)
    for s in reps:
        for r in members:
            grown |= binary_values(model, s, r)
    return frozenset(_multiply_sets(model, grown, members))


def _sums_chain(t: SubgroupT) -> List[FrozenSet[int]]:
    """S_1 = T, S_{n+1} = S_n + T, up to stabilization."""
    chain = [t.classes]
    while True:
        nxt = _sums_step(t, chain[-1])
        if nxt == chain[-1]:
            return chain
        chain.append(nxt)


def sigma_T(t: SubgroupT) -> AdditiveSet:
    """All finite sums of elements of T."""
    return AdditiveSet(t.model, _sums_chain(t)[-1])


def level_of_T(t: SubgroupT):
    """Least s with -1 a sum of s elements of T, or INFINITE_LEVEL."""
    for n, sums in enumerate(_sums_chain(t), start=1):
        if t.model.minus_one in sums:
            return n
    return INFINITE_LEVEL


def is_rigid(t: SubgroupT) -> bool:
    """T + aT ⊆ T ∪ aT for every a outside T ∪ -T."""
    plus_minus = t.plus_minus()
    for a in t.coset_representatives():
        if a in plus_minus:
            continue
        allowed = t.classes | t.coset(a)
        if not t_plus_aT(t, a).classes <= allowed:
            return False
    return True


def is_preordering(t: SubgroupT) -> bool:
    return not t.contains_minus_one() and t_plus_t(t).classes == t.classes


def is_fan(t: SubgroupT) -> bool:
    return is_preordering(t) and is_rigid(t)


def _level_field(level) -> Optional[int]:
    return None if level == INFINITE_LEVEL else int(level)


def classify(t: SubgroupT) -> OrderingClass:
    """
    Decide the ordering type of a proper subgroup T.

    Index 2 is settled by additive closure and level. Rigid subgroups of any
    index are C(I), S(I) or D(I) by level, with |I| = dim(F/T) - 1. Remaining
    index-4 subgroups split by the sums of T.

    Args:
        t: a subgroup of index at least 2

    Returns:
        OrderingClass
    """
    if t.index < 2:
        raise HypothesisError("T is the whole square-class group")
    level = level_of_T(t)
    diag = dict(level=_level_field(level), index=t.index)

    if t.index == 2:
        if is_preordering(t):
            return OrderingClass(tag=OrderingTag.C2, rigid=True, **diag)
        tag = OrderingTag.C4_LEVEL1 if level == 1 else OrderingTag.C4_LEVEL2
        return OrderingClass(tag=tag, rigid=True, **diag)

    rigid = is_rigid(t)
    card = t.subspace.codim - 1
    if rigid:
        if level == 1:
            return OrderingClass(tag=OrderingTag.C_I, card=card, rigid=True, **diag)
        if level == 2:
            return OrderingClass(tag=OrderingTag.S_I, card=card, rigid=True, **diag)
        if level == INFINITE_LEVEL:
            if card == 1:
                return OrderingClass(tag=OrderingTag.D_FAN2, rigid=True, **diag)
            return OrderingClass(tag=OrderingTag.D_I, card=card, rigid=True, **diag)
        logger.warning("rigid subgroup of %s with level %s", t.model.descriptor, level)
        return OrderingClass(tag=OrderingTag.NON_RIGID_OTHER, rigid=True, **diag)

    if t.index == 4:
        minus = t.model.minus_one
        sums = sigma_T(t).classes
        doubles = t_plus_t(t).classes
        if minus not in sums and doubles != t.classes:
            return OrderingClass(tag=OrderingTag.C2_STAR_C4, rigid=False, **diag)
        if t.contains_minus_one():
            return OrderingClass(tag=OrderingTag.C4_STAR_C4, rigid=False, **diag)
        if minus in sums and doubles != t.plus_minus().classes:
            return OrderingClass(tag=OrderingTag.C4_STAR_C4, rigid=False, **diag)
    logger.debug("no named type for index-%d subgroup of %s", t.index, t.model.descriptor)
    return OrderingClass(tag=OrderingTag.NON_RIGID_OTHER, rigid=False, **diag)


def is_liftable_c4(t: SubgroupT) -> bool:
    """A C_4-ordering is liftable iff some sum of two squares lies outside T."""
    tag = classify(t).tag
    if tag not in (OrderingTag.C4_LEVEL1, OrderingTag.C4_LEVEL2):
        raise HypothesisError(f"T is a {tag.value}-ordering, not a C_4-ordering")
    return not sum_of_squares_classes(t.model, 2) <= t.classes


def enumerate_subgroups(model: FieldModel, index: int, tag: Optional[OrderingTag] = None) -> List[SubgroupT]:
    """All subgroups of the given index, optionally filtered by classifier tag."""
    if model.dim > algebra_config.MAX_CLASS_DIM:
        raise SizeBoundError(f"square-class dimension {model.dim} exceeds {algebra_config.MAX_CLASS_DIM}")
    codim = int(math.log2(index)) if index > 0 else -1
    if index < 2 or 1 << codim != index or codim > model.dim:
        raise HypothesisError(f"no subgroups of index {index} in {model.descriptor}")
    out = []
    for space in all_subspaces(model.dim, codim):
        t = SubgroupT(model, space)
        if tag is None or classify(t).tag == tag:
            out.append(t)
    logger.debug("%s: %d subgroups of index %d (filter %s)", model.descriptor, len(out), index, tag)
    return out


def c0_orderings(model: FieldModel) -> List[SubgroupT]:
    """The C(∅)-orderings: index 2, containing -1, not additively closed."""
    return enumerate_subgroups(model, 2, OrderingTag.C4_LEVEL1)


def positive_cones(model: FieldModel) -> List[SubgroupT]:
    return enumerate_subgroups(model, 2, OrderingTag.C2)


def intersect_c0(model: FieldModel) -> Optional[AdditiveSet]:
    """
    Intersection of all C(∅)-orderings.

    Returns None when there are none, which happens exactly when F is
    covered by the squares and their negatives.
    """
    family = c0_orderings(model)
    if not family:
        logger.info("%s has no C(∅)-orderings", model.descriptor)
        return None
    common = family[0].subspace
    for t in family[1:]:
        common = common.intersection(t.subspace)
    return AdditiveSet(model, frozenset(common.elements()))


def rigid_trichotomy_check(model: FieldModel, max_index: int = 8) -> List[str]:
    """Rigid subgroups have level 1, 2 or infinite, and level 2 forces T+T = T ∪ -T."""
    failures = []
    index = 2
    while index <= min(max_index, model.size):
        for t in enumerate_subgroups(model, index):
            if not is_rigid(t):
                continue
            level = level_of_T(t)
            if level not in (1, 2, INFINITE_LEVEL):
                failures.append(f"{t.labels()}: rigid with level {level}")
            elif level == 2 and t_plus_t(t).classes != t.plus_minus().classes:
                failures.append(f"{t.labels()}: level 2 but T+T != T u -T")
        index *= 2
    return failures


def same_model(t1: SubgroupT, t2: SubgroupT) -> FieldModel:
    if t1.model != t2.model:
        raise ModelMismatchError(f"{t1.model.descriptor} vs {t2.model.descriptor}")
    return t1.model
