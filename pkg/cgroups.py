#!/usr/bin/env python3
"""
Finite 2-groups of exponent 4 with central squares and commutators.

A group on n generators is F(n)/R where F(n) is the free such group and R is
a subspace of the Frattini space Phi(F(n)) = F_2^(n + n(n-1)/2). Elements are
pairs (head, tail): the head is the image in G/Phi(G), the tail a central
Frattini vector kept reduced modulo R.

Frattini basis order: sq_i at bit i for i < n, then com(i, j) for i < j in
lexicographic order. Multiplication is (a, u)(b, v) = (a + b, u + v + q(a, b))
with q(a, b) = sum a_i b_i sq_i + sum_{i<j} a_j b_i com(i, j).
"""
import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

from pydantic import BaseModel

import algebra_config
from errors import AlgebraError, HypothesisError, SizeBoundError
from f2_algebra import (
    F2Subspace,
    abelian_invariants as lattice_invariants,
    all_subspaces,
    annihilator,
    bits_of,
    dot,
    lowest_bit,
    map_kernel,
    ordered_bases,
)
from field_models import FieldModel
from orderings import (
    OrderingClass,
    OrderingTag,
    SubgroupT,
    classify,
    enumerate_subgroups,
    is_rigid,
    t_plus_t,
)

logger = logging.getLogger(__name__)


def phi_dim(n: int) -> int:
    return n + n * (n - 1) // 2


@lru_cache(maxsize=None)
def _com_pairs(n: int) -> Tuple[Tuple[int, int], ...]:
    return tuple(itertools.combinations(range(n), 2))


@lru_cache(maxsize=None)
def _com_bits(n: int) -> Dict[Tuple[int, int], int]:
    return {pair: n + k for k, pair in enumerate(_com_pairs(n))}


class CGroupElement(NamedTuple):
    head: int
    tail: int


@dataclass(frozen=True)
class CGroup:
    """F(n) modulo a subspace of relations in its Frattini space."""

    n: int
    relations: F2Subspace

    def __post_init__(self):
        if self.relations.ambient_dim != phi_dim(self.n):
            raise AlgebraError(f"relations live in dimension {self.relations.ambient_dim}, expected {phi_dim(self.n)}")

    @property
    def phi_dim(self) -> int:
        return phi_dim(self.n)

    @property
    def order(self) -> int:
        return 1 << (self.n + self.phi_dim - self.relations.dim)

    @property
    def frattini_order(self) -> int:
        return 1 << (self.phi_dim - self.relations.dim)

    def sq_bit(self, i: int) -> int:
        return 1 << i

    def com_bit(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        return 1 << _com_bits(self.n)[(i, j)]

    def q(self, a: int, b: int) -> int:
        """The collection cocycle, unreduced."""
        out = a & b
        bits = _com_bits(self.n)
        for j in bits_of(a):
            for i in bits_of(b):
                if i < j:
                    out ^= 1 << bits[(i, j)]
        return out

    def c(self, a: int, b: int) -> int:
        """Tail of the commutator of elements with heads a and b."""
        return self.q(a, b) ^ self.q(b, a)

    def reduce(self, tail: int) -> int:
        return self.relations.reduce(tail)

    @property
    def identity(self) -> CGroupElement:
        return CGroupElement(0, 0)

    def element(self, head: int, tail: int = 0) -> CGroupElement:
        return CGroupElement(head, self.reduce(tail))

    def generator(self, i: int) -> CGroupElement:
        return CGroupElement(1 << i, 0)

    def mul(self, x: CGroupElement, y: CGroupElement) -> CGroupElement:
        return CGroupElement(x.head ^ y.head, self.reduce(x.tail ^ y.tail ^ self.q(x.head, y.head)))

    def inverse(self, x: CGroupElement) -> CGroupElement:
        return CGroupElement(x.head, self.reduce(x.tail ^ self.q(x.head, x.head)))

    def square(self, x: CGroupElement) -> CGroupElement:
        return CGroupElement(0, self.reduce(self.q(x.head, x.head)))

    def commutator(self, x: CGroupElement, y: CGroupElement) -> CGroupElement:
        return CGroupElement(0, self.reduce(self.c(x.head, y.head)))

    def is_abelian(self) -> bool:
        return all(self.reduce(self.com_bit(i, j)) == 0 for i, j in _com_pairs(self.n))

    def tail_representatives(self) -> List[int]:
        """Reduced tails: all vectors supported off the relation pivots."""
        pivots = {lowest_bit(r) for r in self.relations.vectors}
        free = [b for b in range(self.phi_dim) if b not in pivots]
        out = []
        for mask in range(1 << len(free)):
            out.append(sum(1 << free[k] for k in bits_of(mask)))
        return out

    def elements(self) -> Iterator[CGroupElement]:
        if self.order > algebra_config.CLOSURE_LIMIT:
            raise SizeBoundError(f"group of order {self.order} exceeds {algebra_config.CLOSURE_LIMIT}")
        tails = self.tail_representatives()
        for head in range(1 << self.n):
            for tail in tails:
                yield CGroupElement(head, tail)

    def frattini_names(self, labels: Optional[Sequence[str]] = None) -> List[str]:
        labels = list(labels) if labels is not None else [str(i) for i in range(self.n)]
        names = [f"sq({labels[i]})" for i in range(self.n)]
        names += [f"com({labels[i]},{labels[j]})" for i, j in _com_pairs(self.n)]
        return names

    def relation_words(self, labels: Optional[Sequence[str]] = None) -> List[str]:
        names = self.frattini_names(labels)
        return [" + ".join(names[b] for b in bits_of(r)) for r in self.relations.vectors]


@dataclass(frozen=True)
class CSubgroup:
    """A subgroup given by its generators and its explicit element set."""

    parent: CGroup
    generators: Tuple[CGroupElement, ...]
    elements: FrozenSet[CGroupElement]

    @property
    def order(self) -> int:
        return len(self.elements)

    def heads(self) -> F2Subspace:
        return F2Subspace.span({x.head for x in self.elements}, self.parent.n)

    def __contains__(self, x: CGroupElement) -> bool:
        return x in self.elements


GroupLike = Union[CGroup, CSubgroup]


def free_c_group(n: int) -> CGroup:
    if n < 1:
        raise HypothesisError("free groups need at least one generator")
    if n > algebra_config.MAX_WGROUP_GENERATORS:
        raise SizeBoundError(f"{n} generators exceeds {algebra_config.MAX_WGROUP_GENERATORS}")
    return CGroup(n, F2Subspace.zero(phi_dim(n)))


def quotient(g: CGroup, extra_relations: Union[F2Subspace, Sequence[int]]) -> CGroup:
    if not isinstance(extra_relations, F2Subspace):
        extra_relations = F2Subspace.span(extra_relations, g.phi_dim)
    if extra_relations.ambient_dim != g.phi_dim:
        raise AlgebraError("relations must lie in the Frattini space")
    return CGroup(g.n, g.relations.sum(extra_relations))


def subgroup_closure(g: CGroup, gens: Sequence[CGroupElement]) -> CSubgroup:
    """BFS closure under right multiplication by the generators."""
    gens = tuple(g.element(x.head, x.tail) for x in gens)
    seen = {g.identity}
    frontier = [g.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = g.mul(x, s)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        if len(seen) > algebra_config.CLOSURE_LIMIT:
            raise SizeBoundError(f"closure exceeds {algebra_config.CLOSURE_LIMIT} elements")
        frontier = nxt
    return CSubgroup(g, gens, frozenset(seen))


def whole_group(g: CGroup) -> CSubgroup:
    return subgroup_closure(g, [g.generator(i) for i in range(g.n)])


def _head_basis(h: CSubgroup) -> List[CGroupElement]:
    """Elements of h whose heads form a basis of the head space, generators first."""
    chosen: List[CGroupElement] = []
    span = F2Subspace.zero(h.parent.n)
    for x in list(h.generators) + sorted(h.elements):
        if x.head and not span.contains(x.head):
            chosen.append(x)
            span = span.add_vectors([x.head])
    return chosen


def _frattini_tails(g: CGroup, heads: Sequence[int]) -> F2Subspace:
    """Reduced tails generated by squares and commutators over the given heads."""
    vectors = [g.reduce(g.q(a, a)) for a in heads]
    vectors += [g.reduce(g.c(a, b)) for a, b in itertools.combinations(heads, 2)]
    return F2Subspace.span(vectors, g.phi_dim)


def _present_heads(g: CGroup, heads: Sequence[int]) -> CGroup:
    """The subgroup generated by lifts of the given heads, as F(k)/R."""
    k = len(heads)
    images = [g.reduce(g.q(a, a)) for a in heads]
    images += [g.reduce(g.c(heads[i], heads[j])) for i, j in _com_pairs(k)]
    return CGroup(k, map_kernel(images, g.phi_dim))


def _central_extras(h: CSubgroup, head_elements: Sequence[CGroupElement]) -> List[int]:
    """Tails of head-zero elements of h independent of Phi(h)."""
    g = h.parent
    span = _frattini_tails(g, [x.head for x in head_elements])
    extras = []
    for x in sorted(h.elements):
        if x.head == 0 and not span.contains(x.tail):
            extras.append(x.tail)
            span = span.add_vectors([x.tail])
    return extras


def presentation_of(h: CSubgroup) -> CGroup:
    """
    Present a subgroup on a minimal generating set.

    The generators are lifts of a head basis plus central head-zero elements
    not reached by Phi(h). Squares and commutators depend only on heads, so
    the relations are the kernel of sq_i -> x_i^2, com(i, j) -> [x_i, x_j].
    """
    lifts = _head_basis(h)
    extras = _central_extras(h, lifts)
    heads = [x.head for x in lifts] + [0] * len(extras)
    if not heads:
        return CGroup(0, F2Subspace.zero(0))
    return _present_heads(h.parent, heads)


def as_group(x: GroupLike) -> CGroup:
    return presentation_of(x) if isinstance(x, CSubgroup) else x


def frattini(x: GroupLike) -> CSubgroup:
    """Subgroup generated by all squares."""
    if isinstance(x, CGroup):
        return subgroup_closure(x, [x.element(0, 1 << b) for b in range(x.phi_dim)])
    g = x.parent
    tails = _frattini_tails(g, [y.head for y in _head_basis(x)])
    return subgroup_closure(g, [CGroupElement(0, t) for t in tails.vectors])


def is_essential(g: CGroup, h: CSubgroup) -> bool:
    """Phi(h) = h ∩ Phi(g)."""
    if h.parent != g:
        raise AlgebraError("subgroup belongs to another group")
    return not _central_extras(h, _head_basis(h))


def with_frattini(h: CSubgroup) -> CSubgroup:
    """The subgroup generated by h and Phi of its parent."""
    g = h.parent
    return subgroup_closure(g, list(h.generators) + [g.element(0, 1 << b) for b in range(g.phi_dim)])


# Invariants and isomorphism types


def abelian_invariants(x: GroupLike) -> Tuple[int, ...]:
    """Invariant factors of the abelianization."""
    g = as_group(x)
    if g.n == 0:
        return ()
    rows = []
    for i in range(g.n):
        row = [0] * g.n
        row[i] = 4
        rows.append(row)
    for r in g.relations.vectors:
        rows.append([2 if (r >> i) & 1 else 0 for i in range(g.n)])
    return lattice_invariants(rows, g.n)


def involution_count(x: GroupLike) -> int:
    """Number of elements of order exactly 2."""
    g = as_group(x)
    phi_order = g.frattini_order
    count = phi_order - 1
    for a in range(1, 1 << g.n):
        if g.reduce(g.q(a, a)) == 0:
            count += phi_order
    return count


ISOMORPHISM_TYPES: Dict[Tuple[int, Tuple[int, ...], int], str] = {
    (1, (), 0): "1",
    (2, (2,), 1): "C2",
    (4, (4,), 1): "C4",
    (4, (2, 2), 3): "C2xC2",
    (8, (2, 4), 3): "C4xC2",
    (8, (2, 2), 5): "D",
    (8, (2, 2), 1): "Q",
    (16, (2, 4), 7): "C2*C4",
    (16, (4, 4), 3): "C4xC4",
    (16, (2, 4), 3): "C4:C4",
    (32, (4, 4), 7): "C4*C4",
}


def isomorphism_key(x: GroupLike) -> Tuple[int, Tuple[int, ...], int]:
    g = as_group(x)
    return g.order, abelian_invariants(g), involution_count(g)


def isomorphism_type(x: GroupLike) -> str:
    key = isomorphism_key(x)
    return ISOMORPHISM_TYPES.get(key, f"order-{key[0]}")


def are_isomorphic(x1: GroupLike, x2: GroupLike) -> bool:
    """Invariant comparison, then an exhaustive change of generators."""
    g1, g2 = as_group(x1), as_group(x2)
    if g1.n != g2.n or isomorphism_key(g1) != isomorphism_key(g2):
        return False
    if g1.n == 0:
        return True
    for steps, basis in enumerate(ordered_bases(g1.n), start=1):
        if steps > algebra_config.ISO_SEARCH_LIMIT:
            raise SizeBoundError(f"isomorphism search exceeds {algebra_config.ISO_SEARCH_LIMIT} bases")
        if _present_heads(g1, basis).relations == g2.relations:
            return True
    return False


# Split groups


def _split_data(g: CGroup) -> Optional[Tuple[int, List[int]]]:
    """First (x_1 head, complement basis) in canonical order satisfying the split condition."""
    if g.n == 0:
        return 0, []
    if g.n == 1:
        return 1, []
    coms = [g.com_bit(i, j) for i, j in _com_pairs(g.n)]
    w = g.relations.add_vectors(coms)
    steps = 0
    for a1 in range(1, 1 << g.n):
        complements = [annihilator(F2Subspace.span([f], g.n)) for f in range(1, 1 << g.n) if dot(f, a1)]
        if g.reduce(g.q(a1, a1)) == 0:
            return a1, list(complements[0].vectors)
        for p in complements:
            steps += 1
            if steps > algebra_config.SPLIT_SEARCH_LIMIT:
                raise SizeBoundError(f"split search exceeds {algebra_config.SPLIT_SEARCH_LIMIT} candidates")
            # s(a) = sum a_i sq_i is a itself in the Frattini coordinates
            if not w.add_vectors(p.vectors).contains(a1):
                return a1, list(p.vectors)
    return None


def is_split_group(g: CGroup) -> bool:
    return _split_data(g) is not None


def semidirect_chain(g: CGroup) -> List[Tuple[int, str]]:
    """
    Chain of subgroup orders built by semidirect products with C2 or C4.

    Args:
        g: a split group whose complement subgroups are split in turn

    Returns:
        list of (order, factor) pairs ending at |g|
    """
    if g.n == 0:
        return []
    data = _split_data(g)
    if data is None:
        raise HypothesisError(f"{isomorphism_type(g)} is not a split group")
    a1, complement = data
    x1_order = 2 if g.reduce(g.q(a1, a1)) == 0 else 4
    factor = "C2" if x1_order == 2 else "C4"
    if g.n == 1:
        return [(x1_order, factor)]
    m = _present_heads(g, complement)
    chain = semidirect_chain(m)
    m_phi = g.relations.sum(_frattini_tails(g, complement))
    coms = [g.com_bit(i, j) for i, j in _com_pairs(g.n)]
    extra = m_phi.add_vectors(coms).dim - m_phi.dim
    order = m.order
    for _ in range(extra):
        order *= 2
        chain.append((order, "C2"))
    order *= x1_order
    chain.append((order, factor))
    if order != g.order:
        raise AlgebraError(f"chain ends at {order}, group has order {g.order}")
    return chain


def has_c2_factor(g: CGroup) -> bool:
    """A central involution outside the Frattini subgroup splits off C2."""
    if g.n < 2:
        return False
    for a in range(1, 1 << g.n):
        if g.reduce(g.q(a, a)):
            continue
        if all(g.reduce(g.c(a, 1 << i)) == 0 for i in range(g.n)):
            return True
    return False


# Quotients


def _has_surjection(g: CGroup, target: CGroup) -> bool:
    """Some assignment of generator images spans target and kills every relation."""
    if target.n > g.n:
        return False
    if (1 << target.n) ** g.n > algebra_config.SPLIT_SEARCH_LIMIT:
        raise SizeBoundError(f"quotient search over {(1 << target.n) ** g.n} assignments")
    for heads in itertools.product(range(1 << target.n), repeat=g.n):
        if F2Subspace.span(heads, target.n).dim != target.n:
            continue
        images = [target.q(a, a) for a in heads]
        images += [target.c(heads[i], heads[j]) for i, j in _com_pairs(g.n)]
        if all(_image(target, images, r) == 0 for r in g.relations.vectors):
            return True
    return False


def _image(target: CGroup, images: Sequence[int], r: int) -> int:
    out = 0
    for b in bits_of(r):
        out ^= images[b]
    return target.reduce(out)


def cyclic_c2() -> CGroup:
    return quotient(free_c_group(1), [1])


def dihedral() -> CGroup:
    return free_product_c(cyclic_c2(), cyclic_c2())


def has_quotient(x: GroupLike, target: Union[str, CGroup]) -> bool:
    """C4 via the abelianization; D (or any given group) via a generator-image search."""
    g = as_group(x)
    if target == "C4":
        return any(d % 4 == 0 for d in abelian_invariants(g))
    if target == "D":
        target = dihedral()
    if not isinstance(target, CGroup):
        raise AlgebraError(f"Unknown quotient target {target!r}")
    return _has_surjection(g, target)


def free_product_c(g1: CGroup, g2: CGroup) -> CGroup:
    """Coproduct: disjoint generators, no cross relations."""
    n = g1.n + g2.n
    if n > algebra_config.MAX_WGROUP_GENERATORS:
        raise SizeBoundError(f"{n} generators exceeds {algebra_config.MAX_WGROUP_GENERATORS}")
    big = CGroup(n, F2Subspace.zero(phi_dim(n)))

    def embed(g: CGroup, offset: int, r: int) -> int:
        out = 0
        pairs = _com_pairs(g.n)
        for b in bits_of(r):
            if b < g.n:
                out |= big.sq_bit(b + offset)
            else:
                i, j = pairs[b - g.n]
                out |= big.com_bit(i + offset, j + offset)
        return out

    rels = [embed(g1, 0, r) for r in g1.relations.vectors]
    rels += [embed(g2, g1.n, r) for r in g2.relations.vectors]
    return quotient(big, rels)


class CensusEntry(BaseModel):
    relations: List[str]
    order: int
    type_name: str
    split: bool
    has_c2_factor: bool
    flagged: bool


@dataclass(frozen=True)
class CensusRow:
    group: CGroup
    type_name: str
    split: bool
    has_c2_factor: bool

    @property
    def flagged(self) -> bool:
        """Meets the necessary conditions for a two-generator W-group."""
        return self.split and not self.has_c2_factor and self.group.order >= 8

    def to_entry(self) -> CensusEntry:
        return CensusEntry(
            relations=self.group.relation_words(["x", "y"]),
            order=self.group.order,
            type_name=self.type_name,
            split=self.split,
            has_c2_factor=self.has_c2_factor,
            flagged=self.flagged,
        )


def two_generator_census() -> List[CensusRow]:
    """All quotients of F(2) by subspaces of its Frattini space."""
    base = free_c_group(2)
    rows = []
    for space in all_subspaces(base.phi_dim):
        g = quotient(base, space)
        rows.append(CensusRow(g, isomorphism_type(g), is_split_group(g), has_c2_factor(g)))
    logger.debug("census: %d quotients of F(2)", len(rows))
    return rows


# W-groups of field models


@dataclass(frozen=True)
class WGroupPresentation:
    """The W-group of a model; generator i is dual to basis class i."""

    model: FieldModel
    group: CGroup
    symbol_kernel: F2Subspace

    @property
    def basis_labels(self) -> Tuple[str, ...]:
        return tuple(self.model.basis_labels)

    @property
    def symbol_rank(self) -> int:
        return self.group.phi_dim - self.symbol_kernel.dim


def symbol_values(model: FieldModel) -> List[int]:
    """Brauer vector of each Frattini basis element: sq_i -> (a_i, a_i), com(i, j) -> (a_i, a_j)."""
    n = model.dim
    values = [model.brauer(1 << i, 1 << i) for i in range(n)]
    values += [model.brauer(1 << i, 1 << j) for i, j in _com_pairs(n)]
    return values


def wgroup_from_model(model: FieldModel) -> WGroupPresentation:
    """
    W-group by duality: the relations are the row space of the symbol matrix.

    Args:
        model: field model with at most MAX_WGROUP_GENERATORS basis classes

    Returns:
        WGroupPresentation
    """
    n = model.dim
    if n > algebra_config.MAX_WGROUP_GENERATORS:
        raise SizeBoundError(f"{model.descriptor} has {n} square-class generators")
    values = symbol_values(model)
    rows = []
    for r in range(model.brauer_width):
        rows.append(sum(1 << k for k, v in enumerate(values) if (v >> r) & 1))
    group = CGroup(n, F2Subspace.span(rows, phi_dim(n)))
    symbol_kernel = map_kernel(values, model.brauer_width)
    logger.debug("%s: W-group order %d with %d relations", model.descriptor, group.order, group.relations.dim)
    return WGroupPresentation(model, group, symbol_kernel)


def p_H(w: WGroupPresentation, h: CSubgroup) -> SubgroupT:
    """Classes fixed by h under the Kummer pairing."""
    return SubgroupT(w.model, annihilator(h.heads()))


def essential_from_subgroup(w: WGroupPresentation, t: SubgroupT) -> CSubgroup:
    """Subgroup generated by head-only lifts of a basis of the annihilator of T."""
    g = w.group
    return subgroup_closure(g, [g.element(a, 0) for a in annihilator(t.subspace).vectors])


def presentation_text(w: WGroupPresentation) -> str:
    labels = w.basis_labels
    lines = [f"W-group of {w.model.descriptor}: order {w.group.order}"]
    lines.append("generators: " + ", ".join(f"x{i} <-> {label}" for i, label in enumerate(labels)))
    words = w.group.relation_words(labels)
    lines.append("relations: " + ("; ".join(words) if words else "(none)"))
    return "\n".join(lines)


# Galois side versus additive side

EXPECTED_TYPES: Dict[OrderingTag, str] = {
    OrderingTag.C2: "C2",
    OrderingTag.C4_LEVEL1: "C4",
    OrderingTag.C4_LEVEL2: "C4",
    OrderingTag.D_FAN2: "D",
    OrderingTag.C2_STAR_C4: "C2*C4",
    OrderingTag.C4_STAR_C4: "C4*C4",
}


def expected_type(cls: OrderingClass) -> Optional[str]:
    if cls.card == 1 and cls.tag == OrderingTag.C_I:
        return "C4xC4"
    if cls.card == 1 and cls.tag == OrderingTag.S_I:
        return "C4:C4"
    return EXPECTED_TYPES.get(cls.tag)


def _minus_one_kernel(h: CSubgroup, minus_one: int) -> CSubgroup:
    """Elements of h fixing the square root of -1."""
    elements = frozenset(x for x in h.elements if not dot(x.head, minus_one))
    return CSubgroup(h.parent, (), elements)


def _audit(w: WGroupPresentation, t: SubgroupT) -> List[str]:
    model = w.model
    name = "{" + ", ".join(t.labels()) + "}"
    problems = []
    h = essential_from_subgroup(w, t)
    if p_H(w, h).subspace != t.subspace:
        problems.append(f"{model.descriptor} {name}: P_H of the essential subgroup differs")
    if not is_essential(w.group, h):
        problems.append(f"{model.descriptor} {name}: constructed subgroup is not essential")
    g = presentation_of(h)

    verdict = classify(t) if t.index >= 2 else None
    want = expected_type(verdict) if verdict is not None else None
    if want is not None and isomorphism_type(g) != want:
        problems.append(f"{model.descriptor} {name}: {verdict.name} but H is {isomorphism_type(g)}")

    if has_quotient(g, "C4") != (t_plus_t(t).classes != t.classes):
        problems.append(f"{model.descriptor} {name}: C4 quotient disagrees with T+T != T")

    if t.contains_minus_one():
        abelian, rigid, d_quotient = g.is_abelian(), is_rigid(t), has_quotient(g, "D")
        if not abelian == rigid == (not d_quotient):
            problems.append(f"{model.descriptor} {name}: abelian={abelian} rigid={rigid} D-quotient={d_quotient}")
    else:
        g0 = presentation_of(_minus_one_kernel(h, model.minus_one))
        abelian, d_quotient, rigid = g0.is_abelian(), has_quotient(g0, "D"), is_rigid(t.plus_minus())
        if not abelian == (not d_quotient) == rigid:
            problems.append(f"{model.descriptor} {name}: H_0 abelian={abelian} D-quotient={d_quotient} rigid(T u -T)={rigid}")
    return problems


def dictionary_check(model: FieldModel) -> List[str]:
    """Audit every essential subgroup on at most two generators, plus the whole group."""
    w = wgroup_from_model(model)
    candidates: Dict[F2Subspace, SubgroupT] = {}
    squares = SubgroupT.squares(model)
    candidates[squares.subspace] = squares
    for index in (2, 4):
        if index <= model.size:
            for t in enumerate_subgroups(model, index):
                candidates[t.subspace] = t
    problems = []
    for t in candidates.values():
        problems.extend(_audit(w, t))
    logger.debug("%s: dictionary audit over %d subgroups, %d problems", model.descriptor, len(candidates), len(problems))
    return problems
