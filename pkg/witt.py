#!/usr/bin/env python3
"""
Witt rings W_T(F) = Z[F*/T] / J.

The additive generators are the cosets of T. J is spanned by
    [cT] + [-cT]                          for every coset,
    [aT] + [bT] - [cT] - [abcT]           whenever c is a value of <a, b>,
taken over all square classes a, b so that the ideal does not depend on
coset representatives. Multiplication is the group-ring product [aT][bT] = [abT].
"""
import logging
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import algebra_config
from errors import AlgebraError, HypothesisError, SizeBoundError
from f2_algebra import F2Subspace, abelian_invariants, annihilator, combine, lattice_basis, lattice_contains, ordered_bases
from field_models import FieldModel, binary_values
from orderings import SubgroupT, c0_orderings

logger = logging.getLogger(__name__)

IntVector = Tuple[int, ...]


@dataclass(frozen=True)
class WittRing:
    model: FieldModel
    t: SubgroupT
    cosets: Tuple[int, ...]
    lattice: Tuple[IntVector, ...]
    invariants: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.cosets)

    @property
    def labels(self) -> List[str]:
        return [self.model.label(c) for c in self.cosets]

    def position(self, cls: int) -> int:
        return self.cosets.index(self.t.coset_key(cls))

    def basis_vector(self, cls: int) -> IntVector:
        v = [0] * self.rank
        v[self.position(cls)] = 1
        return tuple(v)

    def coset_product(self, i: int, j: int) -> int:
        return self.position(self.cosets[i] ^ self.cosets[j])

    def multiply(self, x: Sequence[int], y: Sequence[int]) -> IntVector:
        out = [0] * self.rank
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if yj:
                    out[self.coset_product(i, j)] += xi * yj
        return tuple(out)

    def reduce(self, v: Sequence[int]) -> IntVector:
        """Canonical representative of v + J."""
        v = [int(x) for x in v]
        for row in self.lattice:
            col = next(j for j, x in enumerate(row) if x != 0)
            q = v[col] // row[col]
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return tuple(v)

    def is_zero(self, v: Sequence[int]) -> bool:
        return lattice_contains(self.lattice, v)

    def multiplication_table(self) -> List[List[str]]:
        labels = self.labels
        return [[labels[self.coset_product(i, j)] for j in range(self.rank)] for i in range(self.rank)]


def relation_rows(model: FieldModel, t: SubgroupT, cosets: Sequence[int]) -> List[IntVector]:
    if model.dim > algebra_config.MAX_CLASS_DIM:
        raise SizeBoundError(f"square-class dimension {model.dim} exceeds {algebra_config.MAX_CLASS_DIM}")
    index = {c: i for i, c in enumerate(cosets)}
    n = len(cosets)

    def pos(cls: int) -> int:
        return index[t.coset_key(cls)]

    rows: Dict[IntVector, None] = {}
    minus = model.minus_one
    for c in cosets:
        row = [0] * n
        row[pos(c)] += 1
        row[pos(c ^ minus)] += 1
        rows[tuple(row)] = None
    for a in range(model.size):
        for b in range(a, model.size):
            for c in binary_values(model, a, b):
                row = [0] * n
                row[pos(a)] += 1
                row[pos(b)] += 1
                row[pos(c)] -= 1
                row[pos(a ^ b ^ c)] -= 1
                if any(row):
                    rows[tuple(row)] = None
    logger.debug("%s: %d distinct relation rows over %d cosets", model.descriptor, len(rows), n)
    return list(rows)


def witt_ring(model: FieldModel, t: SubgroupT, coset_order: Optional[Sequence[int]] = None) -> WittRing:
    """
    Present W_T(F) and verify that J is an ideal.

    Args:
        model: the field model
        t: a subgroup of the square-class group
        coset_order: optional permutation of the coset basis

    Returns:
        WittRing with its echelon lattice and additive invariant factors
    """
    if t.model != model:
        raise HypothesisError("T belongs to another model")
    cosets = tuple(t.coset_representatives())
    if coset_order is not None:
        cosets = tuple(cosets[i] for i in coset_order)
    rows = relation_rows(model, t, cosets)
    basis = tuple(tuple(r) for r in lattice_basis(rows, len(cosets)))
    invariants = abelian_invariants(basis, len(cosets)) if basis else (0,) * len(cosets)
    ring = WittRing(model, t, cosets, basis, invariants)
    for row in basis:
        for i in range(len(cosets)):
            shifted = ring.multiply(row, ring.basis_vector(cosets[i]))
            if not ring.is_zero(shifted):
                raise AlgebraError(f"relation lattice of {model.descriptor} is not an ideal")
    return ring


def _key_basis(w: WittRing) -> List[int]:
    return list(F2Subspace.span(w.cosets, w.model.dim).vectors)


def _ordered_bases_of(space: Sequence[int]) -> Iterator[List[int]]:
    """Ordered bases of the span of independent vectors."""
    for coords in ordered_bases(len(space)):
        yield [combine(space, c) for c in coords]


def ring_iso(w1: WittRing, w2: WittRing) -> bool:
    """Search for a group isomorphism of the coset groups carrying J1 onto J2."""
    if w1.rank > algebra_config.RING_ISO_LIMIT or w2.rank > algebra_config.RING_ISO_LIMIT:
        raise SizeBoundError(f"ring isomorphism search limited to {algebra_config.RING_ISO_LIMIT} cosets")
    if w1.rank != w2.rank or w1.invariants != w2.invariants:
        return False
    source = _key_basis(w1)
    k = len(source)
    for target in _ordered_bases_of(_key_basis(w2)):
        perm = [0] * w1.rank
        for coords in range(1 << k):
            perm[w1.position(combine(source, coords))] = w2.position(combine(target, coords))
        forward = all(w2.is_zero(_permute(row, perm, w2.rank)) for row in w1.lattice)
        inverse = [0] * w1.rank
        for i, j in enumerate(perm):
            inverse[j] = i
        backward = all(w1.is_zero(_permute(row, inverse, w1.rank)) for row in w2.lattice)
        if forward and backward:
            return True
    return False


def _permute(row: Sequence[int], perm: Sequence[int], n: int) -> IntVector:
    out = [0] * n
    for i, x in enumerate(row):
        out[perm[i]] += x
    return tuple(out)


def signature_map(w: WittRing, t: SubgroupT) -> Callable[[Sequence[int]], Tuple[int, int]]:
    """
    Additive map W(F) -> F_2[e]/(e^2) for a C(∅)-ordering T: <f> -> 1 if f in T, else 1 + e.

    Returns the pair (coefficient of 1, coefficient of e) modulo 2.
    """
    in_t = [c in t for c in w.cosets]

    def apply(v: Sequence[int]) -> Tuple[int, int]:
        one = sum(v) % 2
        eps = sum(x for x, inside in zip(v, in_t) if not inside) % 2
        return one, eps

    return apply


def signature_is_homomorphism(w: WittRing, t: SubgroupT) -> bool:
    """The signature kills J and respects products of basis elements."""
    sig = signature_map(w, t)
    if any(sig(row) != (0, 0) for row in w.lattice):
        return False

    def times(x: Tuple[int, int], y: Tuple[int, int]) -> Tuple[int, int]:
        return (x[0] * y[0]) % 2, (x[0] * y[1] + x[1] * y[0]) % 2

    for a in w.cosets:
        for b in w.cosets:
            e_a, e_b = w.basis_vector(a), w.basis_vector(b)
            if sig(w.multiply(e_a, e_b)) != times(sig(e_a), sig(e_b)):
                return False
    return True


def c0_kernel_check(model: FieldModel) -> bool:
    """
    Compare the kernel of the product of C(∅) signatures with I^2 + 2W.

    Both lattices contain 2Z^N, so they are compared as F_2 subspaces of
    F_2^N with N the number of square classes.
    """
    family = c0_orderings(model)
    if not family:
        raise HypothesisError(f"{model.descriptor} has no C(∅)-orderings")
    squares = SubgroupT.squares(model)
    w = witt_ring(model, squares)
    n = w.rank

    def mask(entries) -> int:
        return sum(1 << i for i, x in enumerate(entries) if x % 2)

    functionals = [(1 << n) - 1]
    for t in family:
        if not signature_is_homomorphism(w, t):
            logger.warning("%s: signature for %s is not a ring map", model.descriptor, t.labels())
            return False
        functionals.append(sum(1 << i for i, c in enumerate(w.cosets) if c not in t))
    kernel = annihilator(F2Subspace.span(functionals, n))

    generators = [mask(row) for row in w.lattice]
    for c in w.cosets:
        for a in range(model.size):
            for b in range(model.size):
                pfister = [0] * n
                for cls in (c, c ^ a, c ^ b, c ^ a ^ b):
                    pfister[w.position(cls)] += 1
                generators.append(mask(pfister))
    image = F2Subspace.span(generators, n)
    if not image.issubset(kernel):
        logger.warning("%s: I^2 + 2W not inside the signature kernel", model.descriptor)
    return image == kernel
