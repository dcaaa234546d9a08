#!/usr/bin/env python3
"""
Diagonal quadratic forms over Q: local isotropy at each place, the
Hasse-Minkowski verdict, a reciprocity audit for ternary forms, a brute-force
rational point oracle, and the orderings T_p cut out on S-supported classes
by the square classes of Q_p.

Hasse invariant convention: eps_p(q) = prod_{i<j} (a_i, a_j)_p. With it a
form of dimension n over Q_p is isotropic iff
    n = 2: -d is a square
    n = 3: eps = (-1, -d)
    n = 4: d is not a square, or eps = (-1, -1)
    n >= 5: always.
"""
import itertools
import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel
from sympy import primefactors
from sympy.functions.combinatorial.numbers import legendre_symbol

import algebra_config
from errors import DescriptorError, HypothesisError, SizeBoundError
from f2_algebra import map_kernel
from field_models import REAL_PLACE, PAdicField, RationalS, local_hilbert_symbol
from orderings import OrderingClass, SubgroupT, classify

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QForm:
    entries: Tuple[int, ...]

    def __post_init__(self):
        if not self.entries:
            raise DescriptorError("a form needs at least one entry")
        if any(int(a) == 0 for a in self.entries):
            raise DescriptorError(f"form entries must be nonzero, got {list(self.entries)}")

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def discriminant(self) -> int:
        return math.prod(self.entries)

    def evaluate(self, x: Sequence[int]) -> int:
        return sum(a * xi * xi for a, xi in zip(self.entries, x))

    def __str__(self) -> str:
        return "<" + ",".join(str(a) for a in self.entries) + ">"


def form_from_text(values: Sequence[str]) -> QForm:
    """Build a form from integer tokens; a single comma-separated token is accepted too."""
    tokens = []
    for v in values:
        tokens += [t for t in str(v).replace(",", " ").split() if t]
    try:
        return QForm(tuple(int(t) for t in tokens))
    except ValueError as e:
        raise DescriptorError(f"form entries must be integers: {list(values)}") from e


def place_name(place) -> str:
    return "R" if place == REAL_PLACE else f"Q_{int(place)}"


def relevant_places(q: QForm) -> list:
    """oo, 2 and the odd primes dividing some entry."""
    odd = set()
    for a in q.entries:
        odd.update(p for p in primefactors(abs(a)) if p != 2)
    return [REAL_PLACE, 2] + sorted(odd)


def is_local_square(x: int, place) -> bool:
    if x == 0:
        raise DescriptorError("zero has no square class")
    if place == REAL_PLACE:
        return x > 0
    p = int(place)
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    if v % 2:
        return False
    if p == 2:
        return x % 8 == 1
    return legendre_symbol(x % p, p) == 1


def discriminant_class(q: QForm, place) -> bool:
    """Whether the discriminant is a local square at the place."""
    return is_local_square(q.discriminant, place)


def hasse_invariant(q: QForm, place) -> int:
    eps = 1
    for a, b in itertools.combinations(q.entries, 2):
        eps *= local_hilbert_symbol(a, b, place)
    return eps


def local_isotropic(q: QForm, place) -> bool:
    """Isotropy of q over the completion of Q at place (a prime or REAL_PLACE)."""
    n = q.dim
    if n == 1:
        return False
    if place == REAL_PLACE:
        return any(a > 0 for a in q.entries) and any(a < 0 for a in q.entries)
    d = q.discriminant
    if n == 2:
        return is_local_square(-d, place)
    if n == 3:
        return hasse_invariant(q, place) == local_hilbert_symbol(-1, -d, place)
    if n == 4:
        if not is_local_square(d, place):
            return True
        return hasse_invariant(q, place) == local_hilbert_symbol(-1, -1, place)
    return True


class PlaceVerdict(BaseModel):
    place: str
    isotropic: bool
    discriminant_square: bool
    hasse_invariant: int


class HasseVerdict(BaseModel):
    form: List[int]
    isotropic: bool
    failures: List[str]
    places: List[PlaceVerdict]

    @property
    def summary(self) -> str:
        if self.isotropic:
            return "isotropic"
        return "anisotropic; local failures: " + ", ".join(self.failures)


def hasse_minkowski(q: QForm) -> HasseVerdict:
    """
    Decide isotropy over Q as the conjunction of local isotropy.

    Args:
        q: a diagonal form with nonzero integer entries

    Returns:
        HasseVerdict listing every anisotropic place
    """
    places = []
    failures = []
    for place in relevant_places(q):
        ok = local_isotropic(q, place)
        name = place_name(place)
        places.append(
            PlaceVerdict(
                place=name,
                isotropic=ok,
                discriminant_square=discriminant_class(q, place),
                hasse_invariant=hasse_invariant(q, place),
            )
        )
        if not ok:
            failures.append(name)
    logger.debug("%s: local failures %s", q, failures)
    return HasseVerdict(form=list(q.entries), isotropic=not failures, failures=failures, places=places)


def reciprocity_audit(q: QForm) -> bool:
    """A ternary form is anisotropic at an even number of places."""
    if q.dim != 3:
        raise HypothesisError(f"reciprocity audit needs a ternary form, got dimension {q.dim}")
    count = len(hasse_minkowski(q).failures)
    if count % 2:
        logger.warning("%s anisotropic at an odd number (%d) of places", q, count)
    return count % 2 == 0


def _shell(m: int, k: int):
    """Nonnegative k-tuples with maximum exactly m, keyed by the position of the first m."""
    if m == 0:
        yield (0,) * k
        return
    for pos in range(k):
        for head in itertools.product(range(m), repeat=pos):
            for tail in itertools.product(range(m + 1), repeat=k - pos - 1):
                yield head + (m,) + tail


def rational_point_oracle(q: QForm, height_bound: Optional[int] = None) -> Optional[Tuple[int, ...]]:
    """
    Search for a primitive nonzero x with q(x) = 0 and every |x_i| <= height_bound.

    The first n-1 coordinates run through shells of growing height and the
    last coordinate is solved for. Signs are irrelevant for diagonal forms.
    """
    bound = algebra_config.DEFAULT_HEIGHT_BOUND if height_bound is None else int(height_bound)
    if bound > algebra_config.MAX_HEIGHT_BOUND:
        raise SizeBoundError(f"height bound {bound} exceeds {algebra_config.MAX_HEIGHT_BOUND}")
    if q.dim == 1:
        return None
    last = q.entries[-1]
    head_form = q.entries[:-1]
    for m in range(bound + 1):
        for head in _shell(m, q.dim - 1):
            s = sum(a * x * x for a, x in zip(head_form, head))
            if (-s) % last:
                continue
            r = -s // last
            if r < 0:
                continue
            xn = math.isqrt(r)
            if xn * xn != r or xn > bound:
                continue
            x = head + (xn,)
            if not any(x):
                continue
            g = math.gcd(*x)
            return tuple(c // g for c in x)
    logger.debug("%s: no point of height <= %d", q, bound)
    return None


def ordering_for_prime(p: int, primes: Sequence[int]) -> Tuple[SubgroupT, OrderingClass]:
    """
    T_p: the S-supported classes that are squares in Q_p.

    Args:
        p: an odd prime in S
        primes: the set S, which must also contain 2

    Returns:
        (T_p over RationalS(S), its classification)
    """
    primes = sorted(set(int(x) for x in primes))
    if p == 2 or p not in primes:
        raise HypothesisError(f"need an odd prime p in S, got p = {p}, S = {primes}")
    if 2 not in primes:
        raise HypothesisError(f"S must contain 2 for the embedding into Q_{p} classes, got {primes}")
    model = RationalS(primes)
    local = PAdicField(p)
    images = [local.square_class(rep) for rep in model.basis_representatives()]
    t = SubgroupT(model, map_kernel(images, local.dim))
    verdict = classify(t)
    logger.debug("T_%d over %s: %s, %s", p, model.descriptor, t.labels(), verdict.name)
    return t, verdict
