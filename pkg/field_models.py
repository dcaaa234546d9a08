#!/usr/bin/env python3
"""
Field models presented through their square-class groups.

A model fixes an ordered basis of F*/F*^2 and encodes every class as a packed
F_2 vector (bit i = exponent of basis element i). Quaternion symbols are
carried as bilinear "Brauer coordinate" vectors: the symbol (a, b) splits iff
its vector is zero. For local fields and R the vector has a single bit; for
S-supported rationals there is one bit per place; Laurent towers append the
tame residue to the base symbol.

Supported models:
- FiniteField(q), q odd
- PAdicField(p), p odd or p = 2
- RealField
- RationalS(S), rationals supported on a finite prime set S
- LaurentTower(base, var), the field base((var))
"""
import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple, Union

import sympy
from sympy import Poly, Rational, Symbol, factorint, fraction, isprime, multiplicity, oo, sympify, together
from sympy.functions.combinatorial.numbers import legendre_symbol

import algebra_config
from errors import DescriptorError, ModelMismatchError, SizeBoundError
from f2_algebra import bits_of

logger = logging.getLogger(__name__)

INFINITE_LEVEL = math.inf
REAL_PLACE = oo


# Rational helpers


def _as_rational(elem) -> Rational:
    try:
        value = Rational(sympify(elem))
    except (TypeError, ValueError, sympy.SympifyError) as e:
        raise DescriptorError(f"Not a rational number: {elem!r}") from e
    if value == 0:
        raise DescriptorError("Zero has no square class")
    return value


def _square_free_integer(elem) -> int:
    """An integer in the same rational square class as elem."""
    value = _as_rational(elem)
    num, den = value.p, value.q
    return int(num * den)


def _split_p(n: int, p: int) -> Tuple[int, int]:
    """n = p^v * u with p not dividing u."""
    v = multiplicity(p, abs(n)) if abs(n) != 1 else 0
    return v, n // p ** v


def local_hilbert_symbol(a, b, place) -> int:
    """
    Hilbert symbol (a, b) over Q_p or over R.

    Args:
        a: nonzero rational
        b: nonzero rational
        place: a prime p, or REAL_PLACE for the real completion

    Returns:
        +1 if a x^2 + b y^2 = z^2 has a nontrivial solution, else -1
    """
    a, b = _square_free_integer(a), _square_free_integer(b)
    if place == REAL_PLACE:
        return -1 if a < 0 and b < 0 else 1
    p = int(place)
    alpha, u = _split_p(a, p)
    beta, v = _split_p(b, p)
    if p != 2:
        sign = (-1) ** (alpha * beta * ((p - 1) // 2))
        sign *= int(legendre_symbol(u % p, p)) ** (beta % 2)
        sign *= int(legendre_symbol(v % p, p)) ** (alpha % 2)
        return sign

    def eps(x: int) -> int:
        return ((x - 1) // 2) % 2

    def omega(x: int) -> int:
        return ((x * x - 1) // 8) % 2

    exponent = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
    return -1 if exponent % 2 else 1


def hilbert_symbol_oracle(p: int, a: int, b: int, exponent: Optional[int] = None) -> int:
    """
    Brute-force (a, b)_p from isotropy of a x^2 + b y^2 - z^2 modulo p^k.

    A primitive p-adic zero has a unit coordinate; after scaling it to 1 the
    solution lifts by Hensel once it holds modulo p^(2e+1), e the valuation
    of the partial derivative in that coordinate.
    """
    if exponent is None:
        exponent = algebra_config.ORACLE_DYADIC_EXPONENT if p == 2 else algebra_config.ORACLE_ODD_EXPONENT
    a, b = _square_free_integer(a), _square_free_integer(b)
    va, ua = _split_p(a, p)
    vb, ub = _split_p(b, p)
    a, b = p ** (va % 2) * ua, p ** (vb % 2) * ub
    modulus = p ** exponent
    v2 = 1 if p == 2 else 0

    def lifts(e: int) -> bool:
        if exponent < 2 * e + 1:
            logger.warning("oracle precision p^%d too small for derivative valuation %d", exponent, e)
            return False
        return True

    squares = {z * z % modulus for z in range(modulus)}

    # z = 1
    if lifts(v2):
        b_values = {b * y * y % modulus for y in range(modulus)}
        if any((1 - a * x * x) % modulus in b_values for x in range(modulus)):
            return 1
    # x = 1
    if lifts(v2 + va % 2) and any((a + b * y * y) % modulus in squares for y in range(modulus)):
        return 1
    # y = 1
    if lifts(v2 + vb % 2) and any((a * x * x + b) % modulus in squares for x in range(modulus)):
        return 1
    return -1


# Models


class FieldModel(ABC):
    """Finite presentation of a field's square-class group and symbols."""

    kind: str = ""
    descriptor: str = ""
    dim: int = 0
    basis_labels: Tuple[str, ...] = ()
    formally_real: bool = False
    brauer_width: int = 0
    minus_one: int = 0

    def __init__(self):
        self._table: Optional[List[List[int]]] = None
        self._brauer_cache: Dict[Tuple[int, int], int] = {}

    @abstractmethod
    def basis_symbol(self, i: int, j: int) -> int:
        """Brauer coordinates of the symbol on basis classes i and j."""

    @abstractmethod
    def square_class(self, elem) -> int:
        """Packed class vector of a nonzero element."""

    @abstractmethod
    def basis_representatives(self) -> List[sympy.Expr]:
        """Field elements representing the basis classes."""

    @property
    def size(self) -> int:
        return 1 << self.dim

    @property
    def basis_symbols(self) -> List[List[int]]:
        if self._table is None:
            self._table = [[self.basis_symbol(i, j) for j in range(self.dim)] for i in range(self.dim)]
        return self._table

    def brauer(self, a: int, b: int) -> int:
        key = (a, b) if a <= b else (b, a)
        cached = self._brauer_cache.get(key)
        if cached is not None:
            return cached
        table = self.basis_symbols
        out = 0
        for i in bits_of(a):
            row = table[i]
            for j in bits_of(b):
                out ^= row[j]
        self._brauer_cache[key] = out
        return out

    def representative(self, v: int) -> sympy.Expr:
        reps = self.basis_representatives()
        out = sympy.Integer(1)
        for i in bits_of(v):
            out *= reps[i]
        return out

    def label(self, v: int) -> str:
        return sympy.sstr(self.representative(v))

    def parse_class(self, text: str) -> int:
        return self.square_class(text.strip())

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.descriptor}>"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldModel) and other.descriptor == self.descriptor

    def __hash__(self) -> int:
        return hash(self.descriptor)


class FiniteField(FieldModel):
    """F_q with q an odd prime power; elements are integers of the prime field."""

    kind = "Fq"

    def __init__(self, q: int):
        super().__init__()
        factors = factorint(q)
        if q < 3 or len(factors) != 1 or 2 in factors:
            raise DescriptorError(f"F_q needs an odd prime power q, got {q}")
        (self.p, self.k), = factors.items()
        self.q = q
        self.descriptor = f"Fq:{q}"
        self.dim = 1
        self.brauer_width = 0
        self.minus_one = 0 if q % 4 == 1 else 1
        if self.k % 2 == 0:
            self.nonsquare: Optional[int] = None
            self.basis_labels = ("u",)
        else:
            self.nonsquare = next(n for n in range(2, self.p) if legendre_symbol(n, self.p) == -1)
            self.basis_labels = (str(self.nonsquare),)

    def basis_symbol(self, i: int, j: int) -> int:
        return 0

    def square_class(self, elem) -> int:
        if str(elem).strip() == "u" and self.nonsquare is None:
            return 1
        value = _as_rational(elem)
        num, den = int(value.p), int(value.q)
        if num % self.p == 0 or den % self.p == 0:
            raise DescriptorError(f"{elem} is zero or undefined in F_{self.q}")
        if self.k % 2 == 0:
            return 0
        return 0 if legendre_symbol(num * den % self.p, self.p) == 1 else 1

    def basis_representatives(self) -> List[sympy.Expr]:
        if self.nonsquare is None:
            return [Symbol("u")]
        return [sympy.Integer(self.nonsquare)]


class RealField(FieldModel):
    kind = "R"

    def __init__(self):
        super().__init__()
        self.descriptor = "R"
        self.dim = 1
        self.basis_labels = ("-1",)
        self.formally_real = True
        self.brauer_width = 1
        self.minus_one = 1

    def basis_symbol(self, i: int, j: int) -> int:
        return 1

    def square_class(self, elem) -> int:
        try:
            value = sympify(elem)
        except sympy.SympifyError as e:
            raise DescriptorError(f"Not a real number: {elem!r}") from e
        if not value.is_real or value.is_zero:
            raise DescriptorError(f"Not a nonzero real number: {elem!r}")
        return 1 if value.is_negative else 0

    def basis_representatives(self) -> List[sympy.Expr]:
        return [sympy.Integer(-1)]


class PAdicField(FieldModel):
    """Q_p; basis (u, p) for odd p with u the least nonresidue, (-1, 2, 5) for p = 2."""

    kind = "Qp"

    def __init__(self, p: int):
        super().__init__()
        if not isprime(p):
            raise DescriptorError(f"Q_p needs a prime p, got {p}")
        self.p = p
        self.descriptor = f"Qp:{p}"
        self.brauer_width = 1
        if p == 2:
            self.dim = 3
            self._reps = [-1, 2, 5]
            self.minus_one = 0b001
        else:
            self.dim = 2
            self.nonsquare = next(n for n in range(2, p) if legendre_symbol(n, p) == -1)
            self._reps = [self.nonsquare, p]
            self.minus_one = 0 if p % 4 == 1 else 0b01
        self.basis_labels = tuple(str(r) for r in self._reps)

    def basis_symbol(self, i: int, j: int) -> int:
        return 1 if local_hilbert_symbol(self._reps[i], self._reps[j], self.p) == -1 else 0

    def square_class(self, elem) -> int:
        v, u = _split_p(_square_free_integer(elem), self.p)
        if self.p == 2:
            unit_bits = {1: 0b000, 3: 0b101, 5: 0b100, 7: 0b001}[u % 8]
            return unit_bits | ((v % 2) << 1)
        unit_bit = 0 if legendre_symbol(u % self.p, self.p) == 1 else 1
        return unit_bit | ((v % 2) << 1)

    def basis_representatives(self) -> List[sympy.Expr]:
        return [sympy.Integer(r) for r in self._reps]


class RationalS(FieldModel):
    """Q restricted to classes supported on S; symbols carry one bit per place."""

    kind = "QS"

    def __init__(self, primes: Iterable[int]):
        super().__init__()
        self.primes = tuple(sorted(set(int(p) for p in primes)))
        if not self.primes or not all(isprime(p) for p in self.primes):
            raise DescriptorError(f"QS needs a nonempty list of primes, got {self.primes}")
        self.descriptor = "QS:" + ",".join(str(p) for p in self.primes)
        self.dim = len(self.primes) + 1
        self._reps = [-1] + list(self.primes)
        self.basis_labels = tuple(str(r) for r in self._reps)
        self.places = [REAL_PLACE] + sorted(set(self.primes) | {2})
        self.brauer_width = len(self.places)
        self.formally_real = True
        self.minus_one = 1

    def basis_symbol(self, i: int, j: int) -> int:
        out = 0
        for k, place in enumerate(self.places):
            if local_hilbert_symbol(self._reps[i], self._reps[j], place) == -1:
                out |= 1 << k
        return out

    def square_class(self, elem) -> int:
        n = _square_free_integer(elem)
        out = 1 if n < 0 else 0
        for prime, e in factorint(abs(n)).items():
            if prime not in self.primes:
                raise DescriptorError(f"{elem} has prime support {prime} outside S = {list(self.primes)}")
            if e % 2:
                out |= 1 << (1 + self.primes.index(prime))
        return out

    def basis_representatives(self) -> List[sympy.Expr]:
        return [sympy.Integer(r) for r in self._reps]


class LaurentTower(FieldModel):
    """base((t)); the class of u t^a is (class of u, a mod 2)."""

    kind = "Tower"

    def __init__(self, base: FieldModel, var: str):
        super().__init__()
        if isinstance(base, FiniteField) and base.p == 2:
            raise DescriptorError("towers over characteristic 2 are not supported")
        if var in tower_variables(base):
            raise DescriptorError(f"variable {var!r} already used in {base.descriptor}")
        self.base = base
        self.var = var
        self.symbol = Symbol(var)
        self.descriptor = f"Tower({base.descriptor};{var})"
        self.dim = base.dim + 1
        self.t_bit = 1 << base.dim
        self.basis_labels = tuple(base.basis_labels) + (var,)
        self.formally_real = base.formally_real
        self.brauer_width = base.brauer_width + base.dim
        self.minus_one = base.minus_one
        if self.dim > algebra_config.MAX_CLASS_DIM:
            raise SizeBoundError(f"{self.descriptor} has square-class dimension {self.dim}")

    def basis_symbol(self, i: int, j: int) -> int:
        nb, shift = self.base.dim, self.base.brauer_width
        if i < nb and j < nb:
            return self.base.basis_symbols[i][j]
        if i == nb and j == nb:
            # (t, t) = (t, -1)
            return self.base.minus_one << shift
        unit = j if i == nb else i
        return (1 << unit) << shift

    def square_class(self, elem) -> int:
        try:
            expr = together(sympify(elem))
        except sympy.SympifyError as e:
            raise DescriptorError(f"Cannot parse tower element {elem!r}") from e
        if expr == 0:
            raise DescriptorError("Zero has no square class")
        num, den = fraction(expr)
        return self._polynomial_class(num, elem) ^ self._polynomial_class(den, elem)

    def _polynomial_class(self, poly_expr, original) -> int:
        try:
            poly = Poly(sympy.expand(poly_expr), self.symbol)
        except sympy.PolynomialError as e:
            raise DescriptorError(f"{original!r} is not polynomial in {self.var}") from e
        terms = [(deg[0], coeff) for deg, coeff in poly.terms() if coeff != 0]
        if not terms:
            raise DescriptorError(f"{original!r} has no invertible leading term")
        degree, coeff = min(terms, key=lambda term: term[0])
        if coeff.free_symbols - set(Symbol(v) for v in tower_variables(self.base)):
            raise DescriptorError(f"{original!r} has coefficients outside {self.base.descriptor}")
        return self.base.square_class(coeff) | (self.t_bit if degree % 2 else 0)

    def basis_representatives(self) -> List[sympy.Expr]:
        return list(self.base.basis_representatives()) + [self.symbol]


def tower_variables(model: FieldModel) -> List[str]:
    names = []
    while isinstance(model, LaurentTower):
        names.append(model.var)
        model = model.base
    return names


# Public operations


@dataclass(frozen=True)
class SquareClassVector:
    """An element of F*/F*^2 in a model's coordinates."""

    model_id: str
    coords: int

    def __mul__(self, other: "SquareClassVector") -> "SquareClassVector":
        if other.model_id != self.model_id:
            raise ModelMismatchError(f"{self.model_id} vs {other.model_id}")
        return SquareClassVector(self.model_id, self.coords ^ other.coords)


ClassLike = Union[SquareClassVector, int]


def coords_of(model: FieldModel, x: ClassLike) -> int:
    """Unwrap a class, checking that it belongs to model."""
    if isinstance(x, SquareClassVector):
        if x.model_id != model.descriptor:
            raise ModelMismatchError(f"class of {x.model_id} used with {model.descriptor}")
        x = x.coords
    if not 0 <= x < model.size:
        raise ModelMismatchError(f"class vector {x} out of range for {model.descriptor}")
    return x


def square_class(model: FieldModel, elem) -> SquareClassVector:
    return SquareClassVector(model.descriptor, model.square_class(elem))


def class_label(model: FieldModel, x: ClassLike) -> str:
    return model.label(coords_of(model, x))


def all_classes(model: FieldModel) -> range:
    return range(model.size)


def minus_one(model: FieldModel) -> int:
    return model.minus_one


def brauer_class(model: FieldModel, a: ClassLike, b: ClassLike) -> int:
    return model.brauer(coords_of(model, a), coords_of(model, b))


def hilbert_symbol(model: FieldModel, a: ClassLike, b: ClassLike) -> int:
    """+1 iff the quaternion algebra (a, b) splits over the model."""
    return 1 if brauer_class(model, a, b) == 0 else -1


def local_symbols(model: RationalS, a: ClassLike, b: ClassLike) -> Dict[object, int]:
    """Per-place Hilbert symbols of two S-supported classes."""
    vector = brauer_class(model, a, b)
    return {place: (-1 if (vector >> k) & 1 else 1) for k, place in enumerate(model.places)}


def represents_binary(model: FieldModel, c: ClassLike, a: ClassLike, b: ClassLike) -> bool:
    """<a, b> represents the class c iff <a, b, -c> is isotropic iff (ac, bc) splits."""
    c = coords_of(model, c)
    return model.brauer(coords_of(model, a) ^ c, coords_of(model, b) ^ c) == 0


def binary_values(model: FieldModel, a: int, b: int) -> FrozenSet[int]:
    """All classes represented by <a, b>."""
    return _binary_values(model, a, b)


@lru_cache(maxsize=algebra_config.BINARY_VALUES_CACHE_SIZE)
def _binary_values(model: FieldModel, a: int, b: int) -> FrozenSet[int]:
    return frozenset(c for c in range(model.size) if model.brauer(a ^ c, b ^ c) == 0)


def sum_of_squares_classes(model: FieldModel, k: int) -> Set[int]:
    """Classes represented by the k-fold form <1, ..., 1>."""
    if k < 1:
        raise ValueError("k must be at least 1")
    values: Set[int] = {0}
    for _ in range(k - 1):
        grown = set(values)
        for s in values:
            grown |= binary_values(model, s, 0)
        if grown == values:
            break
        values = grown
    return values


def field_level(model: FieldModel):
    """Least n with -1 a sum of n squares; INFINITE_LEVEL for formally real models."""
    values: Set[int] = {0}
    n = 1
    while True:
        if model.minus_one in values:
            return n
        grown = set(values)
        for s in values:
            grown |= binary_values(model, s, 0)
        if grown == values:
            return INFINITE_LEVEL
        values = grown
        n += 1
