"""
Exact linear algebra over F_2 and over the integers.

F_2 vectors are bit-packed Python ints: coordinate i lives in bit i, so the
string form "110" is the int 0b011 (coordinate 0 is written first). Integer
matrices are numpy arrays with dtype=object so entries never overflow.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from errors import SizeBoundError

logger = logging.getLogger(__name__)

WORD_BITS = 64


def popcount(x: int) -> int:
    return bin(x).count("1")


def dot(u: int, v: int) -> int:
    """Standard F_2 dot product of two packed vectors."""
    return popcount(u & v) & 1


def lowest_bit(x: int) -> int:
    """Index of the lowest set bit; -1 for zero."""
    return (x & -x).bit_length() - 1


def bits_of(x: int) -> Iterator[int]:
    """Indices of the set bits of x, increasing."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def vector_from_string(text: str) -> int:
    value = 0
    for i, ch in enumerate(text.strip()):
        if ch == "1":
            value |= 1 << i
        elif ch != "0":
            raise ValueError(f"Not an F_2 vector string: {text!r}")
    return value


def vector_to_string(v: int, length: int) -> str:
    return "".join("1" if (v >> i) & 1 else "0" for i in range(length))


def _check_width(ncols: int) -> None:
    if ncols > WORD_BITS:
        raise SizeBoundError(f"F_2 rows are packed into {WORD_BITS} bits, got {ncols} columns")


@dataclass(frozen=True)
class F2Matrix:
    """Row-major F_2 matrix; each row is a packed int."""

    nrows: int
    ncols: int
    bits: Tuple[int, ...]

    def __post_init__(self):
        _check_width(self.ncols)
        if len(self.bits) != self.nrows:
            raise ValueError("row count does not match the stored rows")
        mask = (1 << self.ncols) - 1
        if any(row & ~mask for row in self.bits):
            raise ValueError("row has bits beyond the column count")

    @classmethod
    def from_rows(cls, rows: Sequence[int], ncols: int) -> "F2Matrix":
        return cls(len(rows), ncols, tuple(rows))

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> "F2Matrix":
        ncols = len(rows[0]) if rows else 0
        return cls.from_rows([vector_from_string(r) for r in rows], ncols)

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls.from_rows([1 << i for i in range(n)], n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "F2Matrix":
        return cls.from_rows([0] * nrows, ncols)

    def apply(self, v: int) -> int:
        """Matrix times column vector: bit i of the result is row_i . v."""
        out = 0
        for i, row in enumerate(self.bits):
            if dot(row, v):
                out |= 1 << i
        return out


def _echelon(rows: Iterable[int]) -> List[int]:
    """Reduced echelon rows (nonzero only), pivots increasing."""
    pivots: List[Tuple[int, int]] = []
    for row in rows:
        for pivot, prow in pivots:
            if (row >> pivot) & 1:
                row ^= prow
        if not row:
            continue
        pivot = lowest_bit(row)
        reduced = []
        for p, prow in pivots:
            if (prow >> pivot) & 1:
                prow ^= row
            reduced.append((p, prow))
        reduced.append((pivot, row))
        pivots = reduced
    pivots.sort()
    return [prow for _, prow in pivots]


def rref(m: F2Matrix) -> F2Matrix:
    """Reduced row-echelon form; zero rows are kept at the bottom."""
    rows = _echelon(m.bits)
    return F2Matrix.from_rows(rows + [0] * (m.nrows - len(rows)), m.ncols)


def rank(m: F2Matrix) -> int:
    return len(_echelon(m.bits))


def kernel(m: F2Matrix) -> "F2Subspace":
    """Null space {x : m x = 0} as a subspace of F_2^ncols."""
    rows = _echelon(m.bits)
    pivot_cols = [lowest_bit(r) for r in rows]
    free_cols = [j for j in range(m.ncols) if j not in pivot_cols]
    basis = []
    for f in free_cols:
        v = 1 << f
        for pc, row in zip(pivot_cols, rows):
            if (row >> f) & 1:
                v |= 1 << pc
        basis.append(v)
    return F2Subspace.span(basis, m.ncols)


def map_kernel(images: Sequence[int], width_out: int) -> "F2Subspace":
    """Kernel of the linear map F_2^len(images) -> F_2^width_out sending e_i to images[i]."""
    ncols = len(images)
    rows = []
    for r in range(width_out):
        row = 0
        for i, img in enumerate(images):
            if (img >> r) & 1:
                row |= 1 << i
        rows.append(row)
    return kernel(F2Matrix.from_rows(rows, ncols))


@dataclass(frozen=True)
class F2Subspace:
    """Subspace of F_2^ambient_dim; the basis is kept in canonical RREF."""

    ambient_dim: int
    basis: F2Matrix

    @classmethod
    def span(cls, vectors: Iterable[int], ambient_dim: int) -> "F2Subspace":
        _check_width(ambient_dim)
        rows = _echelon(vectors)
        return cls(ambient_dim, F2Matrix.from_rows(rows, ambient_dim))

    @classmethod
    def zero(cls, ambient_dim: int) -> "F2Subspace":
        return cls.span([], ambient_dim)

    @classmethod
    def full(cls, ambient_dim: int) -> "F2Subspace":
        return cls.span([1 << i for i in range(ambient_dim)], ambient_dim)

    @property
    def dim(self) -> int:
        return self.basis.nrows

    @property
    def codim(self) -> int:
        return self.ambient_dim - self.dim

    @property
    def vectors(self) -> Tuple[int, ...]:
        return self.basis.bits

    def reduce(self, v: int) -> int:
        """Canonical representative of the coset v + self."""
        for row in self.basis.bits:
            if (v >> lowest_bit(row)) & 1:
                v ^= row
        return v

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    def __contains__(self, v: int) -> bool:
        return self.contains(v)

    def issubset(self, other: "F2Subspace") -> bool:
        return all(other.contains(v) for v in self.basis.bits)

    def sum(self, other: "F2Subspace") -> "F2Subspace":
        return F2Subspace.span(self.basis.bits + other.basis.bits, self.ambient_dim)

    def add_vectors(self, vectors: Iterable[int]) -> "F2Subspace":
        return F2Subspace.span(list(self.basis.bits) + list(vectors), self.ambient_dim)

    def intersection(self, other: "F2Subspace") -> "F2Subspace":
        return annihilator(annihilator(self).sum(annihilator(other)))

    def elements(self) -> Iterator[int]:
        """All 2^dim vectors, in Gray-code order starting from zero."""
        rows = self.basis.bits
        v = 0
        yield v
        for k in range(1, 1 << len(rows)):
            v ^= rows[lowest_bit(k)]
            yield v

    def size(self) -> int:
        return 1 << self.dim


def annihilator(s: F2Subspace) -> F2Subspace:
    """{v : v.w = 0 for all w in s}."""
    return kernel(s.basis)


def subspaces_of_dim(n: int, k: int) -> Iterator[F2Subspace]:
    """Every k-dimensional subspace of F_2^n, each exactly once."""
    if k < 0 or k > n:
        return
    for pivots in itertools.combinations(range(n), k):
        free_slots = []
        for i, p in enumerate(pivots):
            for j in range(p + 1, n):
                if j not in pivots:
                    free_slots.append((i, j))
        for fill in range(1 << len(free_slots)):
            rows = [1 << p for p in pivots]
            for bit, (i, j) in enumerate(free_slots):
                if (fill >> bit) & 1:
                    rows[i] |= 1 << j
            yield F2Subspace(n, F2Matrix.from_rows(rows, n))


def all_subspaces(n: int, codim: Optional[int] = None) -> Iterator[F2Subspace]:
    """Subspaces of F_2^n, optionally restricted to one codimension."""
    if codim is not None:
        yield from subspaces_of_dim(n, n - codim)
        return
    for k in range(n + 1):
        yield from subspaces_of_dim(n, k)


def ordered_bases(n: int) -> Iterator[List[int]]:
    """Every ordered basis of F_2^n (the rows of GL(n, 2))."""

    def extend(prefix: List[int], span: F2Subspace) -> Iterator[List[int]]:
        if len(prefix) == n:
            yield list(prefix)
            return
        for v in range(1, 1 << n):
            if not span.contains(v):
                yield from extend(prefix + [v], span.add_vectors([v]))

    yield from extend([], F2Subspace.zero(n))


def combine(vectors: Sequence[int], coords: int) -> int:
    """XOR of vectors[i] over the set bits i of coords."""
    out = 0
    for i in bits_of(coords):
        out ^= vectors[i]
    return out


def solve_in_span(vectors: Sequence[int], target: int) -> Optional[int]:
    """Coefficient mask c with XOR of vectors[i] (c_i = 1) equal to target."""
    pivots: List[Tuple[int, int, int]] = []
    for i, vec in enumerate(vectors):
        combo = 1 << i
        for p, prow, pcombo in pivots:
            if (vec >> p) & 1:
                vec ^= prow
                combo ^= pcombo
        if vec:
            pivots.append((lowest_bit(vec), vec, combo))
    combo = 0
    for p, prow, pcombo in pivots:
        if (target >> p) & 1:
            target ^= prow
            combo ^= pcombo
    return combo if target == 0 else None


# Integer matrices


def int_matrix(rows: Sequence[Sequence[int]], ncols: Optional[int] = None) -> np.ndarray:
    if not rows:
        return np.zeros((0, ncols or 0), dtype=object)
    out = np.empty((len(rows), len(rows[0])), dtype=object)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            out[i, j] = int(x)
    return out


def int_identity(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


def int_det(a: np.ndarray) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = a.shape[0]
    if n == 0:
        return 1
    m = [[int(x) for x in row] for row in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


class SmithForm(NamedTuple):
    diag: List[int]
    left: np.ndarray
    right: np.ndarray


def smith_normal_form(m: np.ndarray) -> SmithForm:
    """
    Smith normal form with unimodular transforms.

    Args:
        m: integer matrix (any shape, dtype=object preferred)

    Returns:
        SmithForm(diag, left, right) with left @ m @ right diagonal, carrying
        the nonzero invariant factors d_1 | d_2 | ... | d_r (all positive).
    """
    d = np.array(m, dtype=object).copy()
    nrows, ncols = d.shape
    left, right = int_identity(nrows), int_identity(ncols)

    for t in range(min(nrows, ncols)):
        while True:
            nonzero = [(abs(d[i, j]), i, j) for i in range(t, nrows) for j in range(t, ncols) if d[i, j] != 0]
            if not nonzero:
                break
            _, i, j = min(nonzero)
            if i != t:
                d[[t, i]] = d[[i, t]]
                left[[t, i]] = left[[i, t]]
            if j != t:
                d[:, [t, j]] = d[:, [j, t]]
                right[:, [t, j]] = right[:, [j, t]]

            clean = True
            pivot = d[t, t]
            for i in range(t + 1, nrows):
                if d[i, t] != 0:
                    q = d[i, t] // pivot
                    d[i] = d[i] - q * d[t]
                    left[i] = left[i] - q * left[t]
                    clean = clean and d[i, t] == 0
            for j in range(t + 1, ncols):
                if d[t, j] != 0:
                    q = d[t, j] // pivot
                    d[:, j] = d[:, j] - q * d[:, t]
                    right[:, j] = right[:, j] - q * right[:, t]
                    clean = clean and d[t, j] == 0
            if not clean:
                continue

            # divisibility chain: fold an offending row into the pivot row
            offender = next(
                (i for i in range(t + 1, nrows) for j in range(t + 1, ncols) if d[i, j] % pivot != 0),
                None,
            )
            if offender is None:
                break
            d[t] = d[t] + d[offender]
            left[t] = left[t] + left[offender]
        if d[t, t] < 0:
            d[t] = -d[t]
            left[t] = -left[t]

    diag = [int(d[i, i]) for i in range(min(nrows, ncols)) if d[i, i] != 0]
    return SmithForm(diag, left, right)


def lattice_basis(rows: Iterable[Sequence[int]], ncols: int) -> List[List[int]]:
    """Echelon Z-basis of the row lattice spanned by rows (no transforms kept)."""
    work = {tuple(int(x) for x in row) for row in rows}
    work.discard((0,) * ncols)
    pending = [list(r) for r in work]
    basis: List[List[int]] = []
    for col in range(ncols):
        cand = [r for r in pending if r[col] != 0]
        rest = [r for r in pending if r[col] == 0]
        while len(cand) > 1:
            cand.sort(key=lambda r: abs(r[col]))
            pivot = cand[0]
            survivors = [pivot]
            for r in cand[1:]:
                q = r[col] // pivot[col]
                reduced = [a - q * b for a, b in zip(r, pivot)]
                if reduced[col] != 0:
                    survivors.append(reduced)
                elif any(reduced):
                    rest.append(reduced)
            cand = survivors
        if cand:
            pivot = cand[0]
            if pivot[col] < 0:
                pivot = [-x for x in pivot]
            basis.append(pivot)
        pending = rest
    logger.debug("lattice basis: %d generators reduced to %d rows", len(work), len(basis))
    return basis


def lattice_contains(basis: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    """Membership of v in the row lattice of an echelon basis."""
    v = [int(x) for x in v]
    for row in basis:
        col = next(j for j, x in enumerate(row) if x != 0)
        if v[col] % row[col] != 0:
            return False
        q = v[col] // row[col]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return not any(v)


def abelian_invariants(rows: Iterable[Sequence[int]], ncols: int) -> Tuple[int, ...]:
    """Invariant factors of Z^ncols / span(rows); free summands show up as 0."""
    basis = lattice_basis(rows, ncols)
    if not basis:
        return (0,) * ncols
    diag = smith_normal_form(int_matrix(basis)).diag
    torsion = tuple(d for d in diag if d != 1)
    return torsion + (0,) * (ncols - len(diag))
