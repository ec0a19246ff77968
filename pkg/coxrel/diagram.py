"""
Coxeter matrices and diagram combinatorics

A Coxeter system (W, S) is stored only through its orders m(s, t). Subsets of
S are bit sets over generator indices, so every enumeration in the package
works on plain integers; GenSet wraps such a mask for the public API.
"""

import math
import numbers
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .errors import (
    BadDiagonalError,
    BadOrderError,
    IndexOutOfRangeError,
    NonSymmetricError,
    TooLargeError,
    ValidationError,
)

INFINITY = math.inf
MAX_GENERATORS = 24

Label = Union[int, float]


# ============================================================================
# Generator subsets
# ============================================================================

@dataclass(frozen=True)
class GenSet:
    """Immutable set of generator indices, stored as a bit mask"""

    mask: int = 0

    def __post_init__(self):
        if self.mask < 0:
            raise IndexOutOfRangeError("Generator set mask must be nonnegative")

    @classmethod
    def from_indices(cls, indices: Iterable[int]) -> "GenSet":
        mask = 0
        for i in indices:
            if isinstance(i, bool) or not isinstance(i, numbers.Integral):
                raise IndexOutOfRangeError(f"Generator index must be an integer, got {i!r}")
            if i < 0:
                raise IndexOutOfRangeError(f"Generator index {i} is negative")
            mask |= 1 << int(i)
        return cls(mask)

    @classmethod
    def of(cls, *indices: int) -> "GenSet":
        return cls.from_indices(indices)

    @property
    def members(self) -> Tuple[int, ...]:
        return tuple(iter_bits(self.mask))

    @property
    def sort_key(self) -> Tuple[int, ...]:
        return self.members

    @property
    def lowest(self) -> int:
        if not self.mask:
            raise ValueError("Empty generator set has no lowest member")
        return (self.mask & -self.mask).bit_length() - 1

    def one_based(self) -> Tuple[int, ...]:
        return tuple(i + 1 for i in iter_bits(self.mask))

    def issubset(self, other: "GenSet") -> bool:
        return self.mask & ~other.mask == 0

    def issuperset(self, other: "GenSet") -> bool:
        return other.mask & ~self.mask == 0

    def isdisjoint(self, other: "GenSet") -> bool:
        return self.mask & other.mask == 0

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __contains__(self, index: object) -> bool:
        return isinstance(index, int) and index >= 0 and bool(self.mask >> index & 1)

    def __or__(self, other: "GenSet") -> "GenSet":
        return GenSet(self.mask | other.mask)

    def __and__(self, other: "GenSet") -> "GenSet":
        return GenSet(self.mask & other.mask)

    def __sub__(self, other: "GenSet") -> "GenSet":
        return GenSet(self.mask & ~other.mask)

    def __repr__(self) -> str:
        return f"GenSet({set(self.members) or '{}'})"


SubsetLike = Union[GenSet, Iterable[int]]


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of mask in increasing order"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def canonical(sets: Iterable[GenSet]) -> List[GenSet]:
    """Deduplicate and sort generator sets by their member tuples"""
    return sorted(set(sets), key=lambda g: g.sort_key)


# ============================================================================
# Coxeter matrix
# ============================================================================

def _is_valid_order(value: object) -> bool:
    if isinstance(value, bool):
        return False
    if isinstance(value, numbers.Integral):
        return value >= 2
    return isinstance(value, numbers.Real) and math.isinf(value) and value > 0


def _normalize_order(value: Label) -> Label:
    return INFINITY if isinstance(value, numbers.Real) and math.isinf(value) else int(value)


@dataclass(frozen=True)
class CoxeterMatrix:
    """
    Validated Coxeter matrix

    labels[i][j] is the order m(s_i, s_j): 1 on the diagonal, an integer >= 2
    or INFINITY elsewhere. Construct through new_coxeter_matrix() or
    CoxeterMatrix.from_edges().
    """

    n: int
    labels: Tuple[Tuple[Label, ...], ...]
    names: Tuple[str, ...] = ()
    _adjacent: Tuple[int, ...] = field(init=False, repr=False, compare=False)
    _commuting: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n > MAX_GENERATORS:
            raise TooLargeError(
                f"{self.n} generators exceed the supported maximum of {MAX_GENERATORS}"
            )
        if self.n < 0:
            raise ValidationError(f"Generator count must be nonnegative, got {self.n}")
        if len(self.labels) != self.n or any(len(row) != self.n for row in self.labels):
            raise ValidationError(f"Order table must be {self.n}x{self.n}")

        for i, row in enumerate(self.labels):
            for j, value in enumerate(row):
                if i == j:
                    if isinstance(value, bool) or value != 1:
                        raise BadDiagonalError(
                            f"Diagonal entry ({i + 1},{i + 1}) must be 1, got {value!r}"
                        )
                elif not _is_valid_order(value):
                    raise BadOrderError(
                        f"Entry ({i + 1},{j + 1}) must be an integer >= 2 or infinity, "
                        f"got {value!r}"
                    )
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if self.labels[i][j] != self.labels[j][i]:
                    raise NonSymmetricError(
                        f"Entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) differ: "
                        f"{self.labels[i][j]!r} != {self.labels[j][i]!r}"
                    )

        names = self.names or tuple(f"s{i + 1}" for i in range(self.n))
        if len(names) != self.n:
            raise ValidationError(f"Expected {self.n} generator names, got {len(names)}")
        if len(set(names)) != len(names) or not all(isinstance(x, str) and x for x in names):
            raise ValidationError("Generator names must be distinct nonempty strings")
        object.__setattr__(self, "names", tuple(names))

        adjacent, commuting = [], []
        for i in range(self.n):
            adj = com = 0
            for j in range(self.n):
                if i == j:
                    continue
                if self.labels[i][j] == 2:
                    com |= 1 << j
                else:
                    adj |= 1 << j
            adjacent.append(adj)
            commuting.append(com)
        object.__setattr__(self, "_adjacent", tuple(adjacent))
        object.__setattr__(self, "_commuting", tuple(commuting))

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Dict[Tuple[int, int], Label],
        names: Optional[Sequence[str]] = None,
    ) -> "CoxeterMatrix":
        """Build a matrix from its non-commuting pairs; unlisted pairs get order 2"""
        if n > MAX_GENERATORS:
            raise TooLargeError(f"{n} generators exceed the supported maximum of {MAX_GENERATORS}")
        table = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
        for (i, j), m in edges.items():
            if not (0 <= i < n and 0 <= j < n) or i == j:
                raise IndexOutOfRangeError(f"Edge ({i}, {j}) out of range for {n} generators")
            table[i][j] = table[j][i] = m
        return new_coxeter_matrix(n, table, names)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def full_set(self) -> GenSet:
        return GenSet(self.full_mask)

    def label(self, i: int, j: int) -> Label:
        return self.labels[i][j]

    def adjacency_mask(self, i: int) -> int:
        """Generators joined to i in the diagram (order 3 or more, or infinite)"""
        return self._adjacent[i]

    def commute_mask(self, i: int) -> int:
        """Generators other than i with order 2 against i"""
        return self._commuting[i]

    def names_of(self, subset: SubsetLike) -> List[str]:
        return [self.names[i] for i in as_genset(self, subset)]

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise IndexOutOfRangeError(f"Unknown generator name: {name}") from None

    def describe(self, subset: SubsetLike) -> str:
        """'{s1, s3}' style rendering used in logs and witness trails"""
        return "{" + ", ".join(self.names_of(subset)) + "}"

    def subset_from_names(self, names: Iterable[str]) -> GenSet:
        return GenSet.from_indices(self.index_of(name) for name in names)

    def is_right_angled(self) -> bool:
        return all(
            self.labels[i][j] in (2, INFINITY)
            for i in range(self.n)
            for j in range(i + 1, self.n)
        )


def new_coxeter_matrix(
    n: int,
    entries: Sequence[Sequence[Label]],
    names: Optional[Sequence[str]] = None,
) -> CoxeterMatrix:
    """
    Validate an order table and wrap it as a CoxeterMatrix

    Raises:
        TooLargeError: more than MAX_GENERATORS generators
        BadDiagonalError, BadOrderError, NonSymmetricError: malformed table
    """
    if n > MAX_GENERATORS:
        raise TooLargeError(f"{n} generators exceed the supported maximum of {MAX_GENERATORS}")
    if n < 1:
        raise ValidationError(f"A Coxeter matrix needs at least one generator, got n={n}")
    rows = [list(row) for row in entries]
    if len(rows) != n or any(len(row) != n for row in rows):
        raise ValidationError(f"Order table must be {n}x{n}")
    table = []
    for row in rows:
        table.append(tuple(
            _normalize_order(v) if _is_valid_order(v) else v for v in row
        ))
    return CoxeterMatrix(n=n, labels=tuple(table), names=tuple(names) if names else ())


def as_genset(matrix: CoxeterMatrix, subset: SubsetLike) -> GenSet:
    """Coerce an index iterable to a GenSet and check it fits the matrix"""
    genset = subset if isinstance(subset, GenSet) else GenSet.from_indices(subset)
    if genset.mask >> matrix.n:
        raise IndexOutOfRangeError(
            f"Generator index {genset.members[-1]} out of range for {matrix.n} generators"
        )
    return genset


# ============================================================================
# Mask-level combinatorics
# ============================================================================

def component_masks(matrix: CoxeterMatrix, mask: int) -> List[int]:
    """Connected components of the diagram restricted to mask, by lowest bit"""
    result = []
    remaining = mask
    while remaining:
        seed = remaining & -remaining
        component = frontier = seed
        while frontier:
            grown = 0
            for i in iter_bits(frontier):
                grown |= matrix.adjacency_mask(i)
            frontier = grown & mask & ~component
            component |= frontier
        result.append(component)
        remaining &= ~component
    return result


def is_connected_mask(matrix: CoxeterMatrix, mask: int) -> bool:
    return mask != 0 and len(component_masks(matrix, mask)) == 1


def perp_mask(matrix: CoxeterMatrix, mask: int) -> int:
    result = matrix.full_mask & ~mask
    for i in iter_bits(mask):
        result &= matrix.commute_mask(i)
        if not result:
            break
    return result


# ============================================================================
# Public operations
# ============================================================================

def induced(matrix: CoxeterMatrix, subset: SubsetLike) -> CoxeterMatrix:
    """Restrict the system to J, re-indexing the kept generators in increasing order"""
    genset = as_genset(matrix, subset)
    if genset.mask == matrix.full_mask:
        return matrix
    keep = genset.members
    labels = tuple(tuple(matrix.labels[i][j] for j in keep) for i in keep)
    return CoxeterMatrix(
        n=len(keep),
        labels=labels,
        names=tuple(matrix.names[i] for i in keep),
    )


def components(matrix: CoxeterMatrix, subset: SubsetLike) -> List[GenSet]:
    """Irreducible components of J, sorted by smallest member"""
    genset = as_genset(matrix, subset)
    return [GenSet(m) for m in component_masks(matrix, genset.mask)]


def perp(matrix: CoxeterMatrix, subset: SubsetLike) -> GenSet:
    """Generators outside J with order 2 against every member of J"""
    genset = as_genset(matrix, subset)
    return GenSet(perp_mask(matrix, genset.mask))


def commutes(matrix: CoxeterMatrix, first: SubsetLike, second: SubsetLike) -> bool:
    """True iff the sets are disjoint and every cross pair has order 2"""
    a = as_genset(matrix, first)
    b = as_genset(matrix, second)
    return b.mask & ~perp_mask(matrix, a.mask) == 0
