"""
Subset classification

Decides whether a subset J of generators is spherical, irreducible affine,
affine, Euclidean or minimal hyperbolic by matching its components against
the diagram catalog, and enumerates the distinguished subset families.
The Gram (cosine) matrix test is kept as an independent numeric cross-check.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, Dict, Iterator, List, Optional, Set, Tuple

import numpy as np

from .catalog import CatalogMatch, DiagramKind, match_component
from .config import get_settings
from .diagram import (
    CoxeterMatrix,
    GenSet,
    SubsetLike,
    as_genset,
    canonical,
    component_masks,
    iter_bits,
)
from .errors import EmptySubsetError, InternalInvariantError, ValidationError

logger = logging.getLogger("coxrel.classify")


@dataclass(frozen=True)
class SubsetClass:
    """Classification verdict for one subset of generators"""
    subset: GenSet
    spherical: bool
    irreducible: bool
    irreducible_affine: bool
    affine: bool
    euclidean: bool
    minimal_hyperbolic: bool
    matched_components: Tuple[Tuple[GenSet, str], ...] = ()

    @property
    def component_names(self) -> List[str]:
        return [name for _, name in self.matched_components]


class NumericKind(Enum):
    """Sign pattern of the cosine matrix spectrum"""
    POSITIVE_DEFINITE = "PositiveDefinite"
    PSD_NULLITY = "PositiveSemidefiniteNullity"
    INDEFINITE = "Indefinite"


@dataclass(frozen=True)
class NumericVerdict:
    kind: NumericKind
    nullity: int
    min_eigen_estimate: float
    tolerance: float

    def describe(self) -> str:
        if self.kind is NumericKind.PSD_NULLITY:
            return f"{self.kind.value}({self.nullity})"
        return self.kind.value


# ============================================================================
# Cached per-matrix index
# ============================================================================

class SubsetIndex:
    """
    Memoized classification of the subsets of one matrix

    Results are keyed by bit mask. Entries are written once and never change,
    so sharing an index between threads only risks recomputing a value.
    """

    def __init__(self, matrix: CoxeterMatrix):
        self.matrix = matrix
        self._components: Dict[int, Tuple[int, ...]] = {}
        self._matches: Dict[int, CatalogMatch] = {}
        self._spherical: Dict[int, bool] = {}
        self._euclidean: Dict[int, bool] = {}

    def components(self, mask: int) -> Tuple[int, ...]:
        found = self._components.get(mask)
        if found is None:
            found = tuple(component_masks(self.matrix, mask))
            self._components[mask] = found
        return found

    def match(self, component: int) -> CatalogMatch:
        found = self._matches.get(component)
        if found is None:
            found = match_component(self.matrix, component)
            self._matches[component] = found
        return found

    def is_connected(self, mask: int) -> bool:
        return len(self.components(mask)) == 1

    def is_spherical(self, mask: int) -> bool:
        found = self._spherical.get(mask)
        if found is None:
            found = all(self.match(c).finite for c in self.components(mask))
            self._spherical[mask] = found
        return found

    def is_euclidean(self, mask: int, remember: bool = True) -> bool:
        """Every component spherical or affine; remember=False skips the mask memo"""
        found = self._euclidean.get(mask)
        if found is None:
            parts = self.components(mask) if remember else component_masks(self.matrix, mask)
            found = all(self.match(c).kind is not DiagramKind.INDEFINITE for c in parts)
            if remember:
                self._euclidean[mask] = found
        return found

    def is_irreducible_affine(self, mask: int) -> bool:
        parts = self.components(mask)
        return len(parts) == 1 and self.match(parts[0]).affine

    def is_affine(self, mask: int) -> bool:
        parts = self.components(mask)
        return bool(parts) and all(self.match(c).affine for c in parts)

    def is_minimal_hyperbolic(self, mask: int) -> bool:
        """Connected, non-Euclidean, and every maximal proper subset Euclidean"""
        parts = self.components(mask)
        if len(parts) != 1 or self.match(mask).kind is not DiagramKind.INDEFINITE:
            return False
        return all(self.is_euclidean(mask & ~(1 << i)) for i in iter_bits(mask))

    def classify(self, mask: int) -> SubsetClass:
        parts = self.components(mask)
        matches = [self.match(c) for c in parts]
        return SubsetClass(
            subset=GenSet(mask),
            spherical=self.is_spherical(mask),
            irreducible=len(parts) == 1,
            irreducible_affine=self.is_irreducible_affine(mask),
            affine=self.is_affine(mask),
            euclidean=self.is_euclidean(mask),
            minimal_hyperbolic=self.is_minimal_hyperbolic(mask),
            matched_components=tuple((GenSet(c), m.name) for c, m in zip(parts, matches)),
        )

    def grow_connected(
        self,
        accept: Callable[[int], bool],
        max_size: Optional[int] = None,
    ) -> Iterator[int]:
        """
        Yield every connected subset accepted by the predicate

        The predicate must be inherited by some connected subset one smaller
        (true for sphericity and for connected Euclidean sets), so growing
        accepted sets one neighbour at a time reaches all of them.
        """
        matrix = self.matrix
        stack = [1 << i for i in range(matrix.n) if accept(1 << i)]
        visited: Set[int] = set(stack)
        while stack:
            current = stack.pop()
            yield current
            if max_size is not None and current.bit_count() >= max_size:
                continue
            frontier = 0
            for i in iter_bits(current):
                frontier |= matrix.adjacency_mask(i)
            frontier &= ~current
            for j in iter_bits(frontier):
                grown = current | (1 << j)
                if grown not in visited:
                    visited.add(grown)
                    if accept(grown):
                        stack.append(grown)

    def neighbourhood(self, mask: int) -> int:
        result = 0
        for i in iter_bits(mask):
            result |= self.matrix.adjacency_mask(i)
        return result & ~mask


@lru_cache(maxsize=64)
def subset_index(matrix: CoxeterMatrix) -> SubsetIndex:
    return SubsetIndex(matrix)


# ============================================================================
# Numeric oracle
# ============================================================================

def cosine_matrix(matrix: CoxeterMatrix, subset: SubsetLike) -> np.ndarray:
    """B[s][t] = -cos(pi / m(s, t)); the diagonal is 1 and infinity gives -1"""
    genset = as_genset(matrix, subset)
    keep = genset.members
    orders = np.array(
        [[float(matrix.labels[i][j]) for j in keep] for i in keep],
        dtype=np.float64,
    ).reshape(len(keep), len(keep))
    return -np.cos(np.pi / orders)


def numeric_type(
    matrix: CoxeterMatrix,
    subset: SubsetLike,
    tol: Optional[float] = None,
) -> NumericVerdict:
    """Classify the cosine matrix of J by the signs of its eigenvalues"""
    genset = as_genset(matrix, subset)
    if not genset:
        raise EmptySubsetError("numeric_type needs a nonempty subset")
    tolerance = get_settings().numeric_tolerance if tol is None else tol
    if tolerance <= 0:
        raise ValidationError(f"Tolerance must be positive, got {tolerance}")

    eigenvalues = np.linalg.eigvalsh(cosine_matrix(matrix, genset))
    smallest = float(eigenvalues.min())
    near_zero = int(np.count_nonzero(np.abs(eigenvalues) <= tolerance))
    if smallest < -tolerance:
        kind = NumericKind.INDEFINITE
    elif near_zero:
        kind = NumericKind.PSD_NULLITY
    else:
        kind = NumericKind.POSITIVE_DEFINITE
    return NumericVerdict(kind=kind, nullity=near_zero, min_eigen_estimate=smallest, tolerance=tolerance)


# ============================================================================
# Classification
# ============================================================================

def classify_subset(matrix: CoxeterMatrix, subset: SubsetLike) -> SubsetClass:
    genset = as_genset(matrix, subset)
    return subset_index(matrix).classify(genset.mask)


def is_spherical(matrix: CoxeterMatrix, subset: SubsetLike) -> bool:
    return subset_index(matrix).is_spherical(as_genset(matrix, subset).mask)


def is_euclidean(matrix: CoxeterMatrix, subset: SubsetLike) -> bool:
    return subset_index(matrix).is_euclidean(as_genset(matrix, subset).mask)


# ============================================================================
# Enumerations
# ============================================================================

def spherical_masks(matrix: CoxeterMatrix) -> List[int]:
    """All spherical subsets, the empty set included"""
    index = subset_index(matrix)
    found = []
    stack = [(0, 0)]
    while stack:
        mask, start = stack.pop()
        found.append(mask)
        for i in range(start, matrix.n):
            grown = mask | (1 << i)
            if index.is_spherical(grown):
                stack.append((grown, i + 1))
    return found


def spherical_subsets(matrix: CoxeterMatrix) -> List[GenSet]:
    result = canonical(GenSet(m) for m in spherical_masks(matrix))
    logger.debug(f"{len(result)} spherical subsets")
    return result


def irreducible_affine_masks(matrix: CoxeterMatrix, min_rank: int = 2) -> List[int]:
    index = subset_index(matrix)
    found: Set[int] = set()
    for base in index.grow_connected(index.is_spherical):
        for j in iter_bits(index.neighbourhood(base)):
            grown = base | (1 << j)
            if grown.bit_count() >= min_rank and index.is_irreducible_affine(grown):
                found.add(grown)
    return list(found)


def irreducible_affine_subsets(matrix: CoxeterMatrix, min_rank: int = 2) -> List[GenSet]:
    """Irreducible affine subsets with at least min_rank generators"""
    result = canonical(GenSet(m) for m in irreducible_affine_masks(matrix, min_rank))
    logger.debug(f"{len(result)} irreducible affine subsets of rank >= {min_rank}")
    return result


def _maximal_euclidean_within(index: SubsetIndex, component: int) -> List[int]:
    """Maximal Euclidean subsets of one connected component of the diagram"""
    if index.is_euclidean(component):
        return [component]
    bits = list(iter_bits(component))
    found = []
    stack = [(0, 0)]
    while stack:
        mask, start = stack.pop()
        for k in range(start, len(bits)):
            grown = mask | (1 << bits[k])
            if index.is_euclidean(grown, remember=False):
                stack.append((grown, k + 1))
        outside = component & ~mask
        if not any(index.is_euclidean(mask | (1 << i), remember=False) for i in iter_bits(outside)):
            found.append(mask)
    return found


def maximal_euclidean_masks(matrix: CoxeterMatrix) -> List[int]:
    # X is Euclidean iff it meets every component of S in a Euclidean set
    index = subset_index(matrix)
    found = [0]
    for component in index.components(matrix.full_mask):
        within = _maximal_euclidean_within(index, component)
        found = [mask | part for mask in found for part in within]
    return found


def maximal_euclidean_subsets(matrix: CoxeterMatrix) -> List[GenSet]:
    """Inclusion-maximal Euclidean subsets"""
    result = canonical(GenSet(m) for m in maximal_euclidean_masks(matrix))
    logger.debug(f"{len(result)} maximal Euclidean subsets")
    return result


def minimal_hyperbolic_masks(matrix: CoxeterMatrix, bound: Optional[int] = None) -> List[int]:
    index = subset_index(matrix)
    bound = get_settings().minimal_hyperbolic_bound if bound is None else bound
    found: Set[int] = set()
    for base in index.grow_connected(index.is_euclidean, max_size=bound):
        for j in iter_bits(index.neighbourhood(base)):
            candidate = base | (1 << j)
            if candidate in found or not index.is_minimal_hyperbolic(candidate):
                continue
            if candidate.bit_count() > bound:
                raise InternalInvariantError(
                    f"Minimal hyperbolic subset {GenSet(candidate).one_based()} has more "
                    f"than {bound} generators"
                )
            found.add(candidate)
    return list(found)


def minimal_hyperbolic_subsets(matrix: CoxeterMatrix) -> List[GenSet]:
    """
    Minimal hyperbolic subsets

    Connected Euclidean sets are grown up to the configured bound and each is
    extended by one neighbour; a minimal hyperbolic set one larger than the
    bound raises InternalInvariantError.
    """
    result = canonical(GenSet(m) for m in minimal_hyperbolic_masks(matrix))
    logger.debug(f"{len(result)} minimal hyperbolic subsets")
    return result

