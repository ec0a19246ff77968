"""
Relative hyperbolicity decisions

Everything here works on types of parabolic subgroups (subsets of S):

- cores(): the inclusion-maximal coverage obligations of (RH1)
- verify_family(): checks (RH1) and (RH2) for a proposed collection of types
- minimal_family(): merges cores until pairwise intersections are spherical
- decide(): hyperbolic / relatively hyperbolic / not relatively hyperbolic
- moussong_hyperbolic(), maxparab(), isolated_flats(), lemma_aff_equivalence()
"""

import logging
import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .classify import (
    SubsetIndex,
    irreducible_affine_masks,
    maximal_euclidean_masks,
    minimal_hyperbolic_masks,
    subset_index,
)
from .decorators import log_execution_time
from .diagram import (
    CoxeterMatrix,
    GenSet,
    SubsetLike,
    as_genset,
    canonical,
    perp_mask,
)
from .errors import HypothesisFailedError, IndexOutOfRangeError

logger = logging.getLogger("coxrel.relhyp")

# Affine obligations of (RH1) only count irreducible affine sets of this rank or more
AFFINE_CORE_MIN_RANK = 3


# ============================================================================
# Data Classes
# ============================================================================

@dataclass(frozen=True)
class AffineCore:
    """Irreducible affine subset of rank >= 3"""
    subset: GenSet


@dataclass(frozen=True)
class PairCore:
    """Two commuting irreducible non-spherical subsets"""
    first: GenSet
    second: GenSet


@dataclass(frozen=True)
class Core:
    """A forced coverage obligation of (RH1)"""
    members: GenSet
    provenance: Union[AffineCore, PairCore]

    @property
    def is_affine(self) -> bool:
        return isinstance(self.provenance, AffineCore)


@dataclass(frozen=True)
class CoverageCheck:
    core: Core
    witness: Optional[GenSet]

    @property
    def covered(self) -> bool:
        return self.witness is not None


@dataclass(frozen=True)
class IntersectionCheck:
    first: GenSet
    second: GenSet
    intersection: GenSet
    spherical: bool


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of checking (RH1) and (RH2) for one collection of types"""
    rh1: bool
    rh2: bool
    coverage: Tuple[CoverageCheck, ...] = ()
    intersections: Tuple[IntersectionCheck, ...] = ()
    violating_core: Optional[Core] = None
    violating_pair: Optional[Tuple[GenSet, GenSet]] = None

    @property
    def passed(self) -> bool:
        return self.rh1 and self.rh2


@dataclass(frozen=True)
class PeripheralFamily:
    """A collection of types with optional verification metadata"""
    classes: Tuple[GenSet, ...] = ()
    verification: Optional[VerificationReport] = None

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self) -> Iterator[GenSet]:
        return iter(self.classes)

    def one_based(self) -> List[Tuple[int, ...]]:
        return [c.one_based() for c in self.classes]


class DecisionStatus(Enum):
    HYPERBOLIC = "Hyperbolic"
    RELATIVELY_HYPERBOLIC_PROPER = "RelativelyHyperbolicProper"
    NOT_RELATIVELY_HYPERBOLIC = "NotRelativelyHyperbolic"


@dataclass(frozen=True)
class Decision:
    status: DecisionStatus
    minimal_family: PeripheralFamily
    details: Tuple[str, ...] = ()

    @property
    def family(self) -> Optional[PeripheralFamily]:
        """The peripheral family when the verdict is proper relative hyperbolicity"""
        if self.status is DecisionStatus.RELATIVELY_HYPERBOLIC_PROPER:
            return self.minimal_family
        return None


ISOLATED_FLATS_VIA = "minimal-hyperbolic-perp-spherical"


@dataclass(frozen=True)
class IsolatedFlatsResult:
    holds: bool
    via: str = ISOLATED_FLATS_VIA
    family: PeripheralFamily = field(default_factory=PeripheralFamily)
    witness: Optional[GenSet] = None


@dataclass(frozen=True)
class LemmaAffResult:
    """
    The three equivalent conditions on Euclidean subsets

    maximal_euclidean_valid: maximal Euclidean subsets satisfy (RH1) and (RH2)
    commuting_pairs_euclidean: commuting non-spherical pairs span Euclidean sets
    minimal_hyperbolic_perps_spherical: every minimal hyperbolic J has spherical J^perp
    """
    maximal_euclidean_valid: bool
    commuting_pairs_euclidean: bool
    minimal_hyperbolic_perps_spherical: bool
    family_report: Optional[VerificationReport] = None
    pair_witness: Optional[Tuple[GenSet, GenSet]] = None
    perp_witness: Optional[GenSet] = None

    def as_tuple(self) -> Tuple[bool, bool, bool]:
        return (
            self.maximal_euclidean_valid,
            self.commuting_pairs_euclidean,
            self.minimal_hyperbolic_perps_spherical,
        )

    @property
    def agree(self) -> bool:
        return len(set(self.as_tuple())) == 1


# ============================================================================
# Perp-driven enumerations
# ============================================================================

def _perp_is_nonspherical(matrix: CoxeterMatrix, index: SubsetIndex):
    def accept(mask: int) -> bool:
        p = perp_mask(matrix, mask)
        return p.bit_count() >= 2 and not index.is_spherical(p)
    return accept


def connected_with_nonspherical_perp(matrix: CoxeterMatrix) -> Iterator[int]:
    """Connected J whose perp is non-spherical; the condition is inherited by subsets"""
    index = subset_index(matrix)
    return index.grow_connected(_perp_is_nonspherical(matrix, index))


def subsets_with_nonspherical_perp(matrix: CoxeterMatrix) -> Iterator[int]:
    """Every nonempty J, connected or not, whose perp is non-spherical"""
    accept = _perp_is_nonspherical(matrix, subset_index(matrix))
    stack = [(0, 0)]
    while stack:
        mask, start = stack.pop()
        if mask:
            yield mask
        for i in range(start, matrix.n):
            grown = mask | (1 << i)
            if accept(grown):
                stack.append((grown, i + 1))


# ============================================================================
# Moussong's criterion
# ============================================================================

def moussong_hyperbolic(matrix: CoxeterMatrix, restrict_to_irreducible: bool = True) -> bool:
    """
    True iff W is Gromov hyperbolic

    No irreducible affine subset of rank >= 3, and J^perp spherical for every
    non-spherical J. With restrict_to_irreducible the second condition only
    ranges over connected J, which gives the same answer.
    """
    if irreducible_affine_masks(matrix, AFFINE_CORE_MIN_RANK):
        return False
    index = subset_index(matrix)
    candidates = (
        connected_with_nonspherical_perp(matrix)
        if restrict_to_irreducible
        else subsets_with_nonspherical_perp(matrix)
    )
    return all(index.is_spherical(mask) for mask in candidates)


# ============================================================================
# Cores
# ============================================================================

def _candidate_cores(matrix: CoxeterMatrix) -> List[Core]:
    index = subset_index(matrix)
    found = {}
    for mask in irreducible_affine_masks(matrix, AFFINE_CORE_MIN_RANK):
        found[mask] = Core(GenSet(mask), AffineCore(GenSet(mask)))

    for first in connected_with_nonspherical_perp(matrix):
        if index.is_spherical(first):
            continue
        for second in index.components(perp_mask(matrix, first)):
            if index.is_spherical(second):
                continue
            union = first | second
            if union not in found:
                a, b = sorted((GenSet(first), GenSet(second)), key=lambda g: g.sort_key)
                found[union] = Core(GenSet(union), PairCore(a, b))
    return list(found.values())


def _maximal(cores: Iterable[Core]) -> List[Core]:
    ordered = sorted(cores, key=lambda c: -len(c.members))
    kept: List[Core] = []
    for core in ordered:
        if not any(core.members.issubset(other.members) for other in kept):
            kept.append(core)
    return sorted(kept, key=lambda c: c.members.sort_key)


def cores(matrix: CoxeterMatrix, maximal_only: bool = True) -> List[Core]:
    """
    Coverage obligations of (RH1)

    Every irreducible affine subset of rank >= 3 and every union of two
    commuting irreducible non-spherical subsets lies inside one of the
    returned cores. With maximal_only=False the list also keeps every
    non-maximal candidate (one per distinct member set).
    """
    candidates = _candidate_cores(matrix)
    if not maximal_only:
        return sorted(candidates, key=lambda c: c.members.sort_key)
    result = _maximal(candidates)
    logger.debug(f"{len(candidates)} candidate cores, {len(result)} maximal")
    return result


# ============================================================================
# Verification
# ============================================================================

def _normalize_classes(matrix: CoxeterMatrix, classes: Iterable[SubsetLike]) -> List[GenSet]:
    return canonical(as_genset(matrix, c) for c in classes)


def _verify(matrix: CoxeterMatrix, classes: Sequence[GenSet], core_list: Sequence[Core]) -> VerificationReport:
    index = subset_index(matrix)
    coverage = tuple(
        CoverageCheck(core, next((k for k in classes if core.members.issubset(k)), None))
        for core in core_list
    )
    uncovered = [check.core for check in coverage if not check.covered]
    # affine obligations are reported before pair obligations
    uncovered.sort(key=lambda c: (not c.is_affine, c.members.sort_key))

    intersections = []
    for a, first in enumerate(classes):
        for second in classes[a + 1:]:
            meet = first & second
            intersections.append(
                IntersectionCheck(first, second, meet, index.is_spherical(meet.mask))
            )
    violating = next(((c.first, c.second) for c in intersections if not c.spherical), None)

    return VerificationReport(
        rh1=not uncovered,
        rh2=violating is None,
        coverage=coverage,
        intersections=tuple(intersections),
        violating_core=uncovered[0] if uncovered else None,
        violating_pair=violating,
    )


def verify_family(matrix: CoxeterMatrix, classes: Iterable[SubsetLike]) -> PeripheralFamily:
    """
    Check (RH1) and (RH2) for a collection of types

    Duplicate classes are collapsed; the returned family lists the classes in
    canonical order with the verification report attached.
    """
    normalized = _normalize_classes(matrix, classes)
    report = _verify(matrix, normalized, cores(matrix))
    logger.debug(f"Verified {len(normalized)} classes: RH1={report.rh1} RH2={report.rh2}")
    return PeripheralFamily(tuple(normalized), report)


# ============================================================================
# Minimal family
# ============================================================================

def merge_cores(
    matrix: CoxeterMatrix,
    blocks: Iterable[int],
    rng: Optional[random.Random] = None,
    trail: Optional[List[str]] = None,
) -> List[int]:
    """
    Merge blocks until every pairwise intersection is spherical

    Blocks contained in another block are dropped. Without rng the first
    offending pair is merged; with rng a random offending pair is. The fixed
    point does not depend on the choice.
    """
    index = subset_index(matrix)
    current = list(dict.fromkeys(blocks))
    while True:
        current = [
            b for b in current
            if not any(b != c and b & ~c == 0 for c in current)
        ]
        offending = [
            (i, j)
            for i in range(len(current))
            for j in range(i + 1, len(current))
            if not index.is_spherical(current[i] & current[j])
        ]
        if not offending:
            break
        i, j = rng.choice(offending) if rng is not None else offending[0]
        first, second = current[i], current[j]
        if trail is not None:
            trail.append(
                f"merged {matrix.describe(GenSet(first))} and {matrix.describe(GenSet(second))}: "
                f"intersection {matrix.describe(GenSet(first & second))} is not spherical"
            )
        current = [b for k, b in enumerate(current) if k not in (i, j)]
        current.append(first | second)
        current = list(dict.fromkeys(current))
    return sorted(current, key=lambda m: GenSet(m).sort_key)


def _minimal_family(matrix: CoxeterMatrix, trail: Optional[List[str]] = None) -> PeripheralFamily:
    core_list = cores(matrix)
    if trail is not None:
        trail.append(f"{len(core_list)} maximal cores")
    merged = merge_cores(matrix, (c.members.mask for c in core_list), trail=trail)
    classes = tuple(GenSet(m) for m in merged)
    return PeripheralFamily(classes, _verify(matrix, classes, core_list))


def minimal_family(matrix: CoxeterMatrix) -> PeripheralFamily:
    """
    Canonical peripheral family: the merge fixed point of the maximal cores

    Any valid collection of types must put two cores with a non-spherical
    intersection inside one class, so every class here lies inside a class of
    every valid collection.
    """
    return _minimal_family(matrix)


@log_execution_time
def decide(matrix: CoxeterMatrix) -> Decision:
    trail: List[str] = []
    family = _minimal_family(matrix, trail)
    full = matrix.full_set()
    if not family.classes:
        status = DecisionStatus.HYPERBOLIC
        trail.append("no cores: W is hyperbolic")
    elif full in family.classes:
        status = DecisionStatus.NOT_RELATIVELY_HYPERBOLIC
        trail.append(f"class {matrix.describe(full)} equals S")
    else:
        status = DecisionStatus.RELATIVELY_HYPERBOLIC_PROPER
        trail.append(f"{len(family.classes)} proper classes")
    logger.info(f"decide: {status.value} with {len(family.classes)} classes")
    return Decision(status=status, minimal_family=family, details=tuple(trail))


# ============================================================================
# Constructions from the corollaries
# ============================================================================

def maxparab(matrix: CoxeterMatrix, s0: int) -> PeripheralFamily:
    """
    Family {S - {s0}} plus the affine subsets containing s0

    Requires {s0}^perp spherical. An affine subset containing s0 is then
    irreducible (any other component would sit inside {s0}^perp), so the
    affine sets are the irreducible affine sets of rank >= 3 through s0.
    """
    if not 0 <= s0 < matrix.n:
        raise IndexOutOfRangeError(f"Generator index {s0} out of range for {matrix.n} generators")
    index = subset_index(matrix)
    bit = 1 << s0
    orthogonal = perp_mask(matrix, bit)
    if not index.is_spherical(orthogonal):
        raise HypothesisFailedError(
            f"{{{matrix.names[s0]}}}^perp = {matrix.describe(GenSet(orthogonal))} is not spherical"
        )
    classes = [matrix.full_mask & ~bit]
    classes += [
        m for m in irreducible_affine_masks(matrix, AFFINE_CORE_MIN_RANK) if m & bit
    ]
    return verify_family(matrix, (GenSet(m) for m in classes))


@log_execution_time
def isolated_flats(matrix: CoxeterMatrix) -> IsolatedFlatsResult:
    """
    Isolated flats criterion: J^perp spherical for each minimal hyperbolic J

    When it holds, the family is the non-spherical maximal Euclidean subsets.
    """
    index = subset_index(matrix)
    for mask in sorted(minimal_hyperbolic_masks(matrix), key=lambda m: GenSet(m).sort_key):
        if not index.is_spherical(perp_mask(matrix, mask)):
            logger.debug(f"isolated flats fail at {matrix.describe(GenSet(mask))}")
            return IsolatedFlatsResult(holds=False, witness=GenSet(mask))

    classes = tuple(canonical(
        GenSet(m) for m in maximal_euclidean_masks(matrix) if not index.is_spherical(m)
    ))
    return IsolatedFlatsResult(holds=True, family=PeripheralFamily(classes))


def lemma_aff_equivalence(matrix: CoxeterMatrix) -> LemmaAffResult:
    """Evaluate the three Euclidean-subset conditions independently"""
    index = subset_index(matrix)

    euclidean = _normalize_classes(matrix, (GenSet(m) for m in maximal_euclidean_masks(matrix)))
    report = _verify(matrix, euclidean, cores(matrix))

    # A commuting pair spans a non-Euclidean set iff it can be chosen as (J1, J1^perp)
    pair_witness = None
    for first in subsets_with_nonspherical_perp(matrix):
        if index.is_spherical(first):
            continue
        second = perp_mask(matrix, first)
        if not (index.is_euclidean(first) and index.is_euclidean(second)):
            pair_witness = (GenSet(first), GenSet(second))
            break

    perp_witness = None
    for mask in sorted(minimal_hyperbolic_masks(matrix), key=lambda m: GenSet(m).sort_key):
        if not index.is_spherical(perp_mask(matrix, mask)):
            perp_witness = GenSet(mask)
            break

    return LemmaAffResult(
        maximal_euclidean_valid=report.passed,
        commuting_pairs_euclidean=pair_witness is None,
        minimal_hyperbolic_perps_spherical=perp_witness is None,
        family_report=report,
        pair_witness=pair_witness,
        perp_witness=perp_witness,
    )
