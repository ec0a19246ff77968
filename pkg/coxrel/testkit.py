"""
Instance generators and brute-force oracles

Used by the property and oracle test suites. The oracles here deliberately
avoid the shortcuts of the main algorithms: obligations are enumerated over
all subsets, and candidate peripheral families over all set partitions of
the maximal obligations.

Partition reduction: if a family T satisfies (RH1) and (RH2), assign every
maximal obligation to one class of T that contains it and replace each class
by the union of the obligations assigned to it. Classes only shrink, so
pairwise intersections only shrink and stay spherical, and every obligation
is still covered. Hence a valid family exists iff some partition of the
maximal obligations has block unions with pairwise spherical intersections,
and a proper one exists iff such a partition has no block union equal to S.
"""

import itertools
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Union

import numpy as np
from pydantic import BaseModel, Field, field_validator

from .classify import subset_index
from .config import get_settings
from .decorators import log_execution_time
from .diagram import INFINITY, MAX_GENERATORS, CoxeterMatrix, GenSet, Label, canonical, new_coxeter_matrix
from .errors import TooLargeError, TooManyCoresError
from .inputs import render_txt
from .racg import SimpleGraph

logger = logging.getLogger("coxrel.testkit")

LABELS: Dict[str, Label] = {"2": 2, "3": 3, "4": 4, "5": 5, "6": 6, "inf": INFINITY}
CORPUS_LIMIT = 10 ** 7


class GeneratorConfig(BaseModel):
    """Random matrix recipe: n generators, label weights over LABELS, 64-bit seed"""
    n: int = Field(ge=1)
    label_weights: Dict[str, float] = Field(default_factory=lambda: {k: 1.0 for k in LABELS})
    seed: int = Field(default=0, ge=0, lt=2 ** 64)

    @field_validator("label_weights", mode="before")
    @classmethod
    def _normalize_keys(cls, value):
        normalized = {}
        for key, weight in dict(value).items():
            name = "inf" if key == INFINITY or str(key).lower() in ("inf", "infinity", "∞") else str(key)
            if name not in LABELS:
                raise ValueError(f"Label {key!r} is not one of {sorted(LABELS)}")
            normalized[name] = weight
        return normalized

    @field_validator("label_weights")
    @classmethod
    def _check_weights(cls, value: Dict[str, float]) -> Dict[str, float]:
        if any(w < 0 for w in value.values()):
            raise ValueError("Label weights must be nonnegative")
        if not any(w > 0 for w in value.values()):
            raise ValueError("At least one label weight must be positive")
        return value

    def probabilities(self) -> np.ndarray:
        weights = np.array([self.label_weights.get(k, 0.0) for k in LABELS], dtype=np.float64)
        return weights / weights.sum()


# ============================================================================
# Generators
# ============================================================================

def random_matrix(cfg: GeneratorConfig) -> CoxeterMatrix:
    """Deterministic in cfg.seed: one draw per unordered pair, pairs in lexicographic order"""
    if cfg.n > MAX_GENERATORS:
        raise TooLargeError(f"{cfg.n} generators exceed the supported maximum of {MAX_GENERATORS}")
    rng = np.random.default_rng(cfg.seed)
    choices = list(LABELS.values())
    pairs = list(itertools.combinations(range(cfg.n), 2))
    draws = rng.choice(len(choices), size=len(pairs), p=cfg.probabilities())
    table: List[List[Label]] = [[1 if i == j else 2 for j in range(cfg.n)] for i in range(cfg.n)]
    for (i, j), k in zip(pairs, draws):
        table[i][j] = table[j][i] = choices[int(k)]
    return new_coxeter_matrix(cfg.n, table)


def exhaustive_corpus(n: int, labels: Sequence[Label]) -> Iterator[CoxeterMatrix]:
    """Every matrix on n generators with off-diagonal labels from the list"""
    if n > MAX_GENERATORS:
        raise TooLargeError(f"{n} generators exceed the supported maximum of {MAX_GENERATORS}")
    pairs = list(itertools.combinations(range(n), 2))
    if len(labels) ** len(pairs) > CORPUS_LIMIT:
        raise TooLargeError(
            f"{len(labels)}^{len(pairs)} matrices exceed the corpus limit of {CORPUS_LIMIT}"
        )
    for assignment in itertools.product(labels, repeat=len(pairs)):
        table: List[List[Label]] = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
        for (i, j), m in zip(pairs, assignment):
            table[i][j] = table[j][i] = m
        yield new_coxeter_matrix(n, table)


def random_graph(n: int, p: float, seed: int) -> SimpleGraph:
    rng = np.random.default_rng(seed)
    pairs = list(itertools.combinations(range(n), 2))
    keep = rng.random(len(pairs)) < p
    return SimpleGraph(n, frozenset(pair for pair, k in zip(pairs, keep) if k))


def all_graphs(n: int) -> Iterator[SimpleGraph]:
    """Every simple graph on n labelled vertices"""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield SimpleGraph(n, frozenset(p for b, p in enumerate(pairs) if mask >> b & 1))


def pin_fixture(cfg: GeneratorConfig, path: Union[str, Path]) -> Path:
    """Write random_matrix(cfg) in the TXT input format"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_txt(random_matrix(cfg)), encoding="utf-8")
    return path


# ============================================================================
# Oracles
# ============================================================================

def brute_force_obligations(matrix: CoxeterMatrix) -> List[GenSet]:
    """
    Every (RH1) obligation, straight from the definitions

    Irreducible affine subsets of rank >= 3, and unions J1 | J2 over all
    disjoint commuting pairs of irreducible non-spherical subsets.
    """
    index = subset_index(matrix)
    affine, irreducible_infinite = [], []
    for mask in range(1, 1 << matrix.n):
        if index.is_irreducible_affine(mask) and mask.bit_count() >= 3:
            affine.append(mask)
        if index.is_connected(mask) and not index.is_spherical(mask):
            irreducible_infinite.append(mask)

    found = set(affine)
    for a, first in enumerate(irreducible_infinite):
        for second in irreducible_infinite[a + 1:]:
            if first & second:
                continue
            if all(
                matrix.label(i, j) == 2
                for i in GenSet(first)
                for j in GenSet(second)
            ):
                found.add(first | second)
    return canonical(GenSet(m) for m in found)


def maximal_sets(sets: Sequence[GenSet]) -> List[GenSet]:
    return canonical(
        s for s in sets if not any(s != t and s.issubset(t) for t in sets)
    )


@dataclass(frozen=True)
class OracleResult:
    exists_proper_family: bool
    finest: List[GenSet]
    valid_partitions: int


@log_execution_time
def brute_force_decide(matrix: CoxeterMatrix, max_cores: Optional[int] = None) -> OracleResult:
    """
    Search all set partitions of the maximal obligations

    Returns whether a valid partition with no block equal to S exists, and
    the block unions of the finest valid partition (the one with the most
    blocks; the coarsest is always the single block).
    """
    limit = get_settings().max_oracle_cores if max_cores is None else max_cores
    cores = [c.mask for c in maximal_sets(brute_force_obligations(matrix))]
    if len(cores) > limit:
        raise TooManyCoresError(f"{len(cores)} maximal cores exceed the oracle limit of {limit}")
    if not cores:
        return OracleResult(True, [], 1)

    index = subset_index(matrix)
    full = matrix.full_mask
    best: List[int] = []
    proper = False
    count = 0
    blocks: List[int] = []

    def compatible(position: int) -> bool:
        return all(
            index.is_spherical(blocks[position] & blocks[other])
            for other in range(len(blocks))
            if other != position
        )

    def assign(i: int):
        nonlocal best, proper, count
        if i == len(cores):
            count += 1
            if len(blocks) > len(best):
                best = list(blocks)
            if full not in blocks:
                proper = True
            return
        for position in range(len(blocks)):
            saved = blocks[position]
            blocks[position] = saved | cores[i]
            # block unions only grow, so an incompatible prefix stays incompatible
            if compatible(position):
                assign(i + 1)
            blocks[position] = saved
        blocks.append(cores[i])
        if compatible(len(blocks) - 1):
            assign(i + 1)
        blocks.pop()

    assign(0)
    logger.debug(f"{len(cores)} cores, {count} valid partitions")
    return OracleResult(proper, canonical(GenSet(m) for m in best), count)
