"""
Finite and affine Coxeter diagram catalog

Canonical matrices for every connected finite and affine type, the chain
family chain4(n), and the exact matcher that names a connected diagram.
Matching is purely combinatorial (shape of the diagram plus labels), so no
tolerance is involved.
"""

import logging
import re
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Sequence, Tuple

from .diagram import INFINITY, CoxeterMatrix, Label, iter_bits
from .errors import ValidationError

logger = logging.getLogger("coxrel.catalog")

TILDE = "̃"
INDEFINITE = "INDEFINITE"


class DiagramKind(Enum):
    """Type of a connected Coxeter diagram"""
    FINITE = "finite"
    AFFINE = "affine"
    INDEFINITE = "indefinite"


@dataclass(frozen=True)
class CatalogMatch:
    """Catalog name and kind of a connected diagram"""
    name: str
    kind: DiagramKind

    @property
    def finite(self) -> bool:
        return self.kind is DiagramKind.FINITE

    @property
    def affine(self) -> bool:
        return self.kind is DiagramKind.AFFINE


def affine_name(letter: str, rank: int) -> str:
    """'C', 2 -> 'C̃2'"""
    return f"{letter}{TILDE}{rank}"


def _finite(name: str) -> CatalogMatch:
    return CatalogMatch(name, DiagramKind.FINITE)


def _affine(letter: str, rank: int) -> CatalogMatch:
    return CatalogMatch(affine_name(letter, rank), DiagramKind.AFFINE)


UNMATCHED = CatalogMatch(INDEFINITE, DiagramKind.INDEFINITE)

# Branched trees with all labels 3, keyed by sorted arm lengths
_BRANCHED = {
    (1, 2, 2): _finite("E6"),
    (1, 2, 3): _finite("E7"),
    (1, 2, 4): _finite("E8"),
    (2, 2, 2): _affine("E", 6),
    (1, 3, 3): _affine("E", 7),
    (1, 2, 5): _affine("E", 8),
}

# Paths whose label sequence is fixed, read from either end
_EXCEPTIONAL_PATHS = {
    (3, 4, 3): _finite("F4"),
    (5, 3): _finite("H3"),
    (5, 3, 3): _finite("H4"),
    (6, 3): _affine("G", 2),
    (3, 3, 4, 3): _affine("F", 4),
}


# ============================================================================
# Matcher
# ============================================================================

def match_component(matrix: CoxeterMatrix, mask: int) -> CatalogMatch:
    """
    Name the connected diagram on the generators in mask

    The caller guarantees mask is nonempty and connected.
    """
    vertices = list(iter_bits(mask))
    k = len(vertices)
    if k == 1:
        return _finite("A1")
    if k == 2:
        return _match_pair(matrix.label(vertices[0], vertices[1]))

    neighbours: Dict[int, List[int]] = {v: [] for v in vertices}
    edge_count = 0
    for a, v in enumerate(vertices):
        for w in vertices[a + 1:]:
            m = matrix.label(v, w)
            if m == 2:
                continue
            if m == INFINITY:
                return UNMATCHED
            neighbours[v].append(w)
            neighbours[w].append(v)
            edge_count += 1

    if edge_count == k:
        return _match_cycle(matrix, neighbours, k)
    if edge_count != k - 1:
        return UNMATCHED

    degrees = {v: len(adj) for v, adj in neighbours.items()}
    branch = [v for v in vertices if degrees[v] >= 3]
    if not branch:
        return _match_path(_path_labels(matrix, neighbours, vertices, degrees), k)
    if len(branch) == 1 and degrees[branch[0]] == 3:
        return _match_branched(matrix, neighbours, branch[0])
    if len(branch) == 1 and degrees[branch[0]] == 4:
        return _match_star(matrix, neighbours, branch[0], k)
    if len(branch) == 2 and all(degrees[v] == 3 for v in branch):
        return _match_two_branches(matrix, neighbours, degrees, branch, k)
    return UNMATCHED


def _match_pair(m: Label) -> CatalogMatch:
    if m == INFINITY:
        return _affine("A", 1)
    if m == 3:
        return _finite("A2")
    if m == 4:
        return _finite("B2")
    return _finite(f"I2({m})")


def _match_cycle(matrix: CoxeterMatrix, neighbours: Dict[int, List[int]], k: int) -> CatalogMatch:
    for v, adj in neighbours.items():
        if len(adj) != 2 or any(matrix.label(v, w) != 3 for w in adj):
            return UNMATCHED
    return _affine("A", k - 1)


def _path_labels(
    matrix: CoxeterMatrix,
    neighbours: Dict[int, List[int]],
    vertices: Sequence[int],
    degrees: Dict[int, int],
) -> Tuple[Label, ...]:
    start = next(v for v in vertices if degrees[v] == 1)
    labels = []
    previous, current = None, start
    while True:
        following = [w for w in neighbours[current] if w != previous]
        if not following:
            break
        labels.append(matrix.label(current, following[0]))
        previous, current = current, following[0]
    return tuple(labels)


def _match_path(labels: Tuple[Label, ...], k: int) -> CatalogMatch:
    for seq in (labels, labels[::-1]):
        if all(m == 3 for m in seq):
            return _finite(f"A{k}")
        inner = seq[1:]
        if seq[0] == 4 and all(m == 3 for m in inner):
            return _finite(f"B{k}")
        if seq[0] == 4 and seq[-1] == 4 and all(m == 3 for m in seq[1:-1]):
            return _affine("C", k - 1)
        if seq in _EXCEPTIONAL_PATHS:
            return _EXCEPTIONAL_PATHS[seq]
    return UNMATCHED


def _arm(matrix: CoxeterMatrix, neighbours: Dict[int, List[int]], centre: int, first: int) -> List[Label]:
    """Labels along the arm leaving centre through first, outward"""
    labels = [matrix.label(centre, first)]
    previous, current = centre, first
    while True:
        following = [w for w in neighbours[current] if w != previous]
        if not following:
            return labels
        labels.append(matrix.label(current, following[0]))
        previous, current = current, following[0]


def _match_branched(matrix: CoxeterMatrix, neighbours: Dict[int, List[int]], centre: int) -> CatalogMatch:
    arms = [_arm(matrix, neighbours, centre, w) for w in neighbours[centre]]
    odd = [(i, j) for i, arm in enumerate(arms) for j, m in enumerate(arm) if m != 3]
    if not odd:
        lengths = tuple(sorted(len(arm) for arm in arms))
        if lengths[0] == 1 and lengths[1] == 1:
            return _finite(f"D{lengths[2] + 3}")
        return _BRANCHED.get(lengths, UNMATCHED)

    # B̃n: a single 4 on the outermost edge of one arm, the other arms of length 1
    if len(odd) == 1:
        i, j = odd[0]
        arm = arms[i]
        others = [len(a) for t, a in enumerate(arms) if t != i]
        if arm[j] == 4 and j == len(arm) - 1 and others == [1, 1]:
            return _affine("B", sum(len(a) for a in arms))
    return UNMATCHED


def _match_star(matrix: CoxeterMatrix, neighbours: Dict[int, List[int]], centre: int, k: int) -> CatalogMatch:
    if k == 5 and all(matrix.label(centre, w) == 3 for w in neighbours[centre]):
        return _affine("D", 4)
    return UNMATCHED


def _match_two_branches(
    matrix: CoxeterMatrix,
    neighbours: Dict[int, List[int]],
    degrees: Dict[int, int],
    branch: List[int],
    k: int,
) -> CatalogMatch:
    for v, adj in neighbours.items():
        if any(matrix.label(v, w) != 3 for w in adj):
            return UNMATCHED
    for v in branch:
        if sum(1 for w in neighbours[v] if degrees[w] == 1) != 2:
            return UNMATCHED
    return _affine("D", k - 1)


# ============================================================================
# Canonical matrices
# ============================================================================

def _from_chain(labels: Sequence[Label], extra: Sequence[Tuple[int, int, Label]] = ()) -> CoxeterMatrix:
    n = len(labels) + 1
    edges = {(i, i + 1): m for i, m in enumerate(labels)}
    for i, j, m in extra:
        edges[(i, j)] = m
        n = max(n, i + 1, j + 1)
    return CoxeterMatrix.from_edges(n, edges)


def _require(condition: bool, message: str):
    if not condition:
        raise ValidationError(message)


def type_a(n: int) -> CoxeterMatrix:
    _require(n >= 1, f"A_n needs n >= 1, got {n}")
    return _from_chain([3] * (n - 1))


def type_b(n: int) -> CoxeterMatrix:
    _require(n >= 2, f"B_n needs n >= 2, got {n}")
    return _from_chain([4] + [3] * (n - 2))


def type_d(n: int) -> CoxeterMatrix:
    _require(n >= 4, f"D_n needs n >= 4, got {n}")
    return _from_chain([3] * (n - 2), [(n - 3, n - 1, 3)])


def type_e(n: int) -> CoxeterMatrix:
    _require(6 <= n <= 8, f"E_n needs 6 <= n <= 8, got {n}")
    return _from_chain([3] * (n - 2), [(2, n - 1, 3)])


def type_f4() -> CoxeterMatrix:
    return _from_chain([3, 4, 3])


def type_h(n: int) -> CoxeterMatrix:
    _require(n in (3, 4), f"H_n needs n in (3, 4), got {n}")
    return _from_chain([5] + [3] * (n - 2))


def type_i2(m: Label) -> CoxeterMatrix:
    _require(m == INFINITY or m >= 2, f"I2(m) needs m >= 2, got {m}")
    return _from_chain([m])


def affine_a(n: int) -> CoxeterMatrix:
    _require(n >= 1, f"Ã_n needs n >= 1, got {n}")
    if n == 1:
        return _from_chain([INFINITY])
    return _from_chain([3] * n, [(0, n, 3)])


def affine_b(n: int) -> CoxeterMatrix:
    _require(n >= 3, f"B̃_n needs n >= 3, got {n}")
    return _from_chain([4] + [3] * (n - 2), [(n - 2, n, 3)])


def affine_c(n: int) -> CoxeterMatrix:
    _require(n >= 2, f"C̃_n needs n >= 2, got {n}")
    return _from_chain([4] + [3] * (n - 2) + [4])


def affine_d(n: int) -> CoxeterMatrix:
    _require(n >= 4, f"D̃_n needs n >= 4, got {n}")
    return _from_chain([3] * (n - 2), [(1, n - 1, 3), (n - 3, n, 3)])


def affine_e(n: int) -> CoxeterMatrix:
    _require(6 <= n <= 8, f"Ẽ_n needs 6 <= n <= 8, got {n}")
    if n == 6:
        return _from_chain([3] * 4, [(2, 5, 3), (5, 6, 3)])
    if n == 7:
        return _from_chain([3] * 6, [(3, 7, 3)])
    return _from_chain([3] * 7, [(2, 8, 3)])


def affine_f4() -> CoxeterMatrix:
    return _from_chain([3, 3, 4, 3])


def affine_g2() -> CoxeterMatrix:
    return _from_chain([6, 3])


def chain4(n: int) -> CoxeterMatrix:
    """Chain with o(s_i s_{i+1}) = 4, all other pairs commuting"""
    _require(n >= 1, f"chain4 needs n >= 1, got {n}")
    return _from_chain([4] * (n - 1))


_NAME_PATTERN = re.compile(rf"^([A-I])({TILDE})?(\d+)$")
_I2_PATTERN = re.compile(r"^I2\((\d+|inf|∞)\)$")

_FINITE_BUILDERS: Dict[str, Callable[[int], CoxeterMatrix]] = {
    "A": type_a,
    "B": type_b,
    "D": type_d,
    "E": type_e,
    "F": lambda n: type_f4() if n == 4 else _unknown(f"F{n}"),
    "H": type_h,
}

_AFFINE_BUILDERS: Dict[str, Callable[[int], CoxeterMatrix]] = {
    "A": affine_a,
    "B": affine_b,
    "C": affine_c,
    "D": affine_d,
    "E": affine_e,
    "F": lambda n: affine_f4() if n == 4 else _unknown(affine_name("F", n)),
    "G": lambda n: affine_g2() if n == 2 else _unknown(affine_name("G", n)),
}


def _unknown(name: str) -> CoxeterMatrix:
    raise ValidationError(f"Unknown catalog type: {name}")


def catalog_matrix(name: str) -> CoxeterMatrix:
    """Canonical matrix for a catalog name such as 'E7', 'I2(5)' or 'C̃2'"""
    dihedral = _I2_PATTERN.match(name)
    if dihedral:
        value = dihedral.group(1)
        return type_i2(int(value) if value.isdigit() else INFINITY)
    parsed = _NAME_PATTERN.match(name)
    if not parsed:
        return _unknown(name)
    letter, tilde, rank = parsed.group(1), parsed.group(2), int(parsed.group(3))
    builders = _AFFINE_BUILDERS if tilde else _FINITE_BUILDERS
    if letter not in builders:
        return _unknown(name)
    return builders[letter](rank)


def catalog_names(max_generators: int = 10, max_dihedral: int = 8) -> List[str]:
    """Every catalog name whose canonical diagram has at most max_generators vertices"""
    names = [f"A{n}" for n in range(1, max_generators + 1)]
    names += [f"B{n}" for n in range(2, max_generators + 1)]
    names += [f"D{n}" for n in range(4, max_generators + 1)]
    names += [f"E{n}" for n in range(6, min(8, max_generators) + 1)]
    names += [name for name, size in (("F4", 4), ("H3", 3), ("H4", 4)) if size <= max_generators]
    if max_generators >= 2:
        names += [f"I2({m})" for m in range(5, max_dihedral + 1)]
        names.append(affine_name("A", 1))
    names += [affine_name("A", n) for n in range(2, max_generators)]
    names += [affine_name("B", n) for n in range(3, max_generators)]
    names += [affine_name("C", n) for n in range(2, max_generators)]
    names += [affine_name("D", n) for n in range(4, max_generators)]
    names += [affine_name("E", n) for n in range(6, min(8, max_generators - 1) + 1)]
    names += [
        affine_name(letter, rank)
        for letter, rank in (("F", 4), ("G", 2))
        if rank + 1 <= max_generators
    ]
    return names

