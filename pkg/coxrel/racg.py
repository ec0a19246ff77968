"""
Right-angled specialization

A finite simple graph A gives the right-angled Coxeter matrix with order 2 on
edges and infinity on non-edges. This module translates graphs, states the
isolated flats condition directly on A, enumerates the join sets of non-edges
(I_aff) and renders the shape of the subgroups Gamma_J of a graph product.

Graphs are handed to networkx for neighbourhoods and clique enumeration.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx

from .diagram import INFINITY, MAX_GENERATORS, CoxeterMatrix, new_coxeter_matrix
from .errors import InvalidGraphError, InvalidJoinSetError, TooLargeError, ValidationError

logger = logging.getLogger("coxrel.racg")

Pair = Tuple[int, int]


def _edge(i: int, j: int) -> Pair:
    return (i, j) if i < j else (j, i)


# ============================================================================
# Graphs
# ============================================================================

@dataclass(frozen=True)
class SimpleGraph:
    """Finite simple graph on vertices 0..vertex_count-1"""
    vertex_count: int
    edges: FrozenSet[Pair] = frozenset()
    vertex_names: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.vertex_count < 0:
            raise InvalidGraphError(f"Vertex count must be nonnegative, got {self.vertex_count}")
        normalized = set()
        for i, j in self.edges:
            if i == j:
                raise InvalidGraphError(f"Loop at vertex {i}")
            if not (0 <= i < self.vertex_count and 0 <= j < self.vertex_count):
                raise InvalidGraphError(f"Edge ({i}, {j}) out of range")
            normalized.add(_edge(i, j))
        object.__setattr__(self, "edges", frozenset(normalized))
        names = self.vertex_names or tuple(str(i + 1) for i in range(self.vertex_count))
        if len(names) != self.vertex_count or len(set(names)) != len(names):
            raise InvalidGraphError("Vertex names must be distinct, one per vertex")
        object.__setattr__(self, "vertex_names", tuple(names))

    @classmethod
    def from_edge_list(
        cls,
        vertex_count: int,
        edges: Iterable[Sequence[int]],
        vertex_names: Optional[Sequence[str]] = None,
    ) -> "SimpleGraph":
        """Build a graph, rejecting repeated edges"""
        seen = set()
        for edge in edges:
            if len(edge) != 2:
                raise InvalidGraphError(f"Edge must have two endpoints: {edge!r}")
            key = _edge(int(edge[0]), int(edge[1]))
            if key in seen:
                raise InvalidGraphError(f"Repeated edge {key}")
            seen.add(key)
        return cls(vertex_count, frozenset(seen), tuple(vertex_names) if vertex_names else ())

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "SimpleGraph":
        nodes = list(graph.nodes)
        position = {v: i for i, v in enumerate(nodes)}
        return cls(
            len(nodes),
            frozenset(_edge(position[u], position[v]) for u, v in graph.edges),
            tuple(str(v) for v in nodes),
        )

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.vertex_count))
        graph.add_edges_from(self.edges)
        return graph

    def has_edge(self, i: int, j: int) -> bool:
        return _edge(i, j) in self.edges

    def non_edges(self) -> List[Pair]:
        return [p for p in combinations(range(self.vertex_count), 2) if p not in self.edges]

    @classmethod
    def cycle(cls, n: int) -> "SimpleGraph":
        if n < 3:
            raise InvalidGraphError(f"A cycle needs at least 3 vertices, got {n}")
        return cls.from_networkx(nx.cycle_graph(n))._renamed()

    @classmethod
    def complete(cls, n: int) -> "SimpleGraph":
        return cls.from_networkx(nx.complete_graph(n))._renamed()

    @classmethod
    def complete_bipartite(cls, a: int, b: int) -> "SimpleGraph":
        return cls.from_networkx(nx.complete_bipartite_graph(a, b))._renamed()

    @classmethod
    def empty(cls, n: int) -> "SimpleGraph":
        return cls(n)

    def _renamed(self) -> "SimpleGraph":
        return SimpleGraph(self.vertex_count, self.edges)


def from_graph(graph: SimpleGraph) -> CoxeterMatrix:
    """Right-angled matrix: 2 on edges, infinity on non-edges"""
    n = graph.vertex_count
    if n > MAX_GENERATORS:
        raise TooLargeError(f"{n} vertices exceed the supported maximum of {MAX_GENERATORS}")
    table = [
        [1 if i == j else (2 if graph.has_edge(i, j) else INFINITY) for j in range(n)]
        for i in range(n)
    ]
    return new_coxeter_matrix(n, table, graph.vertex_names)


# ============================================================================
# Condition (ii) in graph form
# ============================================================================

@dataclass(frozen=True)
class GraphConditionResult:
    holds: bool
    witness: Optional[Tuple[int, int, int]] = None
    common_neighbours: Tuple[int, ...] = ()


def condition_ii_graph(graph: SimpleGraph) -> GraphConditionResult:
    """
    For each 3-subset J spanning at most one edge, the common neighbours of J
    must induce a complete graph

    These 3-subsets are exactly the minimal hyperbolic subsets of the
    right-angled system; a 3-subset spanning two edges is Euclidean and is
    not constrained.
    """
    nx_graph = graph.to_networkx()
    for triple in combinations(range(graph.vertex_count), 3):
        spanned = sum(1 for a, b in combinations(triple, 2) if graph.has_edge(a, b))
        if spanned > 1:
            continue
        first, second, third = triple
        common = set(nx_graph[first]) & set(nx_graph[second]) & set(nx_graph[third])
        if any(not graph.has_edge(u, v) for u, v in combinations(sorted(common), 2)):
            logger.debug(f"condition (ii) fails at {triple}, common neighbours {sorted(common)}")
            return GraphConditionResult(False, triple, tuple(sorted(common)))
    return GraphConditionResult(True)


# ============================================================================
# Join sets of non-edges
# ============================================================================

@dataclass(frozen=True)
class AffJoinSet:
    """Pairwise disjoint non-edges whose other pairs are all edges"""
    pairs: Tuple[Pair, ...]
    members: Tuple[int, ...]
    maximal: bool = False

    @property
    def rank(self) -> int:
        return len(self.pairs)


def _joinable(graph: SimpleGraph, p: Pair, q: Pair) -> bool:
    if set(p) & set(q):
        return False
    return all(graph.has_edge(a, b) for a in p for b in q)


def _pair_compatibility(graph: SimpleGraph) -> nx.Graph:
    compatibility = nx.Graph()
    non_edges = graph.non_edges()
    compatibility.add_nodes_from(non_edges)
    for p, q in combinations(non_edges, 2):
        if _joinable(graph, p, q):
            compatibility.add_edge(p, q)
    return compatibility


def enumerate_iaff(graph: SimpleGraph, min_pairs: int = 2) -> List[AffJoinSet]:
    """
    All join sets of at least min_pairs non-edges, with an inclusion-maximal flag

    Join sets are the cliques of the compatibility graph on non-edges (two
    non-edges are compatible when disjoint and completely joined in A).
    """
    if min_pairs < 1:
        raise ValidationError(f"min_pairs must be at least 1, got {min_pairs}")
    if graph.vertex_count > MAX_GENERATORS:
        raise TooLargeError(
            f"{graph.vertex_count} vertices exceed the supported maximum of {MAX_GENERATORS}"
        )
    compatibility = _pair_compatibility(graph)
    maximal = {frozenset(c) for c in nx.find_cliques(compatibility)}
    result = []
    for clique in nx.enumerate_all_cliques(compatibility):
        if len(clique) < min_pairs:
            continue
        pairs = tuple(sorted(clique))
        result.append(AffJoinSet(
            pairs=pairs,
            members=tuple(sorted(v for p in pairs for v in p)),
            maximal=frozenset(clique) in maximal,
        ))
    result.sort(key=lambda s: (s.members, s.pairs))
    logger.debug(f"{len(result)} join sets with at least {min_pairs} pairs")
    return result


# ============================================================================
# Graph products
# ============================================================================

@dataclass(frozen=True)
class GammaStructure:
    """Gamma_J as a direct product of free products of two vertex groups"""
    factors: Tuple[Tuple[str, str], ...]

    def render(self) -> str:
        return " × ".join(f"({a} * {b})" for a, b in self.factors)


def _check_join_set(graph: SimpleGraph, pairs: Sequence[Pair]):
    if not pairs:
        raise InvalidJoinSetError("A join set needs at least one pair")
    for i, j in pairs:
        if not (0 <= i < graph.vertex_count and 0 <= j < graph.vertex_count) or i == j:
            raise InvalidJoinSetError(f"Pair ({i}, {j}) is not a pair of distinct vertices")
        if graph.has_edge(i, j):
            raise InvalidJoinSetError(f"Pair ({i}, {j}) is an edge, not a non-edge")
    for p, q in combinations(pairs, 2):
        if not _joinable(graph, p, q):
            raise InvalidJoinSetError(f"Pairs {p} and {q} are not disjoint and completely joined")


def gamma_structure(
    graph: SimpleGraph,
    join_set: Union[AffJoinSet, Sequence[Pair]],
    factor_names: Optional[Sequence[str]] = None,
) -> GammaStructure:
    """
    Gamma_J = (P_i1 * P_j1) x ... x (P_in * P_jn) for a join set J

    factor_names[v] names the vertex group P_v; the default is P1, P2, ...
    """
    pairs = list(join_set.pairs if isinstance(join_set, AffJoinSet) else join_set)
    pairs = sorted(_edge(int(i), int(j)) for i, j in pairs)
    _check_join_set(graph, pairs)
    names = list(factor_names) if factor_names else [f"P{v + 1}" for v in range(graph.vertex_count)]
    if len(names) != graph.vertex_count:
        raise ValidationError(f"Expected {graph.vertex_count} factor names, got {len(names)}")
    return GammaStructure(tuple((names[i], names[j]) for i, j in pairs))
