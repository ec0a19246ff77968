"""
Oracle tests: the decision procedures against brute force

These sweep exhaustive corpora and seeded random instances, so they are
marked slow and deselected by the default tox run.
"""

import random
from itertools import islice

import pytest

from coxrel.classify import (
    NumericKind,
    is_spherical,
    maximal_euclidean_subsets,
    numeric_type,
    subset_index,
)
from coxrel.diagram import INFINITY, GenSet, components, perp
from coxrel.errors import HypothesisFailedError, TooManyCoresError
from coxrel.racg import condition_ii_graph, enumerate_iaff, from_graph
from coxrel.relhyp import (
    DecisionStatus,
    cores,
    decide,
    isolated_flats,
    lemma_aff_equivalence,
    maxparab,
    merge_cores,
    minimal_family,
    moussong_hyperbolic,
    verify_family,
)
from coxrel.testkit import (
    GeneratorConfig,
    all_graphs,
    brute_force_decide,
    brute_force_obligations,
    exhaustive_corpus,
    maximal_sets,
    random_graph,
    random_matrix,
)

pytestmark = [pytest.mark.oracle, pytest.mark.slow]

# Labels 2 and 4 make chains of C̃2 triples, so cores are common at these weights
CORE_HEAVY = {"2": 3.0, "3": 1.0, "4": 3.0, "6": 0.5, "inf": 1.0}

ALL_LABELS = [2, 3, 4, 5, 6, 7, 8, INFINITY]

# every third member keeps the four-generator corpus under 10^5 matrices
SAMPLE_STRIDE = 3


def corpus():
    yield from exhaustive_corpus(3, [2, 3, 4, 5, 6, INFINITY])
    yield from exhaustive_corpus(4, [2, 3, 4, INFINITY])


def sampled_corpus():
    return islice(exhaustive_corpus(4, ALL_LABELS), 0, None, SAMPLE_STRIDE)


def random_instances(sizes=(5, 6), per_size=250, weights=CORE_HEAVY):
    for n in sizes:
        for seed in range(per_size):
            yield random_matrix(GeneratorConfig(n=n, label_weights=weights, seed=seed))


def uniform_instances():
    """1000 matrices with every label equally likely"""
    for n in (5, 6):
        for seed in range(500):
            yield random_matrix(GeneratorConfig(n=n, seed=seed))


def assert_decide_matches_oracle(matrix):
    try:
        oracle = brute_force_decide(matrix)
    except TooManyCoresError:
        return False
    decision = decide(matrix)
    assert (decision.status is DecisionStatus.HYPERBOLIC) == (oracle.finest == [])
    assert (decision.status is not DecisionStatus.NOT_RELATIVELY_HYPERBOLIC) == oracle.exists_proper_family
    assert list(decision.minimal_family.classes) == oracle.finest
    return True


def valid_proper_families(matrix):
    """
    Every valid family of proper non-spherical subsets

    Spherical members cover no core and meet every class in a spherical set,
    so they can be dropped. A non-spherical member inside another breaks
    (RH2), so only antichains need checking.
    """
    index = subset_index(matrix)
    candidates = [m for m in range(1, matrix.full_mask) if not index.is_spherical(m)]

    def antichains(start, chosen):
        yield chosen
        for position in range(start, len(candidates)):
            mask = candidates[position]
            if all(mask & other not in (mask, other) for other in chosen):
                yield from antichains(position + 1, chosen + [mask])

    for family in antichains(0, []):
        classes = [GenSet(mask) for mask in family]
        if verify_family(matrix, classes).verification.passed:
            yield classes


class TestClassificationAgainstEigenvalues:
    """Test the catalog matcher against the cosine matrix spectrum"""

    @staticmethod
    def check(matrix):
        index = subset_index(matrix)
        for mask in range(1, 1 << matrix.n):
            if not index.is_connected(mask):
                continue
            verdict = numeric_type(matrix, GenSet(mask), tol=1e-9)
            assert index.is_spherical(mask) == (verdict.kind is NumericKind.POSITIVE_DEFINITE)
            assert index.is_irreducible_affine(mask) == (
                verdict.kind is NumericKind.PSD_NULLITY and verdict.nullity == 1
            )

    def test_three_generators(self):
        """Test every label up to 8 on three generators"""
        for matrix in exhaustive_corpus(3, ALL_LABELS):
            self.check(matrix)

    def test_four_generators(self):
        """Test every label up to 8 on four generators, sampled"""
        checked = 0
        for matrix in sampled_corpus():
            self.check(matrix)
            checked += 1
        assert 0 < checked <= 10 ** 5

    def test_random_instances(self):
        """Test 1000 random matrices with five and six generators"""
        for matrix in uniform_instances():
            self.check(matrix)


class TestDecideAgainstOracle:
    """Test decide and minimal_family against the partition search"""

    def test_exhaustive_corpus(self):
        """Test every matrix of the small corpora"""
        checked = sum(assert_decide_matches_oracle(matrix) for matrix in corpus())
        assert checked > 0

    def test_random_instances(self):
        """Test 500 seeded random matrices with five and six generators"""
        checked = sum(assert_decide_matches_oracle(matrix) for matrix in random_instances())
        assert checked > 0

    def test_minimal_family_passes_verification(self):
        """Test the merge fixed point always satisfies both conditions"""
        for matrix in random_instances(sizes=(5, 6, 7)):
            verification = minimal_family(matrix).verification
            assert verification is not None
            assert verification.passed

    def test_minimal_family_is_least(self):
        """Test every valid proper family covers each minimal class"""
        for matrix in corpus():
            classes = minimal_family(matrix).classes
            found = False
            for family in valid_proper_families(matrix):
                found = True
                for cls in classes:
                    assert any(cls.issubset(member) for member in family), (matrix, family)
            assert found == (decide(matrix).status is not DecisionStatus.NOT_RELATIVELY_HYPERBOLIC)


class TestCoresAgainstDefinitions:
    """Test cores and Moussong's criterion against direct enumeration"""

    @staticmethod
    def instances():
        yield from corpus()
        yield from random_instances()

    def test_cores_are_maximal_obligations(self):
        """Test cores equal the maximal brute-force obligations"""
        for matrix in self.instances():
            expected = maximal_sets(brute_force_obligations(matrix))
            assert [core.members for core in cores(matrix)] == expected

    def test_no_cores_iff_hyperbolic(self):
        """Test an empty core list is Moussong's criterion"""
        for matrix in self.instances():
            assert (not cores(matrix)) == moussong_hyperbolic(matrix)

    def test_irreducible_quantifier(self):
        """Test checking connected J only gives the same verdict"""
        for matrix in self.instances():
            assert moussong_hyperbolic(matrix, restrict_to_irreducible=True) == moussong_hyperbolic(
                matrix, restrict_to_irreducible=False
            )


class TestMergeConfluence:
    """Test the merge fixed point is independent of order and reduction"""

    def test_unreduced_cores(self):
        """Test merging every candidate core gives the same classes"""
        for matrix in random_instances(sizes=(6, 7), per_size=100):
            maximal = [c.members.mask for c in cores(matrix)]
            candidates = [c.members.mask for c in cores(matrix, maximal_only=False)]
            assert merge_cores(matrix, candidates) == merge_cores(matrix, maximal)

    def test_random_schedules(self):
        """Test 100 random merge orders on each of 200 instances"""
        for matrix in random_instances(sizes=(7, 8), per_size=100):
            blocks = [c.members.mask for c in cores(matrix)]
            expected = merge_cores(matrix, blocks)
            for seed in range(100):
                assert merge_cores(matrix, blocks, rng=random.Random(seed)) == expected


class TestEuclideanConditions:
    """Test the three Euclidean-subset conditions against each other"""

    def test_exhaustive_corpus(self):
        """Test the conditions agree and match the isolated flats criterion"""
        for matrix in corpus():
            conditions = lemma_aff_equivalence(matrix)
            assert conditions.agree, conditions.as_tuple()
            assert conditions.minimal_hyperbolic_perps_spherical == isolated_flats(matrix).holds

    def test_sampled_corpus(self):
        """Test the conditions agree on the sampled four-generator corpus"""
        for matrix in sampled_corpus():
            assert lemma_aff_equivalence(matrix).agree

    def test_random_instances(self):
        """Test the conditions agree on both random corpora"""
        for matrix in random_instances():
            assert lemma_aff_equivalence(matrix).agree
        for matrix in uniform_instances():
            assert lemma_aff_equivalence(matrix).agree


class TestMaxParab:
    """Test the single-generator construction"""

    @staticmethod
    def check(matrix):
        for s0 in range(matrix.n):
            if is_spherical(matrix, perp(matrix, [s0])):
                assert maxparab(matrix, s0).verification.passed
            else:
                with pytest.raises(HypothesisFailedError):
                    maxparab(matrix, s0)

    def test_exhaustive_corpus(self):
        """Test every s0 with spherical perp gives a valid family"""
        for matrix in corpus():
            self.check(matrix)

    def test_random_instances(self):
        """Test both random corpora"""
        for matrix in random_instances():
            self.check(matrix)
        for matrix in uniform_instances():
            self.check(matrix)


class TestRightAngledBridge:
    """Test the graph statements against the general ones"""

    @staticmethod
    def affine_parts(graph):
        matrix = from_graph(graph)
        index = subset_index(matrix)
        found = set()
        for euclidean in maximal_euclidean_subsets(matrix):
            parts = [c for c in components(matrix, euclidean) if not index.is_spherical(c.mask)]
            if len(parts) >= 2:
                found.add(tuple(sorted(v for c in parts for v in c)))
        return found

    def check(self, graph):
        holds = condition_ii_graph(graph).holds
        assert holds == isolated_flats(from_graph(graph)).holds
        if holds:
            maximal = {j.members for j in enumerate_iaff(graph) if j.maximal}
            assert maximal == self.affine_parts(graph)

    def test_all_graphs_on_five_vertices(self):
        """Test every graph with five labelled vertices"""
        for graph in all_graphs(5):
            self.check(graph)

    def test_condition_on_six_vertices(self):
        """Test the graph condition on every graph with six labelled vertices"""
        for graph in all_graphs(6):
            assert condition_ii_graph(graph).holds == isolated_flats(from_graph(graph)).holds

    @pytest.mark.parametrize("n", [6, 7, 8, 9])
    def test_random_graphs(self, n):
        """Test seeded random graphs"""
        for seed in range(125):
            self.check(random_graph(n, 0.6, seed))
