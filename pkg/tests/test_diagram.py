"""Tests for Coxeter matrices and diagram combinatorics"""

import math
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxrel.catalog import chain4
from coxrel.diagram import (
    INFINITY,
    MAX_GENERATORS,
    CoxeterMatrix,
    GenSet,
    canonical,
    commutes,
    components,
    induced,
    new_coxeter_matrix,
    perp,
)
from coxrel.errors import (
    BadDiagonalError,
    BadOrderError,
    IndexOutOfRangeError,
    NonSymmetricError,
    TooLargeError,
    ValidationError,
)
from coxrel.testkit import GeneratorConfig, random_matrix

pytestmark = pytest.mark.unit


class TestGenSet:
    """Test the bit-set wrapper for generator subsets"""

    def test_from_indices(self):
        """Test building a set from indices"""
        genset = GenSet.from_indices([2, 0, 2])
        assert genset.mask == 0b101
        assert genset.members == (0, 2)
        assert len(genset) == 2

    def test_negative_index_rejected(self):
        """Test negative indices raise IndexOutOfRangeError"""
        with pytest.raises(IndexOutOfRangeError):
            GenSet.of(-1)

    def test_non_integer_index_rejected(self):
        """Test booleans and strings are not indices"""
        with pytest.raises(IndexOutOfRangeError):
            GenSet.of(True)
        with pytest.raises(IndexOutOfRangeError):
            GenSet.from_indices(["1"])

    def test_index_error_is_value_and_index_error(self):
        """Test the error doubles as ValueError and IndexError"""
        with pytest.raises(ValueError):
            GenSet.of(-3)
        with pytest.raises(IndexError):
            GenSet.of(-3)

    def test_set_algebra(self):
        """Test union, intersection and difference"""
        a, b = GenSet.of(0, 1, 2), GenSet.of(2, 3)
        assert a | b == GenSet.of(0, 1, 2, 3)
        assert a & b == GenSet.of(2)
        assert a - b == GenSet.of(0, 1)

    def test_subset_relations(self):
        """Test issubset, issuperset and isdisjoint"""
        assert GenSet.of(1).issubset(GenSet.of(0, 1))
        assert GenSet.of(0, 1).issuperset(GenSet.of(1))
        assert GenSet.of(0).isdisjoint(GenSet.of(1))
        assert GenSet().issubset(GenSet.of(4))

    def test_membership_and_iteration(self):
        """Test in, iter and bool"""
        genset = GenSet.of(1, 4)
        assert 4 in genset
        assert 2 not in genset
        assert -1 not in genset
        assert list(genset) == [1, 4]
        assert not GenSet()
        assert genset.lowest == 1

    def test_one_based(self):
        """Test the 1-based rendering"""
        assert GenSet.of(0, 2, 6).one_based() == (1, 3, 7)

    def test_canonical_order(self):
        """Test canonical dedupes and sorts by member tuple"""
        sets = [GenSet.of(2, 3), GenSet.of(0, 5), GenSet.of(2, 3), GenSet.of(0, 1, 2)]
        assert canonical(sets) == [GenSet.of(0, 1, 2), GenSet.of(0, 5), GenSet.of(2, 3)]


class TestNewCoxeterMatrix:
    """Test matrix validation"""

    def test_valid_matrix(self):
        """Test a valid order table is accepted with default names"""
        matrix = new_coxeter_matrix(3, [[1, 3, 2], [3, 1, 4], [2, 4, 1]])
        assert matrix.n == 3
        assert matrix.label(1, 2) == 4
        assert matrix.names == ("s1", "s2", "s3")

    def test_infinity_accepted(self):
        """Test float infinity is normalized to INFINITY"""
        matrix = new_coxeter_matrix(2, [[1, float("inf")], [float("inf"), 1]])
        assert matrix.label(0, 1) == INFINITY
        assert math.isinf(matrix.label(1, 0))

    def test_custom_names(self):
        """Test generator names are kept"""
        matrix = new_coxeter_matrix(2, [[1, 3], [3, 1]], ["a", "b"])
        assert matrix.names == ("a", "b")
        assert matrix.index_of("b") == 1

    def test_non_symmetric(self):
        """Test an asymmetric table raises NonSymmetricError"""
        with pytest.raises(NonSymmetricError):
            new_coxeter_matrix(2, [[1, 3], [4, 1]])

    def test_bad_diagonal(self):
        """Test a diagonal entry other than 1"""
        with pytest.raises(BadDiagonalError):
            new_coxeter_matrix(2, [[2, 3], [3, 1]])

    @pytest.mark.parametrize("value", [0, 1, -4, 2.5, "3", True])
    def test_bad_order(self, value):
        """Test off-diagonal entries that are not orders"""
        with pytest.raises(BadOrderError):
            new_coxeter_matrix(2, [[1, value], [value, 1]])

    def test_bad_order_is_value_error(self):
        """Test validation errors are ValueErrors"""
        with pytest.raises(ValueError):
            new_coxeter_matrix(2, [[1, 1], [1, 1]])

    def test_too_large(self):
        """Test the generator cap"""
        n = MAX_GENERATORS + 1
        table = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
        with pytest.raises(TooLargeError):
            new_coxeter_matrix(n, table)

    def test_cap_is_inclusive(self):
        """Test exactly MAX_GENERATORS generators is allowed"""
        n = MAX_GENERATORS
        table = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
        assert new_coxeter_matrix(n, table).n == n

    def test_wrong_shape(self):
        """Test a table that is not n x n"""
        with pytest.raises(ValidationError, match="must be 2x2"):
            new_coxeter_matrix(2, [[1, 2, 2], [2, 1, 2]])

    def test_zero_generators(self):
        """Test n must be positive"""
        with pytest.raises(ValidationError):
            new_coxeter_matrix(0, [])

    def test_duplicate_names(self):
        """Test names must be distinct"""
        with pytest.raises(ValidationError, match="distinct"):
            new_coxeter_matrix(2, [[1, 3], [3, 1]], ["a", "a"])

    def test_from_edges(self):
        """Test unlisted pairs default to order 2"""
        matrix = CoxeterMatrix.from_edges(3, {(0, 2): 5})
        assert matrix.label(0, 2) == 5
        assert matrix.label(2, 0) == 5
        assert matrix.label(0, 1) == 2

    def test_from_edges_out_of_range(self):
        """Test edges must join two distinct generators"""
        with pytest.raises(IndexOutOfRangeError):
            CoxeterMatrix.from_edges(3, {(0, 3): 3})
        with pytest.raises(IndexOutOfRangeError):
            CoxeterMatrix.from_edges(3, {(1, 1): 3})

    def test_right_angled(self, pentagon, chain4_7):
        """Test right-angled detection"""
        assert pentagon.is_right_angled()
        assert not chain4_7.is_right_angled()


class TestNames:
    """Test name-based helpers"""

    def test_describe(self, chain4_7):
        """Test the brace rendering"""
        assert chain4_7.describe(GenSet.of(0, 2)) == "{s1, s3}"

    def test_subset_from_names(self, chain4_7):
        """Test name lists map to index sets"""
        assert chain4_7.subset_from_names(["s4", "s2"]) == GenSet.of(1, 3)

    def test_unknown_name(self, chain4_7):
        """Test unknown names raise IndexOutOfRangeError"""
        with pytest.raises(IndexOutOfRangeError, match="s9"):
            chain4_7.index_of("s9")


class TestInduced:
    """Test restriction to a subset of generators"""

    def test_induced_reindexes(self, chain4_7):
        """Test kept generators are re-indexed in increasing order"""
        sub = induced(chain4_7, [1, 3])
        assert sub.n == 2
        assert sub.names == ("s2", "s4")
        assert sub.label(0, 1) == 2

    def test_induced_consecutive(self, chain4_7):
        """Test a consecutive run gives the shorter chain"""
        sub = induced(chain4_7, GenSet.of(2, 3, 4))
        assert sub.labels == chain4(3).labels

    def test_induced_full_is_identity(self, chain4_7):
        """Test J = S returns the matrix itself"""
        assert induced(chain4_7, chain4_7.full_set()) is chain4_7

    def test_induced_out_of_range(self, chain4_7):
        """Test indices beyond n are rejected"""
        with pytest.raises(IndexOutOfRangeError):
            induced(chain4_7, [7])


class TestComponentsAndPerp:
    """Test components, perp and commutes"""

    def test_components(self, chain4_7):
        """Test components are sorted by smallest member"""
        parts = components(chain4_7, GenSet.of(6, 0, 1, 3, 4))
        assert parts == [GenSet.of(0, 1), GenSet.of(3, 4), GenSet.of(6)]

    def test_components_of_empty_set(self, chain4_7):
        """Test the empty set has no components"""
        assert components(chain4_7, []) == []

    def test_perp(self, chain4_7):
        """Test perp of a middle generator"""
        assert perp(chain4_7, [3]) == GenSet.of(0, 1, 5, 6)

    def test_perp_of_empty_set(self, chain4_7):
        """Test the perp of the empty set is S"""
        assert perp(chain4_7, []) == chain4_7.full_set()

    def test_perp_infinite_pair(self, infinite_dihedral):
        """Test infinite order is not commuting"""
        assert perp(infinite_dihedral, [0]) == GenSet()

    def test_commutes(self, chain4_7):
        """Test commuting sets"""
        assert commutes(chain4_7, [0], [2, 3])
        assert not commutes(chain4_7, [0], [1])
        assert not commutes(chain4_7, [0], [0])
        assert commutes(chain4_7, [0], [])


@settings(max_examples=60, deadline=None)
@given(st.sets(st.integers(min_value=0, max_value=6)))
def test_perp_commutes_with_subset(indices):
    """Test every member of perp(J) commutes with every member of J"""
    matrix = chain4(7)
    subset = GenSet.from_indices(indices)
    orthogonal = perp(matrix, subset)
    assert orthogonal.isdisjoint(subset)
    for s in orthogonal:
        assert all(matrix.label(s, t) == 2 for t in subset)
    for s in matrix.full_set() - subset - orthogonal:
        assert any(matrix.label(s, t) != 2 for t in subset)


random_matrices = st.builds(
    lambda n, seed: random_matrix(GeneratorConfig(n=n, seed=seed)),
    st.integers(min_value=1, max_value=8),
    st.integers(min_value=0, max_value=2 ** 32),
)


@settings(max_examples=100, deadline=None)
@given(matrix=random_matrices, data=st.data())
def test_perp_is_antitone(matrix, data):
    """Test J ⊆ K implies perp(K) ⊆ perp(J)"""
    small = data.draw(st.integers(min_value=0, max_value=matrix.full_mask))
    large = small | data.draw(st.integers(min_value=0, max_value=matrix.full_mask))
    assert perp(matrix, GenSet(large)).issubset(perp(matrix, GenSet(small)))


@settings(max_examples=100, deadline=None)
@given(matrix=random_matrices, data=st.data())
def test_components_partition_and_commute(matrix, data):
    """Test components partition J and every cross-component label is 2"""
    subset = GenSet(data.draw(st.integers(min_value=0, max_value=matrix.full_mask)))
    parts = components(matrix, subset)
    covered = GenSet(0)
    for part in parts:
        assert part and part.isdisjoint(covered)
        covered = covered | part
    assert covered == subset
    for first, second in combinations(parts, 2):
        assert all(matrix.label(s, t) == 2 for s in first for t in second)


@settings(max_examples=100, deadline=None)
@given(matrix=random_matrices, data=st.data())
def test_induced_composes(matrix, data):
    """Test restricting to J and then to K inside J equals restricting to K"""
    outer = GenSet(data.draw(st.integers(min_value=0, max_value=matrix.full_mask)))
    inner = outer & GenSet(data.draw(st.integers(min_value=0, max_value=matrix.full_mask)))
    position = {index: k for k, index in enumerate(outer.members)}
    relabeled = [position[index] for index in inner]
    assert induced(induced(matrix, outer), relabeled) == induced(matrix, inner)
