import pytest
from itertools import permutations

from src.partitions import (
    Partition,
    block_structure,
    compositions,
    conjugate,
    dominance_covers,
    dominance_interval,
    dominance_leq,
    generate_partitions,
    partitions_of_length,
    permutohedron_contains,
)


class TestPartition:
    """Test the Partition value type"""

    def test_trailing_zeros_dropped(self):
        """Test that trailing zeros do not change the key"""
        assert Partition((2, 1, 0, 0)) == Partition((2, 1)) == (2, 1)
        assert hash(Partition((2, 1, 0))) == hash((2, 1))

    def test_rejects_increasing_parts(self):
        """Test that parts must weakly decrease"""
        with pytest.raises(ValueError, match="weakly decreasing"):
            Partition((1, 2))

    def test_rejects_negative_parts(self):
        """Test that parts must be positive"""
        with pytest.raises(ValueError, match="positive"):
            Partition((2, -1))

    def test_from_composition(self):
        """Test sorting an exponent vector into its partition"""
        assert Partition.from_composition((0, 2, 1, 2)) == (2, 2, 1)
        assert Partition.from_composition((0, 0)) == ()

    def test_serialization(self):
        """Test the bracketed text form in both directions"""
        assert str(Partition((2, 1, 1))) == "[2,1,1]"
        assert str(Partition()) == "[]"
        assert Partition.parse("[3,3]") == (3, 3)
        assert Partition.parse(" [] ") == ()

    @pytest.mark.parametrize("text", ["[1,2]", "2,1", "[2,\"1\"]", "[true]", "{}"])
    def test_parse_rejects_malformed_text(self, text):
        """Test that malformed partitions raise ValueError"""
        with pytest.raises(ValueError):
            Partition.parse(text)

    def test_weight_and_length(self):
        """Test weight and length"""
        lam = Partition((3, 2, 2))
        assert lam.weight == 7
        assert lam.length == 3


class TestGeneration:
    """Test partition generation"""

    def test_zero(self):
        """Test that 0 has only the empty partition"""
        assert generate_partitions(0) == [()]

    def test_four_in_order(self):
        """Test reverse-lexicographic order at d = 4"""
        assert generate_partitions(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]

    @pytest.mark.parametrize("d,count", [(1, 1), (5, 7), (6, 11), (8, 22)])
    def test_counts(self, d, count):
        """Test the number of partitions"""
        found = generate_partitions(d)
        assert len(found) == count
        assert len(set(found)) == count

    def test_negative_rejected(self):
        """Test that negative integers cannot be partitioned"""
        with pytest.raises(ValueError, match="negative"):
            generate_partitions(-1)

    def test_partitions_of_length(self):
        """Test restriction to at most n parts"""
        assert partitions_of_length(4, 2) == [(4,), (3, 1), (2, 2)]

    def test_compositions(self):
        """Test exponent vectors of a given degree"""
        found = compositions(2, 3)
        assert len(found) == 6
        assert found[0] == (2, 0, 0)
        assert found == sorted(found, reverse=True)
        assert compositions(0, 0) == [()]
        assert compositions(1, 0) == []


class TestDominance:
    """Test dominance order and its covers"""

    def test_minimum_below_hook(self):
        """Test (1,1,1) ⪯ (2,1)"""
        assert dominance_leq((1, 1, 1), (2, 1))

    def test_incomparable_pair_of_six(self):
        """Test that (4,1,1) and (3,3) are incomparable"""
        assert not dominance_leq((4, 1, 1), (3, 3))
        assert not dominance_leq((3, 3), (4, 1, 1))

    def test_prefix_sums(self):
        """Test (2,2,1,1) ⪯ (3,2,1)"""
        assert dominance_leq((2, 2, 1, 1), (3, 2, 1))

    def test_unequal_weights_raise(self):
        """Test that partitions of different weight are refused"""
        with pytest.raises(ValueError, match="incomparable weights"):
            dominance_leq((2, 1), (2, 2))

    @pytest.mark.parametrize("d", range(1, 9))
    def test_partial_order(self, d):
        """Test reflexivity, antisymmetry and transitivity"""
        parts = generate_partitions(d)
        for a in parts:
            assert dominance_leq(a, a)
            assert dominance_leq((1,) * d, a)
            assert dominance_leq(a, (d,))
            for b in parts:
                if a != b and dominance_leq(a, b):
                    assert not dominance_leq(b, a)
                for c in parts:
                    if dominance_leq(a, b) and dominance_leq(b, c):
                        assert dominance_leq(a, c)

    @pytest.mark.parametrize("d", range(2, 9))
    def test_covers_match_brute_force(self, d):
        """Test the two-case cover rule against the Hasse diagram"""
        parts = generate_partitions(d)
        for lam in parts:
            below = [mu for mu in parts if mu != lam and dominance_leq(mu, lam)]
            expected = [
                mu for mu in below
                if not any(nu != mu and dominance_leq(mu, nu) for nu in below)
            ]
            assert dominance_covers(lam) == sorted(expected, reverse=True)

    def test_cover_examples(self):
        """Test the covers of a hook, of (3,3) and of a single row"""
        assert dominance_covers((2, 1, 1, 1)) == [(1, 1, 1, 1, 1)]
        assert dominance_covers((3, 3)) == [(3, 2, 1)]
        assert dominance_covers((5,)) == [(4, 1)]

    def test_interval(self):
        """Test the interval [1^d, λ]"""
        assert dominance_interval((2, 2)) == [(2, 2), (2, 1, 1), (1, 1, 1, 1)]
        assert len(dominance_interval((4,))) == 5


class TestConjugation:
    """Test conjugation"""

    def test_examples(self):
        """Test a column and a two-column shape"""
        assert conjugate((1, 1, 1)) == (3,)
        assert conjugate((3, 2)) == (2, 2, 1)
        assert Partition((3, 2)).conjugate() == (2, 2, 1)
        assert conjugate(()) == ()

    def test_involution(self):
        """Test that conjugating twice is the identity"""
        for lam in generate_partitions(6):
            assert conjugate(conjugate(lam)) == lam

    @pytest.mark.parametrize("d", range(1, 8))
    def test_order_reversing(self, d):
        """Test μ ⪯ λ iff λ' ⪯ μ'"""
        parts = generate_partitions(d)
        for mu in parts:
            for lam in parts:
                assert dominance_leq(mu, lam) == dominance_leq(conjugate(lam), conjugate(mu))


class TestBlockStructure:
    """Test blocks of equal parts"""

    def test_with_ambient_variables(self):
        """Test (2,2,1) in 7 variables"""
        blocks = block_structure((2, 2, 1), 7)
        assert blocks.k == 3
        assert blocks.ell == 2
        assert blocks.block_sizes == (2, 1)
        assert blocks.start_indices == (1, 3)
        assert blocks.values == (2, 1)
        assert blocks.trailing_block_size == 4

    def test_constant_partition(self):
        """Test a single block"""
        blocks = block_structure((1, 1, 1, 1))
        assert blocks.ell == 1
        assert blocks.block_sizes == (4,)
        assert blocks.trailing_block_size is None

    def test_strict_partition(self):
        """Test one block per part"""
        assert block_structure((3, 2, 1)).block_sizes == (1, 1, 1)

    def test_too_few_variables(self):
        """Test that n below the length raises"""
        with pytest.raises(ValueError, match="smaller than the length"):
            block_structure((2, 1, 1), 2)


class TestPermutohedron:
    """Test permutohedron membership"""

    def test_examples(self):
        """Test an interior point and a point outside"""
        assert permutohedron_contains((1, 1, 1), (2, 1))
        assert not permutohedron_contains((3, 0, 0), (2, 1))

    def test_vertices(self):
        """Test that every rearrangement of λ is inside P(λ)"""
        for vertex in set(permutations((3, 1, 1, 0))):
            assert permutohedron_contains(vertex, (3, 1, 1))

    def test_wrong_weight(self):
        """Test that the weight must match"""
        assert not permutohedron_contains((1, 1), (2, 1))

    @pytest.mark.parametrize("d", range(1, 8))
    def test_agrees_with_dominance(self, d):
        """Test membership of partitions against dominance"""
        parts = generate_partitions(d)
        for t in parts:
            padded = list(t) + [0] * (d - len(t))
            for lam in parts:
                assert permutohedron_contains(padded, lam) == dominance_leq(t, lam)
