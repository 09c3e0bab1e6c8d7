import math

import pytest
from hypothesis import given, strategies as st

from qnswitch.errors import SizeLimitError
from qnswitch.symgroup import (
    Permutation,
    ZeroSubset,
    apply_order,
    enumerate_orders,
    zero_subsets,
)


def images(n):
    return [p.image for p in enumerate_orders(n)]


class TestEnumerateOrders:
    def test_single_channel(self):
        assert images(1) == [(1,)]

    def test_two_channels(self):
        assert images(2) == [(1, 2), (2, 1)]

    def test_three_channels_labeling(self):
        assert images(3) == [
            (1, 2, 3),
            (1, 3, 2),
            (2, 1, 3),
            (2, 3, 1),
            (3, 1, 2),
            (3, 2, 1),
        ]

    @pytest.mark.parametrize("n", [0, -1, 9])
    def test_out_of_range(self, n):
        with pytest.raises(SizeLimitError):
            enumerate_orders(n)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_distinct_bijections(self, n):
        orders = enumerate_orders(n)
        assert len(orders) == math.factorial(n)
        assert len({p.image for p in orders}) == math.factorial(n)
        for p in orders:
            assert sorted(p.image) == list(range(1, n + 1))

    @pytest.mark.parametrize("n", range(1, 7))
    def test_labels_are_lexicographic_ranks(self, n):
        assert [p.label for p in enumerate_orders(n)] == list(
            range(1, math.factorial(n) + 1)
        )


class TestApplyOrder:
    def test_cycle(self):
        pi4 = Permutation((2, 3, 1))
        assert apply_order(pi4, ["X1", "X2", "X3"]) == ["X2", "X3", "X1"]

    def test_identity(self):
        assert apply_order(Permutation.identity(4), [10, 20, 30, 40]) == [10, 20, 30, 40]

    def test_swap_last_two(self):
        pi2 = Permutation((1, 3, 2))
        assert apply_order(pi2, ["U1", "U2", "U3"]) == ["U1", "U3", "U2"]

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            apply_order(Permutation((1, 2)), [1, 2, 3])

    def test_invalid_image(self):
        with pytest.raises(ValueError):
            Permutation((1, 1, 3))


@given(st.integers(1, 6).flatmap(lambda n: st.permutations(list(range(1, n + 1)))))
def test_inverse_round_trip(image):
    p = Permutation(tuple(image))
    seq = list(range(100, 100 + p.n))
    assert apply_order(p, apply_order(p.inverse(), seq)) == seq


class TestZeroSubsets:
    def test_two_channels_singletons(self):
        assert [s.members for s in zero_subsets(2, 1)] == [(1,), (2,)]

    def test_empty_subset(self):
        assert [s.members for s in zero_subsets(3, 0)] == [()]

    def test_three_channels_pairs(self):
        assert [s.members for s in zero_subsets(3, 2)] == [(1, 2), (1, 3), (2, 3)]

    @pytest.mark.parametrize("z", [-1, 4])
    def test_out_of_range(self, z):
        with pytest.raises(ValueError):
            zero_subsets(3, z)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_total_count_is_power_of_two(self, n):
        assert sum(len(zero_subsets(n, z)) for z in range(n + 1)) == 2**n

    def test_complement(self):
        s = ZeroSubset(4, (2, 4))
        assert s.z == 2
        assert s.complement == (1, 3)

    def test_unsorted_members_rejected(self):
        with pytest.raises(ValueError):
            ZeroSubset(3, (2, 1))

    def test_member_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            ZeroSubset(3, (1, 4))
