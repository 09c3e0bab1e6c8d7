"""Causal orders as elements of S_N, plus the zero-index subsets A_z.

Channel slots and causal-order labels are 1-based throughout, matching
one-line notation (pi(1), ..., pi(n)). The label k of a causal order is its
1-based rank in lexicographic order of image tuples, so for n = 3 the six
orders are pi_1 = (1,2,3), pi_2 = (1,3,2), pi_3 = (2,1,3), pi_4 = (2,3,1),
pi_5 = (3,1,2), pi_6 = (3,2,1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Sequence, TypeVar

from .errors import SizeLimitError

# n! factors appear in matrix dimensions downstream; 8! = 40320 is already
# far beyond anything the simulator can realize.
MAX_ORDER_CHANNELS = 8

T = TypeVar("T")


@dataclass(frozen=True)
class Permutation:
    """A causal order in one-line notation: position j holds channel image[j-1]."""

    image: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "image", tuple(int(v) for v in self.image))
        n = len(self.image)
        if sorted(self.image) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {self.image}")

    @property
    def n(self) -> int:
        return len(self.image)

    @property
    def label(self) -> int:
        """1-based rank of this permutation in lexicographic order."""
        rank = 0
        for j, v in enumerate(self.image):
            smaller = sum(1 for w in self.image[j + 1 :] if w < v)
            rank += smaller * math.factorial(self.n - 1 - j)
        return rank + 1

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for j, v in enumerate(self.image):
            inv[v - 1] = j + 1
        return Permutation(tuple(inv))

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))


def enumerate_orders(n: int) -> list[Permutation]:
    """All n! causal orders on n channels, in lexicographic order.

    The list index + 1 equals each order's label k.
    """
    if not 1 <= n <= MAX_ORDER_CHANNELS:
        raise SizeLimitError(
            f"causal-order enumeration supports 1..{MAX_ORDER_CHANNELS} channels, got n={n}"
        )
    return [Permutation(img) for img in permutations(range(1, n + 1))]


def apply_order(p: Permutation, factors: Sequence[T]) -> list[T]:
    """Rearrange factors so output position j holds factors[p.image[j]-1].

    For pi_4 = (2,3,1) this maps (X1, X2, X3) to (X2, X3, X1); read as an
    operator product X2 X3 X1 it applies channel 1 first and channel 2 last.
    """
    if len(factors) != p.n:
        raise ValueError(f"expected {p.n} factors, got {len(factors)}")
    return [factors[j - 1] for j in p.image]


@dataclass(frozen=True)
class ZeroSubset:
    """A set A_z of channel slots whose Kraus index is pinned to zero.

    The complement B_z holds the slots that still carry a summed unitary.
    """

    n: int
    members: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(int(v) for v in self.members))
        if list(self.members) != sorted(set(self.members)):
            raise ValueError(f"members must be sorted and distinct: {self.members}")
        if self.members and not (1 <= self.members[0] and self.members[-1] <= self.n):
            raise ValueError(f"members must lie in 1..{self.n}: {self.members}")

    @property
    def z(self) -> int:
        return len(self.members)

    @property
    def complement(self) -> tuple[int, ...]:
        inside = set(self.members)
        return tuple(j for j in range(1, self.n + 1) if j not in inside)


def zero_subsets(n: int, z: int) -> list[ZeroSubset]:
    """All C(n, z) size-z subsets of {1..n}, in lexicographic order."""
    if not 0 <= z <= n:
        raise ValueError(f"subset size must be in 0..{n}, got z={z}")
    return [ZeroSubset(n, members) for members in combinations(range(1, n + 1), z)]
