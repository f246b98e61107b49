"""Coalition structures: partitions of the agents into exactly k non-empty blocks."""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Iterable, Iterator, Optional, Tuple


class SizeConstraint(Enum):
    NONE = "none"
    EQUAL_SIZE = "equal-size"


def equal_size_multiset(n: int, k: int) -> Tuple[int, ...]:
    """Block sizes under the equal-size rule: n mod k blocks of ceil(n/k), the rest floor."""
    q, r = divmod(n, k)
    return tuple(sorted([q + 1] * r + [q] * (k - r)))


@dataclass(frozen=True)
class CoalitionStructure:
    """A partition of [0, n) into exactly k non-empty coalitions.

    Canonical form: blocks ordered by their minimum element.
    """

    blocks: Tuple[FrozenSet[int], ...]

    @classmethod
    def of(cls, blocks: Iterable[Iterable[int]]) -> "CoalitionStructure":
        bs = tuple(sorted((frozenset(b) for b in blocks), key=min))
        agents: set = set()
        total = 0
        for b in bs:
            if not b:
                raise ValueError("empty coalition")
            agents |= b
            total += len(b)
        if total != len(agents) or agents != set(range(total)):
            raise ValueError("blocks must partition a contiguous agent range [0, n)")
        return cls(bs)

    @classmethod
    def from_masks(cls, masks: Iterable[int]) -> "CoalitionStructure":
        blocks = []
        for mask in masks:
            members = frozenset(_bits(mask))
            blocks.append(members)
        return cls.of(blocks)

    @property
    def k(self) -> int:
        return len(self.blocks)

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    def masks(self) -> Tuple[int, ...]:
        return tuple(sum(1 << a for a in b) for b in self.blocks)

    def __str__(self) -> str:
        return " | ".join("{" + ",".join(map(str, sorted(b))) + "}" for b in self.blocks)


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def coalition_of(partition: CoalitionStructure, a: int) -> FrozenSet[int]:
    for b in partition.blocks:
        if a in b:
            return b
    raise ValueError(f"agent {a} out of range")


def _check_nk(n: int, k: int) -> None:
    if not 0 < k <= n:
        raise ValueError(f"need 0 < k <= n, got k={k}, n={n}")


def iter_partition_masks(
    n: int, k: int, sizes: Optional[Tuple[int, ...]] = None
) -> Iterator[Tuple[int, ...]]:
    """Block bitmasks of every partition of [0,n) into exactly k blocks.

    Enumeration follows the lexicographic order of restricted-growth strings;
    blocks inside a partition appear in order of their minima (block of agent 0
    first).  `sizes` restricts output to a sorted block-size multiset.
    """
    _check_nk(n, k)
    masks = [0] * k
    want = None if sizes is None else tuple(sorted(sizes))

    def rec(i: int, used: int) -> Iterator[Tuple[int, ...]]:
        if k - used > n - i:
            return
        if i == n:
            if used == k and (want is None or tuple(sorted(m.bit_count() for m in masks)) == want):
                yield tuple(masks)
            return
        top = min(used + 1, k)
        for b in range(top):
            masks[b] |= 1 << i
            yield from rec(i + 1, max(used, b + 1))
            masks[b] &= ~(1 << i)

    yield from rec(0, 0)


def _sizes_for(n: int, k: int, constraint: SizeConstraint) -> Optional[Tuple[int, ...]]:
    return equal_size_multiset(n, k) if constraint is SizeConstraint.EQUAL_SIZE else None


def enumerate_partitions(
    n: int, k: int, constraint: SizeConstraint = SizeConstraint.NONE
) -> Iterator[CoalitionStructure]:
    for masks in iter_partition_masks(n, k, _sizes_for(n, k, constraint)):
        yield CoalitionStructure.from_masks(masks)


def count_partitions(n: int, k: int, constraint: SizeConstraint = SizeConstraint.NONE) -> int:
    """Closed-form partition count; the enumerator serves as its cross-check."""
    _check_nk(n, k)
    if constraint is SizeConstraint.NONE:
        return _stirling2(n, k)
    sizes = equal_size_multiset(n, k)
    count = math.factorial(n)
    for s in sizes:
        count //= math.factorial(s)
    q, r = divmod(n, k)
    # blocks of equal size are interchangeable
    count //= math.factorial(k - r) * math.factorial(r)
    return count


def _stirling2(n: int, k: int) -> int:
    row = [1] + [0] * k
    for i in range(1, n + 1):
        new = [0] * (k + 1)
        for j in range(1, min(i, k) + 1):
            new[j] = j * row[j] + row[j - 1]
        row = new
    return row[k]
