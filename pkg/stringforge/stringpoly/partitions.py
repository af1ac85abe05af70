"""Integer partitions used as multi-indices for s- and r-jets."""

from dataclasses import dataclass
from typing import Iterator, List, Tuple

from ..utils.validators import parse_partition_text


@dataclass(frozen=True, order=True)
class Partition:
    """Weakly decreasing tuple of positive parts; ``()`` is the empty partition."""

    parts: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        if any(p <= 0 for p in parts):
            raise ValueError("Partition parts must be positive")
        if list(parts) != sorted(parts, reverse=True):
            raise ValueError("Partition parts must be weakly decreasing")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(sorted(parts, reverse=True)))

    @classmethod
    def from_text(cls, text: str) -> "Partition":
        return cls(parse_partition_text(text))

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def is_empty(self) -> bool:
        return not self.parts

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __str__(self) -> str:
        return "+".join(str(p) for p in self.parts) if self.parts else "φ"


EMPTY = Partition()


def partitions_of(n: int, largest: int = 0) -> Iterator[Partition]:
    """Partitions of ``n`` in reverse lexicographic order (``3, 2+1, 1+1+1``)."""
    if n == 0:
        yield EMPTY
        return
    largest = largest or n
    for first in range(min(n, largest), 0, -1):
        for rest in partitions_of(n - first, first):
            yield Partition((first,) + rest.parts)


def partition_pairs(max_weight: int) -> List[Tuple[Partition, Partition]]:
    """All ``(lambda, eta)`` with ``|lambda| + |eta| <= max_weight``.

    Ordered by total weight, then by ``|eta|`` ascending, then by the
    partitions themselves in reverse lexicographic order.
    """
    pairs: List[Tuple[Partition, Partition]] = []
    for weight in range(max_weight + 1):
        for eta_size in range(weight + 1):
            for lam in partitions_of(weight - eta_size):
                for eta in partitions_of(eta_size):
                    pairs.append((lam, eta))
    return pairs


__all__ = ["Partition", "EMPTY", "partitions_of", "partition_pairs"]
