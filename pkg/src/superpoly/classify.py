"""Label sets for simple polynomial functors of types I and II."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .scalars import Field


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p < 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"not a partition: {self.parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return "∅" if not self.parts else "(" + ",".join(map(str, self.parts)) + ")"


def partitions(d: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of d, parts in reverse lexicographic order."""
    for parts in _partitions(d, d if max_part is None else max_part):
        yield Partition(parts)


@lru_cache(maxsize=None)
def _partitions(d: int, max_part: int) -> tuple[tuple[int, ...], ...]:
    if d == 0:
        return ((),)
    out = []
    for first in range(min(d, max_part), 0, -1):
        for rest in _partitions(d - first, first):
            out.append((first,) + rest)
    return tuple(out)


def _check_prime(p: int, allow_zero: bool) -> None:
    if p == 0:
        if not allow_zero:
            raise ValueError(
                "type I labels need an odd prime p: with p = 0 the condition |λ| + p|μ| = d "
                "places no bound on μ"
            )
        return
    Field(p)  # validates odd prime


def labels_type_I(d: int, p: int) -> list[tuple[Partition, Partition]]:
    """Pairs (λ, μ) with |λ| + p|μ| = d."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    _check_prime(p, allow_zero=False)
    out = []
    for k in range(d // p + 1):
        for lam in partitions(d - p * k):
            for mu in partitions(k):
                out.append((lam, mu))
    return out


def admissible_II(lam: Partition, p: int) -> bool:
    """λ_i = λ_{i+1} only when p divides λ_i (never for p = 0)."""
    for a, b in zip(lam.parts, lam.parts[1:]):
        if a == b and (p == 0 or a % p):
            return False
    return True


def labels_type_II(d: int, p: int) -> list[Partition]:
    if d < 0:
        raise ValueError("degree must be non-negative")
    _check_prime(p, allow_zero=True)
    return [lam for lam in partitions(d) if admissible_II(lam, p)]


def weight_compositions(n: int, d: int) -> list[tuple[int, ...]]:
    """Λ(n, d), ordered from (d, 0, ..., 0) down to (0, ..., 0, d)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if n == 1:
        return [(d,)]
    return [(first,) + rest for first in range(d, -1, -1) for rest in weight_compositions(n - 1, d - first)]

