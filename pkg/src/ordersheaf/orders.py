"""Total orders over integer alternative ids.

An order is stored best-to-worst; pairwise comparisons come from positions.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import AbstractSet, Iterable, Iterator

from .errors import CapacityError, DomainError

#: Largest domain for which :func:`all_total_orders` will enumerate (10! ~ 3.6M).
ENUMERATION_CAP = 10


@dataclass(frozen=True)
class TotalOrder:
    """A strict ranking of distinct alternative ids, best first."""

    ranking: tuple[int, ...]
    _positions: dict[int, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        ranking = tuple(int(a) for a in self.ranking)
        if not ranking:
            raise DomainError("a total order needs at least one alternative")
        positions = {a: i for i, a in enumerate(ranking)}
        if len(positions) != len(ranking):
            raise DomainError(f"duplicate alternatives in ranking {ranking}")
        object.__setattr__(self, "ranking", ranking)
        object.__setattr__(self, "_positions", positions)

    @classmethod
    def of(cls, *ranking: int) -> "TotalOrder":
        return cls(tuple(ranking))

    @cached_property
    def domain(self) -> frozenset[int]:
        return frozenset(self.ranking)

    def __len__(self) -> int:
        return len(self.ranking)

    def __iter__(self) -> Iterator[int]:
        return iter(self.ranking)

    def position(self, a: int) -> int:
        try:
            return self._positions[a]
        except KeyError:
            raise DomainError(f"alternative {a} is not ranked by {self.ranking}") from None

    def prefers(self, a: int, b: int) -> bool:
        """True if ``a`` is ranked above ``b``."""
        return self.position(a) < self.position(b)

    def restrict(self, subset: AbstractSet[int] | Iterable[int]) -> "TotalOrder":
        return restrict_order(self, subset)

    def format(self, labels: tuple[str, ...] | None = None) -> str:
        if labels is None:
            return ">".join(str(a) for a in self.ranking)
        return ">".join(labels[a] for a in self.ranking)


def restrict_order(order: TotalOrder, subset: AbstractSet[int] | Iterable[int]) -> TotalOrder:
    """Project ``order`` onto ``subset``, keeping relative positions.

    Raises :class:`DomainError` if ``subset`` is empty or leaves the order's domain.
    """
    subset = frozenset(subset)
    if not subset:
        raise DomainError("cannot restrict an order to the empty set")
    outside = subset - order.domain
    if outside:
        raise DomainError(f"alternatives {sorted(outside)} are not in the order's domain")
    return TotalOrder(tuple(a for a in order.ranking if a in subset))


def kendall_tau(p: TotalOrder, q: TotalOrder) -> int:
    """Number of unordered pairs ranked oppositely by ``p`` and ``q``."""
    if p.domain != q.domain:
        raise DomainError("kendall_tau needs orders over the same alternatives")
    qpos = [q.position(a) for a in p.ranking]
    n = len(qpos)
    return sum(1 for i in range(n) for j in range(i + 1, n) if qpos[i] > qpos[j])


def all_total_orders(domain: Iterable[int], cap: int = ENUMERATION_CAP) -> list[TotalOrder]:
    """Every total order on ``domain``, lexicographic by id."""
    items = sorted(set(domain))
    if not items:
        raise DomainError("cannot enumerate orders of an empty domain")
    if len(items) > cap:
        raise CapacityError(f"refusing to enumerate {len(items)}! orders (cap is {cap})")
    return [TotalOrder(p) for p in itertools.permutations(items)]
