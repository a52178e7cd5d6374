"""Subset-search strategies for the torsion bound.

Strategies register themselves by name; ``get_strategy`` builds one for a
search. Each strategy receives the vertices whose simples have finite
projective dimension and an ``evaluate`` callback, and returns the subsets it
looked at.
"""

from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from collections.abc import Callable, Sequence
from typing import TYPE_CHECKING

from extdim.logging_config import get_logger

if TYPE_CHECKING:
    from extdim.torsion import SubsetEvaluation

logger = get_logger(__name__)

Evaluate = Callable[[frozenset[str]], "SubsetEvaluation"]

# Largest number of finite-pd simples searched exhaustively
EXHAUSTIVE_LIMIT = 20

# Global registry mapping strategy names to classes
_registry: dict[str, type[SubsetStrategy]] = {}


def register_strategy(name: str) -> Callable[[type[SubsetStrategy]], type[SubsetStrategy]]:
    """Decorator to register a strategy class.

    Usage:
        @register_strategy("endpoints")
        class EndpointsStrategy(SubsetStrategy):
            ...
    """

    def decorator(cls: type[SubsetStrategy]) -> type[SubsetStrategy]:
        if name in _registry:
            raise ValueError(f"Strategy '{name}' is already registered")
        cls.name = name
        _registry[name] = cls
        return cls

    return decorator


def get_strategy(name: str, explicit: Sequence[frozenset[str]] | None = None) -> SubsetStrategy:
    """Instantiate a registered strategy.

    Raises:
        ValueError: If no strategy has that name.
    """
    if name not in _registry:
        registered = ", ".join(sorted(_registry))
        raise ValueError(f"Unknown subset strategy: '{name}'. Registered strategies: {registered}")
    return _registry[name](explicit or [])


def list_strategies() -> list[str]:
    return sorted(_registry)


class SubsetStrategy(ABC):
    """Base class: decides which subsets of the finite-pd simples get evaluated."""

    name: str = ""

    def __init__(self, explicit: Sequence[frozenset[str]] = ()):
        self.explicit = list(explicit)

    @abstractmethod
    def search(self, finite: Sequence[str], evaluate: Evaluate) -> None:
        """Call ``evaluate`` on every subset of ``finite`` this strategy considers."""


@register_strategy("endpoints")
class EndpointsStrategy(SubsetStrategy):
    """Only the empty set and the set of all finite-pd simples."""

    def search(self, finite: Sequence[str], evaluate: Evaluate) -> None:
        evaluate(frozenset())
        evaluate(frozenset(finite))


@register_strategy("exhaustive")
class ExhaustiveStrategy(SubsetStrategy):
    def search(self, finite: Sequence[str], evaluate: Evaluate) -> None:
        if len(finite) > EXHAUSTIVE_LIMIT:
            logger.warning(
                "%d simples of finite projective dimension exceed the exhaustive limit %d; searching greedily",
                len(finite),
                EXHAUSTIVE_LIMIT,
            )
            SingletonGreedyStrategy().search(finite, evaluate)
            return
        for size in range(len(finite) + 1):
            for members in itertools.combinations(finite, size):
                evaluate(frozenset(members))


@register_strategy("singleton-greedy")
class SingletonGreedyStrategy(SubsetStrategy):
    """Grow a subset one simple at a time while the bound does not get worse."""

    def search(self, finite: Sequence[str], evaluate: Evaluate) -> None:
        current = frozenset()
        best = evaluate(current).bound
        evaluate(frozenset(finite))
        remaining = list(finite)
        while remaining:
            scored = [(evaluate(current | {v}).bound, k) for k, v in enumerate(remaining)]
            bound, k = min(scored)
            if bound > best:
                break
            best = bound
            current = current | {remaining.pop(k)}


@register_strategy("explicit")
class ExplicitStrategy(SubsetStrategy):
    """The given subsets plus both endpoints."""

    def search(self, finite: Sequence[str], evaluate: Evaluate) -> None:
        EndpointsStrategy().search(finite, evaluate)
        for members in self.explicit:
            evaluate(frozenset(members))
