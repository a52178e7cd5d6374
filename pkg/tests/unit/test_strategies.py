"""Tests for extdim.strategies module."""

from dataclasses import dataclass

import pytest

from extdim.strategies import (
    EXHAUSTIVE_LIMIT,
    EndpointsStrategy,
    ExhaustiveStrategy,
    ExplicitStrategy,
    SingletonGreedyStrategy,
    SubsetStrategy,
    get_strategy,
    list_strategies,
    register_strategy,
)


@dataclass(frozen=True)
class FakeEvaluation:
    bound: int


class Recorder:
    """Evaluate callback that remembers what it was asked."""

    def __init__(self, score=lambda members: len(members)):
        self.score = score
        self.seen: list[frozenset[str]] = []

    def __call__(self, members):
        self.seen.append(members)
        return FakeEvaluation(self.score(members))


class TestRegistry:
    """Test strategy registration."""

    def test_builtin_strategies(self):
        assert list_strategies() == ["endpoints", "exhaustive", "explicit", "singleton-greedy"]

    def test_get_strategy(self):
        assert isinstance(get_strategy("endpoints"), EndpointsStrategy)
        assert get_strategy("singleton-greedy").name == "singleton-greedy"

    def test_unknown(self):
        with pytest.raises(ValueError, match="Unknown subset strategy"):
            get_strategy("annealing")

    def test_duplicate_name(self):
        with pytest.raises(ValueError, match="already registered"):

            @register_strategy("endpoints")
            class Again(SubsetStrategy):
                pass

    def test_base_class_is_abstract(self):
        with pytest.raises(TypeError):
            SubsetStrategy()


class TestSearch:
    """Test which subsets each strategy evaluates."""

    def test_endpoints(self):
        rec = Recorder()
        EndpointsStrategy().search(["1", "2"], rec)
        assert rec.seen == [frozenset(), frozenset({"1", "2"})]

    def test_exhaustive(self):
        rec = Recorder()
        ExhaustiveStrategy().search(["1", "2", "3"], rec)
        assert len(rec.seen) == 8
        assert len(set(rec.seen)) == 8

    def test_exhaustive_falls_back_past_limit(self, caplog_extdim):
        finite = [str(k) for k in range(EXHAUSTIVE_LIMIT + 1)]
        rec = Recorder(score=lambda members: 1)
        ExhaustiveStrategy().search(finite, rec)
        assert "exceed the exhaustive limit" in caplog_extdim.text
        assert len(rec.seen) < 2 ** len(finite)

    def test_greedy_stops_when_worse(self):
        def score(members):
            return 3 - len(members & {"a", "b"}) + len(members & {"c"})

        rec = Recorder(score)
        SingletonGreedyStrategy().search(["a", "b", "c"], rec)
        assert frozenset({"a", "b"}) in rec.seen
        assert frozenset({"a", "b", "c"}) in rec.seen
        assert frozenset({"b", "c"}) not in rec.seen

    def test_explicit(self):
        rec = Recorder()
        ExplicitStrategy([frozenset({"2"})]).search(["1", "2"], rec)
        assert rec.seen == [frozenset(), frozenset({"1", "2"}), frozenset({"2"})]

    def test_explicit_through_registry(self):
        strategy = get_strategy("explicit", [frozenset({"3"})])
        assert strategy.explicit == [frozenset({"3"})]
