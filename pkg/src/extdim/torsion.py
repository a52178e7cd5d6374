"""The torsion pair attached to a set of simples, layer lengths and bounds.

For a subset S of the simples of finite projective dimension, the torsion class
consists of modules whose top has no composition factor in S. Its torsion
radical ``t_S(M)`` is the submodule generated by the vertex spaces of M outside
S. The layer length counts how often ``t_S`` followed by the radical must be
applied before the torsion part vanishes; together with ``pd S`` it bounds the
extension dimension of the module category.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from extdim.algebra import AlgebraError, BoundQuiverAlgebra
from extdim.certificate import Extension, Leaf, Node, Summand, depth, verify_filtration
from extdim.homological import (
    ExactnessError,
    PdResult,
    ShortExactSequence,
    cosyzygy_ses,
    minimal_resolution,
    omega,
    pd_table,
    proj_dimension,
    resolution_to_filtration,
    syzygy,
    syzygy_ses,
    transport_split,
)
from extdim.logging_config import get_logger
from extdim.module import (
    ModuleMap,
    Representation,
    Submodule,
    hom_space,
    loewy_length,
    projective,
    quotient,
    radical,
    regular_module,
    semisimple_top,
    simple,
    top_dims,
    vertex_components,
)
from extdim.strategies import get_strategy

logger = get_logger(__name__)


class InfiniteProjectiveDimension(ValueError):
    """A subset member's simple has no certified finite projective dimension."""

    def __init__(self, vertex: str, result: PdResult):
        self.vertex = vertex
        self.result = result
        super().__init__(f"Simple S({vertex}) has projective dimension {result}; only finite ones may be used")


# ----------------------------------------------------------------------------
# subsets
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class SimpleSubset:
    """A set of simples, named by their vertices."""

    algebra: BoundQuiverAlgebra
    members: frozenset[str]

    def __post_init__(self) -> None:
        unknown = sorted(v for v in self.members if not self.algebra.quiver.has_vertex(v))
        if unknown:
            raise AlgebraError(f"Unknown vertices in subset: {', '.join(unknown)}")

    @classmethod
    def of(cls, algebra: BoundQuiverAlgebra, members: Iterable[str]) -> SimpleSubset:
        return cls(algebra, frozenset(str(v) for v in members))

    @property
    def ordered(self) -> list[str]:
        return [v for v in self.algebra.vertices if v in self.members]

    @property
    def complement(self) -> list[str]:
        return [v for v in self.algebra.vertices if v not in self.members]

    def projective_dimension(self, table: dict[str, PdResult] | None = None, cutoff: int | None = None) -> int:
        """pd S, the largest pd of a member (-1 for the empty set).

        Raises:
            InfiniteProjectiveDimension: If some member is not certified finite.
        """
        alpha = -1
        for v in self.ordered:
            result = table[v] if table is not None else proj_dimension(simple(self.algebra, v), cutoff)
            if not result.is_finite:
                raise InfiniteProjectiveDimension(v, result)
            alpha = max(alpha, result.value)
        return alpha

    def __str__(self) -> str:
        return "{" + ",".join(self.ordered) + "}"


def finite_pd_vertices(table: dict[str, PdResult]) -> list[str]:
    return [v for v, r in table.items() if r.is_finite]


# ----------------------------------------------------------------------------
# torsion radical and layer length
# ----------------------------------------------------------------------------


def torsion_radical(subset: SimpleSubset, M: Representation) -> Submodule:
    """t_S(M): the submodule generated by the spaces of M at vertices outside S."""
    return vertex_components(M, set(subset.complement))


def torsion_free_quotient(subset: SimpleSubset, M: Representation) -> Representation:
    """M / t_S(M), a module filtered by simples in S."""
    Q = quotient(M, torsion_radical(subset, M))[0]
    return Q.renamed(f"q({M.name})" if M.name else "")


def torsion_pair_failures(subset: SimpleSubset, M: Representation) -> list[str]:
    """Check both defining properties of t_S on M; empty when they hold."""
    problems = []
    t = torsion_radical(subset, M)
    tops = top_dims(t.module)
    for v, d in zip(M.algebra.vertices, tops):
        if d and v in subset.members:
            problems.append(f"top of t(M) contains S({v})")
    rest = torsion_free_quotient(subset, M)
    if not torsion_radical(subset, rest).is_zero():
        problems.append("t(M / t(M)) is not zero")
    return problems


def is_hom_orthogonal(X: Representation, Y: Representation) -> bool:
    return not hom_space(X, Y)


@dataclass(frozen=True)
class LayerStep:
    module: Representation
    torsion: Representation


@dataclass(frozen=True)
class LayerLengthTrace:
    """The chain ``M, t(M), F(M) = rad t(M), t(F(M)), ...`` until the torsion part vanishes."""

    steps: tuple[LayerStep, ...]

    @property
    def length(self) -> int:
        return sum(1 for s in self.steps if not s.torsion.is_zero())

    def dimensions(self) -> list[tuple[int, int]]:
        return [(s.module.dimension, s.torsion.dimension) for s in self.steps]


def layer_module(subset: SimpleSubset, M: Representation) -> Representation:
    """F(M) = rad t_S(M)."""
    return radical(torsion_radical(subset, M).module).module


def layer_length(subset: SimpleSubset, M: Representation) -> tuple[int, LayerLengthTrace]:
    """Least i with ``t_S(F^i(M)) = 0``, with the chain as evidence."""
    steps = []
    current = M
    while True:
        t = torsion_radical(subset, current).module
        steps.append(LayerStep(current, t))
        if t.is_zero():
            break
        current = radical(t).module
    trace = LayerLengthTrace(tuple(steps))
    return trace.length, trace


def algebra_layer_length(subset: SimpleSubset) -> int:
    """Layer length of the regular module, the largest over the indecomposable projectives."""
    return max(projective_layer_lengths(subset).values(), default=0)


def projective_layer_lengths(subset: SimpleSubset) -> dict[str, int]:
    A = subset.algebra
    return {v: layer_length(subset, projective(A, v))[0] for v in A.vertices}


# ----------------------------------------------------------------------------
# bounds
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class SubsetEvaluation:
    members: tuple[str, ...]
    pd: int
    layer_length: int

    @property
    def bound(self) -> int:
        return self.pd + self.layer_length

    def to_json(self) -> dict:
        return {"members": list(self.members), "pd_S": self.pd, "ll_tS": self.layer_length, "bound": self.bound}


@dataclass(frozen=True)
class BestBound:
    subset: SimpleSubset
    bound: int
    evaluations: tuple[SubsetEvaluation, ...] = field(default_factory=tuple)


def evaluate_subset(subset: SimpleSubset, table: dict[str, PdResult] | None = None) -> SubsetEvaluation:
    alpha = subset.projective_dimension(table)
    return SubsetEvaluation(tuple(subset.ordered), alpha, algebra_layer_length(subset))


def torsion_bound(subset: SimpleSubset, table: dict[str, PdResult] | None = None) -> int:
    """``pd S + ll(Lambda)``, an upper bound for the extension dimension of mod Lambda."""
    return evaluate_subset(subset, table).bound


def best_bound(
    algebra: BoundQuiverAlgebra,
    strategy: str = "exhaustive",
    table: dict[str, PdResult] | None = None,
    explicit: Sequence[Iterable[str]] = (),
    cutoff: int | None = None,
) -> BestBound:
    """Search subsets of the finite-pd simples for the smallest torsion bound.

    The empty set and the set of all finite-pd simples are always evaluated.
    Evaluations are reported by size, then by vertex order; ties keep the first.
    """
    if table is None:
        table = pd_table(algebra, cutoff)
    finite = finite_pd_vertices(table)
    wanted = [frozenset(str(v) for v in members) for members in explicit]
    for members in wanted:
        SimpleSubset(algebra, members).projective_dimension(table)
    memo: dict[frozenset[str], SubsetEvaluation] = {}

    def evaluate(members: frozenset[str]) -> SubsetEvaluation:
        if members not in memo:
            memo[members] = evaluate_subset(SimpleSubset(algebra, members), table)
            logger.debug("Subset {%s}: bound %d", ",".join(memo[members].members), memo[members].bound)
        return memo[members]

    get_strategy(strategy, wanted).search(finite, evaluate)
    evaluate(frozenset())
    evaluate(frozenset(finite))
    position = {v: k for k, v in enumerate(algebra.vertices)}
    ordered = sorted(memo.values(), key=lambda e: (len(e.members), [position[v] for v in e.members]))
    best = min(ordered, key=lambda e: e.bound)
    return BestBound(SimpleSubset(algebra, frozenset(best.members)), best.bound, tuple(ordered))


# ----------------------------------------------------------------------------
# certificates
# ----------------------------------------------------------------------------


def torsion_generator(algebra: BoundQuiverAlgebra, alpha: int) -> list[Representation]:
    """The generator of the torsion certificate.

    ``Omega^{-i}(Lambda)`` for ``0 <= i <= alpha + 1``, followed by
    ``Omega^{-alpha-2} Omega^{alpha+1}(Lambda/rad Lambda)``.
    """
    Lambda = regular_module(algebra)
    parts = [syzygy(Lambda, -i) for i in range(alpha + 2)]
    parts.append(syzygy(syzygy(semisimple_top(algebra), alpha + 1), -(alpha + 2)))
    return parts


def _identity_split(X: Representation) -> tuple[ModuleMap, ModuleMap]:
    return ModuleMap.identity(X), ModuleMap.identity(X)


def _push(ses: ShortExactSequence, split, down: int, up: int):
    for _ in range(down):
        ses, split = syzygy_ses(ses, split)
    for _ in range(up):
        ses, split = cosyzygy_ses(ses, split)
    return ses, split


def _torsion_summand(subset: SimpleSubset, W: Representation, down: int, up: int):
    """``Omega^{-up} Omega^{down} W`` as a summand of ``Omega^{-up} Omega^{down} t(W)``.

    ``down`` must exceed the projective dimension of the torsion-free part.
    """
    t = torsion_radical(subset, W)
    _, projection, _ = quotient(W, t)
    seq, (s, r) = _push(ShortExactSequence(t.inclusion, projection), _identity_split(W), down, 0)
    if not seq.right.is_zero():
        raise ExactnessError("torsion-free part has larger projective dimension than the subset allows")
    iso = seq.f
    s, r = iso.inverse() @ s, r @ iso
    return t, transport_split(s, r, -up)


def _ladder(subset: SimpleSubset, W: Representation, down: int, up: int) -> Node:
    """Certificate for ``Omega^{-up} Omega^{down} W`` from the layers ``0 -> F(W) -> t(W) -> top t(W) -> 0``."""
    t, (s, r) = _torsion_summand(subset, W, down, up)
    V = s.source
    if t.is_zero() or V.is_zero():
        return Leaf(V)
    tW = t.module
    rad = radical(tW)
    _, projection, _ = quotient(tW, rad)
    seq, (s2, r2) = _push(ShortExactSequence(rad.inclusion, projection), _identity_split(tW), down, up)
    below = _ladder(subset, rad.module, down, up)
    extension = Extension(seq.middle, seq, below, Leaf(seq.right))
    return Summand(V, extension, s2 @ s, r @ r2)


@dataclass(frozen=True)
class TorsionCertificate:
    subset: SimpleSubset
    module: Representation
    generator: list[Representation]
    root: Node
    bound: int

    @property
    def depth(self) -> int:
        return depth(self.root)

    def verify(self):
        return verify_filtration(self.root, self.generator, self.module, self.bound + 1)


def torsion_certificate(
    subset: SimpleSubset,
    M: Representation,
    table: dict[str, PdResult] | None = None,
    cutoff: int | None = None,
) -> TorsionCertificate:
    """Certificate that M lies in ``<T>_{pd S + ll + 1}`` for the torsion generator T.

    The minimal resolution is truncated after ``pd S + 2`` projectives and turned
    into a filtration; its last term is replaced by the summand chain through
    ``t_S(M)`` and the ladder of radical layers of ``Omega t_S(M)``, all pushed
    through ``Omega^{pd S + 1}`` and back out through ``Omega^{-(pd S + 2)}``.

    Raises:
        InfiniteProjectiveDimension: If a member of the subset has no finite pd.
    """
    A = M.algebra
    alpha = subset.projective_dimension(table, cutoff)
    down, up = alpha + 1, alpha + 2
    generator = torsion_generator(A, alpha)
    res = minimal_resolution(M, length=up)
    tail = None
    if not res.minimal:
        t, (s, r) = _torsion_summand(subset, M, up, up)
        ladder = _ladder(subset, omega(t.module), down, up)
        tail = Summand(s.source, ladder, s, r)
    _, root = resolution_to_filtration(res, tail=tail)
    bound = alpha + algebra_layer_length(subset)
    cert = TorsionCertificate(subset, M, generator, root, bound)
    logger.debug("Torsion certificate for %s: depth %d, bound %d", M.name or "module", cert.depth, bound)
    return cert


def endpoint_identities(algebra: BoundQuiverAlgebra, table: dict[str, PdResult]) -> dict[str, bool]:
    """The empty subset gives LL - 1; all finite-pd simples give gldim when it is finite."""
    empty = torsion_bound(SimpleSubset(algebra, frozenset()), table)
    checks = {"empty": empty == loewy_length(regular_module(algebra)) - 1}
    results = list(table.values())
    if all(r.is_finite for r in results):
        everything = torsion_bound(SimpleSubset(algebra, frozenset(algebra.vertices)), table)
        checks["all"] = everything == max(r.value for r in results)
    return checks
