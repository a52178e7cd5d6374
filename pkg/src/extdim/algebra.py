"""Bound quiver algebras kQ/I with an explicit path basis.

Paths compose left to right: ``a.b`` means ``a`` followed by ``b``, so for
``a: i -> j`` and ``b: j -> l`` the path runs from ``i`` to ``l``. The algebra is
built by pure linear algebra: the ideal is spanned by all two-sided shifts
``p.r.q`` of the relations inside a truncated window of path lengths, and the
quotient basis is read off an exact row reduction.
"""

from __future__ import annotations

import itertools
import random
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import networkx as nx

from extdim import linalg
from extdim.field import FieldSpec
from extdim.logging_config import get_logger

logger = get_logger(__name__)

DEFAULT_LENGTH_CAP = 64
DEFAULT_COUNT_CAP = 20000


class AlgebraError(ValueError):
    """Raised for an invalid quiver, relation set or algebra operation."""


@dataclass(frozen=True)
class Arrow:
    """An arrow ``id: source -> target``."""

    id: str
    source: str
    target: str

    def reversed(self) -> Arrow:
        return Arrow(self.id, self.target, self.source)


@dataclass(frozen=True, order=True)
class Path:
    """A path of the quiver; ``arrows == ()`` is the trivial path at ``source``."""

    source: str
    arrows: tuple[str, ...] = ()
    target: str = ""

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    def __str__(self) -> str:
        if self.is_trivial:
            return f"e{self.source}"
        return ".".join(self.arrows)


@dataclass(frozen=True)
class Relation:
    """A linear combination of parallel paths, each a tuple of arrow ids."""

    terms: tuple[tuple[Fraction, tuple[str, ...]], ...]

    @classmethod
    def of(cls, *terms: tuple[int | Fraction, Sequence[str]]) -> Relation:
        return cls(tuple((Fraction(c), tuple(p)) for c, p in terms))

    @classmethod
    def monomial(cls, *arrows: str) -> Relation:
        return cls(((Fraction(1), tuple(arrows)),))

    @property
    def lengths(self) -> set[int]:
        return {len(p) for _, p in self.terms}

    @property
    def is_homogeneous(self) -> bool:
        return len(self.lengths) <= 1

    def reversed(self) -> Relation:
        return Relation(tuple((c, tuple(reversed(p))) for c, p in self.terms))


@dataclass(frozen=True)
class Quiver:
    """Finite quiver with named vertices and uniquely named arrows."""

    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self) -> None:
        if not self.vertices:
            raise AlgebraError("A quiver needs at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise AlgebraError("Vertex names must be unique")
        known = set(self.vertices)
        seen: set[str] = set()
        for arrow in self.arrows:
            if arrow.id in seen:
                raise AlgebraError(f"Duplicate arrow id '{arrow.id}'")
            seen.add(arrow.id)
            for end in (arrow.source, arrow.target):
                if end not in known:
                    raise AlgebraError(f"Arrow '{arrow.id}' uses unknown vertex '{end}'")

    @cached_property
    def _arrow_index(self) -> dict[str, Arrow]:
        return {a.id: a for a in self.arrows}

    @cached_property
    def _vertex_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def _arrow_order(self) -> dict[str, int]:
        return {a.id: i for i, a in enumerate(self.arrows)}

    def arrow(self, arrow_id: str) -> Arrow:
        try:
            return self._arrow_index[arrow_id]
        except KeyError:
            raise AlgebraError(f"Unknown arrow '{arrow_id}'") from None

    def vertex_index(self, vertex: str) -> int:
        try:
            return self._vertex_index[str(vertex)]
        except KeyError:
            raise AlgebraError(f"Unknown vertex '{vertex}'") from None

    def has_vertex(self, vertex: str) -> bool:
        return str(vertex) in self._vertex_index

    def has_arrow(self, arrow_id: str) -> bool:
        return arrow_id in self._arrow_index

    def arrows_from(self, vertex: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == vertex]

    def arrows_to(self, vertex: str) -> list[Arrow]:
        return [a for a in self.arrows if a.target == vertex]

    def path(self, arrow_ids: Sequence[str]) -> Path:
        """Validate composability and return the path."""
        if not arrow_ids:
            raise AlgebraError("Use trivial(vertex) for paths of length 0")
        arrows = [self.arrow(a) for a in arrow_ids]
        for first, second in itertools.pairwise(arrows):
            if first.target != second.source:
                raise AlgebraError(f"Arrows '{first.id}' and '{second.id}' do not compose")
        return Path(arrows[0].source, tuple(arrow_ids), arrows[-1].target)

    def trivial(self, vertex: str) -> Path:
        self.vertex_index(vertex)
        return Path(vertex, (), vertex)

    def sort_key(self, path: Path) -> tuple:
        return (path.length, self._vertex_index[path.source], tuple(self._arrow_order[a] for a in path.arrows))

    def opposite(self) -> Quiver:
        return Quiver(self.vertices, tuple(a.reversed() for a in self.arrows))

    def graph(self) -> nx.MultiDiGraph:
        """The quiver as a networkx multigraph keyed by arrow id."""
        g = nx.MultiDiGraph()
        g.add_nodes_from(self.vertices)
        for a in self.arrows:
            g.add_edge(a.source, a.target, key=a.id)
        return g

    def is_convex(self, subset: Iterable[str]) -> bool:
        """True when every path between vertices of ``subset`` stays inside it."""
        chosen = {str(v) for v in subset}
        g = self.graph()
        for u in chosen:
            for w in chosen:
                between = nx.descendants(g, u) & nx.ancestors(g, w)
                if not between <= chosen:
                    return False
        return True

    def is_connected(self) -> bool:
        return nx.is_weakly_connected(self.graph())


def _paths_of_length(quiver: Quiver, previous: list[Path]) -> list[Path]:
    out = []
    for p in previous:
        for a in quiver.arrows_from(p.target):
            out.append(Path(p.source, p.arrows + (a.id,), a.target))
    return out


def _concat(left: Path, right: Path) -> Path | None:
    if left.target != right.source:
        return None
    return Path(left.source, left.arrows + right.arrows, right.target)


class BoundQuiverAlgebra:
    """A finite-dimensional algebra kQ/I with path basis and structure constants.

    Args:
        field: Ground field.
        quiver: The quiver Q.
        relations: Generators of the admissible ideal I.
        name: Label used in reports.
        length_cap: Give up if no window length up to this makes every path zero.
        count_cap: Give up if the window holds more paths than this.
    """

    def __init__(
        self,
        field: FieldSpec,
        quiver: Quiver,
        relations: Sequence[Relation] = (),
        name: str = "algebra",
        length_cap: int = DEFAULT_LENGTH_CAP,
        count_cap: int = DEFAULT_COUNT_CAP,
    ):
        self.field = field
        self.quiver = quiver
        self.relations = tuple(relations)
        self.name = name
        self.length_cap = length_cap
        self.count_cap = count_cap
        self._opposite: BoundQuiverAlgebra | None = None
        self._relation_paths = [self._check_relation(r) for r in self.relations]
        if not all(r.is_homogeneous for r in self.relations):
            logger.warning(
                "Algebra '%s' has relations mixing path lengths; admissibility is only checked on truncations",
                name,
            )
        self._build()

    def _check_relation(self, relation: Relation) -> list[tuple[object, Path]]:
        if not relation.terms:
            raise AlgebraError("Empty relation")
        K = self.field.domain
        terms = []
        for coeff, arrows in relation.terms:
            if len(arrows) < 2:
                raise AlgebraError(f"Relation path '{'.'.join(arrows)}' has length < 2")
            terms.append((self.field.convert(coeff), self.quiver.path(arrows)))
        ends = {(p.source, p.target) for _, p in terms}
        if len(ends) != 1:
            raise AlgebraError("Relation paths are not parallel: " + ", ".join(str(p) for _, p in terms))
        return [(c, p) for c, p in terms if not K.is_zero(c)]

    # ------------------------------------------------------------------
    # construction
    # ------------------------------------------------------------------

    def _paths_up_to(self, length: int) -> list[list[Path]]:
        layers = [[Path(v, (), v) for v in self.quiver.vertices]]
        total = len(layers[0])
        for _ in range(length):
            layers.append(_paths_of_length(self.quiver, layers[-1]))
            total += len(layers[-1])
            if total > self.count_cap:
                raise AlgebraError(
                    f"More than {self.count_cap} paths of length <= {len(layers) - 1}; "
                    "the ideal does not look admissible"
                )
        return layers

    def _ideal_generators(self, layers: list[list[Path]], window: int) -> list[dict[Path, object]]:
        """Shifts p.r.q truncated to paths of length <= window."""
        K = self.field.domain
        gens = []
        for terms in self._relation_paths:
            if not terms:
                continue
            shortest = min(p.length for _, p in terms)
            source, target = terms[0][1].source, terms[0][1].target
            for left_len in range(window - shortest + 1):
                lefts = [p for p in layers[left_len] if p.target == source]
                for right_len in range(window - shortest - left_len + 1):
                    rights = [q for q in layers[right_len] if q.source == target]
                    for p in lefts:
                        for q in rights:
                            vec: dict[Path, object] = {}
                            for c, r in terms:
                                full = Path(p.source, p.arrows + r.arrows + q.arrows, q.target)
                                if full.length <= window:
                                    vec[full] = vec.get(full, K.zero) + c
                            vec = {k: v for k, v in vec.items() if not K.is_zero(v)}
                            if vec:
                                gens.append(vec)
        return gens

    def _span_matrix(self, gens, columns: dict[Path, int]):
        K = self.field.domain
        dod = {i: {columns[p]: c for p, c in g.items() if p in columns} for i, g in enumerate(gens)}
        return linalg.from_dod(dod, (len(gens), len(columns)), K)

    def _build(self) -> None:
        K = self.field.domain
        degree = None
        for window in range(1, self.length_cap + 1):
            layers = self._paths_up_to(window)
            top_layer = layers[window]
            if not top_layer:
                degree = window
                break
            ordered = [p for layer in layers for p in layer]
            columns = {p: i for i, p in enumerate(ordered)}
            gens = self._ideal_generators(layers, window)
            G = self._span_matrix(gens, columns)
            units = linalg.from_dod(
                {k: {columns[p]: K.one} for k, p in enumerate(top_layer)}, (len(top_layer), len(columns)), K
            )
            if linalg.rank(linalg.vstack([G, units], K)) == linalg.rank(G):
                degree = window
                break
        if degree is None:
            raise AlgebraError(f"Ideal is not admissible within path length {self.length_cap}")
        self._degree = degree

        layers = self._paths_up_to(degree - 1)
        short = sorted((p for layer in layers for p in layer), key=self.quiver.sort_key)
        # reversed columns make the longest paths pivots, leaving short paths as basis
        reversed_paths = list(reversed(short))
        columns = {p: i for i, p in enumerate(reversed_paths)}
        gens = self._ideal_generators(layers, degree - 1)
        R, pivots = linalg.rref(self._span_matrix(gens, columns))
        pivot_set = set(pivots)
        self.basis: tuple[Path, ...] = tuple(p for p in short if columns[p] not in pivot_set)
        self._basis_index = {p: i for i, p in enumerate(self.basis)}
        rows = linalg.dod(R)
        self._normal: dict[Path, dict[int, object]] = {}
        for p in self.basis:
            self._normal[p] = {self._basis_index[p]: K.one}
        for row_index, col in enumerate(pivots):
            path = reversed_paths[col]
            nf = {}
            for j, v in rows.get(row_index, {}).items():
                if j != col and not K.is_zero(v):
                    nf[self._basis_index[reversed_paths[j]]] = -v
            self._normal[path] = nf
        self._table = self._multiplication_table()
        logger.debug("Built algebra '%s': dim %d, Loewy length %d", self.name, len(self.basis), degree)

    def _multiplication_table(self) -> dict[tuple[int, int], dict[int, object]]:
        table = {}
        for i, left in enumerate(self.basis):
            for j, right in enumerate(self.basis):
                joined = _concat(left, right)
                if joined is None:
                    continue
                nf = self.normal_form(joined)
                if nf:
                    table[(i, j)] = nf
        return table

    # ------------------------------------------------------------------
    # queries
    # ------------------------------------------------------------------

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.quiver.vertices

    @property
    def arrows(self) -> tuple[Arrow, ...]:
        return self.quiver.arrows

    def nilpotency_degree(self) -> int:
        """Least N with every path of length >= N in the ideal (the Loewy length)."""
        return self._degree

    def normal_form(self, path: Path) -> dict[int, object]:
        """Coordinates of the residue class of a path in the basis."""
        if path.length >= self._degree:
            return {}
        try:
            return dict(self._normal[path])
        except KeyError:
            raise AlgebraError(f"'{path}' is not a path of this quiver") from None

    def relation_terms(self) -> list[list[tuple[object, Path]]]:
        """Relations as (domain coefficient, path) pairs."""
        return [list(terms) for terms in self._relation_paths]

    def basis_index(self, path: Path) -> int:
        return self._basis_index[path]

    def basis_from(self, vertex: str) -> list[int]:
        """Indices of basis paths starting at ``vertex`` (a basis of e_v Lambda)."""
        return [i for i, p in enumerate(self.basis) if p.source == vertex]

    def basis_between(self, source: str, target: str) -> list[int]:
        return [i for i, p in enumerate(self.basis) if p.source == source and p.target == target]

    def element(self, path: Path | Sequence[str] | str) -> list:
        """Coordinate vector of a path given as Path, arrow ids or ``"a.b"``/``"e1"`` text."""
        if isinstance(path, str):
            if path.startswith("e") and self.quiver.has_vertex(path[1:]) and not self.quiver.has_arrow(path):
                path = self.quiver.trivial(path[1:])
            else:
                path = self.quiver.path(path.split("."))
        elif not isinstance(path, Path):
            path = self.quiver.path(list(path))
        K = self.field.domain
        vec = [K.zero] * self.dimension
        for k, v in self.normal_form(path).items():
            vec[k] = v
        return vec

    def unit(self) -> list:
        K = self.field.domain
        vec = [K.zero] * self.dimension
        for v in self.vertices:
            vec[self._basis_index[Path(v, (), v)]] = K.one
        return vec

    def multiply(self, a: Sequence, b: Sequence) -> list:
        """Product of two coordinate vectors, extending the table bilinearly."""
        n = self.dimension
        if len(a) != n or len(b) != n:
            raise AlgebraError(f"Vectors must have length {n}, got {len(a)} and {len(b)}")
        K = self.field.domain
        a = [self._coerce(x) for x in a]
        b = [self._coerce(x) for x in b]
        out = [K.zero] * n
        for (i, j), nf in self._table.items():
            if K.is_zero(a[i]) or K.is_zero(b[j]):
                continue
            c = a[i] * b[j]
            for k, v in nf.items():
                out[k] += c * v
        return out

    def _coerce(self, x):
        if isinstance(x, (int, Fraction, str)):
            return self.field.convert(x)
        return x

    def product_table(self) -> dict[tuple[int, int], dict[int, object]]:
        return {k: dict(v) for k, v in self._table.items()}

    def random_element(self, rng: random.Random) -> list:
        return [self.field.random_element(rng) for _ in range(self.dimension)]

    def is_homogeneous(self) -> bool:
        return all(r.is_homogeneous for r in self.relations)

    def opposite(self) -> BoundQuiverAlgebra:
        """The opposite algebra; ``A.opposite().opposite() is A``."""
        if self._opposite is None:
            op = BoundQuiverAlgebra(
                self.field,
                self.quiver.opposite(),
                [r.reversed() for r in self.relations],
                name=f"{self.name}^op",
                length_cap=self.length_cap,
                count_cap=self.count_cap,
            )
            op._opposite = self
            self._opposite = op
        return self._opposite

    def to_text(self) -> str:
        from extdim.fileformat import format_algebra

        return format_algebra(self)

    @cached_property
    def _key(self) -> tuple:
        return (self.field, self.quiver, self.relations)

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, BoundQuiverAlgebra):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"BoundQuiverAlgebra({self.name!r}, field={self.field}, dim={self.dimension})"


@dataclass
class AlgebraBuilder:
    """Incremental construction of an algebra from code."""

    field_spec: FieldSpec = field(default_factory=FieldSpec.rationals)
    vertices: list[str] = field(default_factory=list)
    arrows: list[Arrow] = field(default_factory=list)
    relations: list[Relation] = field(default_factory=list)
    name: str = "algebra"

    def arrow(self, arrow_id: str, source: str, target: str) -> AlgebraBuilder:
        self.arrows.append(Arrow(arrow_id, str(source), str(target)))
        return self

    def relation(self, *terms: tuple[int | Fraction, Sequence[str]]) -> AlgebraBuilder:
        self.relations.append(Relation.of(*terms))
        return self

    def zero_relation(self, *arrows: str) -> AlgebraBuilder:
        self.relations.append(Relation.monomial(*arrows))
        return self

    def build(self, length_cap: int = DEFAULT_LENGTH_CAP, count_cap: int = DEFAULT_COUNT_CAP) -> BoundQuiverAlgebra:
        quiver = Quiver(tuple(self.vertices), tuple(self.arrows))
        return BoundQuiverAlgebra(self.field_spec, quiver, self.relations, self.name, length_cap, count_cap)
