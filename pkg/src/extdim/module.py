"""Right modules as quiver representations, module maps and submodules.

A representation stores one vector space per vertex and, for each arrow
``a: i -> j``, a ``dim_j x dim_i`` matrix acting on column vectors. A path
``a1.a2...ak`` acts as ``M_ak ... M_a2 M_a1``.
"""

from __future__ import annotations

import random
from collections.abc import Mapping, Sequence
from dataclasses import InitVar, dataclass, field

from sympy.polys.matrices import DomainMatrix

from extdim import linalg
from extdim.algebra import BoundQuiverAlgebra, Path
from extdim.logging_config import get_logger

logger = get_logger(__name__)


class ModuleError(ValueError):
    """Raised for malformed representations or incompatible maps."""


@dataclass(frozen=True, eq=False)
class Representation:
    """A finite-dimensional right module over a bound quiver algebra.

    Attributes:
        algebra: The algebra acting on the module.
        dims: Dimension of the space at each vertex, in vertex order.
        maps: Matrix of each arrow, keyed by arrow id.
        name: Display label.
        projective_tops: Vertices of the indecomposable projective summands when
            the module was built as a direct sum of ``P(v)``; ``None`` otherwise.
    """

    algebra: BoundQuiverAlgebra
    dims: tuple[int, ...]
    maps: Mapping[str, DomainMatrix]
    name: str = ""
    projective_tops: tuple[str, ...] | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        A = self.algebra
        if len(self.dims) != len(A.vertices):
            raise ModuleError(f"Expected {len(A.vertices)} dimensions, got {len(self.dims)}")
        if any(d < 0 for d in self.dims):
            raise ModuleError("Dimensions must be nonnegative")
        for arrow in A.arrows:
            M = self.maps.get(arrow.id)
            if M is None:
                raise ModuleError(f"Missing matrix for arrow '{arrow.id}'")
            shape = (self.dim(arrow.target), self.dim(arrow.source))
            if M.shape != shape:
                raise ModuleError(f"Arrow '{arrow.id}' needs a {shape[0]}x{shape[1]} matrix, got {M.shape}")
        for terms in A.relation_terms():
            if not terms:
                continue
            p0 = terms[0][1]
            total = linalg.zeros(self.dim(p0.target), self.dim(p0.source), self.K)
            for c, p in terms:
                total = linalg.add(total, linalg.scale(self.path_matrix(p), c))
            if not linalg.is_zero(total):
                raise ModuleError(
                    f"Relation {' + '.join(str(p) for _, p in terms)} does not vanish on module '{self.name}'"
                )

    @classmethod
    def build(
        cls,
        algebra: BoundQuiverAlgebra,
        dims: Sequence[int] | Mapping[str, int],
        maps: Mapping[str, DomainMatrix] | None = None,
        name: str = "",
        projective_tops: tuple[str, ...] | None = None,
    ) -> Representation:
        """Build a representation, filling unspecified arrow matrices with zeros."""
        if isinstance(dims, Mapping):
            dims = [int(dims.get(v, 0)) for v in algebra.vertices]
        dims = tuple(int(d) for d in dims)
        maps = dict(maps or {})
        K = algebra.field.domain
        for arrow in algebra.arrows:
            if arrow.id not in maps:
                i = algebra.quiver.vertex_index(arrow.source)
                j = algebra.quiver.vertex_index(arrow.target)
                if len(dims) == len(algebra.vertices):
                    maps[arrow.id] = linalg.zeros(dims[j], dims[i], K)
        unknown = set(maps) - {a.id for a in algebra.arrows}
        if unknown:
            raise ModuleError(f"Unknown arrows: {', '.join(sorted(unknown))}")
        return cls(algebra, dims, maps, name, projective_tops)

    @classmethod
    def zero(cls, algebra: BoundQuiverAlgebra) -> Representation:
        return cls.build(algebra, [0] * len(algebra.vertices), name="0", projective_tops=())

    # ------------------------------------------------------------------

    @property
    def K(self):
        return self.algebra.field.domain

    def dim(self, vertex: str) -> int:
        return self.dims[self.algebra.quiver.vertex_index(vertex)]

    @property
    def dimension(self) -> int:
        return sum(self.dims)

    @property
    def dim_vector(self) -> tuple[int, ...]:
        return self.dims

    def is_zero(self) -> bool:
        return self.dimension == 0

    def offsets(self) -> list[int]:
        """Start of each vertex block inside the total space."""
        out, acc = [], 0
        for d in self.dims:
            out.append(acc)
            acc += d
        return out

    def path_matrix(self, path: Path) -> DomainMatrix:
        """Matrix of a path acting ``M_source -> M_target``."""
        cached = self._cache.get(("path", path))
        if cached is not None:
            return cached
        if path.is_trivial:
            result = linalg.identity(self.dim(path.source), self.K)
        else:
            result = self.maps[path.arrows[0]]
            for a in path.arrows[1:]:
                result = linalg.mul(self.maps[a], result)
        self._cache[("path", path)] = result
        return result

    def action_matrix(self, element: Sequence) -> DomainMatrix:
        """The action of an algebra element on the total space."""
        A = self.algebra
        K = self.K
        offs = self.offsets()
        out: dict[int, dict[int, object]] = {}
        for k, c in enumerate(element):
            if K.is_zero(c):
                continue
            p = A.basis[k]
            si = offs[A.quiver.vertex_index(p.source)]
            ti = offs[A.quiver.vertex_index(p.target)]
            for r, row in linalg.dod(self.path_matrix(p)).items():
                target = out.setdefault(ti + r, {})
                for s, v in row.items():
                    target[si + s] = target.get(si + s, K.zero) + c * v
        return linalg.from_dod(out, (self.dimension, self.dimension), K)

    def dual(self) -> Representation:
        """The k-dual, a module over the opposite algebra; ``M.dual().dual() is M``."""
        cached = self._cache.get("dual")
        if cached is not None:
            return cached
        op = self.algebra.opposite()
        maps = {a.id: linalg.transpose(self.maps[a.id]) for a in self.algebra.arrows}
        D = Representation(op, self.dims, maps, f"D({self.name})" if self.name else "")
        D._cache["dual"] = self
        self._cache["dual"] = D
        return D

    def renamed(self, name: str) -> Representation:
        return Representation(self.algebra, self.dims, self.maps, name, self.projective_tops)

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Representation):
            return NotImplemented
        if self.algebra != other.algebra or self.dims != other.dims:
            return False
        return all(linalg.equal(self.maps[a.id], other.maps[a.id]) for a in self.algebra.arrows)

    def __hash__(self) -> int:
        return hash(self.dims)

    def __repr__(self) -> str:
        label = self.name or "M"
        return f"Representation({label}, dims={list(self.dims)})"


@dataclass(frozen=True, eq=False)
class ModuleMap:
    """A homomorphism given by one matrix per vertex.

    Attributes:
        source: Domain module.
        target: Codomain module.
        blocks: ``target.dims[v] x source.dims[v]`` matrix for each vertex index ``v``.
    """

    source: Representation
    target: Representation
    blocks: tuple[DomainMatrix, ...]
    check: InitVar[bool] = True

    def __post_init__(self, check: bool) -> None:
        if self.source.algebra != self.target.algebra:
            raise ModuleError("Source and target live over different algebras")
        if len(self.blocks) != len(self.source.dims):
            raise ModuleError("One block per vertex is required")
        for v, B in enumerate(self.blocks):
            expected = (self.target.dims[v], self.source.dims[v])
            if B.shape != expected:
                raise ModuleError(f"Block {v} has shape {B.shape}, expected {expected}")
        if check and not self.intertwines():
            raise ModuleError("Blocks do not commute with the arrow maps")

    def intertwines(self) -> bool:
        q = self.source.algebra.quiver
        for arrow in self.source.algebra.arrows:
            i, j = q.vertex_index(arrow.source), q.vertex_index(arrow.target)
            left = linalg.mul(self.target.maps[arrow.id], self.blocks[i])
            right = linalg.mul(self.blocks[j], self.source.maps[arrow.id])
            if not linalg.equal(left, right):
                return False
        return True

    @classmethod
    def identity(cls, M: Representation) -> ModuleMap:
        return cls(M, M, tuple(linalg.identity(d, M.K) for d in M.dims), check=False)

    @classmethod
    def zero(cls, M: Representation, N: Representation) -> ModuleMap:
        return cls(M, N, tuple(linalg.zeros(n, m, M.K) for m, n in zip(M.dims, N.dims)), check=False)

    @classmethod
    def from_matrix(cls, M: Representation, N: Representation, full: DomainMatrix, check: bool = True) -> ModuleMap:
        """Slice a block-diagonal total matrix into vertex blocks."""
        so, to = M.offsets(), N.offsets()
        blocks = []
        for v in range(len(M.dims)):
            rows = range(to[v], to[v] + N.dims[v])
            cols = range(so[v], so[v] + M.dims[v])
            blocks.append(linalg.select_columns(linalg.select_rows(full, rows), cols))
        return cls(M, N, tuple(blocks), check=check)

    def matrix(self) -> DomainMatrix:
        """Block-diagonal matrix on total spaces."""
        return linalg.block_diag(self.blocks, self.source.K)

    def block(self, vertex: str) -> DomainMatrix:
        return self.blocks[self.source.algebra.quiver.vertex_index(vertex)]

    def __matmul__(self, other: ModuleMap) -> ModuleMap:
        """Composition ``self o other`` (apply ``other`` first)."""
        if other.target is not self.source and other.target != self.source:
            raise ModuleError("Maps are not composable")
        return ModuleMap(
            other.source, self.target, tuple(linalg.mul(g, f) for g, f in zip(self.blocks, other.blocks)), check=False
        )

    def __add__(self, other: ModuleMap) -> ModuleMap:
        return ModuleMap(
            self.source, self.target, tuple(linalg.add(a, b) for a, b in zip(self.blocks, other.blocks)), check=False
        )

    def __sub__(self, other: ModuleMap) -> ModuleMap:
        return ModuleMap(
            self.source, self.target, tuple(linalg.sub(a, b) for a, b in zip(self.blocks, other.blocks)), check=False
        )

    def __neg__(self) -> ModuleMap:
        return self.scaled(-1)

    def scaled(self, c) -> ModuleMap:
        return ModuleMap(self.source, self.target, tuple(linalg.scale(b, c) for b in self.blocks), check=False)

    def is_zero(self) -> bool:
        return all(linalg.is_zero(b) for b in self.blocks)

    def is_injective(self) -> bool:
        return all(linalg.rank(b) == b.shape[1] for b in self.blocks)

    def is_surjective(self) -> bool:
        return all(linalg.rank(b) == b.shape[0] for b in self.blocks)

    def is_isomorphism(self) -> bool:
        return all(b.shape[0] == b.shape[1] and linalg.rank(b) == b.shape[0] for b in self.blocks)

    def inverse(self) -> ModuleMap:
        if not self.is_isomorphism():
            raise ModuleError("Map is not invertible")
        return ModuleMap(self.target, self.source, tuple(linalg.inverse(b) for b in self.blocks), check=False)

    def rank(self) -> int:
        return sum(linalg.rank(b) for b in self.blocks)

    def equals(self, other: ModuleMap) -> bool:
        return all(linalg.equal(a, b) for a, b in zip(self.blocks, other.blocks))

    def dual(self) -> ModuleMap:
        """The transpose map ``D(target) -> D(source)``."""
        blocks = tuple(linalg.transpose(b) for b in self.blocks)
        return ModuleMap(self.target.dual(), self.source.dual(), blocks, check=False)

    def with_ends(self, source: Representation, target: Representation) -> ModuleMap:
        """Same blocks, re-anchored on structurally equal modules."""
        return ModuleMap(source, target, self.blocks, check=False)


@dataclass(frozen=True)
class Submodule:
    """A submodule given by an injective inclusion map."""

    ambient: Representation
    inclusion: ModuleMap

    @property
    def module(self) -> Representation:
        return self.inclusion.source

    @property
    def dimension(self) -> int:
        return self.module.dimension

    def bases(self) -> tuple[DomainMatrix, ...]:
        return self.inclusion.blocks

    def is_zero(self) -> bool:
        return self.module.is_zero()

    def is_everything(self) -> bool:
        return self.module.dimension == self.ambient.dimension


# ----------------------------------------------------------------------------
# basic modules
# ----------------------------------------------------------------------------


def simple(algebra: BoundQuiverAlgebra, vertex: str) -> Representation:
    """The simple module S(v)."""
    vertex = str(vertex)
    algebra.quiver.vertex_index(vertex)
    dims = [1 if v == vertex else 0 for v in algebra.vertices]
    return Representation.build(algebra, dims, name=f"S({vertex})")


def projective(algebra: BoundQuiverAlgebra, vertex: str) -> Representation:
    """The indecomposable projective P(v) = e_v Lambda; arrows act by extending paths."""
    vertex = str(vertex)
    q = algebra.quiver
    q.vertex_index(vertex)
    by_target: dict[str, list[int]] = {v: [] for v in algebra.vertices}
    for k in algebra.basis_from(vertex):
        by_target[algebra.basis[k].target].append(k)
    position = {k: idx for ks in by_target.values() for idx, k in enumerate(ks)}
    K = algebra.field.domain
    maps = {}
    for arrow in algebra.arrows:
        src, tgt = by_target[arrow.source], by_target[arrow.target]
        out: dict[int, dict[int, object]] = {}
        for col, k in enumerate(src):
            p = algebra.basis[k]
            extended = Path(p.source, p.arrows + (arrow.id,), arrow.target)
            for kk, c in algebra.normal_form(extended).items():
                out.setdefault(position[kk], {})[col] = c
        maps[arrow.id] = linalg.from_dod(out, (len(tgt), len(src)), K)
    dims = [len(by_target[v]) for v in algebra.vertices]
    return Representation(algebra, tuple(dims), maps, f"P({vertex})", (vertex,))


def projective_basis_paths(algebra: BoundQuiverAlgebra, vertex: str) -> dict[str, list[Path]]:
    """Basis paths of P(v) grouped by the vertex space they span, in coordinate order."""
    out: dict[str, list[Path]] = {v: [] for v in algebra.vertices}
    for k in algebra.basis_from(str(vertex)):
        p = algebra.basis[k]
        out[p.target].append(p)
    return out


def injective(algebra: BoundQuiverAlgebra, vertex: str) -> Representation:
    """The indecomposable injective I(v), the dual of the opposite projective."""
    return projective(algebra.opposite(), str(vertex)).dual().renamed(f"I({vertex})")


def regular_module(algebra: BoundQuiverAlgebra) -> Representation:
    """Lambda as a right module over itself."""
    M = direct_sum([projective(algebra, v) for v in algebra.vertices])
    return M.renamed("Lambda")


def semisimple_top(algebra: BoundQuiverAlgebra) -> Representation:
    return direct_sum([simple(algebra, v) for v in algebra.vertices]).renamed("Lambda/rad")


# ----------------------------------------------------------------------------
# direct sums
# ----------------------------------------------------------------------------


def direct_sum_maps(
    modules: Sequence[Representation], algebra: BoundQuiverAlgebra | None = None
) -> tuple[Representation, list[ModuleMap], list[ModuleMap]]:
    """Direct sum with its canonical injections and projections."""
    if not modules:
        if algebra is None:
            raise ModuleError("Empty direct sum needs the algebra")
        Z = Representation.zero(algebra)
        return Z, [], []
    A = modules[0].algebra
    K = A.field.domain
    q = A.quiver
    dims = tuple(sum(M.dims[v] for M in modules) for v in range(len(A.vertices)))
    maps = {}
    for arrow in A.arrows:
        maps[arrow.id] = linalg.block_diag([M.maps[arrow.id] for M in modules], K)
    tops = None
    if all(M.projective_tops is not None for M in modules):
        tops = tuple(t for M in modules for t in M.projective_tops)
    names = [M.name for M in modules if M.name]
    S = Representation(A, dims, maps, " + ".join(names) if len(names) == len(modules) else "", tops)
    injections, projections = [], []
    starts = [0] * len(A.vertices)
    for M in modules:
        inj, proj = [], []
        for v in range(len(A.vertices)):
            d, total, s = M.dims[v], dims[v], starts[v]
            inj.append(linalg.from_dod({s + r: {r: K.one} for r in range(d)}, (total, d), K))
            proj.append(linalg.from_dod({r: {s + r: K.one} for r in range(d)}, (d, total), K))
            starts[v] += d
        injections.append(ModuleMap(M, S, tuple(inj), check=False))
        projections.append(ModuleMap(S, M, tuple(proj), check=False))
    return S, injections, projections


def direct_sum(modules: Sequence[Representation], algebra: BoundQuiverAlgebra | None = None) -> Representation:
    return direct_sum_maps(modules, algebra)[0]


def map_between_sums(
    sources: Sequence[Representation], targets: Sequence[Representation], entries: Mapping[tuple[int, int], ModuleMap]
) -> tuple[Representation, Representation, ModuleMap]:
    """Assemble a matrix of maps ``sources[c] -> targets[r]`` into one map of sums."""
    S, _, proj_s = direct_sum_maps(sources)
    T, inj_t, _ = direct_sum_maps(targets)
    total = ModuleMap.zero(S, T)
    for (r, c), f in entries.items():
        total = total + inj_t[r] @ f.with_ends(sources[c], targets[r]) @ proj_s[c]
    return S, T, total


# ----------------------------------------------------------------------------
# sub- and quotient modules
# ----------------------------------------------------------------------------


def submodule_from_bases(M: Representation, bases: Sequence[DomainMatrix], name: str = "") -> Submodule:
    """The submodule whose space at each vertex is spanned by the given independent columns."""
    A = M.algebra
    q = A.quiver
    maps = {}
    for arrow in A.arrows:
        i, j = q.vertex_index(arrow.source), q.vertex_index(arrow.target)
        image = linalg.mul(M.maps[arrow.id], bases[i])
        restricted = linalg.solve(bases[j], image)
        if restricted is None:
            raise ModuleError(f"Subspaces are not stable under arrow '{arrow.id}'")
        maps[arrow.id] = restricted
    sub = Representation(A, tuple(b.shape[1] for b in bases), maps, name)
    return Submodule(M, ModuleMap(sub, M, tuple(bases), check=False))


def radical(M: Representation) -> Submodule:
    """rad M: at each vertex the span of the images of incoming arrows."""
    A = M.algebra
    bases = []
    for v in A.vertices:
        incoming = [M.maps[a.id] for a in A.quiver.arrows_to(v)]
        if incoming:
            bases.append(linalg.column_space(linalg.hstack(incoming, M.K)))
        else:
            bases.append(linalg.zeros(M.dim(v), 0, M.K))
    return submodule_from_bases(M, bases, f"rad {M.name}" if M.name else "")


def socle(M: Representation) -> Submodule:
    """soc M: vectors killed by every arrow."""
    A = M.algebra
    bases = []
    for v in A.vertices:
        outgoing = [M.maps[a.id] for a in A.quiver.arrows_from(v)]
        if outgoing:
            bases.append(linalg.nullspace(linalg.vstack(outgoing, M.K)))
        else:
            bases.append(linalg.identity(M.dim(v), M.K))
    return submodule_from_bases(M, bases, f"soc {M.name}" if M.name else "")


def quotient(M: Representation, sub: Submodule) -> tuple[Representation, ModuleMap, tuple[DomainMatrix, ...]]:
    """M / sub with its projection and a vertexwise linear section of the projection."""
    A = M.algebra
    q = A.quiver
    K = M.K
    projections, sections = [], []
    for v, S in enumerate(sub.bases()):
        C = linalg.extend_to_basis(S)
        change = linalg.inverse(linalg.hstack([S, C], K, M.dims[v]))
        projections.append(linalg.select_rows(change, range(S.shape[1], M.dims[v])))
        sections.append(C)
    maps = {}
    for arrow in A.arrows:
        i, j = q.vertex_index(arrow.source), q.vertex_index(arrow.target)
        maps[arrow.id] = linalg.chain(projections[j], M.maps[arrow.id], sections[i])
    Q = Representation(A, tuple(s.shape[1] for s in sections), maps)
    return Q, ModuleMap(M, Q, tuple(projections), check=False), tuple(sections)


def top(M: Representation) -> Representation:
    """M / rad M."""
    T = quotient(M, radical(M))[0]
    return T.renamed(f"top {M.name}" if M.name else "")


def top_dims(M: Representation) -> tuple[int, ...]:
    return tuple(d - b.shape[1] for d, b in zip(M.dims, radical(M).bases()))


def kernel(f: ModuleMap) -> Submodule:
    return submodule_from_bases(f.source, [linalg.nullspace(b) for b in f.blocks])


def image(f: ModuleMap) -> Submodule:
    return submodule_from_bases(f.target, [linalg.column_space(b) for b in f.blocks])


def cokernel(f: ModuleMap) -> tuple[Representation, ModuleMap]:
    Q, proj, _ = quotient(f.target, image(f))
    return Q, proj


def generated_submodule(M: Representation, generators: Sequence[DomainMatrix]) -> Submodule:
    """Smallest submodule containing the given columns at each vertex."""
    A = M.algebra
    q = A.quiver
    K = M.K
    bases = [linalg.column_space(g) if g.shape[1] else linalg.zeros(M.dims[v], 0, K) for v, g in enumerate(generators)]
    changed = True
    while changed:
        changed = False
        for arrow in A.arrows:
            i, j = q.vertex_index(arrow.source), q.vertex_index(arrow.target)
            if bases[i].shape[1] == 0:
                continue
            pushed = linalg.mul(M.maps[arrow.id], bases[i])
            grown = linalg.column_space(linalg.hstack([bases[j], pushed], K, M.dims[j]))
            if grown.shape[1] > bases[j].shape[1]:
                bases[j] = grown
                changed = True
    return submodule_from_bases(M, bases)


def vertex_components(M: Representation, vertices: set[str]) -> Submodule:
    """Submodule generated by the spaces M e_v for v in ``vertices``."""
    gens = [
        linalg.identity(M.dims[k], M.K) if v in vertices else linalg.zeros(M.dims[k], 0, M.K)
        for k, v in enumerate(M.algebra.vertices)
    ]
    return generated_submodule(M, gens)


def loewy_length(M: Representation) -> int:
    """Least n with rad^n M = 0."""
    n = 0
    current = M
    while not current.is_zero():
        current = radical(current).module
        n += 1
    return n


# ----------------------------------------------------------------------------
# homomorphisms
# ----------------------------------------------------------------------------


def hom_space(M: Representation, N: Representation) -> list[ModuleMap]:
    """A basis of Hom(M, N) from the intertwining equations ``N_a X_i = X_j M_a``."""
    if M.algebra != N.algebra:
        raise ModuleError("Modules live over different algebras")
    A = M.algebra
    q = A.quiver
    K = M.K
    offsets, total = [], 0
    for m, n in zip(M.dims, N.dims):
        offsets.append(total)
        total += m * n

    def var(v: int, r: int, c: int) -> int:
        return offsets[v] + r * M.dims[v] + c

    rows: dict[int, dict[int, object]] = {}

    def add(eq: int, column: int, value) -> None:
        row = rows.setdefault(eq, {})
        row[column] = row.get(column, K.zero) + value

    row_count = 0
    for arrow in A.arrows:
        i, j = q.vertex_index(arrow.source), q.vertex_index(arrow.target)
        base = row_count
        width = M.dims[i]
        row_count += N.dims[j] * width
        for r, entries in linalg.dod(N.maps[arrow.id]).items():
            for k, val in entries.items():
                for c in range(width):
                    add(base + r * width + c, var(i, k, c), val)
        for k, entries in linalg.dod(M.maps[arrow.id]).items():
            for c, val in entries.items():
                for r in range(N.dims[j]):
                    add(base + r * width + c, var(j, r, k), -val)
    system = linalg.from_dod(rows, (row_count, total), K)
    solutions = linalg.nullspace(system)
    basis = []
    for s in range(solutions.shape[1]):
        vec = linalg.column(solutions, s)
        blocks = []
        for v in range(len(A.vertices)):
            entries = {}
            for r in range(N.dims[v]):
                for c in range(M.dims[v]):
                    x = vec[var(v, r, c)]
                    if not K.is_zero(x):
                        entries.setdefault(r, {})[c] = x
            blocks.append(linalg.from_dod(entries, (N.dims[v], M.dims[v]), K))
        basis.append(ModuleMap(M, N, tuple(blocks), check=False))
    return basis


def combine_maps(maps: Sequence[ModuleMap], coefficients: Sequence, M: Representation, N: Representation) -> ModuleMap:
    total = ModuleMap.zero(M, N)
    for f, c in zip(maps, coefficients):
        if not M.K.is_zero(c):
            total = total + f.scaled(c)
    return total


def map_from_projective(P: Representation, M: Representation, generators: Sequence[DomainMatrix]) -> ModuleMap:
    """The map from a sum of projectives sending the k-th top generator to ``generators[k]``.

    ``P.projective_tops`` names the summands; ``generators[k]`` is a column in the
    space of ``M`` at that vertex.
    """
    if P.projective_tops is None:
        raise ModuleError("Source is not a recorded sum of indecomposable projectives")
    A = M.algebra
    K = M.K
    nv = len(A.vertices)
    columns: list[list[DomainMatrix]] = [[] for _ in range(nv)]
    for top_vertex, x in zip(P.projective_tops, generators, strict=True):
        paths = projective_basis_paths(A, top_vertex)
        for v_index, v in enumerate(A.vertices):
            for p in paths[v]:
                columns[v_index].append(linalg.mul(M.path_matrix(p), x))
    blocks = tuple(linalg.hstack(cols, K, M.dims[v]) for v, cols in enumerate(columns))
    return ModuleMap(P, M, blocks, check=False)


def projective_generators(P: Representation) -> list[DomainMatrix]:
    """Columns of P at each top vertex hitting the generator e_v of each summand."""
    if P.projective_tops is None:
        raise ModuleError("Module is not a recorded sum of indecomposable projectives")
    A = P.algebra
    K = P.K
    offsets = {v: 0 for v in A.vertices}
    out = []
    for t in P.projective_tops:
        # e_t is the first basis path of its summand at vertex t
        out.append(linalg.from_dod({offsets[t]: {0: K.one}}, (P.dim(t), 1), K))
        for v, paths in projective_basis_paths(A, t).items():
            offsets[v] += len(paths)
    return out


def lift_through_epi(f: ModuleMap, g: ModuleMap) -> ModuleMap | None:
    """A map h with ``g o h = f`` for ``f: X -> Z`` and ``g: Y -> Z``, or ``None``."""
    X = f.source
    if X.projective_tops is not None:
        gens = projective_generators(X)
        images = []
        for t, x in zip(X.projective_tops, gens):
            v = X.algebra.quiver.vertex_index(t)
            y = linalg.solve(g.blocks[v], linalg.mul(f.blocks[v], x))
            if y is None:
                return None
            images.append(y)
        return map_from_projective(X, g.source, images)
    basis = hom_space(X, g.source)
    if not basis:
        return ModuleMap.zero(X, g.source) if f.is_zero() else None
    K = X.K
    columns = [flatten_map(g @ h) for h in basis]
    system = linalg.hstack(columns, K)
    coeffs = linalg.solve(system, flatten_map(f))
    if coeffs is None:
        return None
    return combine_maps(basis, linalg.column(coeffs, 0), X, g.source)


def factor_through_mono(f: ModuleMap, m: ModuleMap) -> ModuleMap | None:
    """The map h with ``m o h = f`` for a monomorphism m, or ``None`` if im f is not inside im m."""
    blocks = []
    for fb, mb in zip(f.blocks, m.blocks):
        h = linalg.solve(mb, fb)
        if h is None:
            return None
        blocks.append(h)
    return ModuleMap(f.source, m.source, tuple(blocks), check=False)


def flatten_map(f: ModuleMap) -> DomainMatrix:
    """All block entries stacked into one column."""
    K = f.source.K
    values = []
    for b in f.blocks:
        rows = linalg.to_lists(b)
        for row in rows:
            values.extend(row)
    return linalg.column_vector(values, K)


# ----------------------------------------------------------------------------
# projectivity
# ----------------------------------------------------------------------------


def projective_cover_dimension(M: Representation) -> int:
    A = M.algebra
    return sum(t * projective(A, v).dimension for t, v in zip(top_dims(M), A.vertices) if t)


def is_projective(M: Representation) -> bool:
    """M is projective iff it has the dimension of its projective cover."""
    return M.dimension == projective_cover_dimension(M)


def is_injective(M: Representation) -> bool:
    return is_projective(M.dual())


def is_self_injective(algebra: BoundQuiverAlgebra) -> bool:
    return all(is_injective(projective(algebra, v)) for v in algebra.vertices)


# ----------------------------------------------------------------------------
# random modules
# ----------------------------------------------------------------------------


def random_vector(field_spec, dim: int, rng: random.Random) -> DomainMatrix:
    return linalg.column_vector([field_spec.random_element(rng) for _ in range(dim)], field_spec.domain)


def random_map_from_projective(P: Representation, M: Representation, rng: random.Random) -> ModuleMap:
    gens = [random_vector(M.algebra.field, M.dim(t), rng) for t in P.projective_tops]
    return map_from_projective(P, M, gens)


def random_module(
    algebra: BoundQuiverAlgebra, rng: random.Random, max_dim: int = 8, max_summands: int = 3
) -> Representation:
    """A random module, built as the cokernel of a random map between projectives.

    Cokernels satisfy every relation automatically, so this works for any ideal.
    """
    vertices = list(algebra.vertices)
    sizes = {v: projective(algebra, v).dimension for v in vertices}
    tops: list[str] = []
    for _ in range(rng.randint(1, max_summands)):
        v = rng.choice(vertices)
        if sum(sizes[t] for t in tops) + sizes[v] <= max_dim or not tops:
            tops.append(v)
    P0 = direct_sum([projective(algebra, v) for v in tops])
    relations_tops = [rng.choice(vertices) for _ in range(rng.randint(0, max_summands))]
    if relations_tops:
        P1 = direct_sum([projective(algebra, v) for v in relations_tops])
        M, _ = cokernel(random_map_from_projective(P1, P0, rng))
    else:
        M = P0
    depth = loewy_length(M)
    while M.dimension > max_dim and depth > 1:
        depth -= 1
        M = quotient(M, radical_power(M, depth))[0]
    return M.renamed("random")


def radical_power(M: Representation, n: int) -> Submodule:
    """rad^n M as a submodule of M."""
    K = M.K
    bases = [linalg.identity(d, K) for d in M.dims]
    current = M
    for _ in range(n):
        rad = radical(current)
        bases = [linalg.mul(b, r) for b, r in zip(bases, rad.bases())]
        current = rad.module
    return submodule_from_bases(M, bases)
