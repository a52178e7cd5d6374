"""Covers, syzygies, projective dimension, Ext^1 and exact-sequence surgery.

Cosyzygies and injective envelopes are computed over the opposite algebra:
dualize, take the projective construction, dualize back. Since ``D(D(M)) is M``
the results line up object for object with the module they started from.
"""

from __future__ import annotations

import random
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum

from sympy.polys.matrices import DomainMatrix

from extdim import linalg
from extdim.algebra import BoundQuiverAlgebra
from extdim.config import DEFAULT_SEED
from extdim.decompose import DEFAULT_TRIALS, InconclusiveDecomposition, is_isomorphic
from extdim.logging_config import get_logger
from extdim.module import (
    ModuleError,
    ModuleMap,
    Representation,
    Submodule,
    combine_maps,
    direct_sum,
    direct_sum_maps,
    factor_through_mono,
    flatten_map,
    generated_submodule,
    hom_space,
    image,
    is_projective,
    is_self_injective,
    kernel,
    lift_through_epi,
    map_from_projective,
    projective,
    quotient,
    radical,
    random_module,
    random_vector,
    simple,
)

logger = get_logger(__name__)

# Syzygies examined for a periodicity witness over self-injective algebras
PERIODICITY_PROBE = 8


class ExactnessError(RuntimeError):
    """A constructed sequence failed the rank exactness check."""


# ----------------------------------------------------------------------------
# short exact sequences
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class ShortExactSequence:
    """``0 -> left --f--> middle --g--> right -> 0``."""

    f: ModuleMap
    g: ModuleMap

    def __post_init__(self) -> None:
        if self.f.target is not self.g.source and self.f.target != self.g.source:
            raise ModuleError("Middle terms of the sequence do not agree")

    @property
    def left(self) -> Representation:
        return self.f.source

    @property
    def middle(self) -> Representation:
        return self.f.target

    @property
    def right(self) -> Representation:
        return self.g.target

    def failures(self) -> list[str]:
        """Per-vertex reasons the sequence is not exact; empty when it is."""
        problems = []
        for v, (fb, gb) in enumerate(zip(self.f.blocks, self.g.blocks)):
            vertex = self.middle.algebra.vertices[v]
            if fb.shape[0] != fb.shape[1] + gb.shape[0]:
                problems.append(f"vertex {vertex}: dimensions do not add up")
                continue
            if linalg.rank(fb) != fb.shape[1]:
                problems.append(f"vertex {vertex}: f is not injective")
            if linalg.rank(gb) != gb.shape[0]:
                problems.append(f"vertex {vertex}: g is not surjective")
            if not linalg.is_zero(linalg.mul(gb, fb)):
                problems.append(f"vertex {vertex}: g o f is not zero")
        return problems

    def is_exact(self) -> bool:
        return not self.failures()

    def verify(self) -> ShortExactSequence:
        problems = self.failures()
        if problems:
            raise ExactnessError("; ".join(problems))
        return self

    def dual(self) -> ShortExactSequence:
        """The dual sequence over the opposite algebra."""
        return ShortExactSequence(self.g.dual(), self.f.dual())


def split_sequence(A: Representation, B: Representation) -> ShortExactSequence:
    """``0 -> A -> A + B -> B -> 0``."""
    _, inj, proj = direct_sum_maps([A, B])
    return ShortExactSequence(inj[0], proj[1])


# ----------------------------------------------------------------------------
# covers and envelopes
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class ProjectiveCover:
    """A projective module with an epimorphism onto M.

    ``generators[k]`` is the image of the k-th top generator of ``module``.
    """

    module: Representation
    epi: ModuleMap
    generators: tuple[DomainMatrix, ...]

    @property
    def tops(self) -> tuple[str, ...]:
        return self.module.projective_tops


@dataclass(frozen=True)
class InjectiveEnvelope:
    module: Representation
    mono: ModuleMap


def projective_cover(M: Representation) -> ProjectiveCover:
    """Minimal projective cover: one P(v) for each copy of S(v) in top M."""
    cached = M._cache.get("cover")
    if cached is not None:
        return cached
    A = M.algebra
    rad = radical(M)
    tops: list[str] = []
    generators: list[DomainMatrix] = []
    for k, v in enumerate(A.vertices):
        complement = linalg.extend_to_basis(rad.bases()[k])
        for j in range(complement.shape[1]):
            tops.append(v)
            generators.append(linalg.select_columns(complement, [j]))
    P = direct_sum([projective(A, v) for v in tops], A)
    cover = ProjectiveCover(P, map_from_projective(P, M, generators), tuple(generators))
    M._cache["cover"] = cover
    return cover


def padded_cover(M: Representation, extra_tops: Sequence[str], rng: random.Random) -> ProjectiveCover:
    """A non-minimal cover: the minimal one plus extra summands mapped at random."""
    A = M.algebra
    cover = projective_cover(M)
    extra = [random_vector(A.field, M.dim(v), rng) for v in extra_tops]
    P = direct_sum([cover.module, *(projective(A, v) for v in extra_tops)], A)
    generators = (*cover.generators, *extra)
    return ProjectiveCover(P, map_from_projective(P, M, generators), generators)


def syzygy_submodule(M: Representation) -> Submodule:
    """Omega^1 M as the kernel of the minimal cover."""
    cached = M._cache.get("syzygy")
    if cached is None:
        cached = kernel(projective_cover(M).epi)
        M._cache["syzygy"] = cached
    return cached


def injective_envelope(M: Representation) -> InjectiveEnvelope:
    """Minimal injective envelope, the dual of the opposite cover of ``D(M)``."""
    mono = projective_cover(M.dual()).epi.dual()
    return InjectiveEnvelope(mono.target, mono)


def cosyzygy_projection(M: Representation) -> ModuleMap:
    """The epimorphism from the envelope of M onto Omega^{-1} M."""
    return syzygy_submodule(M.dual()).inclusion.dual()


def omega(M: Representation) -> Representation:
    return syzygy_submodule(M).module


def omega_inverse(M: Representation) -> Representation:
    return syzygy_submodule(M.dual()).module.dual()


def syzygy(M: Representation, k: int = 1) -> Representation:
    """Omega^k M for k > 0, Omega^{-k} M for k < 0, M for k = 0."""
    current = M
    step = omega if k > 0 else omega_inverse
    for _ in range(abs(k)):
        current = step(current)
    return current


# ----------------------------------------------------------------------------
# projective dimension
# ----------------------------------------------------------------------------


class PdKind(str, Enum):
    EXACTLY = "exactly"
    AT_LEAST = "at_least"
    INFINITE = "infinite"


SELF_INJECTIVE = "self-injective"


@dataclass(frozen=True)
class PdResult:
    """Projective dimension: exact, a lower bound at the cutoff, or infinite.

    An infinite result always carries a witness: a pair ``(i, j)`` with
    ``Omega^i M ~ Omega^j M`` for a non-projective ``Omega^i M``, or the marker
    ``"self-injective"`` for a non-projective module over a self-injective algebra.
    """

    kind: PdKind
    value: int | None = None
    witness: tuple[int, int] | str | None = None

    @classmethod
    def exactly(cls, n: int) -> PdResult:
        return cls(PdKind.EXACTLY, n)

    @classmethod
    def at_least(cls, n: int) -> PdResult:
        return cls(PdKind.AT_LEAST, n)

    @classmethod
    def infinite(cls, witness: tuple[int, int] | str) -> PdResult:
        return cls(PdKind.INFINITE, None, witness)

    @property
    def is_finite(self) -> bool:
        return self.kind is PdKind.EXACTLY

    def describe_witness(self) -> str:
        if isinstance(self.witness, tuple):
            i, j = self.witness
            return f"Omega^{i} ~ Omega^{j}"
        return self.witness or ""

    def __str__(self) -> str:
        if self.kind is PdKind.EXACTLY:
            return str(self.value)
        if self.kind is PdKind.AT_LEAST:
            return f">={self.value}"
        return f"inf ({self.describe_witness()})"

    def to_json(self) -> dict:
        data: dict = {"kind": self.kind.value, "value": self.value}
        if self.kind is PdKind.INFINITE:
            data["witness"] = list(self.witness) if isinstance(self.witness, tuple) else self.witness
        return data


def max_pd(results: Sequence[PdResult]) -> PdResult:
    """Supremum of several results; the empty supremum is -1."""
    infinite = [r for r in results if r.kind is PdKind.INFINITE]
    if infinite:
        return infinite[0]
    bounds = [r for r in results if r.kind is PdKind.AT_LEAST]
    if bounds:
        return PdResult.at_least(max(r.value for r in bounds))
    return PdResult.exactly(max((r.value for r in results), default=-1))


def proj_dimension(
    M: Representation, cutoff: int | None = None, seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS
) -> PdResult:
    """Iterate minimal syzygies until one is projective, repeats, or the cutoff is hit."""
    if M.is_zero():
        return PdResult.exactly(-1)
    A = M.algebra
    if cutoff is None:
        cutoff = 4 * A.dimension
    self_injective = False
    history: list[Representation] = []
    current = M
    for n in range(cutoff + 1):
        if is_projective(current):
            logger.debug("pd %s = %d", M.name or "M", n)
            return PdResult.exactly(n)
        if n == 0:
            self_injective = is_self_injective(A)
        for i, earlier in enumerate(history):
            if earlier.dims != current.dims:
                continue
            try:
                if is_isomorphic(earlier, current, seed, trials):
                    return PdResult.infinite((i, n))
            except InconclusiveDecomposition as e:
                logger.warning("Skipping periodicity check: %s", e)
        if self_injective and n >= PERIODICITY_PROBE:
            break
        history.append(current)
        current = omega(current)
    if self_injective:
        return PdResult.infinite(SELF_INJECTIVE)
    logger.debug("pd %s not settled within cutoff %d", M.name or "M", cutoff)
    return PdResult.at_least(cutoff)


def pd_table(
    algebra: BoundQuiverAlgebra, cutoff: int | None = None, seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS
) -> dict[str, PdResult]:
    """Projective dimension of every simple module, keyed by vertex."""
    return {v: proj_dimension(simple(algebra, v), cutoff, seed, trials) for v in algebra.vertices}


def global_dimension(
    algebra: BoundQuiverAlgebra,
    cutoff: int | None = None,
    seed: int = DEFAULT_SEED,
    trials: int = DEFAULT_TRIALS,
    table: dict[str, PdResult] | None = None,
) -> PdResult:
    """Maximum of the projective dimensions of the simples."""
    if table is None:
        table = pd_table(algebra, cutoff, seed, trials)
    return max_pd(list(table.values()))


# ----------------------------------------------------------------------------
# resolutions
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class Resolution:
    """``0 -> M_n -> ... -> M_1 -> M_0 -> X -> 0``.

    ``differentials[i - 1]`` is ``d_i: M_i -> M_{i-1}``.
    """

    target: Representation
    terms: tuple[Representation, ...]
    augmentation: ModuleMap
    differentials: tuple[ModuleMap, ...]
    minimal: bool = False

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def _maps(self) -> list[ModuleMap]:
        return [self.augmentation, *self.differentials]

    def failures(self) -> list[str]:
        problems = []
        maps = self._maps()
        if len(maps) != len(self.terms):
            return ["number of differentials does not match the terms"]
        if not self.augmentation.is_surjective():
            problems.append("augmentation is not surjective")
        for i in range(1, len(maps)):
            outer, inner = maps[i - 1], maps[i]
            if not (outer @ inner).is_zero():
                problems.append(f"d_{i - 1} o d_{i} is not zero")
                continue
            for v, (ob, ib) in enumerate(zip(outer.blocks, inner.blocks)):
                if ob.shape[1] - linalg.rank(ob) != linalg.rank(ib):
                    problems.append(f"not exact at M_{i - 1}, vertex {self.target.algebra.vertices[v]}")
        if not maps[-1].is_injective():
            problems.append(f"last map out of M_{self.length} is not injective")
        if self.minimal:
            for i, P in enumerate(self.terms):
                if not is_projective(P):
                    problems.append(f"M_{i} is not projective")
                elif i + 1 < len(maps):
                    top_part = quotient(P, radical(P))[1]
                    if not (top_part @ maps[i + 1]).is_zero():
                        problems.append(f"image in M_{i} is not inside the radical")
        return problems

    def verify(self) -> Resolution:
        problems = self.failures()
        if problems:
            raise ExactnessError("; ".join(problems))
        return self

    def short_exact_pieces(self) -> list[ShortExactSequence]:
        """``0 -> K_{j+1} -> M_j -> K_j -> 0`` for ``j < n`` with ``K_0 = X``."""
        pieces = []
        epi = self.augmentation
        for d in self.differentials:
            sub = kernel(epi)
            pieces.append(ShortExactSequence(sub.inclusion, epi))
            epi = factor_through_mono(d, sub.inclusion)
            if epi is None:
                raise ExactnessError("differential does not land in the kernel")
        return pieces

    def last_image(self) -> Representation:
        """``K_n``, the image of ``M_n``, isomorphic to ``M_n``."""
        pieces = self.short_exact_pieces()
        return pieces[-1].left if pieces else self.target


def minimal_resolution(M: Representation, length: int | None = None, cutoff: int | None = None) -> Resolution:
    """Minimal projective resolution of M.

    With ``length`` the resolution stops after ``length`` projectives and ends in
    ``Omega^length M``; such a truncated resolution is not flagged minimal. Without
    it the resolution runs until a syzygy vanishes, or to the cutoff.
    """
    A = M.algebra
    if length is None:
        limit = cutoff if cutoff is not None else 4 * A.dimension
    else:
        limit = length
    covers: list[ProjectiveCover] = []
    inclusions: list[ModuleMap] = []
    current = M
    while len(covers) < limit:
        covers.append(projective_cover(current))
        sub = syzygy_submodule(current)
        inclusions.append(sub.inclusion)
        current = sub.module
        if current.is_zero():
            break
    if length is None and not current.is_zero():
        logger.warning("Resolution of %s truncated at %d terms", M.name or "module", limit)
    complete = current.is_zero() and covers
    if complete:
        terms = [c.module for c in covers]
        tail = []
    else:
        terms = [c.module for c in covers] + [current]
        tail = [inclusions[-1]] if inclusions else []
    if covers:
        augmentation = covers[0].epi
        differentials = [inclusions[i - 1] @ covers[i].epi for i in range(1, len(covers))] + tail
    else:
        augmentation = ModuleMap.identity(M)
        differentials = []
    return Resolution(M, tuple(terms), augmentation, tuple(differentials), minimal=bool(complete))


# ----------------------------------------------------------------------------
# Ext^1
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class ExtGroup:
    """Ext^1(M, N) as Hom(Omega M, N) modulo the maps that extend to the cover.

    ``classes`` are representatives of a basis; class ``c`` materializes as the
    pushout of ``0 -> Omega M -> P -> M -> 0`` along ``sum c_k classes[k]``.
    """

    source: Representation
    target: Representation
    cover: ProjectiveCover
    inclusion: ModuleMap
    classes: tuple[ModuleMap, ...]

    @property
    def dimension(self) -> int:
        return len(self.classes)

    def extension(self, coefficients: Sequence) -> ShortExactSequence:
        """``0 -> N -> E -> M -> 0`` for the class with the given coordinates."""
        M, N = self.source, self.target
        F = M.algebra.field
        coeffs = [F.convert(c) for c in coefficients]
        if len(coeffs) != self.dimension:
            raise ModuleError(f"Expected {self.dimension} coefficients, got {len(coeffs)}")
        Omega = self.inclusion.source
        phi = combine_maps(self.classes, coeffs, Omega, N)
        P = self.cover.module
        S, inj, proj = direct_sum_maps([N, P])
        h = inj[0] @ phi - inj[1] @ self.inclusion
        E, q, sections = quotient(S, image(h))
        onto = self.cover.epi @ proj[1]
        g = ModuleMap(E, M, tuple(linalg.mul(b, s) for b, s in zip(onto.blocks, sections)), check=False)
        return ShortExactSequence(q @ inj[0], g).verify()

    def split(self) -> ShortExactSequence:
        return self.extension([0] * self.dimension)


def ext1(M: Representation, N: Representation, cover: ProjectiveCover | None = None) -> ExtGroup:
    """Ext^1(M, N); any projective cover may be supplied in place of the minimal one."""
    if M.algebra != N.algebra:
        raise ModuleError("Modules live over different algebras")
    if cover is None:
        cover = projective_cover(M)
    sub = kernel(cover.epi)
    Omega, iota = sub.module, sub.inclusion
    candidates = hom_space(Omega, N)
    if not candidates:
        return ExtGroup(M, N, cover, iota, ())
    trivial = [psi @ iota for psi in hom_space(cover.module, N)]
    length = sum(n * k for n, k in zip(N.dims, Omega.dims))
    vectors = [flatten_map(t) for t in trivial] + [flatten_map(h) for h in candidates]
    _, pivots = linalg.rref(linalg.hstack(vectors, M.K, length))
    classes = tuple(candidates[j - len(trivial)] for j in pivots if j >= len(trivial))
    logger.debug("dim Ext^1(%s, %s) = %d", M.name or "M", N.name or "N", len(classes))
    return ExtGroup(M, N, cover, iota, classes)


# ----------------------------------------------------------------------------
# rotations
# ----------------------------------------------------------------------------


def _rotate_left(ses: ShortExactSequence, projective_first: bool = False) -> ShortExactSequence:
    """``0 -> Omega X3 -> X1 + P -> X2 -> 0`` (or ``P + X1``) from ``0 -> X1 -> X2 -> X3 -> 0``."""
    X1, X3 = ses.left, ses.right
    cover = projective_cover(X3)
    iota = syzygy_submodule(X3).inclusion
    h = lift_through_epi(cover.epi, ses.g)
    if h is None:
        raise ExactnessError("sequence is not surjective on the right")
    kappa = factor_through_mono(h @ iota, ses.f)
    if kappa is None:
        raise ExactnessError("kernel of g is larger than the image of f")
    parts = [cover.module, X1] if projective_first else [X1, cover.module]
    ip, ix = (0, 1) if projective_first else (1, 0)
    _, inj, proj = direct_sum_maps(parts)
    into = inj[ip] @ iota - inj[ix] @ kappa
    out = ses.f @ proj[ix] + h @ proj[ip]
    return ShortExactSequence(into, out).verify()


def rotate_right(ses: ShortExactSequence) -> tuple[ShortExactSequence, ModuleMap, ModuleMap]:
    """``0 -> X2 -> E + X3 -> Omega^{-1} X1 -> 0`` with the split pair for ``X3 | E + X3``."""
    X2, X3 = ses.middle, ses.right
    rotated = _rotate_left(ses.dual(), projective_first=True).dual()
    E = projective_cover(ses.left.dual()).module.dual()
    middle, inj, proj = direct_sum_maps([E, X3])
    f = rotated.f.with_ends(X2, middle)
    g = rotated.g.with_ends(middle, rotated.right)
    return ShortExactSequence(f, g).verify(), inj[1], proj[1]


def rotate_ses(ses: ShortExactSequence) -> tuple[ShortExactSequence, ShortExactSequence]:
    """Both rotations of ``0 -> X1 -> X2 -> X3 -> 0``.

    Returns ``0 -> Omega X3 -> X1 + P -> X2 -> 0`` with P the cover of X3, and
    ``0 -> X2 -> E + X3 -> Omega^{-1} X1 -> 0`` with E the envelope of X1.
    """
    ses.verify()
    return _rotate_left(ses), rotate_right(ses)[0]


# ----------------------------------------------------------------------------
# horseshoe transports
# ----------------------------------------------------------------------------

Split = tuple[ModuleMap, ModuleMap]


def _transport_through(split: Split, phi: ModuleMap, H: Submodule) -> Split:
    """Move ``X | E`` to ``Omega X | H`` where ``H = ker(phi)`` for an epi ``phi: P -> E``."""
    s, r = split
    X = s.source
    sub_X = syzygy_submodule(X)
    if X.is_zero():
        return ModuleMap.zero(sub_X.module, H.module), ModuleMap.zero(H.module, sub_X.module)
    cover_X = projective_cover(X)
    w = lift_through_epi(s @ cover_X.epi, phi)
    u = lift_through_epi(r @ phi, cover_X.epi)
    if w is None or u is None:
        raise ExactnessError("cover map is not surjective")
    # u o w lies over the identity of X, so it is an automorphism of the minimal cover
    u = (u @ w).inverse() @ u
    s_new = factor_through_mono(w @ sub_X.inclusion, H.inclusion)
    r_new = factor_through_mono(u @ H.inclusion, sub_X.inclusion)
    if s_new is None or r_new is None:
        raise ExactnessError("transported split does not restrict to the syzygies")
    return s_new, r_new


def _dual_split(split: Split | None) -> Split | None:
    if split is None:
        return None
    s, r = split
    return r.dual(), s.dual()


def syzygy_ses(ses: ShortExactSequence, split: Split | None = None) -> tuple[ShortExactSequence, Split | None]:
    """``0 -> Omega U -> H -> Omega V -> 0`` from ``0 -> U -> E -> V -> 0``.

    H is the kernel of ``P(U) + P(V) -> E``; a split ``X | E`` travels along to
    ``Omega X | H``.
    """
    U, V = ses.left, ses.right
    cover_U, cover_V = projective_cover(U), projective_cover(V)
    h = lift_through_epi(cover_V.epi, ses.g)
    if h is None:
        raise ExactnessError("sequence is not surjective on the right")
    _, inj, proj = direct_sum_maps([cover_U.module, cover_V.module])
    phi = ses.f @ cover_U.epi @ proj[0] + h @ proj[1]
    H = kernel(phi)
    f_new = factor_through_mono(inj[0] @ syzygy_submodule(U).inclusion, H.inclusion)
    g_new = factor_through_mono(proj[1] @ H.inclusion, syzygy_submodule(V).inclusion)
    if f_new is None or g_new is None:
        raise ExactnessError("horseshoe maps do not restrict")
    out = ShortExactSequence(f_new, g_new).verify()
    if split is None:
        return out, None
    return out, _transport_through(split, phi, H)


def cosyzygy_ses(ses: ShortExactSequence, split: Split | None = None) -> tuple[ShortExactSequence, Split | None]:
    """``0 -> Omega^{-1} U -> H -> Omega^{-1} V -> 0``, the dual of the horseshoe over the opposite algebra."""
    out, moved = syzygy_ses(ses.dual(), _dual_split(split))
    return out.dual().verify(), _dual_split(moved)


def transport_split(s: ModuleMap, r: ModuleMap, k: int = 1) -> Split:
    """Move ``X | E`` to ``Omega^k X | Omega^k E`` (k may be negative)."""
    split: Split = (s, r)
    for _ in range(abs(k)):
        if k > 0:
            E = split[0].target
            split = _transport_through(split, projective_cover(E).epi, syzygy_submodule(E))
        else:
            E = split[0].target.dual()
            moved = _transport_through(_dual_split(split), projective_cover(E).epi, syzygy_submodule(E))
            split = _dual_split(moved)
    return split


# ----------------------------------------------------------------------------
# resolutions to filtrations
# ----------------------------------------------------------------------------


def resolution_generators(res: Resolution) -> list[Representation]:
    """``Omega^{-i} M_i`` for every term of the resolution."""
    return [syzygy(M, -i) for i, M in enumerate(res.terms)]


def resolution_to_filtration(res: Resolution, tail=None):
    """Certificate that X lies in ``<M_0>_1 * <Omega^{-1} M_1>_1 * ... * <Omega^{-n} M_n>_1``.

    Each piece ``0 -> K_{j+1} -> M_j -> K_j -> 0`` is rotated right to
    ``0 -> M_j -> E + K_j -> Omega^{-1} K_{j+1} -> 0`` and pushed j times through
    Omega^{-1}, carrying the summand ``K_j``. Returns the generators and the
    certificate, whose depth is at most ``n + 1``.

    ``tail`` replaces the final leaf for ``Omega^{-n} K_n`` by a deeper certificate
    of the same module.
    """
    from extdim.certificate import Extension, Leaf, Summand

    res.verify()
    pieces = res.short_exact_pieces()
    n = len(pieces)
    node = tail if tail is not None else Leaf(syzygy(pieces[-1].left if pieces else res.target, -n))
    for j in range(n - 1, -1, -1):
        seq, s, r = rotate_right(pieces[j])
        split: Split = (s, r)
        for _ in range(j):
            seq, split = cosyzygy_ses(seq, split)
        extension = Extension(seq.middle, seq, Leaf(seq.left), node)
        node = Summand(split[0].source, extension, split[0], split[1])
    logger.debug("Converted a resolution of length %d into a certificate", n)
    return resolution_generators(res), node


# ----------------------------------------------------------------------------
# random material for property checks
# ----------------------------------------------------------------------------


def random_short_exact_sequence(
    algebra: BoundQuiverAlgebra, rng: random.Random, max_dim: int = 8
) -> ShortExactSequence:
    """``0 -> U -> M -> M/U -> 0`` for a random module and a random generated submodule."""
    M = random_module(algebra, rng, max_dim)
    K = M.K
    generators = []
    for d in M.dims:
        if d and rng.random() < 0.5:
            generators.append(random_vector(algebra.field, d, rng))
        else:
            generators.append(linalg.zeros(d, 0, K))
    sub = generated_submodule(M, generators)
    _, projection, _ = quotient(M, sub)
    return ShortExactSequence(sub.inclusion, projection).verify()


def random_resolution(
    algebra: BoundQuiverAlgebra, rng: random.Random, max_dim: int = 8, max_length: int = 3
) -> Resolution:
    """A truncated minimal resolution of a random module."""
    M = random_module(algebra, rng, max_dim)
    return minimal_resolution(M, length=rng.randint(0, max_length))
