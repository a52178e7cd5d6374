"""Krull-Schmidt decomposition, isomorphism tests and add-membership.

Splitting uses Fitting's lemma: for an endomorphism f whose characteristic
polynomial has two coprime factors, ``M = ker q(f)^d + im q(f)^d``. A module is
declared indecomposable only with a certificate that End(M) is local; when no
certificate and no splitting element turn up within the trial budget,
``InconclusiveDecomposition`` is raised.
"""

from __future__ import annotations

import itertools
import random
from collections.abc import Sequence
from dataclasses import dataclass

from sympy import Poly, symbols
from sympy.polys.matrices import DomainMatrix

from extdim import linalg
from extdim.config import DEFAULT_SEED
from extdim.logging_config import get_logger
from extdim.module import (
    ModuleMap,
    Representation,
    combine_maps,
    factor_through_mono,
    flatten_map,
    hom_space,
    image,
    kernel,
)

logger = get_logger(__name__)

DEFAULT_TRIALS = 64
EXHAUSTIVE_LIMIT = 4096

_x = symbols("x")


class InconclusiveDecomposition(RuntimeError):
    """Raised when neither a splitting nor a locality certificate was found."""

    def __init__(self, module: Representation, trials: int):
        self.module = module
        self.trials = trials
        super().__init__(
            f"Could not decide whether {module!r} is indecomposable after {trials} trials; "
            "raise decompose_trials to search longer"
        )


@dataclass(frozen=True)
class Summand:
    """An indecomposable summand with its split inclusion and projection."""

    module: Representation
    inclusion: ModuleMap
    projection: ModuleMap


# ----------------------------------------------------------------------------
# polynomial helpers
# ----------------------------------------------------------------------------


def _factors(f: ModuleMap) -> list[list]:
    """Distinct monic irreducible factors of the characteristic polynomial of f."""
    K = f.source.K
    coeffs = linalg.charpoly(f.matrix())
    if len(coeffs) <= 1:
        return []
    poly = Poly([K.to_sympy(c) for c in coeffs], _x, domain=K)
    _, factors = poly.factor_list()
    out = []
    for factor, _mult in factors:
        cs = [K.from_sympy(c) for c in factor.all_coeffs()]
        lead = cs[0]
        out.append([c / lead for c in cs])
    return out


def _evaluate(coeffs: Sequence, f: ModuleMap) -> ModuleMap:
    """q(f) by Horner's rule, blockwise."""
    blocks = []
    K = f.source.K
    for B in f.blocks:
        n = B.shape[0]
        result = linalg.zeros(n, n, K)
        for c in coeffs:
            result = linalg.add(linalg.mul(result, B), linalg.scale(linalg.identity(n, K), c))
        blocks.append(result)
    return ModuleMap(f.source, f.source, tuple(blocks), check=False)


def _power(f: ModuleMap, n: int) -> ModuleMap:
    result = ModuleMap.identity(f.source)
    base = f
    while n:
        if n & 1:
            result = result @ base
        base = base @ base
        n >>= 1
    return result


def fitting_split(M: Representation, f: ModuleMap) -> tuple[Summand, Summand] | None:
    """Split M along the first irreducible factor of f's characteristic polynomial."""
    factors = _factors(f)
    if len(factors) < 2:
        return None
    d = max(M.dims, default=0)
    E = _power(_evaluate(factors[0], f), d)
    first = kernel(E)
    second = image(E)
    return _complementary(M, first.inclusion, second.inclusion)


def _complementary(M: Representation, inc_a: ModuleMap, inc_b: ModuleMap) -> tuple[Summand, Summand]:
    K = M.K
    proj_a, proj_b = [], []
    for v, (Ba, Bb) in enumerate(zip(inc_a.blocks, inc_b.blocks)):
        inv = linalg.inverse(linalg.hstack([Ba, Bb], K, M.dims[v]))
        ka = Ba.shape[1]
        proj_a.append(linalg.select_rows(inv, range(ka)))
        proj_b.append(linalg.select_rows(inv, range(ka, M.dims[v])))
    A = inc_a.source
    B = inc_b.source
    return (
        Summand(A, inc_a, ModuleMap(M, A, tuple(proj_a), check=False)),
        Summand(B, inc_b, ModuleMap(M, B, tuple(proj_b), check=False)),
    )


# ----------------------------------------------------------------------------
# locality certificates
# ----------------------------------------------------------------------------


def _span(vectors: Sequence[DomainMatrix], K, length: int) -> DomainMatrix:
    if not vectors:
        return linalg.zeros(length, 0, K)
    return linalg.column_space(linalg.hstack(list(vectors), K, length))


def _in_span(span: DomainMatrix, v: DomainMatrix) -> bool:
    if span.shape[1] == 0:
        return linalg.is_zero(v)
    return linalg.solve(span, v) is not None


def _eigenvalue_ideal_is_nilpotent(M: Representation, basis: list[ModuleMap]) -> bool | None:
    """Check End(M) = k.id + N with N a nilpotent ideal.

    Returns True when certified, False when N is not a nilpotent ideal, and None
    when some basis element has no single eigenvalue in k.
    """
    K = M.K
    shifted = []
    ident = ModuleMap.identity(M)
    for f in basis:
        factors = _factors(f)
        if len(factors) != 1 or len(factors[0]) != 2:
            return None
        eigenvalue = -factors[0][1]
        shifted.append(f - ident.scaled(eigenvalue))
    length = sum(m * n for m, n in zip(M.dims, M.dims))
    vectors = [flatten_map(g) for g in shifted]
    N_span = _span(vectors, K, length)
    if N_span.shape[1] != len(basis) - 1:
        return False
    n_basis = [shifted[k] for k in _independent(vectors, K, length)]
    for a, b in itertools.product(n_basis, repeat=2):
        if not _in_span(N_span, flatten_map(a @ b)):
            return False
    power = n_basis
    for _ in range(len(basis) + 1):
        if not power:
            return True
        products = [a @ b for a in power for b in n_basis]
        keep = _independent([flatten_map(p) for p in products], K, length)
        power = [products[k] for k in keep]
    return not power


def _independent(vectors: Sequence[DomainMatrix], K, length: int) -> list[int]:
    if not vectors:
        return []
    _, pivots = linalg.rref(linalg.hstack(list(vectors), K, length))
    return list(pivots)


def _trace_form_residue_dimension(M: Representation, basis: list[ModuleMap]) -> int:
    """dim End(M)/J via the trace form; valid in characteristic 0."""
    K = M.K
    mats = [f.matrix() for f in basis]
    n = len(mats)
    gram = {}
    for i in range(n):
        for j in range(n):
            prod = linalg.mul(mats[i], mats[j])
            tr = K.zero
            for r, row in linalg.dod(prod).items():
                if r in row:
                    tr += row[r]
            if not K.is_zero(tr):
                gram.setdefault(i, {})[j] = tr
    return linalg.rank(linalg.from_dod(gram, (n, n), K))


def _find_splitter(
    M: Representation, basis: list[ModuleMap], rng: random.Random, trials: int
) -> tuple[Summand, Summand] | bool:
    """A Fitting splitting of M, or True when End(M) is certified local.

    Raises:
        InconclusiveDecomposition: If the budget runs out first.
    """
    F = M.algebra.field
    if len(basis) <= 1:
        return True
    for f in basis:
        split = fitting_split(M, f)
        if split is not None:
            return split

    certified = _eigenvalue_ideal_is_nilpotent(M, basis)
    if certified:
        return True

    if not F.is_prime_field:
        residue = _trace_form_residue_dimension(M, basis)
        if residue == 1:
            return True
        for f in basis:
            factors = _factors(f)
            if len(factors) == 1 and len(factors[0]) - 1 == residue:
                return True
    elif F.p ** len(basis) <= EXHAUSTIVE_LIMIT:
        elements = F.elements()
        for coeffs in itertools.product(elements, repeat=len(basis)):
            split = fitting_split(M, combine_maps(basis, coeffs, M, M))
            if split is not None:
                return split
        return True

    for _ in range(trials):
        coeffs = [F.random_element(rng) for _ in basis]
        split = fitting_split(M, combine_maps(basis, coeffs, M, M))
        if split is not None:
            return split
    raise InconclusiveDecomposition(M, trials)


# ----------------------------------------------------------------------------
# decomposition
# ----------------------------------------------------------------------------


def split_summands(M: Representation, seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS) -> list[Summand]:
    """Indecomposable summands of M with inclusions and projections.

    The inclusions and projections satisfy ``p_i o s_j = delta_ij`` and
    ``sum s_i o p_i = id``.
    """
    rng = random.Random(seed)
    out: list[Summand] = []
    stack = [Summand(M, ModuleMap.identity(M), ModuleMap.identity(M))]
    while stack:
        piece = stack.pop()
        X = piece.module
        if X.is_zero():
            continue
        outcome = _find_splitter(X, hom_space(X, X), rng, trials)
        if outcome is True:
            out.append(piece)
            continue
        a, b = outcome
        for part in (b, a):
            stack.append(Summand(part.module, piece.inclusion @ part.inclusion, part.projection @ piece.projection))
    out.reverse()
    logger.debug("Split module of dimension %d into %d indecomposables", M.dimension, len(out))
    return out


def is_indecomposable(M: Representation, seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS) -> bool:
    if M.is_zero():
        return False
    return _find_splitter(M, hom_space(M, M), random.Random(seed), trials) is True


def find_isomorphism_indecomposable(X: Representation, Y: Representation) -> ModuleMap | None:
    """An isomorphism between indecomposables, found among basis composites."""
    if X.dims != Y.dims:
        return None
    forward = hom_space(X, Y)
    if not forward:
        return None
    backward = hom_space(Y, X)
    for f in forward:
        for g in backward:
            if (g @ f).is_isomorphism():
                return f
    return None


def isomorphic_indecomposables(X: Representation, Y: Representation) -> bool:
    return find_isomorphism_indecomposable(X, Y) is not None


def decompose(
    M: Representation, seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS
) -> list[tuple[Representation, int]]:
    """Pairwise non-isomorphic indecomposable summands with multiplicities."""
    classes: list[list] = []
    for s in split_summands(M, seed, trials):
        for entry in classes:
            if isomorphic_indecomposables(entry[0], s.module):
                entry[1] += 1
                break
        else:
            classes.append([s.module, 1])
    return [(X, m) for X, m in classes]


def is_isomorphic(M: Representation, N: Representation, seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS) -> bool:
    """Exact isomorphism test: random invertible search, then decompositions."""
    return find_isomorphism(M, N, seed, trials) is not None or _same_decomposition(M, N, seed, trials)


def find_isomorphism(
    M: Representation, N: Representation, seed: int = DEFAULT_SEED, attempts: int = 8
) -> ModuleMap | None:
    """Look for an invertible map among random combinations of a Hom basis."""
    if M.dims != N.dims:
        return None
    if M.is_zero():
        return ModuleMap.zero(M, N)
    basis = hom_space(M, N)
    if not basis:
        return None
    F = M.algebra.field
    rng = random.Random(seed)
    for f in basis:
        if f.is_isomorphism():
            return f
    for _ in range(attempts):
        f = combine_maps(basis, [F.random_element(rng) for _ in basis], M, N)
        if f.is_isomorphism():
            return f
    return None


def _same_decomposition(M: Representation, N: Representation, seed: int, trials: int) -> bool:
    if M.dims != N.dims:
        return False
    left = decompose(M, seed, trials)
    right = decompose(N, seed, trials)
    if len(left) != len(right):
        return False
    unmatched = list(right)
    for X, m in left:
        for k, (Y, n) in enumerate(unmatched):
            if m == n and isomorphic_indecomposables(X, Y):
                del unmatched[k]
                break
        else:
            return False
    return not unmatched


# ----------------------------------------------------------------------------
# add-membership and split witnesses
# ----------------------------------------------------------------------------


def factors_through(f: ModuleMap, T: Representation | Sequence[Representation]) -> bool:
    """Whether f: M -> N factors through a module in add T."""
    M, N = f.source, f.target
    generators = [T] if isinstance(T, Representation) else list(T)
    K = M.K
    length = sum(m * n for m, n in zip(N.dims, M.dims))
    composites = []
    for G in generators:
        if G.is_zero():
            continue
        into = hom_space(M, G)
        if not into:
            continue
        out_of = hom_space(G, N)
        composites.extend(flatten_map(g @ h) for g in out_of for h in into)
    if f.is_zero():
        return True
    if not composites:
        return False
    return _in_span(_span(composites, K, length), flatten_map(f))


def is_in_add(M: Representation, T: Representation | Sequence[Representation]) -> bool:
    """M is in add T iff the identity of M factors through a sum of copies of T."""
    if M.is_zero():
        return True
    return factors_through(ModuleMap.identity(M), T)


def _split_indecomposable(X: Representation, E: Representation) -> tuple[ModuleMap, ModuleMap] | None:
    forward = hom_space(X, E)
    if not forward:
        return None
    backward = hom_space(E, X)
    for f in forward:
        for g in backward:
            gf = g @ f
            if gf.is_isomorphism():
                return f, gf.inverse() @ g
    return None


def find_split(
    X: Representation, E: Representation, seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS
) -> tuple[ModuleMap, ModuleMap] | None:
    """Maps ``s: X -> E`` and ``r: E -> X`` with ``r o s = id``, or ``None`` if X is not a summand."""
    if X.is_zero():
        return ModuleMap.zero(X, E), ModuleMap.zero(E, X)
    pieces = split_summands(X, seed, trials)
    ambient = E
    into_E = ModuleMap.identity(E)  # ambient -> E
    onto_ambient = ModuleMap.identity(E)  # E -> ambient
    s_total = ModuleMap.zero(X, E)
    r_total = ModuleMap.zero(E, X)
    for piece in pieces:
        found = _split_indecomposable(piece.module, ambient)
        if found is None:
            return None
        s, r = found
        s_total = s_total + into_E @ s @ piece.projection
        r_total = r_total + piece.inclusion @ r @ onto_ambient
        complement = kernel(r)
        onto_complement = factor_through_mono(ModuleMap.identity(ambient) - s @ r, complement.inclusion)
        into_E = into_E @ complement.inclusion
        onto_ambient = onto_complement @ onto_ambient
        ambient = complement.module
    return s_total, r_total
