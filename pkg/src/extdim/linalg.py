"""Exact sparse linear algebra over a sympy domain.

All matrices are sympy ``DomainMatrix`` objects in sparse format. Columns are
vectors: a map ``k^n -> k^m`` is an ``m x n`` matrix. Zero-size shapes are
handled here so callers never have to special-case empty vertex spaces.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

from sympy.polys.matrices import DomainMatrix

Dod = dict[int, dict[int, object]]


def from_dod(dod: Dod, shape: tuple[int, int], K) -> DomainMatrix:
    """Build a sparse matrix from a dict of rows, dropping explicit zeros."""
    rows: Dod = {}
    for i, row in dod.items():
        kept = {j: v for j, v in row.items() if not K.is_zero(v)}
        if kept:
            rows[i] = kept
    return DomainMatrix(rows, shape, K)


def matrix(rows: Sequence[Sequence[object]], K, ncols: int | None = None) -> DomainMatrix:
    """Build a matrix from nested lists of domain elements or ints."""
    m = len(rows)
    n = len(rows[0]) if rows else (ncols or 0)
    dod: Dod = {}
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ValueError("Ragged matrix rows")
        dod[i] = {j: K.convert(v) for j, v in enumerate(row)}
    return from_dod(dod, (m, n), K)


def dod(M: DomainMatrix) -> Dod:
    """Read-only dict-of-dicts view of the nonzero entries."""
    return M.to_sparse().rep


def to_lists(M: DomainMatrix) -> list[list[object]]:
    m, n = M.shape
    K = M.domain
    out = [[K.zero] * n for _ in range(m)]
    for i, row in dod(M).items():
        for j, v in row.items():
            out[i][j] = v
    return out


def zeros(m: int, n: int, K) -> DomainMatrix:
    return DomainMatrix({}, (m, n), K)


def identity(n: int, K) -> DomainMatrix:
    return DomainMatrix({i: {i: K.one} for i in range(n)}, (n, n), K)


def entry(M: DomainMatrix, i: int, j: int):
    return dod(M).get(i, {}).get(j, M.domain.zero)


def mul(A: DomainMatrix, B: DomainMatrix) -> DomainMatrix:
    """Matrix product ``A B``."""
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"Cannot multiply {A.shape} by {B.shape}")
    if 0 in A.shape or 0 in B.shape:
        return zeros(A.shape[0], B.shape[1], A.domain)
    return A.to_sparse().matmul(B.to_sparse())


def chain(*matrices: DomainMatrix) -> DomainMatrix:
    """Product ``M1 M2 ... Mk`` (apply the last factor first)."""
    result = matrices[-1]
    for M in reversed(matrices[:-1]):
        result = mul(M, result)
    return result


def _combine(A: DomainMatrix, B: DomainMatrix, sign: int) -> DomainMatrix:
    if A.shape != B.shape:
        raise ValueError(f"Shape mismatch {A.shape} vs {B.shape}")
    K = A.domain
    out: Dod = {i: dict(row) for i, row in dod(A).items()}
    for i, row in dod(B).items():
        target = out.setdefault(i, {})
        for j, v in row.items():
            target[j] = target.get(j, K.zero) + (v if sign > 0 else -v)
    return from_dod(out, A.shape, K)


def add(A: DomainMatrix, B: DomainMatrix) -> DomainMatrix:
    return _combine(A, B, 1)


def sub(A: DomainMatrix, B: DomainMatrix) -> DomainMatrix:
    return _combine(A, B, -1)


def scale(A: DomainMatrix, c) -> DomainMatrix:
    K = A.domain
    c = K.convert(c)
    return from_dod({i: {j: c * v for j, v in row.items()} for i, row in dod(A).items()}, A.shape, K)


def neg(A: DomainMatrix) -> DomainMatrix:
    return scale(A, -1)


def transpose(A: DomainMatrix) -> DomainMatrix:
    out: Dod = {}
    for i, row in dod(A).items():
        for j, v in row.items():
            out.setdefault(j, {})[i] = v
    return from_dod(out, (A.shape[1], A.shape[0]), A.domain)


def is_zero(A: DomainMatrix) -> bool:
    K = A.domain
    return all(K.is_zero(v) for row in dod(A).values() for v in row.values())


def equal(A: DomainMatrix, B: DomainMatrix) -> bool:
    return A.shape == B.shape and is_zero(sub(A, B))


def is_identity(A: DomainMatrix) -> bool:
    return A.shape[0] == A.shape[1] and equal(A, identity(A.shape[0], A.domain))


def rref(A: DomainMatrix) -> tuple[DomainMatrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns."""
    if 0 in A.shape:
        return zeros(*A.shape, A.domain), ()
    R, pivots = A.to_sparse().rref()
    return R.to_sparse(), tuple(pivots)


def rank(A: DomainMatrix) -> int:
    return len(rref(A)[1])


def nullspace(A: DomainMatrix) -> DomainMatrix:
    """Columns spanning ``{x : A x = 0}``, one per free variable in rref order."""
    m, n = A.shape
    K = A.domain
    R, pivots = rref(A)
    pivot_set = set(pivots)
    free = [j for j in range(n) if j not in pivot_set]
    rows = dod(R)
    out: Dod = {}
    for col, f in enumerate(free):
        out.setdefault(f, {})[col] = K.one
        for i, p in enumerate(pivots):
            v = rows.get(i, {}).get(f)
            if v is not None and not K.is_zero(v):
                out.setdefault(p, {})[col] = -v
    return from_dod(out, (n, len(free)), K)


def select_columns(A: DomainMatrix, cols: Iterable[int]) -> DomainMatrix:
    cols = list(cols)
    index = {c: k for k, c in enumerate(cols)}
    out: Dod = {}
    for i, row in dod(A).items():
        for j, v in row.items():
            if j in index:
                out.setdefault(i, {})[index[j]] = v
    return from_dod(out, (A.shape[0], len(cols)), A.domain)


def select_rows(A: DomainMatrix, rows: Iterable[int]) -> DomainMatrix:
    rows = list(rows)
    entries = dod(A)
    out: Dod = {k: dict(entries[r]) for k, r in enumerate(rows) if r in entries}
    return from_dod(out, (len(rows), A.shape[1]), A.domain)


def column_space(A: DomainMatrix) -> DomainMatrix:
    """A column basis of the image, taken from the pivot columns of ``A``."""
    _, pivots = rref(A)
    return select_columns(A, pivots)


def hstack(blocks: Sequence[DomainMatrix], K, nrows: int | None = None) -> DomainMatrix:
    if not blocks:
        return zeros(nrows or 0, 0, K)
    m = blocks[0].shape[0]
    out: Dod = {}
    offset = 0
    for B in blocks:
        if B.shape[0] != m:
            raise ValueError("hstack blocks must share the row count")
        for i, row in dod(B).items():
            target = out.setdefault(i, {})
            for j, v in row.items():
                target[offset + j] = v
        offset += B.shape[1]
    return from_dod(out, (m, offset), K)


def vstack(blocks: Sequence[DomainMatrix], K, ncols: int | None = None) -> DomainMatrix:
    if not blocks:
        return zeros(0, ncols or 0, K)
    n = blocks[0].shape[1]
    out: Dod = {}
    offset = 0
    for B in blocks:
        if B.shape[1] != n:
            raise ValueError("vstack blocks must share the column count")
        for i, row in dod(B).items():
            out[offset + i] = dict(row)
        offset += B.shape[0]
    return from_dod(out, (offset, n), K)


def block_diag(blocks: Sequence[DomainMatrix], K) -> DomainMatrix:
    out: Dod = {}
    r = c = 0
    for B in blocks:
        for i, row in dod(B).items():
            target = out.setdefault(r + i, {})
            for j, v in row.items():
                target[c + j] = v
        r += B.shape[0]
        c += B.shape[1]
    return from_dod(out, (r, c), K)


def solve(A: DomainMatrix, B: DomainMatrix) -> DomainMatrix | None:
    """One solution X of ``A X = B`` (free variables zero), or ``None``."""
    m, n = A.shape
    if B.shape[0] != m:
        raise ValueError(f"Right-hand side has {B.shape[0]} rows, expected {m}")
    K = A.domain
    k = B.shape[1]
    if m == 0:
        return zeros(n, k, K)
    R, pivots = rref(hstack([A, B], K))
    if any(p >= n for p in pivots):
        return None
    rows = dod(R)
    out: Dod = {}
    for i, p in enumerate(pivots):
        row = rows.get(i, {})
        values = {j - n: v for j, v in row.items() if j >= n}
        if values:
            out[p] = values
    return from_dod(out, (n, k), K)


def extend_to_basis(V: DomainMatrix) -> DomainMatrix:
    """Standard basis columns completing the independent columns of ``V``."""
    n = V.shape[0]
    K = V.domain
    _, pivots = rref(hstack([V, identity(n, K)], K))
    k = V.shape[1]
    chosen = [p - k for p in pivots if p >= k]
    return select_columns(identity(n, K), chosen)


def inverse(A: DomainMatrix) -> DomainMatrix:
    if A.shape[0] != A.shape[1]:
        raise ValueError("Only square matrices are invertible")
    if A.shape[0] == 0:
        return A
    return A.to_dense().inv().to_sparse()


def charpoly(A: DomainMatrix) -> list:
    """Characteristic polynomial coefficients, leading coefficient first."""
    if A.shape[0] == 0:
        return [A.domain.one]
    return list(A.to_dense().charpoly())


def column_vector(values: Sequence[object], K) -> DomainMatrix:
    return from_dod({i: {0: v} for i, v in enumerate(values)}, (len(values), 1), K)


def column(A: DomainMatrix, j: int) -> list:
    K = A.domain
    out = [K.zero] * A.shape[0]
    for i, row in dod(A).items():
        if j in row:
            out[i] = row[j]
    return out
