"""Sanity validation for algebras and module literals."""

from __future__ import annotations

import random
from collections.abc import Mapping
from dataclasses import dataclass, field

from extdim import linalg
from extdim.algebra import BoundQuiverAlgebra
from extdim.config import DEFAULT_SEED
from extdim.module import Representation

DEFAULT_SAMPLES = 16


@dataclass
class ValidationIssue:
    """A single validation issue."""

    level: str  # "error" or "warning"
    subject: str | None
    field: str
    message: str
    suggestion: str | None = None

    def __str__(self) -> str:
        parts = []
        if self.subject:
            parts.append(f"[{self.level.upper()}] Module '{self.subject}', {self.field}")
        else:
            parts.append(f"[{self.level.upper()}] {self.field}")
        parts.append(f": {self.message}")
        if self.suggestion:
            parts.append(f"\n  Suggestion: {self.suggestion}")
        return "".join(parts)


@dataclass
class ValidationResult:
    """Issues found while validating an algebra document."""

    issues: list[ValidationIssue] = field(default_factory=list)

    @property
    def has_errors(self) -> bool:
        return any(i.level == "error" for i in self.issues)

    @property
    def has_warnings(self) -> bool:
        return any(i.level == "warning" for i in self.issues)

    def add_error(
        self,
        field: str,
        message: str,
        subject: str | None = None,
        suggestion: str | None = None,
    ) -> None:
        self.issues.append(ValidationIssue("error", subject, field, message, suggestion))

    def add_warning(
        self,
        field: str,
        message: str,
        subject: str | None = None,
        suggestion: str | None = None,
    ) -> None:
        self.issues.append(ValidationIssue("warning", subject, field, message, suggestion))


def validate_algebra(
    algebra: BoundQuiverAlgebra,
    modules: Mapping[str, Representation] | None = None,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
) -> ValidationResult:
    """
    Check the multiplication table and any module literals.

    Checks:
    - the sum of the vertex idempotents is a two-sided unit
    - associativity on ``samples`` random triples
    - products of basis paths respect path length (homogeneous relations only)
    - relations vanish on every module literal

    Args:
        algebra: The algebra to check
        modules: Named module literals from the same document
        samples: Number of random triples for the associativity check
        seed: Seed for the random triples

    Returns:
        ValidationResult with any issues found
    """
    result = ValidationResult()
    _validate_unit(algebra, result)
    _validate_associativity(algebra, samples, seed, result)
    _validate_grading(algebra, result)
    _validate_shape(algebra, result)
    for name, module in (modules or {}).items():
        _validate_module(name, module, result)
    return result


def _basis_vector(algebra: BoundQuiverAlgebra, k: int) -> list:
    K = algebra.field.domain
    return [K.one if i == k else K.zero for i in range(algebra.dimension)]


def _validate_unit(algebra: BoundQuiverAlgebra, result: ValidationResult) -> None:
    one = algebra.unit()
    for k, path in enumerate(algebra.basis):
        b = _basis_vector(algebra, k)
        if algebra.multiply(one, b) != b or algebra.multiply(b, one) != b:
            result.add_error(field="unit", message=f"1 is not a unit for the basis path {path}")
            return


def _validate_associativity(algebra: BoundQuiverAlgebra, samples: int, seed: int, result: ValidationResult) -> None:
    rng = random.Random(seed)
    for trial in range(samples):
        a, b, c = (algebra.random_element(rng) for _ in range(3))
        left = algebra.multiply(algebra.multiply(a, b), c)
        right = algebra.multiply(a, algebra.multiply(b, c))
        if left != right:
            result.add_error(
                field="associativity",
                message=f"(ab)c != a(bc) for random triple {trial} (seed {seed})",
                suggestion="Check that the relations generate an ideal compatible with the path basis",
            )
            return


def _validate_grading(algebra: BoundQuiverAlgebra, result: ValidationResult) -> None:
    if not algebra.is_homogeneous():
        result.add_warning(
            field="relations",
            message="relations mix path lengths; the grading check is skipped",
        )
        return
    for (i, j), product in algebra.product_table().items():
        length = algebra.basis[i].length + algebra.basis[j].length
        bad = [k for k in product if algebra.basis[k].length != length]
        if bad:
            result.add_error(
                field="grading",
                message=f"{algebra.basis[i]} * {algebra.basis[j]} leaves path length {length}",
            )
            return


def _validate_shape(algebra: BoundQuiverAlgebra, result: ValidationResult) -> None:
    if not algebra.quiver.is_connected():
        result.add_warning(
            field="quiver",
            message="the quiver is not connected; invariants are those of a product of algebras",
        )
    if not algebra.arrows:
        result.add_warning(field="quiver", message="the quiver has no arrows; the algebra is semisimple")


def _validate_module(name: str, module: Representation, result: ValidationResult) -> None:
    if module.is_zero():
        result.add_warning(field="dims", subject=name, message="the module is zero")
    for terms in module.algebra.relation_terms():
        if not terms:
            continue
        p0 = terms[0][1]
        total = linalg.zeros(module.dim(p0.target), module.dim(p0.source), module.K)
        for c, p in terms:
            total = linalg.add(total, linalg.scale(module.path_matrix(p), c))
        if not linalg.is_zero(total):
            result.add_error(
                field="relations",
                subject=name,
                message="relation " + " + ".join(str(p) for _, p in terms) + " does not vanish",
            )
