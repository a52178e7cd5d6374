"""Ground fields: the rationals or a prime field, both exact."""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any

from sympy import isprime
from sympy.polys.domains import FF, QQ


class FieldError(ValueError):
    """Raised for an invalid field description or an unparsable scalar."""


class FieldKind(str, Enum):
    """Supported ground fields."""

    RATIONALS = "Q"
    PRIME = "F"


@dataclass(frozen=True)
class FieldSpec:
    """The ground field k, either Q or F_p.

    Attributes:
        kind: Rationals or a prime field.
        p: The characteristic when ``kind`` is PRIME, otherwise 0.
    """

    kind: FieldKind = FieldKind.RATIONALS
    p: int = 0

    def __post_init__(self) -> None:
        if self.kind == FieldKind.PRIME:
            if not isinstance(self.p, int) or not isprime(self.p):
                raise FieldError(f"Field characteristic must be prime, got {self.p!r}")
        elif self.p != 0:
            raise FieldError("The rational field has characteristic 0")

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls(FieldKind.RATIONALS, 0)

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls(FieldKind.PRIME, p)

    @classmethod
    def parse(cls, text: str) -> FieldSpec:
        """Parse ``Q``, ``F <p>``, ``F<p>`` or ``F_p`` style descriptions."""
        cleaned = text.strip()
        if cleaned.upper() in ("Q", "QQ"):
            return cls.rationals()
        if cleaned[:1].upper() == "F":
            rest = cleaned[1:].strip().lstrip("_").strip()
            if rest.isdigit():
                return cls.prime(int(rest))
        raise FieldError(f"Unknown field '{text}' (expected 'Q' or 'F <p>')")

    @property
    def is_prime_field(self) -> bool:
        return self.kind == FieldKind.PRIME

    @property
    def domain(self):
        """The sympy domain carrying the arithmetic."""
        if self.is_prime_field:
            return FF(self.p)
        return QQ

    @property
    def size(self) -> int | None:
        """Number of elements, ``None`` for Q."""
        return self.p if self.is_prime_field else None

    def __str__(self) -> str:
        return f"F {self.p}" if self.is_prime_field else "Q"

    def convert(self, value: Any):
        """Convert an int, Fraction, ``"p/q"`` string or domain element."""
        K = self.domain
        if isinstance(value, str):
            value = _parse_scalar(value)
        if isinstance(value, Fraction):
            return K.convert(value.numerator) / K.convert(value.denominator)
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            if self.is_prime_field:
                return K.convert(value % self.p)
            return K.convert(value)
        try:
            return K.convert(value)
        except Exception as e:
            raise FieldError(f"Cannot convert {value!r} into {self}") from e

    def format(self, a) -> str:
        """Canonical text for an element: residues in 0..p-1, rationals as ``p/q``."""
        K = self.domain
        if self.is_prime_field:
            return str(int(K.to_sympy(a)) % self.p)
        r = K.to_sympy(a)
        if r.q == 1:
            return str(r.p)
        return f"{r.p}/{r.q}"

    def to_fraction(self, a) -> Fraction:
        """An element as a Fraction (residue representative for F_p)."""
        if self.is_prime_field:
            return Fraction(int(self.domain.to_sympy(a)) % self.p)
        r = self.domain.to_sympy(a)
        return Fraction(int(r.p), int(r.q))

    def elements(self) -> list:
        """All elements of a prime field, in residue order."""
        if not self.is_prime_field:
            raise FieldError("The rational field cannot be enumerated")
        K = self.domain
        return [K.convert(i) for i in range(self.p)]

    def random_element(self, rng: random.Random, spread: int = 3):
        """A random element; over Q an integer in [-spread, spread]."""
        if self.is_prime_field:
            return self.domain.convert(rng.randrange(self.p))
        return self.domain.convert(rng.randint(-spread, spread))


def _parse_scalar(text: str) -> Fraction:
    cleaned = text.strip()
    try:
        return Fraction(cleaned)
    except (ValueError, ZeroDivisionError) as e:
        raise FieldError(f"Invalid scalar '{text}'") from e
