"""Run settings for extdim: defaults, YAML loading and validation."""

import os
from dataclasses import dataclass, field, fields
from enum import Enum
from pathlib import Path
from typing import Any

import yaml

DEFAULT_SEED = 0xE3D1
CORPUS_ENV_VAR = "EXTDIM_CORPUS"

# ============================================================================
# Enums for constrained string values
# ============================================================================


class SubsetMode(str, Enum):
    """How simple subsets are chosen for the torsion bound."""

    EXHAUSTIVE = "exhaustive"  # every subset of the finite-pd simples
    ENDPOINTS = "endpoints"  # the empty set and all finite-pd simples
    EXPLICIT = "explicit"  # only the subsets given on the command line
    SINGLETON_GREEDY = "singleton-greedy"


# ============================================================================
# Exceptions
# ============================================================================


class ConfigError(Exception):
    """Raised when a settings file or value is invalid.

    Attributes:
        message: The error message.
        field: Name of the offending setting (if applicable).
        suggestion: Suggested fix (if applicable).
    """

    def __init__(self, message: str, field: str | None = None, suggestion: str | None = None):
        self.message = message
        self.field = field
        self.suggestion = suggestion
        super().__init__(str(self))

    def __str__(self) -> str:
        parts = []
        if self.field:
            parts.append(f"In setting '{self.field}'")
        parts.append(self.message)
        if self.suggestion:
            parts.append(f"Suggestion: {self.suggestion}")
        return "\n".join(parts)


def _parse_enum(enum_class: type[Enum], value: Any, field: str | None = None) -> Enum:
    """Parse a string into an enum member.

    Raises:
        ConfigError: If the value is not a valid member.
    """
    try:
        return enum_class(value)
    except ValueError:
        valid = ", ".join(e.value for e in enum_class)
        raise ConfigError(f"Invalid value '{value}'", field=field, suggestion=f"Valid values are: {valid}") from None


def _positive_int(value: Any, field: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"Expected an integer, got {value!r}", field=field)
    if value <= 0:
        raise ConfigError(f"Must be positive, got {value}", field=field)
    return value


def parse_subset_list(text: str) -> list[frozenset[str]]:
    """Parse ``"2,3,4,5"`` or ``"2,3;4"`` into subsets of vertex names.

    Semicolons separate subsets; an empty entry (``""`` or ``"{}"``) is the empty set.
    """
    subsets = []
    for chunk in text.split(";"):
        cleaned = chunk.strip().strip("{}").strip()
        members = [m.strip() for m in cleaned.split(",") if m.strip()]
        subsets.append(frozenset(members))
    return subsets


# ============================================================================
# Settings
# ============================================================================


@dataclass
class RunSettings:
    """Knobs shared by every command.

    ``cutoff`` of ``None`` means four times the algebra dimension.
    """

    cutoff: int | None = None
    seed: int = DEFAULT_SEED
    subsets: SubsetMode = SubsetMode.ENDPOINTS
    explicit: list[frozenset[str]] = field(default_factory=list)
    budget_dim: int = 4
    max_ext_combinations: int = 256
    decompose_trials: int = 64
    path_length_cap: int = 64
    path_count_cap: int = 20000

    def cutoff_for(self, algebra_dimension: int) -> int:
        return self.cutoff if self.cutoff is not None else 4 * algebra_dimension

    def merged(self, **overrides: Any) -> "RunSettings":
        """Copy with the non-``None`` overrides applied (CLI flags win over files)."""
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        for key, value in overrides.items():
            if key not in values:
                raise ConfigError(f"Unknown setting '{key}'")
            if value is not None:
                values[key] = value
        return RunSettings(**values)


def parse_settings(data: dict[str, Any]) -> RunSettings:
    """Validate a settings mapping (e.g. loaded from YAML)."""
    known = {f.name for f in fields(RunSettings)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(
            f"Unknown setting(s): {', '.join(unknown)}",
            suggestion=f"Valid settings are: {', '.join(sorted(known))}",
        )
    settings = RunSettings()
    if data.get("cutoff") is not None:
        settings.cutoff = _positive_int(data["cutoff"], "cutoff")
    if "seed" in data:
        seed = data["seed"]
        if isinstance(seed, str):
            try:
                seed = int(seed, 0)
            except ValueError:
                raise ConfigError(f"Invalid seed '{seed}'", field="seed") from None
        if isinstance(seed, bool) or not isinstance(seed, int):
            raise ConfigError(f"Invalid seed {seed!r}", field="seed")
        settings.seed = seed
    if "subsets" in data:
        settings.subsets = _parse_enum(SubsetMode, data["subsets"], field="subsets")
    if "explicit" in data:
        raw = data["explicit"]
        if isinstance(raw, str):
            settings.explicit = parse_subset_list(raw)
        elif isinstance(raw, list):
            settings.explicit = [
                frozenset(str(v) for v in item) if isinstance(item, list) else parse_subset_list(str(item))[0]
                for item in raw
            ]
        else:
            raise ConfigError("Expected a list of vertex lists", field="explicit")
    for name in ("budget_dim", "max_ext_combinations", "decompose_trials", "path_length_cap", "path_count_cap"):
        if name in data:
            setattr(settings, name, _positive_int(data[name], name))
    return settings


def load_settings(path: Path) -> RunSettings:
    """Load run settings from a YAML file.

    Raises:
        FileNotFoundError: If the file does not exist.
        ConfigError: If the content is invalid.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Settings file not found: {path}")
    with open(path, encoding="utf-8") as f:
        data = yaml.safe_load(f)
    if data is None:
        return RunSettings()
    if not isinstance(data, dict):
        raise ConfigError("Settings file must be a YAML dictionary")
    return parse_settings(data)


def default_corpus_dir() -> Path:
    """``$EXTDIM_CORPUS`` or ``./corpus``."""
    return Path(os.environ.get(CORPUS_ENV_VAR, "corpus"))
