"""Golden corpus: algebra files with frozen expected values.

A corpus directory holds ``<name>.alg`` files and optional ``<name>.golden``
files next to them. Every golden line names one value and carries a
provenance comment::

    loewy_length = 5          # CITED fork family, LL = n
    pd S(6) = 3               # DERIVED minimal resolution
    bound {2,3,4,5} = 3       # CITED fork family
    ll {2,3,4,5} P(1) = 2     # CITED fork family
    note = dim mod is n-1     # CITED exterior algebras

``CITED`` values are quoted from the literature, ``DERIVED`` values were
computed once by an independent oracle and frozen. Lines without a tag are
rejected. ``note`` lines are shown in reports and never compared.
"""

from __future__ import annotations

import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from extdim.algebra import BoundQuiverAlgebra
from extdim.config import RunSettings
from extdim.fileformat import load_document, parse_document
from extdim.field import FieldSpec
from extdim.homological import PdKind, PdResult
from extdim.logging_config import get_logger
from extdim.report import BoundReport, build_report
from extdim.torsion import SimpleSubset, projective_layer_lengths, torsion_bound

logger = get_logger(__name__)

ALGEBRA_SUFFIX = ".alg"
GOLDEN_SUFFIX = ".golden"
PROVENANCE_TAGS = ("CITED", "DERIVED")

_LINE = re.compile(r"^(?P<key>[^=#]+?)\s*=\s*(?P<value>[^#]*?)\s*(?:#\s*(?P<tag>\S+)\s*(?P<source>.*))?$")
_KEYS = [
    re.compile(r"^dimension$"),
    re.compile(r"^loewy_length$"),
    re.compile(r"^global_dimension$"),
    re.compile(r"^best_bound$"),
    re.compile(r"^pd S\((?P<vertex>[^)]+)\)$"),
    re.compile(r"^bound \{(?P<members>[^}]*)\}$"),
    re.compile(r"^ll \{(?P<members>[^}]*)\} P\((?P<vertex>[^)]+)\)$"),
    re.compile(r"^endpoint (?P<endpoint>empty|all)$"),
]


class CorpusError(ValueError):
    """A corpus directory, entry or golden file is malformed."""


@dataclass(frozen=True)
class GoldenValue:
    key: str
    value: str
    tag: str
    source: str
    line: int


@dataclass
class CorpusEntry:
    """One corpus algebra and its golden block."""

    name: str
    algebra_file: Path
    golden: list[GoldenValue] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def golden_file(self) -> Path:
        return self.algebra_file.with_suffix(GOLDEN_SUFFIX)


@dataclass
class Mismatch:
    key: str
    expected: str
    actual: str

    def __str__(self) -> str:
        return f"{self.key}: expected {self.expected}, got {self.actual}"


@dataclass
class EntryResult:
    name: str
    report: BoundReport | None = None
    mismatches: list[Mismatch] = field(default_factory=list)
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and not self.mismatches


# ----------------------------------------------------------------------------
# golden files
# ----------------------------------------------------------------------------


def _normalize_key(key: str) -> str:
    return " ".join(key.split())


def parse_golden(text: str, source: str = "golden") -> tuple[list[GoldenValue], list[str]]:
    """Golden values and notes from a golden file.

    Raises:
        CorpusError: For untagged values, unknown tags or unknown keys.
    """
    values: list[GoldenValue] = []
    notes: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        m = _LINE.match(stripped)
        if m is None:
            raise CorpusError(f"{source}:{lineno}: expected 'key = value  # TAG source'")
        key, value, tag = _normalize_key(m["key"]), m["value"], m["tag"]
        if tag is None:
            raise CorpusError(f"{source}:{lineno}: golden value '{key}' has no provenance tag")
        if tag not in PROVENANCE_TAGS:
            raise CorpusError(
                f"{source}:{lineno}: unknown provenance tag '{tag}' (expected {' or '.join(PROVENANCE_TAGS)})"
            )
        if key == "note":
            notes.append(f"{value} [{tag} {m['source'].strip()}]".replace(" ]", "]"))
            continue
        if not any(p.match(key) for p in _KEYS):
            raise CorpusError(f"{source}:{lineno}: unknown golden key '{key}'")
        values.append(GoldenValue(key, value, tag, m["source"].strip(), lineno))
    return values, notes


def load_entry(algebra_file: Path) -> CorpusEntry:
    algebra_file = Path(algebra_file)
    if not algebra_file.exists():
        raise CorpusError(f"Algebra file not found: {algebra_file}")
    entry = CorpusEntry(algebra_file.stem, algebra_file)
    if entry.golden_file.exists():
        entry.golden, entry.notes = parse_golden(entry.golden_file.read_text(encoding="utf-8"), str(entry.golden_file))
    return entry


def discover(directory: Path) -> list[CorpusEntry]:
    """Entries of a corpus directory sorted by name; a missing directory is an error."""
    directory = Path(directory)
    if not directory.is_dir():
        raise CorpusError(f"Corpus directory not found: {directory}")
    entries = [load_entry(p) for p in sorted(directory.glob(f"*{ALGEBRA_SUFFIX}"))]
    orphans = sorted(
        p.name for p in directory.glob(f"*{GOLDEN_SUFFIX}") if not p.with_suffix(ALGEBRA_SUFFIX).exists()
    )
    if orphans:
        raise CorpusError(f"Golden files without an algebra file: {', '.join(orphans)}")
    return entries


# ----------------------------------------------------------------------------
# running
# ----------------------------------------------------------------------------


def format_pd(result: PdResult) -> str:
    """Golden spelling of a projective dimension: ``4``, ``>=40`` or ``inf``."""
    if result.kind is PdKind.INFINITE:
        return "inf"
    return str(result)


class _Evaluator:
    def __init__(self, algebra: BoundQuiverAlgebra, report: BoundReport):
        self.algebra = algebra
        self.report = report
        self._layers: dict[frozenset[str], dict[str, int]] = {}

    def subset(self, members: str) -> SimpleSubset:
        return SimpleSubset.of(self.algebra, [m.strip() for m in members.split(",") if m.strip()])

    def value(self, key: str) -> str:
        r = self.report
        if key == "dimension":
            return str(r.dimension)
        if key == "loewy_length":
            return str(r.loewy_length)
        if key == "global_dimension":
            return format_pd(r.global_dimension)
        if key == "best_bound":
            return str(r.best_bound)
        for pattern in _KEYS:
            m = pattern.match(key)
            if m is None:
                continue
            groups = m.groupdict()
            if "endpoint" in groups:
                found = r.endpoints.get(groups["endpoint"])
                return "n/a" if found is None else str(found).lower()
            if "members" in groups and "vertex" in groups:
                subset = self.subset(groups["members"])
                if subset.members not in self._layers:
                    self._layers[subset.members] = projective_layer_lengths(subset)
                return str(self._layers[subset.members][groups["vertex"]])
            if "members" in groups:
                return str(torsion_bound(self.subset(groups["members"]), r.pd_simple))
            return format_pd(r.pd_simple[groups["vertex"]])
        raise CorpusError(f"unknown golden key '{key}'")


def run_entry(entry: CorpusEntry, settings: RunSettings | None = None) -> EntryResult:
    """Build the report for one entry and compare it with its golden values."""
    settings = settings or RunSettings()
    result = EntryResult(entry.name)
    try:
        doc = load_document(entry.algebra_file, settings.path_length_cap, settings.path_count_cap)
        result.report = build_report(doc.algebra, settings, annotations=entry.notes)
        evaluator = _Evaluator(doc.algebra, result.report)
        for golden in entry.golden:
            actual = evaluator.value(golden.key)
            if actual != golden.value:
                result.mismatches.append(Mismatch(golden.key, golden.value, actual))
    except (ValueError, KeyError, RuntimeError) as e:
        result.error = f"{type(e).__name__}: {e}"
    logger.debug("Corpus entry %s: %s", entry.name, "pass" if result.passed else "FAIL")
    return result


def run_corpus(entries: list[CorpusEntry], settings: RunSettings | None = None, jobs: int = 1) -> list[EntryResult]:
    """Run entries, concurrently when ``jobs > 1``; results keep the entry order."""
    if jobs <= 1 or len(entries) <= 1:
        return [run_entry(e, settings) for e in entries]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda e: run_entry(e, settings), entries))


def add_entry(directory: Path, name: str, text: str, overwrite: bool = False) -> Path:
    """Write a new algebra file after checking that it parses.

    Raises:
        CorpusError: If the name is taken (and ``overwrite`` is False) or invalid.
    """
    if not re.fullmatch(r"[A-Za-z0-9_\-]+", name):
        raise CorpusError(f"Invalid entry name '{name}' (letters, digits, '_' and '-' only)")
    directory = Path(directory)
    target = directory / f"{name}{ALGEBRA_SUFFIX}"
    if target.exists() and not overwrite:
        raise CorpusError(f"Corpus entry '{name}' already exists: {target}")
    parse_document(text, name)
    directory.mkdir(parents=True, exist_ok=True)
    target.write_text(text, encoding="utf-8")
    logger.debug("Added corpus entry %s", target)
    return target


# ----------------------------------------------------------------------------
# built-in families
# ----------------------------------------------------------------------------


def _fork_text(n: int) -> str:
    """The fork family on 2n+1 vertices.

    A path ``1 -> 2 -> ... -> n``, a branch ``1 -> n+1 -> ... -> 2n-1`` with all
    consecutive compositions zero, and two single arrows ``1 -> 2n``, ``1 -> 2n+1``.
    """
    if n < 3:
        raise CorpusError("The fork family needs n >= 3")
    lines = [f"# fork family, n = {n}", "field Q", f"vertices {2 * n + 1}", "arrow a1 : 1 -> 2"]
    lines += [f"arrow a{i} : {i} -> {i + 1}" for i in range(2, n)]
    lines.append(f"arrow a{n + 1} : 1 -> {n + 1}")
    lines += [f"arrow a{j} : {j - 1} -> {j}" for j in range(n + 2, 2 * n)]
    lines.append(f"arrow a{2 * n} : 1 -> {2 * n}")
    lines.append(f"arrow a{2 * n + 1} : 1 -> {2 * n + 1}")
    lines += [f"relation a{i}.a{i + 1}" for i in range(n + 1, 2 * n - 1)]
    return "\n".join(lines) + "\n"


def _exterior_text(n: int) -> str:
    names = ["x", "y", "z", "u", "v", "w"]
    if not 1 <= n <= len(names):
        raise CorpusError(f"Exterior algebras are built for 1 <= n <= {len(names)}")
    gens = names[:n]
    lines = [f"# exterior algebra on {n} generators", "field Q", "vertices 1"]
    lines += [f"arrow {g} : 1 -> 1" for g in gens]
    lines += [f"relation {g}.{g}" for g in gens]
    lines += [f"relation {a}.{b} + {b}.{a}" for k, a in enumerate(gens) for b in gens[k + 1 :]]
    return "\n".join(lines) + "\n"


def _linear_text(n: int) -> str:
    if n < 1:
        raise CorpusError("A linear quiver needs at least one vertex")
    lines = [f"# linear quiver A{n}", "field Q", f"vertices {n}"]
    lines += [f"arrow a{i} : {i} -> {i + 1}" for i in range(1, n)]
    return "\n".join(lines) + "\n"


_SQUARE_ZERO_4 = """\
# triangular matrix algebra on four vertices, all paths of length 2 vanish
field Q
vertices 4
arrow b : 2 -> 1
arrow c : 2 -> 1
arrow d : 3 -> 2
arrow l : 3 -> 4
arrow a : 4 -> 2
relation d.c
relation d.b
relation l.a
relation a.b
relation a.c
"""

BUILTIN_FAMILIES = ("fork", "exterior", "linear", "square_zero_4")


def builtin_algebra_text(name: str, n: int | None = None, field_spec: FieldSpec | None = None) -> str:
    """Text of a built-in algebra; ``field_spec`` replaces the default field Q."""
    if name == "fork":
        text = _fork_text(n if n is not None else 5)
    elif name == "exterior":
        text = _exterior_text(n if n is not None else 2)
    elif name == "linear":
        text = _linear_text(n if n is not None else 2)
    elif name == "square_zero_4":
        text = _SQUARE_ZERO_4
    else:
        raise CorpusError(f"Unknown built-in family '{name}'. Known families: {', '.join(BUILTIN_FAMILIES)}")
    if field_spec is not None:
        text = text.replace("field Q\n", f"field {field_spec}\n", 1)
    return text


def builtin_algebra(name: str, n: int | None = None, field_spec: FieldSpec | None = None) -> BoundQuiverAlgebra:
    label = name if n is None else f"{name}_n{n}"
    return parse_document(builtin_algebra_text(name, n, field_spec), label).algebra
