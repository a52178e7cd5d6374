"""Filtration certificates: witnesses for membership in <T>_n.

A certificate is a tree of four node kinds:

- ``Leaf``: the module lies in add T (depth 1; the zero module has depth 0).
- ``Extension``: the module is the middle term of ``0 -> U -> E -> V -> 0``;
  depth is ``depth(U) + depth(V)``.
- ``Summand``: the module is a direct summand of the child's module, with an
  explicit section and retraction; depth is the child's.
- ``DirectSum``: the module is the direct sum of the children, with explicit
  injections and projections; depth is the largest child depth.

Verification never raises for an honest failure: it returns a
``VerificationResult`` naming the node that failed. Structural problems in a
serialized certificate raise ``CertificateFormatError``.
"""

from __future__ import annotations

import json
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any, Union

from extdim import linalg
from extdim.algebra import BoundQuiverAlgebra
from extdim.decompose import InconclusiveDecomposition, is_in_add, is_isomorphic
from extdim.fileformat import format_algebra, parse_algebra
from extdim.homological import ShortExactSequence
from extdim.logging_config import get_logger
from extdim.module import ModuleError, ModuleMap, Representation, direct_sum_maps

logger = get_logger(__name__)

FORMAT_NAME = "extdim-certificate"
FORMAT_VERSION = 1


class CertificateFormatError(ValueError):
    """A certificate document or tree is malformed."""


@dataclass(frozen=True, eq=False)
class Leaf:
    module: Representation


@dataclass(frozen=True, eq=False)
class Extension:
    module: Representation
    sequence: ShortExactSequence
    left: Node
    right: Node


@dataclass(frozen=True, eq=False)
class Summand:
    module: Representation
    child: Node
    section: ModuleMap
    retraction: ModuleMap


@dataclass(frozen=True, eq=False)
class DirectSum:
    module: Representation
    children: tuple[Node, ...]
    injections: tuple[ModuleMap, ...]
    projections: tuple[ModuleMap, ...]


Node = Union[Leaf, Extension, Summand, DirectSum]


def depth(node: Node) -> int:
    if isinstance(node, Leaf):
        return 0 if node.module.is_zero() else 1
    if isinstance(node, Extension):
        return depth(node.left) + depth(node.right)
    if isinstance(node, Summand):
        return depth(node.child)
    if isinstance(node, DirectSum):
        return max((depth(c) for c in node.children), default=0)
    raise CertificateFormatError(f"Unknown node kind {type(node).__name__}")


def leaves(node: Node) -> list[Leaf]:
    if isinstance(node, Leaf):
        return [node]
    if isinstance(node, Extension):
        return leaves(node.left) + leaves(node.right)
    if isinstance(node, Summand):
        return leaves(node.child)
    return [leaf for c in node.children for leaf in leaves(c)]


def direct_sum_node(children: Sequence[Node]) -> DirectSum:
    """Combine certificates for several modules into one for their sum."""
    S, inj, proj = direct_sum_maps([c.module for c in children])
    return DirectSum(S, tuple(children), tuple(inj), tuple(proj))


# ----------------------------------------------------------------------------
# verification
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    depth: int
    path: str = ""
    message: str = ""

    def __str__(self) -> str:
        if self.ok:
            return f"OK (depth {self.depth})"
        return f"FAIL at {self.path}: {self.message}"


class _Failure(Exception):
    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}")


def _same(a: Representation, b: Representation) -> bool:
    return a is b or a == b


def _check_map(f: ModuleMap, source: Representation, target: Representation, path: str, label: str) -> None:
    if not _same(f.source, source) or not _same(f.target, target):
        raise _Failure(path, f"{label} has the wrong source or target")
    if not f.intertwines():
        raise _Failure(path, f"{label} is not a module homomorphism")


def _check(node: Node, generators: list[Representation], path: str) -> None:
    if isinstance(node, Leaf):
        try:
            member = is_in_add(node.module, generators)
        except InconclusiveDecomposition as e:
            raise _Failure(path, f"add-membership undecided: {e}")
        if not member:
            raise _Failure(path, "leaf fails add-membership")
    elif isinstance(node, Extension):
        seq = node.sequence
        if not _same(seq.middle, node.module):
            raise _Failure(path, "middle term differs from the node module")
        _check_map(seq.f, node.left.module, node.module, path, "f")
        _check_map(seq.g, node.module, node.right.module, path, "g")
        problems = seq.failures()
        if problems:
            raise _Failure(path, "sequence is not exact: " + "; ".join(problems))
        _check(node.left, generators, f"{path}.left")
        _check(node.right, generators, f"{path}.right")
    elif isinstance(node, Summand):
        _check_map(node.section, node.module, node.child.module, path, "section")
        _check_map(node.retraction, node.child.module, node.module, path, "retraction")
        if not (node.retraction @ node.section).equals(ModuleMap.identity(node.module)):
            raise _Failure(path, "retraction o section is not the identity")
        _check(node.child, generators, f"{path}.child")
    elif isinstance(node, DirectSum):
        parts = [c.module for c in node.children]
        if len(node.injections) != len(parts) or len(node.projections) != len(parts):
            raise _Failure(path, "one injection and projection per part are required")
        total = ModuleMap.zero(node.module, node.module)
        for i, (s, p, X) in enumerate(zip(node.injections, node.projections, parts)):
            _check_map(s, X, node.module, path, f"injection {i}")
            _check_map(p, node.module, X, path, f"projection {i}")
            for j, (t, Y) in enumerate(zip(node.injections, parts)):
                expected = ModuleMap.identity(X) if i == j else ModuleMap.zero(Y, X)
                if not (p @ t).equals(expected):
                    raise _Failure(path, f"projection {i} o injection {j} is wrong")
            total = total + s @ p
        if not total.equals(ModuleMap.identity(node.module)):
            raise _Failure(path, "injections and projections do not add up to the identity")
        for i, c in enumerate(node.children):
            _check(c, generators, f"{path}.parts[{i}]")
    else:
        raise CertificateFormatError(f"Unknown node kind {type(node).__name__}")


def _algebras(node: Node) -> set:
    found = {node.module.algebra}
    if isinstance(node, Extension):
        found |= _algebras(node.left) | _algebras(node.right)
    elif isinstance(node, Summand):
        found |= _algebras(node.child)
    elif isinstance(node, DirectSum):
        for c in node.children:
            found |= _algebras(c)
    return found


def verify_filtration(
    certificate: Node,
    generator: Representation | Sequence[Representation],
    module: Representation | None = None,
    n: int | None = None,
) -> VerificationResult:
    """Check that ``certificate`` witnesses ``module`` in ``<generator>_n``.

    Without ``module`` the certificate's own root module is taken; without ``n``
    only the tree is checked and its depth reported.
    """
    generators = [generator] if isinstance(generator, Representation) else list(generator)
    algebras = _algebras(certificate) | {G.algebra for G in generators}
    if module is not None:
        algebras.add(module.algebra)
    if len(algebras) > 1:
        raise CertificateFormatError("Certificate mixes modules over different algebras")
    d = depth(certificate)
    if module is not None and not _same(certificate.module, module):
        try:
            matches = is_isomorphic(certificate.module, module)
        except ModuleError:
            matches = False
        except InconclusiveDecomposition as e:
            return VerificationResult(False, d, "root", f"isomorphism undecided: {e}")
        if not matches:
            return VerificationResult(False, d, "root", "certified module is not isomorphic to the target")
    try:
        _check(certificate, generators, "root")
        if n is not None and d > n and n <= 1:
            _check(Leaf(certificate.module), generators, "root")
    except _Failure as failure:
        return VerificationResult(False, d, failure.path, failure.message)
    if n is not None and d > n:
        return VerificationResult(False, d, "root", f"depth {d} exceeds the claimed {n}")
    return VerificationResult(True, d)


# ----------------------------------------------------------------------------
# JSON codec
# ----------------------------------------------------------------------------


class _ModuleTable:
    def __init__(self) -> None:
        self.modules: list[Representation] = []

    def key(self, M: Representation) -> str:
        for k, known in enumerate(self.modules):
            if known is M or known == M:
                return f"m{k}"
        self.modules.append(M)
        return f"m{len(self.modules) - 1}"


def _encode_map(f: ModuleMap) -> list[list[list[str]]]:
    F = f.source.algebra.field
    return [[[F.format(x) for x in row] for row in linalg.to_lists(b)] for b in f.blocks]


def _encode_module(M: Representation) -> dict[str, Any]:
    F = M.algebra.field
    return {
        "dims": list(M.dims),
        "maps": {a.id: [[F.format(x) for x in row] for row in linalg.to_lists(M.maps[a.id])] for a in M.algebra.arrows},
    }


def _encode_node(node: Node, table: _ModuleTable) -> dict[str, Any]:
    if isinstance(node, Leaf):
        return {"kind": "leaf", "module": table.key(node.module)}
    if isinstance(node, Extension):
        return {
            "kind": "extension",
            "module": table.key(node.module),
            "f": _encode_map(node.sequence.f),
            "g": _encode_map(node.sequence.g),
            "left": _encode_node(node.left, table),
            "right": _encode_node(node.right, table),
        }
    if isinstance(node, Summand):
        return {
            "kind": "summand",
            "module": table.key(node.module),
            "section": _encode_map(node.section),
            "retraction": _encode_map(node.retraction),
            "child": _encode_node(node.child, table),
        }
    return {
        "kind": "direct_sum",
        "module": table.key(node.module),
        "injections": [_encode_map(s) for s in node.injections],
        "projections": [_encode_map(p) for p in node.projections],
        "parts": [_encode_node(c, table) for c in node.children],
    }


def certificate_to_dict(
    certificate: Node, generator: Sequence[Representation], claimed_depth: int | None = None
) -> dict[str, Any]:
    """Serializable form; modules are stored once and referenced by key."""
    algebra = certificate.module.algebra
    table = _ModuleTable()
    generator_keys = [table.key(G) for G in generator]
    root = _encode_node(certificate, table)
    return {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "algebra": format_algebra(algebra),
        "claimed_depth": depth(certificate) if claimed_depth is None else claimed_depth,
        "generator": generator_keys,
        "modules": {f"m{k}": _encode_module(M) for k, M in enumerate(table.modules)},
        "root": root,
    }


def dumps(certificate: Node, generator: Sequence[Representation], claimed_depth: int | None = None) -> str:
    return json.dumps(certificate_to_dict(certificate, generator, claimed_depth), indent=2) + "\n"


@dataclass(frozen=True)
class CertificateDocument:
    algebra: BoundQuiverAlgebra
    generator: list[Representation]
    root: Node
    claimed_depth: int


class _Decoder:
    def __init__(self, algebra: BoundQuiverAlgebra, raw_modules: dict[str, Any]):
        self.algebra = algebra
        self.F = algebra.field
        self.raw = raw_modules
        self.modules: dict[str, Representation] = {}

    def matrix(self, rows: Any, shape: tuple[int, int], where: str):
        if not isinstance(rows, list) or len(rows) != shape[0]:
            raise CertificateFormatError(f"{where}: expected {shape[0]} rows")
        values = []
        for row in rows:
            if not isinstance(row, list) or len(row) != shape[1]:
                raise CertificateFormatError(f"{where}: expected rows of length {shape[1]}")
            try:
                values.append([self.F.convert(x) for x in row])
            except (ValueError, TypeError) as e:
                raise CertificateFormatError(f"{where}: {e}") from e
        return linalg.matrix(values, self.F.domain, shape[1])

    def module(self, key: Any) -> Representation:
        if key in self.modules:
            return self.modules[key]
        raw = self.raw.get(key) if isinstance(key, str) else None
        if not isinstance(raw, dict):
            raise CertificateFormatError(f"Dangling module reference {key!r}")
        dims = raw.get("dims")
        if not isinstance(dims, list) or len(dims) != len(self.algebra.vertices):
            raise CertificateFormatError(f"Module {key}: bad dimension vector")
        raw_maps = raw.get("maps")
        if not isinstance(raw_maps, dict):
            raise CertificateFormatError(f"Module {key}: maps must be an object")
        q = self.algebra.quiver
        maps = {}
        for arrow in self.algebra.arrows:
            shape = (dims[q.vertex_index(arrow.target)], dims[q.vertex_index(arrow.source)])
            maps[arrow.id] = self.matrix(raw_maps.get(arrow.id), shape, f"module {key}, arrow {arrow.id}")
        try:
            M = Representation(self.algebra, tuple(dims), maps, key)
        except ModuleError as e:
            raise CertificateFormatError(f"Module {key}: {e}") from e
        self.modules[key] = M
        return M

    def map(self, raw: Any, source: Representation, target: Representation, where: str) -> ModuleMap:
        if not isinstance(raw, list) or len(raw) != len(source.dims):
            raise CertificateFormatError(f"{where}: one block per vertex is required")
        blocks = tuple(
            self.matrix(b, (target.dims[v], source.dims[v]), f"{where}, block {v}") for v, b in enumerate(raw)
        )
        return ModuleMap(source, target, blocks, check=False)

    def node(self, raw: Any, path: str) -> Node:
        if not isinstance(raw, dict):
            raise CertificateFormatError(f"{path}: node must be an object")
        kind = raw.get("kind")
        M = self.module(raw.get("module"))
        if kind == "leaf":
            return Leaf(M)
        if kind == "extension":
            left = self.node(raw.get("left"), f"{path}.left")
            right = self.node(raw.get("right"), f"{path}.right")
            f = self.map(raw.get("f"), left.module, M, f"{path}.f")
            g = self.map(raw.get("g"), M, right.module, f"{path}.g")
            return Extension(M, ShortExactSequence(f, g), left, right)
        if kind == "summand":
            child = self.node(raw.get("child"), f"{path}.child")
            s = self.map(raw.get("section"), M, child.module, f"{path}.section")
            r = self.map(raw.get("retraction"), child.module, M, f"{path}.retraction")
            return Summand(M, child, s, r)
        if kind == "direct_sum":
            parts_raw = raw.get("parts")
            if not isinstance(parts_raw, list):
                raise CertificateFormatError(f"{path}: parts must be a list")
            parts = [self.node(p, f"{path}.parts[{i}]") for i, p in enumerate(parts_raw)]
            inj_raw, proj_raw = raw.get("injections"), raw.get("projections")
            if not isinstance(inj_raw, list) or not isinstance(proj_raw, list) or len(inj_raw) != len(parts):
                raise CertificateFormatError(f"{path}: one injection per part is required")
            if len(proj_raw) != len(parts):
                raise CertificateFormatError(f"{path}: one projection per part is required")
            inj = tuple(self.map(x, p.module, M, f"{path}.injections") for x, p in zip(inj_raw, parts))
            proj = tuple(self.map(x, M, p.module, f"{path}.projections") for x, p in zip(proj_raw, parts))
            return DirectSum(M, tuple(parts), inj, proj)
        raise CertificateFormatError(f"{path}: unknown node kind {kind!r}")


def certificate_from_dict(data: Any) -> CertificateDocument:
    if not isinstance(data, dict) or data.get("format") != FORMAT_NAME:
        raise CertificateFormatError(f"Not an {FORMAT_NAME} document")
    if data.get("version") != FORMAT_VERSION:
        raise CertificateFormatError(f"Unsupported certificate version {data.get('version')!r}")
    text = data.get("algebra")
    if not isinstance(text, str):
        raise CertificateFormatError("Missing algebra text")
    algebra = parse_algebra(text, "certificate")
    raw_modules = data.get("modules")
    if not isinstance(raw_modules, dict):
        raise CertificateFormatError("Missing module table")
    decoder = _Decoder(algebra, raw_modules)
    generator_keys = data.get("generator")
    if not isinstance(generator_keys, list):
        raise CertificateFormatError("Missing generator list")
    generator = [decoder.module(k) for k in generator_keys]
    root = decoder.node(data.get("root"), "root")
    claimed = data.get("claimed_depth")
    if isinstance(claimed, bool) or not isinstance(claimed, int):
        raise CertificateFormatError("claimed_depth must be an integer")
    return CertificateDocument(algebra, generator, root, claimed)


def loads(text: str) -> CertificateDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise CertificateFormatError(f"Invalid JSON: {e}") from e
    return certificate_from_dict(data)
