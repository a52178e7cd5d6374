"""Command-line interface for extdim."""

import argparse
import json
import sys
from pathlib import Path

from extdim import __version__
from extdim.logging_config import get_logger

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2


def _input_errors() -> tuple[type[BaseException], ...]:
    from extdim.algebra import AlgebraError
    from extdim.certificate import CertificateFormatError
    from extdim.config import ConfigError
    from extdim.corpus import CorpusError
    from extdim.field import FieldError
    from extdim.module import ModuleError
    from extdim.torsion import InfiniteProjectiveDimension

    return (
        AlgebraError,
        FieldError,
        ConfigError,
        CorpusError,
        CertificateFormatError,
        ModuleError,
        InfiniteProjectiveDimension,
        FileNotFoundError,
        json.JSONDecodeError,
    )


# ----------------------------------------------------------------------------
# shared helpers
# ----------------------------------------------------------------------------


def _settings(parsed: argparse.Namespace):
    from extdim.config import RunSettings, load_settings, parse_subset_list

    settings = load_settings(parsed.config) if parsed.config else RunSettings()
    overrides = {
        "cutoff": parsed.cutoff,
        "seed": parsed.seed,
        "budget_dim": parsed.budget_dim,
    }
    subsets = getattr(parsed, "subsets", None)
    if subsets:
        from extdim.config import SubsetMode, _parse_enum

        overrides["subsets"] = _parse_enum(SubsetMode, subsets[0], field="--subsets")
        if len(subsets) > 1:
            overrides["explicit"] = [s for chunk in subsets[1:] for s in parse_subset_list(chunk)]
    return settings.merged(**overrides)


def _budget(settings):
    from extdim.lab import SearchBudget

    return SearchBudget(
        max_dim=settings.budget_dim,
        max_ext_combinations=settings.max_ext_combinations,
        seed=settings.seed,
        trials=settings.decompose_trials,
    )


def _load(path: Path, parsed: argparse.Namespace, settings):
    from extdim.field import FieldSpec
    from extdim.fileformat import load_document

    field_spec = FieldSpec.parse(parsed.field) if parsed.field else None
    return load_document(path, settings.path_length_cap, settings.path_count_cap, field_spec)


def resolve_module(doc, name: str):
    """A module literal from the file, or ``S(v)``, ``P(v)``, ``I(v)``, ``Lambda``, ``top``."""
    from extdim.module import ModuleError, injective, projective, regular_module, semisimple_top, simple

    if name in doc.modules:
        return doc.modules[name]
    A = doc.algebra
    builders = {"S": simple, "P": projective, "I": injective}
    if len(name) > 3 and name[0] in builders and name[1] == "(" and name.endswith(")"):
        return builders[name[0]](A, name[2:-1]).renamed(name)
    if name == "Lambda":
        return regular_module(A)
    if name == "top":
        return semisimple_top(A)
    known = ", ".join(doc.modules) or "none"
    raise ModuleError(f"Unknown module '{name}' (literals in file: {known}; or use S(v), P(v), I(v), Lambda, top)")


def _modules(doc, names: str) -> list:
    return [resolve_module(doc, n.strip()) for n in names.split(",") if n.strip()]


def _write(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        output.write_text(text, encoding="utf-8")
        logger.info("Wrote %s", output)


# ----------------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------------


def cmd_report(parsed: argparse.Namespace) -> int:
    """Invariants and torsion bounds of one algebra."""
    from extdim.report import build_report, render_csv, render_json, render_text

    settings = _settings(parsed)
    doc = _load(parsed.file, parsed, settings)
    report = build_report(doc.algebra, settings, timing=parsed.timing)
    if parsed.json:
        _write(render_json(report), parsed.output)
    elif parsed.csv:
        _write(render_csv(report), parsed.output)
    else:
        for line in render_text(report).splitlines():
            logger.info("%s", line)
    if report.cutoff_limited:
        logger.warning("Some projective dimensions are only lower bounds; raise --cutoff to settle them")
    return EXIT_OK


def cmd_corpus(parsed: argparse.Namespace) -> int:
    from extdim.config import default_corpus_dir
    from extdim.corpus import add_entry, builtin_algebra_text, discover, run_corpus

    directory = parsed.dir or default_corpus_dir()
    if parsed.action == "add":
        if not parsed.name:
            logger.error("'corpus add' needs an entry name")
            return EXIT_INPUT
        if parsed.builtin:
            text = builtin_algebra_text(parsed.builtin, parsed.n)
        elif parsed.source:
            text = parsed.source.read_text(encoding="utf-8")
        else:
            logger.error("'corpus add' needs an algebra file or --builtin FAMILY")
            return EXIT_INPUT
        target = add_entry(directory, parsed.name, text, overwrite=parsed.force)
        logger.info("Added %s", target)
        return EXIT_OK

    entries = discover(directory)
    if parsed.action == "list":
        for entry in entries:
            golden = f"{len(entry.golden)} golden values" if entry.golden else "no golden block"
            logger.info("  %-20s %s", entry.name, golden)
        logger.info("%d entries in %s", len(entries), directory)
        return EXIT_OK

    settings = _settings(parsed)
    results = run_corpus(entries, settings, jobs=parsed.jobs)
    failed = 0
    for result in results:
        if result.passed:
            logger.info("PASS %s", result.name)
            continue
        failed += 1
        logger.error("FAIL %s", result.name)
        if result.error:
            logger.error("  %s", result.error)
        for mismatch in result.mismatches:
            logger.error("  %s", mismatch)
    logger.info("%d/%d entries passed", len(results) - failed, len(results))
    return EXIT_MISMATCH if failed else EXIT_OK


def cmd_certify(parsed: argparse.Namespace) -> int:
    from extdim import certificate

    if parsed.action == "verify":
        if parsed.file is None:
            logger.error("'certify verify' needs a certificate file")
            return EXIT_INPUT
        if not parsed.file.exists():
            raise FileNotFoundError(f"Certificate file not found: {parsed.file}")
        doc = certificate.loads(parsed.file.read_text(encoding="utf-8"))
        claimed = parsed.depth if parsed.depth is not None else doc.claimed_depth
        result = certificate.verify_filtration(doc.root, doc.generator, doc.root.module, claimed)
        dims = ", ".join(str(list(G.dims)) for G in doc.generator)
        if parsed.json:
            payload = {"ok": result.ok, "depth": result.depth, "claimed_depth": claimed, "path": result.path}
            payload["message"] = result.message
            _write(json.dumps(payload, indent=2) + "\n", None)
        elif result.ok:
            logger.info("%s", result)
            logger.info("  generator: %d modules with dimension vectors %s", len(doc.generator), dims)
        else:
            logger.error("%s", result)
        return EXIT_OK if result.ok else EXIT_MISMATCH

    settings = _settings(parsed)
    if parsed.file is None or not parsed.module:
        logger.error("'certify make' needs an algebra file and -M MODULE")
        return EXIT_INPUT
    doc = _load(parsed.file, parsed, settings)
    M = resolve_module(doc, parsed.module)
    if parsed.torsion is not None:
        from extdim.config import parse_subset_list
        from extdim.homological import pd_table
        from extdim.torsion import SimpleSubset, torsion_certificate

        subset = SimpleSubset.of(doc.algebra, parse_subset_list(parsed.torsion)[0])
        table = pd_table(doc.algebra, settings.cutoff_for(doc.algebra.dimension), settings.seed)
        cert = torsion_certificate(subset, M, table)
        generator, root, claimed = cert.generator, cert.root, cert.bound + 1
    elif parsed.resolution:
        from extdim.certificate import depth
        from extdim.homological import minimal_resolution, resolution_to_filtration

        res = minimal_resolution(M, length=parsed.length)
        generator, root = resolution_to_filtration(res)
        claimed = depth(root)
    else:
        logger.error("'certify make' needs --torsion SUBSET or --resolution")
        return EXIT_INPUT
    result = certificate.verify_filtration(root, generator, M, claimed)
    if not result.ok:
        logger.error("Constructed certificate does not verify: %s", result)
        return EXIT_MISMATCH
    _write(certificate.dumps(root, generator, claimed), parsed.output)
    logger.info("Certificate depth %d (claimed %d)", result.depth, claimed)
    return EXIT_OK


def cmd_search(parsed: argparse.Namespace) -> int:
    from extdim import lab

    settings = _settings(parsed)
    budget = _budget(settings)
    doc = _load(parsed.file, parsed, settings)
    if parsed.extension_dim:
        estimate = lab.extension_dim_bruteforce(doc.algebra, settings.budget_dim, budget)
        if parsed.json:
            payload = {
                "estimate": estimate.kind.value,
                "value": estimate.value,
                "indecomposables": [list(X.dims) for X in estimate.indecomposables],
                "explanation": estimate.explanation,
            }
            _write(json.dumps(payload, indent=2) + "\n", None)
        else:
            logger.info("dim mod %s: %s", doc.algebra.name, estimate)
            logger.info("  %d indecomposables found", len(estimate.indecomposables))
            if estimate.explanation:
                logger.info("  %s", estimate.explanation)
        return EXIT_OK

    if parsed.witness:
        from extdim.module import direct_sum, simple

        V = direct_sum(_modules(doc, parsed.witness), doc.algebra)
        if parsed.module:
            samples = _modules(doc, parsed.module)
        else:
            samples = [simple(doc.algebra, v) for v in doc.algebra.vertices]
        verdicts = lab.igusa_todorov_witness_check(V, parsed.n, samples, budget)
        for verdict in verdicts:
            label = {True: "yes", False: "no", None: "unknown"}[verdict.holds]
            logger.info("  Omega^%d %s two-term by add V: %s (%s)", parsed.n, verdict.module.name or "M", label,
                        verdict.method)
        return EXIT_MISMATCH if any(v.holds is False for v in verdicts) else EXIT_OK

    if not parsed.module or not parsed.generator:
        logger.error("'search' needs --extension-dim, --witness, or --module and --generator")
        return EXIT_INPUT
    M = resolve_module(doc, parsed.module)
    generators = _modules(doc, parsed.generator)
    if parsed.weak:
        weak = lab.wresoldim_greedy(generators, M, settings.cutoff_for(doc.algebra.dimension))
        if parsed.json:
            payload = {"estimate": weak.kind.value, "value": weak.value, "reason": weak.reason}
            _write(json.dumps(payload, indent=2) + "\n", None)
        else:
            logger.info("weak resolution dimension of %s: %s", parsed.module, weak)
        return EXIT_OK

    outcome = lab.tn_membership_search(M, generators, parsed.n, budget)
    if parsed.json:
        payload = {"verdict": outcome.verdict, "decided": outcome.decided, "explored": outcome.explored}
        _write(json.dumps(payload, indent=2) + "\n", None)
    else:
        logger.info("%s in <%s>_%d: %s", parsed.module, parsed.generator, parsed.n, outcome.verdict)
    if outcome.found and parsed.output:
        from extdim.certificate import dumps

        parsed.output.write_text(dumps(outcome.certificate, generators, parsed.n), encoding="utf-8")
        logger.info("Certificate written to %s", parsed.output)
    return EXIT_OK


def cmd_omega(parsed: argparse.Namespace) -> int:
    from extdim.fileformat import format_module
    from extdim.homological import syzygy

    settings = _settings(parsed)
    doc = _load(parsed.file, parsed, settings)
    M = resolve_module(doc, parsed.module)
    result = syzygy(M, parsed.k)
    _write(format_module(result, f"Omega{parsed.k}") + "\n", parsed.output)
    return EXIT_OK


def cmd_validate(parsed: argparse.Namespace) -> int:
    from extdim.validation import validate_algebra

    settings = _settings(parsed)
    doc = _load(parsed.file, parsed, settings)
    logger.info("Algebra file is valid: %s", parsed.file)
    logger.info("  %d vertices, %d arrows, dimension %d", len(doc.algebra.vertices), len(doc.algebra.arrows),
                doc.algebra.dimension)
    result = validate_algebra(doc.algebra, doc.modules, seed=settings.seed)
    for issue in result.issues:
        if issue.level == "error":
            logger.error("  %s", issue)
        else:
            logger.warning("  %s", issue)
    if result.has_errors:
        error_count = sum(1 for i in result.issues if i.level == "error")
        logger.error("Validation failed with %d error(s)", error_count)
        return EXIT_MISMATCH
    logger.info("  Multiplication table and module literals validated successfully")
    return EXIT_OK


# ----------------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------------


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-c", "--config", type=Path, help="Path to a YAML settings file")
    common.add_argument("--field", help="Override the field of the algebra file ('Q' or 'F <p>')")
    common.add_argument("--cutoff", type=int, help="Syzygy cutoff for projective dimensions (default: 4 x dim)")
    common.add_argument(
        "--seed", type=lambda s: int(s, 0), help="Seed for randomized decomposition (default: 0xE3D1)"
    )
    common.add_argument("--budget-dim", type=int, help="Dimension cap for brute-force searches (default: 4)")
    common.add_argument(
        "-v", "--verbose", action="count", default=0, help="Increase verbosity (-v for verbose, -vv for debug)"
    )
    common.add_argument("-q", "--quiet", action="store_true", help="Suppress all output except errors")
    common.add_argument("--log-file", type=Path, help="Write logs to file (includes all levels)")
    return common


def create_parser() -> argparse.ArgumentParser:
    """Create the argument parser."""
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="extdim",
        description="Homological invariants, extension-dimension bounds and filtration certificates "
        "for bound quiver algebras.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  extdim report corpus/fork_n5.alg                       Invariants and bounds
  extdim report corpus/fork_n5.alg --subsets explicit 2,3,4,5 --json
  extdim corpus run                                     Check every golden block
  extdim certify make corpus/fork_n5.alg --torsion 2,3,4,5 -M "S(1)" -o s1.json
  extdim certify verify s1.json                         Re-check a certificate
  extdim search corpus/a2.alg --extension-dim --field "F 2"
  extdim omega corpus/square_zero_4.alg -M "S(3)" -k 2   Print a syzygy
  extdim validate corpus/exterior_2.alg                 Sanity-check an algebra
""",
    )
    parser.add_argument("-V", "--version", action="store_true", help="Show version information and exit")
    sub = parser.add_subparsers(dest="command")

    report = sub.add_parser("report", parents=[common], help="Compute invariants and torsion bounds")
    report.add_argument("file", type=Path, help="Algebra file")
    report.add_argument(
        "--subsets",
        nargs="+",
        metavar="MODE",
        help="Subset search: exhaustive, endpoints, singleton-greedy, or explicit LIST ('2,3;4')",
    )
    fmt = report.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="Print the report as JSON")
    fmt.add_argument("--csv", action="store_true", help="Print the pd / layer-length table as CSV")
    report.add_argument("--timing", action="store_true", help="Include wall-clock time in the report")
    report.add_argument("-o", "--output", type=Path, help="Write JSON or CSV to a file")
    report.set_defaults(handler=cmd_report)

    corpus = sub.add_parser("corpus", parents=[common], help="Run, list or extend the golden corpus")
    corpus.add_argument("action", choices=["run", "list", "add"])
    corpus.add_argument("name", nargs="?", help="Entry name (add)")
    corpus.add_argument("source", nargs="?", type=Path, help="Algebra file to copy in (add)")
    corpus.add_argument("--dir", type=Path, help="Corpus directory (default: $EXTDIM_CORPUS or ./corpus)")
    corpus.add_argument("--builtin", help="Built-in family for 'add': fork, exterior, linear, square_zero_4")
    corpus.add_argument("--n", type=int, help="Family parameter for --builtin")
    corpus.add_argument("--force", action="store_true", help="Overwrite an existing entry")
    corpus.add_argument("--jobs", type=int, default=1, help="Run entries concurrently (default: 1)")
    corpus.set_defaults(handler=cmd_corpus)

    certify = sub.add_parser("certify", parents=[common], help="Make or verify filtration certificates")
    certify.add_argument("action", choices=["make", "verify"])
    certify.add_argument("file", nargs="?", type=Path, help="Algebra file (make) or certificate (verify)")
    certify.add_argument("-M", "--module", help="Module literal name or S(v), P(v), I(v), Lambda, top")
    certify.add_argument("--torsion", "-S", metavar="SUBSET", help="Torsion certificate for a simple subset")
    certify.add_argument("--resolution", action="store_true", help="Certificate from the minimal resolution")
    certify.add_argument("--length", type=int, help="Truncate the resolution after this many projectives")
    certify.add_argument("--depth", type=int, help="Claimed depth to verify against (default: the file's)")
    certify.add_argument("--json", action="store_true", help="Print the verdict as JSON")
    certify.add_argument("-o", "--output", type=Path, help="Certificate output file (default: stdout)")
    certify.set_defaults(handler=cmd_certify)

    search = sub.add_parser("search", parents=[common], help="Bounded brute-force searches")
    search.add_argument("file", type=Path, help="Algebra file")
    search.add_argument("--extension-dim", action="store_true", help="Estimate dim mod by exhaustive enumeration")
    search.add_argument("--module", "-M", help="Module to place in <T>_n")
    search.add_argument("--generator", "-T", help="Comma-separated generator modules")
    search.add_argument("--n", type=int, default=2, help="Layer n of <T>_n (default: 2)")
    search.add_argument("--weak", action="store_true", help="Greedy weak resolution by add of the generator")
    search.add_argument(
        "--witness",
        metavar="V",
        help="Check two-term add V resolutions of Omega^n of the --module list (default: every simple)",
    )
    search.add_argument("--json", action="store_true", help="Print the verdict as JSON")
    search.add_argument("-o", "--output", type=Path, help="Write a found certificate to this file")
    search.set_defaults(handler=cmd_search)

    omega = sub.add_parser("omega", parents=[common], help="Print a syzygy or cosyzygy of a module")
    omega.add_argument("file", type=Path, help="Algebra file")
    omega.add_argument("-M", "--module", required=True, help="Module literal name or S(v), P(v), I(v), Lambda, top")
    omega.add_argument("-k", type=int, default=1, help="Power of Omega; negative for cosyzygies (default: 1)")
    omega.add_argument("-o", "--output", type=Path, help="Write the module literal to a file")
    omega.set_defaults(handler=cmd_omega)

    validate = sub.add_parser("validate", parents=[common], help="Sanity-check an algebra file")
    validate.add_argument("file", type=Path, help="Algebra file")
    validate.set_defaults(handler=cmd_validate)

    return parser


def _machine_output(parsed: argparse.Namespace) -> bool:
    """Whether stdout carries JSON, CSV or a certificate."""
    if getattr(parsed, "json", False) or getattr(parsed, "csv", False):
        return getattr(parsed, "output", None) is None
    if parsed.command == "certify" and parsed.action == "make":
        return parsed.output is None
    return parsed.command == "omega" and parsed.output is None


def main(args: list[str] | None = None) -> int:
    """Main entry point for the CLI."""
    parser = create_parser()
    parsed = parser.parse_args(args)

    if parsed.version:
        print(f"extdim {__version__}")
        return EXIT_OK
    if not parsed.command:
        parser.print_help()
        return EXIT_INPUT

    # Keep stdout clean when it carries machine-readable output
    from extdim.logging_config import setup_logging

    setup_logging(
        verbosity=parsed.verbose,
        quiet=parsed.quiet,
        log_file=parsed.log_file,
        stdout_stream=sys.stderr if _machine_output(parsed) else None,
    )

    try:
        return parsed.handler(parsed)
    except _input_errors() as e:
        logger.error("%s", e)
        return EXIT_INPUT
    except Exception as e:
        logger.error("%s", e)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
