"""Command-line front ends.

cwj-gen: javah-style wrapper generation over class files and fixtures.
cwj-sim: runs a caching-protocol script and writes the trace report
(TSV + JSON summary + call-count figure).

Exit codes: 0 ok, 1 generation/simulation error, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field as dataclass_field
from pathlib import Path

from . import cachesim, report
from .classfile import (
    ClassFileError,
    FixtureSyntax,
    TypeUniverse,
    lift_type_model,
    load_fixture_models,
    parse_class_file,
)
from .codegen import (
    OverlappingRename,
    PlanOptions,
    emit_header,
    filter_rename,
    header_name_for,
    load_rename_file,
    plan_class,
    support_header,
    SUPPORT_HEADER_NAME,
    CLASS,
    CLONEABLE,
)
from .typemodel import Unresolved, dependency_closure, resolve


@dataclass
class GenOptions:
    class_names: list[str]
    classpath: list[str] = dataclass_field(default_factory=list)
    out_dir: str = "."
    visibility: str = "protected"
    thin: bool = False
    recursive: bool = False
    cache_final_instance: bool = False
    direct_native: bool = False
    rename_file: str | None = None
    word_width: int = 32


class GenError(Exception):
    pass


def load_universe(classpath) -> TypeUniverse:
    """Build a universe from .class files, fixture documents, and directories."""
    universe = TypeUniverse()

    def load_path(path: Path):
        if path.is_dir():
            for child in sorted(path.rglob("*")):
                if child.suffix in (".class", ".fixture", ".jfix"):
                    load_path(child)
            return
        if path.suffix == ".class":
            universe.add(lift_type_model(parse_class_file(path.read_bytes())))
        else:
            for model in load_fixture_models(path.read_text()):
                universe.add(model)

    for entry in classpath:
        for part in str(entry).split(os.pathsep):
            if not part:
                continue
            path = Path(part)
            if not path.exists():
                raise GenError("classpath entry not found: %s" % part)
            load_path(path)
    return universe


def run(options: GenOptions) -> tuple[int, list[Path]]:
    """Generate headers for the requested classes; returns (status, files)."""
    out_dir = Path(options.out_dir)
    universe = load_universe(options.classpath)

    entries = dependency_closure(universe, options.class_names,
                                 thin_roots=options.thin)
    marking = {e.name: e.thin for e in entries}

    # machinery types referenced by every emitted header
    extra = []
    if any(not t for t in marking.values()):
        if CLASS in universe and CLASS not in marking:
            extra.append(CLASS)
    if CLONEABLE in universe and CLONEABLE not in marking:
        extra.append(CLONEABLE)
    for name in extra:
        for sub in dependency_closure(universe, [name], thin_roots=True):
            if sub.name not in marking:
                marking[sub.name] = True
                entries.append(sub)

    roots = set(options.class_names)
    if options.recursive:
        to_emit = [e for e in entries]
    else:
        to_emit = [e for e in entries if e.name in roots or marking[e.name]]

    plan_options = PlanOptions(
        visibility=options.visibility,
        cache_final_instance=options.cache_final_instance,
        direct_native=options.direct_native,
        word_width=options.word_width,
    )

    renames = []
    if options.rename_file:
        renames = load_rename_file(Path(options.rename_file).read_text())

    emitted: dict[str, str] = {}
    plans = []
    for entry in to_emit:
        resolved = resolve(universe, entry.name)
        plan = plan_class(resolved, universe, plan_options,
                          thin=marking[entry.name])
        plans.append(plan)
        text = emit_header(plan)
        emitted[text.header_name] = filter_rename(text, renames)
    # the support header is static machinery; renames never apply to it
    support = support_header()
    emitted[support.header_name] = support.body

    # every referenced header must be emitted now or already on disk
    for plan in plans:
        for include in plan.includes:
            if include in emitted:
                continue
            if (out_dir / include).exists():
                continue
            raise Unresolved(
                "%s needs %s; generate it first or use -r" %
                (plan.header_name, include))

    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name in sorted(emitted):
        path = out_dir / name
        path.write_text(emitted[name])
        written.append(path)
    return 0, written


def _gen_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cwj-gen", allow_abbrev=False,
        description="Generate C++ wrapper headers for Java classes.")
    parser.add_argument("class_names", nargs="+", metavar="classname",
                        help="fully qualified class names to generate")
    parser.add_argument("-classpath", action="append", default=[],
                        help="class files, fixture documents, or directories "
                             "(repeatable; %s-separated)" % os.pathsep)
    parser.add_argument("-d", dest="out_dir", default=".", metavar="dir",
                        help="output directory")
    parser.add_argument("-public", dest="visibility", action="store_const",
                        const="public", help="public members only")
    parser.add_argument("-protected", dest="visibility", action="store_const",
                        const="protected",
                        help="public and protected members (default)")
    parser.add_argument("-private", dest="visibility", action="store_const",
                        const="private", help="all members")
    parser.add_argument("-thin", action="store_true",
                        help="no wrapper members and no heavyweight classes")
    parser.add_argument("-r", dest="recursive", action="store_true",
                        help="generate all dependencies recursively")
    parser.add_argument("--cache-final-instance", action="store_true",
                        help="cache final instance fields (vendor specific)")
    parser.add_argument("--direct-native", action="store_true",
                        help="emit direct wrappers for native methods")
    parser.add_argument("--rename", dest="rename_file", metavar="file",
                        help="identifier rename file (lines of 'old new')")
    parser.add_argument("--word-width", type=int, default=32, metavar="n",
                        help="bits per validity word for instance-final caching")
    parser.set_defaults(visibility="protected")
    return parser


def gen_main(argv=None) -> int:
    parser = _gen_parser()
    args = parser.parse_args(argv)
    options = GenOptions(
        class_names=args.class_names,
        classpath=args.classpath,
        out_dir=args.out_dir,
        visibility=args.visibility,
        thin=args.thin,
        recursive=args.recursive,
        cache_final_instance=args.cache_final_instance,
        direct_native=args.direct_native,
        rename_file=args.rename_file,
        word_width=args.word_width,
    )
    try:
        status, written = run(options)
    except (Unresolved, FixtureSyntax, ClassFileError, GenError,
            OverlappingRename, OSError) as exc:
        print("cwj-gen: error: %s" % exc, file=sys.stderr)
        return 1
    for path in written:
        print(path)
    return status


def _sim_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cwj-sim", allow_abbrev=False,
        description="Simulate the JNI caching protocol over a call script "
                    "and write trace.tsv, summary.json, and calls.png.")
    parser.add_argument("script", help="call-script file")
    parser.add_argument("-classpath", action="append", default=[],
                        required=False,
                        help="fixture documents/class files for the universe")
    parser.add_argument("--mode", choices=("raw", "lazy", "eager"),
                        default="lazy")
    parser.add_argument("--iterations", type=int, default=2, metavar="n")
    parser.add_argument("-d", dest="out_dir", default=".", metavar="dir")
    parser.add_argument("--baseline-script", metavar="file",
                        help="diff against this script")
    parser.add_argument("--baseline-mode", choices=("raw", "lazy", "eager"),
                        default="raw")
    parser.add_argument("--no-figure", action="store_true",
                        help="skip the matplotlib figure")
    return parser


def sim_main(argv=None) -> int:
    parser = _sim_parser()
    args = parser.parse_args(argv)
    try:
        universe = load_universe(args.classpath)
        script = cachesim.parse_script(Path(args.script).read_text())
        trace = cachesim.simulate(universe, script, args.mode, args.iterations)
        diff = None
        if args.baseline_script:
            base = cachesim.parse_script(Path(args.baseline_script).read_text())
            base_trace = cachesim.simulate(universe, base, args.baseline_mode,
                                           args.iterations)
            diff = cachesim.diff_traces(base_trace, trace)
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        report.write_trace_tsv(trace, out_dir / "trace.tsv")
        report.write_summary_json(trace, args.mode, args.iterations,
                                  out_dir / "summary.json", diff)
        if not args.no_figure:
            report.render_call_figure(trace, out_dir / "calls.png",
                                      title="JNI calls (%s mode)" % args.mode)
    except (cachesim.ScriptError, cachesim.UnknownMember,
            cachesim.EagerWithoutInit, cachesim.ShapeMismatch,
            Unresolved, FixtureSyntax, ClassFileError, GenError,
            OSError) as exc:
        print("cwj-sim: error: %s" % exc, file=sys.stderr)
        return 1
    total_first = sum(trace.first().values())
    total_steady = sum(trace.steady().values())
    print("first iteration: %d calls; steady state: %d calls"
          % (total_first, total_steady))
    if diff is not None:
        print("baseline steady state: %d calls; reduction: %d"
              % (diff.total_a, diff.reduction))
    return 0


if __name__ == "__main__":
    sys.exit(gen_main())
