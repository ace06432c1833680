"""Command-line front door: validate, layout, codegen, and service launch.

Diagnostics go to stdout (they are the product); usage errors go to stderr.
Exit codes: 0 success, 1 diagnostics or IO failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import documents
from .codegen import FILE_EXTENSION, emit
from .depiction import parse_depiction, validate
from .errors import DepictionError, DocumentError
from .layout import layout_program
from .program import check_program, parse_program
from .sceneio import export_scene, load_language_file


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="depict3d",
        description="3D visual-language depiction engine",
    )
    parser.add_argument("--quiet", action="store_true", help="suppress informational output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check depiction documents for well-formedness")
    p.add_argument("files", nargs="+", metavar="depiction.json")

    p = sub.add_parser("layout", help="lay out a program and export the scene")
    p.add_argument("--lang", required=True, metavar="language.json")
    p.add_argument("--program", required=True, metavar="program.json")
    p.add_argument("-o", "--output", required=True, metavar="out.scene.json",
                   help="output path, or - for stdout")

    p = sub.add_parser("codegen", help="emit builder code for depiction documents")
    p.add_argument("files", nargs="+", metavar="depiction.json")
    p.add_argument("-o", "--output", required=True, metavar="dir",
                   help="output directory, or - for stdout")

    p = sub.add_parser("serve", help="start the interactive editor service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--lang", metavar="language.json",
                   help="preload a startup session with this language")
    p.add_argument("--program", metavar="program.json",
                   help="program document for the startup session")
    return parser


def _cmd_validate(args: argparse.Namespace) -> int:
    failed = False
    for file in args.files:
        try:
            dep = parse_depiction(documents.load_path(file))
        except (DocumentError, OSError) as exc:
            print(f"{file}: {exc}", file=sys.stderr)
            failed = True
            continue
        for diag in validate(dep):
            print(f"{diag.code} {diag.location} {diag.message}")
            failed = True
    return 1 if failed else 0


def _cmd_layout(args: argparse.Namespace) -> int:
    lang = load_language_file(args.lang)
    prog = parse_program(documents.load_path(args.program))
    check_program(lang, prog)
    text = export_scene(layout_program(lang, prog))
    if args.output == "-":
        sys.stdout.write(text + "\n")
    else:
        Path(args.output).write_text(text + "\n", encoding="utf-8")
        if not args.quiet:
            print(f"wrote {args.output}")
    return 0


def _cmd_codegen(args: argparse.Namespace) -> int:
    failed = False
    outputs: list[tuple[str, str]] = []
    for file in args.files:
        try:
            dep = parse_depiction(documents.load_path(file))
        except (DocumentError, OSError) as exc:
            print(f"{file}: {exc}", file=sys.stderr)
            failed = True
            continue
        diagnostics = validate(dep)
        if diagnostics:
            for diag in diagnostics:
                print(f"{diag.code} {diag.location} {diag.message}")
            failed = True
            continue
        outputs.append((dep.name, emit(dep)))
    if failed:
        return 1
    if args.output == "-":
        for _, text in outputs:
            sys.stdout.write(text)
    else:
        out_dir = Path(args.output)
        out_dir.mkdir(parents=True, exist_ok=True)
        for name, text in outputs:
            target = out_dir / f"{name}{FILE_EXTENSION}"
            target.write_text(text, encoding="utf-8", newline="\n")
            if not args.quiet:
                print(f"wrote {target}")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    app = create_app()
    if args.lang:
        lang = load_language_file(args.lang)
        prog = None
        if args.program:
            prog = parse_program(documents.load_path(args.program))
        session_id = app.state.sessions.create(lang, prog)
        if not args.quiet:
            print(f"startup session: {session_id}")
    uvicorn.run(app, host="127.0.0.1", port=args.port, log_level="warning" if args.quiet else "info")
    return 0


def run(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "validate":
            return _cmd_validate(args)
        if args.command == "layout":
            return _cmd_layout(args)
        if args.command == "codegen":
            return _cmd_codegen(args)
        return _cmd_serve(args)
    except (DocumentError, OSError) as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except DepictionError as exc:
        print(f"{exc.code} {exc.location} {exc.message}".replace("  ", " "), file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
