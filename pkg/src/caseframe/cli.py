"""Command-line entry points.

Subcommands: validate, query, argue, lines, serve.  Exit codes: 0 on
success, 1 on a domain error (invalid base, unknown file), 2 on usage
errors (argparse's default).
"""

from __future__ import annotations

import argparse
import datetime as dt
import json
import sys

from .casebase import lines_of_opinion, load_case_base, parse_case_base, query_cases
from .errors import CapExceededError, CaseBaseError, DomainError, FrameValidationError
from .frames import parse_problem_frame
from .framework import framework_to_dict, framework_to_dot, framework_to_json, preferred_labelings
from .session import create_session


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise CaseBaseError([f"cannot read {path}: {exc}"]) from exc
    except json.JSONDecodeError as exc:
        raise CaseBaseError([f"{path}: invalid JSON: {exc}"]) from exc


def _plural(n: int, noun: str) -> str:
    return f"{n} {noun}" + ("" if n == 1 else "s")


def _cmd_validate(args: argparse.Namespace) -> int:
    document = _read_json(args.file)
    raw_cases = document.get("cases") if isinstance(document, dict) else None
    count = len(raw_cases) if isinstance(raw_cases, list) else 0
    try:
        base = parse_case_base(document, lenient=args.lenient)
    except CaseBaseError as exc:
        for error in exc.errors:
            print(f"error: {error}", file=sys.stderr)
        print(f"{_plural(count, 'case')}, {_plural(len(exc.errors), 'error')}")
        return 1
    for warning in base.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    print(f"{_plural(len(base.cases), 'case')}, 0 errors")
    return 0


def _cmd_query(args: argparse.Namespace) -> int:
    base = load_case_base(args.base, lenient=args.lenient)
    decided_before = None
    if args.before:
        try:
            decided_before = dt.date.fromisoformat(args.before)
        except ValueError:
            print(f"error: --before expects YYYY-MM-DD, got {args.before!r}", file=sys.stderr)
            return 2
    frames = query_cases(
        base,
        interpretandum=args.interpretandum,
        document_citation=args.document,
        jurisdiction=args.jurisdiction,
        canon_class=args.canon,
        decided_before=decided_before,
    )
    for frame in frames:
        print(
            f"{frame.identifier}\t{frame.case_data.date.isoformat()}\t"
            f"{frame.case_data.court}\t{frame.winning.interpretandum.expression}"
        )
    return 0


def _cmd_argue(args: argparse.Namespace) -> int:
    base = load_case_base(args.base, lenient=args.lenient)
    problem, report = parse_problem_frame(_read_json(args.problem), lenient=args.lenient)
    if problem is None:
        raise FrameValidationError(list(report.errors))
    session = create_session(problem, base, session_id="cli")
    if args.semantics == "preferred":
        labelings = preferred_labelings(session.framework)
        if args.format == "dot":
            chosen = labelings[0] if labelings else session.labeling
            sys.stdout.write(framework_to_dot(session.framework, chosen))
        else:
            payload = framework_to_dict(session.framework, session.labeling)
            payload["preferredLabelings"] = [
                {arg_id: label.value for arg_id, label in labeling.items()}
                for labeling in labelings
            ]
            sys.stdout.write(
                json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True) + "\n"
            )
    elif args.format == "dot":
        sys.stdout.write(framework_to_dot(session.framework, session.labeling))
    else:
        sys.stdout.write(framework_to_json(session.framework, session.labeling))
    return 0


def _cmd_lines(args: argparse.Namespace) -> int:
    base = load_case_base(args.base, lenient=args.lenient)
    for line in lines_of_opinion(base):
        print(" -> ".join(line.chain))
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service.app import ServiceConfig, create_app

    config = ServiceConfig(
        base_file_path=args.base,
        lenient_parsing=args.lenient,
        cors_origins=tuple(args.cors_origin or ()),
        ui_dir=args.ui_dir,
    )
    app = create_app(config)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="caseframe",
        description="Case frames for statutory interpretation: validate case "
        "bases, synthesize prior-case arguments, and evaluate them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="check a case-base file against the format")
    p_validate.add_argument("file")
    p_validate.add_argument("--lenient", action="store_true", help="downgrade unknown fields to warnings")
    p_validate.set_defaults(func=_cmd_validate)

    p_query = sub.add_parser("query", help="filter cases in a base")
    p_query.add_argument("--base", required=True)
    p_query.add_argument("--interpretandum")
    p_query.add_argument("--jurisdiction")
    p_query.add_argument("--canon", help="canon class, e.g. linguistic")
    p_query.add_argument("--document", help="document citation")
    p_query.add_argument("--before", help="only cases decided before this date (YYYY-MM-DD)")
    p_query.add_argument("--lenient", action="store_true")
    p_query.set_defaults(func=_cmd_query)

    p_argue = sub.add_parser("argue", help="synthesize and evaluate arguments for a problem")
    p_argue.add_argument("--base", required=True)
    p_argue.add_argument("--problem", required=True)
    p_argue.add_argument("--format", choices=("json", "dot"), default="json")
    p_argue.add_argument("--semantics", choices=("grounded", "preferred"), default="grounded")
    p_argue.add_argument("--lenient", action="store_true")
    p_argue.set_defaults(func=_cmd_argue)

    p_lines = sub.add_parser("lines", help="print citation chains, newest case first")
    p_lines.add_argument("--base", required=True)
    p_lines.add_argument("--lenient", action="store_true")
    p_lines.set_defaults(func=_cmd_lines)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--base", required=True)
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--lenient", action="store_true")
    p_serve.add_argument("--cors-origin", action="append", metavar="ORIGIN")
    p_serve.add_argument("--ui-dir", help="directory of static UI assets to mount at /ui")
    p_serve.set_defaults(func=_cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except CaseBaseError as exc:
        for error in exc.errors:
            print(f"error: {error}", file=sys.stderr)
        return 1
    except FrameValidationError as exc:
        for error in exc.errors:
            print(f"error: {error}", file=sys.stderr)
        return 1
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
