"""
apsp-approx command line

Subcommands are generated from the harness command schemas:
  gen, apsp, oracle build, oracle query, verify, bench

Reports go to stdout as one key=value pair per line; logs go to stderr.
Exit codes: 0 success/pass, 1 contract violation or runtime failure, 2 usage error.
"""

import argparse
import asyncio
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .config import get_config
from .graph import INF
from .harness import EXIT_USAGE, ApspHarness
from .models import Command, flat_record

logger = logging.getLogger(__name__)

COMMAND_PATHS: Dict[str, Tuple[str, ...]] = {
    "gen_graph": ("gen",),
    "apsp_run": ("apsp",),
    "oracle_build": ("oracle", "build"),
    "oracle_query": ("oracle", "query"),
    "verify_stretch": ("verify",),
    "bench_oracles": ("bench",),
}

SCHEMA_TYPES = {"integer": int, "number": float, "string": str}


def _add_arguments(parser: argparse.ArgumentParser, command: Command) -> None:
    schema = command.inputSchema
    required = set(schema.get("required", []))
    for name, prop in schema["properties"].items():
        kwargs: Dict[str, Any] = {"help": prop.get("description")}
        if prop["type"] == "boolean":
            kwargs["action"] = "store_true"
        else:
            kwargs["type"] = SCHEMA_TYPES[prop["type"]]
            if "enum" in prop:
                kwargs["choices"] = prop["enum"]
        if prop.get("positional"):
            parser.add_argument(name, **kwargs)
            continue
        if "default" in prop:
            kwargs["default"] = prop["default"]
        kwargs["required"] = name in required
        parser.add_argument(*prop["flags"], dest=name, **kwargs)


def build_parser(commands: Sequence[Command]) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="apsp-approx", description="Approximate all-pairs shortest paths toolkit")
    top = parser.add_subparsers(dest="command", required=True)
    groups: Dict[str, argparse._SubParsersAction] = {}
    for command in commands:
        path = COMMAND_PATHS.get(command.name)
        if path is None:
            continue
        if len(path) == 1:
            sub = top.add_parser(path[0], help=command.description)
        else:
            if path[0] not in groups:
                group_parser = top.add_parser(path[0], help=f"{path[0]} subcommands")
                groups[path[0]] = group_parser.add_subparsers(dest="action", required=True)
            sub = groups[path[0]].add_parser(path[1], help=command.description)
        _add_arguments(sub, command)
        sub.set_defaults(command_name=command.name)
    return parser


def _value(v: Any) -> Any:
    return "inf" if isinstance(v, int) and v >= INF else v


def render(result: Dict[str, Any]) -> List[str]:
    """Lines printed to stdout for a successful command"""
    if "report" in result:
        return [result["report"].to_record()]
    if "text" in result:
        return [result["text"].rstrip("\n")]
    lines: List[str] = []
    rest = {k: v for k, v in result.items() if k != "exit_code"}
    if "estimate" in rest:
        lines.append(str(_value(rest.pop("estimate"))))
        if "candidates" in rest:
            rest["candidates"] = {k: _value(v) for k, v in rest["candidates"].items()}
    lines.extend(flat_record(rest))
    return lines


def main(argv: Optional[Sequence[str]] = None) -> int:
    config = get_config()
    logging.basicConfig(
        level=config.log_level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )

    harness = ApspHarness()
    parser = build_parser(harness.get_commands())
    try:
        namespace = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else 0

    arguments = {
        k: v for k, v in vars(namespace).items() if k not in ("command", "action", "command_name") and v is not None
    }
    result = asyncio.run(harness.handle_command(namespace.command_name, arguments))

    exit_code = result.pop("exit_code")
    if "error" in result:
        print(f"error: {result['error']}", file=sys.stderr)
        return exit_code
    for line in render(result):
        print(line)
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
