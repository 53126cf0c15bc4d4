"""
ChoiceLab - Main Application
Finite-scale experiments on maximal subfamilies, finite-character predicates,
closure operators and stage constructions
"""

import argparse
import json
import sys
from typing import List, Optional

from commands import build_groups
from core.errors import ChoiceLabError
from utils.json_io import dump_document, load_document, render_document, write_jsonl
from utils.logger import setup_logger
from utils.schemas import SCHEMAS, SchemaViolation, schema_for, validate_document
from utils.settings import apply_overrides, load_settings

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2


def _commands_by_group() -> dict:
    grouped = {}
    for command in SCHEMAS:
        group, name = command.split(" ", 1)
        grouped.setdefault(group, []).append(name)
    return grouped


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="choicelab",
        description="Reproducible experiments with maximal subfamilies, closure operators and stage constructions.")
    groups = parser.add_subparsers(dest="group", required=True)
    for group, names in _commands_by_group().items():
        group_parser = groups.add_parser(group, help=f"{group} commands")
        commands = group_parser.add_subparsers(dest="command", required=True)
        for name in names:
            command = commands.add_parser(name, help=f"{group} {name}")
            _add_common_args(command)
    return parser


def _add_common_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-i", "--input", default="-", help="Input JSON document ('-' for stdin)")
    parser.add_argument("-o", "--output", default="-", help="Output JSON document ('-' for stdout)")
    parser.add_argument("--schema", action="store_true", help="Print the input schema and exit")
    parser.add_argument("--seed", type=int, help="Seed for random instance generation")
    parser.add_argument("--horizon", type=int, help="Default horizon of built families")
    parser.add_argument("--stages", type=int, help="Stage budget of constructions")
    parser.add_argument("--steps", type=int, help="Step budget of constructions")
    parser.add_argument("--jobs", type=int, help="Worker threads for batch verification")
    parser.add_argument("--transcript", help="Write the construction transcript (JSONL) here")
    parser.add_argument("-v", "--verbose", action="store_true", help="Show progress on stderr")


class ChoiceLabCLI:
    """One command-line invocation"""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.logger = setup_logger(verbose=args.verbose)
        self.settings = apply_overrides(
            load_settings(self.logger),
            horizon=args.horizon, stages=args.stages, steps=args.steps,
            seed=args.seed, jobs=args.jobs)
        self.command = f"{args.group} {args.command}"

    def _report(self, error) -> None:
        sys.stderr.write(json.dumps(error.to_dict(), sort_keys=True) + "\n")

    def run(self) -> int:
        """
        Validate, dispatch and write the result

        Returns:
            Exit status: 0 success, 1 domain error, 2 usage or schema error
        """
        args = self.args
        try:
            if args.schema:
                sys.stdout.write(render_document(schema_for(self.command)) + "\n")
                return EXIT_OK
            try:
                doc = load_document(args.input)
            except (OSError, json.JSONDecodeError) as e:
                raise SchemaViolation(f"cannot read input document: {e}")
            validate_document(self.command, doc)

            group = build_groups(self.settings, self.logger)[args.group]
            result = group.run(args.command, doc)

            transcript = getattr(group, "last_transcript", None)
            if args.transcript and transcript is not None:
                write_jsonl(transcript.lines(), args.transcript)
                self.logger.info(f"Transcript written to {args.transcript} ({len(transcript)} events)")

            dump_document(result, args.output)
            if result.get("verified") is False:
                self.logger.warning(f"{self.command}: some artifacts failed verification")
                return EXIT_DOMAIN
            return EXIT_OK

        except SchemaViolation as e:
            self.logger.error(f"Usage error: {e.message}")
            self._report(e)
            return EXIT_USAGE
        except ChoiceLabError as e:
            self.logger.error(f"{self.command} failed: {e.name}: {e.message}")
            self._report(e)
            return EXIT_DOMAIN


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return ChoiceLabCLI(args).run()


if __name__ == "__main__":
    sys.exit(main())
