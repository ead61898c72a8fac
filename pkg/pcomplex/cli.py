import argparse
import inspect
import sys
from typing import List

from colorama import init

import pcomplex.settings as settings
from pcomplex.app_loader import (
    apply_settings,
    create_cli_config_from_cli,
)
from pcomplex.exceptions import EXIT_INVALID_INPUT, PComplexError
from pcomplex.extension_registrar import (
    get_default_registration,
    get_registrations,
)
from pcomplex.utils import CLIColors


class CLIHelpFormatter(argparse.RawTextHelpFormatter):
    def _format_action(self, action):
        # determine the required width and the entry label
        help_position = min(self._action_max_length + 2, self._max_help_position)
        help_width = max(self._width - help_position, 11)
        action_width = help_position - self._current_indent - 2
        action_header = self._format_action_invocation(action)

        # no help; start on same line and add a final newline
        if not action.help:
            tup = self._current_indent, "", action_header
            action_header = "%*s%s\n" % tup

        # short action name; start on the same line and pad two spaces
        elif len(action_header) <= action_width:
            tup = self._current_indent, "", action_width, action_header
            action_header = "%*s%-*s  " % tup
            indent_first = 0

        # long action name; start on the next line
        else:
            tup = self._current_indent, "", action_header
            action_header = "%*s%s\n" % tup
            indent_first = help_position
        parts = [CLIColors.build_value_string(action_header)]

        if action.help:
            help_text = self._expand_help(action)
            help_lines = self._split_lines(help_text, help_width)
            parts.append("%*s%s\n" % (indent_first, "", help_lines[0]))
            for line in help_lines[1:]:
                parts.append("%*s%s\n" % (help_position, "", line))

        elif not action_header.endswith("\n"):
            parts.append("\n")

        for subaction in self._iter_indented_subactions(action):
            parts.append(self._format_action(subaction))

        return self._join_parts(parts)


class CLIParser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        kwargs.setdefault("formatter_class", lambda prog: CLIHelpFormatter(prog=prog))
        super().__init__(*args, **kwargs)

    def error(self, message):
        self.print_help()
        print(CLIColors.build_error_string(message))
        sys.exit(EXIT_INVALID_INPUT)


def define_global_flags() -> argparse.ArgumentParser:
    """Flags every subcommand accepts; unset flags leave the namespace untouched."""
    parser = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    parser.add_argument("--debug", action="store_true", help="print diagnostics")
    parser.add_argument("--progress", action="store_true", help="show progress bars")
    parser.add_argument("--threads", type=int, help="worker threads for parallel sections")
    for cap_name, (_, flag) in settings.CAP_SOURCES.items():
        parser.add_argument(
            flag, type=int, dest=f"cap_{cap_name}", metavar="N", help=f"{cap_name} cap"
        )
    return parser


class CLI:
    def __init__(self, argv: List[str] = None, **kwargs):
        self.cli_config = create_cli_config_from_cli(self.__class__)
        self._extend_cli(**kwargs)
        self.global_flags = define_global_flags()
        self.root_parser = CLIParser(
            description=inspect.getdoc(self.__class__), parents=[self.global_flags]
        )
        self._define_extension_flags()
        self.args = self.root_parser.parse_args(argv)

    def print_hud(self):
        if settings.settings["debug"]:
            print(CLIColors.build_info_string("DEBUG mode is ON"))

    def main(self) -> int:
        """The entry point to the CLI.  This is what runs it all."""
        init()
        self._apply_global_flags()
        self.print_hud()
        ext_name = self._get_extension_from_user_input()
        settings.settings["called_ext"] = ext_name
        try:
            result = self._run_extension(ext_name)
        except PComplexError as error:
            print(CLIColors.build_error_string(str(error)), file=sys.stderr)
            return error.exit_code
        return result if isinstance(result, int) else 0

    def _apply_global_flags(self):
        given = vars(self.args)
        overrides = {
            key: given[key] for key in ("debug", "progress", "threads") if key in given
        }
        caps = {
            name: given[f"cap_{name}"]
            for name in settings.CAP_SOURCES
            if given.get(f"cap_{name}") is not None
        }
        if caps:
            overrides["caps"] = caps
        apply_settings(overrides)

    def _get_extension_from_user_input(self) -> str:
        """Retrieve the subcommand, falling back to the default extension."""
        command = getattr(self.args, "command", None)
        if command:
            return command
        default = get_default_registration()
        if default is None:
            self.root_parser.error("No command given")
        return default.name

    def _run_extension(self, extension_name):
        """Runs the extension from the cli object dynamically."""
        ext = getattr(self, extension_name)
        ext.apply_arguments(self.args)
        return ext.run_extension()

    def _define_extension_flags(self):
        """Create a subcommand per extension; the default extension's flags also go on the root."""
        subparsers = self.root_parser.add_subparsers(dest="command", metavar="COMMAND")
        for registration in get_registrations():
            sub = subparsers.add_parser(
                registration.name,
                parents=[self.global_flags],
                help=registration.registration_doc,
                description=registration.colored_registration_doc,
                formatter_class=lambda prog: CLIHelpFormatter(prog=prog),
            )
            registration.extension.define_arguments(sub)
            if registration.default:
                registration.extension.define_arguments(self.root_parser)

    def _extend_cli(self, **kwargs):
        """Extend the cli object by injecting all of the extensions in to it."""
        for registration in get_registrations():
            cls_ext_obj = registration.extension
            _ = [
                setattr(cls_ext_obj, attr, attr_value)
                for attr, attr_value in kwargs.items()
            ]
            setattr(cls_ext_obj, "cli_config", self.cli_config)
            setattr(
                self,
                registration.name,
                cls_ext_obj,
            )

            setattr(
                cls_ext_obj,
                "config",
                self.cli_config.get_extension_config(cls_ext_obj.get_name()),
            )

        return self
