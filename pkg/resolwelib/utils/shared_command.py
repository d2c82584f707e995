""" Shared command functionality """

import argparse
import cmd
import logging
import shlex

from ..errors import ResolweError

logger = logging.getLogger(__name__)

LICENSE = """
#
#   Copyright (C) 2026, the resolwelib authors
#
#   This program is free software: you can redistribute it and/or modify
#   it under the terms of the GNU General Public License as published by
#   the Free Software Foundation, either version 3 of the License, or
#   (at your option) any later version.
#
#   This program is distributed in the hope that it will be useful,
#   but WITHOUT ANY WARRANTY; without even the implied warranty of
#   MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
#   GNU General Public License for more details.
#
#   You should have received a copy of the GNU General Public License
#   along with this program.  If not, see <https://www.gnu.org/licenses/>.
#
"""

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2


class _HelpShown(Exception):
    """ Raised when argparse has printed help or usage and would exit """


class CommandArgumentParser(argparse.ArgumentParser):
    """ argparse for one shell command, errors raise instead of exiting """

    def error(self, message):
        raise ValueError(f"{self.prog}: {message}")

    def exit(self, status=0, message=None):
        if message:
            self._print_message(message)
        raise _HelpShown(status)


class ResolweCmd(cmd.Cmd):
    """ResolweCmd is a shared command processor. It sets up logging and turns
    command failures into an exit status"""

    BANNER = None

    @classmethod
    def run(cls, first_commands=None):
        """ Convenience function to run a command loop """
        with cls(first_commands) as shell:
            if cls.BANNER is not None:
                print(cls.BANNER)
            shell.cmdloop()
            return shell.status

    def __init__(self, first_commands=None):
        super().__init__()

        self.stream_logger = None
        self.file_logger = None
        self.status = EXIT_OK
        self._init_logging()

        if first_commands is not None:
            for command in first_commands:
                self.onecmd(command)

    def __enter__(self):
        return self

    def __exit__(self, *args):
        root = logging.getLogger()
        for handler in (self.stream_logger, self.file_logger):
            if handler is not None:
                root.removeHandler(handler)
                handler.close()

    def emptyline(self):
        pass

    def default(self, line):
        logger.error("Unknown command: %s", line)
        self.status = EXIT_USAGE

    def invoke(self, parser: argparse.ArgumentParser, arg, action):
        """Parse the argument string and run the action, recording the exit
        status"""
        try:
            args = parser.parse_args(shlex.split(arg))
        except _HelpShown:
            self.status = EXIT_OK
            return
        except ValueError as exc:
            logger.error("%s", exc)
            self.status = EXIT_USAGE
            return
        try:
            action(args)
            self.status = EXIT_OK
        except (ResolweError, ValueError, OSError) as exc:
            logger.error("%s", exc)
            self.status = EXIT_ERROR
        except Exception:  # pylint: disable=broad-except
            logger.exception("Exception running '%s %s'", parser.prog, arg)
            self.status = EXIT_ERROR

    def do_exit(self, arg):
        """Exit this shell: exit"""
        del arg
        return True

    def do_loglevel(self, arg):
        """Set the logging level : loglevel <ERROR|WARNING|INFO|DEBUG>"""
        try:
            self.stream_logger.setLevel(arg.strip().upper())
        except ValueError as exc:
            logger.error("%s", exc)
            self.status = EXIT_USAGE
            return
        self._set_root_log_level()

    def do_logfile(self, arg):
        """Add a file logger to the system : logfile <filename>"""
        if self.file_logger is not None:
            print("There is already a file logger installed")
            return
        self.file_logger = logging.FileHandler(arg)
        self.file_logger.setLevel(logging.DEBUG)
        self.file_logger.setFormatter(
            logging.Formatter("%(asctime)s %(name)s %(levelname)s %(message)s")
        )
        logging.getLogger().addHandler(self.file_logger)
        self._set_root_log_level()

    def _init_logging(self):
        self.stream_logger = logging.StreamHandler()
        self.stream_logger.setLevel(logging.WARNING)
        self.stream_logger.setFormatter(
            logging.Formatter("LOG> %(levelname)s %(message)s")
        )
        logging.getLogger().addHandler(self.stream_logger)
        self._set_root_log_level()

    def _set_root_log_level(self):
        # Set root log level
        logging.getLogger().setLevel(
            min(handler.level for handler in logging.getLogger().handlers)
        )

    def do_license(self, arg):
        """Display the license details : license"""
        del arg
        print(LICENSE)
