""" Run one resolwelib command, or the interactive shell when none is given """

import shlex
import sys

from .utils import ResolweShell


def main(argv=None) -> int:
    """main [--loglevel LEVEL] [command [flags]]"""
    argv = list(sys.argv[1:] if argv is None else argv)
    first_commands = []
    if argv[:1] == ["--loglevel"] and len(argv) >= 2:
        first_commands.append(f"loglevel {argv[1]}")
        argv = argv[2:]
    if not argv:
        return ResolweShell.run(first_commands)
    with ResolweShell(first_commands) as shell:
        shell.onecmd(" ".join(shlex.quote(word) for word in argv))
        return shell.status


if __name__ == "__main__":
    sys.exit(main())
