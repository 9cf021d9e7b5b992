"""Line-oriented dialogue around a session; never crashes on bad input."""

from __future__ import annotations

import sys
from typing import IO

from .session import Session

PROMPT = "xplain> "
QUIT_COMMANDS = ("quit", "exit")


def repl_loop(session: Session, instream: IO[str] | None = None, outstream: IO[str] | None = None) -> None:
    """Read commands until quit/EOF; every answer reflects the current overlay."""
    instream = instream if instream is not None else sys.stdin
    outstream = outstream if outstream is not None else sys.stdout
    outstream.write("loaded program; type 'help' for commands\n")
    while True:
        outstream.write(PROMPT)
        outstream.flush()
        line = instream.readline()
        if not line:
            outstream.write("\n")
            return
        stripped = line.strip()
        if stripped in QUIT_COMMANDS:
            return
        output = session.execute(stripped)
        if output:
            outstream.write(output + "\n")
