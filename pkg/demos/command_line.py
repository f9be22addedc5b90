"""Driving the engine through session files and the ``orejordan`` command.

Everything the library does is also reachable from a line-oriented session
file.  This script writes a small session, runs it through the command-line
entry point and through ``run_session``, and shows how failures are reported.

Run:  python3 demos/command_line.py
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

from orejordan.cli import dump_reports, run_session

SESSION = """\
# first-order operators in the plane and their intersection
[field]
derivations = dx, dy
variables = x, y
order = dx > dy

[defs]
A = dx + 1
B = dx + x*dy
F = factors(dx + 1, dx + 1, dx + x*dy)

[run]
intersect A B
gauge result
analyze F
"""

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "plane.session"
    path.write_text(SESSION, encoding="utf-8")
    cli = [sys.executable, "-m", "orejordan", "--session", str(path)]

    print("$ orejordan --session plane.session --eval 'member dy {ideal((dx+1)*B, A)}'")
    out = subprocess.run(cli + ["--eval", "member dy {ideal((dx+1)*B, A)}"],
                         capture_output=True, text=True)
    print(out.stdout)

    out = subprocess.run(cli + ["--json"], capture_output=True, text=True)
    reports = json.loads(out.stdout)
    print("--json gives", len(reports), "reports; the gauge of the intersection is",
          reports[4]["result"]["gauge"])

# The same run in-process, with a step that fails: the report carries the
# error class and the exit code the command line would use.
session, reports, code = run_session(SESSION, extra=["analyze {chain()}", "gauge A"])
print("\nin-process exit code:", code)
print(dump_reports(reports[-1:], timing=False), end="")
print("commands after the failure were not run:", reports[-1].command)
