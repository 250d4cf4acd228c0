"""Drive the matho-lab CLI over the shipped scenario files.

Runs each scenario in-process (same entry point the console script
uses), prints the exit code, and summarizes the checks. Exit 0 means
every check accepted, 1 means something was rejected, 2 is a scenario
error, 3 an internal failure.
"""

import contextlib
import io
import json
import pathlib

from matholab import cli

here = pathlib.Path(__file__).resolve().parent.parent / "scenarios"

for path in sorted(here.glob("*.json")):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli.main([json.load(open(path))["command"],
                         "--scenario", str(path)])
    report = json.loads(buf.getvalue())
    checks = ", ".join(f"{c['name']}={c['verdict']}" for c in report["checks"])
    print(f"{path.name:<28} exit {code}  overall {report['overall']}")
    print(f"    {checks}")

# A rejection is still exit 1 with a full report on stdout.
bad = here / "check_hankel_reject.json"
buf = io.StringIO()
with contextlib.redirect_stdout(buf):
    code = cli.main(["check", "--scenario", str(bad), "--format", "text"])
print(f"\ntext format for {bad.name} (exit {code}):")
print(buf.getvalue())
