"""Rewrite the pinned reports next to each session file.

Run after an intentional change in output, then review the diff.
"""

from pathlib import Path

from orejordan.cli import dump_reports, run_session

HERE = Path(__file__).resolve().parent


def main():
    for path in sorted(HERE.glob("*.session")):
        _, reports, code = run_session(path.read_text(encoding="utf-8"))
        if code:
            raise SystemExit(f"{path.name} failed with exit code {code}")
        target = path.with_suffix(".expected.json")
        target.write_text(dump_reports(reports, timing=False), encoding="utf-8", newline="\n")
        print(f"wrote {target.name} ({len(reports)} reports)")


if __name__ == "__main__":
    main()
