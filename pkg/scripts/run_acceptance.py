#!/usr/bin/env python3
"""Run the full verification suite and emit the machine-readable report."""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from ellhall.cli import RunConfig, emit_report, exit_code, make_report  # noqa: E402
from ellhall.verification import run_verify_all  # noqa: E402


def main():
    fmt = sys.argv[1] if len(sys.argv) > 1 else "text"
    config = RunConfig(out_format=fmt, with_timings=True)
    checks = run_verify_all()
    report = make_report("verify-all", config, checks)
    emit_report(report, fmt, sys.stdout)
    return exit_code(report)


if __name__ == "__main__":
    sys.exit(main())
