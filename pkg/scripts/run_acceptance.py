#!/usr/bin/env python3
"""Run the acceptance corpus and emit one JSON line per criterion.

Equivalent to `hypertheta suite`; kept as a runnable script so the
acceptance run does not depend on the console entry point being
installed.  Exits nonzero if any criterion fails.
"""

import json
import sys

sys.path.insert(0, "src")

from hypertheta.suite import run_suite


def main():
    results = run_suite(stream=sys.stderr)
    for r in results:
        sys.stdout.write(json.dumps(r, sort_keys=True, default=repr) + "\n")
    return 0 if all(r["passed"] for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
