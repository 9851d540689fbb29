"""Run every acceptance criterion and write the results as JSON."""

import argparse
import json
import sys

from framedlin.acceptance import run_all
from framedlin.sampling import DEFAULT_SEED


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ap.add_argument("--json", help="write the full report here")
    args = ap.parse_args()
    results = run_all(args.seed)
    for r in results:
        print(r.line())
    if args.json:
        with open(args.json, "w") as fh:
            json.dump([r.to_json() for r in results], fh, indent=2, sort_keys=True)
    return 0 if all(r.ok for r in results) else 2


if __name__ == "__main__":
    sys.exit(main())
