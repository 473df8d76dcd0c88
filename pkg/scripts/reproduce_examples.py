"""Run the reproduction checklist and print one line per check."""

import argparse
import sys

from swobstruct.report import verify_paper


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid-size", type=int, default=10**6)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--sweep", type=int, default=200, help="random spin^c instances")
    args = ap.parse_args()
    checks = verify_paper(args.grid_size, args.seed, args.sweep)
    for c in checks:
        print(f"{'ok  ' if c.ok else 'FAIL'} {c.name}: expected {c.expected}, got {c.actual}")
    return 0 if all(c.ok for c in checks) else 4


if __name__ == "__main__":
    sys.exit(main())
