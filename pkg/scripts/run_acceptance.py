"""Run the oracle suites from the command line.

Usage: python3 scripts/run_acceptance.py [suite]
The suite defaults to "all"; PLANEAUT_SEED picks the corpus seed.
"""

import os
import sys

from planeaut.selftest import SUITES, run_criteria


def main(argv):
    suite = argv[1] if len(argv) > 1 else "all"
    seed = int(os.environ.get("PLANEAUT_SEED", "0"))
    if suite not in SUITES:
        print("suites:", ", ".join(SUITES))
        if suite != "--list":
            print("unknown suite %r" % suite)
            return 2
        return 0
    return 0 if run_criteria(suite, seed=seed) else 1


if __name__ == "__main__":
    sys.exit(main(sys.argv))
