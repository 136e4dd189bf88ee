"""Run every acceptance check and print one JSON document (byte-stable per seed).

    python scripts/acceptance_sweep.py --seed 0 > sweep.json
    python scripts/acceptance_sweep.py --timing      # adds elapsed seconds
"""

import argparse
import json
import sys

from bethe_lab.verifier import full_suite


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--orders", default="6,6", help="I,J")
    parser.add_argument("--timing", action="store_true")
    args = parser.parse_args(argv)
    I, J = (int(t) for t in args.orders.split(","))
    suite = full_suite(args.seed, I, J)
    ok = all(r.passed for reports in suite.values() for r in reports)
    payload = {
        "seed": args.seed,
        "status": "pass" if ok else "fail",
        "criteria": {name: [r.to_json(args.timing) for r in reports] for name, reports in suite.items()},
    }
    print(json.dumps(payload, indent=2))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
