"""Run every built-in equivalence case and print one table of discrepancies.

Each case computes a single model norm or distance along routes that share
no code (closed form in the roots, truncated cepstral series, subspace
angles, data-driven estimates) and checks the gaps against fixed bounds.
"""

import argparse
import sys

from cepdist import RunConfig, run_verify
from cepdist.verify import CASES


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--case", choices=("all", *CASES), default="all")
    parser.add_argument("--seed", type=int, default=44)
    args = parser.parse_args()

    config = RunConfig(seed=args.seed)
    report = run_verify(config, None if args.case == "all" else (args.case,))

    print(f"{'case':<14}{'check':<42}{'value':>12}{'bound':>12}  status")
    for case in report["cases"]:
        for check in case["checks"]:
            if "bound" in check:
                value = f"{check['value']:>12.3e}"
                bound = f"{check['bound']:>12.1e}"
            else:
                value = f"{str(check['value']):>12}"
                bound = f"{str(check['expected']):>12}"
            status = "ok" if check["pass"] else "FAIL"
            print(f"{case['case']:<14}{check['name']:<42}{value}{bound}  {status}")

    print(f"\noverall: {'pass' if report['pass'] else 'FAIL'}")
    return 0 if report["pass"] else 1


if __name__ == "__main__":
    sys.exit(main())
