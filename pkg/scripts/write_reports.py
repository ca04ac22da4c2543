"""Run every randomized CLI suite for one seed and write the JSON reports to a directory."""
import argparse
import sys

from eqpatch import cli

SUITES = [
    ["fincat", "verify"],
    ["eq", "check-exactness"],
    ["eq", "check-coherence"],
    ["patch", "roundtrip"],
    ["patch", "fullfaithful"],
    ["birkhoff", "factor"],
    ["birkhoff", "reconstruct"],
    ["mv", "report"],
]


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="reports")
    p.add_argument("--quick", action="store_true", help="small sample counts")
    args = p.parse_args()
    worst = 0
    for argv in SUITES:
        extra = ["--samples", "5"] if args.quick else []
        code = cli.main([*argv, "--seed", str(args.seed), "--out", args.out, "--format", "json", *extra])
        print(f"{' '.join(argv)}: exit {code}", file=sys.stderr)
        worst = max(worst, code)
    p1 = ["mv", "report", "--context", "p1", "--group", "gl2", "--seed", str(args.seed), "--out", args.out, "--format", "json"]
    code = cli.main([*p1, *(["--samples", "5"] if args.quick else ["--samples", "50"])])
    print(f"mv report (p1, gl2): exit {code}", file=sys.stderr)
    return max(worst, code)


if __name__ == "__main__":
    sys.exit(main())
