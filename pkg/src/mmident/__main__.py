"""Entry point for running mmident as a module.

Usage:
    python -m src.mmident simulate --out-dir runs/seed0 --m 2 --n 5
    python -m src.mmident recover --in-dir runs/seed0
    mmident table1 --runs 100 --mode oracle --format text
"""

import sys

from .harness import run


def main():
    try:
        code = run(sys.argv[1:])
    except KeyboardInterrupt:
        sys.stderr.write("\nInterrupted\n")
        code = 130
    sys.exit(code)


if __name__ == "__main__":
    main()
