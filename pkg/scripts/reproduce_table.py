"""Print the multiplication table of Cl^(1/3)_2 and compare it with the golden file.

    python scripts/reproduce_table.py [--m 3 --d 2]

Exits 1 when the m=3, d=2 output differs from tests/golden/table_m3_d2.txt.
"""

import argparse
import sys
from pathlib import Path

from gencliff.algebra import make_context
from gencliff.cli import multiplication_table, render_table

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden" / "table_m3_d2.txt"


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--m", type=int, default=3)
    parser.add_argument("--d", type=int, default=2)
    args = parser.parse_args()
    text = render_table(multiplication_table(make_context(args.m, args.d)))
    sys.stdout.write(text)
    if (args.m, args.d) == (3, 2):
        same = text == GOLDEN.read_text()
        print(f"\ngolden file {'matches' if same else 'DIFFERS'}: {GOLDEN}")
        return 0 if same else 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
