"""Accuracy of the recursion in long double versus double-double arithmetic.

    python scripts/fl_precision.py [--m 5 --d 3] [--samples 200] [--seed 13]

Draws random elements, sorts them by the cancellation ratio
(1 + ||U||)^N / |Det(U)|, and prints for the worst few the relative
distance of each arithmetic to LAPACK and the gap Det(U) vs conj Det(herm U).
"""

import argparse

import numpy as np

from gencliff import algebra as alg
from gencliff.algebra import make_context
from gencliff.matrix_rep import represent
from gencliff.spectral import faddeev_leverrier


def rel(a: complex, b: complex) -> float:
    return abs(a - b) / max(abs(a), abs(b))


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--m", type=int, default=5)
    parser.add_argument("--d", type=int, default=3)
    parser.add_argument("--samples", type=int, default=200)
    parser.add_argument("--seed", type=int, default=13)
    parser.add_argument("--show", type=int, default=8)
    args = parser.parse_args()
    ctx = make_context(args.m, args.d)
    rng = np.random.default_rng(args.seed)
    rows = []
    for _ in range(args.samples):
        U = alg.random_element(ctx, rng)
        lapack = np.linalg.det(represent(U))
        row = [(1 + alg.norm(U)) ** ctx.N / abs(lapack)]
        for precision in ("long-double", "double-double"):
            det = faddeev_leverrier(U, precision).det
            det_h = faddeev_leverrier(alg.hermitian_conjugate(U), precision).det
            row += [rel(det, lapack), rel(det, np.conj(det_h))]
        rows.append(row)
    rows.sort(reverse=True)
    print(f"m={args.m} d={args.d} N={ctx.N}, worst {args.show} of {args.samples} by cancellation ratio")
    print(f"{'cancel':>8}  {'LD vs LAPACK':>12}  {'LD conj':>9}  {'DD vs LAPACK':>12}  {'DD conj':>9}")
    for cancel, ld_lu, ld_conj, dd_lu, dd_conj in rows[: args.show]:
        print(f"{cancel:8.1e}  {ld_lu:12.2e}  {ld_conj:9.2e}  {dd_lu:12.2e}  {dd_conj:9.2e}")
    worst = np.max(np.array(rows)[:, 1:], axis=0)
    print(f"{'max':>8}  {worst[0]:12.2e}  {worst[1]:9.2e}  {worst[2]:12.2e}  {worst[3]:9.2e}")


if __name__ == "__main__":
    main()
