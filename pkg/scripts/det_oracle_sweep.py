"""Compare the recursion determinant with LU on the representing matrix.

    python scripts/det_oracle_sweep.py [--samples 100] [--seed 0]

For every test configuration this reports the worst scaled error
|Det_FL - det_LU| / (1 + ||U||)^N, the worst relative gap between Det(U) and
conj Det(herm U), the worst cancellation ratio (1 + ||U||)^N / |Det(U)|, and
the time spent in the recursion.
"""

import argparse
import time

import numpy as np

from gencliff import algebra as alg
from gencliff.algebra import make_context
from gencliff.matrix_rep import generator_matrices, matrix_det, represent
from gencliff.spectral import determinant
from gencliff.verify import ACCEPTANCE_CONFIGS


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--samples", type=int, default=100)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    print(f"{'m':>2} {'d':>2} {'N':>3}  {'scaled FL-LU':>12}  {'conj gap':>9}  {'cancel':>8}  {'FL ms':>6}")
    for m, d in ACCEPTANCE_CONFIGS:
        ctx = make_context(m, d)
        gens = generator_matrices(ctx)
        rng = np.random.default_rng([args.seed, m, d])
        scaled, conj, cancel, spent = 0.0, 0.0, 0.0, 0.0
        for _ in range(args.samples):
            U = alg.random_element(ctx, rng)
            start = time.perf_counter()
            det = determinant(U)
            spent += time.perf_counter() - start
            growth = (1 + alg.norm(U)) ** ctx.N
            scaled = max(scaled, abs(det - matrix_det(represent(U, gens))) / growth)
            det_h = determinant(alg.hermitian_conjugate(U))
            conj = max(conj, abs(det - np.conj(det_h)) / max(abs(det), abs(det_h)))
            cancel = max(cancel, growth / abs(det))
        ms = 1e3 * spent / args.samples
        print(f"{m:>2} {d:>2} {ctx.N:>3}  {scaled:12.2e}  {conj:9.2e}  {cancel:8.1e}  {ms:6.1f}")


if __name__ == "__main__":
    main()
