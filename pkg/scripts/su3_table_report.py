"""Check the printed tau <-> Gell-Mann change-of-basis tables of su(3).

    python scripts/su3_table_report.py

For each of the 16 printed relations, prints the max entry residual of the
3x3 matrix identity, then the residuals of the tables derived by least
squares from the Hilbert-Schmidt inner product, and |F G - I| for both pairs.
"""

import numpy as np

from gencliff.groups import PUBLISHED_TAU_TO_THETA, PUBLISHED_THETA_TO_TAU, relation_residuals, su3_tables


def main() -> None:
    t = su3_tables()
    rows = [
        ("beta(tau_k) = sum F[k, j] theta_j", PUBLISHED_TAU_TO_THETA, t.derived_tau_to_theta, t.theta, t.beta_tau, "beta"),
        ("theta_k = sum G[k, j] beta(tau_j)", PUBLISHED_THETA_TO_TAU, t.derived_theta_to_tau, t.beta_tau, t.theta, "theta"),
    ]
    for title, printed, derived, basis, targets, name in rows:
        res_p = relation_residuals(printed, basis, targets)
        res_d = relation_residuals(derived, basis, targets)
        print(title)
        for k in range(8):
            status = "ok" if res_p[k] <= 1e-12 else "MISMATCH"
            print(f"  {name}{k + 1}: printed residual {res_p[k]:.3e} {status:>8}   derived residual {res_d[k]:.1e}")
    with np.printoptions(precision=4, suppress=True, linewidth=120):
        for label, F, G in (
            ("printed", PUBLISHED_TAU_TO_THETA, PUBLISHED_THETA_TO_TAU),
            ("derived", t.derived_tau_to_theta, t.derived_theta_to_tau),
        ):
            print(f"{label}: max |F G - I| = {np.abs(F @ G - np.eye(8)).max():.3e}")
        print("derived F (rows beta_k, columns theta_j):")
        print(t.derived_tau_to_theta)
        print("derived G (rows theta_k, columns beta_j):")
        print(t.derived_theta_to_tau)


if __name__ == "__main__":
    main()
