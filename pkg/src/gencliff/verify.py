"""Property checks run by ``gencliff verify``.

Every check compares two independent computations: algebra-side results
against the matrix representation, the Faddeev-LeVerrier determinant
against an LU determinant, closed forms against the recursion, and so on.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import algebra as alg
from .algebra import AlgebraContext, AlgebraElement
from .groups import exp_element, membership, special_unitary_lie_basis, unitary_lie_basis
from .matrix_rep import (
    alternative_representation,
    generator_matrices,
    hermitian_transpose,
    matrix_det,
    monomial_matrix,
    random_invertible,
    represent,
)
from .spectral import (
    adjugate_numerator,
    adjugate_numerator_flat,
    determinant,
    faddeev_leverrier,
    inverse,
    ternary_d2_closed_forms,
)

ACCEPTANCE_CONFIGS: tuple[tuple[int, int], ...] = tuple(
    (m, d) for m in (2, 3, 4, 5) for d in (1, 2, 3) if m**d <= 256
)


@dataclass(frozen=True)
class VerifyConfig:
    samples: int = 50
    det_samples: int = 100
    pair_samples: int = 100
    wd_elements: int = 3
    wd_transforms: int = 10
    inverse_samples: int = 20
    closed_form_samples: int = 200
    group_tol: float = 1e-9


@dataclass
class CheckResult:
    name: str
    passed: bool
    worst: float
    detail: str = ""


@dataclass
class VerifyReport:
    m: int
    d: int
    checks: list[CheckResult] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _rel(a: complex, b: complex) -> float:
    return abs(a - b) / max(1.0, abs(a), abs(b))


def _check(name: str, values: list[float], bound: float, detail: str = "") -> CheckResult:
    worst = max(values) if values else 0.0
    return CheckResult(name, bool(worst <= bound), worst, detail or f"worst {worst:.3g} vs bound {bound:.3g}")


def _ratio(value: float, scale: float) -> float:
    return value / scale if scale > 0 else value


def check_relations(ctx: AlgebraContext) -> CheckResult:
    """Generator relations in the algebra and on the matrices, plus unitarity."""
    gens = generator_matrices(ctx)
    I = np.eye(ctx.N)
    errs = []
    for a in range(1, ctx.d + 1):
        g = alg.generator(ctx, a)
        errs.append(alg.norm(alg.power(g, ctx.m) - alg.identity(ctx)))
        B = gens.matrices[a - 1]
        errs.append(float(np.abs(np.linalg.matrix_power(B, ctx.m) - I).max()))
        errs.append(float(np.abs(hermitian_transpose(B) @ B - I).max()))
        for b in range(a + 1, ctx.d + 1):
            h = alg.generator(ctx, b)
            errs.append(alg.norm(alg.multiply(g, h) - ctx.omega * alg.multiply(h, g)))
            C = gens.matrices[b - 1]
            errs.append(float(np.abs(B @ C - ctx.omega * C @ B).max()))
    return _check("relations", errs, 1e-12)


def check_monomial_products(ctx: AlgebraContext) -> CheckResult:
    """Exact monomial phases agree with products of representing matrices."""
    gens = generator_matrices(ctx)
    exps = alg.tables(ctx).exponents
    mats = [monomial_matrix(gens, tuple(J)) for J in exps]
    errs = []
    for i, j in itertools.product(range(ctx.dim), repeat=2):
        q, K = alg.monomial_product(tuple(exps[i]), tuple(exps[j]), ctx)
        target = ctx.omega_pow(q) * mats[alg.index_of(ctx, K)]
        errs.append(float(np.abs(mats[i] @ mats[j] - target).max()))
    return _check("monomial-products", errs, 1e-12)


def check_homomorphism(ctx: AlgebraContext, rng: np.random.Generator, n: int) -> CheckResult:
    gens = generator_matrices(ctx)
    errs = []
    for _ in range(n):
        U, V = alg.random_element(ctx, rng), alg.random_element(ctx, rng)
        lhs = represent(alg.multiply(U, V), gens)
        rhs = represent(U, gens) @ represent(V, gens)
        errs.append(_ratio(float(np.linalg.norm(lhs - rhs)), ctx.N * alg.norm(U) * alg.norm(V)))
    return _check("homomorphism", errs, 1e-12)


def check_hermitian(ctx: AlgebraContext, rng: np.random.Generator, n: int) -> CheckResult:
    gens = generator_matrices(ctx)
    errs = []
    for _ in range(n):
        U = alg.random_element(ctx, rng)
        diff = represent(alg.hermitian_conjugate(U), gens) - hermitian_transpose(represent(U, gens))
        errs.append(_ratio(float(np.linalg.norm(diff)), ctx.N * alg.norm(U)))
    return _check("hermitian", errs, 1e-12)


def check_trace(ctx: AlgebraContext, rng: np.random.Generator, n: int) -> CheckResult:
    gens = generator_matrices(ctx)
    errs = []
    for _ in range(n):
        U = alg.random_element(ctx, rng)
        tr = complex(np.trace(represent(U, gens)))
        errs.append(_ratio(abs(tr - ctx.N * alg.scalar_part(U)), ctx.N * alg.norm(U)))
    return _check("trace", errs, 1e-10)


def check_determinant(
    ctx: AlgebraContext, rng: np.random.Generator, n: int
) -> tuple[CheckResult, CheckResult]:
    """FL vs LU determinant, and Det(herm U) = conj Det(U)."""
    gens = generator_matrices(ctx)
    oracle, conj = [], []
    for _ in range(n):
        U = alg.random_element(ctx, rng)
        det = determinant(U)
        lu = matrix_det(represent(U, gens))
        oracle.append(_ratio(abs(det - lu), (1 + alg.norm(U)) ** ctx.N))
        det_h = determinant(alg.hermitian_conjugate(U))
        conj.append(abs(det - det_h.conjugate()) / max(1.0, abs(det)))
    return _check("det-oracle", oracle, 1e-8), _check("det-conjugate", conj, 1e-9)


def check_well_defined(ctx: AlgebraContext, rng: np.random.Generator, n_elements: int, n_transforms: int) -> CheckResult:
    gens = generator_matrices(ctx)
    errs = []
    for _ in range(n_elements):
        U = alg.random_element(ctx, rng)
        det = determinant(U)
        for _ in range(n_transforms):
            T = random_invertible(ctx.N, rng)
            for shift in range(ctx.m):
                alt = matrix_det(alternative_representation(U, T, shift, gens))
                errs.append(_rel(alt, det))
    return _check("well-defined", errs, 1e-8)


def check_underline(ctx: AlgebraContext, rng: np.random.Generator, n: int) -> CheckResult:
    """Identities of the underline map X_ = 2<X>_0 - X on random pairs.

    (UV)_ U = U (VU)_,   (U V_)_ = U_ V_ + U_ V - (UV)_,   (U U_)_ = (U_)^2 + U_ U - (U^2)_.
    """
    u = alg.underline
    mul = alg.multiply
    errs = []
    for _ in range(n):
        U, V = alg.random_element(ctx, rng), alg.random_element(ctx, rng)
        uU, uV = u(U), u(V)
        scale = max(1.0, alg.norm(U) * alg.norm(V))
        errs.append(alg.norm(mul(u(mul(U, V)), U) - mul(U, u(mul(V, U)))) / (scale * max(1.0, alg.norm(U))))
        errs.append(alg.norm(u(mul(U, uV)) - mul(uU, uV) - mul(uU, V) + u(mul(U, V))) / scale)
        scale_u = max(1.0, alg.norm(U) ** 2)
        errs.append(alg.norm(u(mul(U, uU)) - mul(uU, uU) - mul(uU, U) + u(mul(U, U))) / scale_u)
    return _check("underline", errs, 1e-12)


def check_inverse(ctx: AlgebraContext, rng: np.random.Generator, n: int) -> CheckResult:
    errs = []
    tried = 0
    while len(errs) < n and tried < 10 * n:
        tried += 1
        U = alg.random_element(ctx, rng)
        if abs(determinant(U)) <= 1e-3:
            continue
        errs.append(alg.norm(alg.multiply(U, inverse(U)) - alg.identity(ctx)))
    return _check("inverse", errs, 1e-8)


def check_lie_bases(ctx: AlgebraContext) -> CheckResult:
    u, su = unitary_lie_basis(ctx), special_unitary_lie_basis(ctx)
    ranks = (u.real_rank(), su.real_rank())
    expected = (ctx.dim, ctx.dim - 1)
    anti = [alg.norm(alg.hermitian_conjugate(X) + X) for X in u]
    ok = ranks == expected and max(anti) <= 1e-12
    return CheckResult("lie-bases", ok, max(anti), f"ranks {ranks}, expected {expected}")


def check_exponential(ctx: AlgebraContext, rng: np.random.Generator, n: int, tol: float) -> CheckResult:
    """exp of random su elements lands in SU (asserted for even d only)."""
    basis = special_unitary_lie_basis(ctx).elements
    failures = 0
    worst = 0.0
    for _ in range(n):
        w = rng.uniform(-1, 1, len(basis))
        X = alg.zero(ctx)
        for c, B in zip(w, basis):
            X = X + c * B
        g = exp_element(X)
        mem = membership(g, tol)
        worst = max(worst, abs(determinant(g) - 1))
        if not (mem.unitary and mem.special_unitary):
            failures += 1
    return CheckResult("exp-group", failures == 0, worst, f"{failures} of {n} outside SU")


def check_ternary_closed_forms(ctx: AlgebraContext, rng: np.random.Generator, n: int) -> CheckResult:
    gens = generator_matrices(ctx)
    errs = []
    for _ in range(n):
        U = alg.random_element(ctx, rng)
        cf = ternary_d2_closed_forms(U)
        fl = determinant(U)
        lu = matrix_det(represent(U, gens))
        for value in (cf.det, cf.detq, cf.det0, lu):
            errs.append(_rel(value, fl))
        errs.append(alg.norm(adjugate_numerator(U) - adjugate_numerator_flat(U)) / max(1.0, alg.norm(U) ** 2))
    for J in alg.tables(ctx).exponents:
        errs.append(abs(determinant(alg.basis_element(ctx, tuple(J))) - 1))
    return _check("closed-forms", errs, 1e-9)


def run_verification(
    ctx: AlgebraContext,
    seed: int = 0,
    config: VerifyConfig | None = None,
    progress: Callable[[CheckResult], None] | None = None,
) -> VerifyReport:
    cfg = config or VerifyConfig()
    rng = np.random.default_rng([seed, ctx.m, ctx.d])
    report = VerifyReport(ctx.m, ctx.d)
    start = time.perf_counter()

    def add(result: CheckResult):
        report.checks.append(result)
        if progress:
            progress(result)

    add(check_relations(ctx))
    add(check_monomial_products(ctx))
    add(check_homomorphism(ctx, rng, cfg.samples))
    add(check_hermitian(ctx, rng, cfg.samples))
    add(check_trace(ctx, rng, cfg.samples))
    for result in check_determinant(ctx, rng, cfg.det_samples):
        add(result)
    add(check_well_defined(ctx, rng, cfg.wd_elements, cfg.wd_transforms))
    add(check_underline(ctx, rng, cfg.pair_samples))
    add(check_inverse(ctx, rng, cfg.inverse_samples))
    add(check_lie_bases(ctx))
    if ctx.d % 2 == 0:
        add(check_exponential(ctx, rng, cfg.samples, cfg.group_tol))
    if (ctx.m, ctx.d) == (3, 2):
        add(check_ternary_closed_forms(ctx, rng, cfg.closed_form_samples))
    report.seconds = time.perf_counter() - start
    return report


def charpoly_summary(U: AlgebraElement) -> dict:
    cp = faddeev_leverrier(U)
    return {
        "N": cp.N,
        "C": [[float(c.real), float(c.imag)] for c in cp.C],
        "det": [cp.det.real, cp.det.imag],
    }
