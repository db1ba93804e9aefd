"""Machine checks for every algebraic claim about the braid families.

Each check returns a CheckResult with a normalized residual: the largest
entrywise deviation divided by max(1, largest entry magnitude of either
compared matrix).  Nonunitary coefficients grow exponentially in theta,
so unnormalized residuals would not be comparable across draws.

``run_suite`` aggregates checks over random parameter draws.  Randomness
comes from numpy's Philox counter-based bit generator keyed by the seed,
so identical (config, suite, samples, seed, tol) invocations reproduce
bit-identical reports on any platform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .braid import (
    BraidFamily,
    ParameterSet,
    canonical_keys,
    make_parameters,
    reference_matrix,
    reference_projectors,
    require_mode,
)
from .config import ReferenceConfig
from .errors import BraidmatError, ConfigError, DomainError
from .linalg import dagger, kron, matrix_exponential, max_abs_diff
from .projectors import projector_family

SUITES = (
    "braid",
    "unitarity",
    "factorization",
    "exponential",
    "projectors",
    "composition",
    "all",
)

# Derived per-check tolerances, as fractions of the user tolerance; at the
# default 1e-10 they give braid 1e-10, factorization 1e-11, unitarity
# 1e-12, theta-reversal and composition 1e-13.  Projector algebra is
# checked at a fixed 1e-14 regardless (the members are exact dyadics).
_FACTORIZATION_SCALE = 0.1
_UNITARITY_SCALE = 0.01
_REVERSAL_SCALE = 0.001
_COMPOSITION_SCALE = 0.001
PROJECTOR_TOL = 1e-14
REFERENCE_GENERATOR_TOL = 1e-13


def normalized_residual(a: np.ndarray, b: np.ndarray) -> float:
    """max |a - b| scaled by max(1, |a|_max, |b|_max)."""
    scale = max(1.0, float(np.abs(a).max()), float(np.abs(b).max()))
    return max_abs_diff(a, b) / scale


@dataclass(frozen=True)
class CheckResult:
    """One verified residual; ``passed`` holds iff residual <= tolerance
    (a NaN residual, recorded when a check errored out, never passes)."""

    name: str
    residual: float
    tolerance: float
    context: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance

    def to_json(self) -> dict:
        residual = None if math.isnan(self.residual) else self.residual
        return {
            "name": self.name,
            "residual": residual,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "context": dict(self.context),
        }


@dataclass(frozen=True)
class VerificationReport:
    dim: int
    mode: str
    suite: str
    seed: int
    tolerance: float
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "N": self.dim,
            "mode": self.mode,
            "suite": self.suite,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "checks": [c.to_json() for c in self.checks],
            "passed": self.passed,
        }


def check_braid(
    family: BraidFamily, theta: float, theta_prime: float, tol: float = 1e-10
) -> CheckResult:
    """Cubic exchange identity on the triple tensor space.

    Compares R12(t) R23(t+t') R12(t') against R23(t') R12(t+t') R23(t),
    where R12 = R (x) I and R23 = I (x) R.
    """
    eye = np.eye(family.dim)
    r_t = family.matrix(theta)
    r_s = family.matrix(theta + theta_prime)
    r_p = family.matrix(theta_prime)
    lhs = kron(r_t, eye) @ kron(eye, r_s) @ kron(r_p, eye)
    rhs = kron(eye, r_p) @ kron(r_s, eye) @ kron(eye, r_t)
    return CheckResult(
        name="braid",
        residual=normalized_residual(lhs, rhs),
        tolerance=tol,
        context={"theta": theta, "theta_prime": theta_prime},
    )


def check_unitarity(
    family: BraidFamily, theta: float, tol: float = 1e-12
) -> CheckResult:
    """dagger(R) @ R = I, plus dagger(R(theta)) = R(-theta) in context.

    Only meaningful (and only permitted) in unitary mode; real mode raises
    ModeError since the family is then deliberately nonunitary.
    """
    require_mode(family, "unitary")
    r = family.matrix(theta)
    eye = np.eye(r.shape[0])
    reversal = max_abs_diff(dagger(r), family.matrix(-theta))
    return CheckResult(
        name="unitarity",
        residual=normalized_residual(dagger(r) @ r, eye),
        tolerance=tol,
        context={"theta": theta, "theta_reversal_residual": reversal},
    )


def check_factorization(
    family: BraidFamily, theta1: float, theta2: float, tol: float = 1e-11
) -> CheckResult:
    """Additivity R(t1 +/- t2) = R(t1) @ R(+/-t2) and inversion by sign flip."""
    r1 = family.matrix(theta1)
    r2 = family.matrix(theta2)
    r2_inv = family.matrix(-theta2)
    eye = np.eye(r1.shape[0])
    plus = normalized_residual(family.matrix(theta1 + theta2), r1 @ r2)
    minus = normalized_residual(family.matrix(theta1 - theta2), r1 @ r2_inv)
    inverse = normalized_residual(r2 @ r2_inv, eye)
    return CheckResult(
        name="factorization",
        residual=max(plus, minus, inverse),
        tolerance=tol,
        context={
            "theta1": theta1,
            "theta2": theta2,
            "plus_residual": plus,
            "minus_residual": minus,
            "inverse_residual": inverse,
        },
    )


def check_exponential(
    family: BraidFamily, theta: float, tol: float = 1e-10
) -> CheckResult:
    """Generator form: built matrix vs exp(theta * X), and the exchange
    identity rerun on the exponential-form matrices.

    The second part substitutes E(x) = exp(x*X) for the built matrices at
    (theta, theta/2) and recomputes the triple-product residual, using
    exp(x * X (x) I) = exp(x*X) (x) I to stay on the small space.
    """
    x = family.generator().matrix
    built = family.matrix(theta)
    direct = normalized_residual(built, matrix_exponential(theta * x))
    half = theta / 2.0
    eye = np.eye(family.dim)
    e_t = matrix_exponential(theta * x)
    e_h = matrix_exponential(half * x)
    e_s = matrix_exponential((theta + half) * x)
    lhs = kron(e_t, eye) @ kron(eye, e_s) @ kron(e_h, eye)
    rhs = kron(eye, e_h) @ kron(e_s, eye) @ kron(eye, e_t)
    exchange = normalized_residual(lhs, rhs)
    return CheckResult(
        name="exponential",
        residual=max(direct, exchange),
        tolerance=tol,
        context={
            "theta": theta,
            "theta_prime": half,
            "build_vs_exp_residual": direct,
            "exp_exchange_residual": exchange,
        },
    )


def check_composition_law(
    n: int, z1: float, z2: float, tol: float = 1e-13
) -> CheckResult:
    """Projective composition of the reference family.

    R(z1) @ R(z2) = (1 - z1*z2) * R(z3) with z3 = (z1+z2)/(1 - z1*z2);
    the scalar is reported in the context.  z1*z2 = 1 is a pole.
    """
    scalar = 1.0 - z1 * z2
    if abs(scalar) < 1e-12:
        raise DomainError(f"z1*z2 = {z1 * z2} is at the composition pole")
    z3 = (z1 + z2) / scalar
    product = reference_matrix(n, z1) @ reference_matrix(n, z2)
    return CheckResult(
        name="composition",
        residual=normalized_residual(product, scalar * reference_matrix(n, z3)),
        tolerance=tol,
        context={"z1": z1, "z2": z2, "z3": z3, "scalar": scalar},
    )


def projector_checks(dim: int, tol: float = PROJECTOR_TOL) -> list[CheckResult]:
    """Idempotency, orthogonality, completeness, and trace for every
    projector family available at this side length."""
    kinds = ["unified"] + (["P", "Q"] if dim % 2 == 0 else [])
    results = []
    for kind in kinds:
        fam = projector_family(dim, kind)
        members = [fam.matrices[k] for k in fam.keys]
        eye = np.eye(dim * dim)
        idem = max(max_abs_diff(m @ m, m) for m in members)
        orth = 0.0
        for a_idx, a in enumerate(members):
            for b_idx, b in enumerate(members):
                if a_idx != b_idx:
                    orth = max(orth, float(np.abs(a @ b).max()))
        complete = max_abs_diff(fam.completeness_sum(), eye)
        trace_dev = max(abs(complex(np.trace(m)) - 1.0) for m in members)
        ctx = {"kind": kind, "members": len(fam)}
        results.append(CheckResult("projectors_idempotent", idem, tol, dict(ctx)))
        results.append(CheckResult("projectors_orthogonal", orth, tol, dict(ctx)))
        results.append(CheckResult("projectors_complete", complete, tol, dict(ctx)))
        results.append(CheckResult("projectors_unit_trace", trace_dev, tol, dict(ctx)))
        if kind == "Q":
            herm = max(max_abs_diff(dagger(m), m) for m in members)
            results.append(CheckResult("projectors_hermitian", herm, tol, dict(ctx)))
    return results


def reference_checks(n: int) -> list[CheckResult]:
    """Self-checks of the reference regrouping: the sign-summed pair must
    be complementary orthogonal projectors and yield a real generator
    squaring to -I."""
    plus, minus, rot = reference_projectors(n)
    eye = np.eye(plus.shape[0])
    pair_residual = max(
        max_abs_diff(plus @ plus, plus),
        max_abs_diff(minus @ minus, minus),
        float(np.abs(plus @ minus).max()),
        max_abs_diff(plus + minus, eye),
    )
    gen_residual = max(
        float(np.abs((-1j * (plus - minus)).imag).max()),
        max_abs_diff(rot @ rot, -eye),
    )
    return [
        CheckResult("reference_projectors", pair_residual, PROJECTOR_TOL, {"n": n}),
        CheckResult(
            "reference_generator", gen_residual, REFERENCE_GENERATOR_TOL, {"n": n}
        ),
    ]


def _failed(name: str, tol: float, error: Exception, **context) -> CheckResult:
    context["error"] = str(error)
    return CheckResult(name=name, residual=math.nan, tolerance=tol, context=context)


def run_suite(
    config: Union[ParameterSet, ReferenceConfig],
    suite: str = "all",
    samples: int = 20,
    seed: int = 42,
    tol: float = 1e-10,
) -> VerificationReport:
    """Run a named suite of checks and aggregate a report.

    For a braid-family config, sample 0 evaluates the configured parameter
    values and samples 1..``samples`` evaluate fresh parameter draws
    (uniform on [-2, 2] over the canonical classes, thetas uniform on
    [-1, 1], composition points on [-0.9, 0.9]); any symmetry overrides in
    the config are applied to every draw so that negative controls stay in
    force.  Checks that cannot apply are skipped under suite "all"
    (unitarity in real mode, composition at odd side length) but surface
    as failed results when requested explicitly.  Errors raised inside a
    check become failed results instead of propagating.

    Randomness: numpy Philox keyed by ``seed`` with a fixed draw order,
    so reports are bit-identical across runs and platforms.
    """
    if suite not in SUITES:
        raise ConfigError(f"unknown suite {suite!r}; choose from {SUITES}")
    if samples < 0:
        raise ConfigError("samples must be >= 0")
    if isinstance(config, ReferenceConfig):
        return _run_reference_suite(config, suite, samples, seed, tol)
    params = config
    rng = np.random.Generator(np.random.Philox(seed))
    keys = canonical_keys(params.dim)
    run_braid = suite in ("braid", "all")
    run_unitarity = suite == "unitarity" or (
        suite == "all" and params.mode == "unitary"
    )
    run_fact = suite in ("factorization", "all")
    run_exp = suite in ("exponential", "all")
    run_comp = suite == "composition" or (suite == "all" and params.dim % 2 == 0)
    checks: list[CheckResult] = []
    if suite in ("projectors", "all"):
        checks.extend(projector_checks(params.dim))
        if params.dim % 2 == 0:
            checks.extend(reference_checks(params.dim // 2))
    for sample in range(samples + 1):
        draws = rng.uniform(-2.0, 2.0, size=len(keys))
        theta, theta_prime = rng.uniform(-1.0, 1.0, size=2)
        z1, z2 = rng.uniform(-0.9, 0.9, size=2)
        if sample == 0:
            sampled = params
        else:
            sampled = make_parameters(
                params.dim,
                params.mode,
                dict(zip(keys, draws)),
                overrides=params.overrides,
            )
        family = BraidFamily.create(sampled)
        base_ctx = {"sample": sample, "parameter_digest": sampled.digest()}
        if run_braid:
            checks.append(
                _guarded(
                    check_braid, "braid", tol, base_ctx, family, theta, theta_prime
                )
            )
        if run_unitarity:
            result = _guarded(
                check_unitarity,
                "unitarity",
                tol * _UNITARITY_SCALE,
                base_ctx,
                family,
                theta,
            )
            checks.append(result)
            if "theta_reversal_residual" in result.context:
                checks.append(
                    CheckResult(
                        name="theta_reversal",
                        residual=result.context["theta_reversal_residual"],
                        tolerance=tol * _REVERSAL_SCALE,
                        context=dict(base_ctx, theta=theta),
                    )
                )
        if run_fact:
            checks.append(
                _guarded(
                    check_factorization,
                    "factorization",
                    tol * _FACTORIZATION_SCALE,
                    base_ctx,
                    family,
                    theta,
                    theta_prime,
                )
            )
        if run_exp:
            checks.append(
                _guarded(check_exponential, "exponential", tol, base_ctx, family, theta)
            )
        if run_comp:
            if params.dim % 2 == 0:
                checks.append(
                    _guarded(
                        check_composition_law,
                        "composition",
                        tol * _COMPOSITION_SCALE,
                        base_ctx,
                        params.dim // 2,
                        z1,
                        z2,
                    )
                )
            else:
                checks.append(
                    _failed(
                        "composition",
                        tol * _COMPOSITION_SCALE,
                        ConfigError(
                            "composition law needs an even side length "
                            f"(got N={params.dim})"
                        ),
                        **base_ctx,
                    )
                )
    checks.sort(key=lambda c: (c.name, c.context.get("sample", -1)))
    return VerificationReport(
        dim=params.dim,
        mode=params.mode,
        suite=suite,
        seed=seed,
        tolerance=tol,
        checks=tuple(checks),
    )


def _run_reference_suite(
    config: ReferenceConfig, suite: str, samples: int, seed: int, tol: float
) -> VerificationReport:
    if suite not in ("composition", "projectors", "all"):
        raise ConfigError(
            f"suite {suite!r} does not apply to the reference family; "
            "use 'composition', 'projectors', or 'all'"
        )
    rng = np.random.Generator(np.random.Philox(seed))
    checks: list[CheckResult] = []
    if suite in ("projectors", "all"):
        checks.extend(projector_checks(2 * config.n))
        checks.extend(reference_checks(config.n))
    if suite in ("composition", "all"):
        for sample in range(samples + 1):
            z1, z2 = rng.uniform(-0.9, 0.9, size=2)
            ctx = {"sample": sample}
            checks.append(
                _guarded(
                    check_composition_law,
                    "composition",
                    tol * _COMPOSITION_SCALE,
                    ctx,
                    config.n,
                    z1,
                    z2,
                )
            )
    checks.sort(key=lambda c: (c.name, c.context.get("sample", -1)))
    return VerificationReport(
        dim=2 * config.n,
        mode="reference",
        suite=suite,
        seed=seed,
        tolerance=tol,
        checks=tuple(checks),
    )


def _guarded(func, name: str, tol: float, base_ctx: dict, *args) -> CheckResult:
    try:
        result = func(*args, tol=tol)
    except BraidmatError as exc:
        return _failed(name, tol, exc, **base_ctx)
    return CheckResult(
        name=result.name,
        residual=result.residual,
        tolerance=result.tolerance,
        context=dict(base_ctx, **result.context),
    )
