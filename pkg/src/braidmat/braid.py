"""Parameter sets, braid-matrix families, generators, and the reference
single-parameter family.

A family is a grid of exponents m(i, j, s) (s = +1 or -1) constant on
mirror orbits: m(i,j,s) = m(i~,j,s) = m(i,j~,s) = m(i~,j~,s), with the
self-mirrored central class pinned to zero for odd side length.  The
braid matrix at spectral parameter theta carries coefficient exp(m*theta)
("real" mode, nonunitary) or exp(i*m*theta) ("unitary" mode) on each
projector orbit.  Free parameters are counted by canonical class:
N^2/2 for even N and (N+3)(N-1)/2 for odd N.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Union

import numpy as np

from .errors import (
    AccuracyError,
    ConfigError,
    ConstructionError,
    DimensionError,
    ModeError,
)
from .linalg import dagger, max_abs_diff
from .projectors import (
    ProjectorFamily,
    mirror_index,
    pair_projector,
    projector_family,
)

Mode = str  # "real" | "unitary"
ParamKey = tuple[int, int, int]  # (i, j, epsilon)
ParamValue = Union[int, float, str, Fraction]

MODES = ("real", "unitary")

# exp(m*theta) must stay inside double range for |m| up to ~10
MAX_REAL_THETA = 50.0

_EPS_FROM_LABEL = {"+": +1, "-": -1, +1: +1, -1: -1, 1: +1}


def canonical_keys(dim: int) -> tuple[ParamKey, ...]:
    """Free-parameter classes: i, j up to ceil(dim/2), both signs, minus
    the pinned central class of odd dim."""
    if dim < 2:
        raise DimensionError("side length must be >= 2")
    half = (dim + 1) // 2
    center = half if dim % 2 else None
    keys = []
    for i in range(1, half + 1):
        for j in range(1, half + 1):
            if center is not None and i == center and j == center:
                continue
            for epsilon in (+1, -1):
                keys.append((i, j, epsilon))
    return tuple(keys)


def free_parameter_count(dim: int) -> int:
    """N^2/2 free exponents for even N, (N+3)(N-1)/2 for odd N."""
    return len(canonical_keys(dim))


def canonical_class(i: int, j: int, epsilon: int, dim: int) -> ParamKey:
    """Canonical representative of the mirror orbit of (i, j, epsilon)."""
    return (
        min(i, mirror_index(i, dim)),
        min(j, mirror_index(j, dim)),
        epsilon,
    )


def _parse_value(raw: ParamValue) -> tuple[float, Fraction | None]:
    """Return (float value, exact rational or None).

    Ints, Fractions, and "p/q" strings are exact; floats are taken at face
    value and never silently rationalized (commensurability analysis then
    reports "unknown").
    """
    if isinstance(raw, bool):
        raise ConfigError(f"parameter value {raw!r} is not a number")
    if isinstance(raw, int):
        return float(raw), Fraction(raw)
    if isinstance(raw, Fraction):
        return float(raw), raw
    if isinstance(raw, float):
        return raw, None
    if isinstance(raw, str):
        try:
            exact = Fraction(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"cannot parse rational value {raw!r}") from exc
        return float(exact), exact
    raise ConfigError(f"unsupported parameter value {raw!r}")


@dataclass(frozen=True, eq=False)
class ParameterSet:
    """Exponent grid for one braid family.

    ``values`` holds the canonical free values; ``exponents`` is the full
    (2, N, N) grid expanded by mirror symmetry (sign index 0 is +, 1 is -).
    ``exact_values`` is populated only when every input value was exact
    (int, Fraction, or "p/q" string).  ``overrides`` records deliberate
    symmetry violations injected for negative-control experiments; any
    override voids the mirror-symmetry guarantee.
    """

    dim: int
    mode: Mode
    values: dict[ParamKey, float]
    exponents: np.ndarray = field(repr=False)
    exact_values: dict[ParamKey, Fraction] | None = field(repr=False)
    overrides: tuple[tuple[int, int, int, float], ...] = ()

    @property
    def symmetric(self) -> bool:
        return not self.overrides

    def value(self, i: int, j: int, epsilon: int) -> float:
        """Exponent at any (i, j, epsilon), 1-based."""
        if not (1 <= i <= self.dim and 1 <= j <= self.dim):
            raise IndexError(f"indices ({i},{j}) out of range 1..{self.dim}")
        return float(self.exponents[0 if epsilon == +1 else 1, i - 1, j - 1])

    def digest(self) -> str:
        """Stable short fingerprint of (dim, mode, values, overrides)."""
        payload = repr(
            (
                self.dim,
                self.mode,
                sorted(self.values.items()),
                self.overrides,
            )
        ).encode()
        return hashlib.sha256(payload).hexdigest()[:16]

    def with_override(
        self, i: int, j: int, epsilon: int, value: float
    ) -> "ParameterSet":
        """Copy with one raw grid entry patched after symmetry expansion.

        This intentionally breaks the mirror constraint; the result is
        flagged via ``overrides`` and is meant for negative controls.
        """
        return make_parameters(
            self.dim,
            self.mode,
            self.values,
            overrides=self.overrides + ((i, j, epsilon, float(value)),),
        )


def make_parameters(
    dim: int,
    mode: Mode,
    values: Mapping[tuple, ParamValue],
    overrides: tuple[tuple[int, int, int, float], ...] = (),
) -> ParameterSet:
    """Build a ParameterSet from canonical free values.

    Keys are (i, j, epsilon) with i, j at most ceil(dim/2) and epsilon
    given as +1/-1 or "+"/"-"; missing classes default to zero.  For odd
    dim the central class must be absent or zero.  The full exponent grid
    is populated through mirror symmetry, then any ``overrides`` are
    patched in verbatim (see ParameterSet.with_override).
    """
    if mode not in MODES:
        raise ConfigError(f"mode must be one of {MODES}, got {mode!r}")
    allowed = set(canonical_keys(dim))
    half = (dim + 1) // 2
    center = (half, half) if dim % 2 else None
    parsed: dict[ParamKey, float] = {key: 0.0 for key in allowed}
    exact: dict[ParamKey, Fraction] | None = {key: Fraction(0) for key in allowed}
    for raw_key, raw_value in values.items():
        key = _normalize_key(raw_key)
        value, exact_value = _parse_value(raw_value)
        if key not in allowed:
            if center is not None and (key[0], key[1]) == center:
                if value != 0.0:
                    raise ConfigError(
                        f"central class (i={key[0]}, j={key[1]}, "
                        f"epsilon={'+' if key[2] > 0 else '-'}) must be zero "
                        f"for odd N={dim}"
                    )
                continue
            raise ConfigError(
                f"key (i={key[0]}, j={key[1]}) outside the canonical range "
                f"1..{half} for N={dim}"
            )
        parsed[key] = value
        if exact is not None and exact_value is not None:
            exact[key] = exact_value
        else:
            exact = None
    grid = np.zeros((2, dim, dim))
    for i in range(1, dim + 1):
        for j in range(1, dim + 1):
            for row, epsilon in enumerate((+1, -1)):
                cls = canonical_class(i, j, epsilon, dim)
                if center is not None and (cls[0], cls[1]) == center:
                    continue
                grid[row, i - 1, j - 1] = parsed[cls]
    for i, j, epsilon, value in overrides:
        if not (1 <= i <= dim and 1 <= j <= dim):
            raise ConfigError(f"override indices ({i},{j}) out of range 1..{dim}")
        grid[0 if epsilon == +1 else 1, i - 1, j - 1] = value
    grid.setflags(write=False)
    return ParameterSet(
        dim=dim,
        mode=mode,
        values=parsed,
        exponents=grid,
        exact_values=exact if not overrides else None,
        overrides=tuple(overrides),
    )


def _normalize_key(raw_key: tuple) -> ParamKey:
    try:
        i, j, eps = raw_key
        return int(i), int(j), _EPS_FROM_LABEL[eps]
    except (ValueError, TypeError, KeyError) as exc:
        raise ConfigError(f"malformed parameter key {raw_key!r}") from exc


@dataclass(frozen=True, eq=False)
class Generator:
    """Infinitesimal generator: braid matrix = exp(theta * matrix).

    Real mode gives a real matrix; unitary mode an anti-Hermitian one.
    """

    dim: int
    mode: Mode
    matrix: np.ndarray = field(repr=False)


@dataclass(frozen=True, eq=False)
class BraidFamily:
    """A parameter set bound to its projector basis; evaluates the braid
    matrix at any spectral parameter."""

    params: ParameterSet
    basis: ProjectorFamily

    @classmethod
    def create(cls, params: ParameterSet) -> "BraidFamily":
        return cls(params=params, basis=projector_family(params.dim, "unified"))

    @property
    def dim(self) -> int:
        return self.params.dim

    @property
    def mode(self) -> Mode:
        return self.params.mode

    def _coefficients(self, theta: float) -> tuple[np.ndarray, np.ndarray]:
        """Diagonal and antidiagonal coefficient grids at theta.

        diag(i,j) = (e(m+) + e(m-))/2 and anti(i,j) = (e(m+) - e(m-))/2
        with e(m) = exp(m*theta) or exp(i*m*theta) depending on mode.
        """
        mp = self.params.exponents[0]
        mm = self.params.exponents[1]
        if self.mode == "real":
            if abs(theta) > MAX_REAL_THETA:
                raise AccuracyError(
                    f"|theta| = {abs(theta):.3g} exceeds {MAX_REAL_THETA} "
                    "in real mode (overflow guard)"
                )
            ep, em = np.exp(mp * theta), np.exp(mm * theta)
        else:
            ep, em = np.exp(1j * mp * theta), np.exp(1j * mm * theta)
        if not (np.isfinite(ep).all() and np.isfinite(em).all()):
            raise AccuracyError("braid coefficients overflowed")
        return 0.5 * (ep + em), 0.5 * (ep - em)

    def matrix(self, theta: float) -> np.ndarray:
        """Braid matrix at theta (dim^2 x dim^2).

        Nonzero entries sit only on the main diagonal and the main
        antidiagonal of the product basis: position ((i,j),(i,j)) carries
        the symmetric coefficient of the class, ((i,j),(i~,j~)) the
        antisymmetric one.  Real mode returns float64, unitary complex128.
        theta = 0 gives the identity for any parameters.
        """
        diag, anti = self._coefficients(theta)
        size = self.dim * self.dim
        out = np.zeros((size, size), dtype=diag.dtype)
        idx = np.arange(size)
        out[idx, idx] += diag.ravel()
        # (i~,j~) flattens to size-1-r; the odd central point lands on the
        # diagonal where the two contributions add up to exp(0) = 1
        out[idx, size - 1 - idx] += anti.ravel()
        return out

    def matrix_from_basis(self, theta: float) -> np.ndarray:
        """Same matrix, rebuilt as an explicit sum over basis projectors.

        Slower reference path used to cross-validate ``matrix``.
        """
        size = self.dim * self.dim
        dtype = float if self.mode == "real" else complex
        out = np.zeros((size, size), dtype=dtype)
        for key, member in self.basis:
            m = self.params.value(key.i, key.j, key.epsilon)
            if self.mode == "real":
                c = np.exp(m * theta)
            else:
                c = np.exp(1j * m * theta)
            out = out + c * member
        return out

    def generator(self) -> Generator:
        """Generator whose exponential reproduces the family.

        Sums exponent-weighted basis projectors; in unitary mode the sum
        is multiplied by the imaginary unit, making it anti-Hermitian.
        """
        mp = self.params.exponents[0]
        mm = self.params.exponents[1]
        size = self.dim * self.dim
        x = np.zeros((size, size))
        idx = np.arange(size)
        x[idx, idx] += (0.5 * (mp + mm)).ravel()
        x[idx, size - 1 - idx] += (0.5 * (mp - mm)).ravel()
        if self.mode == "unitary":
            return Generator(dim=self.dim, mode=self.mode, matrix=1j * x)
        return Generator(dim=self.dim, mode=self.mode, matrix=x)


def even_form_matrix(family: BraidFamily, theta: float) -> np.ndarray:
    """Braid matrix via the even-dimension projector pairing.

    Independent construction path: sums exp(m(i,j,s)*theta) times the
    projector pair (i,j,s) + (i,j~,s) over i, j up to n.  Used to
    cross-validate ``BraidFamily.matrix``; requires even side length and
    an unbroken (symmetric) parameter set.
    """
    dim = family.dim
    if dim % 2:
        raise DimensionError("even-form construction requires even side length")
    n = dim // 2
    size = dim * dim
    dtype = float if family.mode == "real" else complex
    out = np.zeros((size, size), dtype=dtype)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for epsilon in (+1, -1):
                pair = pair_projector(i, j, epsilon, n) + pair_projector(
                    i, mirror_index(j, dim), epsilon, n
                )
                m = family.params.value(i, j, epsilon)
                if family.mode == "real":
                    out = out + np.exp(m * theta) * pair
                else:
                    out = out + np.exp(1j * m * theta) * pair
    return out


@dataclass(frozen=True)
class BlockStructureReport:
    """Sparsity/symmetry conformance of a built braid matrix.

    ``max_off_pattern`` is the largest magnitude found away from the main
    diagonal and antidiagonal; the asymmetry fields measure how far the
    diagonal and antidiagonal coefficient grids are from mirror-reflection
    invariance in each index.  ``conforms`` is True when everything is
    within tolerance; violations are reported, never raised.
    """

    dim: int
    tolerance: float
    max_off_pattern: float
    max_diagonal_asymmetry: float
    max_antidiagonal_asymmetry: float

    @property
    def conforms(self) -> bool:
        return (
            self.max_off_pattern <= self.tolerance
            and self.max_diagonal_asymmetry <= self.tolerance
            and self.max_antidiagonal_asymmetry <= self.tolerance
        )

    def to_json(self) -> dict:
        return {
            "N": self.dim,
            "tolerance": self.tolerance,
            "max_off_pattern": self.max_off_pattern,
            "max_diagonal_asymmetry": self.max_diagonal_asymmetry,
            "max_antidiagonal_asymmetry": self.max_antidiagonal_asymmetry,
            "conforms": self.conforms,
        }


def block_structure(
    matrix: np.ndarray, dim: int, tolerance: float = 1e-12
) -> BlockStructureReport:
    """Check the diagonal + antidiagonal pattern of a braid matrix.

    In block terms (dim x dim blocks of side dim) this is the familiar
    layout: diagonal blocks carrying diagonal entries, antidiagonal blocks
    carrying antidiagonal entries, with mirror-equal blocks.  Works for
    either parity.
    """
    size = dim * dim
    m = np.asarray(matrix)
    if m.shape != (size, size):
        raise DimensionError(
            f"expected a {size}x{size} matrix for side length {dim}, "
            f"got {m.shape}"
        )
    idx = np.arange(size)
    diag_grid = m[idx, idx].reshape(dim, dim).copy()
    anti_grid = m[idx, size - 1 - idx].reshape(dim, dim).copy()
    off = m.copy()
    off[idx, idx] = 0.0
    off[idx, size - 1 - idx] = 0.0
    if dim % 2:
        # central diagonal point doubles as its own antidiagonal point
        anti_grid[dim // 2, dim // 2] = 0.0
    diag_asym = max(
        float(np.abs(diag_grid - diag_grid[::-1, :]).max()),
        float(np.abs(diag_grid - diag_grid[:, ::-1]).max()),
    )
    anti_asym = max(
        float(np.abs(anti_grid - anti_grid[::-1, :]).max()),
        float(np.abs(anti_grid - anti_grid[:, ::-1]).max()),
    )
    return BlockStructureReport(
        dim=dim,
        tolerance=tolerance,
        max_off_pattern=float(np.abs(off).max()),
        max_diagonal_asymmetry=diag_asym,
        max_antidiagonal_asymmetry=anti_asym,
    )


_REFERENCE_CHECK_TOL = 1e-13


@lru_cache(maxsize=None)
def reference_projectors(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Complementary projector pair (plus, minus) and the real rotation
    generator of the single-parameter reference family on N = 2n.

    The pair is obtained by summing the phased family over each sign.
    The generator is -i*(plus - minus); it must come out real and
    antisymmetric with square -I, and the pair must pass all projector
    checks, otherwise the regrouping assumption is wrong and a
    ConstructionError is raised.
    """
    fam = projector_family(2 * n, "Q")
    size = (2 * n) ** 2
    plus = np.zeros((size, size), dtype=complex)
    minus = np.zeros((size, size), dtype=complex)
    for key, member in fam:
        if key.epsilon == +1:
            plus = plus + member
        else:
            minus = minus + member
    rot = -1j * (plus - minus)
    eye = np.eye(size)
    checks = {
        "plus idempotent": max_abs_diff(plus @ plus, plus),
        "minus idempotent": max_abs_diff(minus @ minus, minus),
        "orthogonal": float(np.abs(plus @ minus).max()),
        "complete": max_abs_diff(plus + minus, eye),
        "generator real": float(np.abs(rot.imag).max()),
        "generator squares to -I": max_abs_diff(rot @ rot, -eye),
    }
    bad = {k: v for k, v in checks.items() if v > _REFERENCE_CHECK_TOL}
    if bad:
        raise ConstructionError(f"reference regrouping failed checks: {bad}")
    rot_real = np.ascontiguousarray(rot.real)
    for m in (plus, minus, rot_real):
        m.setflags(write=False)
    return plus, minus, rot_real


def reference_matrix(n: int, z: float) -> np.ndarray:
    """Linear-form reference braid matrix I + z * rotation generator.

    Real for real z; satisfies R(z)^T R(z) = (1 + z^2) I and the
    projective composition law R(z1) R(z2) = (1 - z1 z2) R(z3) with
    z3 = (z1 + z2)/(1 - z1 z2).
    """
    if not np.isfinite(z):
        raise ValueError("z must be finite")
    _, _, rot = reference_projectors(n)
    return np.eye(rot.shape[0]) + z * rot


def reference_phase_matrix(n: int, z: float) -> np.ndarray:
    """Phase-form reference matrix: conjugate unit phases on the pair.

    Uses the principal branch of ((1 - iz)/(1 + iz))^(1/2); equals
    (1 + z^2)^(-1/2) times reference_matrix(n, z).
    """
    if not np.isfinite(z):
        raise ValueError("z must be finite")
    plus, minus, _ = reference_projectors(n)
    phase = np.sqrt((1.0 - 1j * z) / (1.0 + 1j * z))
    return phase * plus + np.conjugate(phase) * minus


def unitarity_defect(family: BraidFamily, theta: float) -> float:
    """Raw max-norm deviation of dagger(R) @ R from the identity.

    Meaningful in either mode: unitary families return rounding noise,
    real-mode families a hyperbolically large defect (negative control).
    """
    r = family.matrix(theta)
    return max_abs_diff(dagger(r) @ r, np.eye(r.shape[0]))


def require_mode(params_or_family, mode: Mode) -> None:
    """Raise ModeError unless the object is in the requested mode."""
    actual = getattr(params_or_family, "mode")
    if actual != mode:
        raise ModeError(f"operation requires {mode} mode, got {actual} mode")
