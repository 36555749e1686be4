"""
The level-ell fusion ring of LSU(2N) and the twisted module over it.

Matrix convention: for an acting label f, ``M[g, h]`` is the multiplicity of
g in f [x] h. Columns are inputs, rows are outputs, both indexed by the
canonical basis order of `sigcore`.

Two independent routes produce the module matrices:

- Route A (combinatorial): the signed truncation of Sundaram's rule,
  available for the exterior powers.
- Route B (evaluation): the characters psi_h restricted to the evaluation
  set form a basis, so multiplication by chi_f is diagonal there:
  Psi M = Lambda_f Psi. Route B is authoritative for general f.

General untwisted fusion expresses chi_f as the dual Jacobi-Trudi
determinant in the exterior powers and evaluates it on the commuting
fundamental fusion matrices.
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import pandas as pd
from scipy.linalg import lu_factor, lu_solve

from .branching import ReflectionError, pieri_level, sundaram_level
from .characters import (
    EvaluationError,
    chi_diagonal,
    chi_gl,
    eval_point,
    exterior_power,
    origin_point,
    points_distinguished,
    psi_matrix,
    psi_sp,
    quantum_dims,
    sp_fundamental_check,
)
from .config import DEFAULT_TOLERANCES, LevelContext, Tolerances
from .sigcore import (
    FormalCombination,
    GLSignature,
    SpSignature,
    check_gl,
    check_sp,
    dual_gl,
    enumerate_eval_set,
    enumerate_paired,
    enumerate_twisted_basis,
    enumerate_untwisted_basis,
    enumerate_wall,
)

logger = logging.getLogger(__name__)


class FusionError(RuntimeError):
    """The Jacobi-Trudi expansion produced a negative structure constant."""


class RouteFailure(RuntimeError):
    """The evaluation route did not produce a nonnegative integer matrix."""


class BasisFailure(RouteFailure):
    """The character matrix Psi is numerically singular."""


@dataclass(frozen=True, eq=False)
class FusionMatrix:
    """
    Integer matrix of the action of one label on a canonical basis.

    Attributes:
        entries: Square integer matrix, ``entries[g, h]`` = mult of g in label [x] h
        basis: Canonical basis indexing rows and columns
        label: The acting signature
        residual: Largest rounding residual (evaluation route only)
    """

    entries: np.ndarray
    basis: tuple
    label: GLSignature
    residual: float = field(default=0.0)

    def __post_init__(self):
        size = len(self.basis)
        if self.entries.shape != (size, size):
            raise ValueError(
                f"entries of shape {self.entries.shape} do not match basis of size {size}"
            )

    def index(self, label) -> int:
        return self.basis.index(label)

    def column(self, h) -> FormalCombination:
        col = self.entries[:, self.index(h)]
        return FormalCombination(
            (self.basis[i], int(m)) for i, m in enumerate(col) if m != 0
        )

    def to_json(self) -> list[list[int]]:
        return self.entries.astype(int).tolist()

    def to_frame(self) -> pd.DataFrame:
        keys = [b.key() for b in self.basis]
        return pd.DataFrame(self.entries, index=keys, columns=keys)


# ============================================================================
# Untwisted ring
# ============================================================================


def _check_permissible(label, ctx: LevelContext) -> None:
    if not label.is_permissible(ctx.level):
        raise ValueError(f"{label} is not permissible at level {ctx.level}")


def fundamental_matrix_untwisted(k: int, ctx: LevelContext) -> FusionMatrix:
    """Matrix of H_k [x] (.) on the untwisted basis (k = 0 and 2N give the identity)."""
    return _fundamental_untwisted(k, ctx)


@lru_cache(maxsize=256)
def _fundamental_untwisted(k: int, ctx: LevelContext) -> FusionMatrix:
    basis = tuple(enumerate_untwisted_basis(ctx))
    position = {f: i for i, f in enumerate(basis)}
    entries = np.zeros((len(basis), len(basis)), dtype=np.int64)
    for col, h in enumerate(basis):
        for g, mult in pieri_level(h, k, ctx).items():
            entries[position[g], col] += mult
    return FusionMatrix(entries=entries, basis=basis, label=exterior_power(k, ctx))


def _permutation_sign(perm: tuple[int, ...]) -> int:
    inversions = sum(
        1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j]
    )
    return -1 if inversions % 2 else 1


def conjugate_partition(parts: tuple[int, ...]) -> tuple[int, ...]:
    """Column lengths of the Young diagram with row lengths `parts`."""
    if not parts or parts[0] <= 0:
        return ()
    return tuple(sum(1 for p in parts if p >= c) for c in range(1, parts[0] + 1))


def _jacobi_trudi(f: GLSignature, ctx: LevelContext) -> np.ndarray:
    size = len(basis_untwisted(ctx))

    def e(k: int) -> np.ndarray:
        if k < 0 or k > ctx.rank:
            return np.zeros((size, size), dtype=np.int64)
        return _fundamental_untwisted(k, ctx).entries

    columns = conjugate_partition(f.parts)
    m = len(columns)
    total = np.zeros((size, size), dtype=np.int64)
    for perm in itertools.permutations(range(m)):
        term = np.eye(size, dtype=np.int64)
        for i in range(m):
            term = term @ e(columns[i] - i + perm[i])
        total += _permutation_sign(perm) * term
    return total


@lru_cache(maxsize=64)
def basis_untwisted(ctx: LevelContext) -> tuple[GLSignature, ...]:
    return tuple(enumerate_untwisted_basis(ctx))


@lru_cache(maxsize=64)
def basis_twisted(ctx: LevelContext) -> tuple[SpSignature, ...]:
    return tuple(enumerate_twisted_basis(ctx))


@lru_cache(maxsize=4096)
def untwisted_matrix(f: GLSignature, ctx: LevelContext) -> FusionMatrix:
    """
    Fusion matrix N_f of H_f [x] (.) on the untwisted basis.

    Raises:
        FusionError: If the determinant expansion has a negative entry
    """
    f = check_gl(f, ctx)
    _check_permissible(f, ctx)
    entries = _jacobi_trudi(f, ctx)
    if (entries < 0).any():
        raise FusionError(f"negative structure constant in N_{f.key()} at {ctx}")
    return FusionMatrix(entries=entries, basis=basis_untwisted(ctx), label=f)


def general_fusion_untwisted(
    f: GLSignature, g: GLSignature, ctx: LevelContext
) -> FormalCombination[GLSignature]:
    """H_f [x] H_g as a nonnegative combination of untwisted basis elements."""
    g = check_gl(g, ctx)
    _check_permissible(g, ctx)
    return untwisted_matrix(f, ctx).column(g)


def structure_constants(ctx: LevelContext) -> np.ndarray:
    """c[f, g, e] = multiplicity of e in H_f [x] H_g, over the untwisted basis."""
    stack = np.stack([untwisted_matrix(f, ctx).entries for f in basis_untwisted(ctx)])
    return stack.transpose(0, 2, 1)


def verlinde_su2(level: int, a: int, b: int) -> FormalCombination[GLSignature]:
    """
    Closed-form SU(2) level-ell fusion of Dynkin labels a and b.

    c runs over |a - b| <= c <= min(a + b, 2 level - a - b) in steps of 2.
    """
    if not (0 <= a <= level and 0 <= b <= level):
        raise ValueError(f"labels must lie in [0, {level}], got {a}, {b}")
    top = min(a + b, 2 * level - a - b)
    return FormalCombination(
        (GLSignature((c, 0)), 1) for c in range(abs(a - b), top + 1, 2)
    )


# ============================================================================
# Twisted module
# ============================================================================


def module_matrix_routeA(k: int, ctx: LevelContext) -> FusionMatrix:
    """Matrix of H_k [x] (.) on the twisted basis from the truncated Sundaram rule."""
    basis = basis_twisted(ctx)
    position = {h: i for i, h in enumerate(basis)}
    entries = np.zeros((len(basis), len(basis)), dtype=np.int64)
    for col, h in enumerate(basis):
        for g, mult in sundaram_level(h, k, ctx).items():
            entries[position[g], col] += mult
    return FusionMatrix(entries=entries, basis=basis, label=exterior_power(k, ctx))


@dataclass(frozen=True, eq=False)
class PsiFactor:
    """LU factorization of Psi with its conditioning."""

    psi: np.ndarray
    lu: tuple
    det: float
    cond: float


@lru_cache(maxsize=64)
def psi_factor(ctx: LevelContext) -> PsiFactor:
    """
    Factorize Psi[g, h] = psi_h(D(g)).

    Raises:
        BasisFailure: If Psi is not square or |det Psi| is below the floor
    """
    psi = psi_matrix(ctx)
    if psi.shape[0] != psi.shape[1]:
        raise BasisFailure(
            f"{psi.shape[0]} evaluation points but {psi.shape[1]} permissible signatures"
        )
    det = float(np.linalg.det(psi))
    if abs(det) < DEFAULT_TOLERANCES.det_floor:
        raise BasisFailure(f"|det Psi| = {abs(det):.3e} at {ctx}")
    return PsiFactor(psi=psi, lu=lu_factor(psi), det=det, cond=float(np.linalg.cond(psi)))


def module_matrix_routeB(
    f: GLSignature, ctx: LevelContext, tol: Tolerances = DEFAULT_TOLERANCES
) -> FusionMatrix:
    """
    Matrix of H_f [x] (.) on the twisted basis from Psi M = Lambda_f Psi.

    Raises:
        BasisFailure: If Psi is singular
        RouteFailure: If M is not within `tol.rounding` of a nonnegative
            integer matrix
    """
    f = check_gl(f, ctx)
    _check_permissible(f, ctx)
    return _route_b(f, ctx, tol)


@lru_cache(maxsize=4096)
def _route_b(f: GLSignature, ctx: LevelContext, tol: Tolerances) -> FusionMatrix:
    factor = psi_factor(ctx)
    rhs = chi_diagonal(f, ctx)[:, np.newaxis] * factor.psi
    solution = lu_solve(factor.lu, rhs)
    rounded = np.rint(solution)
    residual = float(np.max(np.abs(solution - rounded)))
    if residual >= tol.rounding:
        raise RouteFailure(
            f"rounding residual {residual:.3e} for chi_{f.key()} at {ctx}"
        )
    entries = rounded.astype(np.int64)
    if (entries < 0).any():
        raise RouteFailure(f"negative module coefficient for chi_{f.key()} at {ctx}")
    return FusionMatrix(
        entries=entries, basis=basis_twisted(ctx), label=f, residual=residual
    )


def fuse_module(
    f: GLSignature, h: SpSignature, ctx: LevelContext
) -> FormalCombination[SpSignature]:
    """H_f [x] K_h as a combination of twisted basis elements (evaluation route)."""
    h = check_sp(h, ctx)
    _check_permissible(h, ctx)
    return module_matrix_routeB(f, ctx).column(h)


# ============================================================================
# K_0 [x] K_0
# ============================================================================


@dataclass(frozen=True)
class K0Consistency:
    """C^2 = d(K_0)^2 against the sum of chi_f(D(0)) over the paired set."""

    c_squared: float
    paired_sum: float

    @property
    def abs_diff(self) -> float:
        return abs(self.c_squared - self.paired_sum)

    def to_json(self) -> dict:
        return {
            "cSquared": self.c_squared,
            "pairedSum": self.paired_sum,
            "absDiff": self.abs_diff,
        }


def k0_square(
    ctx: LevelContext,
) -> tuple[FormalCombination[GLSignature], K0Consistency]:
    """Decomposition of K_0 [x] K_0 over the paired signatures, with its dimension check."""
    paired = enumerate_paired(ctx)
    pt0 = origin_point(ctx)
    record = K0Consistency(
        c_squared=quantum_dims(ctx).C ** 2,
        paired_sum=sum(chi_gl(f, pt0).real for f in paired),
    )
    return FormalCombination((f, 1) for f in paired), record


def twisted_dims_sum_check(ctx: LevelContext) -> tuple[float, float]:
    """(sum d(K_h)^2, sum d(H_f)^2)."""
    dims = quantum_dims(ctx)
    return (
        float(np.sum(dims.twisted_vector() ** 2)),
        float(np.sum(dims.untwisted_vector() ** 2)),
    )


# ============================================================================
# Verification suite
# ============================================================================


@dataclass
class CheckResult:
    """
    One named check.

    Attributes:
        name: Check identifier
        passed: Whether the measured residual is within tolerance
        residual: Measured residual (inf when the check could not run)
        tolerance: Threshold the residual is compared against
        gating: Whether a failure fails the report
        detail: Human-readable context or the captured error
    """

    name: str
    passed: bool
    residual: float
    tolerance: float
    gating: bool = True
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "gating": self.gating,
            "detail": self.detail,
        }


@dataclass
class VerifyReport:
    """All checks for one (N, level) cell."""

    n: int
    level: int
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if c.gating)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if c.gating and not c.passed]

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "N": self.n,
            "level": self.level,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame([c.to_json() for c in self.checks])
        frame.insert(0, "level", self.level)
        frame.insert(0, "N", self.n)
        return frame


_CHECK_ERRORS = (EvaluationError, RouteFailure, ReflectionError, FusionError)


def _run_check(report: VerifyReport, name: str, tolerance: float, body, gating=True):
    """Run `body() -> (residual, detail)` and record it; errors become failures."""
    try:
        residual, detail = body()
        passed = bool(residual <= tolerance)
    except _CHECK_ERRORS as exc:
        logger.error("Check %s failed at N=%d level=%d: %s", name, report.n, report.level, exc)
        residual, detail, passed = float("inf"), f"{type(exc).__name__}: {exc}", False
    report.checks.append(
        CheckResult(
            name=name,
            passed=passed,
            residual=float(residual),
            tolerance=tolerance,
            gating=gating,
            detail=detail,
        )
    )


def verify_suite(ctx: LevelContext, tol: Tolerances = DEFAULT_TOLERANCES) -> VerifyReport:
    """
    Run every consistency check for one (N, level) cell.

    Never raises on a failed check; failures are recorded in the report.
    """
    report = VerifyReport(n=ctx.n, level=ctx.level)
    untwisted = basis_untwisted(ctx)
    twisted = basis_twisted(ctx)

    def route_agreement():
        worst, residual = 0, 0.0
        for k in range(1, ctx.rank):
            a = module_matrix_routeA(k, ctx)
            b = module_matrix_routeB(exterior_power(k, ctx), ctx, tol)
            worst = max(worst, int(np.max(np.abs(a.entries - b.entries))))
            residual = max(residual, b.residual)
        return worst, f"max rounding residual {residual:.2e}"

    _run_check(report, "route_agreement", 0, route_agreement)

    def perron_frobenius():
        dims = quantum_dims(ctx)
        d_twisted = dims.twisted_vector()
        d_untwisted = dims.untwisted_vector()
        worst = 0.0
        for f in untwisted:
            d_f = dims.untwisted[f]
            module = module_matrix_routeB(f, ctx, tol).entries
            ring = untwisted_matrix(f, ctx).entries
            worst = max(
                worst,
                np.max(np.abs(module.T @ d_twisted - d_f * d_twisted))
                / np.max(np.abs(d_twisted)),
                np.max(np.abs(ring.T @ d_untwisted - d_f * d_untwisted))
                / np.max(np.abs(d_untwisted)),
            )
        return float(worst), f"{len(untwisted)} labels"

    _run_check(report, "perron_frobenius", tol.pf_relative, perron_frobenius)

    def boundary_vanishing():
        wall = enumerate_wall(ctx)
        points = [eval_point(g, ctx) for g in enumerate_eval_set(ctx)]
        worst = max(
            (abs(psi_sp(h, pt).value) for h in wall for pt in points), default=0.0
        )
        return float(worst), f"{len(wall)} wall signatures x {len(points)} points"

    _run_check(report, "boundary_vanishing", tol.assert_abs, boundary_vanishing)

    def basis_property():
        n_points = len(enumerate_eval_set(ctx))
        if n_points != len(twisted):
            return float("inf"), f"|S| = {n_points} but {len(twisted)} permissible h"
        factor = psi_factor(ctx)
        if factor.cond >= tol.cond_ceiling:
            return float("inf"), f"condition number {factor.cond:.3e}"
        # residual reported as 1/|det| so that "small is good" holds
        return 1.0 / abs(factor.det), (
            f"|det Psi| = {abs(factor.det):.3e}, cond = {factor.cond:.3e}"
        )

    _run_check(report, "basis_property", 1.0 / tol.det_floor, basis_property)

    def ring_action():
        modules = np.stack([module_matrix_routeB(f, ctx, tol).entries for f in untwisted])
        c = structure_constants(ctx)
        lhs = np.einsum("fij,gjk->fgik", modules, modules)
        rhs = np.einsum("fge,eik->fgik", c, modules)
        return int(np.max(np.abs(lhs - rhs))), f"{len(untwisted) ** 2} pairs"

    _run_check(report, "ring_action", 0, ring_action)

    def k0_consistency():
        _, record = k0_square(ctx)
        return record.abs_diff, (
            f"C^2 = {record.c_squared:.9f}, paired sum = {record.paired_sum:.9f}"
        )

    _run_check(report, "k0_square", tol.k0_consistency, k0_consistency)

    def commutative_associative():
        c = structure_constants(ctx)
        worst = int(np.max(np.abs(c - c.transpose(1, 0, 2))))
        for f in range(len(untwisted)):
            left = np.einsum("ge,ehx->ghx", c[f], c)
            right = np.einsum("ghe,ex->ghx", c, c[f])
            worst = max(worst, int(np.max(np.abs(left - right))))
        return worst, f"{len(untwisted) ** 3} triples"

    _run_check(report, "commutative_associative", 0, commutative_associative)

    def matrices_commute():
        worst = 0
        for stack in (
            np.stack([untwisted_matrix(f, ctx).entries for f in untwisted]),
            np.stack([module_matrix_routeB(f, ctx, tol).entries for f in untwisted]),
        ):
            for a in stack:
                worst = max(
                    worst, int(np.max(np.abs(np.einsum("ij,gjk->gik", a, stack) - stack @ a)))
                )
        return worst, "untwisted and module matrices"

    _run_check(report, "matrices_commute", 0, matrices_commute)

    def duality():
        worst = 0
        for f in untwisted:
            lhs = untwisted_matrix(dual_gl(f), ctx).entries
            worst = max(worst, int(np.max(np.abs(lhs - untwisted_matrix(f, ctx).entries.T))))
        return worst, "N_{f*} = N_f^T"

    _run_check(report, "duality", 0, duality)

    def distinguished():
        gap = points_distinguished(ctx)
        # residual is the inverse gap so that distinct points pass
        return (0.0 if gap == float("inf") else 1.0 / gap), f"min gap {gap:.3e}"

    _run_check(report, "points_distinguished", 1.0 / tol.rounding, distinguished)

    def dims_sums():
        dims = quantum_dims(ctx)
        twisted_sq, untwisted_sq = twisted_dims_sum_check(ctx)
        return abs(twisted_sq - untwisted_sq), f"C = {dims.C:.9f}"

    _run_check(report, "quantum_dims", tol.k0_consistency, dims_sums)

    def fundamentals():
        return sp_fundamental_check(ctx), "psi_(1^k) vs chi_k - chi_(k-2)"

    _run_check(report, "sp_fundamentals", tol.assert_abs, fundamentals, gating=False)

    for failure in report.failures:
        logger.warning("N=%d level=%d: %s failed (%s)", ctx.n, ctx.level, failure.name, failure.detail)
    return report
