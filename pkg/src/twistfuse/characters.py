"""
Weyl characters of SU(2N) and Sp(N) at the evaluation points D(g).

For g in the evaluation set, D(g) is the diagonal symplectic matrix with
eigenvalues zeta_i^{+-1}, zeta_i = exp(2 pi i x_i), x_i = (g_i + N + 1/2 - i) / kappa.
Angles are kept as exact fractions (in turns) and only turned into complex
numbers when a character is evaluated.

    chi_f(z)    = det(z_j^{f_i + 2N - i}) / prod_{i<j} (z_i - z_j)
    psi_h(zeta) = det(zeta_j^{m_i} - zeta_j^{-m_i}) /
                  [prod_i (zeta_i - zeta_i^-1) prod_{i<j} (zeta_i + zeta_i^-1 - zeta_j - zeta_j^-1)]

with m_i = h_i + N - i + 1. D(0) realizes both distinguished elements whose
traces give the quantum dimensions.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
import pandas as pd

from .config import DEFAULT_TOLERANCES, LevelContext
from .sigcore import (
    GLSignature,
    HalfIntVector,
    SpSignature,
    enumerate_eval_set,
    enumerate_paired,
    enumerate_twisted_basis,
    enumerate_untwisted_basis,
)

logger = logging.getLogger(__name__)


class EvaluationError(RuntimeError):
    """A character evaluation broke one of its numeric invariants."""


@dataclass(frozen=True)
class EvalPoint:
    """
    The point D(g).

    Attributes:
        angles: x_1 > ... > x_N as exact fractions of a full turn
        origin: The evaluation-set vector g it came from
    """

    angles: tuple[Fraction, ...]
    origin: HalfIntVector

    @property
    def n(self) -> int:
        return len(self.angles)

    def zetas(self) -> np.ndarray:
        """zeta_1, ..., zeta_N as unit complex numbers."""
        turns = np.array([float(x) for x in self.angles])
        return np.exp(2j * np.pi * turns)

    def eigenvalues(self) -> np.ndarray:
        """All 2N eigenvalues: zeta_1, ..., zeta_N, zeta_N^-1, ..., zeta_1^-1."""
        zetas = self.zetas()
        return np.concatenate([zetas, np.conj(zetas[::-1])])


@dataclass(frozen=True)
class CharValue:
    """A character value together with the tolerance its reality is judged by."""

    value: complex
    tol: float = DEFAULT_TOLERANCES.assert_abs

    @property
    def real(self) -> float:
        return float(self.value.real)

    @property
    def imag(self) -> float:
        return float(self.value.imag)

    def is_real(self) -> bool:
        return abs(self.imag) < self.tol

    def __float__(self) -> float:
        return self.real


def eval_point(g: HalfIntVector, ctx: LevelContext) -> EvalPoint:
    """
    Build D(g) with exact rational angles.

    Raises:
        ValueError: If g does not have N parts or exceeds level/2
        EvaluationError: If the strict ordering 0 < x_N < ... < x_1 < 1/2 fails
    """
    if len(g.doubled) != ctx.n:
        raise ValueError(f"evaluation vector {g} must have N = {ctx.n} parts")
    if not g.fits(ctx.level):
        raise ValueError(f"evaluation vector {g} has g_1 > level/2 = {ctx.level}/2")

    angles = tuple(
        Fraction(d + 2 * ctx.n + 1 - 2 * i, 2 * ctx.kappa)
        for i, d in enumerate(g.doubled, start=1)
    )
    ordered = all(angles[i] > angles[i + 1] for i in range(len(angles) - 1))
    if not (ordered and angles[-1] > 0 and angles[0] < Fraction(1, 2)):
        raise EvaluationError(f"angles {angles} of D{g} are not strictly inside (0, 1/2)")
    return EvalPoint(angles=angles, origin=g)


def _checked_quotient(numerator: complex, denominator: complex, what: str) -> complex:
    if abs(denominator) < DEFAULT_TOLERANCES.denominator_floor:
        raise EvaluationError(
            f"Weyl denominator {abs(denominator):.3e} below floor while evaluating {what}"
        )
    return complex(numerator / denominator)


@lru_cache(maxsize=65536)
def _chi_value(parts: tuple[int, ...], pt: EvalPoint) -> complex:
    z = pt.eigenvalues()
    rank = len(z)
    exponents = np.array([parts[i] + rank - 1 - i for i in range(rank)])
    numerator = np.linalg.det(z[np.newaxis, :] ** exponents[:, np.newaxis])
    denominator = np.prod([z[i] - z[j] for i in range(rank) for j in range(i + 1, rank)])
    return _checked_quotient(numerator, denominator, f"chi_{parts}")


@lru_cache(maxsize=65536)
def _psi_value(parts: tuple[int, ...], pt: EvalPoint) -> complex:
    zeta = pt.zetas()
    n = len(zeta)
    shifted = np.array([parts[i] + n - i for i in range(n)])
    powers = zeta[np.newaxis, :] ** shifted[:, np.newaxis]
    numerator = np.linalg.det(powers - 1.0 / powers)
    traces = zeta + 1.0 / zeta
    denominator = np.prod(zeta - 1.0 / zeta) * np.prod(
        [traces[i] - traces[j] for i in range(n) for j in range(i + 1, n)]
    )
    return _checked_quotient(numerator, denominator, f"psi_{parts}")


def chi_gl(f: GLSignature, pt: EvalPoint) -> CharValue:
    """SU(2N) character of V_f at D(g) (f need not be normalized)."""
    if len(f.parts) != 2 * pt.n:
        raise ValueError(f"{f} must have 2N = {2 * pt.n} parts to evaluate at D{pt.origin}")
    return CharValue(_chi_value(f.parts, pt))


def psi_sp(h: SpSignature, pt: EvalPoint) -> CharValue:
    """Sp(N) character of W_h at D(g)."""
    if len(h.parts) != pt.n:
        raise ValueError(f"{h} must have N = {pt.n} parts to evaluate at D{pt.origin}")
    return CharValue(_psi_value(h.parts, pt))


def weyl_dim(group: str, sig, n: int) -> int:
    """
    Classical Weyl dimension.

    Args:
        group: "gl" for SU(n) / GL(n) with n rows, "sp" for Sp(n) with n rows
        sig: Signature or tuple of parts
        n: Number of rows (2N for "gl", N for "sp")
    """
    parts = tuple(getattr(sig, "parts", sig))
    if len(parts) != n:
        raise ValueError(f"signature {parts} must have {n} parts")

    value = Fraction(1)
    if group == "gl":
        for i in range(n):
            for j in range(i + 1, n):
                value *= Fraction(parts[i] - parts[j] + j - i, j - i)
    elif group == "sp":
        # rho-shifted parts l_i = h_i + n + 1 - i (1-based i)
        shifted = [parts[i] + n - i for i in range(n)]
        for i in range(n):
            value *= Fraction(shifted[i], n - i)
            for j in range(i + 1, n):
                value *= Fraction(
                    (shifted[i] - shifted[j]) * (shifted[i] + shifted[j]),
                    (j - i) * (2 * n - i - j),
                )
    else:
        raise ValueError(f"group must be 'gl' or 'sp', got {group!r}")

    if value.denominator != 1 or value <= 0:
        raise EvaluationError(f"Weyl dimension of {parts} for {group}({n}) is {value}")
    return int(value)


# ============================================================================
# Quantum dimensions
# ============================================================================


def origin_point(ctx: LevelContext) -> EvalPoint:
    """D(0)."""
    return eval_point(HalfIntVector((0,) * ctx.n), ctx)


@dataclass(frozen=True)
class QuantumDims:
    """
    Quantum dimensions of both bases.

    Attributes:
        untwisted: d(H_f) = chi_f(D(0))
        twisted: d(K_h) = C psi_h(D(0))
        C: Normalizing constant with sum d(K_h)^2 = sum d(H_f)^2
        psi_origin: psi_h(D(0)) before scaling by C
    """

    untwisted: dict[GLSignature, float]
    twisted: dict[SpSignature, float]
    C: float
    psi_origin: dict[SpSignature, float] = field(repr=False)

    def untwisted_vector(self) -> np.ndarray:
        return np.array(list(self.untwisted.values()))

    def twisted_vector(self) -> np.ndarray:
        return np.array(list(self.twisted.values()))


def quantum_dims(ctx: LevelContext) -> QuantumDims:
    """
    Quantum dimensions d(H_f), d(K_h) and the constant C.

    Raises:
        EvaluationError: If any evaluation at D(0) is not strictly positive
    """
    pt0 = origin_point(ctx)
    untwisted = {f: chi_gl(f, pt0).real for f in enumerate_untwisted_basis(ctx)}
    psi0 = {h: psi_sp(h, pt0).real for h in enumerate_twisted_basis(ctx)}

    for label, value in [*untwisted.items(), *psi0.items()]:
        if not value > 0:
            raise EvaluationError(f"character of {label} at D(0) is {value}, not positive")

    C = math.sqrt(
        sum(v * v for v in untwisted.values()) / sum(v * v for v in psi0.values())
    )
    twisted = {h: C * v for h, v in psi0.items()}
    return QuantumDims(untwisted=untwisted, twisted=twisted, C=C, psi_origin=psi0)


# ============================================================================
# Character tables
# ============================================================================


def psi_matrix(ctx: LevelContext) -> np.ndarray:
    """
    Psi[g, h] = psi_h(D(g)) over evaluation set x twisted basis.

    Raises:
        EvaluationError: If an entry has a non-negligible imaginary part
    """
    points = [eval_point(g, ctx) for g in enumerate_eval_set(ctx)]
    basis = enumerate_twisted_basis(ctx)
    values = [[psi_sp(h, pt) for h in basis] for pt in points]
    for row in values:
        for value in row:
            if not value.is_real():
                raise EvaluationError(f"imaginary part {value.imag:.3e} in Psi")
    return np.array([[v.real for v in row] for row in values])


def chi_diagonal(f: GLSignature, ctx: LevelContext) -> np.ndarray:
    """chi_f(D(g)) for every g in the evaluation set."""
    values = [chi_gl(f, eval_point(g, ctx)) for g in enumerate_eval_set(ctx)]
    for value in values:
        if not value.is_real():
            raise EvaluationError(f"imaginary part {value.imag:.3e} in chi_{f.key()}")
    return np.array([v.real for v in values])


def character_table(ctx: LevelContext) -> pd.DataFrame:
    """Labelled Psi: rows are points g, columns are twisted signatures h."""
    return pd.DataFrame(
        psi_matrix(ctx),
        index=pd.Index([g.key() for g in enumerate_eval_set(ctx)], name="g"),
        columns=pd.Index([h.key() for h in enumerate_twisted_basis(ctx)], name="h"),
    )


def exterior_power(k: int, ctx: LevelContext) -> GLSignature:
    """Signature (1^k, 0^(2N-k)) of Lambda^k C^2N."""
    if not 0 <= k <= ctx.rank:
        raise ValueError(f"k must lie in [0, {ctx.rank}], got {k}")
    return GLSignature((1,) * k + (0,) * (ctx.rank - k))


def sp_fundamental_check(ctx: LevelContext) -> float:
    """
    Largest deviation of psi_(1^k) from chi_k - chi_(k-2) on the evaluation set.

    The fundamental Sp(N) representations are the primitive parts of the
    exterior powers, so the deviation is rounding noise.
    """
    worst = 0.0
    for g in enumerate_eval_set(ctx):
        pt = eval_point(g, ctx)
        for k in range(1, ctx.n + 1):
            fundamental = SpSignature((1,) * k + (0,) * (ctx.n - k))
            expected = chi_gl(exterior_power(k, ctx), pt).value
            if k >= 2:
                expected -= chi_gl(exterior_power(k - 2, ctx), pt).value
            worst = max(worst, abs(psi_sp(fundamental, pt).value - expected))
    return worst


def points_distinguished(ctx: LevelContext) -> float:
    """
    Smallest distance between the vectors (chi_1, ..., chi_N) at two
    different evaluation points (inf for a single point).
    """
    vectors = [
        np.array(
            [chi_gl(exterior_power(k, ctx), eval_point(g, ctx)).real for k in range(1, ctx.n + 1)]
        )
        for g in enumerate_eval_set(ctx)
    ]
    gap = math.inf
    for i in range(len(vectors)):
        for j in range(i + 1, len(vectors)):
            gap = min(gap, float(np.max(np.abs(vectors[i] - vectors[j]))))
    return gap


# ============================================================================
# Closed-form diagnostics
# ============================================================================


@dataclass(frozen=True)
class DiagnosticPair:
    name: str
    direct: float
    closed_form: float

    @property
    def abs_diff(self) -> float:
        return abs(self.direct - self.closed_form)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "direct": self.direct,
            "closedForm": self.closed_form,
            "absDiff": self.abs_diff,
        }


@dataclass(frozen=True)
class DiagnosticsReport:
    n: int
    level: int
    pairs: list[DiagnosticPair]

    def pair(self, name: str) -> DiagnosticPair:
        for p in self.pairs:
            if p.name == name:
                return p
        raise KeyError(name)

    def to_json(self) -> dict:
        return {"N": self.n, "level": self.level, "pairs": [p.to_json() for p in self.pairs]}

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([p.to_json() for p in self.pairs])


def _sin(multiple: Fraction | int, kappa: int) -> float:
    return math.sin(float(multiple) * math.pi / kappa)


def untwisted_norm_closed_form(ctx: LevelContext) -> float:
    """Printed closed form of (sum_f chi_f(D(0))^2)^(-1/2)."""
    n, kappa = ctx.n, ctx.kappa
    value = (2 * n) ** -0.5 * kappa ** (-n + 0.5) * 2.0 ** (n * (2 * n - 1))
    for i in range(1, 2 * n):
        for j in range(i + 1, 2 * n):
            value *= _sin(j - i, kappa)
    return value


def twisted_norm_closed_form(ctx: LevelContext) -> float:
    """Printed closed form of (sum_h psi_h(D(0))^2)^(-1/2)."""
    n, kappa = ctx.n, ctx.kappa
    halves = [Fraction(2 * a + 1, 2) for a in range(n)]  # 1/2, 3/2, ..., N - 1/2
    value = kappa ** (-n / 2) * 2.0 ** (n * n)
    for i in halves:
        value *= _sin(2 * i, kappa)
    for a, i in enumerate(halves):
        for j in halves[a + 1 :]:
            value *= _sin(i + j, kappa) * _sin(j - i, kappa)
    return value


def inverse_c_closed_form(ctx: LevelContext) -> float:
    """Printed closed form of C^-1."""
    n, kappa = ctx.n, ctx.kappa
    value = (2 * n) ** 0.5 * kappa ** ((n - 1) / 2) * 2.0 ** (-n * (n - 1))
    for k in range(n):  # 2k + 1 < 2N
        value *= _sin(2 * k + 1, kappa) ** (k + 1)
    for k in range(1, n):
        value *= _sin(k, kappa) ** (n - k)
    for k in range(1, 2 * n - 1):
        value /= _sin(k, kappa) ** (2 * n - k - 1)
    return value


def closed_form_diagnostics(ctx: LevelContext) -> DiagnosticsReport:
    """
    Compare direct sums with the printed Kac-Peterson products.

    Never raises on disagreement: both members of every pair are reported.
    """
    dims = quantum_dims(ctx)
    pt0 = origin_point(ctx)
    untwisted_sq = sum(v * v for v in dims.untwisted.values())
    twisted_sq = sum(v * v for v in dims.psi_origin.values())
    paired_sum = sum(chi_gl(f, pt0).real for f in enumerate_paired(ctx))

    pairs = [
        DiagnosticPair(
            "untwisted_inverse_sqrt_sum",
            untwisted_sq**-0.5,
            untwisted_norm_closed_form(ctx),
        ),
        DiagnosticPair(
            "twisted_inverse_sqrt_sum", twisted_sq**-0.5, twisted_norm_closed_form(ctx)
        ),
        DiagnosticPair("inverse_C", 1.0 / dims.C, inverse_c_closed_form(ctx)),
        DiagnosticPair("k0_square_C2_vs_paired_sum", dims.C**2, paired_sum),
    ]
    for pair in pairs:
        if pair.abs_diff > DEFAULT_TOLERANCES.k0_consistency:
            logger.info(
                "%s at %s: direct %.6f vs closed form %.6f",
                pair.name,
                ctx,
                pair.direct,
                pair.closed_form,
            )
    return DiagnosticsReport(n=ctx.n, level=ctx.level, pairs=pairs)
