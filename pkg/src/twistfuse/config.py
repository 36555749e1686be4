"""
Configuration dataclasses and constants for fusion computations.

A `LevelContext` fixes the rank N (the group is SU(2N), the fixed-point
subgroup Sp(N)) and the level. Numeric gates live in `Tolerances` so every
check in the package reads the same thresholds.
"""

import os
from dataclasses import dataclass
from pathlib import Path

CACHE_ENV_VAR = "TWISTFUSE_CACHE"


def default_cache_dir() -> Path | None:
    """Cache directory for fusion tables and grid results, read from the environment on each call."""
    value = os.environ.get(CACHE_ENV_VAR)
    return Path(value) if value else None


# Acceptance grid: N in {1,2,3}, level in {1..4}, with N=3 capped at level 3
DEFAULT_GRID: tuple[tuple[int, int], ...] = tuple(
    (n, level) for n in (1, 2, 3) for level in range(1, 5) if not (n == 3 and level > 3)
)


@dataclass(frozen=True)
class LevelContext:
    """
    Rank and level of the loop group.

    Attributes:
        n: N, so that the group is SU(2N) and the twisted fixed points Sp(N)
        level: Level ell >= 1 of the central extension
    """

    n: int
    level: int

    def __post_init__(self):
        """Validate configuration."""
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        if (
            isinstance(self.level, bool)
            or not isinstance(self.level, int)
            or self.level < 1
        ):
            raise ValueError(f"level must be a positive integer, got {self.level!r}")

    @property
    def kappa(self) -> int:
        """Shifted level 2N + ell, the denominator of the evaluation angles."""
        return 2 * self.n + self.level

    @property
    def rank(self) -> int:
        """Number of rows of an untwisted signature (2N)."""
        return 2 * self.n

    def __str__(self) -> str:
        return f"N={self.n}, level={self.level}"


@dataclass(frozen=True)
class Tolerances:
    """
    Numeric thresholds for the verification gates.

    Attributes:
        assert_abs: Absolute tolerance for equalities of real evaluations
        rounding: Maximum distance to the nearest integer when rounding
            evaluation-route structure constants
        det_floor: Minimum |det| of the character matrix
        cond_ceiling: Maximum accepted condition number of the character matrix
        denominator_floor: Minimum |Weyl denominator| at an evaluation point
        k0_consistency: Tolerance of the C^2 vs paired-sum comparison
        pf_relative: Relative tolerance of the Perron-Frobenius eigenvector check
    """

    assert_abs: float = 1e-9
    rounding: float = 1e-6
    det_floor: float = 1e-9
    cond_ceiling: float = 1e8
    denominator_floor: float = 1e-12
    k0_consistency: float = 1e-6
    pf_relative: float = 1e-9

    def __post_init__(self):
        """Validate thresholds."""
        for name, value in vars(self).items():
            if not value > 0:
                raise ValueError(f"{name} must be positive, got {value}")


DEFAULT_TOLERANCES = Tolerances()
