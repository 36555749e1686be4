"""
Tensor product and level-truncated fusion rules with exterior powers.

- Pieri: V_f (x) Lambda^k C^2N is the sum of V_g over g = f + vertical k-strip.
- Sundaram: Lambda^k C^2N (x) W_h is the sum over p + q = k of W_g with
  h + vertical p-strip = f and g = f - vertical q-strip, f kept to N rows.

At level ell the untwisted rule only drops terms past the wall
g_1 - g_2N = ell + 1. The twisted rule drops terms on the wall
g_1 + g_2 = ell + 1 and reflects the terms one step beyond it,
(g_1, g_2) -> (ell + 1 - g_2, ell + 1 - g_1) with sign -1.
"""

import logging
from collections import Counter

from .config import LevelContext
from .sigcore import (
    FormalCombination,
    GLSignature,
    SpSignature,
    add_vertical_strips,
    check_gl,
    check_sp,
    remove_vertical_strips,
)

logger = logging.getLogger(__name__)


class ReflectionError(RuntimeError):
    """The twisted truncation produced a negative multiplicity."""


def _check_k(k: int, ctx: LevelContext) -> None:
    if isinstance(k, bool) or not isinstance(k, int) or not 0 <= k <= ctx.rank:
        raise ValueError(f"k must be an integer in [0, 2N = {ctx.rank}], got {k!r}")


def pieri_classical(
    f: GLSignature, k: int, ctx: LevelContext
) -> FormalCombination[GLSignature]:
    """
    Decompose V_f (x) Lambda^k into irreducibles of SU(2N).

    Results are normalized; the decomposition is multiplicity-free.
    """
    _check_k(k, ctx)
    f = check_gl(f, ctx)
    return FormalCombination(
        (g.normalized(), 1) for g in add_vertical_strips(f, k, ctx.rank)
    )


def pieri_level(
    f: GLSignature, k: int, ctx: LevelContext
) -> FormalCombination[GLSignature]:
    """Level-ell fusion H_f [x] H_k: the Pieri terms with g_1 - g_2N <= ell."""
    _check_k(k, ctx)
    f = check_gl(f, ctx)
    if not f.is_permissible(ctx.level):
        raise ValueError(
            f"{f} is not permissible at level {ctx.level}: "
            f"f_1 - f_2N = {f.width} > {ctx.level}"
        )
    classical = pieri_classical(f, k, ctx)
    return FormalCombination(
        (g, mult) for g, mult in classical.items() if g.is_permissible(ctx.level)
    )


def sundaram_classical(
    h: SpSignature, k: int, ctx: LevelContext
) -> FormalCombination[SpSignature]:
    """
    Decompose Lambda^k C^2N (x) W_h into irreducibles of Sp(N).

    The multiplicity of g is the number of (p, f) witnesses with
    h + vertical p-strip = f and f - vertical (k - p)-strip = g.
    """
    _check_k(k, ctx)
    h = check_sp(h, ctx)
    counts: Counter = Counter()
    for p in range(k + 1):
        for f in add_vertical_strips(h, p, ctx.n):
            for g in remove_vertical_strips(f, k - p):
                counts[g] += 1
    return FormalCombination(counts)


def reflect_twisted(g: SpSignature, level: int) -> SpSignature | None:
    """
    Reflect a signature with g_1 + g_2 = level + 2 across the twisted wall.

    Returns:
        (level + 1 - g_2, level + 1 - g_1, g_3, ...) when that tuple is a
        dominant signature, otherwise None (its character vanishes on the
        evaluation set).
    """
    if len(g.parts) < 2 or g.top_pair != level + 2:
        raise ValueError(f"{g} does not lie one step past the wall at level {level}")
    first = level + 1 - g.parts[1]
    second = level + 1 - g.parts[0]
    parts = (first, second) + g.parts[2:]
    if second < 0 or any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        return None
    return SpSignature(parts)


def sundaram_level(
    h: SpSignature, k: int, ctx: LevelContext
) -> FormalCombination[SpSignature]:
    """
    Level-ell module action H_k [x] K_h via the signed truncation of
    Sundaram's rule.

    Raises:
        ValueError: If h is not permissible
        ReflectionError: If a final multiplicity comes out negative
    """
    _check_k(k, ctx)
    h = check_sp(h, ctx)
    if not h.is_permissible(ctx.level):
        raise ValueError(
            f"{h} is not permissible at level {ctx.level}: "
            f"h_1 + h_2 = {h.top_pair} > {ctx.level}"
        )

    terms: list[FormalCombination[SpSignature]] = []
    for g, mult in sundaram_classical(h, k, ctx).items():
        excess = g.top_pair - ctx.level
        if excess <= 0:
            terms.append(FormalCombination.single(g).scaled(mult))
        elif excess == 1:
            # On the wall: the character vanishes at every evaluation point
            continue
        elif excess == 2:
            image = reflect_twisted(g, ctx.level)
            if image is None:
                logger.warning(
                    "Reflected tuple of %s at level %d is not dominant; dropped",
                    g,
                    ctx.level,
                )
                continue
            logger.debug("Reflecting %s -> -%s at level %d", g, image, ctx.level)
            terms.append(FormalCombination.single(image).scaled(-mult))
        else:
            raise ReflectionError(
                f"{g} lies {excess} steps past the wall; exterior powers "
                f"cannot overshoot by more than 2"
            )

    result = sum(terms, FormalCombination())
    if not result.is_nonnegative():
        negative = {g.key(): m for g, m in result.items() if m < 0}
        raise ReflectionError(
            f"negative multiplicities {negative} in Lambda^{k} [x] K_{h} at {ctx}"
        )
    return result
