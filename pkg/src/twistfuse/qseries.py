"""
Truncated integer power series and the distinct-parts / odd-parts identity.

    prod_{m>=1} (1 + t^m) = prod_{m>=1} (1 - t^{2m-1})^{-1}

Coefficients are Python ints so nothing overflows at high order.
"""

from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from functools import reduce

PARTITION_ORACLE_MAX = 30
PARTITION_KINDS = ("distinct", "odd")


@dataclass(frozen=True)
class TruncatedSeries:
    """
    Power series in t known through t^order.

    Attributes:
        coeffs: Coefficients of t^0 ... t^order
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a truncated series needs at least the constant term")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls.monomial(0, order)

    @classmethod
    def monomial(cls, exponent: int, order: int, coeff: int = 1) -> "TruncatedSeries":
        """coeff * t^exponent truncated at `order` (zero if exponent > order)."""
        if exponent < 0 or order < 0:
            raise ValueError(f"exponent and order must be >= 0, got {exponent}, {order}")
        coeffs = [0] * (order + 1)
        if exponent <= order:
            coeffs[exponent] = coeff
        return cls(tuple(coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series known through t^{self.order} to t^{order}")
        return TruncatedSeries(self.coeffs[: order + 1])

    def _common(self, other: "TruncatedSeries") -> int:
        return min(self.order, other.order)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        order = self._common(other)
        return TruncatedSeries(
            tuple(a + b for a, b in zip(self.coeffs[: order + 1], other.coeffs[: order + 1]))
        )

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        order = self._common(other)
        out = [0] * (order + 1)
        for i, a in enumerate(self.coeffs[: order + 1]):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs[: order + 1 - i]):
                out[i + j] += a * b
        return TruncatedSeries(tuple(out))

    def inverse(self) -> "TruncatedSeries":
        """
        Multiplicative inverse over the integers.

        Raises:
            ValueError: If the constant term is not a unit (+-1)
        """
        c0 = self.coeffs[0]
        if c0 not in (1, -1):
            raise ValueError(f"constant term {c0} is not invertible over the integers")
        out = [c0]
        for n in range(1, self.order + 1):
            acc = sum(self.coeffs[k] * out[n - k] for k in range(1, n + 1))
            out.append(-c0 * acc)
        return TruncatedSeries(tuple(out))

    def __iter__(self) -> Iterator[int]:
        return iter(self.coeffs)

    def __str__(self) -> str:
        terms = [f"{c}t^{i}" for i, c in enumerate(self.coeffs) if c]
        return (" + ".join(terms) or "0") + f" + O(t^{self.order + 1})"


def series_product(factors: Iterable[TruncatedSeries], order: int) -> TruncatedSeries:
    """
    Product of `factors` truncated at t^order.

    Raises:
        ValueError: If a factor is known to less than t^order
    """
    factors = list(factors)
    for factor in factors:
        if factor.order < order:
            raise ValueError(f"factor known through t^{factor.order} < t^{order}")
    return reduce(
        lambda acc, s: acc * s.truncate(order), factors, TruncatedSeries.one(order)
    )


@dataclass(frozen=True)
class EulerCheck:
    """Both sides of the identity through t^order."""

    order: int
    lhs: TruncatedSeries
    rhs: TruncatedSeries

    @property
    def first_mismatch(self) -> int | None:
        for i, (a, b) in enumerate(zip(self.lhs, self.rhs)):
            if a != b:
                return i
        return None

    @property
    def ok(self) -> bool:
        return self.first_mismatch is None

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "ok": self.ok,
            "firstMismatch": self.first_mismatch,
            "lhs": list(self.lhs.coeffs),
            "rhs": list(self.rhs.coeffs),
        }


def distinct_parts_series(order: int) -> TruncatedSeries:
    """prod_{m=1}^{order} (1 + t^m)."""
    one = TruncatedSeries.one(order)
    return series_product(
        (one + TruncatedSeries.monomial(m, order) for m in range(1, order + 1)), order
    )


def odd_parts_series(order: int) -> TruncatedSeries:
    """prod_{m>=1, 2m-1<=order} (1 - t^{2m-1})^{-1}."""
    one = TruncatedSeries.one(order)
    return series_product(
        (
            (one - TruncatedSeries.monomial(2 * m - 1, order)).inverse()
            for m in range(1, order + 1)
            if 2 * m - 1 <= order
        ),
        order,
    )


def euler_check(order: int) -> EulerCheck:
    """Compare the distinct-parts and odd-parts products through t^order."""
    if isinstance(order, bool) or not isinstance(order, int) or order < 1:
        raise ValueError(f"order must be a positive integer, got {order!r}")
    return EulerCheck(order=order, lhs=distinct_parts_series(order), rhs=odd_parts_series(order))


def _partitions(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for part in range(min(n, largest), 0, -1):
        for rest in _partitions(n - part, part):
            yield (part,) + rest


def partition_oracle(n: int, kind: str) -> int:
    """
    Count partitions of n into distinct parts or into odd parts by listing them.

    Raises:
        ValueError: If n is outside [0, 30] or kind is unknown
    """
    if not 0 <= n <= PARTITION_ORACLE_MAX:
        raise ValueError(f"n must lie in [0, {PARTITION_ORACLE_MAX}], got {n}")
    if kind == "distinct":
        keep = lambda p: len(set(p)) == len(p)  # noqa: E731
    elif kind == "odd":
        keep = lambda p: all(part % 2 for part in p)  # noqa: E731
    else:
        raise ValueError(f"kind must be one of {PARTITION_KINDS}, got {kind!r}")
    return sum(1 for p in _partitions(n, n) if keep(p))
