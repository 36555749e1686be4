"""
Signature types, level predicates, strip operations and basis enumerations.

Untwisted objects (representations of SU(2N) and of the loop group at
level ell) are labelled by `GLSignature`s, weakly decreasing integer
2N-tuples identified up to adding a constant. Twisted objects are labelled
by `SpSignature`s, weakly decreasing nonnegative N-tuples. The evaluation
set used by the characters module consists of `HalfIntVector`s.

All bases are returned in the canonical order used to index matrices
downstream: lexicographically ascending on parts.
"""

import itertools
from collections import Counter
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Generic, TypeVar

import pandas as pd
from scipy.special import comb

from .config import LevelContext


def _check_parts(parts: Sequence[int], name: str) -> tuple[int, ...]:
    parts = tuple(parts)
    if not parts:
        raise ValueError(f"{name} must have at least one part")
    for value in parts:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValueError(f"{name} parts must be integers, got {parts!r}")
    for i in range(len(parts) - 1):
        if parts[i] < parts[i + 1]:
            raise ValueError(
                f"{name} must be weakly decreasing, got {parts!r} "
                f"(part {i + 1} < part {i + 2})"
            )
    return parts


def signature_key(parts: Sequence[int]) -> str:
    """Render parts as the comma-separated key used in JSON and on the CLI."""
    return ",".join(str(p) for p in parts)


def parse_parts(text: str) -> tuple[int, ...]:
    """Parse a comma-separated part list such as ``"2,1,0,0"``."""
    try:
        return tuple(int(token) for token in text.split(","))
    except ValueError:
        raise ValueError(
            f"malformed signature {text!r}: expected comma-separated integers"
        ) from None


@dataclass(frozen=True, order=True)
class GLSignature:
    """
    Signature f_1 >= ... >= f_2N of an irreducible SU(2N) representation.

    Stored as given; `normalized()` subtracts the last part. Everything
    outside transient strip results is kept normalized.
    """

    parts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", _check_parts(self.parts, "GLSignature"))

    @classmethod
    def parse(cls, text: str) -> "GLSignature":
        return cls(parse_parts(text))

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def width(self) -> int:
        """f_1 - f_2N, the quantity bounded by the level."""
        return self.parts[0] - self.parts[-1]

    def normalized(self) -> "GLSignature":
        last = self.parts[-1]
        if last == 0:
            return self
        return GLSignature(tuple(p - last for p in self.parts))

    def is_permissible(self, level: int) -> bool:
        return self.width <= level

    def key(self) -> str:
        return signature_key(self.parts)

    def to_json(self) -> list[int]:
        return list(self.parts)

    def __str__(self) -> str:
        return f"({self.key()})"


@dataclass(frozen=True, order=True)
class SpSignature:
    """Signature h_1 >= ... >= h_N >= 0 of an irreducible Sp(N) representation."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = _check_parts(self.parts, "SpSignature")
        if parts[-1] < 0:
            raise ValueError(f"SpSignature parts must be nonnegative, got {parts!r}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "SpSignature":
        return cls(parse_parts(text))

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def top_pair(self) -> int:
        """h_1 + h_2, with h_2 taken as 0 when N = 1."""
        second = self.parts[1] if len(self.parts) > 1 else 0
        return self.parts[0] + second

    def is_permissible(self, level: int) -> bool:
        return self.top_pair <= level

    def key(self) -> str:
        return signature_key(self.parts)

    def to_json(self) -> list[int]:
        return list(self.parts)

    def __str__(self) -> str:
        return f"({self.key()})"


@dataclass(frozen=True, order=True)
class HalfIntVector:
    """
    Weakly decreasing nonnegative vector with all parts in Z or all in Z + 1/2.

    Stored exactly as doubled integers: ``doubled[i] = 2 * g_i``.
    """

    doubled: tuple[int, ...]

    def __post_init__(self):
        doubled = _check_parts(self.doubled, "HalfIntVector")
        if doubled[-1] < 0:
            raise ValueError(f"HalfIntVector parts must be nonnegative, got {doubled!r}")
        if len({d % 2 for d in doubled}) != 1:
            raise ValueError(
                f"HalfIntVector parts must be all integers or all half-integers, "
                f"got doubled parts {doubled!r}"
            )
        object.__setattr__(self, "doubled", doubled)

    @property
    def integral(self) -> bool:
        return self.doubled[0] % 2 == 0

    @property
    def type_flag(self) -> str:
        return "integral" if self.integral else "half-integral"

    @property
    def parts(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(d, 2) for d in self.doubled)

    def fits(self, level: int) -> bool:
        """g_1 <= level / 2."""
        return self.doubled[0] <= level

    def key(self) -> str:
        return ",".join(str(p) for p in self.parts)

    def to_json(self) -> dict:
        return {"doubled": list(self.doubled), "type": self.type_flag}

    def __str__(self) -> str:
        return f"({self.key()})"


Signature = GLSignature | SpSignature
L = TypeVar("L", GLSignature, SpSignature)


class FormalCombination(Mapping, Generic[L]):
    """
    Finite integer combination of signatures.

    Zero multiplicities are never stored. Iteration follows the canonical
    (ascending) order of the labels.
    """

    def __init__(self, terms: Mapping[L, int] | Iterable[tuple[L, int]] = ()):
        counter: Counter = Counter()
        items = terms.items() if isinstance(terms, Mapping) else terms
        for label, mult in items:
            counter[label] += int(mult)
        self._terms: dict[L, int] = {
            label: counter[label] for label in sorted(counter) if counter[label] != 0
        }

    @classmethod
    def single(cls, label: L) -> "FormalCombination[L]":
        return cls({label: 1})

    def __getitem__(self, label: L) -> int:
        return self._terms[label]

    def get(self, label, default=0):
        return self._terms.get(label, default)

    def __iter__(self) -> Iterator[L]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, FormalCombination):
            return self._terms == other._terms
        if isinstance(other, Mapping):
            return self._terms == {k: v for k, v in other.items() if v != 0}
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __add__(self, other: "FormalCombination[L]") -> "FormalCombination[L]":
        return FormalCombination(itertools.chain(self.items(), other.items()))

    def scaled(self, factor: int) -> "FormalCombination[L]":
        return FormalCombination({k: factor * v for k, v in self.items()})

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for v in self._terms.values())

    def to_json(self) -> dict[str, int]:
        return {label.key(): mult for label, mult in self._terms.items()}

    def to_frame(self) -> pd.DataFrame:
        """Two-column table (signature, multiplicity) in canonical order."""
        return pd.DataFrame(
            {
                "signature": [label.key() for label in self._terms],
                "multiplicity": list(self._terms.values()),
            }
        )

    def __repr__(self) -> str:
        inner = ", ".join(f"{k}: {v}" for k, v in self._terms.items())
        return f"FormalCombination({{{inner}}})"


# ============================================================================
# Signature operations
# ============================================================================


def normalize_gl(f: GLSignature | Sequence[int]) -> GLSignature:
    """Subtract the last part from every part."""
    if not isinstance(f, GLSignature):
        f = GLSignature(tuple(f))
    return f.normalized()


def dual_gl(f: GLSignature) -> GLSignature:
    """Normalized signature of the contragredient representation."""
    top = f.parts[0]
    return GLSignature(tuple(top - p for p in reversed(f.parts))).normalized()


def check_gl(f: GLSignature, ctx: LevelContext) -> GLSignature:
    """Validate the length of an untwisted signature and normalize it."""
    if len(f.parts) != ctx.rank:
        raise ValueError(
            f"untwisted signature {f} must have 2N = {ctx.rank} parts "
            f"for {ctx}"
        )
    return f.normalized()


def check_sp(h: SpSignature, ctx: LevelContext) -> SpSignature:
    """Validate the length of a twisted signature."""
    if len(h.parts) != ctx.n:
        raise ValueError(
            f"twisted signature {h} must have N = {ctx.n} parts for {ctx}"
        )
    return h


def _weakly_decreasing(length: int, top: int) -> Iterator[tuple[int, ...]]:
    """All weakly decreasing tuples of `length` integers in [0, top]."""
    for combo in itertools.combinations_with_replacement(range(top + 1), length):
        yield tuple(reversed(combo))


def _rebuild(template, parts: tuple[int, ...]):
    if isinstance(template, GLSignature | SpSignature):
        return type(template)(parts)
    return parts


def _parts(s) -> tuple[int, ...]:
    if isinstance(s, GLSignature | SpSignature):
        return s.parts
    return _check_parts(s, "signature")


def add_vertical_strips(s, p: int, max_rows: int | None = None) -> list:
    """
    Add a vertical p-strip: increment p distinct rows among the first
    `max_rows` rows, keeping the result weakly decreasing.

    Args:
        s: GLSignature, SpSignature or plain tuple of parts
        p: Number of boxes to add
        max_rows: Rows eligible for a box (default: all rows of `s`)

    Returns:
        Distinct results of the same type as `s`, lexicographically descending.
        Empty when no strip of that size fits.
    """
    parts = _parts(s)
    rows = len(parts) if max_rows is None else max_rows
    if p < 0:
        raise ValueError(f"strip size must be nonnegative, got {p}")
    if not 0 <= rows <= len(parts):
        raise ValueError(f"max_rows must lie in [0, {len(parts)}], got {rows}")

    results = set()
    for chosen in itertools.combinations(range(rows), p):
        new = list(parts)
        for row in chosen:
            new[row] += 1
        if all(new[i] >= new[i + 1] for i in range(len(new) - 1)):
            results.add(tuple(new))
    return [_rebuild(s, r) for r in sorted(results, reverse=True)]


def remove_vertical_strips(s, q: int) -> list:
    """
    Remove a vertical q-strip: decrement q distinct rows, keeping the result
    weakly decreasing and nonnegative.

    Returns:
        Distinct results of the same type as `s`, lexicographically descending.
    """
    parts = _parts(s)
    if q < 0:
        raise ValueError(f"strip size must be nonnegative, got {q}")

    results = set()
    for chosen in itertools.combinations(range(len(parts)), q):
        new = list(parts)
        for row in chosen:
            new[row] -= 1
        if new[-1] >= 0 and all(new[i] >= new[i + 1] for i in range(len(new) - 1)):
            results.add(tuple(new))
    return [_rebuild(s, r) for r in sorted(results, reverse=True)]


# ============================================================================
# Enumerations
# ============================================================================


def enumerate_untwisted_basis(ctx: LevelContext) -> list[GLSignature]:
    """Normalized signatures with f_1 - f_2N <= level, ascending."""
    basis = [
        GLSignature(head + (0,)) for head in _weakly_decreasing(ctx.rank - 1, ctx.level)
    ]
    return sorted(basis)


def count_untwisted_basis(ctx: LevelContext) -> int:
    """Closed-form size of the untwisted basis, C(2N - 1 + level, level)."""
    return int(comb(ctx.rank - 1 + ctx.level, ctx.level, exact=True))


def enumerate_twisted_basis(ctx: LevelContext) -> list[SpSignature]:
    """Sp(N) signatures with h_1 + h_2 <= level, ascending."""
    basis = [
        SpSignature(parts)
        for parts in _weakly_decreasing(ctx.n, ctx.level)
        if SpSignature(parts).is_permissible(ctx.level)
    ]
    return sorted(basis)


def enumerate_paired(ctx: LevelContext) -> list[GLSignature]:
    """
    Permissible normalized signatures with f_1 = f_2, f_3 = f_4, ...

    These label the spherical representations of SU(2N)/Sp(N).
    """
    basis = []
    for head in _weakly_decreasing(ctx.n - 1, ctx.level):
        pairs = head + (0,)
        basis.append(GLSignature(tuple(a for a in pairs for _ in range(2))))
    return sorted(basis)


def enumerate_eval_set(ctx: LevelContext) -> list[HalfIntVector]:
    """
    Points g with g_1 <= level/2, all parts integers or all half-integers.

    Integral points come first, then half-integral ones, each ascending.
    """
    integral = [
        HalfIntVector(tuple(2 * m for m in parts))
        for parts in _weakly_decreasing(ctx.n, ctx.level // 2)
    ]
    half = [
        HalfIntVector(tuple(2 * m + 1 for m in parts))
        for parts in _weakly_decreasing(ctx.n, (ctx.level - 1) // 2)
    ]
    return sorted(integral) + sorted(half)


def enumerate_wall(ctx: LevelContext) -> list[SpSignature]:
    """Sp(N) signatures on the twisted wall h_1 + h_2 = level + 1, ascending."""
    return sorted(
        SpSignature(parts)
        for parts in _weakly_decreasing(ctx.n, ctx.level + 1)
        if SpSignature(parts).top_pair == ctx.level + 1
    )
