"""Partitions, Young tableaux and Young symmetrizers acting on tensors.

Operators built from permutations are kept as group-algebra elements: dicts
mapping a permutation (0-based images, see :mod:`parastat.tensor_core`) to its
coefficient.  ``mul(x, y)`` is the element acting as ``x`` after ``y``.

A tableau numbers the boxes of a diagram with 1..k; any bijective numbering
is allowed.  Standard tableaux only appear when counting ``f^lambda``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

import numpy as np

from .tensor_core import (
    Permutation,
    ShapeError,
    apply_group_element,
    compose_actions,
    identity_perm,
    operator_matrix,
    sign,
)

Partition = tuple[int, ...]
GroupElement = dict[Permutation, float]

MAX_K = 8


def check_partition(parts: Sequence[int]) -> Partition:
    parts = tuple(int(p) for p in parts)
    if not parts or any(p < 1 for p in parts):
        raise ValueError(f"partition parts must be positive, got {parts}")
    if any(a < b for a, b in zip(parts, parts[1:])):
        raise ValueError(f"partition must be weakly decreasing, got {parts}")
    return parts


def enumerate_partitions(k: int) -> list[Partition]:
    """All partitions of ``k`` in reverse-lexicographic order."""
    if not 1 <= k <= MAX_K:
        raise ValueError(f"k must be in 1..{MAX_K}, got {k}")

    def rec(remaining: int, largest: int) -> Iterator[Partition]:
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    return list(rec(k, k))


def conjugate(shape: Partition) -> Partition:
    return tuple(sum(1 for p in shape if p > j) for j in range(shape[0]))


def hook_lengths(shape: Partition) -> list[int]:
    cols = conjugate(shape)
    return [
        (shape[i] - j - 1) + (cols[j] - i - 1) + 1
        for i in range(len(shape))
        for j in range(shape[i])
    ]


def mu(shape: Sequence[int]) -> int:
    """Idempotency constant of ``c_alpha``: ``c_alpha**2 = mu * c_alpha``.

    Equals ``k! / f^lambda``, the product of the hook lengths.
    """
    return math.prod(hook_lengths(check_partition(shape)))


def count_standard_tableaux(shape: Sequence[int]) -> int:
    shape = check_partition(shape)
    return math.factorial(sum(shape)) // mu(shape)


def gl_dim(shape: Sequence[int], n: int) -> int:
    """Dimension of the ``GL(n)`` irrep of this shape (hook-content formula)."""
    shape = check_partition(shape)
    if n < 1:
        raise ValueError("n must be positive")
    if len(shape) > n:
        return 0
    num = Fraction(1)
    for i, row in enumerate(shape):
        for j in range(row):
            num *= n + j - i
    result = num / mu(shape)
    assert result.denominator == 1
    return int(result)


@dataclass(frozen=True)
class YoungTableau:
    """Rows of box numbers, 1-based; e.g. ``YoungTableau(((1, 2), (3,)))``."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        check_partition([len(r) for r in rows])
        k = sum(len(r) for r in rows)
        if sorted(x for r in rows for x in r) != list(range(1, k + 1)):
            raise ValueError(f"tableau must number the boxes 1..{k} exactly once: {rows}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "YoungTableau":
        return cls(tuple(tuple(r) for r in rows))

    @property
    def shape(self) -> Partition:
        return tuple(len(r) for r in self.rows)

    @property
    def k(self) -> int:
        return sum(self.shape)

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    @property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(row[j] for row in self.rows if len(row) > j) for j in range(len(self.rows[0]))
        )

    @cached_property
    def row_map(self) -> tuple[int, ...]:
        """0-based row index of the box numbered ``i + 1``, for each slot ``i``."""
        out = [0] * self.k
        for r, row in enumerate(self.rows):
            for x in row:
                out[x - 1] = r
        return tuple(out)

    def is_standard(self) -> bool:
        rows_ok = all(a < b for row in self.rows for a, b in zip(row, row[1:]))
        cols_ok = all(a < b for col in self.columns for a, b in zip(col, col[1:]))
        return rows_ok and cols_ok

    def __str__(self) -> str:
        return "/".join("".join(str(x) for x in row) if self.k < 10 else ",".join(map(str, row))
                        for row in self.rows)


def row_tableau(k: int) -> YoungTableau:
    return YoungTableau((tuple(range(1, k + 1)),))


def column_tableau(k: int) -> YoungTableau:
    return YoungTableau(tuple((i,) for i in range(1, k + 1)))


def canonical_tableau(shape: Sequence[int]) -> YoungTableau:
    """Row-reading numbering of the diagram."""
    shape = check_partition(shape)
    rows, start = [], 1
    for p in shape:
        rows.append(tuple(range(start, start + p)))
        start += p
    return YoungTableau(tuple(rows))


def all_tableaux(shape: Sequence[int]) -> list[YoungTableau]:
    """Every bijective numbering of the diagram (``k!`` tableaux)."""
    shape = check_partition(shape)
    k = sum(shape)
    out = []
    for numbers in itertools.permutations(range(1, k + 1)):
        rows, start = [], 0
        for p in shape:
            rows.append(numbers[start:start + p])
            start += p
        out.append(YoungTableau(tuple(rows)))
    return out


def standard_tableaux(shape: Sequence[int]) -> list[YoungTableau]:
    return [t for t in all_tableaux(shape) if t.is_standard()]


def all_tableaux_of_size(k: int) -> list[YoungTableau]:
    return [t for shape in enumerate_partitions(k) for t in all_tableaux(shape)]


# -- row and column groups --------------------------------------------------


@dataclass(frozen=True)
class RowColumnGroups:
    row_perms: frozenset[Permutation]
    col_perms: frozenset[Permutation]


def _block_group(blocks: Sequence[Sequence[int]], k: int) -> frozenset[Permutation]:
    """Permutations of 0..k-1 preserving each block (blocks given 1-based)."""
    perms = []
    choices = [list(itertools.permutations(b)) for b in blocks]
    for picks in itertools.product(*choices):
        images = list(range(k))
        for block, image in zip(blocks, picks):
            for src, dst in zip(block, image):
                images[src - 1] = dst - 1
        perms.append(tuple(images))
    return frozenset(perms)


@lru_cache(maxsize=None)
def row_column_groups(alpha: YoungTableau) -> RowColumnGroups:
    return RowColumnGroups(
        row_perms=_block_group(alpha.rows, alpha.k),
        col_perms=_block_group(alpha.columns, alpha.k),
    )


# -- group algebra ----------------------------------------------------------


def mul(x: GroupElement, y: GroupElement) -> GroupElement:
    out: GroupElement = {}
    for g, a in x.items():
        for h, b in y.items():
            gh = compose_actions(g, h)
            out[gh] = out.get(gh, 0.0) + a * b
    return {g: c for g, c in out.items() if c != 0}


def scale(x: GroupElement, c: float) -> GroupElement:
    return {g: c * v for g, v in x.items()}


def add_into(acc: GroupElement, x: GroupElement) -> None:
    for g, v in x.items():
        acc[g] = acc.get(g, 0.0) + v


@lru_cache(maxsize=None)
def b_element(alpha: YoungTableau) -> GroupElement:
    return {p: 1.0 for p in row_column_groups(alpha).row_perms}


@lru_cache(maxsize=None)
def a_element(alpha: YoungTableau) -> GroupElement:
    return {q: float(sign(q)) for q in row_column_groups(alpha).col_perms}


@lru_cache(maxsize=None)
def c_element(alpha: YoungTableau) -> GroupElement:
    """Young symmetrizer ``c_alpha = a_alpha o b_alpha``."""
    return mul(a_element(alpha), b_element(alpha))


@lru_cache(maxsize=None)
def central_element(shape: Partition) -> GroupElement:
    """``(1/mu^2) sum_{alpha in Y_lambda} c_alpha`` over all numberings."""
    shape = check_partition(shape)
    acc: GroupElement = {}
    for alpha in all_tableaux(shape):
        add_into(acc, c_element(alpha))
    m = mu(shape)
    return {g: v / m**2 for g, v in acc.items() if abs(v) > 1e-12}


def _check_order(alpha_k: int, u: np.ndarray) -> None:
    if u.ndim != alpha_k:
        raise ShapeError(f"tableau has {alpha_k} boxes but tensor has order {u.ndim}")


def apply_b(alpha: YoungTableau, u: np.ndarray) -> np.ndarray:
    _check_order(alpha.k, u)
    return apply_group_element(b_element(alpha), u)


def apply_a(alpha: YoungTableau, u: np.ndarray) -> np.ndarray:
    _check_order(alpha.k, u)
    return apply_group_element(a_element(alpha), u)


def young_symmetrizer(alpha: YoungTableau, u: np.ndarray) -> np.ndarray:
    _check_order(alpha.k, u)
    return apply_a(alpha, apply_b(alpha, u))


def projector_alpha(alpha: YoungTableau, u: np.ndarray) -> np.ndarray:
    """``pi^alpha = c_alpha / mu``: idempotent with image ``H^alpha``.

    This operator is in general *not* self-adjoint (it is for a single row or
    column); use :func:`orthogonal_projector_alpha` when orthogonality matters.
    """
    return young_symmetrizer(alpha, u) / mu(alpha.shape)


def central_projector(shape: Sequence[int], u: np.ndarray) -> np.ndarray:
    shape = check_partition(shape)
    _check_order(sum(shape), u)
    return apply_group_element(central_element(shape), u)


# -- assembled matrices -----------------------------------------------------


def identity_element(k: int) -> GroupElement:
    return {identity_perm(k): 1.0}


def symmetrizer_matrix(alpha: YoungTableau, n: int) -> np.ndarray:
    return operator_matrix(c_element(alpha), n)


def projector_matrix(alpha: YoungTableau, n: int) -> np.ndarray:
    return symmetrizer_matrix(alpha, n) / mu(alpha.shape)


def central_matrix(shape: Sequence[int], n: int) -> np.ndarray:
    return operator_matrix(central_element(check_partition(shape)), n)


@lru_cache(maxsize=256)
def _orthonormal_image(alpha: YoungTableau, n: int) -> np.ndarray:
    c = symmetrizer_matrix(alpha, n)
    dim = gl_dim(alpha.shape, n)
    if dim == 0:
        return np.zeros((c.shape[0], 0), dtype=np.complex128)
    left, s, _ = np.linalg.svd(c)
    # The spectrum has an exact gap: c is mu times an idempotent of rank dim.
    assert s[dim - 1] > 1e-8 * s[0] and (dim == len(s) or s[dim] < 1e-8 * s[0])
    basis = left[:, :dim]
    basis.setflags(write=False)
    return basis


def orthonormal_basis_alpha(alpha: YoungTableau, n: int) -> np.ndarray:
    """Columns form an orthonormal basis of ``H^alpha`` inside ``C^(n^k)``."""
    return _orthonormal_image(alpha, n)


def orthogonal_projector_matrix(alpha: YoungTableau, n: int) -> np.ndarray:
    basis = _orthonormal_image(alpha, n)
    return basis @ basis.conj().T


def orthogonal_projector_alpha(alpha: YoungTableau, u: np.ndarray) -> np.ndarray:
    """Self-adjoint projector onto ``H^alpha`` (same image as ``pi^alpha``)."""
    _check_order(alpha.k, u)
    basis = _orthonormal_image(alpha, u.shape[0])
    flat = u.reshape(-1)
    return (basis @ (basis.conj().T @ flat)).reshape(u.shape)


def idempotency_constant(alpha: YoungTableau) -> float:
    """Measure ``c`` in ``c_alpha**2 = c * c_alpha`` directly in the group algebra."""
    c = c_element(alpha)
    c2 = mul(c, c)
    g, v = max(c.items(), key=lambda kv: abs(kv[1]))
    ratio = c2.get(g, 0.0) / v
    residual = max(abs(c2.get(h, 0.0) - ratio * c.get(h, 0.0)) for h in set(c) | set(c2))
    if residual > 1e-9 * abs(ratio):
        raise ArithmeticError(f"c_alpha**2 is not proportional to c_alpha for {alpha}")
    return float(ratio)
