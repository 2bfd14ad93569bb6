"""Dense complex tensors over a single one-particle space.

A tensor of order ``k`` over ``C^n`` is an ``ndarray`` of shape ``(n,) * k``
and dtype ``complex128``.  Slot 1 is the most significant axis, so the flat
(row-major) offset of coefficient ``u[i_1, ..., i_k]`` is
``sum_m i_m * n**(k - m)`` with 0-based indices.  Order-0 tensors are 0-d
arrays holding one complex scalar.

Permutations are tuples of 0-based images.  ``permute(u, sigma)`` places the
factor from slot ``sigma[m]`` into slot ``m``, i.e. on simple tensors

    U_sigma(f_1 x ... x f_k) = f_sigma(1) x ... x f_sigma(k).

With this action ``U_sigma U_tau = U_{tau o sigma}``: composite operators are
always built by composing actions (see :func:`compose_actions`).
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache, reduce
from typing import Iterable, Sequence

import numpy as np

Permutation = tuple[int, ...]

ZERO_FLOOR = 1e-300


class ShapeError(ValueError):
    """Raised when tensor dimensions, orders or permutation lengths disagree."""


def as_tensor(data, dim: int | None = None, order: int | None = None) -> np.ndarray:
    """Validate and coerce ``data`` into a complex tensor.

    ``data`` may already be shaped, or may be a flat sequence of ``dim**order``
    coefficients (row-major, slot 1 most significant).
    """
    arr = np.asarray(data, dtype=np.complex128)
    if dim is not None and order is not None:
        if arr.size != dim**order:
            raise ShapeError(f"expected {dim}**{order}={dim**order} coefficients, got {arr.size}")
        arr = arr.reshape((dim,) * order)
    if arr.ndim > 0 and len(set(arr.shape)) != 1:
        raise ShapeError(f"tensor axes must share one dimension, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("tensor has non-finite coefficients")
    return arr


def dim_of(u: np.ndarray) -> int:
    if u.ndim == 0:
        raise ShapeError("order-0 tensor carries no one-particle dimension")
    return u.shape[0]


def is_zero(u: np.ndarray) -> bool:
    return float(np.linalg.norm(u)) <= ZERO_FLOOR


def basis_vector(n: int, i: int) -> np.ndarray:
    """Return ``e_{i+1}`` in ``C^n`` (``i`` is 0-based)."""
    e = np.zeros(n, dtype=np.complex128)
    e[i] = 1.0
    return e


def _check_same_dim(u: np.ndarray, v: np.ndarray) -> None:
    if u.ndim and v.ndim and u.shape[0] != v.shape[0]:
        raise ShapeError(f"dimension mismatch: {u.shape[0]} vs {v.shape[0]}")


def tensor_product(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    _check_same_dim(u, v)
    return np.multiply.outer(u, v)


def product_of(vectors: Iterable[np.ndarray]) -> np.ndarray:
    """``f_1 x f_2 x ... x f_k`` for one-particle vectors."""
    vectors = [np.asarray(f, dtype=np.complex128) for f in vectors]
    if not vectors:
        return np.array(1.0 + 0j)
    return reduce(tensor_product, vectors)


# -- permutations -----------------------------------------------------------


def identity_perm(k: int) -> Permutation:
    return tuple(range(k))


def check_perm(sigma: Sequence[int], k: int | None = None) -> Permutation:
    sigma = tuple(int(s) for s in sigma)
    if sorted(sigma) != list(range(len(sigma))):
        raise ShapeError(f"{sigma} is not a permutation of 0..{len(sigma) - 1}")
    if k is not None and len(sigma) != k:
        raise ShapeError(f"permutation of length {len(sigma)} applied to order-{k} tensor")
    return sigma


def perm_from_cycles(k: int, *cycles: Sequence[int]) -> Permutation:
    """Build a permutation from 1-based cycles, e.g. ``perm_from_cycles(3, (1, 2))``."""
    images = list(range(k))
    for cycle in cycles:
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            images[a - 1] = b - 1
    return check_perm(images)


def sign(sigma: Sequence[int]) -> int:
    seen = [False] * len(sigma)
    parity = 0
    for start in range(len(sigma)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = sigma[j]
            length += 1
        parity += length - 1
    return -1 if parity % 2 else 1


def compose(sigma: Sequence[int], tau: Sequence[int]) -> Permutation:
    """Functional composition ``sigma o tau`` (apply ``tau`` first)."""
    return tuple(sigma[t] for t in tau)


def compose_actions(sigma: Sequence[int], tau: Sequence[int]) -> Permutation:
    """Permutation whose action equals ``U_sigma`` applied after ``U_tau``."""
    return compose(tau, sigma)


def inverse(sigma: Sequence[int]) -> Permutation:
    inv = [0] * len(sigma)
    for i, s in enumerate(sigma):
        inv[s] = i
    return tuple(inv)


def all_perms(k: int) -> list[Permutation]:
    return list(itertools.permutations(range(k)))


def permute(u: np.ndarray, sigma: Sequence[int]) -> np.ndarray:
    sigma = check_perm(sigma, u.ndim)
    return np.transpose(u, sigma)


def apply_group_element(element: dict[Permutation, float], u: np.ndarray) -> np.ndarray:
    """Apply ``sum_g c_g U_g`` to ``u``.

    Extra trailing axes beyond the permutation length are treated as a batch
    and left in place.
    """
    if not element:
        return np.zeros_like(u)
    k = len(next(iter(element)))
    if u.ndim < k:
        raise ShapeError(f"order-{u.ndim} tensor, permutations of length {k}")
    tail = tuple(range(k, u.ndim))
    out = np.zeros(u.shape, dtype=np.complex128)
    for g, c in element.items():
        if c != 0:
            out += c * np.transpose(u, tuple(g) + tail)
    return out


def operator_matrix(element: dict[Permutation, float], n: int, max_size: int = 1296) -> np.ndarray:
    """Assemble ``sum_g c_g U_g`` as an ``n**k x n**k`` matrix."""
    k = len(next(iter(element)))
    N = n**k
    if N > max_size:
        raise ValueError(f"refusing to assemble a {N}x{N} operator (cap {max_size})")
    basis = np.eye(N, dtype=np.complex128).reshape((n,) * k + (N,))
    return apply_group_element(element, basis).reshape(N, N)


# -- projections, products, pairings ----------------------------------------


@lru_cache(maxsize=None)
def symmetric_group_sum(k: int, signed: bool) -> dict[Permutation, float]:
    """``(1/k!) sum_sigma (sign)^sigma U_sigma`` as a group-algebra element."""
    w = 1.0 / math.factorial(k)
    return {p: (sign(p) if signed else 1) * w for p in all_perms(k)}


def symmetrize(u: np.ndarray) -> np.ndarray:
    if u.ndim < 2:
        return np.array(u, dtype=np.complex128)
    return apply_group_element(symmetric_group_sum(u.ndim, False), u)


def antisymmetrize(u: np.ndarray) -> np.ndarray:
    if u.ndim < 2:
        return np.array(u, dtype=np.complex128)
    return apply_group_element(symmetric_group_sum(u.ndim, True), u)


def vee(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return symmetrize(tensor_product(u, v))


def wedge(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return antisymmetrize(tensor_product(u, v))


def vee_of(vectors: Sequence[np.ndarray]) -> np.ndarray:
    """``f_1 v ... v f_k`` as a symmetrized product."""
    return symmetrize(product_of(vectors))


def wedge_of(vectors: Sequence[np.ndarray]) -> np.ndarray:
    """``f_1 ^ ... ^ f_k`` as an antisymmetrized product."""
    return antisymmetrize(product_of(vectors))


def inner(u: np.ndarray, v: np.ndarray) -> complex:
    """Hermitian product, conjugate-linear in ``u``."""
    if u.shape != v.shape:
        raise ShapeError(f"shape mismatch: {u.shape} vs {v.shape}")
    return complex(np.vdot(u, v))


def norm(u: np.ndarray) -> float:
    return float(np.linalg.norm(u))


def contract(nu: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Contract ``nu`` (order l) against the first l slots of ``u`` (order k).

    ``contract(nu, u)[J] = sum_I conj(nu[I]) * u[I, J]``; linear in ``u`` and
    conjugate-linear in ``nu``.
    """
    l, k = nu.ndim, u.ndim
    if l < 1 or l > k:
        raise ShapeError(f"cannot contract an order-{l} tensor into an order-{k} tensor")
    _check_same_dim(nu, u)
    return np.tensordot(nu.conj(), u, axes=(tuple(range(l)), tuple(range(l))))


# -- permanent / determinant ------------------------------------------------

MAX_PERMANENT_SIZE = 8


def _square(m) -> np.ndarray:
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {m.shape}")
    return m


def permanent(m) -> complex:
    """Permanent by the full permutation sum (size <= 6) or Ryser's formula (7-8)."""
    m = _square(m)
    k = m.shape[0]
    if k > MAX_PERMANENT_SIZE:
        raise ValueError(f"permanent limited to size {MAX_PERMANENT_SIZE}, got {k}")
    if k == 0:
        return 1.0 + 0j
    if k <= 6:
        rows = np.arange(k)
        return complex(sum(np.prod(m[rows, p]) for p in itertools.permutations(range(k))))
    return _ryser(m)


def _ryser(m: np.ndarray) -> complex:
    k = m.shape[0]
    total = 0j
    for subset in range(1, 1 << k):
        cols = [j for j in range(k) if subset >> j & 1]
        total += (-1) ** len(cols) * np.prod(m[:, cols].sum(axis=1))
    return complex((-1) ** k * total)


def determinant(m) -> complex:
    m = _square(m)
    if m.shape[0] == 0:
        return 1.0 + 0j
    return complex(np.linalg.det(m))


def gram(fs: Sequence[np.ndarray], gs: Sequence[np.ndarray]) -> np.ndarray:
    """Matrix of one-particle products ``<f_i|g_j>``."""
    return np.array([[np.vdot(f, g) for g in gs] for f in fs], dtype=np.complex128)
