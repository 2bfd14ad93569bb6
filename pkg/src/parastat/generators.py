"""Named states and seeded random tensors used by the CLI and the verifier."""

from __future__ import annotations

import math

import numpy as np

from . import tensor_core as tc
from .young import YoungTableau, projector_alpha


def ghz(n: int, k: int) -> np.ndarray:
    """``(|0...0> + |1...1>) / sqrt(2)``."""
    if n < 2 or k < 1:
        raise ValueError("GHZ needs n >= 2 and k >= 1")
    u = np.zeros((n,) * k, dtype=np.complex128)
    u[(0,) * k] = u[(1,) * k] = 1 / math.sqrt(2)
    return u


def w_state(n: int, k: int) -> np.ndarray:
    """Equal superposition of the ``k`` basis states with a single ``|1>``."""
    if n < 2 or k < 1:
        raise ValueError("W needs n >= 2 and k >= 1")
    u = np.zeros((n,) * k, dtype=np.complex128)
    for m in range(k):
        idx = [0] * k
        idx[m] = 1
        u[tuple(idx)] = 1 / math.sqrt(k)
    return u


def schmidt_tensor(n: int, coeffs) -> np.ndarray:
    """``sum_i c_i |i> (x) |i>``."""
    u = np.zeros((n, n), dtype=np.complex128)
    for i, c in enumerate(coeffs):
        u[i, i] = c
    return u


def basis_wedge(n: int, indices) -> np.ndarray:
    """``e_{i_1} ^ ... ^ e_{i_k}`` for 0-based indices."""
    return tc.wedge_of([tc.basis_vector(n, i) for i in indices])


def random_vector(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.normal(size=n) + 1j * rng.normal(size=n)


def random_tensor(rng: np.random.Generator, n: int, k: int) -> np.ndarray:
    return rng.normal(size=(n,) * k) + 1j * rng.normal(size=(n,) * k)


def random_unit_tensor(rng: np.random.Generator, n: int, k: int) -> np.ndarray:
    u = random_tensor(rng, n, k)
    return u / tc.norm(u)


def random_tucker(rng: np.random.Generator, n: int, k: int) -> np.ndarray:
    """Random tensor whose slot ranks vary independently in ``1..n``."""
    ranks = rng.integers(1, n + 1, size=k)
    u = rng.normal(size=tuple(ranks)) + 1j * rng.normal(size=tuple(ranks))
    for m, r in enumerate(ranks):
        factor = rng.normal(size=(n, r)) + 1j * rng.normal(size=(n, r))
        u = np.moveaxis(np.tensordot(factor, u, axes=(1, m)), 0, m)
    return u


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    q, r = np.linalg.qr(random_vector(rng, n * n).reshape(n, n))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_density(rng: np.random.Generator, dim: int, rank: int) -> np.ndarray:
    w = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = w @ w.conj().T
    return rho / np.trace(rho).real


def random_simple(rng: np.random.Generator, statistics: str, n: int, k: int) -> np.ndarray:
    c = complex(*rng.normal(size=2))
    if statistics == "dist":
        return c * tc.product_of([random_vector(rng, n) for _ in range(k)])
    if statistics == "bose":
        return c * tc.product_of([random_vector(rng, n)] * k)
    if statistics == "fermi":
        return c * tc.wedge_of([random_vector(rng, n) for _ in range(k)])
    raise ValueError(f"unknown statistics {statistics!r}")


def random_in_class(rng: np.random.Generator, statistics: str, n: int, k: int) -> np.ndarray:
    u = random_tensor(rng, n, k)
    if statistics == "bose":
        return tc.symmetrize(u)
    if statistics == "fermi":
        return tc.antisymmetrize(u)
    return u


def random_alpha(rng: np.random.Generator, alpha: YoungTableau, n: int) -> np.ndarray:
    return projector_alpha(alpha, random_tensor(rng, n, alpha.k))
