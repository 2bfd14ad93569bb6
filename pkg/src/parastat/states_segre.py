"""Pure and mixed states, Segre maps for every statistics, and orbit dimensions.

States of ``k`` particles live in the ambient space ``C^(n^k)``; states of a
parastatistics ``alpha`` are ambient operators supported on ``H^alpha``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import tensor_core as tc
from .analysis import DEFAULT_OPTIONS, RankOptions, ZeroTensorError, numerical_rank
from .young import YoungTableau, orthogonal_projector_matrix, projector_alpha

DENSITY_TOL = 1e-10
DEPENDENCE_TOL = 1e-10
WEIGHT_TOL = 1e-12


class DependentFactorsError(ValueError):
    """Segre factors are linearly dependent, so the wedge of them vanishes."""


class DensityError(ValueError):
    """Matrix violates Hermiticity, positivity or unit trace."""


@dataclass(frozen=True)
class PureState:
    """Pure state of a nonzero tensor, stored as a unit vector."""

    vector: np.ndarray

    @property
    def projector(self) -> np.ndarray:
        x = self.vector.reshape(-1)
        return np.outer(x, x.conj())


def pure_state_from(x: np.ndarray) -> PureState:
    x = np.asarray(x, dtype=np.complex128)
    nrm = tc.norm(x)
    if nrm <= tc.ZERO_FLOOR:
        raise ZeroTensorError("zero vector has no pure state")
    return PureState(x / nrm)


def projector_of(x: np.ndarray) -> np.ndarray:
    """``|x><x| / ||x||^2`` as a matrix on the flattened space."""
    return pure_state_from(x).projector


def check_hermitian(a: np.ndarray, tol: float = DENSITY_TOL) -> np.ndarray:
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DensityError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DensityError("matrix has non-finite entries")
    if np.max(np.abs(a - a.conj().T), initial=0.0) > tol:
        raise DensityError("matrix is not Hermitian")
    return a


def check_density(rho: np.ndarray, tol: float = DENSITY_TOL) -> np.ndarray:
    rho = check_hermitian(rho, tol)
    if abs(np.trace(rho) - 1.0) > tol:
        raise DensityError(f"trace is {np.trace(rho).real:.3g}, not 1")
    if np.linalg.eigvalsh(rho).min() < -tol:
        raise DensityError("matrix is not positive semidefinite")
    return rho


def density_rank(rho: np.ndarray, opts: RankOptions = DEFAULT_OPTIONS) -> int:
    w = np.linalg.eigvalsh(rho)
    if w.max() <= tc.ZERO_FLOOR:
        return 0
    return int(np.count_nonzero(w > opts.tolerance * w.max()))


def hs_inner(a: np.ndarray, b: np.ndarray) -> float:
    """``<A, B> = Tr(AB) / 2`` on Hermitian operators."""
    a, b = check_hermitian(a), check_hermitian(b)
    if a.shape != b.shape:
        raise tc.ShapeError(f"size mismatch: {a.shape} vs {b.shape}")
    return 0.5 * float(np.real(np.einsum("ij,ji->", a, b)))


def tensor_op_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """``A (x) B``; maps densities of ranks (k, l) to a density of rank k*l."""
    return np.kron(check_density(a), check_density(b))


def convex_mix(weights: Sequence[float], states: Sequence[np.ndarray]) -> np.ndarray:
    weights = np.asarray(weights, dtype=float)
    if len(weights) != len(states) or len(states) == 0:
        raise ValueError("need one weight per state")
    if np.any(weights < 0) or abs(weights.sum() - 1.0) > WEIGHT_TOL:
        raise ValueError("weights must be nonnegative and sum to 1")
    return check_density(sum(t * check_density(s) for t, s in zip(weights, states)))


# -- Segre maps -------------------------------------------------------------


def _vectors(xs: Sequence) -> list[np.ndarray]:
    out = [np.asarray(x, dtype=np.complex128) for x in xs]
    if not out:
        raise ValueError("need at least one factor")
    n = out[0].shape
    if any(x.ndim != 1 or x.shape != n for x in out):
        raise tc.ShapeError("factors must be vectors of one common dimension")
    if any(tc.norm(x) <= tc.ZERO_FLOOR for x in out):
        raise ZeroTensorError("zero factor")
    return out


def _require_independent(xs: list[np.ndarray]) -> None:
    # ||x_1 ^ ... ^ x_r||^2 = det(Gram) / r!, computed without forming the wedge.
    g = tc.gram(xs, xs)
    wedge_norm = np.sqrt(max(np.linalg.det(g).real, 0.0) / math.factorial(len(xs)))
    scale = np.prod([tc.norm(x) for x in xs])
    if wedge_norm <= DEPENDENCE_TOL * scale:
        raise DependentFactorsError("factors are linearly dependent (their wedge vanishes)")


def seg_distinguishable(*xs) -> PureState:
    return pure_state_from(tc.product_of(_vectors(xs)))


def seg_bosonic(x, k: int) -> PureState:
    if k < 1:
        raise ValueError("k must be positive")
    (x,) = _vectors([x])
    return pure_state_from(tc.product_of([x] * k))


def seg_fermionic(*xs) -> PureState:
    xs = _vectors(xs)
    _require_independent(xs)
    return pure_state_from(tc.wedge_of(xs))


def embed_alpha(alpha: YoungTableau, xs: Sequence) -> np.ndarray:
    """``x_{alpha(1)} (x) ... (x) x_{alpha(k)}``: ``x_j`` fills the slots of row ``j``."""
    xs = _vectors(xs)
    if len(xs) != alpha.num_rows:
        raise ValueError(f"tableau has {alpha.num_rows} rows but {len(xs)} factors were given")
    return tc.product_of([xs[r] for r in alpha.row_map])


def segre_tensor_alpha(alpha: YoungTableau, xs: Sequence) -> np.ndarray:
    """Unnormalized simple tensor ``pi^alpha(i_alpha(x_1, ..., x_r))``."""
    xs = _vectors(xs)
    _require_independent(xs)
    v = projector_alpha(alpha, embed_alpha(alpha, xs))
    # Nonvanishing is guaranteed once the factors are independent.
    assert tc.norm(v) > tc.ZERO_FLOOR, "alpha-projection of independent factors vanished"
    return v


def seg_alpha(alpha: YoungTableau, *xs) -> PureState:
    return pure_state_from(segre_tensor_alpha(alpha, xs))


def big_segre(alpha: YoungTableau, *us) -> np.ndarray:
    """``P (u_{alpha(1)} (x) ... (x) u_{alpha(k)}) P`` with ``P`` the orthogonal
    projector onto ``H^alpha``."""
    if len(us) != alpha.num_rows:
        raise ValueError(f"tableau has {alpha.num_rows} rows but {len(us)} operators were given")
    us = [check_hermitian(u) for u in us]
    n = us[0].shape[0]
    if any(u.shape != (n, n) for u in us):
        raise tc.ShapeError("operators must share one size")
    big = np.ones((1, 1), dtype=np.complex128)
    for r in alpha.row_map:
        big = np.kron(big, us[r])
    p = orthogonal_projector_matrix(alpha, n)
    return p @ big @ p


# -- unitary orbits ---------------------------------------------------------


def unitary_generators(n: int) -> list[np.ndarray]:
    """Real basis of anti-Hermitian ``n x n`` matrices (``n**2`` elements)."""
    gens = []
    for a in range(n):
        g = np.zeros((n, n), dtype=np.complex128)
        g[a, a] = 1j
        gens.append(g)
    for a in range(n):
        for b in range(a + 1, n):
            g = np.zeros((n, n), dtype=np.complex128)
            g[a, b], g[b, a] = 1.0, -1.0
            gens.append(g)
            g = np.zeros((n, n), dtype=np.complex128)
            g[a, b] = g[b, a] = 1j
            gens.append(g)
    return gens


def diagonal_action(x: np.ndarray, v: np.ndarray) -> np.ndarray:
    """``(X (x) I ... + ... + I ... (x) X) v``."""
    out = np.zeros_like(v)
    for m in range(v.ndim):
        out += np.moveaxis(np.tensordot(x, v, axes=(1, m)), 0, m)
    return out


def orbit_dimension(v: np.ndarray, opts: RankOptions = DEFAULT_OPTIONS) -> int:
    """Real dimension of the ``U(n)`` orbit through ``v`` under ``U (x) ... (x) U``."""
    v = np.asarray(v, dtype=np.complex128)
    nrm = tc.norm(v)
    if nrm <= tc.ZERO_FLOOR:
        raise ZeroTensorError("zero tensor")
    v = v / nrm
    tangent = [diagonal_action(g, v).reshape(-1) for g in unitary_generators(v.shape[0])]
    real = np.array([np.concatenate([t.real, t.imag]) for t in tangent])
    return numerical_rank(real, opts)
