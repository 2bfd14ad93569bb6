"""Pure-state entanglement functional and a convex-roof upper bound.

The pure-state functional is the normalized quadratic residual of
:mod:`parastat.analysis`: continuous, invariant under scaling and phase, and
zero exactly on simple tensors of the chosen statistics.

Write ``rho = sum_i lambda_i |e_i><e_i|`` and let ``W`` hold the rows
``sqrt(lambda_i) e_i``.  Every ensemble ``{psi_j}`` with
``sum |psi_j><psi_j| = rho`` has rows ``Psi = U W`` for a column-orthonormal
``U`` (``m x r``).  The optimizer searches over ``U`` with
seeded random restarts and Givens-rotation pattern search, so the result is an
upper bound on the roof, never the infimum itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import tensor_core as tc
from .analysis import STATISTICS, SymmetryError, plucker_tensor, quadratic_residual
from .states_segre import check_density

VALUE_FLOOR = 1e-14
MIN_STEP = 1e-7
RECONSTRUCTION_TOL = 1e-8
SUPPORT_TOL = 1e-8


@dataclass
class RoofEstimate:
    value: float
    weights: np.ndarray
    vectors: list[np.ndarray]
    iterations: int
    converged: bool
    trace: list[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "upper_bound": True,
            "iterations": self.iterations,
            "converged": self.converged,
            "decomposition": [
                {"weight": float(t), "re": v.real.ravel().tolist(), "im": v.imag.ravel().tolist()}
                for t, v in zip(self.weights, self.vectors)
            ],
        }


def pure_measure(u: np.ndarray, statistics: str) -> float:
    return quadratic_residual(u, statistics)


def _batch_measure(psis: np.ndarray, statistics: str, n: int, k: int) -> np.ndarray:
    """Functional of each row of ``psis`` (rows are flattened order-k tensors)."""
    m = psis.shape[0]
    nrm2 = np.sum(np.abs(psis) ** 2, axis=1)
    out = np.zeros(m)
    live = nrm2 > tc.ZERO_FLOOR
    if not live.any():
        return out
    if statistics == "fermi":
        for j in np.flatnonzero(live):
            p = plucker_tensor(psis[j].reshape((n,) * k))
            out[j] = float(np.sum(np.abs(p) ** 2)) / nrm2[j] ** 2
        return out
    t = psis[live].reshape((-1,) + (n,) * k)
    slots = range(k) if statistics == "dist" else range(k - 1, k)
    total = np.zeros(t.shape[0])
    for s in slots:
        mat = np.moveaxis(t, s + 1, -1).reshape(t.shape[0], -1, n)
        g = np.einsum("bai,baj->bij", mat.conj(), mat)
        total += 2.0 * (nrm2[live] ** 2 - np.sum(np.abs(g) ** 2, axis=(1, 2)))
    out[live] = np.maximum(total, 0.0) / nrm2[live] ** 2
    return out


def _ensemble_value(psis: np.ndarray, statistics: str, n: int, k: int) -> float:
    weights = np.sum(np.abs(psis) ** 2, axis=1)
    return float(weights @ _batch_measure(psis, statistics, n, k))


def _random_isometry(rng: np.random.Generator, m: int, r: int) -> np.ndarray:
    z = rng.normal(size=(m, r)) + 1j * rng.normal(size=(m, r))
    q, rr = np.linalg.qr(z)
    return q * (np.diag(rr) / np.abs(np.diag(rr)))


_PHASES = np.exp(1j * np.array([0.0, 0.5, 1.0, 1.5]) * np.pi)


def _refine(u, w, statistics, n, k, steps, trace):
    """Givens pattern search over row pairs of ``u``; returns (u, value, converged, steps)."""
    m = u.shape[0]
    psis = u @ w
    per = _batch_measure(psis, statistics, n, k) * np.sum(np.abs(psis) ** 2, axis=1)
    value = float(per.sum())
    step = math.pi / 4
    pairs = [(a, b) for a in range(m) for b in range(a + 1, m)]
    used = 0
    while used < steps:
        used += 1
        improved = False
        c, s = math.cos(step), math.sin(step)
        for a, b in pairs:
            ra, rb = u[a], u[b]
            new_a = c * ra[None, :] - (_PHASES * s)[:, None] * rb[None, :]
            new_b = (_PHASES.conj() * s)[:, None] * ra[None, :] + c * rb[None, :]
            cand = np.concatenate([new_a, new_b]) @ w
            vals = _batch_measure(cand, statistics, n, k) * np.sum(np.abs(cand) ** 2, axis=1)
            pair_vals = vals[:4] + vals[4:]
            best = int(np.argmin(pair_vals))
            if pair_vals[best] < per[a] + per[b] - 1e-15:
                u[a], u[b] = new_a[best], new_b[best]
                per[a], per[b] = vals[best], vals[4 + best]
                improved = True
        value = float(per.sum())
        trace.append(value)
        if value <= VALUE_FLOOR:
            return u, value, True, used
        if not improved:
            step /= 2
            if step < MIN_STEP:
                return u, value, True, used
    return u, value, False, used


def _support(rho: np.ndarray, statistics: str, n: int, k: int):
    evals, evecs = np.linalg.eigh(rho)
    keep = evals > 1e-12 * max(evals.max(), tc.ZERO_FLOOR)
    evals, evecs = evals[keep][::-1], evecs[:, keep][:, ::-1]
    for vec in evecs.T:
        t = vec.reshape((n,) * k)
        if statistics == "bose":
            proj = tc.symmetrize(t)
        elif statistics == "fermi":
            proj = tc.antisymmetrize(t)
        else:
            continue
        if tc.norm(proj - t) > SUPPORT_TOL:
            raise SymmetryError("not in symmetry class: state is not supported on the statistics subspace")
    return evals, evecs


def _estimate(psis, statistics, n, k, iterations, converged, trace):
    weights = np.sum(np.abs(psis) ** 2, axis=1)
    keep = weights > 1e-300
    vecs = [p.reshape((n,) * k) / math.sqrt(t) for p, t in zip(psis[keep], weights[keep])]
    value = float(weights[keep] @ _batch_measure(psis[keep], statistics, n, k))
    return RoofEstimate(value, weights[keep], vecs, iterations, converged, trace)


def convex_roof_upper(
    rho: np.ndarray,
    statistics: str,
    n: int,
    *,
    restarts: int = 200,
    steps: int = 100,
    seed: int = 0,
    components: int | None = None,
    start: tuple[Sequence[float], Sequence[np.ndarray]] | None = None,
) -> RoofEstimate:
    """Upper bound on the convex roof of :func:`pure_measure` at ``rho``.

    ``start`` optionally supplies a known decomposition ``(weights, vectors)``
    of ``rho``; it is refined first, so the bound never exceeds its value.
    """
    if statistics not in STATISTICS:
        raise ValueError(f"statistics must be one of {STATISTICS}, got {statistics!r}")
    rho = check_density(rho)
    k = round(math.log(rho.shape[0], n)) if n > 1 else 1
    if n**k != rho.shape[0]:
        raise tc.ShapeError(f"matrix size {rho.shape[0]} is not a power of n={n}")
    evals, evecs = _support(rho, statistics, n, k)
    r = len(evals)
    w = (evecs * np.sqrt(evals)).T  # r x N, row i = sqrt(lambda_i) e_i
    if r == 1:
        value = pure_measure(evecs[:, 0].reshape((n,) * k), statistics)
        return RoofEstimate(value, np.ones(1), [evecs[:, 0].reshape((n,) * k)], 0, True, [value])
    m = components or r
    if not r <= m <= r * r:
        raise ValueError(f"components must lie in [{r}, {r * r}], got {m}")

    starts: list[np.ndarray] = []
    if start is not None:
        t0, v0 = start
        psi0 = np.array([math.sqrt(t) * np.asarray(v).reshape(-1) / tc.norm(np.asarray(v))
                         for t, v in zip(t0, v0)])
        u0 = psi0 @ evecs.conj() / np.sqrt(evals)  # u0[j, i] = <e_i|psi_j> / sqrt(lambda_i)
        if u0.shape[0] < r:
            raise ValueError("start decomposition has fewer terms than the rank")
        starts.append(u0)
    eye = np.zeros((m, r), dtype=np.complex128)
    eye[:r, :r] = np.eye(r)
    starts.append(eye)

    trace: list[float] = []
    best_u, best_val, best_conv, total = None, math.inf, False, 0
    children = np.random.SeedSequence(seed).spawn(max(restarts, 0))
    candidates = iter(starts + [None] * len(children))
    for i, u in enumerate(candidates):
        if u is None:
            u = _random_isometry(np.random.default_rng(children[i - len(starts)]), m, r)
        local: list[float] = []
        u, val, conv, used = _refine(u.copy(), w, statistics, n, k, steps, local)
        total += used
        if val < best_val:
            best_u, best_val, best_conv = u, val, conv
        trace.append(best_val)
        if best_val <= VALUE_FLOOR:
            break
    psis = best_u @ w
    est = _estimate(psis, statistics, n, k, total, best_conv, trace)
    recon = sum(t * np.outer(v.ravel(), v.ravel().conj()) for t, v in zip(est.weights, est.vectors))
    assert np.max(np.abs(recon - rho)) <= RECONSTRUCTION_TOL + 1e-9 * r, "decomposition does not reproduce rho"
    return est


def roof_convexity_probe(
    rho1: np.ndarray,
    rho2: np.ndarray,
    t: float,
    statistics: str,
    n: int,
    *,
    restarts: int = 50,
    steps: int = 100,
    seed: int = 0,
    slack: float = 1e-6,
) -> bool:
    """Whether ``upper(t rho1 + (1-t) rho2) <= t upper(rho1) + (1-t) upper(rho2) + slack``."""
    if not 0.0 <= t <= 1.0:
        raise ValueError("t must lie in [0, 1]")
    kw = dict(restarts=restarts, steps=steps, seed=seed)
    mixed = t * check_density(rho1) + (1 - t) * check_density(rho2)
    lhs = convex_roof_upper(mixed, statistics, n, **kw).value
    rhs = 0.0
    if t > 0:
        rhs += t * convex_roof_upper(rho1, statistics, n, **kw).value
    if t < 1:
        rhs += (1 - t) * convex_roof_upper(rho2, statistics, n, **kw).value
    return lhs <= rhs + slack
