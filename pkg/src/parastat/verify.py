"""Randomized verification suites for every identity the library relies on.

Each suite takes its own generator (spawned from one master seed in a fixed
order) and returns a :class:`SuiteResult`.  Suites never raise on a failed
check; they report it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import generators as gen
from . import tensor_core as tc
from . import young
from .analysis import (
    RankOptions,
    alpha_membership_error,
    check_simple,
    numerical_rank,
    s_rank,
    s_rank_bruteforce,
)
from .states_segre import (
    big_segre,
    density_rank,
    embed_alpha,
    orbit_dimension,
    projector_of,
    seg_alpha,
    seg_bosonic,
    seg_distinguishable,
    seg_fermionic,
    tensor_op_product,
)


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checks: int
    failures: int
    detail: str = ""

    def to_dict(self) -> dict:
        return {"suite": self.name, "passed": self.passed, "checks": self.checks,
                "failures": self.failures, "detail": self.detail}


@dataclass(frozen=True)
class VerifyConfig:
    trials: int = 20
    kmax: int = 4
    nmax: int = 4
    opts: RankOptions = RankOptions()


class _Tally:
    def __init__(self, name: str):
        self.name, self.checks, self.failures, self.notes = name, 0, 0, []

    def check(self, ok: bool, note: str = "") -> None:
        self.checks += 1
        if not ok:
            self.failures += 1
            if note and len(self.notes) < 3:
                self.notes.append(note)

    def result(self) -> SuiteResult:
        return SuiteResult(self.name, self.failures == 0, self.checks, self.failures, "; ".join(self.notes))


def _shapes(cfg: VerifyConfig, kmin: int = 1):
    for k in range(kmin, cfg.kmax + 1):
        for n in range(1, cfg.nmax + 1):
            if n**k <= 1024:
                yield n, k


def suite_projectors(rng, cfg):
    t = _Tally("projector_idempotence")
    for n, k in _shapes(cfg, 2):
        for _ in range(cfg.trials):
            u = gen.random_unit_tensor(rng, n, k)
            s, a = tc.symmetrize(u), tc.antisymmetrize(u)
            err = max(np.abs(tc.symmetrize(s) - s).max(), np.abs(tc.antisymmetrize(a) - a).max(),
                      np.abs(tc.symmetrize(a)).max())
            t.check(err <= 1e-12, f"n={n} k={k} err={err:.2e}")
    return t.result()


def suite_pairings(rng, cfg):
    t = _Tally("pairing_identities")
    for k in range(1, cfg.kmax + 1):
        n = max(cfg.nmax, 1)
        for _ in range(cfg.trials):
            fs = [gen.random_vector(rng, n) for _ in range(k)]
            gs = [gen.random_vector(rng, n) for _ in range(k)]
            g = tc.gram(fs, gs)
            for lhs, rhs in (
                (tc.inner(tc.vee_of(fs), tc.vee_of(gs)), tc.permanent(g) / math.factorial(k)),
                (tc.inner(tc.wedge_of(fs), tc.wedge_of(gs)), tc.determinant(g) / math.factorial(k)),
            ):
                rel = abs(lhs - rhs) / max(abs(rhs), 1e-300)
                t.check(rel <= 1e-10 or abs(lhs - rhs) <= 1e-13, f"k={k} rel={rel:.2e}")
    return t.result()


def suite_mu(rng, cfg):
    t = _Tally("mu_constants")
    for k in range(1, cfg.kmax + 1):
        for alpha in young.all_tableaux_of_size(k):
            measured = young.idempotency_constant(alpha)
            expected = young.mu(alpha.shape)
            t.check(abs(measured - expected) <= 1e-10 * expected, f"{alpha}: {measured} vs {expected}")
    t.check(young.mu((2, 1)) == 3, "mu((2,1)) != 3")
    return t.result()


def suite_central(rng, cfg):
    t = _Tally("central_completeness")
    for n, k in _shapes(cfg, 1):
        if n**k > 256:
            continue
        mats = {lam: young.central_matrix(lam, n) for lam in young.enumerate_partitions(k)}
        total = sum(mats.values())
        t.check(np.abs(total - np.eye(n**k)).max() <= 1e-10, f"sum != I at n={n} k={k}")
        for a in mats:
            for b in mats:
                if a != b:
                    t.check(np.abs(mats[a] @ mats[b]).max() <= 1e-10, f"{a}{b} not orthogonal")
    return t.result()


def suite_srank_golden(rng, cfg):
    t = _Tally("srank_golden")
    o = cfg.opts
    for k in range(2, 6):
        t.check(s_rank(gen.ghz(2, k), o) == 2, f"GHZ_{k}")
        t.check(s_rank(gen.w_state(2, k), o) == 2, f"W_{k}")
    for r in range(1, 5):
        coeffs = rng.uniform(0.2, 1.0, size=r) * np.exp(2j * np.pi * rng.uniform(size=r))
        t.check(s_rank(gen.schmidt_tensor(4, coeffs), o) == r, f"Schmidt r={r}")
    for k in range(1, 5):
        t.check(s_rank(gen.basis_wedge(4, range(k)), o) == k, f"e1^..^e{k}")
    t.check(s_rank(gen.basis_wedge(4, (0, 1)) + gen.basis_wedge(4, (2, 3)), o) == 4, "e12+e34")
    return t.result()


def suite_srank_oracle(rng, cfg):
    t = _Tally("srank_oracle")
    shapes = [(n, k) for n, k in _shapes(cfg, 1) if n <= 3 and k <= 4]
    for i in range(cfg.trials * 2):
        n, k = shapes[i % len(shapes)]
        u = gen.random_tucker(rng, n, k)
        a, b = s_rank(u, cfg.opts), s_rank_bruteforce(u, cfg.opts)
        t.check(a == b, f"n={n} k={k}: {a} vs {b}")
    return t.result()


def _class_shapes(statistics):
    if statistics == "fermi":
        return [(4, 2), (4, 3)]
    return [(3, 3), (2, 4)]


def suite_relations(rng, cfg):
    t = _Tally("relation_equivalence")
    for stats in ("dist", "bose", "fermi"):
        for i in range(cfg.trials):
            n, k = _class_shapes(stats)[i % 2]
            simple = gen.random_simple(rng, stats, n, k)
            rep = check_simple(simple, stats, cfg.opts)
            t.check(rep.simple and rep.routes_agree, f"{stats} simple rejected")
            pert = gen.random_in_class(rng, stats, n, k)
            noisy = simple + 0.1 * tc.norm(simple) / tc.norm(pert) * pert
            rep = check_simple(noisy, stats, cfg.opts)
            t.check(rep.routes_agree, f"{stats} routes disagree on perturbed tensor")
            if stats == "fermi":
                t.check(check_simple(simple, stats, cfg.opts).residual < 1e-12, "Plücker residual")
    w = gen.basis_wedge(4, (0, 1)) + gen.basis_wedge(4, (2, 3))
    t.check(check_simple(w, "fermi", cfg.opts).residual > 1e-3, "e12+e34 residual too small")
    return t.result()


def suite_segre(rng, cfg):
    t = _Tally("segre_simplicity")
    o = cfg.opts
    for n, k in _shapes(cfg, 1):
        for _ in range(max(cfg.trials // 4, 1) if cfg.trials else 0):
            xs = [gen.random_vector(rng, n) for _ in range(k)]
            t.check(check_simple(seg_distinguishable(*xs).vector, "dist", o).simple, "dist")
            t.check(check_simple(seg_bosonic(xs[0], k).vector, "bose", o).simple, "bose")
            if k <= n:
                t.check(check_simple(seg_fermionic(*xs).vector, "fermi", o).simple, "fermi")
        for alpha in young.all_tableaux_of_size(k):
            r = alpha.num_rows
            if r > n:
                continue
            for _ in range(cfg.trials):
                v = seg_alpha(alpha, *[gen.random_vector(rng, n) for _ in range(r)]).vector
                t.check(alpha_membership_error(v, alpha) <= 1e-10, f"{alpha} membership")
                t.check(s_rank(v, o) == r, f"{alpha} n={n}: s_rank {s_rank(v, o)} != {r}")
    return t.result()


def suite_big_segre(rng, cfg):
    t = _Tally("big_segre_identity")
    for k in range(1, min(cfg.kmax, 3) + 1):
        for n in range(1, min(cfg.nmax, 3) + 1):
            for alpha in young.all_tableaux_of_size(k):
                r = alpha.num_rows
                if r > n:
                    continue
                for _ in range(max(cfg.trials // 5, 1) if cfg.trials else 0):
                    xs = [gen.random_vector(rng, n) for _ in range(r)]
                    xs = [x / tc.norm(x) for x in xs]
                    lhs = big_segre(alpha, *[projector_of(x) for x in xs])
                    p = young.orthogonal_projector_alpha(alpha, embed_alpha(alpha, xs)).reshape(-1)
                    rhs = np.outer(p, p.conj())
                    err = np.abs(lhs - rhs).max()
                    t.check(err <= 1e-10, f"{alpha} n={n} err={err:.2e}")
    return t.result()


def suite_prop1(rng, cfg):
    t = _Tally("rank_multiplicativity")
    for _ in range(cfg.trials):
        da, db = rng.integers(1, cfg.nmax + 1, size=2)
        ra, rb = rng.integers(1, da + 1), rng.integers(1, db + 1)
        a, b = gen.random_density(rng, da, ra), gen.random_density(rng, db, rb)
        got = density_rank(tensor_op_product(a, b), cfg.opts)
        want = density_rank(a, cfg.opts) * density_rank(b, cfg.opts)
        t.check(got == want == ra * rb, f"ranks {ra}x{rb} -> {got}")
    return t.result()


def suite_orbits(rng, cfg):
    t = _Tally("orbit_dimensions")
    e = np.eye(3)
    alpha1 = young.YoungTableau(((1, 2), (3,)))
    cases = (
        (seg_alpha(alpha1, e[0], e[1]).vector, 7),
        (seg_bosonic(e[0], 3).vector, 5),
        (seg_fermionic(*e).vector, 1),
    )
    for v, want in cases:
        got = orbit_dimension(v, cfg.opts)
        t.check(got == want, f"orbit {got} != {want}")
    return t.result()


def suite_dims(rng, cfg):
    t = _Tally("dims_table")
    want = {(3,): 10, (2, 1): 8, (1, 1, 1): 1}
    for lam, d in want.items():
        t.check(young.gl_dim(lam, 3) == d, f"gl_dim{lam}")
    t.check([young.count_standard_tableaux(l) for l in want] == [1, 2, 1], "f^lambda")
    for n, k in _shapes(cfg, 1):
        total = sum(young.count_standard_tableaux(l) * young.gl_dim(l, n)
                    for l in young.enumerate_partitions(k))
        t.check(total == n**k, f"Schur-Weyl sum n={n} k={k}")
    for n in range(1, min(cfg.nmax, 4) + 1):
        for k in range(1, min(cfg.kmax, 3) + 1):
            for alpha in young.all_tableaux_of_size(k):
                rank = numerical_rank(young.projector_matrix(alpha, n), cfg.opts)
                t.check(rank == young.gl_dim(alpha.shape, n), f"rank pi^{alpha} n={n}")
    return t.result()


SUITES: list[tuple[str, Callable, bool]] = [
    ("projector_idempotence", suite_projectors, True),
    ("pairing_identities", suite_pairings, True),
    ("mu_constants", suite_mu, False),
    ("central_completeness", suite_central, False),
    ("srank_golden", suite_srank_golden, False),
    ("srank_oracle", suite_srank_oracle, True),
    ("relation_equivalence", suite_relations, True),
    ("segre_simplicity", suite_segre, True),
    ("big_segre_identity", suite_big_segre, True),
    ("rank_multiplicativity", suite_prop1, True),
    ("orbit_dimensions", suite_orbits, False),
    ("dims_table", suite_dims, False),
]


def run_all(seed: int = 0, cfg: VerifyConfig = VerifyConfig(), only: list[str] | None = None) -> list[SuiteResult]:
    """Run suites in fixed order; each gets a child seed of ``seed``."""
    children = np.random.SeedSequence(seed).spawn(len(SUITES))
    results = []
    for (name, fn, _randomized), child in zip(SUITES, children):
        if only and name not in only:
            continue
        results.append(fn(np.random.default_rng(child), cfg))
    return results
