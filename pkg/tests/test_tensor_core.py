import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from parastat import tensor_core as tc
from conftest import cvec

E = np.eye(3, dtype=complex)


def test_tensor_product_basis_and_bilinearity():
    u = tc.tensor_product(E[0, :2], E[1, :2])
    assert u[0, 1] == 1 and np.count_nonzero(u) == 1
    v = tc.tensor_product(E[0, :2] + E[1, :2], E[0, :2])
    assert v[0, 0] == 1 and v[1, 0] == 1 and np.count_nonzero(v) == 2


def test_tensor_product_dimension_mismatch():
    with pytest.raises(tc.ShapeError):
        tc.tensor_product(np.ones(2), np.ones(3))


def test_flat_layout_slot_one_most_significant():
    u = tc.as_tensor(np.arange(8), dim=2, order=3)
    # u^{i1 i2 i3} sits at 4*i1 + 2*i2 + i3
    assert u[1, 0, 1] == 5
    with pytest.raises(tc.ShapeError):
        tc.as_tensor(np.arange(7), dim=2, order=3)
    with pytest.raises(ValueError):
        tc.as_tensor([np.nan, 0], dim=2, order=1)


def test_inner_of_products_factorizes(rng):
    a, b, c, d = (cvec(rng, 3) for _ in range(4))
    lhs = tc.inner(tc.tensor_product(a, b), tc.tensor_product(c, d))
    assert lhs == pytest.approx(np.vdot(a, c) * np.vdot(b, d), rel=1e-12)


def test_inner_basis_cases():
    e12 = tc.product_of([E[0], E[1]])
    assert tc.inner(e12, e12) == 1
    assert tc.inner(e12, tc.product_of([E[1], E[0]])) == 0


def test_inner_is_sesquilinear(rng):
    u, v = cvec(rng, 9).reshape(3, 3), cvec(rng, 9).reshape(3, 3)
    c = 0.3 - 1.7j
    assert tc.inner(c * u, v) == pytest.approx(np.conj(c) * tc.inner(u, v))
    assert tc.inner(u, c * v) == pytest.approx(c * tc.inner(u, v))


def test_permute_matches_displayed_action():
    u = tc.product_of([E[0], E[1], E[2]])
    sigma = tc.perm_from_cycles(3, (1, 2))
    assert np.array_equal(tc.permute(u, sigma), tc.product_of([E[1], E[0], E[2]]))
    assert np.array_equal(tc.permute(u, tc.identity_perm(3)), u)


def test_permute_simple_tensors_every_sigma(rng):
    fs = [cvec(rng, 3) for _ in range(3)]
    u = tc.product_of(fs)
    for sigma in tc.all_perms(3):
        want = tc.product_of([fs[sigma[m]] for m in range(3)])
        assert np.allclose(tc.permute(u, sigma), want, atol=1e-14)


def test_permute_is_unitary(rng):
    u, v = cvec(rng, 27).reshape(3, 3, 3), cvec(rng, 27).reshape(3, 3, 3)
    for sigma in tc.all_perms(3):
        assert tc.norm(tc.permute(u, sigma)) == pytest.approx(tc.norm(u), rel=1e-14)
        assert tc.inner(tc.permute(u, sigma), tc.permute(v, sigma)) == pytest.approx(tc.inner(u, v))


def test_action_is_anti_homomorphism(rng):
    u = cvec(rng, 81).reshape(3, 3, 3, 3)
    for sigma in tc.all_perms(4)[::5]:
        for tau in tc.all_perms(4)[::7]:
            lhs = tc.permute(tc.permute(u, tau), sigma)
            assert np.array_equal(lhs, tc.permute(u, tc.compose_actions(sigma, tau)))
            assert np.array_equal(lhs, tc.permute(u, tc.compose(tau, sigma)))


def test_permute_length_mismatch():
    with pytest.raises(tc.ShapeError):
        tc.permute(np.zeros((2, 2)), (0, 1, 2))


def test_sign_is_multiplicative():
    perms = tc.all_perms(4)
    for s in perms[::3]:
        for t in perms[::5]:
            assert tc.sign(tc.compose(s, t)) == tc.sign(s) * tc.sign(t)
    assert tc.sign(tc.perm_from_cycles(3, (1, 2, 3))) == 1
    assert tc.sign(tc.perm_from_cycles(3, (1, 3))) == -1


def test_symmetrize_examples():
    assert np.allclose(tc.symmetrize(tc.product_of([E[0], E[1]])),
                       0.5 * (tc.product_of([E[0], E[1]]) + tc.product_of([E[1], E[0]])))
    assert tc.norm(tc.antisymmetrize(tc.product_of([E[0], E[0]]))) == 0


@pytest.mark.parametrize("n,k", [(2, 2), (3, 3), (4, 2), (2, 4), (4, 4)])
def test_projector_identities(rng, n, k):
    u = cvec(rng, n**k).reshape((n,) * k)
    u /= tc.norm(u)
    s, a = tc.symmetrize(u), tc.antisymmetrize(u)
    assert np.abs(tc.symmetrize(s) - s).max() <= 1e-12
    assert np.abs(tc.antisymmetrize(a) - a).max() <= 1e-12
    assert np.abs(tc.symmetrize(a)).max() <= 1e-12
    v = cvec(rng, n**k).reshape((n,) * k)
    assert tc.inner(tc.symmetrize(u), v) == pytest.approx(tc.inner(u, tc.symmetrize(v)), abs=1e-12)
    for sigma in tc.all_perms(k):
        assert np.allclose(tc.permute(s, sigma), s, atol=1e-13)
        assert np.allclose(tc.permute(a, sigma), tc.sign(sigma) * a, atol=1e-13)


def test_vee_wedge_examples():
    assert np.allclose(tc.wedge(E[0], E[1]), 0.5 * (tc.product_of([E[0], E[1]]) - tc.product_of([E[1], E[0]])))
    assert np.array_equal(tc.vee(E[0], E[0]), tc.product_of([E[0], E[0]]))
    assert tc.norm(tc.wedge(E[0], E[0])) == 0


def test_vee_wedge_algebra(rng):
    w1 = tc.wedge_of([cvec(rng, 4) for _ in range(2)])
    w2 = tc.wedge_of([cvec(rng, 4)])
    w3 = tc.wedge_of([cvec(rng, 4) for _ in range(1)])
    # graded commutativity with orders 2 and 1
    assert np.allclose(tc.wedge(w1, w2), (-1) ** (2 * 1) * tc.wedge(w2, w1))
    assert np.allclose(tc.wedge(w2, w3), -tc.wedge(w3, w2))
    assert np.allclose(tc.wedge(tc.wedge(w1, w2), w3), tc.wedge(w1, tc.wedge(w2, w3)))
    v1, v2, v3 = (tc.vee_of([cvec(rng, 3)] * 2), tc.vee_of([cvec(rng, 3)]), tc.vee_of([cvec(rng, 3)]))
    assert np.allclose(tc.vee(v1, v2), tc.vee(v2, v1))
    assert np.allclose(tc.vee(tc.vee(v1, v2), v3), tc.vee(v1, tc.vee(v2, v3)))
    assert tc.vee(v1, v2).ndim == 3


def _perm_sum_permanent(m):
    k = m.shape[0]
    return sum(np.prod([m[i, p[i]] for i in range(k)]) for p in itertools.permutations(range(k)))


def test_permanent_and_determinant_examples():
    assert tc.permanent([[1, 1], [1, 1]]) == 2
    assert tc.permanent(np.eye(3)) == 1 and tc.determinant(np.eye(3)) == pytest.approx(1)
    assert tc.permanent([[1, 2], [3, 4]]) == 10
    with pytest.raises(tc.ShapeError):
        tc.permanent(np.ones((2, 3)))
    with pytest.raises(ValueError):
        tc.permanent(np.ones((9, 9)))


@pytest.mark.parametrize("k", [7, 8])
def test_ryser_matches_permutation_sum(rng, k):
    m = rng.normal(size=(k, k)) + 1j * rng.normal(size=(k, k))
    assert tc.permanent(m) == pytest.approx(_perm_sum_permanent(m), rel=1e-10)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_pairing_identities(rng, k):
    for _ in range(10):
        fs = [cvec(rng, 4) for _ in range(k)]
        gs = [cvec(rng, 4) for _ in range(k)]
        g = tc.gram(fs, gs)
        assert tc.inner(tc.vee_of(fs), tc.vee_of(gs)) == pytest.approx(tc.permanent(g) / math.factorial(k), rel=1e-10)
        assert tc.inner(tc.wedge_of(fs), tc.wedge_of(gs)) == pytest.approx(
            tc.determinant(g) / math.factorial(k), rel=1e-10, abs=1e-14)


def test_contract_examples():
    assert np.array_equal(tc.contract(E[0], tc.product_of([E[0], E[1]])), E[1])
    assert tc.norm(tc.contract(E[1], tc.product_of([E[0], E[1]]))) == 0
    with pytest.raises(tc.ShapeError):
        tc.contract(np.zeros((3, 3, 3)), np.zeros((3, 3)))


def test_contract_definition_on_simple_tensors(rng):
    fs = [cvec(rng, 3) for _ in range(4)]
    gs = [cvec(rng, 3) for _ in range(2)]
    got = tc.contract(tc.product_of(gs), tc.product_of(fs))
    # conjugate-linear in nu: scalar is <g|f> rather than <f|g>
    want = np.vdot(gs[0], fs[0]) * np.vdot(gs[1], fs[1]) * tc.product_of(fs[2:])
    assert np.allclose(got, want)


def _shuffles(l, k):
    for head in itertools.combinations(range(k), l):
        tail = [i for i in range(k) if i not in head]
        yield list(head) + tail


def _shuffle_formula(fs, gs, antisym, pair):
    k, l = len(fs), len(gs)
    prod = tc.wedge_of if antisym else tc.vee_of
    out = 0
    for s in _shuffles(l, k):
        sgn_s = tc.sign(s) if antisym else 1
        for tau in itertools.permutations(range(l)):
            sgn_t = tc.sign(tau) if antisym else 1
            coef = np.prod([pair(fs[s[j]], gs[tau[j]]) for j in range(l)])
            tail = prod([fs[i] for i in s[l:]]) if l < k else np.array(1.0)
            out = out + sgn_s * sgn_t * coef * tail
    return math.factorial(k - l) / math.factorial(k) * out


def _double_sum_formula(fs, gs, antisym):
    k, l = len(fs), len(gs)
    out = 0
    for sigma in itertools.permutations(range(k)):
        for tau in itertools.permutations(range(l)):
            sg = tc.sign(sigma) * tc.sign(tau) if antisym else 1
            coef = np.prod([np.vdot(fs[sigma[j]], gs[tau[j]]) for j in range(l)])
            out = out + sg * coef * tc.product_of([fs[i] for i in sigma[l:]])
    return out / (math.factorial(k) * math.factorial(l))


@pytest.mark.parametrize("antisym", [False, True])
@pytest.mark.parametrize("k,l", [(3, 2), (3, 1), (4, 2), (4, 3), (3, 3)])
def test_contract_shuffle_formulas_real(rng, antisym, k, l):
    fs = [rng.normal(size=3 if not antisym else 4) for _ in range(k)]
    gs = [rng.normal(size=fs[0].size) for _ in range(l)]
    prod = tc.wedge_of if antisym else tc.vee_of
    got = tc.contract(prod(gs), prod(fs))
    assert np.allclose(got, _double_sum_formula(fs, gs, antisym), atol=1e-12)
    assert np.allclose(got, _shuffle_formula(fs, gs, antisym, np.vdot), atol=1e-12)


def test_contract_shuffle_formula_complex_is_conjugated(rng):
    fs = [cvec(rng, 3) for _ in range(3)]
    gs = [cvec(rng, 3) for _ in range(2)]
    got = tc.contract(tc.vee_of(gs), tc.vee_of(fs))
    assert np.allclose(got, _shuffle_formula(fs, gs, False, lambda f, g: np.vdot(g, f)), atol=1e-12)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_full_contraction_equals_pairing(rng, k):
    fs = [rng.normal(size=4) for _ in range(k)]
    gs = [rng.normal(size=4) for _ in range(k)]
    assert complex(tc.contract(tc.vee_of(gs), tc.vee_of(fs))) == pytest.approx(tc.inner(tc.vee_of(fs), tc.vee_of(gs)))
    assert complex(tc.contract(tc.wedge_of(gs), tc.wedge_of(fs))) == pytest.approx(
        tc.inner(tc.wedge_of(fs), tc.wedge_of(gs)))
    fc = [cvec(rng, 4) for _ in range(k)]
    gc = [cvec(rng, 4) for _ in range(k)]
    assert complex(tc.contract(tc.vee_of(gc), tc.vee_of(fc))) == pytest.approx(
        np.conj(tc.inner(tc.vee_of(fc), tc.vee_of(gc))))


@pytest.mark.parametrize("antisym", [False, True])
@pytest.mark.parametrize("k", [2, 3, 4])
def test_contraction_by_k_minus_1_tensor(rng, antisym, k):
    prod = tc.wedge_of if antisym else tc.vee_of
    fs = [rng.normal(size=4) for _ in range(k)]
    gs = [rng.normal(size=4) for _ in range(k - 1)]
    terms = sum(
        ((-1) ** (k - j) if antisym else 1) * tc.inner(prod(fs[:j - 1] + fs[j:]), prod(gs)) * fs[j - 1]
        for j in range(1, k + 1)
    )
    got = tc.contract(prod(gs), prod(fs))
    # The generic contraction carries (k-1)!/k! = 1/k; a bare 1/k! only agrees at k = 2.
    assert np.allclose(got, terms / k, atol=1e-10)
    assert np.allclose(got, terms / math.factorial(k), atol=1e-10) == (k == 2)


@pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 6) for k in range(1, 6) if n**k <= 1024])
def test_symmetric_and_antisymmetric_dimensions(n, k):
    eye = np.eye(n**k).reshape((n,) * k + (n**k,))
    k_axes = tuple(range(k))
    sym = np.zeros_like(eye, dtype=complex)
    anti = np.zeros_like(eye, dtype=complex)
    for p in tc.all_perms(k):
        t = np.transpose(eye, p + (k,))
        sym += t
        anti += tc.sign(p) * t
    rank = lambda m: np.linalg.matrix_rank(m.reshape(n**k, n**k), tol=1e-9)
    assert rank(sym) == math.comb(n + k - 1, k)
    assert rank(anti) == math.comb(n, k)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3), st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_symmetrize_projector_property(n, k, seed):
    rng = np.random.default_rng(seed)
    u = cvec(rng, n**k).reshape((n,) * k)
    v = cvec(rng, n**k).reshape((n,) * k)
    s = tc.symmetrize(u)
    assert np.allclose(tc.symmetrize(s), s, atol=1e-12)
    assert tc.inner(s, v - tc.symmetrize(v)) == pytest.approx(0, abs=1e-10)
