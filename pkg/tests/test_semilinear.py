import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bt1fermat import _accel
from bt1fermat.errors import DegreeTooLarge, NotPrime, ShapeMismatch, Singular
from bt1fermat.kraft import matrices_of, module_from_word
from bt1fermat.semilinear import (
    SemilinearMap,
    base_change,
    field_make,
    inverse,
    kernel_image,
    matmul,
    rank,
    random_invertible,
    rref,
    same_span,
    verify_bt1_axioms,
)
from bt1fermat.words import parse_word

from oracles import has_root, poly_mulmod, rank_mod_p

FIELDS = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 2), (7, 1)]


def test_field_gf2():
    assert field_make(2, 1).modulus == (0, 1)


def test_field_gf4_modulus():
    # x^2 + x + 1, little-endian
    assert field_make(2, 2).modulus == (1, 1, 1)


def test_field_gf9_modulus():
    assert field_make(3, 2).modulus == (1, 0, 1)


def test_field_errors():
    with pytest.raises(NotPrime):
        field_make(4, 1)
    with pytest.raises(DegreeTooLarge):
        field_make(2, 9)


@pytest.mark.parametrize("p, m", [(2, 2), (3, 2), (5, 2), (2, 3), (3, 3)])
def test_modulus_is_first_irreducible(p, m):
    fld = field_make(p, m)
    assert len(fld.modulus) == m + 1 and fld.modulus[-1] == 1
    # degree 2 and 3: irreducible iff no root; every earlier monic poly has one
    assert not has_root(fld.modulus, p)
    code = lambda poly: sum(c * p**i for i, c in enumerate(poly[:-1]))  # noqa: E731
    for c in range(code(fld.modulus)):
        earlier = [(c // p**i) % p for i in range(m)] + [1]
        assert has_root(earlier, p)


@pytest.mark.parametrize("p, m", FIELDS)
def test_multiplication_matches_polynomials(p, m):
    fld = field_make(p, m)
    for a in range(fld.q):
        for b in range(fld.q):
            want = fld.from_coeffs(poly_mulmod(fld.to_coeffs(a), fld.to_coeffs(b), list(fld.modulus), p))
            assert fld.mul(a, b) == want


@pytest.mark.parametrize("p, m", FIELDS)
def test_field_axioms(p, m):
    fld = field_make(p, m)
    for a in range(fld.q):
        assert fld.add(a, fld.neg(a)) == 0
        if a:
            assert fld.mul(a, fld.inv(a)) == 1
        # Frobenius is x -> x^p and sigma^-1 undoes it
        x = 1
        for _ in range(p):
            x = fld.mul(x, a)
        assert fld.frob(a) == x
        assert fld.frob(fld.frob(a), -1) == a
        assert fld.frob(a, m) == a


@pytest.mark.parametrize("p, m", FIELDS)
def test_frobenius_is_additive(p, m):
    fld = field_make(p, m)
    for a in range(fld.q):
        for b in range(fld.q):
            assert fld.frob(fld.add(a, b)) == fld.add(fld.frob(a), fld.frob(b))


def test_prime_field_rank_matches_plain_elimination():
    rng = np.random.default_rng(3)
    for p in (2, 3, 5, 7):
        fld = field_make(p, 1)
        for _ in range(40):
            n, k = rng.integers(1, 7, size=2)
            A = rng.integers(0, p, size=(n, k))
            assert rank(A, fld) == rank_mod_p(A.tolist(), p)


def test_prime_field_twist_is_identity():
    fld = field_make(5, 1)
    A = np.array([[1, 2], [2, 4]])
    for t in (-1, 0, 1):
        r, ker, im = kernel_image(SemilinearMap(A, t), fld)
        assert r == 1
        assert ker.tolist() == [[1, 2]]
        assert im.tolist() == [[1, 2]]


def test_zero_map():
    fld = field_make(3, 2)
    r, ker, im = kernel_image(SemilinearMap(np.zeros((2, 2)), 1), fld)
    assert r == 0 and ker.shape == (2, 2) and im.shape[0] == 0


def test_identity_map():
    fld = field_make(3, 2)
    for t in (1, -1):
        r, ker, im = kernel_image(SemilinearMap(np.eye(3), t), fld)
        assert r == 3 and ker.shape[0] == 0 and im.shape[0] == 3


def test_kraft_fv_f_matrix():
    fld = field_make(3, 1)
    F, _ = matrices_of(module_from_word(3, parse_word("fv")), fld)
    r, ker, im = kernel_image(F, fld)
    assert r == 1 and ker.tolist() == [[1, 0]] and im.tolist() == [[1, 0]]


def test_shape_errors():
    with pytest.raises(ShapeMismatch):
        SemilinearMap(np.zeros((2, 3)), 1)
    fld = field_make(2, 1)
    with pytest.raises(ShapeMismatch):
        verify_bt1_axioms(SemilinearMap(np.eye(2), 1), SemilinearMap(np.eye(3), -1), fld)
    with pytest.raises(ShapeMismatch):
        matmul(np.eye(2), np.eye(3), fld)


def test_singular():
    with pytest.raises(Singular):
        inverse(np.array([[1, 1], [1, 1]]), field_make(2, 1))


def test_alpha_p_fails():
    fld = field_make(3, 2)
    rep = verify_bt1_axioms(SemilinearMap(np.zeros((1, 1)), 1), SemilinearMap(np.zeros((1, 1)), -1), fld)
    assert not rep.kerF_eq_imV and not rep.ok


def test_fv_passes():
    fld = field_make(3, 2)
    assert verify_bt1_axioms(*matrices_of(module_from_word(3, parse_word("fv")), fld), fld).ok


def test_base_change_identity():
    fld = field_make(3, 2)
    F, V = matrices_of(module_from_word(3, parse_word("ffv")), fld)
    F2, V2 = base_change(F, V, np.eye(3, dtype=np.int64), fld)
    assert (F2.matrix == F.matrix).all() and (V2.matrix == V.matrix).all()


def test_base_change_permutation_relabels():
    fld = field_make(3, 1)
    F, V = matrices_of(module_from_word(3, parse_word("fv")), fld)
    P = np.array([[0, 1], [1, 0]])
    F2, V2 = base_change(F, V, P, fld)
    assert (F2.matrix == P @ F.matrix @ P).all() and (V2.matrix == P @ V.matrix @ P).all()


def test_base_change_ffv_over_gf9():
    fld = field_make(3, 2)
    F, V = matrices_of(module_from_word(3, parse_word("ffv")), fld)
    ref = verify_bt1_axioms(F, V, fld)
    rng = np.random.default_rng(0)
    for _ in range(50):
        P = random_invertible(3, fld, rng)
        assert verify_bt1_axioms(*base_change(F, V, P, fld), fld) == ref


def test_base_change_is_semilinear_conjugation():
    # P^-1 A sigma(P) applied to x equals P^-1 (A sigma(P x)) : the map in the new basis
    fld = field_make(2, 3)
    rng = np.random.default_rng(5)
    A = SemilinearMap(fld.random_elements(rng, (3, 3)), 1)
    P = random_invertible(3, fld, rng)
    B, _ = base_change(A, SemilinearMap(np.zeros((3, 3)), -1), P, fld)
    x = fld.random_elements(rng, 3)
    Px = matmul(P, x.reshape(-1, 1), fld).ravel()
    lhs = matmul(P, B(x, fld).reshape(-1, 1), fld).ravel()
    assert (lhs == A(Px, fld)).all()


@st.composite
def field_and_matrix(draw):
    p, m = draw(st.sampled_from(FIELDS))
    fld = field_make(p, m)
    n = draw(st.integers(1, 5))
    k = draw(st.integers(1, 5))
    cells = draw(st.lists(st.integers(0, fld.q - 1), min_size=n * k, max_size=n * k))
    return fld, np.array(cells, np.int64).reshape(n, k)


@settings(max_examples=80, deadline=None)
@given(field_and_matrix(), st.sampled_from([-1, 1, 2]), st.integers(0, 2**32 - 1))
def test_rank_nullity_and_closure(fm, t, seed):
    fld, M = fm
    n = min(M.shape)
    A = SemilinearMap(M[:n, :n], t)
    r, ker, im = kernel_image(A, fld)
    assert r + len(ker) == n
    rng = np.random.default_rng(seed)
    for v in ker:
        c = int(rng.integers(1, fld.q))
        w = np.array([fld.mul(c, int(x)) for x in v], np.int64)
        assert not A(w, fld).any()
    for v in im:
        c = int(rng.integers(1, fld.q))
        w = np.array([fld.mul(c, int(x)) for x in v], np.int64)
        assert same_span(np.vstack([im, w]), im, fld)


@settings(max_examples=30, deadline=None)
@given(st.text(alphabet="fv", min_size=1, max_size=6), st.sampled_from([(2, 2), (3, 2), (5, 1)]), st.integers(0, 999))
def test_axiom_verdict_invariant_under_base_change(w, pm, seed):
    fld = field_make(*pm)
    F, V = matrices_of(module_from_word(fld.p, parse_word(w)), fld)
    ref = verify_bt1_axioms(F, V, fld)
    assert ref.ok
    P = random_invertible(len(w), fld, np.random.default_rng(seed))
    assert verify_bt1_axioms(*base_change(F, V, P, fld), fld) == ref


# --- numba and numpy kernels agree ---------------------------------------------


@pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba not installed")
@settings(max_examples=60, deadline=None)
@given(field_and_matrix())
def test_rref_backends_agree(fm):
    fld, M = fm
    R1, p1 = _accel.gf_rref_numpy(M.copy(), fld.p, fld.m, fld.exp, fld.log)
    R2, p2 = _accel.gf_rref_numba(M.copy(), fld.p, fld.m, fld.exp, fld.log)
    assert (R1 == R2).all() and list(p1) == list(p2)


@pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba not installed")
@settings(max_examples=40, deadline=None)
@given(field_and_matrix(), st.integers(1, 4))
def test_matmul_backends_agree(fm, k):
    fld, A = fm
    B = np.random.default_rng(k).integers(0, fld.q, size=(A.shape[1], k))
    C1 = _accel.gf_matmul_numpy(A, B, fld.p, fld.m, fld.exp, fld.log)
    C2 = _accel.gf_matmul_numba(A, B, fld.p, fld.m, fld.exp, fld.log)
    assert (C1 == C2).all()


def test_matmul_prime_field_matches_integer_product():
    fld = field_make(7, 1)
    rng = np.random.default_rng(1)
    A = rng.integers(0, 7, size=(4, 5))
    B = rng.integers(0, 7, size=(5, 3))
    assert (matmul(A, B, fld) == (A @ B) % 7).all()


def test_rref_is_reduced():
    fld = field_make(5, 2)
    rng = np.random.default_rng(2)
    M = fld.random_elements(rng, (4, 6))
    R, piv = rref(M, fld)
    for r, c in enumerate(piv):
        assert R[r, c] == 1
        assert all(R[i, c] == 0 for i in range(R.shape[0]) if i != r)
    assert not R[len(piv):].any()
