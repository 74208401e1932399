import numpy as np
import pytest

from spinpump import (
    HermitianOperator,
    ModelParams,
    StateVector,
    basis_states,
    build_h1,
    build_h2,
    build_h3,
    build_pauli,
    build_sz,
    flat_index,
    ladder_coeff,
)
from spinpump.hilbert import h3_matrix, sz_diagonal


def test_ladder_coeff_boundaries_and_values():
    assert ladder_coeff(5, 5, "raise") == 0.0
    assert ladder_coeff(5, -5, "lower") == 0.0
    assert ladder_coeff(5, 4, "raise") == pytest.approx(np.sqrt(10), abs=1e-14)
    assert ladder_coeff(5, -4, "lower") == pytest.approx(np.sqrt(10), abs=1e-14)
    # raise/lower adjoint pair: <n+1|S+|n> == <n|S-|n+1>
    for n in range(-5, 5):
        assert ladder_coeff(5, n, "raise") == pytest.approx(
            ladder_coeff(5, n + 1, "lower"), abs=1e-14)


def test_ladder_coeff_rejects_out_of_range():
    with pytest.raises(ValueError):
        ladder_coeff(5, 6, "raise")
    with pytest.raises(ValueError):
        ladder_coeff(5, 0, "sideways")


def test_flat_index_bijective_half_integer():
    S = 2.5
    seen = set()
    for b in basis_states(S):
        assert flat_index(S, b.n, b.sigma) == b.flat
        seen.add(b.flat)
    assert seen == set(range(2 * (2 * 2 + 1) + 2))  # D = 2*(2S+1) = 12


def test_model_params_validation():
    with pytest.raises(ValueError):
        ModelParams(S=0.5)          # 2S = 1 < 2
    with pytest.raises(ValueError):
        ModelParams(S=1.2)          # 2S not integer
    with pytest.raises(ValueError):
        ModelParams(S=5, w=-0.1)
    with pytest.raises(ValueError):
        ModelParams(S=5, v=-0.1)
    p = ModelParams(S=1.5, w=0.0, v=0.0)   # w = 0 legal: the drive crosses it
    assert p.N == 3 and p.dim == 8


def test_hermitian_operator_rejects_non_hermitian():
    bad = np.array([[0.0, 1.0], [0.0, 0.0]])
    with pytest.raises(ValueError):
        HermitianOperator(bad)


def test_state_vector_requires_normalization():
    with pytest.raises(ValueError):
        StateVector(np.array([1.0, 1.0]))


def test_h1_dimension_and_sparsity():
    p = ModelParams(S=5, w=1.0, v=0.3)
    H = build_h1(p).entries
    assert H.shape == (22, 22)
    allowed = np.zeros_like(H, dtype=bool)
    for b in basis_states(5):
        for c in basis_states(5):
            if b.n == c.n and b.sigma != c.sigma:
                allowed[b.flat, c.flat] = True     # spin-flip within n
            if abs(b.n - c.n) == 1 and b.sigma != c.sigma:
                allowed[b.flat, c.flat] = True     # exchange n <-> n+-1
    assert np.all(H[~allowed] == 0.0)


def test_h1_matrix_elements():
    S, w, v = 4.0, 0.8, 0.3
    H = build_h1(ModelParams(S=S, w=w, v=v)).entries
    for n in np.arange(-S, S):
        i = flat_index(S, n + 1, "down")
        j = flat_index(S, n, "up")
        assert H[i, j] == pytest.approx(-w * ladder_coeff(S, n, "raise"), abs=1e-14)
    for n in np.arange(-S, S + 1):
        assert H[flat_index(S, n, "down"), flat_index(S, n, "up")] == pytest.approx(
            -S * v, abs=1e-14)


def test_h1_v0_spectrum_analytic():
    # decoupled 2x2 blocks: eigenvalues +-w*sqrt((S-n)(S+n+1)), plus the two
    # uncoupled extremal states at zero
    S, w = 5, 1.0
    ev = np.sort(np.linalg.eigvalsh(build_h1(ModelParams(S=S, w=w, v=0.0)).entries))
    block = [w * np.sqrt((S - n) * (S + n + 1)) for n in range(-S, S)]
    expected = np.sort(np.array(block + [-b for b in block] + [0.0, 0.0]))
    np.testing.assert_allclose(ev, expected, atol=1e-12)


def test_h1_edge_state_count_at_finite_v():
    ev = np.linalg.eigvalsh(build_h1(ModelParams(S=5, w=1.0, v=0.4)).entries)
    assert int(np.sum(np.abs(ev) < 0.05)) == 2


@pytest.mark.parametrize("seed", range(5))
def test_chiral_partner_states(seed):
    # sigma_z maps each eigenvector of H1 to an eigenvector at -E
    rng = np.random.default_rng(seed)
    w, v = rng.uniform(0.2, 2.0, size=2)
    p = ModelParams(S=4, w=w, v=v)
    H = build_h1(p).entries
    sz = build_pauli("z", 4).entries.real
    vals, vecs = np.linalg.eigh(H)
    for k in range(vals.size):
        partner = sz @ vecs[:, k]
        resid = np.linalg.norm(H @ partner - (-vals[k]) * partner)
        assert resid < 1e-9


def test_h2_reduces_to_h1_and_breaks_chirality():
    p0 = ModelParams(S=5, w=1.0, v=0.4, delta=0.0)
    np.testing.assert_array_equal(build_h2(p0).entries, build_h1(p0).entries)

    p1 = ModelParams(S=1, w=0.0, v=0.0, delta=1.0)
    H = build_h2(p1).entries
    np.testing.assert_allclose(np.diag(H), [-1, 1, -1, 1, -1, 1], atol=1e-14)

    sz = build_pauli("z", 1).entries
    assert np.abs(sz @ H @ sz + H).max() == pytest.approx(2.0)  # 2*S*delta


def test_h3_lambda_zero_reduction():
    p = ModelParams(S=5, w=1.0, v=0.4, delta=0.3, lam=0.0)
    np.testing.assert_array_equal(build_h3(p).entries, build_h2(p).entries)


def test_h3_pure_interaction_diagonal():
    # interaction-only Hamiltonian: diagonal lam*n^2/N with the ground
    # manifold at n = 0 (see decisions ledger: this normalization is the one
    # the critical-coupling formula and the mean-field band are written in)
    p = ModelParams(S=5, w=0.0, v=0.0, delta=0.0, lam=1.0)
    H = build_h3(p).entries
    assert np.abs(H - np.diag(np.diag(H))).max() == 0.0
    expected = p.lam * sz_diagonal(5.0) ** 2 / p.N
    np.testing.assert_allclose(np.diag(H).real, expected, atol=1e-14)
    ground = np.where(np.diag(H).real == np.diag(H).real.min())[0]
    assert list(ground) == [flat_index(5, 0, "up"), flat_index(5, 0, "down")]


def test_h3_matches_mean_field_scale():
    # ground energy per particle at lam=0 approaches the band minimum
    # -sqrt(delta^2 + (v+w)^2) as N grows (0.1% at N = 200)
    p = ModelParams(S=100, w=1.0, v=1.0, delta=4.0, lam=0.0)
    e0 = np.linalg.eigvalsh(h3_matrix(p.S, p.w, p.v, p.delta, p.lam)).min()
    band = -np.hypot(4.0, 2.0)
    assert 2 * e0 / p.N == pytest.approx(band, rel=1e-3)


def test_builders_are_hermitian():
    rng = np.random.default_rng(7)
    for _ in range(4):
        p = ModelParams(S=3.5, w=rng.uniform(0, 2), v=rng.uniform(0, 2),
                        delta=rng.uniform(-2, 2), lam=rng.uniform(-1, 1))
        for op in (build_h1(p), build_h2(p), build_h3(p)):
            a = op.entries
            assert np.abs(a - a.conj().T).max() < 1e-12


def test_sz_and_pauli_embeddings():
    np.testing.assert_array_equal(np.diag(build_sz(1).entries).real,
                                  [-1, -1, 0, 0, 1, 1])
    sz = build_pauli("z", 1).entries
    psi = np.zeros(6)
    psi[flat_index(1, 0, "down")] = 1.0
    np.testing.assert_array_equal(sz @ psi, -psi)
    sx = build_pauli("x", 1).entries
    np.testing.assert_allclose(sx @ sx, np.eye(6), atol=1e-15)
    with pytest.raises(ValueError):
        build_pauli("w", 1)
