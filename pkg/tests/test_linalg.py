import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chainsep import (
    GeometryError,
    LocalOperator,
    embed,
    herm_exp,
    herm_fn,
    herm_log,
    identity,
    is_psd,
    norms,
    partial_trace,
    partial_transpose,
)
from helpers import (
    embed_oracle,
    expm_oracle,
    partial_trace_oracle,
    partial_transpose_oracle,
    random_hermitian,
    random_state,
)

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)

BELL = np.zeros((4, 4), dtype=complex)
for i in (0, 3):
    for j in (0, 3):
        BELL[i, j] = 0.5


def test_embed_identity_padding():
    op = LocalOperator((2,), SZ)
    out = embed(op, (1, 2))
    assert np.allclose(out.matrix, np.kron(np.eye(2), SZ))


def test_embed_full_identity():
    out = embed(identity((1,)), (1, 2, 3))
    assert np.allclose(out.matrix, np.eye(8))


def test_embed_noncontiguous_vs_oracle():
    op = LocalOperator((1, 3), np.kron(SX, SX))
    out = embed(op, (1, 2, 3))
    expect = embed_oracle(np.kron(SX, SX), (1, 3), (1, 2, 3))
    assert np.abs(out.matrix - expect).max() < 1e-14


def test_embed_trace_scaling():
    rng = np.random.default_rng(3)
    op = LocalOperator((0, 2), random_state(rng, 4))
    out = embed(op, (0, 1, 2, 5))
    assert out.trace().real == pytest.approx(op.trace().real * 4, rel=1e-13)


def test_embed_requires_subset():
    with pytest.raises(GeometryError):
        embed(LocalOperator((0,), SZ), (1, 2))


def test_partial_trace_identity():
    out = partial_trace(identity((1, 2)), (2,))
    assert np.allclose(out.matrix, 2 * np.eye(2))


def test_partial_trace_product_state():
    ket00 = np.zeros((4, 4))
    ket00[0, 0] = 1.0
    out = partial_trace(LocalOperator((1, 2), ket00), (2,))
    assert np.allclose(out.matrix, np.diag([1.0, 0.0]))


def test_partial_trace_vs_oracle():
    rng = np.random.default_rng(7)
    rho = random_state(rng, 8)
    out = partial_trace(LocalOperator((0, 1, 2), rho), (1,))
    expect = partial_trace_oracle(rho, (0, 1, 2), (1,))
    assert np.abs(out.matrix - expect).max() < 1e-13


def test_partial_trace_requires_subset():
    with pytest.raises(GeometryError):
        partial_trace(identity((0, 1)), (5,))


def test_partial_transpose_product():
    rng = np.random.default_rng(11)
    a = random_hermitian(rng, 2)
    b = random_hermitian(rng, 2)
    out = partial_transpose(LocalOperator((0, 1), np.kron(a, b)), (1,))
    assert np.allclose(out.matrix, np.kron(a, b.T))


def test_partial_transpose_involution():
    rng = np.random.default_rng(13)
    rho = random_state(rng, 8)
    op = LocalOperator((0, 1, 2), rho)
    twice = partial_transpose(partial_transpose(op, (0, 2)), (0, 2))
    assert np.array_equal(twice.matrix, op.matrix)


def test_partial_transpose_bell_spectrum():
    out = partial_transpose(LocalOperator((0, 1), BELL), (1,))
    w = np.sort(np.linalg.eigvalsh(out.matrix))
    assert np.allclose(w, [-0.5, 0.5, 0.5, 0.5], atol=1e-14)


def test_partial_transpose_vs_oracle():
    rng = np.random.default_rng(17)
    rho = random_state(rng, 8)
    out = partial_transpose(LocalOperator((0, 1, 2), rho), (1, 2))
    expect = partial_transpose_oracle(rho, (0, 1, 2), (1, 2))
    assert np.abs(out.matrix - expect).max() < 1e-14


def test_herm_fn_zero_matrix():
    out = herm_fn(LocalOperator((0,), np.zeros((2, 2))), np.exp)
    assert np.allclose(out.matrix, np.eye(2))


def test_herm_fn_pauli_z():
    out = herm_fn(LocalOperator((0,), SZ), lambda x: np.exp(-x))
    assert np.allclose(out.matrix, np.diag([np.exp(-1), np.exp(1)]))


def test_herm_exp_vs_series_oracle():
    rng = np.random.default_rng(19)
    h = random_hermitian(rng, 8)
    out = herm_exp(LocalOperator((0, 1, 2), h))
    expect = expm_oracle(h)
    rel = np.linalg.norm(out.matrix - expect) / np.linalg.norm(expect)
    assert rel < 1e-12


def test_herm_fn_rejects_nonhermitian():
    m = np.array([[0, 1], [0, 0]], dtype=complex)
    with pytest.raises(ValueError):
        herm_fn(LocalOperator((0,), m), np.exp)


def test_herm_log_requires_positive_spectrum():
    with pytest.raises(ValueError):
        herm_log(LocalOperator((0,), SZ))


def test_norms_identity():
    n = norms(identity((0, 1)))
    assert n.operator_norm == pytest.approx(1.0)
    assert n.trace_norm == pytest.approx(4.0)
    assert n.frobenius == pytest.approx(2.0)


def test_norms_diagonal():
    n = norms(LocalOperator((0,), np.diag([3.0, -4.0])))
    assert n.operator_norm == pytest.approx(4.0)
    assert n.trace_norm == pytest.approx(7.0)
    assert n.min_eig == pytest.approx(-4.0)


def test_norm_ordering_random():
    rng = np.random.default_rng(23)
    for _ in range(20):
        m = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
        n = norms(LocalOperator((0, 1, 2), m))
        assert n.operator_norm <= n.frobenius + 1e-12
        assert n.frobenius <= n.trace_norm + 1e-12


# -- invariants ------------------------------------------------------------

@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**10 - 1), st.integers(1, 3))
def test_ptrace_of_embed_recovers_scaled_op(seed, pad):
    rng = np.random.default_rng(seed)
    op = LocalOperator((0, 1), random_hermitian(rng, 4))
    target = (0, 1) + tuple(range(2, 2 + pad))
    out = partial_trace(embed(op, target), tuple(range(2, 2 + pad)))
    assert np.abs(out.matrix - 2**pad * op.matrix).max() < 1e-13


def test_partial_transpose_trace_norm_on_products():
    rng = np.random.default_rng(29)
    a = random_hermitian(rng, 2)
    b = random_hermitian(rng, 4)
    op = LocalOperator((0, 1, 2), np.kron(a, b))
    before = norms(op).trace_norm
    after = norms(partial_transpose(op, (1, 2))).trace_norm
    assert after == pytest.approx(before, rel=1e-12)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**10 - 1))
def test_herm_exp_inverse_pair(seed):
    rng = np.random.default_rng(seed)
    h = LocalOperator((0, 1), random_hermitian(rng, 4))
    prod = herm_exp(h, 1.0) @ herm_exp(h, -1.0)
    assert np.abs(prod.matrix - np.eye(4)).max() < 1e-10


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**10 - 1))
def test_partial_trace_preserves_psd(seed):
    rng = np.random.default_rng(seed)
    rho = LocalOperator((0, 1, 2), random_state(rng, 8))
    out = partial_trace(rho, (1,))
    assert is_psd(out, 1e-12)
    assert out.trace().real == pytest.approx(1.0, abs=1e-12)


def test_support_must_be_sorted():
    with pytest.raises(GeometryError):
        LocalOperator((2, 1), np.eye(4))
