import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chainsep import (
    ConfigError,
    EmptyIntersectionError,
    GeometryError,
    Interaction,
    LocalOperator,
    ModelSpec,
    RegionsABC,
    builtin_models,
    embed,
    hamiltonian,
    k_neighborhood,
    op_norm,
    truncated_hamiltonian,
)
from chainsep.model import PAULI_X, PAULI_Z


def test_zero_interaction_hamiltonian():
    ia = builtin_models("zero", {"sites": 4})
    h = hamiltonian(ia, (0, 1, 2))
    assert np.array_equal(h.matrix, np.zeros((8, 8)))


def test_single_site_field_hamiltonian():
    ia = Interaction(2, (0, 1), {(0,): 0.7 * PAULI_Z, (1,): 0.7 * PAULI_Z}, 0)
    h = hamiltonian(ia, (0, 1))
    expect = 0.7 * (np.kron(PAULI_Z, np.eye(2)) + np.kron(np.eye(2), PAULI_Z))
    assert np.allclose(h.matrix, expect)


def test_tfi_vs_term_by_term_oracle():
    ia = builtin_models("tfi", {"sites": 3})
    h = hamiltonian(ia, (0, 1, 2))
    # independent summation: embed every term by hand via kron
    eye = np.eye(2)
    expect = (
        -np.kron(np.kron(PAULI_Z, PAULI_Z), eye)
        - np.kron(eye, np.kron(PAULI_Z, PAULI_Z))
        - np.kron(np.kron(PAULI_X, eye), eye)
        - np.kron(np.kron(eye, PAULI_X), eye)
        - np.kron(np.kron(eye, eye), PAULI_X)
    )
    assert np.abs(h.matrix - expect).max() < 1e-14


def test_hamiltonian_empty_region_rejected():
    ia = builtin_models("tfi", {"sites": 3})
    with pytest.raises(GeometryError):
        hamiltonian(ia, ())


def test_hamiltonian_norm_bounded_by_strength():
    ia = builtin_models("random", {"sites": 6, "range": 2, "strength": 1.5, "seed": 4})
    h = hamiltonian(ia, ia.sites)
    assert op_norm(h) <= ia.strength * len(ia.sites) + 1e-9


def test_k_neighborhood_basic():
    regions = RegionsABC.from_sizes(4, 5, 4)
    assert k_neighborhood(regions, 0) == regions.b
    assert k_neighborhood(regions, 2) == tuple(range(2, 11))
    assert len(k_neighborhood(regions, 2)) == 9
    assert k_neighborhood(regions, 7) == regions.all_sites


def test_truncated_hamiltonian_signals_and_saturates():
    ia = builtin_models("tfi", {"sites": 8})
    regions = RegionsABC.from_sizes(3, 2, 3)
    with pytest.raises(EmptyIntersectionError):
        truncated_hamiltonian(ia, regions, "A", 0)
    big = truncated_hamiltonian(ia, regions, "A", 10)
    assert np.allclose(big.matrix, hamiltonian(ia, regions.a).matrix)


def test_truncated_ac_splits_for_wide_gap():
    ia = builtin_models("tfi", {"sites": 9})
    regions = RegionsABC.from_sizes(3, 3, 3)
    k = 2
    h_ac = truncated_hamiltonian(ia, regions, "AC", k)
    h_a = truncated_hamiltonian(ia, regions, "A", k)
    h_c = truncated_hamiltonian(ia, regions, "C", k)
    split = embed(h_a, h_ac.support) + embed(h_c, h_ac.support)
    assert np.abs(h_ac.matrix - split.matrix).max() < 1e-14


def test_tfi_strength_convention():
    # interior site: two bonds of norm 1 plus one field of norm 1
    ia = builtin_models("tfi", {"sites": 5, "coupling": 1.0, "field": 1.0})
    assert ia.interaction_range == 1
    assert ia.strength == pytest.approx(3.0)


def test_zero_model_strength():
    assert builtin_models("zero", {"sites": 4}).strength == 0.0


def test_random_model_is_deterministic():
    a = builtin_models("random", {"sites": 5, "range": 2, "strength": 2.0, "seed": 7})
    b = builtin_models("random", {"sites": 5, "range": 2, "strength": 2.0, "seed": 7})
    assert set(a.terms) == set(b.terms)
    for supp in a.terms:
        assert np.array_equal(a.terms[supp], b.terms[supp])


def test_random_model_strength_is_normalized():
    ia = builtin_models("random", {"sites": 6, "range": 2, "strength": 2.5, "seed": 1})
    assert ia.strength == pytest.approx(2.5, rel=1e-12)


def test_unknown_family_rejected():
    with pytest.raises(ConfigError):
        builtin_models("does-not-exist", {"sites": 3})


def test_boundary_term_norm_bound():
    # splitting an interval drops only terms near the cut
    ia = builtin_models("random", {"sites": 8, "range": 2, "strength": 2.0, "seed": 9})
    full = hamiltonian(ia, ia.sites)
    left = hamiltonian(ia, ia.sites[:4])
    right = hamiltonian(ia, ia.sites[4:])
    gap = full - (embed(left, ia.sites) + embed(right, ia.sites))
    assert op_norm(gap) <= ia.interaction_range * ia.strength + 1e-9


def test_interaction_additivity():
    a = builtin_models("tfi", {"sites": 4})
    b = builtin_models("classical_ising", {"sites": 4})
    combined = a + b
    h = hamiltonian(combined, (0, 1, 2, 3))
    expect = hamiltonian(a, (0, 1, 2, 3)) + hamiltonian(b, (0, 1, 2, 3))
    assert np.abs(h.matrix - expect.matrix).max() < 1e-13


def test_model_spec_roundtrip():
    spec = ModelSpec("random", {"range": 2, "strength": 2.0}, sites=6, seed=11)
    text = spec.canonical_json()
    again = ModelSpec.from_json(text)
    assert again == spec
    assert again.canonical_json() == text
    ia1, ia2 = spec.build(), again.build()
    assert ia1.strength == ia2.strength
    for supp in ia1.terms:
        assert np.array_equal(ia1.terms[supp], ia2.terms[supp])


def test_regions_validation():
    with pytest.raises(GeometryError):
        RegionsABC((0, 1), (3, 4), (5, 6))  # gap between A and B
    with pytest.raises(GeometryError):
        RegionsABC((0, 1), (), (2,))


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4), st.integers(0, 6))
def test_k_neighborhood_size(na, nb, nc, k):
    regions = RegionsABC.from_sizes(na, nb, nc)
    hood = k_neighborhood(regions, k)
    assert len(hood) == nb + min(k, na) + min(k, nc)
    assert set(regions.b) <= set(hood)
