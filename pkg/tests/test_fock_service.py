import math

import numpy as np
import pytest

from errors import InvalidArgumentError, NotAStateError, OutOfRangeError
from helpers import random_ket, random_state
from models import DensityOperator, ModeLayout, MultiModeKet
from services.channel_service import channel_params, squeezed_vacuum
from services.fock_service import (
    density_from_ket,
    eig_symmetric,
    embed,
    number_state,
    partial_trace,
    partial_transpose,
    reduce_ket,
    spectral_decomposition,
    tensor,
    von_neumann_entropy,
)


def qubit_density(*diagonal):
    return DensityOperator(ModeLayout((2,) * int(math.log2(len(diagonal)))), np.diag(diagonal))


def test_number_state_places_a_single_one():
    assert np.array_equal(number_state(0, 3).amplitudes, [1, 0, 0])
    assert np.array_equal(number_state(2, 3).amplitudes, [0, 0, 1])
    assert number_state(2, 3).layout.dims == (3,)


def test_number_state_out_of_range():
    with pytest.raises(OutOfRangeError):
        number_state(3, 3)


def test_tensor_leftmost_subsystem_varies_slowest():
    assert np.array_equal(tensor(number_state(0, 2), number_state(1, 2)).amplitudes, [0, 1, 0, 0])
    assert np.array_equal(tensor(number_state(1, 2), number_state(0, 2)).amplitudes, [0, 0, 1, 0])
    assert tensor(number_state(1, 2), number_state(0, 3)).layout.dims == (2, 3)


def test_tensor_norm_is_product_of_norms():
    rng = np.random.default_rng(7)
    a = MultiModeKet(ModeLayout((3,)), rng.normal(size=3))
    b = MultiModeKet(ModeLayout((4,)), rng.normal(size=4))
    assert math.sqrt(tensor(a, b).squared_norm) == pytest.approx(
        math.sqrt(a.squared_norm * b.squared_norm), abs=1e-12
    )


def test_density_from_ket():
    assert np.array_equal(density_from_ket(number_state(0, 2)).matrix, [[1, 0], [0, 0]])
    plus = MultiModeKet(ModeLayout((2,)), np.array([1.0, 1.0]) / math.sqrt(2))
    np.testing.assert_allclose(density_from_ket(plus).matrix, np.full((2, 2), 0.5), atol=1e-15)


def test_density_from_ket_has_rank_one():
    rho = density_from_ket(random_ket((2, 3), seed=1))
    eigenvalues = eig_symmetric(rho.matrix)
    assert np.count_nonzero(eigenvalues > 1e-10) == 1
    assert rho.trace == pytest.approx(1.0, abs=1e-12)


def test_partial_trace_of_product_basis_state():
    rho = density_from_ket(tensor(number_state(0, 2), number_state(0, 2)))
    np.testing.assert_array_equal(partial_trace(rho, [0]).matrix, [[1, 0], [0, 0]])


def test_partial_trace_of_product_recovers_factor():
    a = random_ket((3,), seed=2)
    b = random_ket((4,), seed=3)
    reduced = partial_trace(density_from_ket(tensor(a, b)), [0])
    np.testing.assert_allclose(reduced.matrix, density_from_ket(a).matrix, atol=1e-12)


def test_partial_trace_of_squeezed_vacuum_is_thermal():
    gamma = 0.5
    params = channel_params(gamma, truncation=30)
    reduced = partial_trace(density_from_ket(squeezed_vacuum(params)), [0])
    x = math.tanh(gamma) ** 2
    expected = np.diag([x**n / math.cosh(gamma) ** 2 for n in range(31)])
    np.testing.assert_allclose(reduced.matrix, expected, atol=1e-14)
    assert reduced.matrix[0, 0] == pytest.approx(1 / math.cosh(gamma) ** 2, abs=1e-14)


def test_partial_trace_rejects_empty_keep():
    with pytest.raises(InvalidArgumentError):
        partial_trace(random_state((2, 2), seed=4), [])


@pytest.mark.parametrize("keep", [[0], [1], [2], [0, 2], [1, 2]])
def test_partial_trace_preserves_trace_and_positivity(keep):
    reduced = partial_trace(random_state((2, 3, 2), seed=5), keep)
    assert reduced.trace == pytest.approx(1.0, abs=1e-12)
    assert eig_symmetric(reduced.matrix)[0] >= -1e-10


@pytest.mark.parametrize("keep", [[0], [1, 2], [0, 2], [2]])
def test_reduce_ket_matches_partial_trace(keep):
    psi = random_ket((2, 3, 4), seed=6)
    np.testing.assert_allclose(
        reduce_ket(psi, keep).matrix,
        partial_trace(density_from_ket(psi), keep).matrix,
        atol=1e-14,
    )


def test_reductions_of_pure_state_have_equal_entropy():
    psi = random_ket((3, 5), seed=8)
    assert von_neumann_entropy(reduce_ket(psi, [0])) == pytest.approx(
        von_neumann_entropy(reduce_ket(psi, [1])), abs=1e-9
    )


def test_partial_transpose_of_bell_state():
    bell = MultiModeKet(ModeLayout((2, 2)), np.array([1.0, 0, 0, 1.0]) / math.sqrt(2))
    spectrum = eig_symmetric(partial_transpose(density_from_ket(bell), 0))
    np.testing.assert_allclose(spectrum, [-0.5, 0.5, 0.5, 0.5], atol=1e-12)


def test_partial_transpose_leaves_classical_state_unchanged():
    rho = qubit_density(0.5, 0, 0, 0.5)
    np.testing.assert_array_equal(partial_transpose(rho, 0), rho.matrix)


def test_partial_transpose_is_an_involution():
    rho = random_state((2, 3), seed=9)
    once = DensityOperator(rho.layout, partial_transpose(rho, 1))
    assert np.trace(once.matrix) == pytest.approx(rho.trace, abs=1e-14)
    np.testing.assert_allclose(partial_transpose(once, 1), rho.matrix, atol=1e-14, rtol=0)


def test_partial_transpose_rejects_bad_subsystem():
    with pytest.raises(InvalidArgumentError):
        partial_transpose(random_state((2, 2), seed=10), 2)


def test_eig_symmetric_small_cases():
    np.testing.assert_allclose(eig_symmetric(np.eye(3)), [1, 1, 1])
    np.testing.assert_allclose(eig_symmetric([[0.0, 1.0], [1.0, 0.0]]), [-1, 1], atol=1e-15)


def test_eig_symmetric_rejects_asymmetric_input():
    with pytest.raises(InvalidArgumentError):
        eig_symmetric([[0.0, 1.0], [0.0, 0.0]])


def test_eig_symmetric_sum_matches_trace():
    rng = np.random.default_rng(11)
    m = rng.normal(size=(8, 8))
    m = m + m.T
    eigenvalues = eig_symmetric(m)
    assert np.all(np.diff(eigenvalues) >= 0)
    assert eigenvalues.sum() == pytest.approx(np.trace(m), abs=1e-9)
    np.testing.assert_allclose(eigenvalues, np.linalg.eigvalsh(m), atol=1e-10)


def test_eig_symmetric_handles_permuted_blocks():
    rng = np.random.default_rng(12)
    blocks = [rng.normal(size=(k, k)) for k in (1, 3, 2)]
    m = np.zeros((6, 6))
    start = 0
    for block in blocks:
        size = block.shape[0]
        m[start : start + size, start : start + size] = block + block.T
        start += size
    order = rng.permutation(6)
    permuted = m[np.ix_(order, order)]
    np.testing.assert_allclose(eig_symmetric(permuted), np.linalg.eigvalsh(m), atol=1e-12)


def test_spectral_decomposition_reconstructs_matrix():
    rho = random_state((2, 2, 2), seed=13, rank=5)
    values, vectors = spectral_decomposition(rho.matrix)
    np.testing.assert_allclose(vectors @ np.diag(values) @ vectors.T, rho.matrix, atol=1e-9)
    np.testing.assert_allclose(vectors.T @ vectors, np.eye(8), atol=1e-12)


def test_entropy_of_pure_and_mixed_qubits():
    assert von_neumann_entropy(density_from_ket(random_ket((4,), seed=14))) == pytest.approx(
        0.0, abs=1e-9
    )
    mixed = DensityOperator(ModeLayout((2,)), np.eye(2) / 2)
    assert von_neumann_entropy(mixed) == pytest.approx(1.0, abs=1e-12)
    assert von_neumann_entropy(mixed, base=math.e) == pytest.approx(math.log(2), abs=1e-12)


def test_entropy_of_thermal_reduction_matches_series():
    gamma = 0.5
    params = channel_params(gamma, truncation=60)
    reduced = reduce_ket(squeezed_vacuum(params), [1])
    x = math.tanh(gamma) ** 2
    p = [x**n / math.cosh(gamma) ** 2 for n in range(61)]
    expected = -sum(value * math.log2(value) for value in p)
    assert von_neumann_entropy(reduced) == pytest.approx(expected, abs=1e-12)


def test_entropy_rejects_non_states():
    with pytest.raises(NotAStateError):
        von_neumann_entropy(DensityOperator(ModeLayout((2,)), np.diag([1.1, -0.1])))


def test_entropy_clips_rounding_noise():
    rho = DensityOperator(ModeLayout((2,)), np.diag([1 + 1e-11, -1e-11]))
    assert 0.0 <= von_neumann_entropy(rho) < 1e-9


def test_entropy_is_invariant_under_relabeling():
    rho = random_state((2, 3), seed=15)
    swapped = rho.tensor_view().transpose(1, 0, 3, 2).reshape(6, 6)
    relabeled = DensityOperator(ModeLayout((3, 2)), swapped)
    assert von_neumann_entropy(relabeled) == pytest.approx(von_neumann_entropy(rho), abs=1e-10)


def test_embed_pads_with_zeros():
    rho = qubit_density(0.5, 0, 0, 0.5)
    padded = embed(rho, (2, 4))
    assert padded.layout.dims == (2, 4)
    assert padded.matrix[0, 0] == 0.5
    assert padded.matrix[5, 5] == 0.5
    assert padded.trace == pytest.approx(1.0)
