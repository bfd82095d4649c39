"""Truncated Fock-space linear algebra on real kets and density operators."""
import math

import numpy as np
import scipy.linalg
import scipy.sparse
from scipy.sparse.csgraph import connected_components
from scipy.special import entr

from errors import (
    DimensionMismatchError,
    InvalidArgumentError,
    NotAStateError,
    OutOfRangeError,
)
from models import DensityOperator, ModeLayout, MultiModeKet

EIGEN_SYMMETRY_TOL = 1e-10
NOT_A_STATE = 1e-8


def number_state(n, dim):
    """Return the basis ket |n> of a single subsystem of dimension ``dim``."""
    if dim < 1:
        raise InvalidArgumentError(f"Dimension must be positive, got {dim}")
    if not 0 <= n < dim:
        raise OutOfRangeError(f"Number state |{n}> does not fit dimension {dim}")
    amplitudes = np.zeros(dim)
    amplitudes[n] = 1.0
    return MultiModeKet(ModeLayout((dim,)), amplitudes)


def tensor(a, b):
    return MultiModeKet(a.layout + b.layout, np.kron(a.amplitudes, b.amplitudes))


def density_from_ket(psi):
    return DensityOperator(psi.layout, np.outer(psi.amplitudes, psi.amplitudes))


def _normalize_keep(layout, keep):
    indices = sorted(set(int(i) for i in keep))
    if not indices:
        raise InvalidArgumentError("At least one subsystem must be kept")
    for index in indices:
        layout.check_index(index)
    return indices


def partial_trace(rho, keep):
    """Trace out every subsystem not listed in ``keep``.

    Kept subsystems stay in their original order.

    Args:
        rho: Density operator to reduce
        keep: Indices of the subsystems to keep

    Returns:
        Reduced DensityOperator
    """
    indices = _normalize_keep(rho.layout, keep)
    count = len(rho.layout)
    tensor_view = rho.tensor_view()

    # Highest index first keeps the lower axis numbers valid.
    remaining = count
    for index in sorted(set(range(count)) - set(indices), reverse=True):
        tensor_view = np.trace(tensor_view, axis1=index, axis2=index + remaining)
        remaining -= 1

    layout = rho.layout.restrict(indices)
    matrix = tensor_view.reshape(layout.size, layout.size)
    return DensityOperator(layout, 0.5 * (matrix + matrix.T))


def reduce_ket(psi, keep):
    """Reduced density operator of a pure state, without forming |psi><psi|."""
    indices = _normalize_keep(psi.layout, keep)
    others = [i for i in range(len(psi.layout)) if i not in indices]
    layout = psi.layout.restrict(indices)

    amplitudes = np.transpose(psi.tensor_view(), indices + others)
    factor = amplitudes.reshape(layout.size, -1)
    matrix = factor @ factor.T
    return DensityOperator(layout, 0.5 * (matrix + matrix.T))


def embed(rho, dims):
    """Zero-pad ``rho`` into a layout with larger local dimensions."""
    dims = tuple(dims)
    if len(dims) != len(rho.layout):
        raise DimensionMismatchError(
            f"Cannot embed {len(rho.layout)} subsystems into {len(dims)}"
        )
    if any(new < old for new, old in zip(dims, rho.layout.dims)):
        raise DimensionMismatchError(f"Cannot embed {rho.layout.dims} into smaller {dims}")

    layout = ModeLayout(dims)
    padded = np.zeros(dims + dims)
    window = tuple(slice(0, d) for d in rho.layout.dims)
    padded[window + window] = rho.tensor_view()
    return DensityOperator(layout, padded.reshape(layout.size, layout.size))


def partial_transpose(rho, sub):
    """Transpose the row and column indices of subsystem ``sub`` only."""
    rho.layout.check_index(sub)
    count = len(rho.layout)
    swapped = np.swapaxes(rho.tensor_view(), sub, sub + count)
    return np.ascontiguousarray(swapped).reshape(rho.matrix.shape)


def _check_symmetric(m):
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidArgumentError(f"Expected a square matrix, got shape {m.shape}")
    if m.size and np.max(np.abs(m - m.T)) > EIGEN_SYMMETRY_TOL:
        raise InvalidArgumentError("Matrix is not symmetric")
    return 0.5 * (m + m.T)


def _blocks(sym):
    """Yield index arrays of the connected blocks of the non-zero pattern."""
    count, labels = connected_components(scipy.sparse.csr_matrix(sym), directed=False)
    order = np.argsort(labels, kind="stable")
    bounds = np.cumsum(np.bincount(labels, minlength=count))[:-1]
    return np.split(order, bounds)


def eig_symmetric(m):
    """Ascending eigenvalues of a real symmetric matrix.

    The matrix is split into the connected blocks of its non-zero pattern
    and each block is solved densely.
    """
    sym = _check_symmetric(m)
    eigenvalues = np.empty(sym.shape[0])
    if not sym.size:
        return eigenvalues
    for block in _blocks(sym):
        if block.size == 1:
            eigenvalues[block] = sym[block[0], block[0]]
        else:
            eigenvalues[block] = scipy.linalg.eigh(
                sym[np.ix_(block, block)], eigvals_only=True
            )
    return np.sort(eigenvalues)


def spectral_decomposition(m):
    """Eigenvalues and orthonormal eigenvectors, ascending, as (values, vectors)."""
    sym = _check_symmetric(m)
    side = sym.shape[0]
    values = np.empty(side)
    vectors = np.zeros((side, side))
    for block in _blocks(sym):
        block_values, block_vectors = scipy.linalg.eigh(sym[np.ix_(block, block)])
        values[block] = block_values
        vectors[np.ix_(block, block)] = block_vectors
    order = np.argsort(values, kind="stable")
    return values[order], vectors[:, order]


def von_neumann_entropy(rho, base=2):
    """Entropy -tr(rho log rho) in the given base.

    Eigenvalues down to -1e-8 are clipped to zero; anything more negative
    means ``rho`` is not a state.

    Args:
        rho: DensityOperator
        base: Logarithm base, 2 for bits or math.e for nats

    Returns:
        Non-negative entropy
    """
    if not (base > 0 and base != 1):
        raise InvalidArgumentError(f"Logarithm base must be positive and not 1, got {base}")
    eigenvalues = eig_symmetric(rho.matrix)
    if eigenvalues.size and eigenvalues[0] < -NOT_A_STATE:
        raise NotAStateError(
            f"Eigenvalue {eigenvalues[0]:.3e} is too negative for a density operator"
        )
    clipped = np.clip(eigenvalues, 0.0, 1.0)
    entropy = float(np.sum(entr(clipped))) / math.log(base)
    return max(entropy, 0.0)
