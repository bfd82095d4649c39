"""The horizon channel: squeezing parameter, squeezed states and Kraus operators.

Bob's Kruskal mode seen from one static patch evolves into a two-mode
squeezed state. Tracing the unseen partner mode leaves the quantum-limited
amplifier of gain cosh²γ, whose Kraus operators are

    A_n = tanh^n γ / (√n! cosh γ) · (b†)^n · (1/cosh γ)^{b†b}
"""
import logging
import math

import numpy as np

from errors import DimensionMismatchError, InvalidArgumentError
from models import (
    GAMMA_LIMIT,
    ChannelParams,
    DensityOperator,
    KrausSet,
    ModeLayout,
    MultiModeKet,
)
from services.fock_service import eig_symmetric

logger = logging.getLogger(__name__)

DEFAULT_TAIL_TOL = 1e-12
DEFAULT_MAX_TRUNCATION = 512


def horizon_radius(lambda_):
    """Horizon radius a = √(3/Λ) for a positive cosmological constant."""
    if not lambda_ > 0:
        raise InvalidArgumentError(f"Cosmological constant must be positive, got {lambda_}")
    return math.sqrt(3.0 / lambda_)


def gamma_from_frequency(omega, lambda_):
    """Squeezing parameter of a mode of frequency ``omega``: tanh γ = exp(-π a ω).

    Args:
        omega: Mode frequency, strictly positive
        lambda_: Cosmological constant, strictly positive

    Returns:
        γ ≥ 0
    """
    if not omega > 0:
        raise InvalidArgumentError(
            f"Mode frequency must be positive (ω = 0 needs infinite squeezing), got {omega}"
        )
    radius = horizon_radius(lambda_)
    return math.atanh(math.exp(-math.pi * radius * omega))


def channel_gain(gamma):
    return math.cosh(gamma) ** 2


def vacuum_tail(gamma, truncation):
    """Weight of the vacuum input lost beyond |N>: tanh^{2(N+1)} γ."""
    return math.tanh(gamma) ** (2 * (truncation + 1))


def excited_tail(gamma, truncation):
    """Weight of the single-excitation input lost beyond |N>."""
    x = math.tanh(gamma) ** 2
    return x**truncation * (truncation + 1 - truncation * x)


def tail_bound(gamma, truncation):
    return max(vacuum_tail(gamma, truncation), excited_tail(gamma, truncation))


def auto_truncation(gamma, tail_tol=DEFAULT_TAIL_TOL, max_truncation=DEFAULT_MAX_TRUNCATION):
    """Smallest N ≥ 1 whose tail bound meets ``tail_tol``, capped at ``max_truncation``."""
    for truncation in range(1, max_truncation + 1):
        if tail_bound(gamma, truncation) <= tail_tol:
            return truncation
    logger.warning(
        "Truncation capped at N=%d for gamma=%.6g: tail bound %.3e exceeds %.1e",
        max_truncation,
        gamma,
        tail_bound(gamma, max_truncation),
        tail_tol,
    )
    return max_truncation


def channel_params(
    gamma, truncation=None, tail_tol=DEFAULT_TAIL_TOL, max_truncation=DEFAULT_MAX_TRUNCATION
):
    """Build ChannelParams, selecting N from the tail bound when ``truncation`` is None."""
    if not gamma >= 0:
        raise InvalidArgumentError(f"gamma must be non-negative, got {gamma}")
    if gamma > GAMMA_LIMIT:
        raise InvalidArgumentError(f"gamma must not exceed {GAMMA_LIMIT}, got {gamma}")
    if truncation is None:
        truncation = auto_truncation(gamma, tail_tol, max_truncation)
    return ChannelParams(gamma=float(gamma), truncation=int(truncation), tail_tol=tail_tol)


def params_tail_bound(params):
    return tail_bound(params.gamma, params.truncation)


def is_capped(params):
    return params_tail_bound(params) > params.tail_tol


def squeezed_vacuum(params):
    """Kruskal vacuum as Σ_n tanh^n γ / cosh γ |n>_I |n>_II, cut at n = N."""
    dim = params.dim
    n = np.arange(dim)
    amplitudes = np.zeros(dim * dim)
    amplitudes[n * dim + n] = np.power(math.tanh(params.gamma), n) / math.cosh(params.gamma)
    return MultiModeKet(ModeLayout((dim, dim)), amplitudes)


def squeezed_one(params):
    """Single Kruskal excitation as Σ_n tanh^n γ √(n+1) / cosh²γ |n+1>_I |n>_II."""
    if params.truncation < 1:
        raise InvalidArgumentError("The excited squeezed state needs truncation N >= 1")
    dim = params.dim
    n = np.arange(params.truncation)
    amplitudes = np.zeros(dim * dim)
    amplitudes[(n + 1) * dim + n] = (
        np.power(math.tanh(params.gamma), n) * np.sqrt(n + 1) / math.cosh(params.gamma) ** 2
    )
    return MultiModeKet(ModeLayout((dim, dim)), amplitudes)


def creation_operator(dim):
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=-1)


def number_operator(dim):
    return np.diag(np.arange(dim, dtype=float))


def kraus_set(params, literal_prefactor=False):
    """Kraus operators A_0..A_N of the horizon channel.

    Each A_n maps |m> to |m+n>, so only its n-th subdiagonal is kept. The
    matrix elements come from the subdiagonal of b† (the ladder product
    √((m+n)!/m!)) and the diagonal of b†b (the damping sech^m).

    Args:
        params: ChannelParams
        literal_prefactor: Use tanh²γ in place of tanh^n γ in the prefactor

    Returns:
        KrausSet with its completeness defects
    """
    dim = params.dim
    tanh = math.tanh(params.gamma)
    cosh = math.cosh(params.gamma)

    raising = np.diagonal(creation_operator(dim), offset=-1)
    log_ladder = np.concatenate(([0.0], np.cumsum(np.log(raising))))
    log_damping = -np.diagonal(number_operator(dim)) * math.log(cosh)

    diagonals = []
    for n in range(dim):
        m = np.arange(dim - n)
        prefactor = tanh ** (2 if literal_prefactor else n) / cosh
        log_elements = log_ladder[m + n] - log_ladder[m] - log_ladder[n] + log_damping[m]
        diagonals.append(prefactor * np.exp(log_elements))

    # Σ A_n^T A_n is diagonal: entry m collects every A_n acting on |m>.
    totals = np.zeros(dim)
    for n, weights in enumerate(diagonals):
        totals[: dim - n] += weights**2
    sector = totals[: min(2, dim)]

    return KrausSet(
        params=params,
        diagonals=tuple(diagonals),
        completeness_defect=float(np.max(np.abs(sector - 1.0))),
        full_defect=float(np.max(np.abs(totals - 1.0))),
        literal_prefactor=literal_prefactor,
    )


def apply_channel(rho, ks, target):
    """Apply Σ_n A_n ρ A_n^T with the Kraus operators acting on ``target``."""
    layout = rho.layout
    layout.check_index(target)
    dim = layout.dims[target]
    if dim != len(ks):
        raise DimensionMismatchError(
            f"Target subsystem has dimension {dim}, Kraus operators act on {len(ks)}"
        )

    count = len(layout)
    moved = np.moveaxis(rho.tensor_view(), (target, target + count), (-2, -1))
    out = np.zeros(moved.shape)
    for n, weights in enumerate(ks.diagonals):
        size = dim - n
        out[..., n:, n:] += weights[:, None] * moved[..., :size, :size] * weights[None, :]

    restored = np.moveaxis(out, (-2, -1), (target, target + count))
    matrix = restored.reshape(layout.size, layout.size)
    return DensityOperator(layout, 0.5 * (matrix + matrix.T))


def choi_matrix(ks):
    """Σ_n vec(A_n) vec(A_n)^T, side (N+1)²; only meant for small N."""
    vectors = np.stack([op.reshape(-1) for op in ks.ops], axis=1)
    return vectors @ vectors.T


def choi_spectrum(ks):
    """Ascending Choi eigenvalues without building the Choi matrix.

    The non-zero spectrum equals that of the Gram matrix of the vec(A_n);
    distinct A_n live on distinct subdiagonals, so the Gram matrix is
    diagonal. The remaining (N+1)² - (N+1) eigenvalues are zero.
    """
    gram = np.diag([float(weights @ weights) for weights in ks.diagonals])
    padding = np.zeros(ks.params.dim**2 - len(ks))
    return np.sort(np.concatenate([eig_symmetric(gram), padding]))
