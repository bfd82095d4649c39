"""Information measures computed from the truncated states."""
import logging

import numpy as np

from errors import DimensionMismatchError, InvalidArgumentError, UnsupportedStateError
from models import StateKind
from services.channel_service import (
    DEFAULT_MAX_TRUNCATION,
    DEFAULT_TAIL_TOL,
    channel_params,
)
from services.fock_service import (
    eig_symmetric,
    partial_trace,
    partial_transpose,
    von_neumann_entropy,
)
from services.state_service import final_rho_ab, thermalize

logger = logging.getLogger(__name__)

NEGATIVITY_CLIP = 1e-10
NEGATIVITY_FLOOR = 1e-9


def entanglement_fidelity_numeric(rho, ks, target=1):
    """Entanglement fidelity Σ_n tr(ρ (I ⊗ A_n))² of the channel on ``target``.

    Only Bob's reduction enters, and tr(ρ_B A_n) reads the n-th
    subdiagonal of ρ_B.
    """
    rho.layout.check_index(target)
    if rho.layout.dims[target] != len(ks):
        raise DimensionMismatchError(
            f"Subsystem {target} has dimension {rho.layout.dims[target]}, "
            f"Kraus operators act on {len(ks)}"
        )
    rho_b = partial_trace(rho, [target]).matrix
    fidelity = sum(
        float(weights @ np.diagonal(rho_b, offset=-n)) ** 2
        for n, weights in enumerate(ks.diagonals)
    )
    return min(max(fidelity, 0.0), 1.0)


def mutual_information(rho, part_a, part_b):
    """I(a:b) = S(a) + S(b) - S(ab) in bits.

    Subsystems outside ``part_a`` and ``part_b`` are traced out first.
    """
    part_a = sorted(set(part_a))
    part_b = sorted(set(part_b))
    if not part_a or not part_b:
        raise InvalidArgumentError("Both partitions must be non-empty")
    if set(part_a) & set(part_b):
        raise InvalidArgumentError(f"Partitions {part_a} and {part_b} overlap")

    joint = sorted(part_a + part_b)
    if len(joint) < len(rho.layout):
        rho = partial_trace(rho, joint)
    relabel = {old: new for new, old in enumerate(joint)}
    a = [relabel[i] for i in part_a]
    b = [relabel[i] for i in part_b]

    return (
        von_neumann_entropy(partial_trace(rho, a))
        + von_neumann_entropy(partial_trace(rho, b))
        - von_neumann_entropy(rho)
    )


def tripartite_mi_numeric(system):
    """I(A:B:C) = I(A:B) + I(A:C) - I(A:BC) on the thermalized ρ_ABC."""
    rho = system.rho_abc
    return (
        mutual_information(rho, [0], [1])
        + mutual_information(rho, [0], [2])
        - mutual_information(rho, [0], [1, 2])
    )


def pt_spectrum(rho, sub=0):
    return eig_symmetric(partial_transpose(rho, sub))


def negativity(rho, sub=0):
    """Sum of |λ| over partial-transpose eigenvalues below -1e-10."""
    eigenvalues = pt_spectrum(rho, sub)
    return float(np.sum(np.abs(eigenvalues[eigenvalues < -NEGATIVITY_CLIP])))


def _negativity_at(kind, gamma, tail_tol, max_truncation):
    params = channel_params(gamma, tail_tol=tail_tol, max_truncation=max_truncation)
    return negativity(final_rho_ab(thermalize(kind, params)))


def negativity_threshold(
    kind,
    lo=0.5,
    hi=1.2,
    tol=1e-6,
    tail_tol=DEFAULT_TAIL_TOL,
    max_truncation=DEFAULT_MAX_TRUNCATION,
):
    """Largest γ in [lo, hi] at which Alice and Bob's negativity exceeds 1e-9.

    Bisection with the cutoff chosen from the tail bound at every probe.

    Args:
        kind: Must be StateKind.W; GHZ negativity vanishes identically
        lo: Lower end of the bracket, where the state must be entangled
        hi: Upper end of the bracket, where it must not be
        tol: Width at which bisection stops

    Returns:
        The lower end of the final bracket
    """
    if kind is not StateKind.W:
        raise UnsupportedStateError(
            f"{kind.value} negativity vanishes at every gamma, there is no threshold to find"
        )
    if not (0 <= lo < hi and tol > 0):
        raise InvalidArgumentError(f"Invalid bracket [{lo}, {hi}] with tolerance {tol}")

    if _negativity_at(kind, lo, tail_tol, max_truncation) <= NEGATIVITY_FLOOR:
        raise InvalidArgumentError(f"Negativity already vanishes at the lower end {lo}")
    if _negativity_at(kind, hi, tail_tol, max_truncation) > NEGATIVITY_FLOOR:
        raise InvalidArgumentError(f"Negativity does not vanish at the upper end {hi}")

    steps = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _negativity_at(kind, mid, tail_tol, max_truncation) > NEGATIVITY_FLOOR:
            lo = mid
        else:
            hi = mid
        steps += 1
    logger.info("Negativity threshold bracket [%.9f, %.9f] after %d steps", lo, hi, steps)
    return lo
