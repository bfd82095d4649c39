"""GHZ and W states and their thermalized versions.

Subsystem order is A (Alice), B (Bob), C (Charlie). After thermalization
Bob's qubit is replaced by the two Rindler modes B_I and B_II, giving the
four-mode layout A ⊗ B_I ⊗ B_II ⊗ C.
"""
import math

import numpy as np

from errors import UnsupportedStateError
from models import DensityOperator, ModeLayout, MultiModeKet, StateKind, ThermalizedSystem
from services.channel_service import squeezed_one, squeezed_vacuum
from services.fock_service import density_from_ket, partial_trace, reduce_ket

QUBITS = ModeLayout((2, 2, 2))

ALICE, BOB, CHARLIE = 0, 1, 2
BOB_I, BOB_II = 1, 2


def _three_qubit_ket(amplitudes_by_label):
    amplitudes = np.zeros(QUBITS.size)
    for label, amplitude in amplitudes_by_label.items():
        amplitudes[int(label, 2)] = amplitude
    return MultiModeKet(QUBITS, amplitudes)


def ghz_ket():
    return _three_qubit_ket({"000": 1 / math.sqrt(2), "111": 1 / math.sqrt(2)})


def w_ket():
    return _three_qubit_ket(
        {"100": 1 / math.sqrt(3), "010": 1 / math.sqrt(3), "001": 1 / math.sqrt(3)}
    )


def initial_ket(kind):
    if kind is StateKind.GHZ:
        return ghz_ket()
    if kind is StateKind.W:
        return w_ket()
    raise UnsupportedStateError(f"Unknown state kind {kind!r}")


def reduced_initial(kind):
    """Alice and Bob's state before the expansion, Charlie traced out."""
    return partial_trace(density_from_ket(initial_ket(kind)), [ALICE, BOB])


def thermalize(kind, params):
    """Substitute Bob's |0> and |1> by the squeezed states and purify.

    Args:
        kind: StateKind of the initial tripartite state
        params: ChannelParams fixing γ and the cutoff N ≥ 1

    Returns:
        ThermalizedSystem holding the pure four-mode ket and ρ over A ⊗ B_I ⊗ C
    """
    branches = {0: squeezed_vacuum(params), 1: squeezed_one(params)}
    dim = params.dim
    layout = ModeLayout((2, dim, dim, 2))

    qubits = initial_ket(kind).tensor_view()
    total = np.zeros((2, dim * dim, 2))
    for a, b, c in zip(*np.nonzero(qubits)):
        total[a, :, c] += qubits[a, b, c] * branches[int(b)].amplitudes

    total_pure = MultiModeKet(layout, total.reshape(-1))
    rho_abc = reduce_ket(total_pure, [ALICE, BOB_I, 3])
    return ThermalizedSystem(kind=kind, params=params, total_pure=total_pure, rho_abc=rho_abc)


def final_rho_ab(system):
    """Alice and Bob's thermalized state, Charlie traced out of ``system``."""
    return partial_trace(system.rho_abc, [0, 1])


def final_rho_ab_closed(kind, params):
    """Alice and Bob's thermalized state built term by term from its series.

    Terms with a Fock index above N are dropped, matching the cutoff of the
    squeezed states.
    """
    dim = params.dim
    cosh2 = math.cosh(params.gamma) ** 2
    x = math.tanh(params.gamma) ** 2
    matrix = np.zeros((2 * dim, 2 * dim))

    def index(a, m):
        return a * dim + m

    for n in range(dim):
        weight = x**n / cosh2
        shifted = n + 1 < dim
        if kind is StateKind.GHZ:
            matrix[index(0, n), index(0, n)] += weight / 2
            if shifted:
                matrix[index(1, n + 1), index(1, n + 1)] += weight * (n + 1) / (2 * cosh2)
        elif kind is StateKind.W:
            matrix[index(1, n), index(1, n)] += weight / 3
            matrix[index(0, n), index(0, n)] += weight / 3
            if shifted:
                matrix[index(0, n + 1), index(0, n + 1)] += weight * (n + 1) / (3 * cosh2)
                cross = weight * math.sqrt(n + 1) / (3 * math.sqrt(cosh2))
                matrix[index(1, n), index(0, n + 1)] += cross
                matrix[index(0, n + 1), index(1, n)] += cross
        else:
            raise UnsupportedStateError(f"Unknown state kind {kind!r}")

    return DensityOperator(ModeLayout((2, dim)), matrix)
