import numpy as np

from models import DensityOperator, ModeLayout, MultiModeKet


def random_ket(dims, seed):
    rng = np.random.default_rng(seed)
    amplitudes = rng.normal(size=int(np.prod(dims)))
    return MultiModeKet(ModeLayout(tuple(dims)), amplitudes / np.linalg.norm(amplitudes))


def random_state(dims, seed, rank=3):
    """Random real density operator of the given rank."""
    rng = np.random.default_rng(seed)
    side = int(np.prod(dims))
    factor = rng.normal(size=(side, rank))
    matrix = factor @ factor.T
    matrix = 0.5 * (matrix + matrix.T)
    return DensityOperator(ModeLayout(tuple(dims)), matrix / np.trace(matrix))
