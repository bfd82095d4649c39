"""Domain types shared by the services.

Every type is an immutable value: numpy buffers are copied on construction
and marked read-only, so instances can be shared between sweep workers.
"""
from dataclasses import dataclass, field
from enum import Enum
from math import prod
from typing import Optional

import numpy as np

from errors import DimensionMismatchError, InvalidArgumentError

SYMMETRY_TOL = 1e-12
# cosh²γ overflows a double just past γ = 354.
GAMMA_LIMIT = 300.0


def _frozen_array(values, ndim):
    array = np.array(values, dtype=float)
    if array.ndim != ndim:
        raise DimensionMismatchError(f"Expected a {ndim}-d array, got shape {array.shape}")
    array.flags.writeable = False
    return array


@dataclass(frozen=True)
class ModeLayout:
    """Local dimensions of the subsystems, leftmost subsystem slowest-varying."""

    dims: tuple

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims:
            raise InvalidArgumentError("A layout needs at least one subsystem")
        if any(d < 1 for d in dims):
            raise InvalidArgumentError(f"Subsystem dimensions must be positive, got {dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def size(self):
        return prod(self.dims)

    def __len__(self):
        return len(self.dims)

    def check_index(self, index):
        if not 0 <= index < len(self.dims):
            raise InvalidArgumentError(
                f"Subsystem index {index} is invalid for {len(self.dims)} subsystems"
            )
        return index

    def restrict(self, indices):
        return ModeLayout(tuple(self.dims[i] for i in indices))

    def __add__(self, other):
        return ModeLayout(self.dims + other.dims)


@dataclass(frozen=True)
class MultiModeKet:
    layout: ModeLayout
    amplitudes: np.ndarray

    def __post_init__(self):
        amplitudes = _frozen_array(self.amplitudes, 1)
        if amplitudes.size != self.layout.size:
            raise DimensionMismatchError(
                f"{amplitudes.size} amplitudes do not fit layout {self.layout.dims}"
            )
        object.__setattr__(self, "amplitudes", amplitudes)

    @property
    def squared_norm(self):
        return float(self.amplitudes @ self.amplitudes)

    def tensor_view(self):
        """Amplitudes reshaped to one axis per subsystem."""
        return self.amplitudes.reshape(self.layout.dims)


@dataclass(frozen=True)
class DensityOperator:
    layout: ModeLayout
    matrix: np.ndarray

    def __post_init__(self):
        matrix = _frozen_array(self.matrix, 2)
        side = self.layout.size
        if matrix.shape != (side, side):
            raise DimensionMismatchError(
                f"Matrix of shape {matrix.shape} does not fit layout {self.layout.dims}"
            )
        if side and np.max(np.abs(matrix - matrix.T)) > SYMMETRY_TOL:
            raise InvalidArgumentError("Density operators must be symmetric")
        object.__setattr__(self, "matrix", matrix)

    @property
    def trace(self):
        return float(np.trace(self.matrix))

    def tensor_view(self):
        """Matrix reshaped to row axes followed by column axes."""
        return self.matrix.reshape(self.layout.dims + self.layout.dims)


class StateKind(Enum):
    GHZ = "ghz"
    W = "w"


class Measure(Enum):
    FIDELITY = "fidelity"
    MI_AB = "mi_ab"
    MI_ABC = "mi_abc"
    NEGATIVITY = "negativity"


class ClosedFormMode(Enum):
    NUMERIC = "numeric"
    PRINTED = "printed"
    BOTH = "both"

    @property
    def wants_numeric(self):
        return self is not ClosedFormMode.PRINTED

    @property
    def wants_closed(self):
        return self is not ClosedFormMode.NUMERIC


class OutputFormat(Enum):
    CSV = "csv"
    JSON = "json"


@dataclass(frozen=True)
class ChannelParams:
    """Squeezing parameter, Fock cutoff (dimension N+1) and tail tolerance."""

    gamma: float
    truncation: int
    tail_tol: float = 1e-12

    def __post_init__(self):
        if not self.gamma >= 0.0:
            raise InvalidArgumentError(f"gamma must be non-negative, got {self.gamma}")
        if self.gamma > GAMMA_LIMIT:
            raise InvalidArgumentError(f"gamma must not exceed {GAMMA_LIMIT}, got {self.gamma}")
        if self.truncation < 0:
            raise InvalidArgumentError(f"truncation must be non-negative, got {self.truncation}")
        if not self.tail_tol > 0.0:
            raise InvalidArgumentError(f"tail_tol must be positive, got {self.tail_tol}")

    @property
    def dim(self):
        return self.truncation + 1


@dataclass(frozen=True)
class KrausSet:
    """Kraus operators of the horizon channel on one truncated Fock mode.

    A_n is supported on the n-th subdiagonal only, so the set is stored as
    those subdiagonals: ``diagonals[n][m]`` is the matrix element
    ``<m+n|A_n|m>`` for m = 0..N-n. Dense matrices are built on request.
    """

    params: ChannelParams
    diagonals: tuple
    completeness_defect: float
    full_defect: float
    literal_prefactor: bool = False

    def __post_init__(self):
        diagonals = tuple(_frozen_array(d, 1) for d in self.diagonals)
        if len(diagonals) != self.params.dim:
            raise DimensionMismatchError(
                f"Expected {self.params.dim} Kraus operators, got {len(diagonals)}"
            )
        object.__setattr__(self, "diagonals", diagonals)

    def __len__(self):
        return len(self.diagonals)

    def operator(self, n):
        return np.diag(self.diagonals[n], k=-n)

    @property
    def ops(self):
        return [self.operator(n) for n in range(len(self.diagonals))]


@dataclass(frozen=True)
class ThermalizedSystem:
    """A tripartite state after Bob's mode is exposed to the horizon.

    ``total_pure`` lives on A ⊗ B_I ⊗ B_II ⊗ C; ``rho_abc`` on A ⊗ B_I ⊗ C.
    """

    kind: StateKind
    params: ChannelParams
    total_pure: MultiModeKet
    rho_abc: DensityOperator


@dataclass(frozen=True)
class MeasureRecord:
    gamma: float
    kind: StateKind
    measure: Measure
    value_numeric: Optional[float]
    value_closed: Optional[float]
    truncation: int
    tail_bound: float
    abs_diff: Optional[float] = field(default=None)

    def __post_init__(self):
        if self.value_numeric is not None and self.value_closed is not None:
            object.__setattr__(
                self, "abs_diff", abs(self.value_numeric - self.value_closed)
            )
        else:
            object.__setattr__(self, "abs_diff", None)

    @property
    def sort_key(self):
        return (self.gamma, self.measure.value)


@dataclass(frozen=True)
class GammaGrid:
    minimum: float
    maximum: float
    step: float

    def __post_init__(self):
        if not self.step > 0.0:
            raise InvalidArgumentError(f"Grid step must be positive, got {self.step}")
        if self.minimum > self.maximum:
            raise InvalidArgumentError(
                f"Grid minimum {self.minimum} exceeds maximum {self.maximum}"
            )
        if self.minimum < 0.0:
            raise InvalidArgumentError(f"gamma must be non-negative, got {self.minimum}")
        if self.maximum > GAMMA_LIMIT:
            raise InvalidArgumentError(f"gamma must not exceed {GAMMA_LIMIT}, got {self.maximum}")


@dataclass(frozen=True)
class SweepConfig:
    kind: StateKind
    measures: tuple
    gamma_grid: GammaGrid
    truncation: Optional[int] = None  # None selects N from the tail bound
    tail_tol: float = 1e-12
    closed_form: ClosedFormMode = ClosedFormMode.BOTH
    output_path: Optional[str] = None
    format: OutputFormat = OutputFormat.CSV
    workers: int = 1

    def __post_init__(self):
        if not self.tail_tol > 0.0:
            raise InvalidArgumentError(f"tail_tol must be positive, got {self.tail_tol}")
        if not self.measures:
            raise InvalidArgumentError("At least one measure is required")
        if self.workers < 1:
            raise InvalidArgumentError(f"workers must be at least 1, got {self.workers}")
        if self.truncation is not None and self.truncation < 1:
            raise InvalidArgumentError(f"truncation must be at least 1, got {self.truncation}")


@dataclass(frozen=True)
class ThresholdReport:
    gamma_star: float
    reported_value: float
    sign_change_value: float
    tol: float

    @property
    def gaps(self):
        return {
            "gamma_star-reported_value": abs(self.gamma_star - self.reported_value),
            "gamma_star-sign_change_value": abs(self.gamma_star - self.sign_change_value),
            "reported_value-sign_change_value": abs(self.reported_value - self.sign_change_value),
        }


@dataclass
class VerificationReport:
    gamma: float
    truncation: int
    tail_bound: float
    tail_tol: float
    gain: float
    completeness_defect: float
    full_defect: float
    choi_min_eigenvalue: float
    route_residuals: dict = field(default_factory=dict)
    purity_defects: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    COMPLETENESS_SLACK = 1e-12
    CHOI_FLOOR = -1e-10
    ROUTE_TOL = 1e-10
    PURITY_TOL = 1e-9

    @property
    def violations(self):
        found = []
        if self.completeness_defect > self.tail_bound + self.COMPLETENESS_SLACK:
            found.append(
                f"completeness defect {self.completeness_defect:.3e} exceeds tail bound "
                f"{self.tail_bound:.3e}"
            )
        if self.choi_min_eigenvalue < self.CHOI_FLOOR:
            found.append(f"Choi minimum eigenvalue {self.choi_min_eigenvalue:.3e} is negative")
        for kind, residuals in self.route_residuals.items():
            for name, value in residuals.items():
                if value > self.ROUTE_TOL:
                    found.append(f"{kind} route residual {name} = {value:.3e}")
        for kind, value in self.purity_defects.items():
            if value > self.PURITY_TOL:
                found.append(f"{kind} purity defect {value:.3e}")
        return found

    @property
    def passed(self):
        return not self.violations


@dataclass(frozen=True)
class AuditRow:
    quantity: str
    printed: Optional[float]
    numeric: Optional[float]
    note: str = ""

    @property
    def abs_diff(self):
        if self.printed is None or self.numeric is None:
            return None
        return abs(self.printed - self.numeric)


@dataclass(frozen=True)
class AuditReport:
    gamma: float
    truncation: int
    tail_bound: float
    rows: tuple
