"""γ sweeps over the information measures, and the negativity threshold report."""
import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor

from errors import ConfigError, HorizonError
from models import (
    ClosedFormMode,
    GammaGrid,
    Measure,
    MeasureRecord,
    OutputFormat,
    StateKind,
    SweepConfig,
    ThresholdReport,
)
from services import closed_form_service
from services.channel_service import channel_params, is_capped, kraus_set, params_tail_bound
from services.fock_service import embed
from services.measure_service import (
    entanglement_fidelity_numeric,
    mutual_information,
    negativity,
    negativity_threshold,
    tripartite_mi_numeric,
)
from services.state_service import final_rho_ab, reduced_initial, thermalize

logger = logging.getLogger(__name__)

CLOSED_FORM_GAMMA_FLOOR = 1e-4
GRID_SLACK = 1e-9

# "paper" is accepted as a synonym of "printed".
CLOSED_FORM_ALIASES = {"paper": "printed"}

MEASURE_ALIASES = {
    "fidelity": Measure.FIDELITY,
    "mi-ab": Measure.MI_AB,
    "mi_ab": Measure.MI_AB,
    "mi-abc": Measure.MI_ABC,
    "mi_abc": Measure.MI_ABC,
    "negativity": Measure.NEGATIVITY,
}


def gamma_values(grid):
    """Grid points min + i·step, rounded to 12 decimals."""
    count = math.floor((grid.maximum - grid.minimum) / grid.step + GRID_SLACK) + 1
    return [round(grid.minimum + i * grid.step, 12) for i in range(count)]


def parse_gamma_grid(text):
    """Parse ``MIN:MAX:STEP``; a single value gives a one-point grid."""
    parts = [part.strip() for part in str(text).split(":")]
    try:
        values = [float(part) for part in parts]
    except ValueError:
        raise ConfigError(f"Invalid gamma grid {text!r}, expected MIN:MAX:STEP")
    if len(values) == 1:
        values = [values[0], values[0], 1.0]
    if len(values) != 3:
        raise ConfigError(f"Invalid gamma grid {text!r}, expected MIN:MAX:STEP")
    try:
        return GammaGrid(*values)
    except HorizonError as exc:
        raise ConfigError(str(exc))


def parse_truncation(text):
    """``auto`` (or None) selects N from the tail bound; otherwise a positive integer."""
    if text is None or str(text).strip().lower() == "auto":
        return None
    try:
        truncation = int(str(text).strip())
    except ValueError:
        raise ConfigError(f"Invalid truncation {text!r}, expected 'auto' or an integer")
    if truncation < 1:
        raise ConfigError(f"Truncation must be at least 1, got {truncation}")
    return truncation


def parse_measures(values):
    """Map CLI measure names to Measure members; ``all`` selects every measure."""
    if isinstance(values, str):
        values = [values]
    names = []
    for value in values:
        names.extend(part.strip().lower() for part in str(value).split(",") if part.strip())
    if not names:
        raise ConfigError("At least one measure is required")
    if "all" in names:
        return tuple(Measure)
    measures = []
    for name in names:
        if name not in MEASURE_ALIASES:
            raise ConfigError(f"Unknown measure {name!r}")
        measure = MEASURE_ALIASES[name]
        if measure not in measures:
            measures.append(measure)
    return tuple(sorted(measures, key=lambda m: m.value))


def _enum_value(enum, text, label):
    try:
        return enum(str(text).strip().lower())
    except ValueError:
        choices = ", ".join(member.value for member in enum)
        raise ConfigError(f"Invalid {label} {text!r}, expected one of: {choices}")


def parse_closed_form(text):
    text = str(text).strip().lower()
    return _enum_value(ClosedFormMode, CLOSED_FORM_ALIASES.get(text, text), "closed form")


def build_sweep_config(options, defaults):
    """Combine CLI/config-file options with application defaults.

    Args:
        options: Mapping of option name to value, None meaning "not given"
        defaults: Application config (GAMMA_MIN, TAIL_TOL, ...)

    Returns:
        SweepConfig
    """
    state = options.get("state")
    if state is None:
        raise ConfigError("A state is required (--state ghz|w)")

    gamma = options.get("gamma")
    if gamma is None:
        grid = GammaGrid(defaults["GAMMA_MIN"], defaults["GAMMA_MAX"], defaults["GAMMA_STEP"])
    else:
        grid = parse_gamma_grid(gamma)

    measures = options.get("measure") or ("all",)
    tail_tol = options.get("tail_tol")
    workers = options.get("workers")
    try:
        tail_tol = float(tail_tol) if tail_tol is not None else defaults["TAIL_TOL"]
        workers = int(workers) if workers is not None else defaults["WORKERS"]
    except ValueError as exc:
        raise ConfigError(str(exc))

    try:
        return SweepConfig(
            kind=_enum_value(StateKind, state, "state"),
            measures=parse_measures(measures),
            gamma_grid=grid,
            truncation=parse_truncation(options.get("truncation")),
            tail_tol=tail_tol,
            closed_form=parse_closed_form(options.get("closed_form") or defaults["CLOSED_FORM"]),
            output_path=options.get("out"),
            format=_enum_value(
                OutputFormat, options.get("format") or defaults["OUTPUT_FORMAT"], "format"
            ),
            workers=workers,
        )
    except ConfigError:
        raise
    except HorizonError as exc:
        raise ConfigError(str(exc))


def _point_params(cfg, gamma, max_truncation, relaxed_tail_tol, relaxed_gamma):
    if cfg.truncation is not None:
        return channel_params(gamma, cfg.truncation, cfg.tail_tol)
    params = channel_params(gamma, None, cfg.tail_tol, max_truncation)
    if is_capped(params) and gamma > relaxed_gamma and relaxed_tail_tol > cfg.tail_tol:
        logger.warning(
            "gamma=%.6g is beyond %.3g: relaxing tail tolerance to %.1e", gamma, relaxed_gamma,
            relaxed_tail_tol,
        )
        params = channel_params(gamma, None, relaxed_tail_tol, max_truncation)
    return params


def _closed_value(kind, measure, gamma, truncation):
    if measure is Measure.FIDELITY:
        return closed_form_service.fidelity_closed_form(kind, gamma)
    if gamma < CLOSED_FORM_GAMMA_FLOOR:
        logger.debug("Closed form for %s skipped at gamma=%.3g", measure.value, gamma)
        return None
    if measure is Measure.MI_AB:
        return closed_form_service.bipartite_mi_closed(kind, gamma, truncation)
    if measure is Measure.MI_ABC:
        return closed_form_service.tripartite_mi_closed(kind, gamma, truncation)
    if kind is StateKind.W:
        return closed_form_service.negativity_w_closed(gamma, truncation)
    return None


def _numeric_values(cfg, params):
    values = {}
    if Measure.FIDELITY in cfg.measures:
        rho = embed(reduced_initial(cfg.kind), (2, params.dim))
        values[Measure.FIDELITY] = entanglement_fidelity_numeric(rho, kraus_set(params))

    needs_state = set(cfg.measures) - {Measure.FIDELITY}
    if needs_state:
        system = thermalize(cfg.kind, params)
        rho_ab = final_rho_ab(system)
        if Measure.MI_AB in needs_state:
            values[Measure.MI_AB] = mutual_information(rho_ab, [0], [1])
        if Measure.MI_ABC in needs_state:
            values[Measure.MI_ABC] = tripartite_mi_numeric(system)
        if Measure.NEGATIVITY in needs_state:
            values[Measure.NEGATIVITY] = negativity(rho_ab, 0)
    return values


def evaluate_point(
    cfg, gamma, max_truncation=512, relaxed_tail_tol=1e-8, relaxed_gamma=2.0
):
    """All requested measures at one γ."""
    params = _point_params(cfg, gamma, max_truncation, relaxed_tail_tol, relaxed_gamma)
    numeric = _numeric_values(cfg, params) if cfg.closed_form.wants_numeric else {}
    bound = params_tail_bound(params)

    records = []
    for measure in cfg.measures:
        closed = None
        if cfg.closed_form.wants_closed:
            closed = _closed_value(cfg.kind, measure, gamma, params.truncation)
        records.append(
            MeasureRecord(
                gamma=gamma,
                kind=cfg.kind,
                measure=measure,
                value_numeric=numeric.get(measure),
                value_closed=closed,
                truncation=params.truncation,
                tail_bound=bound,
            )
        )
    return records


def check_output_path(path):
    """Raise OSError early when ``path`` cannot be written."""
    if path is None or path == "-":
        return
    directory = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(directory):
        raise OSError(f"Output directory {directory} does not exist")
    if os.path.isdir(path):
        raise OSError(f"Output path {path} is a directory")
    if not os.access(directory, os.W_OK) or (
        os.path.exists(path) and not os.access(path, os.W_OK)
    ):
        raise OSError(f"Output path {path} is not writable")


def run_sweep(cfg, max_truncation=512, relaxed_tail_tol=1e-8, relaxed_gamma=2.0):
    """Evaluate every (γ, measure) pair of ``cfg``.

    Grid points run on a thread pool; the records are sorted by γ and then
    measure name, so the result does not depend on the worker count.

    Args:
        cfg: SweepConfig
        max_truncation: Cap on the automatically selected cutoff
        relaxed_tail_tol: Tail tolerance used past ``relaxed_gamma`` when the cap binds

    Returns:
        List of MeasureRecord
    """
    check_output_path(cfg.output_path)
    gammas = gamma_values(cfg.gamma_grid)
    logger.info(
        "Sweeping %s over %d gamma values with %d worker(s)", cfg.kind.value, len(gammas),
        cfg.workers,
    )

    def evaluate(gamma):
        return evaluate_point(cfg, gamma, max_truncation, relaxed_tail_tol, relaxed_gamma)

    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        batches = list(pool.map(evaluate, gammas))

    records = [record for batch in batches for record in batch]
    return sorted(records, key=lambda record: record.sort_key)


def find_threshold(
    kind, tol=1e-6, bracket=(0.5, 1.2), tail_tol=1e-12, max_truncation=512
):
    """Locate the W negativity threshold and set it against the two reference values."""
    lo, hi = bracket
    gamma_star = negativity_threshold(
        kind, lo=lo, hi=hi, tol=tol, tail_tol=tail_tol, max_truncation=max_truncation
    )
    return ThresholdReport(
        gamma_star=gamma_star,
        reported_value=closed_form_service.REPORTED_THRESHOLD,
        sign_change_value=closed_form_service.sign_change_threshold(),
        tol=tol,
    )
