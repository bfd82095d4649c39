"""Side-by-side comparison of printed closed forms with the numeric measures."""
import logging

from errors import ClosedFormDomainError
from models import AuditReport, AuditRow, StateKind
from services import closed_form_service
from services.channel_service import channel_params, kraus_set, params_tail_bound
from services.fock_service import embed
from services.measure_service import (
    entanglement_fidelity_numeric,
    mutual_information,
    pt_spectrum,
    tripartite_mi_numeric,
)
from services.state_service import final_rho_ab, reduced_initial, thermalize

logger = logging.getLogger(__name__)


def _closed_or_note(function, *args):
    try:
        return function(*args), ""
    except ClosedFormDomainError as exc:
        logger.warning("Printed form refused: %s", exc)
        return None, "refused: diverges at small gamma"


def build_audit(gamma, truncation=None, tail_tol=1e-12, max_truncation=512):
    """Rows of (quantity, printed, numeric, |difference|, note) at one γ."""
    params = channel_params(gamma, truncation, tail_tol, max_truncation)
    ks = kraus_set(params)
    cutoff = params.truncation
    rows = []

    systems = {kind: thermalize(kind, params) for kind in StateKind}
    for kind in StateKind:
        initial = embed(reduced_initial(kind), (2, params.dim))
        rows.append(
            AuditRow(
                f"fidelity {kind.value}",
                closed_form_service.fidelity_closed_form(kind, gamma),
                entanglement_fidelity_numeric(initial, ks),
                "printed form uses 1/cosh² where the Kraus trace gives 1/cosh",
            )
        )

    for kind in StateKind:
        printed, note = _closed_or_note(closed_form_service.bipartite_mi_closed, kind, gamma, cutoff)
        numeric = mutual_information(final_rho_ab(systems[kind]), [0], [1])
        rows.append(AuditRow(f"mi_ab {kind.value}", printed, numeric, note))

    for kind in StateKind:
        printed, note = _closed_or_note(
            closed_form_service.tripartite_mi_closed, kind, gamma, cutoff
        )
        numeric = tripartite_mi_numeric(systems[kind])
        rows.append(AuditRow(f"mi_abc {kind.value}", printed, numeric, note))

    spectrum = pt_spectrum(final_rho_ab(systems[StateKind.W]))
    pair, note = _closed_or_note(closed_form_service.pt_spectrum_w_closed, gamma, 0)
    plus, minus = pair if pair is not None else (None, None)
    rows.append(AuditRow("lambda_0+ w vs max PT eigenvalue", plus, float(spectrum[-1]), note))
    rows.append(AuditRow("lambda_0- w vs min PT eigenvalue", minus, float(spectrum[0]), note))

    literal = kraus_set(params, literal_prefactor=True)
    rows.append(
        AuditRow(
            "completeness defect, tanh² prefactor",
            literal.completeness_defect,
            ks.completeness_defect,
            "printed prefactor vs tanh^n prefactor",
        )
    )

    return AuditReport(
        gamma=params.gamma,
        truncation=params.truncation,
        tail_bound=params_tail_bound(params),
        rows=tuple(rows),
    )
