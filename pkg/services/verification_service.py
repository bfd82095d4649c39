"""Consistency checks of the channel at one γ."""
import logging

import numpy as np

from models import StateKind, VerificationReport
from services.channel_service import (
    apply_channel,
    channel_gain,
    channel_params,
    choi_spectrum,
    is_capped,
    kraus_set,
    params_tail_bound,
)
from services.fock_service import embed, reduce_ket, von_neumann_entropy
from services.state_service import (
    BOB_II,
    final_rho_ab,
    final_rho_ab_closed,
    reduced_initial,
    thermalize,
)

logger = logging.getLogger(__name__)


def _max_abs(a, b):
    return float(np.max(np.abs(a - b)))


def route_residuals(kind, params, ks):
    """Pairwise max-norm distances between the three constructions of ρ'_AB."""
    closed = final_rho_ab_closed(kind, params).matrix
    system = thermalize(kind, params)
    purified = final_rho_ab(system).matrix
    initial = embed(reduced_initial(kind), (2, params.dim))
    channel = apply_channel(initial, ks, target=1).matrix
    residuals = {
        "closed-purified": _max_abs(closed, purified),
        "closed-kraus": _max_abs(closed, channel),
        "purified-kraus": _max_abs(purified, channel),
    }
    return residuals, system


def purity_defect(system):
    """|S(A B_I C) - S(B_II)|, zero for a pure four-mode state."""
    keep = [i for i in range(len(system.total_pure.layout)) if i != BOB_II]
    return abs(
        von_neumann_entropy(reduce_ket(system.total_pure, keep))
        - von_neumann_entropy(reduce_ket(system.total_pure, [BOB_II]))
    )


def verify_channel(gamma, truncation=None, tail_tol=1e-12, max_truncation=512):
    """Completeness, complete positivity, route equivalence and purity at ``gamma``.

    Args:
        gamma: Squeezing parameter
        truncation: Cutoff N, or None to select it from the tail bound
        tail_tol: Tail tolerance for the automatic cutoff
        max_truncation: Cap on the automatic cutoff

    Returns:
        VerificationReport; its ``violations`` list is empty when every check passes
    """
    params = channel_params(gamma, truncation, tail_tol, max_truncation)
    ks = kraus_set(params)
    report = VerificationReport(
        gamma=params.gamma,
        truncation=params.truncation,
        tail_bound=params_tail_bound(params),
        tail_tol=tail_tol,
        gain=channel_gain(params.gamma),
        completeness_defect=ks.completeness_defect,
        full_defect=ks.full_defect,
        choi_min_eigenvalue=float(choi_spectrum(ks)[0]),
    )
    if is_capped(params):
        report.warnings.append(
            f"tail bound {report.tail_bound:.3e} exceeds tolerance {tail_tol:.1e} at N={params.truncation}"
        )

    for kind in StateKind:
        residuals, system = route_residuals(kind, params, ks)
        report.route_residuals[kind.value] = residuals
        report.purity_defects[kind.value] = purity_defect(system)

    for message in report.violations:
        logger.error("Verification failed at gamma=%.6g: %s", gamma, message)
    return report
