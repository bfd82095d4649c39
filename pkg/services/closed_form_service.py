"""Printed closed-form expressions, evaluated literally.

These are an overlay for comparison with the numeric measures; where a
printed expression and the operator model disagree, the numeric value is
authoritative. Logarithms are base 2 and 0·log 0 is taken as 0.
"""
import math

from errors import ClosedFormDomainError, InvalidArgumentError, UnsupportedStateError
from models import GAMMA_LIMIT, StateKind

REPORTED_THRESHOLD = 0.783
W_GAMMA_FLOOR = 1e-6
SINH2_FLOOR = 1e-300


def sign_change_threshold():
    """γ at which the printed radicand changes the sign of λ_n^-: sinh γ = 1."""
    return math.asinh(1.0)


def xlog2x(value):
    if value == 0.0:
        return 0.0
    return value * math.log2(value)


def _inverse_sinh2(gamma):
    sinh2 = math.sinh(gamma) ** 2
    if sinh2 < SINH2_FLOOR:
        raise ClosedFormDomainError(
            f"sinh²γ underflows at gamma = {gamma}; the printed series divides by it"
        )
    return 1.0 / sinh2


def w_n(gamma, n):
    """W_n(γ) = 2 + n / sinh²γ, with the n = 0 term fixed at 2."""
    if n == 0:
        return 2.0
    if gamma == 0:
        raise ClosedFormDomainError("W_n diverges at gamma = 0 for n >= 1")
    return 2.0 + n * _inverse_sinh2(gamma)


def w_prime_n(gamma, n):
    return 2.0 + (n + 1) / math.cosh(gamma) ** 2


def m_n(gamma, n):
    """The pair (M_n^+, M_n^-)."""
    x = math.tanh(gamma) ** 2
    sech2 = 1.0 / math.cosh(gamma) ** 2
    centre = 1.0 + x + (n + 1) * sech2
    radical = math.sqrt(1.0 - x + sech2) * math.sqrt(1.0 + 3.0 * x + (n + 1) * sech2)
    return centre + radical, centre - radical


def _check_kind(kind):
    if kind not in (StateKind.GHZ, StateKind.W):
        raise UnsupportedStateError(f"Unknown state kind {kind!r}")


def _check_gamma(gamma):
    if not 0 <= gamma <= GAMMA_LIMIT:
        raise InvalidArgumentError(f"gamma must lie in [0, {GAMMA_LIMIT}], got {gamma}")


def _check_w_domain(kind, gamma):
    if kind is StateKind.W and gamma < W_GAMMA_FLOOR:
        raise ClosedFormDomainError(
            f"The printed W series diverges as gamma -> 0 (gamma = {gamma}); "
            "use the numeric measure instead"
        )


def _check_terms(n_terms):
    if n_terms < 1:
        raise InvalidArgumentError(f"n_terms must be at least 1, got {n_terms}")


def _series_terms(gamma, n_terms):
    """Indices n contributing to a tanh^{2n}-weighted series."""
    if gamma == 0:
        return range(1)
    return range(n_terms)


def fidelity_closed_form(kind, gamma):
    """Printed fidelity: (1/4cosh²γ)(1+1/cosh²γ)² for GHZ, (1/9cosh²γ)(2+1/cosh²γ)² for W."""
    _check_kind(kind)
    _check_gamma(gamma)
    sech2 = 1.0 / math.cosh(gamma) ** 2
    if kind is StateKind.GHZ:
        return sech2 / 4.0 * (1.0 + sech2) ** 2
    return sech2 / 9.0 * (2.0 + sech2) ** 2


def bipartite_mi_closed(kind, gamma, n_terms):
    """Printed bipartite mutual information of Alice and Bob, summed to ``n_terms``."""
    _check_kind(kind)
    _check_gamma(gamma)
    _check_terms(n_terms)
    _check_w_domain(kind, gamma)
    x = math.tanh(gamma) ** 2
    cosh2 = math.cosh(gamma) ** 2

    if kind is StateKind.GHZ:
        total = 0.0
        for n in _series_terms(gamma, n_terms):
            w = w_n(gamma, n)
            total += x**n * (xlog2x(w - 2.0) - xlog2x(w - 1.0))
        return 1.0 + total / (2.0 * cosh2)

    total = 0.0
    for n in range(n_terms):
        plus, minus = m_n(gamma, n)
        total += x**n * (
            xlog2x(plus)
            + xlog2x(minus)
            - 2.0 * xlog2x(w_n(gamma, n))
            - (2.0 / cosh2) * (n * math.log2(x) - math.log2(6.0 * cosh2))
        )
    return (
        math.log2(3.0)
        - 5.0 / 3.0
        - math.log2(3.0 * cosh2) / (3.0 * cosh2)
        - math.log2(x) / 3.0
        - total / (6.0 * cosh2)
    )


def tripartite_mi_closed(kind, gamma, n_terms):
    """Printed tripartite mutual information, summed to ``n_terms``."""
    _check_kind(kind)
    _check_gamma(gamma)
    _check_terms(n_terms)
    _check_w_domain(kind, gamma)
    x = math.tanh(gamma) ** 2
    cosh2 = math.cosh(gamma) ** 2

    if kind is StateKind.GHZ:
        total = 0.0
        for n in _series_terms(gamma, n_terms):
            w = w_n(gamma, n)
            wp = w_prime_n(gamma, n)
            total += x**n * (
                xlog2x(w - 2.0) + xlog2x(wp - 2.0) - xlog2x(w - 1.0) - xlog2x(wp - 1.0)
            )
        return 1.0 + total / (2.0 * cosh2)

    total = 0.0
    for n in range(n_terms):
        plus, minus = m_n(gamma, n)
        total += x**n * (
            xlog2x(plus)
            + xlog2x(minus)
            - xlog2x(w_n(gamma, n))
            - xlog2x(w_prime_n(gamma, n))
            - (2.0 / cosh2) * (n * math.log2(x) - math.log2(6.0 * cosh2))
        )
    return (
        math.log2(3.0)
        - 8.0 / 3.0
        - 2.0 * math.log2(3.0 * cosh2) / (3.0 * cosh2)
        - math.log2(x) / 3.0
        - total / (3.0 * cosh2)
    )


def pt_spectrum_w_closed(gamma, n):
    """Printed eigenvalues (λ_n^+, λ_n^-) of the partially transposed W state."""
    _check_gamma(gamma)
    if gamma < W_GAMMA_FLOOR:
        raise ClosedFormDomainError(
            f"The printed W spectrum divides by sinh²γ and needs gamma >= {W_GAMMA_FLOOR}"
        )
    x = math.tanh(gamma) ** 2
    cosh2 = math.cosh(gamma) ** 2
    centre = 1.0 + n * _inverse_sinh2(gamma) + x
    radical = math.sqrt(centre**2 - 4.0 * x + 4.0 / cosh2)
    scale = x**n / (6.0 * cosh2)
    return scale * (centre + radical), scale * (centre - radical)


def negativity_w_closed(gamma, n_terms):
    """Σ_{n < n_terms} |min(λ_n^-, 0)| from the printed W spectrum."""
    _check_terms(n_terms)
    total = 0.0
    for n in range(n_terms):
        minus = pt_spectrum_w_closed(gamma, n)[1]
        if minus < 0:
            total -= minus
    return total
