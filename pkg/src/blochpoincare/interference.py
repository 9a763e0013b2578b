"""The three two-beam interference laws and their shared cosine structure.

Classical partially coherent vibrations, superposed elliptically polarized
beams, and quantum probability amplitudes all combine as
base + cross-term * cosine; the cross-term carries the degree of coherence,
the half-separation cosine on the polarization sphere, or the state overlap
respectively. The three coefficients coincide under the sphere
correspondence, which ``analogy_triple`` checks numerically.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .bloch import as_state, bloch_vector, is_normalized, overlap
from .polarization import degree_of_polarization, validate_coherency


def classical_intensity(j, theta: float, epsilon: float) -> float:
    """Intensity of the field component along a rotated analyzer direction.

    I = I_x + I_y + 2 sqrt(I_x I_y) |j_xy| cos(beta_xy - epsilon) with
    I_x = J_xx cos^2(theta), I_y = J_yy sin^2(theta); epsilon is the phase
    delay applied to the y component.
    """
    j = validate_coherency(j)
    report = degree_of_polarization(j)
    i_x = j[0, 0].real * np.cos(theta) ** 2
    i_y = j[1, 1].real * np.sin(theta) ** 2
    cross = 2.0 * np.sqrt(max(0.0, i_x * i_y)) * report.coherence_magnitude
    return float(i_x + i_y + cross * np.cos(report.coherence_phase - epsilon))


def fringe_visibility(j, theta: float) -> float:
    """Fringe contrast 2 sqrt(I_x I_y)|j_xy| / (I_x + I_y) of the epsilon sweep.

    Equals the degree of coherence exactly when the two intensities match
    (theta = pi/4 on an equal-diagonal beam); that equality is the
    operational meaning of |j_xy|.
    """
    j = validate_coherency(j)
    report = degree_of_polarization(j)
    i_x = j[0, 0].real * np.cos(theta) ** 2
    i_y = j[1, 1].real * np.sin(theta) ** 2
    total = i_x + i_y
    if total <= 0.0:
        raise ValueError("visibility undefined: both analyzer intensities vanish")
    return float(2.0 * np.sqrt(max(0.0, i_x * i_y)) * report.coherence_magnitude / total)


def pancharatnam_intensity(
    i_a: float, i_b: float, theta_poincare: float, delta: float
) -> float:
    """Resultant intensity of two coherent elliptically polarized beams.

    I_C = I_A + I_B + 2 sqrt(I_A I_B) cos(theta/2) cos(delta), where theta is
    the angular separation of the two polarization states on the sphere and
    delta is the beams' phase-advance angle. delta is accepted as an opaque
    input: relating it to component phase delays would need an extra x-phase
    absent from the single-beam model, so only this note records that link.
    """
    if i_a < 0.0 or i_b < 0.0:
        raise ValueError("intensities must be nonnegative")
    if not 0.0 <= theta_poincare <= np.pi:
        raise ValueError("sphere separation must lie in [0, pi]")
    cross = 2.0 * np.sqrt(i_a * i_b) * np.cos(theta_poincare / 2.0)
    return float(i_a + i_b + cross * np.cos(delta))


def quantum_probability(a_amp: complex, b_amp: complex, state_a, state_b) -> float:
    """Squared norm of a_amp|A> + b_amp|B> via the interference law.

    p = |a|^2 + |b|^2 + 2|a||b| |<A|B>| cos(phi_AB - (phi_a - phi_b)).
    This is an identity, not an approximation; it matches the direct inner
    product to rounding.
    """
    sa, sb = as_state(state_a), as_state(state_b)
    if not (is_normalized(sa) and is_normalized(sb)):
        raise ValueError("branch states must be normalized")
    a_amp, b_amp = complex(a_amp), complex(b_amp)
    p_a, p_b = abs(a_amp) ** 2, abs(b_amp) ** 2
    inner = overlap(sa, sb)
    phase = np.angle(inner) - (np.angle(a_amp) - np.angle(b_amp)) if inner != 0 else 0.0
    cross = 2.0 * np.sqrt(p_a * p_b) * abs(inner)
    return float(p_a + p_b + cross * np.cos(phase))


@dataclass(frozen=True)
class AnalogyTriple:
    """The three interference coefficients and whether they agree."""

    coherence: float
    poincare_cosine: float
    bloch_cosine: float
    matched: bool

    def values(self) -> Tuple[float, float, float]:
        return self.coherence, self.poincare_cosine, self.bloch_cosine


def analogy_triple(j, a, b, tol: float = 1e-10) -> AnalogyTriple:
    """Degree of coherence vs the two half-separation cosines.

    The coherency matrix must already be in its equal-diagonal frame (where
    the coherence is maximal). The sphere cosine is computed from the unit
    vectors of the two states, the state cosine directly from |<a|b>|; the
    caller declares the pairing, and ``tol`` decides whether the triple
    counts as matched.
    """
    j = validate_coherency(j)
    scale = max(1.0, abs(j[0, 0].real) + abs(j[1, 1].real))
    if abs((j[0, 0] - j[1, 1]).real) > 1e-9 * scale:
        raise ValueError("coherency matrix must be in the equal-diagonal frame")
    coherence = degree_of_polarization(j).coherence_magnitude

    na, nb = bloch_vector(a), bloch_vector(b)
    cos_full = float(np.clip(np.dot(na, nb), -1.0, 1.0))
    poincare_cosine = float(np.sqrt((1.0 + cos_full) / 2.0))
    bloch_cosine = float(abs(overlap(a, b)))
    spread = max(coherence, poincare_cosine, bloch_cosine) - min(
        coherence, poincare_cosine, bloch_cosine
    )
    return AnalogyTriple(
        coherence=coherence,
        poincare_cosine=poincare_cosine,
        bloch_cosine=bloch_cosine,
        matched=bool(spread <= tol),
    )
