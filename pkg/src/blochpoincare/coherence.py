"""Maximal-coherence frames and the quantum-optical correspondence report.

For any beam with a polarized part there is a pair of orthogonal transverse
directions in which the two intensities are equal and the degree of coherence
reaches the degree of polarization. This module finds that frame, checks the
intensity constraint it conserves, verifies the bisector geometry, and
assembles the side-by-side pass/fail report against time-optimal quantum
evolution data.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .bloch import as_state, fidelity, orthogonal_state, overlap
from .mueller import mueller_rotator
from .polarization import (
    degree_of_polarization,
    rotate_coherency,
    validate_coherency,
    validate_stokes,
    wiener_decompose,
)
from .speed_limit import EfficiencyReport, SynthesisResult, evolve_state

_QUARTER = np.pi / 4.0
_HALF_PI = np.pi / 2.0


@dataclass(frozen=True)
class RotationSolution:
    """Frame rotation maximizing the degree of coherence.

    ``phi_opt`` is the canonical representative in (-pi/4, pi/4]; all other
    solutions differ by multiples of pi/2 and single out the same pair of
    directions.
    """

    phi_opt: float
    j_before: float
    j_after: float
    p: float
    chi: float


@dataclass(frozen=True)
class ConstraintLedger:
    """Polarized-intensity conservation record for one frame rotation."""

    i_pol_before: float
    i_pol_after: float
    s1_sq_before: float
    s1_sq_after: float
    s2_sq_before: float
    s2_sq_after: float


@dataclass(frozen=True)
class BisectorReport:
    """Geometry of the optimal frame relative to the ellipse principal axes."""

    chi: float
    phi_opt: float
    offset: float
    cosines_sq: Tuple[float, float, float, float]


def _fold_quarter(angle: float) -> float:
    """Fold an angle into the canonical branch (-pi/4, pi/4] modulo pi/2."""
    folded = angle
    while folded > _QUARTER:
        folded -= _HALF_PI
    while folded <= -_QUARTER:
        folded += _HALF_PI
    return folded


def optimal_rotation(j) -> RotationSolution:
    """Rotation angle equalizing the two transverse intensities.

    Solves tan(2 phi) = (J_yy - J_xx)/(J_xy + J_yx); in the rotated frame the
    diagonal entries agree and the degree of coherence equals the degree of
    polarization. Strictly unpolarized input has no preferred frame and is
    rejected.
    """
    j = validate_coherency(j)
    report = degree_of_polarization(j)
    if report.p <= 1e-12:
        raise ValueError("no polarized part: the optimum frame is undefined at P = 0")

    s1 = (j[0, 0] - j[1, 1]).real
    s2 = (j[0, 1] + j[1, 0]).real
    if abs(s1) <= 1e-15 and abs(s2) <= 1e-15:
        phi = 0.0  # already optimal
    else:
        phi = _fold_quarter(0.5 * float(np.arctan2(-s1, s2)))

    rotated = rotate_coherency(j, phi)
    after = degree_of_polarization(rotated)
    scale = max(1.0, report.total_intensity)
    if abs((rotated[0, 0] - rotated[1, 1]).real) > 1e-9 * scale:
        raise RuntimeError("rotated frame failed to equalize the diagonal intensities")
    if abs(after.coherence_magnitude - report.p) > 1e-9:
        raise RuntimeError("rotated coherence does not reach the degree of polarization")
    return RotationSolution(
        phi_opt=float(phi),
        j_before=report.coherence_magnitude,
        j_after=after.coherence_magnitude,
        p=report.p,
        chi=wiener_decompose(j).orientation,
    )


def optical_efficiency(j) -> float:
    """Ratio of the degree of coherence to the degree of polarization."""
    report = degree_of_polarization(j)
    if report.p <= 1e-12:
        raise ValueError("optical efficiency undefined at P = 0")
    return report.coherence_magnitude / report.p


def stokes_rotation_check(s, phi: float) -> ConstraintLedger:
    """Apply the rotator Mueller matrix and record the conserved quantities.

    Rotation about the circular axis leaves S0, S3 and S1^2 + S2^2 fixed;
    violations beyond rounding raise.
    """
    s = validate_stokes(s)
    after = mueller_rotator(phi) @ s
    scale = max(1.0, float(s[0]))
    if abs(after[0] - s[0]) > 1e-10 * scale or abs(after[3] - s[3]) > 1e-10 * scale:
        raise RuntimeError("rotation failed to preserve the total/circular components")
    linear_before = s[1] ** 2 + s[2] ** 2
    linear_after = after[1] ** 2 + after[2] ** 2
    if abs(linear_after - linear_before) > 1e-10 * scale**2:
        raise RuntimeError("rotation failed to preserve the linear-component length")
    return ConstraintLedger(
        i_pol_before=float(np.linalg.norm(s[1:])),
        i_pol_after=float(np.linalg.norm(after[1:])),
        s1_sq_before=float(s[1] ** 2),
        s1_sq_after=float(after[1] ** 2),
        s2_sq_before=float(s[2] ** 2),
        s2_sq_after=float(after[2] ** 2),
    )


def bisector_geometry(j) -> BisectorReport:
    """Check that the optimal directions bisect the ellipse principal axes.

    The optimal frame sits at pi/4 (mod pi/2) from the major-axis frame, so
    each optimal direction makes equal squared cosines of 1/2 with both
    principal axes. Beams whose polarized part is circular have no principal
    axes and are rejected as degenerate.
    """
    j = validate_coherency(j)
    report = degree_of_polarization(j)
    if report.p <= 1e-12:
        raise ValueError("no polarized part: principal axes undefined")
    s1 = (j[0, 0] - j[1, 1]).real
    s2 = (j[0, 1] + j[1, 0]).real
    scale = max(1.0, report.total_intensity)
    if abs(s1) <= 1e-12 * scale and abs(s2) <= 1e-12 * scale:
        raise ValueError(
            "degenerate: polarized part is circular, principal axes undefined"
        )

    chi = wiener_decompose(j).orientation
    phi_opt = optimal_rotation(j).phi_opt
    offset = phi_opt - chi
    residual = (offset - _QUARTER) % _HALF_PI
    residual = min(residual, _HALF_PI - residual)
    if residual > 1e-8:
        raise RuntimeError(
            f"optimal frame misses the bisector by {residual:.3e} rad (mod pi/2)"
        )

    x_opt = np.array([np.cos(phi_opt), np.sin(phi_opt)])
    y_opt = np.array([-np.sin(phi_opt), np.cos(phi_opt)])
    major = np.array([np.cos(chi), np.sin(chi)])
    minor = np.array([-np.sin(chi), np.cos(chi)])
    cosines = tuple(
        float(np.dot(u, v) ** 2)
        for u in (x_opt, y_opt)
        for v in (major, minor)
    )
    if max(abs(c - 0.5) for c in cosines) > 1e-9:
        raise RuntimeError("squared direction cosines deviate from 1/2")
    return BisectorReport(
        chi=float(chi), phi_opt=float(phi_opt), offset=float(offset), cosines_sq=cosines
    )


@dataclass(frozen=True)
class QuantumScenario:
    """Synthesized evolution data for one endpoint pair in the working basis."""

    synthesis: SynthesisResult
    efficiency: EfficiencyReport
    initial_state: np.ndarray
    final_state: np.ndarray


@dataclass(frozen=True)
class OpticalScenario:
    """Coherency matrix with its optimal rotation and conservation ledger."""

    coherency: np.ndarray
    rotation: RotationSolution
    ledger: ConstraintLedger


@dataclass(frozen=True)
class CorrespondenceRow:
    """One paired check: a quantum residual and its optical counterpart."""

    label: str
    quantum_check: str
    optical_check: str
    quantum_residual: float
    optical_residual: float
    quantum_tolerance: float
    optical_tolerance: float

    @property
    def quantum_pass(self) -> bool:
        return self.quantum_residual <= self.quantum_tolerance

    @property
    def optical_pass(self) -> bool:
        return self.optical_residual <= self.optical_tolerance

    @property
    def passed(self) -> bool:
        return self.quantum_pass and self.optical_pass


@dataclass(frozen=True)
class CorrespondenceReport:
    rows: Tuple[CorrespondenceRow, ...]

    @property
    def all_passed(self) -> bool:
        return all(row.passed for row in self.rows)

    def as_dict(self) -> dict:
        return {
            "all_passed": self.all_passed,
            "rows": [
                {
                    "label": row.label,
                    "quantum_check": row.quantum_check,
                    "optical_check": row.optical_check,
                    "quantum_residual": row.quantum_residual,
                    "optical_residual": row.optical_residual,
                    "quantum_tolerance": row.quantum_tolerance,
                    "optical_tolerance": row.optical_tolerance,
                    "quantum_pass": row.quantum_pass,
                    "optical_pass": row.optical_pass,
                    "pass": row.passed,
                }
                for row in self.rows
            ],
        }

    def as_table(self) -> str:
        header = f"{'correspondence':<28} {'quantum':>12} {'optical':>12}  verdict"
        lines = [header, "-" * len(header)]
        for row in self.rows:
            q = "pass" if row.quantum_pass else "FAIL"
            o = "pass" if row.optical_pass else "FAIL"
            verdict = "ok" if row.passed else "MISMATCH"
            lines.append(f"{row.label:<28} {q:>12} {o:>12}  {verdict}")
        lines.append(f"overall: {'all rows pass' if self.all_passed else 'FAILED'}")
        return "\n".join(lines)


def _check_pairing(quantum: QuantumScenario, optical: OpticalScenario) -> None:
    a = as_state(quantum.initial_state)
    b = as_state(quantum.final_state)
    if abs(a[0] - 1.0) > 1e-9 or abs(a[1]) > 1e-9:
        raise ValueError(
            "mismatched scenario pairing: quantum side must be given in the "
            "working basis with initial state (1, 0)"
        )
    reached = evolve_state(quantum.synthesis.hamiltonian, a, quantum.synthesis.t_min)
    if abs(abs(overlap(b, reached)) - 1.0) > 1e-8:
        raise ValueError(
            "mismatched scenario pairing: synthesis does not connect the "
            "declared endpoint states"
        )
    j = validate_coherency(optical.coherency)
    report = degree_of_polarization(j)
    if abs(optical.rotation.p - report.p) > 1e-8:
        raise ValueError("mismatched scenario pairing: rotation solution is for a different beam")
    i_pol = report.p * report.total_intensity
    if abs(optical.ledger.i_pol_before - i_pol) > 1e-8 * max(1.0, i_pol):
        raise ValueError("mismatched scenario pairing: ledger is for a different beam")


def correspondence_report(
    quantum: QuantumScenario, optical: OpticalScenario
) -> CorrespondenceReport:
    """Side-by-side verification of the structural quantum-optical mapping.

    Five paired rows: conservation of the gap/intensity constraint, equalized
    diagonal entries, maximal off-diagonal magnitude, equal-split overlaps
    with the optimal eigenbasis/principal axes, and unit efficiency. All
    compared quantities are dimensionless residuals; no unit bridge between
    energy and intensity is attempted.
    """
    _check_pairing(quantum, optical)
    h = quantum.synthesis.hamiltonian
    gap = h.gap
    m = h.matrix
    j = validate_coherency(optical.coherency)
    rotated = rotate_coherency(j, optical.rotation.phi_opt)
    report = degree_of_polarization(j)
    i_pol = report.p * report.total_intensity

    # Constraint conservation: gap identity on the quantum side, polarized
    # intensity under rotation on the optical side.
    ec_residual = abs(
        gap**2 - ((m[0, 0] - m[1, 1]).real ** 2 + 4.0 * abs(m[0, 1]) ** 2)
    )
    coco_residual = abs(
        optical.ledger.i_pol_after**2 - optical.ledger.i_pol_before**2
    )

    diag_q = abs((m[0, 0] - m[1, 1]).real)
    diag_o = abs((rotated[0, 0] - rotated[1, 1]).real)

    off_q = abs(abs(m[0, 1]) - gap / 2.0)
    off_o = abs(abs(rotated[0, 1]) - i_pol / 2.0)

    a = as_state(quantum.initial_state)
    a_perp = orthogonal_state(a)
    lo, hi = h.eigenstates
    overlaps = [
        fidelity(vec, state) for vec in (lo, hi) for state in (a, a_perp)
    ]
    split_q = max(abs(x - 0.5) for x in overlaps)
    split_o = max(abs(c - 0.5) for c in bisector_geometry(j).cosines_sq)

    eta_q = abs(1.0 - quantum.efficiency.eta_qm)
    eta_o = abs(1.0 - optical.rotation.j_after / optical.rotation.p)

    rows = (
        CorrespondenceRow(
            label="constraint conservation",
            quantum_check="(E+ - E-)^2 = (h11 - h22)^2 + 4|h12|^2",
            optical_check="I_pol^2 invariant under frame rotation",
            quantum_residual=float(ec_residual),
            optical_residual=float(coco_residual),
            quantum_tolerance=1e-10,
            optical_tolerance=1e-9,
        ),
        CorrespondenceRow(
            label="equal diagonal",
            quantum_check="h11 = h22",
            optical_check="Jx'x' = Jy'y'",
            quantum_residual=float(diag_q),
            optical_residual=float(diag_o),
            quantum_tolerance=1e-10,
            optical_tolerance=1e-9,
        ),
        CorrespondenceRow(
            label="maximal off-diagonal",
            quantum_check="|h12| = E0/2",
            optical_check="|Jx'y'| = I_pol/2",
            quantum_residual=float(off_q),
            optical_residual=float(off_o),
            quantum_tolerance=1e-10,
            optical_tolerance=1e-9,
        ),
        CorrespondenceRow(
            label="equal-split overlaps",
            quantum_check="|<E+-|A>|^2 = |<E+-|A_perp>|^2 = 1/2",
            optical_check="squared cosines with principal axes = 1/2",
            quantum_residual=float(split_q),
            optical_residual=float(split_o),
            quantum_tolerance=1e-10,
            optical_tolerance=1e-9,
        ),
        CorrespondenceRow(
            label="unit efficiency",
            quantum_check="eta_qm = 1",
            optical_check="|j_xy|/P = 1 in the optimal frame",
            quantum_residual=float(eta_q),
            optical_residual=float(eta_o),
            quantum_tolerance=1e-6,
            optical_tolerance=1e-9,
        ),
    )
    return CorrespondenceReport(rows=rows)
