"""Jones-to-Mueller lifts and the two-to-one rotation homomorphism.

A 2x2 Jones matrix acting on the transverse field lifts to a real 4x4
Mueller matrix acting on Stokes vectors. Two independent constructions are
provided: the Kronecker-product lift A (J (x) J*) A^(-1), and for unitaries
the trace form over the Stokes operator basis. They agree entrywise, which
the test suite uses as a cross-oracle.
"""

from __future__ import annotations

import enum

import numpy as np

from .numerics import IDENTITY2, PAULI_X, PAULI_Y, PAULI_Z
from .polarization import validate_stokes

# Maps the row-major entries of a coherency matrix to Stokes parameters:
# rows carry the entries of I, sigma_z, sigma_x, sigma_y.
A_MATRIX = np.array(
    [
        [1, 0, 0, 1],
        [1, 0, 0, -1],
        [0, 1, 1, 0],
        [0, -1j, 1j, 0],
    ],
    dtype=complex,
)

# A is 2-orthogonal: A A^dagger = 2 I, so the inverse is exact.
A_MATRIX_INVERSE = A_MATRIX.conj().T / 2.0

# Unitary variant of the same change of basis; differs from A / sqrt(2) by a
# sign flip of the circular-component row.
U_STOKES = np.array(
    [
        [1, 0, 0, 1],
        [1, 0, 0, -1],
        [0, 1, 1, 0],
        [0, 1j, -1j, 0],
    ],
    dtype=complex,
) / np.sqrt(2.0)

# Operator basis dual to the Stokes parameters S_i = tr(Xi_i J). The sign on
# the last element matches S_3 = i (J_yx - J_xy); with +sigma_y the trace
# construction would disagree with the A-matrix lift in the S_3 row/column.
STOKES_BASIS = (IDENTITY2, PAULI_Z, PAULI_X, -PAULI_Y)

_DEFAULT_PROBE_SEED = 20240801


class MuellerClass(enum.Enum):
    NONDEPOLARIZING = "nondepolarizing"
    DEPOLARIZING = "depolarizing"


def is_unitary(matrix: np.ndarray, tol: float = 1e-10) -> bool:
    u = np.asarray(matrix, dtype=complex)
    return bool(np.max(np.abs(u.conj().T @ u - np.eye(2))) <= tol)


def mueller_from_jones(jones: np.ndarray, imag_tol: float = 1e-12) -> np.ndarray:
    """Mueller matrix A (J (x) J*) A^(-1) of a 2x2 Jones matrix.

    Parameters
    ----------
    jones : array_like
        Complex 2x2 transmission matrix acting on the field components.
    imag_tol : float
        Ceiling on the imaginary residue of the lifted matrix. The algebra
        guarantees a real result; anything above rounding noise indicates an
        internal inconsistency and raises.

    Returns
    -------
    numpy.ndarray
        Real 4x4 matrix acting on Stokes vectors.
    """
    j = np.asarray(jones, dtype=complex)
    if j.shape != (2, 2):
        raise ValueError(f"expected a 2x2 Jones matrix, got shape {j.shape}")
    if not np.all(np.isfinite(j)):
        raise ValueError("Jones entries must be finite")
    lifted = A_MATRIX @ np.kron(j, j.conj()) @ A_MATRIX_INVERSE
    residue = float(np.max(np.abs(lifted.imag)))
    if residue > imag_tol:
        raise RuntimeError(
            f"Mueller lift produced imaginary residue {residue:.3e} > {imag_tol:.1e}"
        )
    return np.ascontiguousarray(lifted.real)


def wigner_rotation(unitary: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Rotation-type Mueller matrix of a unitary Jones matrix, by traces.

    M_ij = (1/2) tr(U^dagger Xi_i U Xi_j) over the Stokes operator basis.
    The result has first row and column (1, 0, 0, 0) and a proper-rotation
    3x3 block; U and -U give the same image (the mapping is two-to-one).
    """
    u = np.asarray(unitary, dtype=complex)
    if u.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {u.shape}")
    if not is_unitary(u, tol):
        raise ValueError("input must be unitary")
    udag = u.conj().T
    m = np.empty((4, 4))
    for i, xi_i in enumerate(STOKES_BASIS):
        left = udag @ xi_i @ u
        for k, xi_k in enumerate(STOKES_BASIS):
            m[i, k] = 0.5 * np.trace(left @ xi_k).real

    if max(np.max(np.abs(m[0, 1:])), np.max(np.abs(m[1:, 0]))) > tol or abs(m[0, 0] - 1.0) > tol:
        raise RuntimeError("rotation lift lost the intensity row/column structure")
    block = m[1:, 1:]
    if np.max(np.abs(block @ block.T - np.eye(3))) > tol:
        raise RuntimeError("rotation block is not orthogonal")
    if abs(np.linalg.det(block) - 1.0) > tol:
        raise RuntimeError("rotation block must have determinant +1")
    return m


def mueller_rotator(phi: float) -> np.ndarray:
    """Mueller matrix of an axes rotation by phi about the beam direction.

    Leaves the total and circular components untouched and rotates the two
    linear components by 2*phi.
    """
    c, s = np.cos(2.0 * phi), np.sin(2.0 * phi)
    return np.array(
        [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, c, s, 0.0],
            [0.0, -s, c, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]
    )


def classify_mueller(
    m: np.ndarray, probes: int = 1000, seed: int = _DEFAULT_PROBE_SEED
) -> MuellerClass:
    """Probe-based split into nondepolarizing vs depolarizing matrices.

    Sends ``probes`` seeded fully polarized Stokes vectors through ``m``.
    If every image is a valid Stokes vector and stays fully polarized
    (within 1e-8), the matrix is nondepolarizing; a valid image with reduced
    polarization makes it depolarizing; an invalid image raises.
    """
    mat = np.asarray(m, dtype=float)
    if mat.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {mat.shape}")
    rng = np.random.default_rng(seed)
    depolarizes = False
    for _ in range(probes):
        direction = rng.normal(size=3)
        direction /= np.linalg.norm(direction)
        stokes = np.concatenate(([1.0], direction))
        image = mat @ stokes
        try:
            validate_stokes(image)
        except ValueError as exc:
            raise ValueError(f"matrix maps a valid Stokes vector outside the cone: {exc}")
        p_out = float(np.linalg.norm(image[1:]) / image[0])
        if p_out < 1.0 - 1e-8:
            depolarizes = True
    return MuellerClass.DEPOLARIZING if depolarizes else MuellerClass.NONDEPOLARIZING
