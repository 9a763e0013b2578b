"""Shared generators and independent oracles for the test suite.

Oracles here deliberately avoid the library code paths they are used to
check: the matrix exponential is a scaled-and-squared Taylor series, and
coherency rotations are spelled out entrywise.
"""

import numpy as np


def random_state(rng):
    v = rng.normal(size=4)
    c = v[:2] + 1j * v[2:]
    return c / np.linalg.norm(c)


def random_state_pair(rng, lo=0.05, hi=0.95):
    """Normalized pair with overlap magnitude strictly inside (lo, hi)."""
    while True:
        a, b = random_state(rng), random_state(rng)
        if lo < abs(np.vdot(a, b)) < hi:
            return a, b


def random_su2(rng):
    """Haar-uniform SU(2) via a random unit quaternion."""
    v = rng.normal(size=4)
    v /= np.linalg.norm(v)
    a, b, c, d = v
    return np.array([[a + 1j * b, c + 1j * d], [-c + 1j * d, a - 1j * b]])


def random_unitary(rng):
    return np.exp(1j * rng.uniform(0.0, 2.0 * np.pi)) * random_su2(rng)


def random_coherency(rng, min_p=0.0, max_p=1.0):
    """Random valid coherency matrix, optionally constrained in P."""
    while True:
        g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        j = g @ g.conj().T
        trace = np.trace(j).real
        det = np.linalg.det(j).real
        p = np.sqrt(max(0.0, 1.0 - 4.0 * det / trace**2))
        if min_p < p < max_p:
            return j


def series_expm(matrix, squarings=12):
    """exp(matrix) by 4th-order Taylor of the 2^-s scaled matrix, squared back.

    Independent of the closed-form SU(2) route. Twelve squarings balance the
    series truncation against rounding growth for arguments of norm ~1.
    """
    m = np.asarray(matrix, dtype=complex)
    scaled = m / (2.0**squarings)
    term = np.eye(m.shape[0], dtype=complex)
    result = np.eye(m.shape[0], dtype=complex)
    for k in range(1, 5):
        term = term @ scaled / k
        result = result + term
    for _ in range(squarings):
        result = result @ result
    return result


def conjugate_coherency(j, phi):
    """Entrywise R(phi) J R(-phi) with R the 2-D axes rotation."""
    c, s = np.cos(phi), np.sin(phi)
    jxx, jxy, jyx, jyy = j[0, 0], j[0, 1], j[1, 0], j[1, 1]
    return np.array(
        [
            [
                c * c * jxx + c * s * (jxy + jyx) + s * s * jyy,
                c * c * jxy - s * s * jyx - c * s * (jxx - jyy),
            ],
            [
                c * c * jyx - s * s * jxy - c * s * (jxx - jyy),
                s * s * jxx - c * s * (jxy + jyx) + c * c * jyy,
            ],
        ],
        dtype=complex,
    )


def coherence_magnitude(j):
    """|J_xy| / sqrt(J_xx J_yy), straight from the definition."""
    return abs(j[0, 1]) / np.sqrt(j[0, 0].real * j[1, 1].real)


def arrival_time_grid(b, e0, n_axis, n_phase, hbar=1.0, threshold=1e-9):
    """Independent least-arrival-time oracle over gap-constrained generators.

    Sweeps traceless Hermitian generators H = (e0/2) n.sigma, with the axis
    polar angle discretized on [0, pi] (this parametrizes every admissible
    diagonal-difference / off-diagonal-modulus pair on the constraint circle)
    and the off-diagonal phase on [0, 2pi), augmented per polar angle with
    the phase that exactly matches the target so the sweep always contains
    arriving generators. Starting state is (1, 0).

    Arrival is the first local maximum of the target fidelity whose peak
    value reaches 1 - threshold. (The literal first crossing of the
    threshold precedes the peak by O(sqrt(threshold)) even for the optimal
    generator, so peaks are the meaningful arrival notion.) The fidelity
    curve is evaluated in closed form from the axis-angle evolution,
    independent of the library's synthesis path.
    """
    polar = np.linspace(0.0, np.pi, n_axis)
    phases = np.linspace(0.0, 2.0 * np.pi, n_phase, endpoint=False)
    beta_mod = abs(b[1])
    tau_match = np.full_like(polar, np.nan)
    mu = np.zeros_like(polar)
    ok = np.sin(polar) >= beta_mod
    tau_match[ok] = np.arcsin(np.clip(beta_mod / np.sin(polar[ok]), 0.0, 1.0))
    mu[ok] = np.arctan2(np.cos(polar[ok]) * np.sin(tau_match[ok]), np.cos(tau_match[ok]))
    matching = np.angle(b[1]) - np.angle(b[0]) + np.pi / 2.0 - mu

    arrivals = []
    for i, psi in enumerate(polar):
        row_phases = phases if not ok[i] else np.concatenate((phases, [matching[i]]))
        nz = np.cos(psi)
        nxy = np.sin(psi) * np.exp(1j * row_phases)
        amp_a = np.conj(b[0])
        amp_b = amp_a * nz + np.conj(b[1]) * nxy
        m = (abs(amp_a) ** 2 + np.abs(amp_b) ** 2) / 2.0
        p = (abs(amp_a) ** 2 - np.abs(amp_b) ** 2) / 2.0
        q = -np.imag(amp_a * np.conj(amp_b))
        peak = m + np.hypot(p, q)
        alpha = np.arctan2(q, p)
        alpha = np.where(alpha <= 0.0, alpha + 2.0 * np.pi, alpha)
        t_peak = hbar * alpha / e0  # tau = e0 t / (2 hbar), peak at 2 tau = alpha
        reached = peak >= 1.0 - threshold
        arrivals.extend(t_peak[reached].tolist())
    return np.array(arrivals)


def coherence_vs_rotation(j, phis):
    """Vectorized |j_xy| after rotating the axes by each angle in ``phis``.

    Works through the Stokes parameters, so it is an independent route from
    the matrix-conjugation implementation.
    """
    phis = np.asarray(phis, dtype=float)
    s0 = (j[0, 0] + j[1, 1]).real
    s1 = (j[0, 0] - j[1, 1]).real
    s2 = (j[0, 1] + j[1, 0]).real
    s3 = (1j * (j[1, 0] - j[0, 1])).real
    c, s = np.cos(2.0 * phis), np.sin(2.0 * phis)
    s1r = c * s1 + s * s2
    s2r = -s * s1 + c * s2
    off = 0.5 * np.sqrt(s2r**2 + s3**2)
    denom = np.sqrt((s0 + s1r) * (s0 - s1r)) / 2.0
    return off / denom
