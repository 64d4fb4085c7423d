"""Two-qubit state representation, validation, derived scalars, random ensembles.

A state is a 4x4 complex Hermitian, positive-semidefinite, unit-trace numpy
array in the product basis (|00>, |01>, |10>, |11>).  All functions here are
pure; random generation is a deterministic function of ``(spec, index)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

HERM_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10

#: Pauli basis sigma_0..sigma_3 (identity first).
PAULI = np.array([
    [[1, 0], [0, 1]],
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]],
], dtype=complex)

#: PAULI2[m, n] = sigma_m (x) sigma_n, shape (4, 4, 4, 4).
PAULI2 = np.einsum('mab,ncd->mnacbd', PAULI, PAULI).reshape(4, 4, 4, 4)

SPECTRUM_MODES = ("simplex", "alpha")


class StateValidationError(ValueError):
    """Input matrix is not a valid two-qubit density matrix."""


def validate_state(rho: np.ndarray) -> np.ndarray:
    """Check Hermiticity, unit trace and positivity of a 4x4 density matrix.

    Returns the input as a complex ndarray.  Raises
    :class:`StateValidationError` with the offending property otherwise.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise StateValidationError(f"expected a 4x4 matrix, got shape {rho.shape}")
    herm = np.abs(rho - rho.conj().T).max()
    if herm > HERM_TOL:
        raise StateValidationError(f"not Hermitian: max |rho - rho^dag| = {herm:.3e}")
    tr = rho.trace()
    if abs(tr - 1.0) > TRACE_TOL:
        raise StateValidationError(f"trace {tr:.15g} differs from 1")
    lo = np.linalg.eigvalsh(rho).min()
    if lo < -PSD_TOL:
        raise StateValidationError(f"not positive semidefinite: min eigenvalue {lo:.3e}")
    return rho


@dataclass(frozen=True)
class AnsatzParams:
    """Parameters (r, theta) of the two-parameter family
    r |psi(theta)><psi(theta)| + (1-r) |01><01| with
    |psi(theta)> = cos(theta)|00> + sin(theta)|11>.
    """

    r: float
    theta: float

    def __post_init__(self):
        if not 0.0 <= self.r <= 1.0:
            raise ValueError(f"r must lie in [0, 1], got {self.r}")
        if not 0.0 <= self.theta <= np.pi / 2 + 1e-15:
            raise ValueError(f"theta must lie in [0, pi/2], got {self.theta}")

    @property
    def alpha(self) -> float:
        """Weight of |00> in the entangled component: r cos^2(theta)."""
        return self.r * np.cos(self.theta) ** 2

    @property
    def beta(self) -> float:
        """Weight of |11> in the entangled component: r sin^2(theta)."""
        return self.r * np.sin(self.theta) ** 2

    @property
    def c(self) -> float:
        """Alternate chart: c = r(1 - cos 2theta) / (1 - r cos 2theta)."""
        c2t = np.cos(2 * self.theta)
        return self.r * (1 - c2t) / (1 - self.r * c2t)

    @property
    def p(self) -> float:
        """Alternate chart: p = tan(theta)."""
        return np.tan(self.theta)


def params_from_cp(c: float, p: float) -> AnsatzParams:
    """Invert the (c, p) chart: theta = arctan p, r = c(1+p^2)/(c + (2-c)p^2)."""
    if not 0.0 < c <= 1.0:
        raise ValueError(f"c must lie in (0, 1], got {c}")
    if p < 0.0:
        raise ValueError(f"p must be nonnegative, got {p}")
    theta = np.arctan(p)
    r = c * (1 + p * p) / (c + (2 - c) * p * p)
    return AnsatzParams(r=float(r), theta=float(theta))


def _ansatz_matrix(r: float, theta: float) -> np.ndarray:
    rho = np.zeros((4, 4), dtype=complex)
    ct, st = np.cos(theta), np.sin(theta)
    rho[0, 0] = r * ct * ct
    rho[3, 3] = r * st * st
    rho[0, 3] = rho[3, 0] = r * st * ct
    rho[1, 1] = 1.0 - r
    return rho


def make_ansatz(params: AnsatzParams) -> np.ndarray:
    """Density matrix of the ansatz family member with the given parameters."""
    return _ansatz_matrix(params.r, params.theta)


def ptrace_qubit2(rho: np.ndarray) -> np.ndarray:
    """Reduced state of qubit 1 (trace out the second qubit)."""
    return np.einsum('ikjk->ij', np.asarray(rho).reshape(2, 2, 2, 2))


def ptrace_qubit1(rho: np.ndarray) -> np.ndarray:
    """Reduced state of qubit 2 (trace out the first qubit)."""
    return np.einsum('kikj->ij', np.asarray(rho).reshape(2, 2, 2, 2))


@dataclass(frozen=True)
class BlochData:
    """Bloch-vector lengths of the two reduced states and their difference."""

    r1_len: float
    r2_len: float
    delta_r: float


def _bloch3(rho_1q: np.ndarray) -> np.ndarray:
    """Bloch 3-vector of a single-qubit state, components tr(rho sigma_k)."""
    return np.real(np.einsum('ij,kji->k', rho_1q, PAULI[1:]))


def bloch_vectors(rho: np.ndarray) -> BlochData:
    """Bloch lengths r1, r2 of the reduced qubits and delta_r = r1 - r2."""
    v1 = _bloch3(ptrace_qubit2(rho))
    v2 = _bloch3(ptrace_qubit1(rho))
    r1 = float(np.linalg.norm(v1))
    r2 = float(np.linalg.norm(v2))
    return BlochData(r1_len=r1, r2_len=r2, delta_r=r1 - r2)


def linear_entropy(rho: np.ndarray) -> float:
    """Mixedness measure (4/3)(1 - tr rho^2); 0 on pure states, 1 on I/4."""
    purity = float(np.real(np.einsum('ij,ji->', rho, rho)))
    return (4.0 / 3.0) * (1.0 - purity)


def sqrtm_psd(m: np.ndarray) -> np.ndarray:
    """Hermitian square root with tiny negative eigenvalues clamped to zero."""
    w, v = np.linalg.eigh(m)
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T


def fidelity(a: np.ndarray, b: np.ndarray) -> float:
    """Uhlmann fidelity [tr sqrt(sqrt(a) b sqrt(a))]^2, in [0, 1]."""
    ra = sqrtm_psd(a)
    m = ra @ b @ ra
    w = np.linalg.eigvalsh(0.5 * (m + m.conj().T))
    return float(np.sqrt(np.clip(w, 0.0, None)).sum() ** 2)


@dataclass(frozen=True)
class RandomSpec:
    """Deterministic ensemble description.

    Identical specs reproduce identical ensembles; the state at ``index`` does
    not depend on the order in which indices are drawn.  ``spectrum_mode`` is
    ``"simplex"`` (eigenvalues uniform on the probability simplex) or
    ``"alpha"`` (eigenvalues from three angles uniform on [0, pi/2]).  A
    positive ``mix_delta_max`` switches to the weighted-mixture variant
    (1-d) * ansatz(r, theta) + d * random, with r, theta, d uniform on
    [0,1] x [0,pi/2] x [0, mix_delta_max].
    """

    seed: int
    count: int
    spectrum_mode: str = "simplex"
    mix_delta_max: float = 0.0

    def __post_init__(self):
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.count <= 0:
            raise ValueError("count must be positive")
        if self.spectrum_mode not in SPECTRUM_MODES:
            raise ValueError(f"spectrum_mode must be one of {SPECTRUM_MODES}")
        if not 0.0 <= self.mix_delta_max <= 1.0:
            raise ValueError("mix_delta_max must lie in [0, 1]")


def _rng_for(seed: int, index: int) -> np.random.Generator:
    # Philox is counter-based: keying by (seed, index) gives independent
    # streams reproducible regardless of evaluation order.
    key = np.array([seed, index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def haar_unitary(rng: np.random.Generator, dim: int = 4) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Ginibre matrix.

    The R-diagonal phases are divided out so the distribution is exactly
    the Haar measure rather than QR-convention dependent.
    """
    z = rng.standard_normal((dim, dim, 2))
    g = (z[..., 0] + 1j * z[..., 1]) / np.sqrt(2.0)
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def _spectrum(rng: np.random.Generator, mode: str) -> np.ndarray:
    if mode == "simplex":
        return rng.dirichlet(np.ones(4))
    a1, a2, a3 = rng.uniform(0.0, np.pi / 2, size=3)
    c1, s1 = np.cos(a1) ** 2, np.sin(a1) ** 2
    return np.array([
        c1 * np.cos(a2) ** 2,
        c1 * np.sin(a2) ** 2,
        s1 * np.cos(a3) ** 2,
        s1 * np.sin(a3) ** 2,
    ])


def random_state(spec: RandomSpec, index: int) -> np.ndarray:
    """The ``index``-th state of the ensemble described by ``spec``.

    Construction: rho = U diag(spectrum) U^dag with U Haar-distributed and the
    spectrum drawn per ``spec.spectrum_mode``; optionally mixed with a random
    ansatz state when ``spec.mix_delta_max > 0``.
    """
    if not 0 <= index < spec.count:
        raise IndexError(f"index {index} outside [0, {spec.count})")
    rng = _rng_for(spec.seed, index)
    u = haar_unitary(rng)
    lam = _spectrum(rng, spec.spectrum_mode)
    rho = (u * lam) @ u.conj().T
    if spec.mix_delta_max > 0.0:
        r = rng.uniform(0.0, 1.0)
        theta = rng.uniform(0.0, np.pi / 2)
        d = rng.uniform(0.0, spec.mix_delta_max)
        rho = (1.0 - d) * _ansatz_matrix(r, theta) + d * rho
    return 0.5 * (rho + rho.conj().T)


def random_pure_state(rng: np.random.Generator) -> np.ndarray:
    """Haar-random two-qubit pure state as a density matrix."""
    z = rng.standard_normal((4, 2))
    psi = z[:, 0] + 1j * z[:, 1]
    psi /= np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def state_to_json(rho: np.ndarray) -> str:
    """Serialize: 4x4 nested array of [re, im] pairs, row-major."""
    rho = np.asarray(rho, dtype=complex)
    rows = [[[float(x.real), float(x.imag)] for x in row] for row in rho]
    return json.dumps(rows)


def state_from_json_obj(obj) -> np.ndarray:
    """Parse the nested-array JSON form and validate the state."""
    arr = np.asarray(obj, dtype=float)
    if arr.shape != (4, 4, 2):
        raise StateValidationError(
            f"expected a 4x4 array of [re, im] pairs, got shape {arr.shape}")
    return validate_state(arr[..., 0] + 1j * arr[..., 1])
