"""Two-qubit Heisenberg XYZ chain with a z-axis Dzyaloshinskii-Moriya term.

    H = Jx σx⊗σx + Jy σy⊗σy + Jz σz⊗σz + Dz (σx⊗σy − σy⊗σx)

Units have k_B = 1, so temperature and couplings share one energy unit.
Two routes to the thermal state live here: :func:`thermal_state` builds it
numerically from the Jacobi eigendecomposition of :func:`hamiltonian`, and
:func:`closed_form_elements` evaluates the X-state entries in closed form
from the analytic spectrum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np

from .linalg import eigh, identity, kron, pauli

KAPPA_TOL = 1e-14
PARAM_FIELDS = ("jx", "jy", "jz", "dz", "temp")


@dataclass(frozen=True)
class ModelParams:
    jx: float = 0.0
    jy: float = 0.0
    jz: float = 0.0
    dz: float = 0.0
    temp: float = 1.0

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not math.isfinite(value):
                raise ValueError(f"{f.name} must be finite, got {value!r}")
        if self.temp <= 0:
            raise ValueError(f"temp must be > 0, got {self.temp!r}")

    def replace(self, **changes) -> ModelParams:
        values = {name: getattr(self, name) for name in PARAM_FIELDS}
        values.update(changes)
        return ModelParams(**values)

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (self.jx, self.jy, self.jz, self.dz, self.temp)


@dataclass(frozen=True)
class SpectralData:
    energies: np.ndarray  # E1..E4 in the order of `eigenstates`
    kappa: float
    theta: float
    eigenstates: np.ndarray  # column i is |Φ_{i+1}⟩
    degenerate: bool  # κ ≈ 0: Φ3/Φ4 are an arbitrary basis of their subspace


@dataclass(frozen=True)
class XStateElements:
    r: float
    u: float
    s: float
    v: complex
    z_partition: float


def hamiltonian(p: ModelParams) -> np.ndarray:
    sx, sy, sz = pauli("x"), pauli("y"), pauli("z")
    return (
        p.jx * kron(sx, sx)
        + p.jy * kron(sy, sy)
        + p.jz * kron(sz, sz)
        + p.dz * (kron(sx, sy) - kron(sy, sx))
    )


def kappa(p: ModelParams) -> float:
    return math.hypot(2.0 * p.dz, p.jx + p.jy)


def spectrum(p: ModelParams) -> SpectralData:
    """Analytic energies and eigenstates.

    Φ1,2 = (|00⟩ ± |11⟩)/√2 with E1,2 = Jz ± (Jx − Jy), and
    Φ3,4 = (|01⟩ ± e^{iφ}|10⟩)/√2 with E3,4 = −Jz ± κ, where
    e^{iφ} = (Jx + Jy − 2i Dz)/κ. The reported ``theta`` is arccos((Jx+Jy)/κ)
    in [0, π]; the eigenstate phase φ equals −θ when Dz > 0.
    """
    k = kappa(p)
    a = p.jx + p.jy
    degenerate = k < KAPPA_TOL
    if degenerate:
        theta = 0.0
        phase = 1.0 + 0.0j
    else:
        theta = math.acos(max(-1.0, min(1.0, a / k)))
        phase = complex(a, -2.0 * p.dz) / k
    energies = np.array([
        p.jx - p.jy + p.jz,
        -p.jx + p.jy + p.jz,
        -p.jz + k,
        -p.jz - k,
    ])
    h = 1.0 / math.sqrt(2.0)
    states = np.zeros((4, 4), dtype=np.complex128)
    states[[0, 3], 0] = h, h
    states[[0, 3], 1] = h, -h
    states[[1, 2], 2] = h, h * phase
    states[[1, 2], 3] = h, -h * phase
    return SpectralData(energies, k, theta, states, degenerate)


def boltzmann_weights(energies, temp: float) -> np.ndarray:
    """Normalized Gibbs weights, with the lowest energy shifted to zero before exponentiating."""
    if temp <= 0:
        raise ValueError(f"temp must be > 0, got {temp!r}")
    e = np.asarray(energies, dtype=float)
    w = np.exp(-(e - e.min()) / temp)
    return w / w.sum()


def thermal_state(p: ModelParams) -> np.ndarray:
    """Gibbs state exp(−H/T)/Z from the numerical eigendecomposition of H."""
    lam, vec = eigh(hamiltonian(p))
    w = boltzmann_weights(lam, p.temp)
    rho = (vec * w) @ vec.conj().T
    return 0.5 * (rho + rho.conj().T)


def closed_form_elements(p: ModelParams) -> XStateElements:
    """X-state entries of the thermal state from the analytic spectrum.

    With b = Jx − Jy and β = 1/T:

        r = e^{−βJz} cosh(βb)/Z         s = e^{−βJz} sinh(−βb)/Z
        u = e^{βJz} cosh(βκ)/Z          v = −e^{βJz} sinh(βκ)(Jx + Jy + 2i Dz)/(κZ)
        Z = 2 e^{−βJz} cosh(βb) + 2 e^{βJz} cosh(βκ)

    Every exponential is evaluated relative to the ground energy, so Z is
    returned in shifted form: ``z_partition`` is Z·e^{βE_min}. ``r`` is ρ[0,0],
    ``s`` is ρ[0,3], ``u`` is ρ[1,1] and ``v`` is ρ[1,2].
    """
    if p.temp <= 0:
        raise ValueError(f"temp must be > 0, got {p.temp!r}")
    k = kappa(p)
    b = p.jx - p.jy
    beta = 1.0 / p.temp
    e_min = min(p.jz - abs(b), -p.jz - k)
    # e^{−β(Jz ∓ b − E_min)} and e^{−β(−Jz ∓ κ − E_min)}; all exponents ≤ 0
    outer_lo = math.exp(-beta * (p.jz - abs(b) - e_min))
    outer_hi = math.exp(-beta * (p.jz + abs(b) - e_min))
    inner_lo = math.exp(-beta * (-p.jz - k - e_min))
    inner_hi = math.exp(-beta * (-p.jz + k - e_min))
    z = outer_lo + outer_hi + inner_lo + inner_hi
    cosh_outer = 0.5 * (outer_lo + outer_hi)  # e^{−βJz} cosh(βb), shifted
    sinh_outer = 0.5 * (outer_lo - outer_hi)  # e^{−βJz} sinh(β|b|), shifted
    cosh_inner = 0.5 * (inner_lo + inner_hi)
    sinh_inner = 0.5 * (inner_lo - inner_hi)
    r = cosh_outer / z
    s = -math.copysign(1.0, b) * sinh_outer / z if b != 0 else 0.0
    u = cosh_inner / z
    if k < KAPPA_TOL:
        v = 0j
    else:
        v = -sinh_inner / z * complex(p.jx + p.jy, 2.0 * p.dz) / k
    return XStateElements(r=r, u=u, s=s, v=v, z_partition=z)


def x_state_from_elements(e: XStateElements) -> np.ndarray:
    rho = np.zeros((4, 4), dtype=np.complex128)
    rho[0, 0] = rho[3, 3] = e.r
    rho[1, 1] = rho[2, 2] = e.u
    rho[0, 3] = rho[3, 0] = e.s
    rho[1, 2] = e.v
    rho[2, 1] = np.conj(e.v)
    return rho


def phase_aligned(rho) -> np.ndarray:
    """Conjugate an X state by local z rotations so that ρ[1,2] becomes real and ≥ 0.

    The rotation on qubit A is by half the phase of ρ[1,2] and the one on B
    by minus that half, which leaves ρ[0,3] untouched. Local unitaries do not
    change either correlation measure, but they rotate W and M; in this frame
    both matrices are diagonal for any X state with real ρ[0,3].
    """
    rho = np.asarray(rho, dtype=np.complex128)
    alpha = np.angle(rho[1, 2])
    ra = np.diag([np.exp(-0.5j * alpha / 2), np.exp(0.5j * alpha / 2)])
    rb = np.diag([np.exp(0.5j * alpha / 2), np.exp(-0.5j * alpha / 2)])
    u = kron(ra, rb)
    out = u @ rho @ u.conj().T
    return 0.5 * (out + out.conj().T)


def bell_state(which: str = "phi+") -> np.ndarray:
    """Density matrix of one of the four Bell states."""
    h = 1.0 / math.sqrt(2.0)
    kets = {
        "phi+": [h, 0, 0, h],
        "phi-": [h, 0, 0, -h],
        "psi+": [0, h, h, 0],
        "psi-": [0, h, -h, 0],
    }
    try:
        ket = np.array(kets[which], dtype=np.complex128)
    except KeyError:
        raise ValueError(f"unknown Bell state {which!r}") from None
    return np.outer(ket, ket.conj())


def maximally_mixed() -> np.ndarray:
    return identity(4) / 4.0


def product_zero() -> np.ndarray:
    """|00⟩⟨00|."""
    rho = np.zeros((4, 4), dtype=np.complex128)
    rho[0, 0] = 1.0
    return rho
