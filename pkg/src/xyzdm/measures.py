"""Local quantum Fisher information (LQFI) and local quantum uncertainty (LQU).

Both measures minimize a quantity over local observables n·σ ⊗ I on qubit A:

* LQFI: QFI with the normalization where a pure state's QFI equals the
  observable's variance. Minimum = 1 − λmax(W).
* LQU: Wigner-Yanase skew information. Minimum = 1 − λmax(M).

W is assembled from the all-pairs sum (m = n terms included). This is the
form for which tr(ρH²) − Σ 2λmλn/(λm+λn)|Hmn|² equals the QFI. It is also
the form that gives zero for classical states such as |00⟩⟨00|.

:func:`brute_force_min` checks both closed matrix routes independently:
it evaluates the two functionals on a Fibonacci sphere and polishes the
best grid point by coordinate descent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import eigh, local_a, matrix_sqrt, max_eig_sym3, pauli, symmetrize_real
from .model import XStateElements

SPECTRAL_EPS = 1e-12
DENOM_EPS = 1e-12
RADICAND_TOL = 1e-12

LOCAL_PAULIS = np.array([local_a(pauli(ax)) for ax in "xyz"])


@dataclass(frozen=True)
class MeasureResult:
    value: float
    direction: np.ndarray
    matrix: np.ndarray


def _pair_weights(lam: np.ndarray, kind: str) -> np.ndarray:
    """Matrix of pair coefficients c[m, n] over the eigenvalues of ρ."""
    lm = lam[:, None]
    ln = lam[None, :]
    den = lm + ln
    keep = den > SPECTRAL_EPS
    safe = np.where(keep, den, 1.0)
    if kind == "harmonic":  # 2λmλn/(λm+λn)
        c = 2.0 * lm * ln / safe
    elif kind == "qfi":  # ½(λm−λn)²/(λm+λn)
        c = 0.5 * (lm - ln) ** 2 / safe
    else:
        raise ValueError(kind)
    return np.where(keep, c, 0.0)


def _density_spectrum(rho) -> tuple[np.ndarray, np.ndarray]:
    lam, vec = eigh(rho)
    # roundoff below zero would flip signs inside the pair weights
    return np.clip(lam, 0.0, None), vec


def qfi(rho, h) -> float:
    """½ Σ_{m≠n} (λm−λn)²/(λm+λn) |⟨m|h|n⟩|² over the eigenbasis of ρ."""
    lam, vec = _density_spectrum(rho)
    hmn = vec.conj().T @ np.asarray(h, dtype=np.complex128) @ vec
    c = _pair_weights(lam, "qfi")
    return float(max(0.0, np.sum(c * np.abs(hmn) ** 2)))


def _local_in_eigenbasis(vec: np.ndarray) -> np.ndarray:
    return np.einsum("am,imn,nb->iab", vec.conj().T, LOCAL_PAULIS, vec)


def lqfi_matrix(rho) -> np.ndarray:
    """W[i, j] = Σ_{m,n} 2λmλn/(λm+λn) Re(⟨m|σi⊗I|n⟩⟨n|σj⊗I|m⟩)."""
    lam, vec = _density_spectrum(rho)
    s = _local_in_eigenbasis(vec)
    c = _pair_weights(lam, "harmonic")
    # ⟨n|σj|m⟩ = conj(⟨m|σj|n⟩) for Hermitian σj
    w = np.einsum("mn,imn,jmn->ij", c, s, s.conj())
    return symmetrize_real(w)


def _result(matrix: np.ndarray) -> MeasureResult:
    top, direction = max_eig_sym3(matrix)
    return MeasureResult(value=1.0 - top, direction=direction, matrix=matrix)


def lqfi(rho) -> MeasureResult:
    return _result(lqfi_matrix(rho))


def variance(rho, k) -> float:
    rho = np.asarray(rho, dtype=np.complex128)
    k = np.asarray(k, dtype=np.complex128)
    mean = np.trace(rho @ k).real
    return float(np.trace(rho @ k @ k).real - mean * mean)


def skew_information(rho, k) -> float:
    """Wigner-Yanase skew information −½ tr([√ρ, k]²) = tr(ρk²) − tr(√ρ k √ρ k)."""
    rho = np.asarray(rho, dtype=np.complex128)
    k = np.asarray(k, dtype=np.complex128)
    root = matrix_sqrt(rho)
    return float(np.trace(rho @ k @ k).real - np.trace(root @ k @ root @ k).real)


def lqu_matrix(rho) -> np.ndarray:
    """M[i, j] = tr(√ρ (σi⊗I) √ρ (σj⊗I)), real part, symmetrized."""
    root = matrix_sqrt(rho)
    left = np.einsum("ab,ibc->iac", root, LOCAL_PAULIS)
    m = np.einsum("iab,jba->ij", left, left)
    return symmetrize_real(m)


def lqu(rho) -> MeasureResult:
    return _result(lqu_matrix(rho))


def _ratio(num: float, den: float) -> float:
    return num / den if den >= DENOM_EPS else 0.0


def _block_eigs(e: XStateElements) -> tuple[float, float, float, float]:
    av = abs(e.v)
    return e.r - e.s, e.r + e.s, e.u - av, e.u + av


def closed_form_w_diag(e: XStateElements) -> tuple[float, float, float]:
    """W11, W22, W33 of an X state in terms of r, s, u and |v|.

    Terms with a vanishing denominator contribute zero; so do the W33 terms
    when r = 0 or u = 0, where their numerators vanish with them.
    """
    rm, rp, um, up = _block_eigs(e)
    av = abs(e.v)
    w11 = _ratio(4 * rm * um, um + rm) + _ratio(4 * rp * up, up + rp)
    w22 = _ratio(4 * rp * um, um + rp) + _ratio(4 * rm * up, up + rm)
    w33 = _ratio(2 * (e.u ** 2 - av ** 2), e.u) + _ratio(2 * (e.r ** 2 - e.s ** 2), e.r)
    return w11, w22, w33


def _root(x: float) -> float:
    if x < -RADICAND_TOL:
        raise ValueError(f"X-state block eigenvalue {x:.3e} is negative; not a valid state")
    return math.sqrt(max(x, 0.0))


def closed_form_m_diag(e: XStateElements) -> tuple[float, float, float]:
    rm, rp, um, up = (_root(x) for x in _block_eigs(e))
    m11 = 2 * (rm * um + rp * up)
    m22 = 2 * (rp * um + rm * up)
    m33 = 2 * (um * up + rm * rp)
    return m11, m22, m33


# brute-force oracle


def fibonacci_sphere(n: int) -> np.ndarray:
    """n quasi-uniform unit vectors, z running from near +1 to near −1."""
    i = np.arange(n) + 0.5
    z = 1.0 - 2.0 * i / n
    phi = math.pi * (3.0 - math.sqrt(5.0)) * i
    rxy = np.sqrt(1.0 - z * z)
    return np.stack([rxy * np.cos(phi), rxy * np.sin(phi), z], axis=1)


def _angles_to_vectors(polar: np.ndarray, azimuth: np.ndarray) -> np.ndarray:
    sp = np.sin(polar)
    return np.stack([sp * np.cos(azimuth), sp * np.sin(azimuth), np.cos(polar)], axis=-1)


def _fisher_objective(rho):
    """Vectorized n ↦ tr(ρH²) − Σ_{m,n} 2λmλn/(λm+λn)|⟨m|H|n⟩|², H = n·σ ⊗ I."""
    rho = np.asarray(rho, dtype=np.complex128)
    lam, vec = _density_spectrum(rho)
    s = _local_in_eigenbasis(vec)
    c = _pair_weights(lam, "harmonic")

    def f(dirs: np.ndarray) -> np.ndarray:
        h = np.einsum("ki,iab->kab", dirs, LOCAL_PAULIS)
        hmn = np.einsum("ki,iab->kab", dirs, s)
        first = np.einsum("ab,kbc,kca->k", rho, h, h).real
        return first - np.einsum("ab,kab->k", c, np.abs(hmn) ** 2)

    return f


def _skew_objective(rho):
    """Vectorized n ↦ tr(ρK²) − tr(√ρ K √ρ K), K = n·σ ⊗ I."""
    rho = np.asarray(rho, dtype=np.complex128)
    root = matrix_sqrt(rho)

    def f(dirs: np.ndarray) -> np.ndarray:
        k = np.einsum("ki,iab->kab", dirs, LOCAL_PAULIS)
        first = np.einsum("ab,kbc,kca->k", rho, k, k).real
        rk = np.einsum("ab,kbc->kac", root, k)
        return first - np.einsum("kab,kba->k", rk, rk).real

    return f


_STENCIL = np.array([(dp, da) for dp in (-1, 0, 1) for da in (-1, 0, 1) if (dp, da) != (0, 0)])


def brute_force_min(rho, measure: str, resolution: int = 10_000, min_step: float = 1e-7) -> MeasureResult:
    """Minimize the Fisher or skew functional over local directions by direct search.

    The functional is evaluated on a ``resolution``-point Fibonacci sphere;
    ties go to the smallest grid index. Starting from the best grid point,
    (polar, azimuth) is refined on an 8-neighbour stencil: move to the best
    improving neighbour, otherwise halve the step, starting at π/resolution
    and stopping below ``min_step``. ``matrix`` of the result is left as an
    empty array since no W or M is formed.
    """
    if resolution < 100:
        raise ValueError(f"resolution must be >= 100, got {resolution}")
    if measure == "fisher":
        f = _fisher_objective(rho)
    elif measure == "skew":
        f = _skew_objective(rho)
    else:
        raise ValueError(f"measure must be 'fisher' or 'skew', got {measure!r}")

    grid = fibonacci_sphere(resolution)
    values = f(grid)
    best = int(np.argmin(values))  # first occurrence on ties
    best_val = float(values[best])
    x, y, z = grid[best]
    here = np.array([math.acos(max(-1.0, min(1.0, z))), math.atan2(y, x)])

    step = math.pi / resolution
    while step >= min_step:
        trial = here + step * _STENCIL
        vals = f(_angles_to_vectors(trial[:, 0], trial[:, 1]))
        k = int(np.argmin(vals))
        if vals[k] < best_val:
            best_val = float(vals[k])
            here = trial[k]
        else:
            step *= 0.5
    direction = _angles_to_vectors(here[0], here[1])
    return MeasureResult(value=best_val, direction=direction, matrix=np.zeros((0, 0)))
