"""Dense complex linear algebra for 2x2 and 4x4 Hermitian matrices.

Matrices are plain ``numpy.complex128`` arrays. The eigensolver is a cyclic
complex Jacobi method: at these sizes it is deterministic, exact about
preserving zero structure (an X-shaped input stays X-shaped), and needs no
LAPACK call.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import ConvergenceError, NotPSDError

HERMITIAN_TOL = 1e-12
PHASE_TOL = 1e-10
PSD_TOL = 1e-12
MAX_SWEEPS = 100
OFFDIAG_RTOL = 1e-14
ALLOWED_DIMS = (2, 4)

_PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


class EigenDecomposition(NamedTuple):
    eigenvalues: np.ndarray  # ascending, real
    eigenvectors: np.ndarray  # column k belongs to eigenvalues[k]


def pauli(axis: str) -> np.ndarray:
    """Pauli matrix for ``axis`` in {"x", "y", "z"} (fresh copy)."""
    try:
        return _PAULI[axis].copy()
    except KeyError:
        raise ValueError(f"unknown Pauli axis {axis!r}; expected 'x', 'y' or 'z'") from None


def identity(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=np.complex128)


def as_hermitian(a, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Validate ``a`` as a finite 2x2 or 4x4 Hermitian matrix and return it as complex128."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in ALLOWED_DIMS:
        raise ValueError(f"expected a 2x2 or 4x4 matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    dev = np.max(np.abs(m - m.conj().T))
    if dev > tol:
        raise ValueError(f"matrix is not Hermitian (max deviation {dev:.3e})")
    return m


def kron(a, b) -> np.ndarray:
    """Kronecker product, restricted to results of dimension at most 4."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.shape[0] * b.shape[0] > max(ALLOWED_DIMS):
        raise ValueError(
            f"Kronecker product of {a.shape[0]}x{a.shape[0]} and {b.shape[0]}x{b.shape[0]} "
            f"exceeds dimension {max(ALLOWED_DIMS)}"
        )
    return np.kron(a, b)


def local_a(op) -> np.ndarray:
    """Embed a single-qubit operator on the first qubit: ``op ⊗ I``."""
    return kron(op, identity(2))


def _fix_phase(vec: np.ndarray) -> np.ndarray:
    for i, c in enumerate(vec):
        if abs(c) > PHASE_TOL:
            out = vec * (abs(c) / c)
            out[i] = abs(c)
            return out
    return vec


def eigh(a) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.

    Each rotation first removes the phase of the pivot ``a[p, q]`` with a
    diagonal unitary, then applies the real symmetric Jacobi rotation. Pivots
    that are exactly zero are skipped, so zero blocks of the input are never
    filled in. Eigenvalues are returned ascending (stable order for ties) and
    every eigenvector has its first component of modulus above 1e-10 made
    real and positive.

    Raises ConvergenceError if the off-diagonal Frobenius norm does not drop
    below ``1e-14 * ||a||_F`` within 100 sweeps.
    """
    a = as_hermitian(a).copy()
    n = a.shape[0]
    v = identity(n)
    scale = np.linalg.norm(a)
    threshold = OFFDIAG_RTOL * scale

    offdiag = ~np.eye(n, dtype=bool)

    def off_norm() -> float:
        return float(np.linalg.norm(a[offdiag]))

    sweeps = 0
    while scale > 0 and off_norm() > threshold:
        if sweeps == MAX_SWEEPS:
            raise ConvergenceError(
                f"Jacobi eigensolver did not converge in {MAX_SWEEPS} sweeps "
                f"(off-diagonal norm {off_norm():.3e})"
            )
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                phase = apq / mag
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                t = np.copysign(1.0, theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # g = diag(1, conj(phase)) @ [[c, s], [-s, c]] on the (p, q) plane
                g = identity(n)
                g[p, p] = c
                g[p, q] = s
                g[q, p] = -s * phase.conjugate()
                g[q, q] = c * phase.conjugate()
                a = g.conj().T @ a @ g
                a[p, q] = a[q, p] = 0.0
                a = 0.5 * (a + a.conj().T)
                v = v @ g

    values = np.diag(a).real.copy()
    order = np.argsort(values, kind="stable")
    values = values[order]
    vectors = v[:, order]
    for k in range(n):
        vectors[:, k] = _fix_phase(vectors[:, k])
    return EigenDecomposition(values, vectors)


def matrix_sqrt(a) -> np.ndarray:
    """Principal square root of a positive semidefinite Hermitian matrix.

    Eigenvalues in [-1e-12, 0) are treated as roundoff and clamped to zero;
    anything more negative raises NotPSDError. Positive eigenvalues below the
    eigensolver's resolution (n·eps·max|λ|) are zeroed as well, otherwise a
    rounded pure state picks up spurious √1e-17 ≈ 3e-9 components.
    """
    lam, vec = eigh(a)
    if lam[0] < -PSD_TOL:
        raise NotPSDError(f"matrix is not positive semidefinite (min eigenvalue {lam[0]:.3e})")
    floor = len(lam) * np.finfo(float).eps * np.max(np.abs(lam))
    root = np.sqrt(np.where(lam > floor, lam, 0.0))
    out = (vec * root) @ vec.conj().T
    return 0.5 * (out + out.conj().T)


def symmetrize_real(m) -> np.ndarray:
    """Real part of ``m``, made exactly symmetric."""
    r = np.real(np.asarray(m))
    return 0.5 * (r + r.T)


def max_eig_sym3(w) -> tuple[float, np.ndarray]:
    """Largest eigenvalue of a real symmetric 3x3 matrix and a unit eigenvector.

    When the top eigenvalue is degenerate the direction is the normalized
    projection of the first coordinate axis with a nonzero projection onto the
    top eigenspace, i.e. the eigenvector with the lexicographically largest
    absolute components. The first nonzero component is made positive.
    """
    w = np.asarray(w, dtype=float)
    if w.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got shape {w.shape}")
    if not np.array_equal(w, w.T):
        w = symmetrize_real(w)
    lam, vec = np.linalg.eigh(w)
    top = lam[-1]
    tol = 1e-12 * max(1.0, abs(top))
    basis = vec[:, lam >= top - tol]
    proj = basis @ basis.T
    direction = None
    for i in range(3):
        col = proj[:, i]
        norm = np.linalg.norm(col)
        if norm > 1e-8:
            direction = col / norm
            break
    if direction is None:  # unreachable for a nonempty eigenspace
        direction = np.array([1.0, 0.0, 0.0])
    for c in direction:
        if abs(c) > PHASE_TOL:
            direction = direction * np.sign(c)
            break
    return float(top), direction
