"""Brute-force golden values for the Fig. 1 point (Jz=0.2, T=1).

Deliberately independent of the package: numpy/scipy only, matrix exponential
for the Gibbs state, scipy sqrtm for the skew information, a 10^5-point
Fibonacci grid and a Nelder-Mead polish. The printed numbers are frozen into
tests/test_golden.py.
"""

import numpy as np
import scipy.linalg as sl
from scipy.optimize import minimize

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]])
SZ = np.diag([1.0, -1.0]).astype(complex)
I2 = np.eye(2)
LOCAL = np.array([np.kron(s, I2) for s in (SX, SY, SZ)])


def gibbs(jx, jy, jz, dz, temp):
    h = (jx * np.kron(SX, SX) + jy * np.kron(SY, SY) + jz * np.kron(SZ, SZ)
         + dz * (np.kron(SX, SY) - np.kron(SY, SX)))
    r = sl.expm(-h / temp)
    return r / np.trace(r).real


def fisher(rho, n):
    lam, vec = np.linalg.eigh(rho)
    k = np.einsum("...i,ijk->...jk", n, LOCAL)
    kmn = np.einsum("am,...mn,nb->...ab", vec.conj().T, k, vec)
    den = lam[:, None] + lam[None, :]
    c = np.where(den > 1e-12, 2 * np.outer(lam, lam) / np.where(den > 1e-12, den, 1), 0)
    first = np.einsum("ij,...jk,...ki->...", rho, k, k).real
    return first - np.einsum("ab,...ab->...", c, np.abs(kmn) ** 2)


def skew(rho, n):
    q = sl.sqrtm(rho)
    k = np.einsum("...i,ijk->...jk", n, LOCAL)
    return (np.einsum("ij,...jk,...ki->...", rho, k, k)
            - np.einsum("ij,...jk,kl,...li->...", q, k, q, k)).real


def fib(n):
    i = np.arange(n) + 0.5
    z = 1 - 2 * i / n
    phi = np.pi * (3 - np.sqrt(5)) * i
    r = np.sqrt(1 - z * z)
    return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)


def direction(a):
    return np.array([np.sin(a[0]) * np.cos(a[1]), np.sin(a[0]) * np.sin(a[1]), np.cos(a[0])])


def brute(rho, f, res=100_000):
    pts = fib(res)
    vals = f(rho, pts)
    p = pts[np.argmin(vals)]
    a0 = [np.arccos(np.clip(p[2], -1, 1)), np.arctan2(p[1], p[0])]
    out = minimize(lambda a: f(rho, direction(a)), a0, method="Nelder-Mead",
                   options={"xatol": 1e-10, "fatol": 1e-15, "maxiter": 10000})
    return min(out.fun, vals.min())


if __name__ == "__main__":
    rho = gibbs(-1.0, -0.5, 0.2, 1.0, 1.0)
    print(f"lqfi = {brute(rho, fisher)!r}")
    print(f"lqu  = {brute(rho, skew)!r}")
