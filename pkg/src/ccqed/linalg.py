"""Small Hermitian eigensolvers and finite differences.

These are deliberately self-contained (no LAPACK) so they can serve as an
independent check on the closed-form spectra elsewhere in the package.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import NumericError, ValidationError

HERMITIAN_RTOL = 1e-13
MAX_SWEEPS = 50


def as_hermitian(matrix, rtol: float = HERMITIAN_RTOL) -> np.ndarray:
    """Return ``matrix`` as a complex square array, checking A = A^H."""
    a = np.array(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {a.shape}")
    scale = np.max(np.abs(a)) if a.size else 0.0
    if np.max(np.abs(a - a.conj().T), initial=0.0) > rtol * scale:
        raise ValidationError("matrix is not Hermitian within tolerance")
    # symmetrise so that round-off asymmetry cannot leak into the rotations
    return 0.5 * (a + a.conj().T)


def _off_norm(a: np.ndarray) -> float:
    off = a[~np.eye(a.shape[0], dtype=bool)]
    return math.sqrt(float(np.sum(np.abs(off) ** 2)))


def _fix_phases(vecs: np.ndarray) -> np.ndarray:
    # largest component of each eigenvector made real positive (first wins ties)
    out = vecs.copy()
    for j in range(out.shape[1]):
        col = out[:, j]
        mags = np.abs(col)
        i = int(np.argmax(mags >= mags.max() * (1 - 1e-12)))
        out[:, j] = col * (abs(col[i]) / col[i])
    return out


def jacobi_eigh(matrix, max_sweeps: int = MAX_SWEEPS):
    """Cyclic Jacobi diagonalisation of a complex Hermitian matrix.

    Returns ``(w, v)`` with eigenvalues ascending and eigenvectors in the
    columns of ``v``.
    """
    a = as_hermitian(matrix)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    total = math.sqrt(float(np.sum(np.abs(a) ** 2)))
    if n == 0:
        return np.zeros(0), v
    tol = 1e-18 * total

    for _ in range(max_sweeps):
        if _off_norm(a) <= tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= tol * 1e-3:
                    continue
                phase = apq / r
                app, aqq = a[p, p].real, a[q, q].real
                theta = (aqq - app) / (2.0 * r)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.hypot(t, 1.0)
                s = t * c
                # G = diag(1, conj(phase)) @ [[c, s], [-s, c]] acting on (p, q)
                g = np.eye(n, dtype=complex)
                g[p, p] = c
                g[p, q] = s
                g[q, p] = -s * phase.conjugate()
                g[q, q] = c * phase.conjugate()
                a = g.conj().T @ a @ g
                a[p, q] = a[q, p] = 0.0
                a[p, p] = app - t * r
                a[q, q] = aqq + t * r
                v = v @ g
    else:
        off = _off_norm(a)
        if off > tol:
            raise NumericError(
                f"Jacobi did not converge in {max_sweeps} sweeps "
                f"(off-diagonal norm {off:.3e})"
            )

    w = np.real(np.diag(a))
    order = np.argsort(w, kind="stable")
    w = w[order]
    v = v[:, order]
    v = _orthonormalise_clusters(w, v, total)
    return w, _fix_phases(v)


def _orthonormalise_clusters(w, v, scale):
    # Gram-Schmidt inside (near-)degenerate clusters, in index order
    n = len(w)
    tol = 1e-12 * max(scale, np.finfo(float).tiny)
    i = 0
    while i < n:
        j = i + 1
        while j < n and w[j] - w[j - 1] <= tol:
            j += 1
        if j - i > 1:
            q, _ = np.linalg.qr(v[:, i:j])
            v[:, i:j] = q
        i = j
    return v


def eigh_2x2(matrix):
    """Closed-form eigen-decomposition of a 2x2 Hermitian matrix."""
    a = as_hermitian(matrix)
    if a.shape != (2, 2):
        raise ValidationError(f"expected a 2x2 matrix, got shape {a.shape}")
    p, q, b = a[0, 0].real, a[1, 1].real, a[0, 1]
    r = abs(b)
    half_gap = 0.5 * (p - q)
    radius = math.hypot(half_gap, r)
    mean = 0.5 * (p + q)
    w = np.array([mean - radius, mean + radius])
    if r == 0.0:
        # already diagonal; order the basis states by their energy
        v = np.eye(2, dtype=complex) if p <= q else np.array([[0, 1], [1, 0]], dtype=complex)
        return w, _fix_phases(v)
    phase = b.conjugate() / r
    theta = 0.5 * math.atan2(r, half_gap)
    upper = np.array([math.cos(theta), math.sin(theta) * phase])
    lower = np.array([-math.sin(theta), math.cos(theta) * phase])
    return w, _fix_phases(np.column_stack([lower, upper]))


def eigh(matrix, method: str = "auto"):
    """Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix.

    ``method`` is ``"jacobi"``, ``"closed"`` (2x2 only) or ``"auto"``, which
    takes the closed-form path for 2x2 input and Jacobi otherwise.
    """
    if method not in ("auto", "jacobi", "closed"):
        raise ValueError(f"unknown method {method!r}")
    shape = np.shape(matrix)
    if method == "closed" or (method == "auto" and shape == (2, 2)):
        return eigh_2x2(matrix)
    return jacobi_eigh(matrix)


def central_diff(f, z, h):
    """Second-order central difference (f(z+h) - f(z-h)) / 2h."""
    if not h > 0:
        raise ValueError(f"step must be positive, got {h}")
    return (f(z + h) - f(z - h)) / (2.0 * h)
