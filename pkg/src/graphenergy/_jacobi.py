"""Cyclic Jacobi eigenvalue iteration for dense real symmetric matrices."""

from __future__ import annotations

import math

import numpy as np
from numba import njit


@njit(cache=True)
def _off_norm(a):
    n = a.shape[0]
    s = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                s += a[i, j] * a[i, j]
    return math.sqrt(s)


@njit(cache=True)
def jacobi_sweeps(a, threshold, max_sweeps, want_vectors):
    """Diagonalise ``a`` in place by row-cyclic plane rotations.

    Returns ``(diag, vectors, sweeps, off_norm)``. ``off_norm`` above
    ``threshold`` on return means the sweep cap was hit.
    """
    n = a.shape[0]
    v = np.eye(n)
    off = _off_norm(a)
    sweeps = 0
    while off > threshold and sweeps < max_sweeps:
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                if want_vectors:
                    for k in range(n):
                        vkp = v[k, p]
                        vkq = v[k, q]
                        v[k, p] = c * vkp - s * vkq
                        v[k, q] = s * vkp + c * vkq
        sweeps += 1
        off = _off_norm(a)
    diag = np.empty(n)
    for i in range(n):
        diag[i] = a[i, i]
    return diag, v, sweeps, off
