"""Hot numeric kernels.

Every kernel is written once, in numpy-slice style that numba can compile.
When numba is importable and ``ISOPENCIL_NO_NUMBA`` is unset (or ``0``), the
public names below are ``numba.njit`` compiled; otherwise they are the plain
Python/numpy functions.  The flag is read once, at import.
"""
from __future__ import annotations

import math
import os

import numpy as np

_FLAG = os.environ.get("ISOPENCIL_NO_NUMBA", "").strip().lower()
_DISABLED = _FLAG not in ("", "0", "false", "no")

try:
    if _DISABLED:
        raise ImportError
    import numba

    USE_NUMBA = True
except ImportError:
    numba = None
    USE_NUMBA = False


def _jit(fn):
    if USE_NUMBA:
        return numba.njit(cache=True)(fn)
    return fn


# --------------------------------------------------------------------------
# cyclic complex Jacobi for Hermitian matrices


def _jacobi_core(A, V, max_sweeps, rel_tol, want_vectors):
    """Diagonalize Hermitian ``A`` in place, accumulating rotations into ``V``.

    Returns the number of sweeps performed, or -1 if the off-diagonal norm
    is still above ``rel_tol * ||A||_F`` after ``max_sweeps`` sweeps.
    """
    n = A.shape[0]
    fro2 = 0.0
    for i in range(n):
        for j in range(n):
            fro2 += A[i, j].real ** 2 + A[i, j].imag ** 2
    thresh = rel_tol * math.sqrt(fro2)
    if fro2 == 0.0:
        return 0
    for sweep in range(max_sweeps + 1):
        off2 = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off2 += A[p, q].real ** 2 + A[p, q].imag ** 2
        if math.sqrt(2.0 * off2) <= thresh:
            return sweep
        if sweep == max_sweeps:
            return -1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                ph = apq / r
                cph = np.conj(ph)
                theta = (A[q, q].real - A[p, p].real) / (2.0 * r)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                colp = A[:, p].copy()
                colq = A[:, q].copy()
                A[:, p] = c * colp - s * cph * colq
                A[:, q] = s * colp + c * cph * colq
                rowp = A[p, :].copy()
                rowq = A[q, :].copy()
                A[p, :] = c * rowp - s * ph * rowq
                A[q, :] = s * rowp + c * ph * rowq
                A[p, q] = 0.0
                A[q, p] = 0.0
                A[p, p] = A[p, p].real
                A[q, q] = A[q, q].real
                if want_vectors:
                    vp = V[:, p].copy()
                    vq = V[:, q].copy()
                    V[:, p] = c * vp - s * cph * vq
                    V[:, q] = s * vp + c * cph * vq
    return -1


def _jacobi_eigh(H, max_sweeps, rel_tol):
    n = H.shape[0]
    A = H.copy()
    V = np.eye(n, dtype=np.complex128)
    status = _jacobi_core(A, V, max_sweeps, rel_tol, True)
    vals = np.empty(n)
    for i in range(n):
        vals[i] = A[i, i].real
    order = np.argsort(-vals)
    return vals[order], V[:, order].copy(), status


def _jacobi_eigvals_batch(Hs, max_sweeps, rel_tol):
    """Descending eigenvalues of a stack of Hermitian matrices, shape (m, n)."""
    m = Hs.shape[0]
    n = Hs.shape[1]
    out = np.empty((m, n))
    worst = 0
    V = np.eye(n, dtype=np.complex128)
    for j in range(m):
        A = Hs[j].copy()
        status = _jacobi_core(A, V, max_sweeps, rel_tol, False)
        if status < 0:
            worst = -1
        vals = np.empty(n)
        for i in range(n):
            vals[i] = A[i, i].real
        out[j] = -np.sort(-vals)
    return out, worst


# --------------------------------------------------------------------------
# one-sided (Hestenes) Jacobi SVD, singular values only


def _jacobi_singular_values(M, max_sweeps, rel_tol):
    A = M.copy()
    n = A.shape[1]
    for sweep in range(max_sweeps):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                colp = A[:, p].copy()
                colq = A[:, q].copy()
                alpha = np.vdot(colp, colp).real
                beta = np.vdot(colq, colq).real
                gamma = np.vdot(colp, colq)
                g = abs(gamma)
                if g == 0.0 or g <= rel_tol * math.sqrt(alpha * beta):
                    continue
                rotated = True
                ph = gamma / g
                theta = (beta - alpha) / (2.0 * g)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                A[:, p] = c * colp - s * np.conj(ph) * colq
                A[:, q] = s * colp + c * np.conj(ph) * colq
        if not rotated:
            break
    sv = np.empty(n)
    for j in range(n):
        acc = 0.0
        for i in range(A.shape[0]):
            acc += A[i, j].real ** 2 + A[i, j].imag ** 2
        sv[j] = math.sqrt(acc)
    return -np.sort(-sv)


# --------------------------------------------------------------------------
# word-trace enumeration


def _word_trace_sum(B, Bs, k, l):
    """Sum of Tr w(B, B*) over all words of length k with l letters B*.

    Depth-first over the binomial tree of letter placements; prefix products
    are kept on a stack so each node costs one matrix product.
    """
    n = B.shape[0]
    prefix = np.zeros((k + 1, n, n), dtype=np.complex128)
    for i in range(n):
        prefix[0, i, i] = 1.0
    choice = np.full(k, -1, dtype=np.int64)
    nstar = 0
    d = 0
    total = 0.0 + 0.0j
    while d >= 0:
        if d == k:
            for i in range(n):
                total += prefix[k, i, i]
            d -= 1
            continue
        c = choice[d]
        if c == 1:
            nstar -= 1
        c += 1
        remaining = k - d - 1
        while c <= 1:
            ns = nstar + c
            if ns <= l and ns + remaining >= l:
                break
            c += 1
        if c > 1:
            choice[d] = -1
            d -= 1
            continue
        choice[d] = c
        nstar += c
        if c == 0:
            prefix[d + 1] = np.dot(prefix[d], B)
        else:
            prefix[d + 1] = np.dot(prefix[d], Bs)
        d += 1
    return total


# --------------------------------------------------------------------------
# half-plane clipping (Sutherland-Hodgman against one line at a time)


def _clip_halfplanes(x0, y0, a, b, c):
    """Clip the convex polygon (x0, y0) by every half-plane a x + b y <= c."""
    cap = x0.shape[0] + a.shape[0] + 1
    px = np.empty(cap)
    py = np.empty(cap)
    qx = np.empty(cap)
    qy = np.empty(cap)
    m = x0.shape[0]
    px[:m] = x0
    py[:m] = y0
    for j in range(a.shape[0]):
        cnt = 0
        for i in range(m):
            i2 = i + 1 if i + 1 < m else 0
            x1 = px[i]
            y1 = py[i]
            x2 = px[i2]
            y2 = py[i2]
            d1 = a[j] * x1 + b[j] * y1 - c[j]
            d2 = a[j] * x2 + b[j] * y2 - c[j]
            in1 = d1 <= 0.0
            in2 = d2 <= 0.0
            if in1:
                qx[cnt] = x1
                qy[cnt] = y1
                cnt += 1
            if in1 != in2:
                s = d1 / (d1 - d2)
                qx[cnt] = x1 + s * (x2 - x1)
                qy[cnt] = y1 + s * (y2 - y1)
                cnt += 1
        px, qx = qx, px
        py, qy = qy, py
        m = cnt
        if m == 0:
            break
    return px[:m].copy(), py[:m].copy()


_jacobi_core = _jit(_jacobi_core)
jacobi_eigh = _jit(_jacobi_eigh)
jacobi_eigvals_batch = _jit(_jacobi_eigvals_batch)
jacobi_singular_values = _jit(_jacobi_singular_values)
word_trace_sum = _jit(_word_trace_sum)
clip_halfplanes = _jit(_clip_halfplanes)
