"""Hot kernels: cycle decomposition of index permutations and GF(p^m) elimination.

Every kernel exists twice: a numba ``@njit`` version with explicit loops and a
pure-numpy version.  The dispatching names (``cycle_decompose``, ``gf_rref``,
``gf_matmul``) pick the numba path unless ``BT1FERMAT_NUMBA=0`` is set in the
environment or numba cannot be imported.  Both paths return identical arrays.

Field elements are integer codes ``sum(c_i * p**i)`` of their coefficient
vectors.  Multiplication goes through ``exp``/``log`` tables of a generator of
the multiplicative group, addition is digit-wise mod ``p``.
"""
import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("BT1FERMAT_NUMBA", "1") != "0"


# ---------------------------------------------------------------------------
# cycle decomposition


def cycle_decompose_numpy(perm, mask):
    """Return ``(order, starts)`` for the cycles of ``perm`` restricted to ``mask``.

    Cycles are listed by increasing least element; each cycle starts at its
    least element and follows ``perm``.  ``order[starts[k]:starts[k+1]]`` is
    cycle ``k``.
    """
    perm = np.asarray(perm, dtype=np.int64)
    idx = np.flatnonzero(mask)
    if idx.size == 0:
        return np.empty(0, np.int64), np.zeros(1, np.int64)
    label = idx.copy()
    cur = perm[idx]
    returned = cur == idx
    while not returned.all():
        np.minimum(label, cur, out=label)
        cur = perm[cur]
        returned |= cur == idx
    reps, lengths = np.unique(label, return_counts=True)
    width = int(lengths.max())
    walk = np.empty((reps.size, width), np.int64)
    walk[:, 0] = reps
    for j in range(1, width):
        walk[:, j] = perm[walk[:, j - 1]]
    keep = np.arange(width)[None, :] < lengths[:, None]
    order = walk[keep]
    starts = np.zeros(reps.size + 1, np.int64)
    np.cumsum(lengths, out=starts[1:])
    return order, starts


def _cycle_decompose_loops(perm, mask):
    n = perm.shape[0]
    seen = np.zeros(n, np.bool_)
    order = np.empty(n, np.int64)
    starts = np.empty(n + 1, np.int64)
    k = 0
    c = 0
    for i in range(n):
        if not mask[i] or seen[i]:
            continue
        starts[c] = k
        c += 1
        j = i
        while not seen[j]:
            seen[j] = True
            order[k] = j
            k += 1
            j = perm[j]
    starts[c] = k
    return order[:k].copy(), starts[: c + 1].copy()


# ---------------------------------------------------------------------------
# GF(p^m) arithmetic on integer codes


def _vadd(a, b, p, m):
    r = np.zeros(np.broadcast(a, b).shape, np.int64)
    pw = 1
    for _ in range(m):
        r += ((a // pw) % p + (b // pw) % p) % p * pw
        pw *= p
    return r


def _vneg(a, p, m):
    r = np.zeros(np.shape(a), np.int64)
    pw = 1
    for _ in range(m):
        r += (p - (a // pw) % p) % p * pw
        pw *= p
    return r


def _vmul(a, b, exp, log):
    q1 = exp.shape[0]
    a = np.asarray(a, np.int64)
    b = np.asarray(b, np.int64)
    out = exp[(log[a] + log[b]) % q1]
    return np.where((a == 0) | (b == 0), 0, out)


def gf_rref_numpy(M, p, m, exp, log):
    """Reduced row echelon form over GF(p^m); returns ``(R, pivot_columns)``."""
    R = np.array(M, dtype=np.int64, copy=True)
    rows, cols = R.shape
    q1 = exp.shape[0]
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            R[[r, k]] = R[[k, r]]
        inv = exp[(q1 - log[R[r, c]]) % q1]
        R[r] = _vmul(R[r], inv, exp, log)
        others = np.flatnonzero(R[:, c])
        others = others[others != r]
        if others.size:
            factors = _vneg(R[others, c], p, m)
            R[others] = _vadd(R[others], _vmul(factors[:, None], R[r][None, :], exp, log), p, m)
        pivots.append(c)
        r += 1
    return R, np.array(pivots, dtype=np.int64)


def gf_matmul_numpy(A, B, p, m, exp, log):
    A = np.asarray(A, np.int64)
    B = np.asarray(B, np.int64)
    C = np.zeros((A.shape[0], B.shape[1]), np.int64)
    for k in range(A.shape[1]):
        C = _vadd(C, _vmul(A[:, k : k + 1], B[k : k + 1, :], exp, log), p, m)
    return C


def _sadd(a, b, p, m):
    r = 0
    pw = 1
    for _ in range(m):
        r += (((a // pw) % p + (b // pw) % p) % p) * pw
        pw *= p
    return r


def _sneg(a, p, m):
    r = 0
    pw = 1
    for _ in range(m):
        r += ((p - (a // pw) % p) % p) * pw
        pw *= p
    return r


def _smul(a, b, exp, log):
    if a == 0 or b == 0:
        return 0
    return exp[(log[a] + log[b]) % exp.shape[0]]


def _gf_rref_loops(M, p, m, exp, log):
    R = M.copy()
    rows, cols = R.shape
    q1 = exp.shape[0]
    pivots = np.empty(min(rows, cols), np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        k = -1
        for i in range(r, rows):
            if R[i, c] != 0:
                k = i
                break
        if k < 0:
            continue
        if k != r:
            for j in range(cols):
                t = R[r, j]
                R[r, j] = R[k, j]
                R[k, j] = t
        inv = exp[(q1 - log[R[r, c]]) % q1]
        for j in range(cols):
            R[r, j] = _smul(R[r, j], inv, exp, log)
        for i in range(rows):
            if i != r and R[i, c] != 0:
                f = _sneg(R[i, c], p, m)
                for j in range(cols):
                    if R[r, j] != 0:
                        R[i, j] = _sadd(R[i, j], _smul(f, R[r, j], exp, log), p, m)
        pivots[r] = c
        r += 1
    return R, pivots[:r].copy()


def _gf_matmul_loops(A, B, p, m, exp, log):
    n, kk = A.shape
    cols = B.shape[1]
    C = np.zeros((n, cols), np.int64)
    for i in range(n):
        for k in range(kk):
            a = A[i, k]
            if a == 0:
                continue
            for j in range(cols):
                if B[k, j] != 0:
                    C[i, j] = _sadd(C[i, j], _smul(a, B[k, j], exp, log), p, m)
    return C


if HAVE_NUMBA:
    _sadd = njit(cache=True, inline="always")(_sadd)
    _sneg = njit(cache=True, inline="always")(_sneg)
    _smul = njit(cache=True, inline="always")(_smul)
    _cycle_nb = njit(cache=True)(_cycle_decompose_loops)
    _rref_nb = njit(cache=True)(_gf_rref_loops)
    _matmul_nb = njit(cache=True)(_gf_matmul_loops)

    def cycle_decompose_numba(perm, mask):
        return _cycle_nb(np.asarray(perm, np.int64), np.asarray(mask, np.bool_))

    def gf_rref_numba(M, p, m, exp, log):
        return _rref_nb(np.ascontiguousarray(M, dtype=np.int64), p, m, exp, log)

    def gf_matmul_numba(A, B, p, m, exp, log):
        return _matmul_nb(
            np.ascontiguousarray(A, dtype=np.int64), np.ascontiguousarray(B, dtype=np.int64), p, m, exp, log
        )

else:  # pragma: no cover
    cycle_decompose_numba = gf_rref_numba = gf_matmul_numba = None


if USE_NUMBA:
    cycle_decompose = cycle_decompose_numba
    gf_rref = gf_rref_numba
    gf_matmul = gf_matmul_numba
else:
    cycle_decompose = cycle_decompose_numpy
    gf_rref = gf_rref_numpy
    gf_matmul = gf_matmul_numpy


def backend():
    return "numba" if USE_NUMBA else "numpy"
