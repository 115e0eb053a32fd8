# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hom search and B-set law scan.  See ``_pykernels`` for the
reference semantics; results are identical."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def search_homs(int nx, int ny, rel_x, rel_y, ops_x, ops_y, allowed=None, long limit=-1):
    if nx == 0:
        return [()]
    if ny == 0:
        return []
    cdef int nr = len(rel_x)
    cdef int nu = len(ops_x)
    cdef int[:, ::1] RX = np.ascontiguousarray(np.asarray(rel_x, dtype=np.int32).reshape(nr, nx))
    cdef int[:, ::1] RY = np.ascontiguousarray(np.asarray(rel_y, dtype=np.int32).reshape(nr, ny))
    cdef int[:, ::1] UX = np.ascontiguousarray(np.asarray(ops_x, dtype=np.int32).reshape(nu, nx))
    cdef int[:, ::1] UY = np.ascontiguousarray(np.asarray(ops_y, dtype=np.int32).reshape(nu, ny))

    # candidate lists, flattened
    cdef int[::1] cstart = np.zeros(nx + 1, dtype=np.int32)
    cdef list flat = []
    cdef int a
    for a in range(nx):
        vals = list(allowed[a]) if allowed is not None else list(range(ny))
        flat.extend(vals)
        cstart[a + 1] = cstart[a] + len(vals)
    cdef int[::1] cand = np.asarray(flat if flat else [0], dtype=np.int32)

    # unary constraints grouped by the position at which they become checkable
    cdef int[::1] kstart = np.zeros(nx + 1, dtype=np.int32)
    groups = [[] for _ in range(nx)]
    cdef int u, b, pos
    for u in range(nu):
        for b in range(nx):
            pos = b if b > UX[u, b] else UX[u, b]
            groups[pos].append((u, b))
    cdef list kflat = []
    for a in range(nx):
        kflat.extend(groups[a])
        kstart[a + 1] = kstart[a] + len(groups[a])
    cdef int[:, ::1] K = np.asarray(kflat if kflat else [(0, 0)], dtype=np.int32).reshape(-1, 2)

    cdef int[::1] f = np.zeros(nx, dtype=np.int32)
    cdef int[::1] pick = np.zeros(nx, dtype=np.int32)
    cdef list out = []
    cdef int r, rep, y, j, good
    a = 0
    pick[0] = cstart[0]
    while a >= 0:
        if pick[a] >= cstart[a + 1]:
            a -= 1
            if a >= 0:
                pick[a] += 1
            continue
        y = cand[pick[a]]
        f[a] = y
        good = 1
        for r in range(nr):
            rep = RX[r, a]
            if rep != a and RY[r, f[rep]] != RY[r, y]:
                good = 0
                break
        if good:
            for j in range(kstart[a], kstart[a + 1]):
                u = K[j, 0]
                b = K[j, 1]
                if f[UX[u, b]] != UY[u, f[b]]:
                    good = 0
                    break
        if not good:
            pick[a] += 1
            continue
        if a == nx - 1:
            out.append(tuple([f[j] for j in range(nx)]))
            if limit >= 0 and len(out) >= limit:
                return out
            pick[a] += 1
        else:
            a += 1
            pick[a] = cstart[a]
    return out


def bset_axiom_failure(act, int top):
    cdef cnp.ndarray arr = np.ascontiguousarray(np.asarray(act, dtype=np.int32))
    if arr.ndim != 3 or arr.shape[0] == 0:
        return None
    cdef int[:, :, ::1] A = arr
    cdef int nb = A.shape[0]
    cdef int n = A.shape[1]
    cdef int b, c, x, y, z, bxy
    for b in range(nb):
        for x in range(n):
            if A[b, x, x] != x:
                return (0, b, -1, x, -1, -1)
    for x in range(n):
        for y in range(n):
            if A[top, x, y] != x:
                return (1, top, -1, x, y, -1)
    for b in range(nb):
        for x in range(n):
            for y in range(n):
                if A[top ^ b, x, y] != A[b, y, x]:
                    return (2, b, -1, x, y, -1)
    for b in range(nb):
        for c in range(nb):
            for x in range(n):
                for y in range(n):
                    if A[b & c, x, y] != A[b, A[c, x, y], y]:
                        return (3, b, c, x, y, -1)
    for b in range(nb):
        for x in range(n):
            for y in range(n):
                bxy = A[b, x, y]
                for z in range(n):
                    if A[b, bxy, z] != A[b, x, z]:
                        return (4, b, -1, x, y, z)
                    if A[b, x, A[b, y, z]] != A[b, x, z]:
                        return (5, b, -1, x, y, z)
    return None
