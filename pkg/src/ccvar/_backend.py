"""Kernel backend selection.

The compiled extension is used when it imports; set ``CCVAR_PURE_PYTHON=1``
to force the pure-Python fallback.
"""

import os

from . import _pykernels

NAME = "python"
kernels = _pykernels

if os.environ.get("CCVAR_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        pass
    else:
        kernels = _compiled
        NAME = "cython"


def search_homs(nx, ny, rel_x, rel_y, ops_x, ops_y, allowed=None, limit=-1, order=None):
    """See :func:`ccvar._pykernels.search_homs`.

    ``order`` (a permutation of the source points, or ``"auto"``) changes the
    assignment order of the search; the result list is always sorted.
    """
    if order is None or nx == 0:
        return kernels.search_homs(nx, ny, rel_x, rel_y, ops_x, ops_y, allowed, limit)
    perm = orbit_order(nx, ops_x, allowed) if isinstance(order, str) else list(order)
    if perm == list(range(nx)):
        return kernels.search_homs(nx, ny, rel_x, rel_y, ops_x, ops_y, allowed, limit)
    inv = [0] * nx
    for i, p in enumerate(perm):
        inv[p] = i
    rx = [class_labels([r[p] for p in perm], nx) for r in rel_x]
    ux = [[inv[u[p]] for p in perm] for u in ops_x]
    al = None if allowed is None else [allowed[p] for p in perm]
    found = kernels.search_homs(nx, ny, rx, rel_y, ux, ops_y, al, limit)
    out = []
    for g in found:
        f = [0] * nx
        for i, p in enumerate(perm):
            f[p] = g[i]
        out.append(tuple(f))
    out.sort()
    return out


def orbit_order(nx, ops_x, allowed=None):
    """Search order: pinned points (one candidate) and their orbits under the
    unary ops first; otherwise start from a point with the largest orbit.
    Each chosen point is followed by its orbit in breadth-first order."""
    placed = [False] * nx
    perm = []

    def take(x):
        todo = [x]
        placed[x] = True
        while todo:
            y = todo.pop(0)
            perm.append(y)
            for u in ops_x:
                z = u[y]
                if not placed[z]:
                    placed[z] = True
                    todo.append(z)

    pinned = [x for x in range(nx) if allowed is not None and len(allowed[x]) == 1]
    for x in pinned:
        if not placed[x]:
            take(x)
    if not pinned and ops_x:
        def orbit_size(x):
            seen, todo = {x}, [x]
            while todo:
                y = todo.pop()
                for u in ops_x:
                    if u[y] not in seen:
                        seen.add(u[y])
                        todo.append(u[y])
            return len(seen)
        take(max(range(nx), key=lambda x: (orbit_size(x), -x)))
    for x in range(nx):
        if not placed[x]:
            take(x)
    return perm


def bset_axiom_failure(act, top):
    return kernels.bset_axiom_failure(act, top)


def class_labels(classes_of, n):
    """Normalise a relation to class-minimum labels; ``classes_of[x]`` is any label."""
    first = {}
    return [first.setdefault(classes_of[x], x) for x in range(n)]
