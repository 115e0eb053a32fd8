"""Brute-force oracles: filter every table ``f: X -> Y`` by direct equations.

These are deliberately naive; they exist to cross-check the search kernels.
"""

from functools import lru_cache
from itertools import product

import numpy as np

from .errors import AxiomError, CapacityError

NAIVE_LIMIT = 10 ** 6


@lru_cache(maxsize=8)
def _columns(nx, ny):
    r = np.arange(ny ** nx, dtype=np.int64)
    return tuple(((r // ny ** (nx - 1 - i)) % ny).astype(np.uint8) for i in range(nx))


def all_tables(nx, ny, limit=NAIVE_LIMIT):
    """Every map ``range(nx) -> range(ny)`` as rows of an array, in lex order."""
    count = ny ** nx
    if count > limit:
        raise CapacityError("naive table space", count, limit)
    if nx == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.stack(_columns(nx, ny), axis=1).astype(np.int64)


def naive_filter(nx, ny, unary=(), binary=(), limit=NAIVE_LIMIT):
    """Maps with ``f(a[x]) = b[f(x)]`` for each ``(a, b)`` in ``unary`` and
    ``f(s[x][y]) = t[f(x)][f(y)]`` for each ``(s, t)`` in ``binary``."""
    count = ny ** nx
    if count > limit:
        raise CapacityError("naive table space", count, limit)
    if nx == 0:
        return [()]
    cols = list(_columns(nx, ny))
    keep = np.ones(count, dtype=bool)

    def tests():
        for a, b in unary:
            b = np.asarray(b, dtype=np.uint8)
            for x in range(nx):
                yield lambda c, a=a, b=b, x=x: c[a[x]] == b[c[x]]
        for s, t in binary:
            t = np.asarray(t, dtype=np.uint8)
            for x, y in product(range(nx), repeat=2):
                yield lambda c, s=s, t=t, x=x, y=y: c[s[x][y]] == t[c[x], c[y]]

    for test in tests():
        keep &= test(cols)
        # compact once most rows are gone
        if keep.size > 1024 and np.count_nonzero(keep) * 4 < keep.size:
            cols = [c[keep] for c in cols]
            keep = np.ones(len(cols[0]), dtype=bool)
    rows = np.stack([c[keep] for c in cols], axis=1)
    return [tuple(int(v) for v in row) for row in rows]


def naive_bset_homs(X, Y, limit=NAIVE_LIMIT):
    return naive_filter(X.carrier, Y.carrier, (),
                        [(X.action[b], Y.action[b]) for b in X.algebra.elements()], limit)


def naive_bm_homs(X, Y, limit=NAIVE_LIMIT):
    M = X.pair.monoid
    return naive_filter(X.carrier, Y.carrier,
                        [(X.maction.table[m], Y.maction.table[m]) for m in M.elements()],
                        [(X.bset.action[b], Y.bset.action[b]) for b in X.pair.algebra.elements()], limit)


def naive_maction_homs(X, Y, limit=NAIVE_LIMIT):
    return naive_filter(X.carrier, Y.carrier,
                        [(X.table[m], Y.table[m]) for m in X.monoid.elements()], (), limit)


def naive_bsets(B, n):
    """All B-set tables on ``n`` points found by choosing a set partition for
    every element and keeping the families that pass the relation axioms."""
    from .bset import EqFamily, _first_eq_failure, action_from_eqs, set_partitions
    parts = set_partitions(n)
    discrete, total = tuple(range(n)), (0,) * n
    inner = [b for b in B.elements() if b not in (0, B.top)]
    out = []
    for choice in product(parts, repeat=len(inner)):
        rel = [None] * B.size
        rel[0], rel[B.top] = total, discrete
        for b, p in zip(inner, choice):
            rel[b] = p
        E = EqFamily(B, n, tuple(rel))
        if _first_eq_failure(E) is None:
            try:
                out.append(action_from_eqs(E))
            except AxiomError:
                pass
    return out


def naive_boolean_homs(B, C):
    """Element tables ``B -> C`` preserving 0, 1, meet and negation."""
    out = []
    for t in product(range(C.size), repeat=B.size):
        if t[0] != 0 or t[B.top] != C.top:
            continue
        if any(t[a & b] != t[a] & t[b] or t[B.top ^ a] != C.top ^ t[a] for a in B.elements() for b in B.elements()):
            continue
        out.append(t)
    return out
