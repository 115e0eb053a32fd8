"""Exhaustive enumeration of small matched pairs and BM-sets."""

from itertools import product

from ..balg import BooleanAlgebra, enumerate_boolean_homs
from ..bset import enumerate_bsets
from ..errors import CapacityError
from ..mon import MAction, enumerate_monoids, generators
from .bmset import BMSet, bmset_ok
from .pair import MatchedPair, matched_pair_certificate


def _actions_by_generators(M, gen_candidates, carrier):
    """Left actions of ``M`` on ``carrier`` points determined by generator tables."""
    gens, words = generators(M)
    out = []
    for imgs in product(*[gen_candidates[g] for g in gens]):
        img = dict(zip(gens, imgs))
        table = [None] * M.size
        for a, w in words.items():
            row = list(range(carrier))
            for g in reversed(w):
                row = [img[g][x] for x in row]
            table[a] = tuple(row)
        # the words fix every element; check the action law on all pairs
        if all(table[M.table[a][b]] == tuple(table[a][x] for x in table[b])
               for a in M.elements() for b in M.elements()):
            out.append(MAction(M, carrier, tuple(table)))
    return out


def enumerate_matched_pairs(max_atoms=2, max_monoid=3):
    """Every matched pair with ``atoms <= max_atoms`` and ``|M| <= max_monoid``.

    Monoids are taken up to isomorphism; for each, all B-sets on ``M`` and
    all actions of ``M`` on ``B`` by Boolean homs are filtered by the laws.
    """
    if max_monoid > 4:
        raise CapacityError("monoid enumeration size", max_monoid, 4)
    found = []
    for k in range(1, max_atoms + 1):
        B = BooleanAlgebra(k)
        homs = [h.table for h in enumerate_boolean_homs(B, B)]
        for n in range(1, max_monoid + 1):
            for M in enumerate_monoids(n):
                gens, _ = generators(M)
                actions = _actions_by_generators(M, {g: homs for g in gens}, B.size)
                for X in enumerate_bsets(B, n):
                    for A in actions:
                        if matched_pair_certificate(B, M, X, A).passed:
                            found.append(MatchedPair(B, M, X, A))
    return found


def enumerate_bmsets(pair, n):
    """Every BM-set over ``pair`` on ``n`` points (labelled)."""
    B, M = pair.algebra, pair.monoid
    if n ** n > 1 << 16:
        raise CapacityError("BM-set enumeration carrier", n, 5)
    gens, _ = generators(M)
    st = pair.m_on_b.table
    maps = list(product(range(n), repeat=n))
    out = []
    for X in enumerate_bsets(B, n):
        L = X.labels
        cands = {}
        for g in gens:
            # x ~_b y  =>  g.x ~_(g*b) g.y
            cands[g] = [f for f in maps
                        if all(L[st[g][b]][f[x]] == L[st[g][b]][f[L[b][x]]] for b in B.elements() for x in range(n))]
        for A in _actions_by_generators(M, cands, n):
            if bmset_ok(pair, X, A):
                out.append(BMSet(pair, n, X, A))
    return out

