"""Translations between matched pairs and matched pairs of theories."""

from itertools import product

from ..bset import _subst, all_distributions, dirac
from ..certificate import Certificate
from ..clone.bicross import BicrossOp, bicross_build
from ..clone.core import boolean_from_clone
from ..clone.theory import MatchedTheoryData, extract_matched_theory, verify_matched_theory
from ..errors import InvariantViolation
from .bmset import glue_dist
from .pair import validate_matched_pair


def theta_to_clone(pair, max_arity=2):
    """Distributions over ``B`` as hyperaffines, with ``m*w = m* o w`` and
    ``w |> n`` the glueing of ``n`` along ``w`` in the B-set ``M``."""
    B, M = pair.algebra, pair.monoid
    st = pair.m_on_b.table
    X = pair.bset_on_m
    cache = {}

    def hyper(k):
        if k not in cache:
            cache[k] = all_distributions(B, k)
        return cache[k]

    def mstar(m, w):
        return tuple(st[m][v] for v in w)

    def rtri(w, ns):
        return glue_dist(X, w, list(ns))

    return MatchedTheoryData(hyper, lambda k, i: dirac(B, k, i), lambda h, ks: _subst(h, list(ks)), M,
                             mstar, rtri, max_arity, "theta")


def theta_certificate(pair, max_arity=2):
    """Matched-theory laws of the translated pair, the bicross theory axioms,
    and recovery of the data from the bicross clone by decomposition."""
    D = theta_to_clone(pair, max_arity)
    cert = Certificate("theta")
    cert.merge(verify_matched_theory(D, max_arity), "theory:")
    C, bc = bicross_build(D, max_arity)
    cert.merge(bc, "bicross:")
    cert.merge(recovery_certificate(D, C, max_arity), "recover:")
    return cert


def recovery_certificate(D, C, max_arity=2):
    """Compare ``D`` with the matched theory extracted from its bicross clone.

    Units of the bicross clone are listed in monoid order, so equality of
    tables is literal; hyperaffines correspond through ``h <-> dc(h, 1)``.
    """
    cert = Certificate("recovery")
    E = extract_matched_theory(C, max_arity)
    M = D.monoid
    e = M.identity
    cert.record("monoid-table", E.monoid.table == M.table and E.monoid.identity == e, ())
    for k in range(1, max_arity + 1):
        mine = [BicrossOp(k, h, e) for h in D.hyper(k)]
        cert.record("hyperaffines", set(E.hyper(k)) == set(mine), (k,))
        for h in D.hyper(k):
            op = BicrossOp(k, h, e)
            for m in M.elements():
                cert.record("mstar", E.mstar(m, op) == BicrossOp(k, D.mstar(m, h), e), lambda: (m, h))
            for ms in product(M.elements(), repeat=k):
                cert.record("rtri", E.rtri(op, ms) == D.rtri(h, ms), lambda: (h, ms))
    return cert


class _Fragment:
    """The hyperaffine part of a matched theory viewed as a clone."""

    def __init__(self, D):
        self.D = D

    def projection(self, k, i):
        return self.D.hproj(k, i)

    def substitute(self, t, us):
        return self.D.hsubst(t, tuple(us))

    def ops(self, k):
        return list(self.D.hyper(k))


def theta_from_clone(D):
    """``B`` = the binary hyperaffines, ``m*b`` and ``b(m, n) = b |> (m, n)``."""
    S = boolean_from_clone(_Fragment(D), list(D.hyper(2)))
    B, M = S.algebra, D.monoid
    act = [[[D.rtri(S.elem(b), (m, n)) for n in M.elements()] for m in M.elements()] for b in B.elements()]
    star = [[S.bits(D.mstar(m, S.elem(b))) for b in B.elements()] for m in M.elements()]
    P = validate_matched_pair(B, M, act, star)
    if any(D.rtri(D.hproj(2, 0), (m, n)) != m for m in M.elements() for n in M.elements()):
        raise InvariantViolation("pi_1 |> (m, n) differs from m")
    return P
