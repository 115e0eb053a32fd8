"""Matched pairs of theories: a hyperaffine fragment, a monoid, and their
actions ``m*h`` and ``h |> n`` on each other."""

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Callable

from ..certificate import Certificate
from ..errors import InvariantViolation
from ..mon import Monoid, validate_monoid
from .core import DEFAULT_MAX_ARITY, Decomposer

LAWS = (
    "m*pi_i=pi_i",
    "m*(h(k))=(m*h)(m*k)",
    "1*h=h",
    "m*(n*h)=(mn)*h",
    "pi_i|>m=m_i",
    "h(k)|>m=h|>(k|>m)",
    "(h|>m)n=h|>(m n)",
    "n(h|>m)=(n*h)|>(n m)",
    "(k|>m)*h=k(m*h)",
)


@dataclass
class MatchedTheoryData:
    hyper: Callable          # k -> list of hyperaffine ops of arity k
    hproj: Callable          # (k, i) -> projection
    hsubst: Callable         # (h, ks) -> h(ks)
    monoid: Monoid
    mstar: Callable          # (m, h) -> m*h
    rtri: Callable           # (h, ms) -> h |> ms
    max_arity: int = DEFAULT_MAX_ARITY
    name: str = ""
    units: list = field(default_factory=list, repr=False)

    def arity(self, h):
        return getattr(h, "arity", None) or len(h)


def extract_matched_theory(C, max_arity=DEFAULT_MAX_ARITY, decomposer=None, certify=True):
    """Hyperaffine part, unary monoid and mutual actions of a clone.

    ``m*h`` is the hyperaffine part of the decomposition of ``m(h)``; its unary
    part must be ``m``.  ``h |> n`` is the substitution ``h(n)``.
    """
    d = decomposer or Decomposer(C, max_arity)
    if certify:
        for k in range(1, max_arity + 1):
            cert = d.certify(k)
            if not cert.passed:
                d.decompose(next(t for t in C.ops(k) if len(d.witnesses(t)) != 1))
    units = list(C.unit_ops())
    uidx = {u: i for i, u in enumerate(units)}
    table = [[uidx[C.substitute(a, [b])] for b in units] for a in units]
    M = validate_monoid(table, uidx[C.projection(1, 0)])

    @lru_cache(maxsize=None)
    def mstar(m, h):
        hh, mm = d.decompose(C.substitute(units[m], [h]))
        if mm != units[m]:
            raise InvariantViolation(f"unary part of m(h) is {mm!r}, expected {units[m]!r}")
        return hh

    @lru_cache(maxsize=None)
    def rtri(h, ms):
        return uidx[C.substitute(h, [units[n] for n in ms])]

    return MatchedTheoryData(d.hyperaffines, C.projection, lambda h, ks: C.substitute(h, list(ks)), M,
                             mstar, lambda h, ms: rtri(h, tuple(ms)), max_arity, "extracted", units)


def verify_matched_theory(D, max_arity=None):
    """Exhaustive certificate of the nine matched-pair laws up to ``max_arity``."""
    A = max_arity or D.max_arity
    M = D.monoid
    mul = M.table
    e = M.identity
    elems = list(M.elements())
    H = {k: list(D.hyper(k)) for k in range(1, A + 1)}
    P = {k: [D.hproj(k, i) for i in range(k)] for k in H}
    cert = Certificate(D.name or "matched-theory")
    rec = cert.record
    for I in H:
        for m in elems:
            for i in range(I):
                rec(LAWS[0], D.mstar(m, P[I][i]) == P[I][i], lambda: (m, I, i))
        for h in H[I]:
            rec(LAWS[2], D.mstar(e, h) == h, lambda: (repr(h),))
            for m in elems:
                for n in elems:
                    rec(LAWS[3], D.mstar(m, D.mstar(n, h)) == D.mstar(mul[m][n], h), lambda: (m, n, repr(h)))
        for i in range(I):
            for ms in product(elems, repeat=I):
                rec(LAWS[4], D.rtri(P[I][i], ms) == ms[i], lambda: (I, i, ms))
        for h in H[I]:
            for ms in product(elems, repeat=I):
                r = D.rtri(h, ms)
                for n in elems:
                    rec(LAWS[6], mul[r][n] == D.rtri(h, tuple(mul[x][n] for x in ms)), lambda: (repr(h), ms, n))
                    rec(LAWS[7], mul[n][r] == D.rtri(D.mstar(n, h), tuple(mul[n][x] for x in ms)),
                        lambda: (repr(h), ms, n))
        for J in H:
            for h in H[I]:
                for ks in product(H[J], repeat=I):
                    hk = D.hsubst(h, ks)
                    for m in elems:
                        lhs = D.mstar(m, hk)
                        rhs = D.hsubst(D.mstar(m, h), tuple(D.mstar(m, k) for k in ks))
                        rec(LAWS[1], lhs == rhs, lambda: (m, repr(h), [repr(k) for k in ks]))
                    for ms in product(elems, repeat=J):
                        lhs = D.rtri(hk, ms)
                        rhs = D.rtri(h, tuple(D.rtri(k, ms) for k in ks))
                        rec(LAWS[5], lhs == rhs, lambda: (repr(h), [repr(k) for k in ks], ms))
            # (k |> m)*h = k(lambda j. m_j* h) with k of arity J and h of arity I
            for k in H[J]:
                for ms in product(elems, repeat=J):
                    r = D.rtri(k, ms)
                    for h in H[I]:
                        lhs = D.mstar(r, h)
                        rhs = D.hsubst(k, tuple(D.mstar(x, h) for x in ms))
                        rec(LAWS[8], lhs == rhs, lambda: (repr(k), ms, repr(h)))
    return cert
