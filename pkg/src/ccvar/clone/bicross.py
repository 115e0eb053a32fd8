"""The bicrossed product of a matched pair of theories.

Ops of arity ``k`` are pairs ``dc(h, m)`` of a hyperaffine ``h`` of arity
``k`` and a monoid element ``m``, with

    dc(h, m)(dc(k, n)) = dc(h(i. m*k_i), h |> (i. m n_i)).
"""

from dataclasses import dataclass

from ..certificate import Certificate
from ..errors import RepresentationError
from .core import DEFAULT_MAX_ARITY, classify_op, theory_axioms


@dataclass(frozen=True)
class BicrossOp:
    arity: int
    h: object
    m: int

    def __repr__(self):
        return f"dc({self.h!r}, {self.m})"

    def to_json(self):
        h = self.h.to_json() if hasattr(self.h, "to_json") else list(self.h)
        return {"kind": "bicross-op", "arity": self.arity, "h": h, "m": self.m}


class BicrossClone:
    def __init__(self, D):
        self.D = D
        self.M = D.monoid
        self._ops = {}

    def projection(self, k, i):
        return BicrossOp(k, self.D.hproj(k, i), self.M.identity)

    def substitute(self, t, us):
        if len(us) != t.arity:
            raise RepresentationError(f"arity {t.arity} op given {len(us)} arguments")
        j = us[0].arity
        if any(u.arity != j for u in us):
            raise RepresentationError("arguments of different arities")
        D, mul = self.D, self.M.table
        h = D.hsubst(t.h, tuple(D.mstar(t.m, u.h) for u in us))
        m = D.rtri(t.h, tuple(mul[t.m][u.m] for u in us))
        return BicrossOp(j, h, m)

    def ops(self, k):
        if k not in self._ops:
            self._ops[k] = [BicrossOp(k, h, m) for h in self.D.hyper(k) for m in self.M.elements()]
        return self._ops[k]

    def unit_ops(self):
        return self.ops(1)

    def hyperaffine_op(self, h):
        return BicrossOp(self.D.arity(h), h, self.M.identity)

    def unary_op(self, m):
        return BicrossOp(1, self.D.hproj(1, 0), m)


def bicross_build(D, max_arity=DEFAULT_MAX_ARITY, certify=True):
    """Build the bicrossed-product clone; with ``certify`` also return its
    theory-axiom and classification certificate."""
    C = BicrossClone(D)
    if not certify:
        return C, None
    cert = theory_axioms(C, max_arity)
    cls = Certificate("bicross-classes")
    for k in range(1, max_arity + 1):
        for t in C.ops(k):
            c = classify_op(C, t, max(9, k * k))
            cls.record("hyperaffine-iff-unit-part", c.hyperaffine == (t.m == C.M.identity), lambda: (repr(t),))
        if k == 1:
            for t in C.ops(1):
                cls.record("arity-one-ops-are-unary", classify_op(C, t).unary, lambda: (repr(t),))
    cert.merge(cls)
    return C, cert
