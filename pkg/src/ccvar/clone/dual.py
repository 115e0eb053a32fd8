"""The clone of dual operations of a finite set.

An op of arity ``k`` on ``X`` is a map ``X -> k x X``, stored in pair form
``(h, m)``: ``x |-> (h[x], m[x])``.  Substitution follows the op and then the
chosen component: ``t(u)(x) = u[h(x)](m(x))``.
"""

from dataclasses import dataclass
from itertools import product

from ..certificate import Certificate
from ..errors import CapacityError, DegenerateError, RepresentationError

MAX_BASE = 4


@dataclass(frozen=True)
class DualOp:
    arity: int
    h: tuple
    m: tuple

    @property
    def pairs(self):
        return tuple(zip(self.h, self.m))

    def __repr__(self):
        return f"DualOp({self.arity}, {list(self.pairs)})"

    def to_json(self):
        return {"kind": "dual-op", "base": len(self.h), "arity": self.arity,
                "map": [[t, e] for t, e in self.pairs]}


def dual_op_from_map(base, arity, pairs):
    pairs = [tuple(p) for p in pairs]
    if len(pairs) != base:
        raise RepresentationError(f"map has {len(pairs)} entries, base has {base}")
    for x, (t, e) in enumerate(pairs):
        if not 0 <= t < arity or not 0 <= e < base:
            raise RepresentationError(f"entry {x} = {(t, e)} out of range")
    return DualOp(arity, tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))


class DualClone:
    def __init__(self, n, max_arity=3, max_ops=1 << 20):
        if n < 1:
            raise DegenerateError("the empty set has a degenerate dual clone")
        if n > MAX_BASE:
            raise CapacityError("dual clone base size", n, MAX_BASE)
        self.n = n
        self.max_arity = max_arity
        self.max_ops = max_ops
        self.ident = tuple(range(n))
        self._ops = {}

    def projection(self, k, i):
        if not 0 <= i < k:
            raise RepresentationError(f"projection {i} of arity {k}")
        return DualOp(k, (i,) * self.n, self.ident)

    def substitute(self, t, us):
        if len(us) != t.arity:
            raise RepresentationError(f"arity {t.arity} op given {len(us)} arguments")
        j = us[0].arity
        if any(u.arity != j for u in us):
            raise RepresentationError("arguments of different arities")
        h, m = [], []
        for x in range(self.n):
            u = us[t.h[x]]
            y = t.m[x]
            h.append(u.h[y])
            m.append(u.m[y])
        return DualOp(j, tuple(h), tuple(m))

    def ops(self, k):
        count = (k * self.n) ** self.n
        if count > self.max_ops:
            raise CapacityError("dual clone ops", count, self.max_ops)
        if k not in self._ops:
            self._ops[k] = [DualOp(k, h, m) for h in product(range(k), repeat=self.n)
                            for m in product(range(self.n), repeat=self.n)]
        return self._ops[k]

    def unit_ops(self):
        return self.ops(1)

    def unary(self, m):
        return DualOp(1, (0,) * self.n, tuple(m))

    def hyper(self, h):
        return DualOp(max(h) + 1 if h else 1, tuple(h), self.ident)

    def pair_split(self, t):
        """Analytic decomposition ``(h, id)``, ``m``: the cross-check oracle."""
        return DualOp(t.arity, t.h, self.ident), self.unary(t.m)

    # -- the model on maps X -> Y ------------------------------------------

    def interpret(self, t, fs):
        """``[[t]](f) = x |-> f[h(x)](m(x))`` for maps ``f_i: X -> Y``."""
        return tuple(fs[t.h[x]][t.m[x]] for x in range(self.n))

    def check_model(self, ny, max_arity=2):
        """Model laws of the maps ``X -> Y`` (``|Y| = ny``)."""
        cert = Certificate(f"model C({self.n},{ny})")
        maps = list(product(range(ny), repeat=self.n))
        for k in range(1, max_arity + 1):
            for i in range(k):
                p = self.projection(k, i)
                for fs in product(maps, repeat=k):
                    cert.record("[[pi_i]](f)=f_i", self.interpret(p, fs) == fs[i], (k, i, fs))
            for j in range(1, max_arity + 1):
                for t in self.ops(k):
                    for us in product(self.ops(j), repeat=k):
                        tu = self.substitute(t, list(us))
                        for fs in product(maps, repeat=j):
                            lhs = self.interpret(tu, fs)
                            rhs = self.interpret(t, [self.interpret(u, fs) for u in us])
                            cert.record("[[t(u)]]=[[t]]([[u]])", lhs == rhs, lambda: (repr(t), [repr(u) for u in us], fs))
        return cert
