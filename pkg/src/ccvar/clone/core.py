"""Algorithms that work in any finite clone fragment.

A clone object ``C`` provides ``projection(k, i)``, ``substitute(t, us)``,
``ops(k)`` and ``unit_ops()`` (the arity-1 operations); every op carries an
``arity`` attribute.  Indices of projections are 0-based.
"""

from dataclasses import dataclass
from itertools import product

import numpy as np

from ..balg import Partition, boolean_from_ifthenelse, validate_partition
from ..certificate import Certificate
from ..errors import CapacityError, DecompositionError, DegenerateError, RepresentationError

DEFAULT_MAX_ARITY = 3


def projections(C, k):
    return [C.projection(k, i) for i in range(k)]


def is_affine(C, t):
    x = C.projection(1, 0)
    return C.substitute(t, [x] * t.arity) == x


def is_hyperaffine(C, t, max_arity=9):
    k = t.arity
    if k * k > max_arity:
        raise CapacityError("hyperaffine test arity", k * k, max_arity)
    if not is_affine(C, t):
        return False
    p = projections(C, k * k)
    lhs = C.substitute(t, [C.substitute(t, [p[i * k + j] for j in range(k)]) for i in range(k)])
    rhs = C.substitute(t, [p[i * k + i] for i in range(k)])
    return lhs == rhs


def unary_part(C, t):
    """``t(x, ..., x)`` as an arity-1 op."""
    return C.substitute(t, [C.projection(1, 0)] * t.arity)


def unary_slot(C, t):
    """The slot ``i`` with ``t = m(pi_i)``, ``m`` unary, or ``None``."""
    m = unary_part(C, t)
    for i in range(t.arity):
        if C.substitute(m, [C.projection(t.arity, i)]) == t:
            return i
    return None


@dataclass(frozen=True)
class Classification:
    affine: bool
    hyperaffine: bool
    unary: bool


def classify_op(C, t, max_arity=9):
    aff = is_affine(C, t)
    hyp = aff and is_hyperaffine(C, t, max_arity)
    return Classification(aff, hyp, unary_slot(C, t) is not None)


def binary_reduct(C, t, U):
    """Substitute the first variable into the slots in ``U`` and the second elsewhere."""
    U = set(U)
    if not U <= set(range(t.arity)):
        raise RepresentationError(f"slots {sorted(U)} out of range for arity {t.arity}")
    p1, p2 = C.projection(2, 0), C.projection(2, 1)
    return C.substitute(t, [p1 if i in U else p2 for i in range(t.arity)])


def dc(C, h, m):
    """``h(lambda i. m(pi_i))``."""
    k = h.arity
    return C.substitute(h, [C.substitute(m, [C.projection(k, i)]) for i in range(k)])


class Decomposer:
    """Exhaustive hyperaffine-unary decomposition, cached per arity.

    For arity ``k`` every pair ``(h, m)`` with ``h`` hyperaffine of arity ``k``
    and ``m`` unary is substituted, and the results indexed by value.
    """

    def __init__(self, C, max_arity=DEFAULT_MAX_ARITY):
        self.C = C
        self.max_arity = max_arity
        self._tables = {}
        self._hyper = {}

    def hyperaffines(self, k):
        if k not in self._hyper:
            C = self.C
            if hasattr(C, "hyperaffine_candidates"):
                cands = C.hyperaffine_candidates(k)
            else:
                cands = C.ops(k)
            self._hyper[k] = [t for t in cands if is_hyperaffine(self.C, t, max(9, k * k))]
        return self._hyper[k]

    def table(self, k):
        if k > self.max_arity:
            raise CapacityError("decomposition arity", k, self.max_arity)
        if k not in self._tables:
            found = {}
            for h in self.hyperaffines(k):
                for m in self.C.unit_ops():
                    found.setdefault(dc(self.C, h, m), []).append((h, m))
            self._tables[k] = found
        return self._tables[k]

    def witnesses(self, t):
        return self.table(t.arity).get(t, [])

    def decompose(self, t):
        w = self.witnesses(t)
        if not w:
            raise DecompositionError("none", t)
        if len(w) > 1:
            raise DecompositionError("non-unique", t, w)
        return w[0]

    def certify(self, k):
        """Certificate that every op of arity ``k`` decomposes exactly once."""
        cert = Certificate(f"decompose-arity-{k}")
        tab = self.table(k)
        for t in self.C.ops(k):
            w = tab.get(t, [])
            cert.record("unique-decomposition", len(w) == 1, lambda: (repr(t), len(w)))
        return cert


def decompose(C, t, decomposer=None):
    d = decomposer or Decomposer(C, max(DEFAULT_MAX_ARITY, t.arity))
    return d.decompose(t)


# ---------------------------------------------------------------------------
# Boolean algebra of binary hyperaffines


def boolean_from_clone(C, hyper2=None):
    """Boolean structure on the hyperaffine binary ops, ``1 = pi_1``, ``0 = pi_2``."""
    one, zero = C.projection(2, 0), C.projection(2, 1)
    if one == zero:
        raise DegenerateError("pi_1 = pi_2 at arity 2")
    carrier = list(hyper2) if hyper2 is not None else [t for t in C.ops(2) if is_hyperaffine(C, t)]
    return boolean_from_ifthenelse(carrier, one, zero, lambda a, b, c: C.substitute(a, [b, c]))


def omega_map(C, BS, t):
    """``i |-> t^(i)`` encoded in the extracted algebra ``BS``."""
    return tuple(BS.bits(binary_reduct(C, t, {i})) for i in range(t.arity))


def canonical_realiser(C, BS, P):
    """The hyperaffine ``h`` of arity ``|P|`` whose ``i``-th binary reduct is part ``i``."""
    B = BS.algebra
    if not isinstance(P, Partition):
        P = validate_partition(B, B.top, P)
    else:
        validate_partition(B, P.base, P.parts)
    if P.base != B.top:
        raise RepresentationError("a realiser needs a partition of 1")
    return _realise(C, BS, list(P.parts))


def _realise(C, BS, parts):
    n = len(parts)
    if n == 1:
        return C.projection(1, 0)
    rest = _realise(C, BS, [parts[0] | parts[1]] + parts[2:])
    p = projections(C, n)
    inner = C.substitute(rest, p[1:])
    return C.substitute(BS.elem(parts[0]), [p[0], inner])


# ---------------------------------------------------------------------------
# certificates


def theory_axioms(C, max_arity, ops=None):
    """Unit, projection and associativity laws for all arities up to ``max_arity``.

    Builds integer substitution tables and checks associativity with numpy.
    """
    ops = ops or {k: list(C.ops(k)) for k in range(1, max_arity + 1)}
    idx = {k: {t: i for i, t in enumerate(v)} for k, v in ops.items()}
    cert = Certificate("theory")
    S = {}
    for k in ops:
        for j in ops:
            shape = (len(ops[k]),) + (len(ops[j]),) * k
            if np.prod(shape, dtype=np.int64) > 5_000_000:
                raise CapacityError("substitution table size", int(np.prod(shape, dtype=np.int64)), 5_000_000)
            arr = np.empty(shape, dtype=np.int32)
            for t_i, t in enumerate(ops[k]):
                for us in product(range(len(ops[j])), repeat=k):
                    v = C.substitute(t, [ops[j][u] for u in us])
                    if v not in idx[j]:
                        raise RepresentationError(f"substitution leaves the materialised ops at arity {j}")
                    arr[(t_i,) + us] = idx[j][v]
            S[k, j] = arr
    for k in ops:
        p = [idx[k][C.projection(k, i)] for i in range(k)]
        unit = S[k, k][(slice(None),) + tuple(p)]
        bad = np.nonzero(unit != np.arange(len(ops[k])))[0]
        cert.tally("t(pi)=t", len(ops[k]), [(k, repr(ops[k][b])) for b in bad])
        for j in ops:
            for i in range(k):
                pi = idx[k][C.projection(k, i)]
                sub = S[k, j][pi]
                grids = np.indices(sub.shape)
                bad = np.argwhere(sub != grids[i])
                cert.tally("pi_i(u)=u_i", sub.size, [(k, j, i, tuple(b)) for b in bad[:5]])
    for k in ops:
        for j in ops:
            for l in ops:
                _assoc(cert, S, k, j, l, len(ops[k]), len(ops[j]), len(ops[l]))
    return cert


def _assoc(cert, S, k, j, l, nk, nj, nl, limit=50_000_000):
    size = nk * nj ** k * nl ** j
    if size > limit:
        raise CapacityError("associativity instances", size, limit)
    # lhs[t, u_1..u_k, v_1..v_j] = S[j,l][S[k,j][t,u], v]
    tu = S[k, j].reshape(nk, -1)                       # (nk, nj^k)
    vflat = np.indices((nl,) * j).reshape(j, -1)       # (j, nl^j)
    Sjl = S[j, l].reshape(nj, -1)                      # (nj, nl^j)
    vcode = np.ravel_multi_index(tuple(vflat), (nl,) * j)
    lhs = Sjl[tu][:, :, vcode]                         # (nk, nj^k, nl^j)
    ucodes = np.indices((nj,) * k).reshape(k, -1)      # (k, nj^k)
    inner = Sjl[ucodes][:, :, vcode]                   # (k, nj^k, nl^j)
    code = np.ravel_multi_index(tuple(inner), (nl,) * k)   # (nj^k, nl^j)
    Skl = S[k, l].reshape(nk, -1)
    rhs = Skl[:, code]
    bad = np.argwhere(lhs != rhs)
    cert.tally("t(u)(v)=t(u(v))", lhs.size, [(k, j, l) + tuple(int(v) for v in b) for b in bad[:5]])


def commutation(C, hyper, max_arity=2):
    """Hyperaffines commute: ``t(i. u(j. x_ij)) = u(j. t(i. x_ij))``."""
    cert = Certificate("commutation")
    for k in range(1, max_arity + 1):
        for l in range(1, max_arity + 1):
            p = projections(C, k * l)
            for t in hyper[k]:
                for u in hyper[l]:
                    lhs = C.substitute(t, [C.substitute(u, [p[i * l + j] for j in range(l)]) for i in range(k)])
                    rhs = C.substitute(u, [C.substitute(t, [p[i * l + j] for i in range(k)]) for j in range(l)])
                    cert.record("hyperaffines-commute", lhs == rhs, lambda: (repr(t), repr(u)))
    return cert


def substitution_closure(C, hyper, max_arity=3):
    """The hyperaffine ops are closed under substitution (within the bound)."""
    cert = Certificate("hyperaffine-subtheory")
    sets = {k: set(v) for k, v in hyper.items()}
    for k in range(1, max_arity + 1):
        for j in range(1, max_arity + 1):
            for i in range(k):
                cert.record("projections-hyperaffine", C.projection(k, i) in sets[k], (k, i))
            for t in hyper[k]:
                for us in product(hyper[j], repeat=k):
                    v = C.substitute(t, list(us))
                    cert.record("closed-under-substitution", v in sets[j], lambda: (repr(t), [repr(u) for u in us]))
    return cert
