"""Sets with compatible B-set and M-set structure over a matched pair."""

from dataclasses import dataclass, field
from itertools import product

from .. import _backend
from ..bset import (BSet, all_distributions, bset_law_holds, bset_product, conditioned_disjunction,
                    dirac, free_bset, terminal_bset, validate_bset)
from ..certificate import Certificate
from ..errors import AxiomError, CapacityError, InvariantViolation, RepresentationError
from ..mon import MAction, regular_action, validate_maction

BM_LAWS = ("b(m,n).x=b(m.x,n.x)", "m.b(x,y)=(m*b)(m.x,m.y)")
BM_FORMS = ("m~_b n=>m.x~_b n.x", "x~_b y=>m.x~_(m*b) m.y")

MAX_FREE = 4096


@dataclass(frozen=True, eq=False)
class BMSet:
    pair: object
    carrier: int
    bset: BSet
    maction: MAction

    def act(self, m, x):
        return self.maction.table[m][x]

    def key(self):
        return (self.carrier, self.bset.action, self.maction.table)

    def __eq__(self, other):
        return isinstance(other, BMSet) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def to_json(self):
        return {"kind": "bmset", "pair": self.pair.to_json(), "carrier": self.carrier,
                "bset": [[list(r) for r in t] for t in self.bset.action],
                "maction": [list(r) for r in self.maction.table]}


def bmset_certificate(pair, X, A):
    cert = Certificate("bmset")
    B, M = pair.algebra, pair.monoid
    act, ma, st, mb = X.action, A.table, pair.m_on_b.table, pair.bset_on_m.action
    n = X.carrier
    for b in B.elements():
        for m, k in product(M.elements(), repeat=2):
            bmk = mb[b][m][k]
            for x in range(n):
                cert.record(BM_LAWS[0], ma[bmk][x] == act[b][ma[m][x]][ma[k][x]], lambda: (b, m, k, x))
        for m in M.elements():
            mbs = st[m][b]
            for x, y in product(range(n), repeat=2):
                cert.record(BM_LAWS[1], ma[m][act[b][x][y]] == act[mbs][ma[m][x]][ma[m][y]], lambda: (b, m, x, y))
    L, LM = X.labels, pair.bset_on_m.labels
    for b in B.elements():
        for m, k in product(M.elements(), repeat=2):
            if LM[b][m] == LM[b][k]:
                for x in range(n):
                    cert.record(BM_FORMS[0], L[b][ma[m][x]] == L[b][ma[k][x]], lambda: (b, m, k, x))
        for m in M.elements():
            lm = L[st[m][b]]
            for x, y in product(range(n), repeat=2):
                if L[b][x] == L[b][y]:
                    cert.record(BM_FORMS[1], lm[ma[m][x]] == lm[ma[m][y]], lambda: (b, m, x, y))
    eq_ok = all(cert.check(t).passed for t in BM_LAWS)
    rel_ok = all(cert.check(t).passed for t in BM_FORMS)
    if eq_ok != rel_ok:
        raise InvariantViolation("equational and relational forms of the compatibility laws disagree")
    return cert


def bmset_ok(pair, X, A):
    """Fast relational test of compatibility, used for bulk filtering."""
    B, M = pair.algebra, pair.monoid
    ma, st = A.table, pair.m_on_b.table
    L, LM = X.labels, pair.bset_on_m.labels
    n = X.carrier
    for b in B.elements():
        lb = L[b]
        for m in M.elements():
            row = ma[m]
            lm = L[st[m][b]]
            for x in range(n):
                if lb[x] != x and lm[row[x]] != lm[row[lb[x]]]:
                    return False
            for k in range(m + 1, M.size):
                if LM[b][m] == LM[b][k]:
                    rk = ma[k]
                    for x in range(n):
                        if lb[row[x]] != lb[rk[x]]:
                            return False
    return True


def validate_bmset(pair, bset, maction):
    B, M = pair.algebra, pair.monoid
    if not isinstance(bset, BSet):
        bset = validate_bset(B, bset)
    if not isinstance(maction, MAction):
        maction = validate_maction(M, maction, bset.carrier)
    if bset.carrier != maction.carrier:
        raise RepresentationError("B-set and M-set carriers differ")
    cert = bmset_certificate(pair, bset, maction)
    for c in cert.checks:
        if not c.passed:
            raise AxiomError(c.tag, c.witnesses[0] if c.witnesses else ())
    return BMSet(pair, bset.carrier, bset, maction)


def m_as_bmset(pair):
    """``M`` over itself: the given B-set structure and left multiplication."""
    return BMSet(pair, pair.monoid.size, pair.bset_on_m, regular_action(pair.monoid))


def b_as_bmset(pair):
    """``B`` under conditioned disjunction and ``m*``."""
    return BMSet(pair, pair.algebra.size, conditioned_disjunction(pair.algebra), pair.m_on_b)


def terminal_bmset(pair):
    M = pair.monoid
    return BMSet(pair, 1, terminal_bset(pair.algebra), MAction(M, 1, tuple((0,) for _ in M.elements())))


def bm_product(X, Y):
    """Componentwise structure; ``(x, y)`` has index ``x*|Y| + y``."""
    ny = Y.carrier
    M = X.pair.monoid
    t = tuple(tuple(X.maction.table[m][x] * ny + Y.maction.table[m][y] for x in range(X.carrier) for y in range(ny))
              for m in M.elements())
    return BMSet(X.pair, X.carrier * ny, bset_product(X.bset, Y.bset), MAction(M, X.carrier * ny, t))


def enumerate_bm_homs(X, Y, allowed=None, limit=-1):
    """All maps preserving every ``~_b`` and the M-action (sorted tables)."""
    if X.pair is not Y.pair and X.pair != Y.pair:
        raise RepresentationError("BM-sets over different matched pairs")
    M = X.pair.monoid
    return _backend.search_homs(X.carrier, Y.carrier, X.bset.labels, Y.bset.labels,
                                [X.maction.table[m] for m in M.elements()],
                                [Y.maction.table[m] for m in M.elements()], allowed, limit, order="auto")


def is_bm_hom(X, Y, f):
    """Direct test by action preservation."""
    for m in X.pair.monoid.elements():
        a, b = X.maction.table[m], Y.maction.table[m]
        if any(f[a[x]] != b[f[x]] for x in range(X.carrier)):
            return False
    for bb in X.pair.algebra.elements():
        ax, ay = X.bset.action[bb], Y.bset.action[bb]
        for x, y in product(range(X.carrier), repeat=2):
            if f[ax[x][y]] != ay[f[x]][f[y]]:
                return False
    return True


def fixed_points(X):
    return [x for x in range(X.carrier) if all(X.maction.table[m][x] == x for m in X.pair.monoid.elements())]


# ---------------------------------------------------------------------------
# free objects


@dataclass(eq=False)
class FreeBMSet:
    bmset: BMSet
    dists: list
    unit: list
    index: dict = field(repr=False, default_factory=dict)

    def point(self, m, omega):
        return self.index[m, tuple(omega)]

    def extensions(self, Y, images, limit=-1):
        """Homs to ``Y`` sending generator ``i`` to ``images[i]``."""
        allowed = [list(range(Y.carrier)) for _ in range(self.bmset.carrier)]
        for u, y in zip(self.unit, images):
            allowed[u] = [y]
        return enumerate_bm_homs(self.bmset, Y, allowed, limit)

    def verify_free(self, targets):
        cert = Certificate("free-bmset")
        for t, Y in enumerate(targets):
            for g in product(range(Y.carrier), repeat=len(self.unit)):
                ext = self.extensions(Y, g, limit=2)
                cert.record("unique-extension", len(ext) == 1, (t, g, len(ext)))
        return cert


def free_bmset(pair, generators):
    """``M x T_B(X)`` with ``n.(m, w) = (nm, n* o w)``; unit ``x |-> (1, pi_x)``."""
    size = generators if isinstance(generators, int) else len(generators)
    if size < 1:
        raise RepresentationError("need at least one generator")
    B, M = pair.algebra, pair.monoid
    if M.size * size ** B.atoms > MAX_FREE:
        raise CapacityError("free BM-set carrier", M.size * size ** B.atoms, MAX_FREE)
    dists = all_distributions(B, size)
    nd = len(dists)
    didx = {w: i for i, w in enumerate(dists)}
    index = {(m, w): m * nd + i for m in M.elements() for i, w in enumerate(dists)}
    st = pair.m_on_b.table
    X = bset_product(pair.bset_on_m, free_bset(B, size).bset)
    mt = tuple(tuple(M.table[n][m] * nd + didx[tuple(st[n][v] for v in w)] for m in M.elements() for w in dists)
               for n in M.elements())
    Xbm = BMSet(pair, M.size * nd, X, MAction(M, M.size * nd, mt))
    unit = [index[M.identity, dirac(B, size, i)] for i in range(size)]
    return FreeBMSet(Xbm, dists, unit, index)


def copower_of_terminal(pair, size):
    """``T_B(size)`` with ``n.w = n* o w``: the coproduct of ``size`` terminals.

    Returns the BM-set and the coprojection points ``pi_i``.
    """
    B, M = pair.algebra, pair.monoid
    dists = all_distributions(B, size)
    didx = {w: i for i, w in enumerate(dists)}
    st = pair.m_on_b.table
    X = free_bset(B, size).bset
    mt = tuple(tuple(didx[tuple(st[n][v] for v in w)] for w in dists) for n in M.elements())
    Xbm = BMSet(pair, len(dists), X, MAction(M, len(dists), mt))
    return Xbm, dists, [didx[dirac(B, size, i)] for i in range(size)]


# ---------------------------------------------------------------------------
# interpretation of distributions and bicross operations


def glue_dist(X, omega, xs):
    """``[[omega]](xs)``: the unique ``z`` with ``z ~_omega(i) xs[i]`` on the support."""
    from ..bset import _glue_raw
    parts = [w for w in omega if w]
    vals = [x for w, x in zip(omega, xs) if w]
    return _glue_raw(X, parts, vals)


def interpret_bicross(Xbm, op, xs):
    """``[[dc(h, m)]](x) = [[h]](i. m.x_i)``."""
    ma = Xbm.maction.table[op.m]
    return glue_dist(Xbm.bset, op.h, [ma[x] for x in xs])


def bicross_model_certificate(Xbm, C, max_arity=2):
    """Model laws for the interpretation of the bicross clone ``C`` on ``Xbm``,
    plus the two mixed laws relating ``|>`` and ``*`` to the interpretation."""
    cert = Certificate("bicross-model")
    n = Xbm.carrier
    D = C.D
    for k in range(1, max_arity + 1):
        for i in range(k):
            p = C.projection(k, i)
            for xs in product(range(n), repeat=k):
                cert.record("[[pi_i]](x)=x_i", interpret_bicross(Xbm, p, xs) == xs[i], lambda: (k, i, xs))
        for j in range(1, max_arity + 1):
            for t in C.ops(k):
                for us in product(C.ops(j), repeat=k):
                    tu = C.substitute(t, list(us))
                    for xs in product(range(n), repeat=j):
                        lhs = interpret_bicross(Xbm, tu, xs)
                        rhs = interpret_bicross(Xbm, t, [interpret_bicross(Xbm, u, xs) for u in us])
                        cert.record("[[t(u)]]=[[t]]([[u]])", lhs == rhs, lambda: (repr(t), [repr(u) for u in us], xs))
        for h in D.hyper(k):
            for ms in product(Xbm.pair.monoid.elements(), repeat=k):
                r = D.rtri(h, ms)
                for x in range(n):
                    lhs = Xbm.maction.table[r][x]
                    rhs = glue_dist(Xbm.bset, h, [Xbm.maction.table[m][x] for m in ms])
                    cert.record("(h|>m).x=[[h]](m_i.x)", lhs == rhs, lambda: (h, ms, x))
            for nn in Xbm.pair.monoid.elements():
                nh = D.mstar(nn, h)
                for xs in product(range(n), repeat=k):
                    lhs = Xbm.maction.table[nn][glue_dist(Xbm.bset, h, xs)]
                    rhs = glue_dist(Xbm.bset, nh, [Xbm.maction.table[nn][x] for x in xs])
                    cert.record("n.[[h]](x)=[[n*h]](n.x)", lhs == rhs, lambda: (h, nn, xs))
    return cert


def bmset_from_bicross_model(pair, C, n, interp):
    """Read B-set and M-set structure back off a model of the bicross clone:
    ``b(x,y) = [[dc(b,1)]](x,y)`` and ``m.x = [[dc(pi_1, m)]](x)``."""
    B, M = pair.algebra, pair.monoid
    act = [[[interp(C.hyperaffine_op(_dist2(B, b)), (x, y)) for y in range(n)] for x in range(n)]
           for b in B.elements()]
    ma = [[interp(C.unary_op(m), (x,)) for x in range(n)] for m in M.elements()]
    return validate_bmset(pair, act, ma)


def _dist2(B, b):
    return (b, B.top ^ b)


def replay_bset_witness(X, axiom, witness):
    return bset_law_holds(X.algebra, X.action, axiom, witness)
