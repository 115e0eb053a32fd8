"""Matched pairs: a Boolean algebra ``B`` and a monoid ``M`` acting on each other.

``M`` acts on ``B`` by Boolean homomorphisms ``b |-> m*b`` and ``B`` acts on
``M`` as a B-set ``b(m, n)``.
"""

from dataclasses import dataclass
from itertools import permutations, product

from ..balg import BooleanAlgebra, BoolHom, validate_bool_hom
from ..bset import BSet, conditioned_disjunction, validate_bset
from ..certificate import Certificate
from ..errors import AxiomError, DegenerateError, InvariantViolation, RepresentationError
from ..mon import MAction, Monoid, endofunction_monoid, generators, validate_maction

PAIR_LAWS = ("m*-boolean-hom", "b(m,n)p=b(mp,np)", "m(b(n,p))=(m*b)(mn,mp)", "b(m,n)*c=b(m*c,n*c)")
PAIR_FORMS = ("m~_b n=>mp~_b np", "n~_b p=>mn~_(m*b) mp", "m~_b n=>b&m*c=b&n*c")


@dataclass(frozen=True, eq=False)
class MatchedPair:
    algebra: BooleanAlgebra
    monoid: Monoid
    bset_on_m: BSet
    m_on_b: MAction

    def star(self, m, b):
        return self.m_on_b.table[m][b]

    def bm(self, b, m, n):
        return self.bset_on_m.action[b][m][n]

    def key(self):
        return (self.algebra.atoms, self.monoid.table, self.monoid.identity,
                self.bset_on_m.action, self.m_on_b.table)

    def __eq__(self, other):
        return isinstance(other, MatchedPair) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def to_json(self):
        return {"kind": "matched-pair", "boolean": {"atoms": self.algebra.atoms},
                "monoid": self.monoid.to_json(), "bset_on_m": [[list(r) for r in t] for t in self.bset_on_m.action],
                "m_on_b": [list(r) for r in self.m_on_b.table]}


def matched_pair_certificate(B, M, X, A):
    """All matched-pair laws, in equational and in relation form."""
    cert = Certificate("matched-pair")
    mul, act, st = M.table, X.action, A.table
    els, bs = list(M.elements()), list(B.elements())
    for m in els:
        try:
            validate_bool_hom(B, B, st[m])
            ok = True
        except (AxiomError, InvariantViolation):
            ok = False
        cert.record(PAIR_LAWS[0], ok, (m,))
    for b in bs:
        ab = act[b]
        for m, n in product(els, repeat=2):
            bmn = ab[m][n]
            for p in els:
                cert.record(PAIR_LAWS[1], mul[bmn][p] == ab[mul[m][p]][mul[n][p]], lambda: (b, m, n, p))
                cert.record(PAIR_LAWS[2], mul[m][act[b][n][p]] == act[st[m][b]][mul[m][n]][mul[m][p]],
                            lambda: (b, m, n, p))
            for c in bs:
                cert.record(PAIR_LAWS[3], st[bmn][c] == B.cond(b, st[m][c], st[n][c]), lambda: (b, m, n, c))
    L = X.labels
    for b in bs:
        lb = L[b]
        for m, n in product(els, repeat=2):
            if lb[m] == lb[n]:
                for p in els:
                    cert.record(PAIR_FORMS[0], lb[mul[m][p]] == lb[mul[n][p]], lambda: (b, m, n, p))
                for c in bs:
                    cert.record(PAIR_FORMS[2], b & st[m][c] == b & st[n][c], lambda: (b, m, n, c))
        for n, p in product(els, repeat=2):
            if lb[n] == lb[p]:
                for m in els:
                    lm = L[st[m][b]] if 0 <= st[m][b] < B.size else None
                    cert.record(PAIR_FORMS[1], lm is not None and lm[mul[m][n]] == lm[mul[m][p]],
                                lambda: (b, m, n, p))
    eq_ok = all(cert.check(t).passed for t in PAIR_LAWS[1:])
    rel_ok = all(cert.check(t).passed for t in PAIR_FORMS)
    if cert.check(PAIR_LAWS[0]).passed and eq_ok != rel_ok:
        raise InvariantViolation("equational and relational forms of the matched-pair laws disagree")
    return cert


def validate_matched_pair(B, M, bset_on_m, m_on_b):
    """Build a :class:`MatchedPair`; raises :class:`AxiomError` naming the first failing law."""
    if not isinstance(bset_on_m, BSet):
        bset_on_m = validate_bset(B, bset_on_m)
    if bset_on_m.carrier != M.size:
        raise RepresentationError("the B-set on M must have carrier M")
    if not isinstance(m_on_b, MAction):
        m_on_b = validate_maction(M, m_on_b, B.size)
    if m_on_b.carrier != B.size:
        raise RepresentationError("the M-action on B must have carrier B")
    cert = matched_pair_certificate(B, M, bset_on_m, m_on_b)
    for c in cert.checks:
        if not c.passed:
            raise AxiomError(c.tag, c.witnesses[0] if c.witnesses else ())
    return MatchedPair(B, M, bset_on_m, m_on_b)


def boolean_pair(B):
    """``B`` with the trivial monoid."""
    from ..mon import trivial_monoid
    M = trivial_monoid()
    X = validate_bset(B, [[[0]] for _ in B.elements()])
    A = validate_maction(M, [list(B.elements())], B.size)
    return validate_matched_pair(B, M, X, A)


def trivial_pair(M=None):
    """One-atom ``B`` with the forced actions."""
    from ..mon import trivial_monoid
    M = M or trivial_monoid()
    B = BooleanAlgebra(1)
    X = validate_bset(B, [[[n for n in M.elements()] for m in M.elements()],
                          [[m for n in M.elements()] for m in M.elements()]])
    A = validate_maction(M, [[0, 1] for _ in M.elements()], 2)
    return validate_matched_pair(B, M, X, A)


def extract_from_endos(n):
    """The pair of a finite set: endofunctions and subsets of ``{0..n-1}``.

    ``M`` = endofunctions under diagrammatic composition, ``B`` = subsets (atom
    ``x`` is the point ``x``), ``m*b = b o m`` is inverse image and ``b(m, n)``
    follows ``m`` on ``b`` and ``n`` off it.
    """
    if n < 2:
        raise DegenerateError(f"need at least two points, got {n}")
    if n > 4:
        from ..errors import CapacityError
        raise CapacityError("endomorphism base size", n, 4)
    M = endofunction_monoid(n, "diagrammatic")
    B = BooleanAlgebra(n)
    funcs = M.labels
    index = {f: i for i, f in enumerate(funcs)}
    star = [[sum(1 << x for x in range(n) if b >> f[x] & 1) for b in B.elements()] for f in funcs]
    act = [[[index[tuple(f[x] if b >> x & 1 else g[x] for x in range(n))] for g in funcs] for f in funcs]
           for b in B.elements()]
    return validate_matched_pair(B, M, act, star)


# ---------------------------------------------------------------------------
# homomorphisms and isomorphisms of matched pairs


def pair_hom_certificate(P, Q, phi, f):
    """Both phrasings of the homomorphism condition for ``(phi, f): P -> Q``."""
    cert = Certificate("pair-hom")
    MA, QA = P.monoid.elements(), Q.bset_on_m
    for b in P.algebra.elements():
        for m, n in product(MA, repeat=2):
            cert.record("phi(b)(f m,f n)=f(b(m,n))", QA.action[phi[b]][f[m]][f[n]] == f[P.bm(b, m, n)],
                        lambda: (b, m, n))
            if P.bset_on_m.eq(b, m, n):
                cert.record("m~_b n=>f m~_phi(b) f n", QA.eq(phi[b], f[m], f[n]), lambda: (b, m, n))
        for m in MA:
            cert.record("f(m)*phi(b)=phi(m*b)", Q.star(f[m], phi[b]) == phi[P.star(m, b)], lambda: (b, m))
    a = all(cert.check(t).passed for t in ("phi(b)(f m,f n)=f(b(m,n))", "f(m)*phi(b)=phi(m*b)"))
    r = all(cert.check(t).passed for t in ("m~_b n=>f m~_phi(b) f n", "f(m)*phi(b)=phi(m*b)"))
    if a != r:
        raise InvariantViolation("the two forms of the pair homomorphism condition disagree")
    return cert


def pair_isomorphisms(P, Q, first_only=False):
    """All ``(phi, f)`` isomorphisms ``P -> Q``.

    ``phi`` ranges over atom bijections; for each, ``f(m)`` is restricted to
    the elements of ``Q`` whose action on ``B`` matches ``phi(m*-)``, then
    assigned on generators and extended along words.
    """
    if P.algebra.atoms != Q.algebra.atoms or P.monoid.size != Q.monoid.size:
        return []
    B, M, N = P.algebra, P.monoid, Q.monoid
    gens, words = generators(M)
    isos = []
    for perm in permutations(range(B.atoms)):
        # phi sends atom i to atom perm[i]
        phi = BoolHom.from_atom_map(B, Q.algebra, [perm.index(j) for j in range(B.atoms)]).table
        cand = {g: [k for k in N.elements()
                    if all(Q.star(k, phi[b]) == phi[P.star(g, b)] for b in B.elements())] for g in gens}
        for imgs in product(*[cand[g] for g in gens]):
            img = dict(zip(gens, imgs))
            f = [0] * M.size
            for a, w in words.items():
                f[a] = N.prod(*[img[g] for g in w]) if w else N.identity
            if len(set(f)) != N.size:
                continue
            if any(f[M.table[a][b]] != N.table[f[a]][f[b]] for a in M.elements() for b in M.elements()):
                continue
            f = tuple(f)
            if pair_hom_certificate(P, Q, phi, f).passed:
                isos.append((phi, f))
                if first_only:
                    return isos
    return isos
