"""Recovering a matched pair from the free BM-set on one generator.

With ``F1`` the free BM-set on one point and ``B`` viewed as ``1 + 1``:
``M' = Hom(F1, F1)`` under diagrammatic composition, ``B' = Hom(F1, B)``,
``m'*b' = b' o m'`` and ``b'(m', n') = <m', n'> o phi^-1 o (b', id)`` where
``phi: F1 + F1 -> B x F1`` is the canonical iso and ``F1 + F1`` is the free
BM-set on two points.
"""

from dataclasses import dataclass, field
from itertools import combinations

from .. import _backend
from ..balg import all_partitions, boolean_from_ifthenelse
from ..bset import all_distributions, dirac
from ..certificate import Certificate
from ..errors import CapacityError, InvariantViolation
from ..mon import validate_monoid
from .bmset import b_as_bmset, bm_product, enumerate_bm_homs, free_bmset, terminal_bmset
from .pair import pair_hom_certificate, pair_isomorphisms, validate_matched_pair

MAX_F1 = 64


@dataclass
class RoundTrip:
    pair: object
    recovered: object
    endos: list              # M' as hom tables on F1
    points: list             # B' as hom tables F1 -> B
    structure: object        # Boolean structure on B'
    isos: list
    canonical: tuple
    cert: Certificate = field(repr=False, default=None)

    @property
    def passed(self):
        return bool(self.isos) and self.cert.passed

    def summary(self):
        return {"M'": len(self.endos), "B'": len(self.points), "isomorphisms": len(self.isos),
                "canonical": self.canonical in self.isos, "checks": self.cert.to_json()}


def roundtrip_matched_pair(pair, all_isos=True, verify_coproduct=True):
    M, B = pair.monoid, pair.algebra
    if M.size > MAX_F1:
        raise CapacityError("free BM-set on one generator", M.size, MAX_F1)
    cert = Certificate("roundtrip")
    F = free_bmset(pair, 1)
    F1 = F.bmset
    gen = F.unit[0]
    Bbm = b_as_bmset(pair)
    n1 = F1.carrier

    endos = enumerate_bm_homs(F1, F1)
    eidx = {f: i for i, f in enumerate(endos)}
    ident = tuple(range(n1))
    table = [[eidx[tuple(g[f[x]] for x in range(n1))] for g in endos] for f in endos]
    Mp = validate_monoid(table, eidx[ident])

    points = enumerate_bm_homs(F1, Bbm)
    top, zero = tuple([B.top] * n1), tuple([0] * n1)
    S = boolean_from_ifthenelse(points, top, zero,
                                lambda a, b, c: tuple(B.cond(a[x], b[x], c[x]) for x in range(n1)))
    Bp = S.algebra
    star = [[S.bits(tuple(S.elem(b)[m[x]] for x in range(n1))) for b in Bp.elements()] for m in endos]

    # F1 + F1 as the free object on two points, and phi into B x F1
    F2 = free_bmset(pair, 2)
    BF = bm_product(Bbm, F1)
    phi = F2.extensions(BF, [B.top * n1 + gen, 0 * n1 + gen], limit=2)
    cert.record("phi-unique", len(phi) == 1, (len(phi),))
    phi = phi[0]
    cert.record("phi-bijective", sorted(phi) == list(range(BF.carrier)), ())
    inv = {v: i for i, v in enumerate(phi)}
    if verify_coproduct:
        cert.merge(F2.verify_free([terminal_bmset(pair), Bbm, F1]), "coproduct:")
    copair = {}
    for m in endos:
        for n in endos:
            ext = F2.extensions(F1, [m[gen], n[gen]], limit=2)
            if len(ext) != 1:
                raise InvariantViolation(f"copairing of {m}, {n} has {len(ext)} extensions")
            copair[m, n] = ext[0]
    act = []
    for b in Bp.elements():
        bp = S.elem(b)
        layer = []
        for m in endos:
            row = []
            for n in endos:
                c = copair[m, n]
                row.append(eidx[tuple(c[inv[bp[x] * n1 + x]] for x in range(n1))])
            layer.append(row)
        act.append(layer)
    Q = validate_matched_pair(Bp, Mp, act, star)

    isos = pair_isomorphisms(pair, Q, first_only=not all_isos)
    canonical = canonical_iso(pair, S, endos, F1)
    cert.record("canonical-is-hom", pair_hom_certificate(pair, Q, *canonical).passed, ())
    cert.record("isomorphism-found", bool(isos), ())
    return RoundTrip(pair, Q, endos, points, S, isos, canonical, cert)


def canonical_iso(pair, S, endos, F1):
    """``m |-> (x |-> x m)`` and ``b |-> (n |-> n*b)``; ``F1`` is indexed by ``M``."""
    M, B = pair.monoid, pair.algebra
    eidx = {f: i for i, f in enumerate(endos)}
    st = pair.m_on_b.table
    phi = tuple(S.bits(tuple(st[n][b] for n in M.elements())) for b in B.elements())
    f = tuple(eidx[tuple(M.table[x][m] for x in M.elements())] for m in M.elements())
    return phi, f


# ---------------------------------------------------------------------------
# the coverage computed inside the variety


def _copower_data(pair, size):
    """``size . 1 = T_B(size)`` with ``n.w = n* o w``: labels, M-action and
    coprojections, without materialising the full action table."""
    B, M = pair.algebra, pair.monoid
    dists = all_distributions(B, size)
    didx = {w: i for i, w in enumerate(dists)}
    st = pair.m_on_b.table
    labels = [_backend.class_labels([tuple(b & v for v in w) for w in dists], len(dists)) for b in B.elements()]
    mt = [[didx[tuple(st[n][v] for v in w)] for w in dists] for n in M.elements()]
    return dists, labels, mt, [didx[dirac(B, size, i)] for i in range(size)]


def coverage_certificate(pair, max_subset=None):
    """The subsets ``P`` of ``B'\\{0}`` admitting ``f: F1 -> P.1`` with
    ``<delta_bc> o f = c`` for every ``c`` in ``P``, compared with all partitions."""
    B, M = pair.algebra, pair.monoid
    cert = Certificate("coverage")
    F = free_bmset(pair, 1)
    F1 = F.bmset
    n1 = F1.carrier
    Bbm = b_as_bmset(pair)
    points = enumerate_bm_homs(F1, Bbm)
    top, zero = tuple([B.top] * n1), tuple([0] * n1)
    S = boolean_from_ifthenelse(points, top, zero,
                                lambda a, b, c: tuple(B.cond(a[x], b[x], c[x]) for x in range(n1)))
    nonzero = [p for p in points if p != zero]
    f_ops = [F1.maction.table[m] for m in M.elements()]
    b_ops = [Bbm.maction.table[m] for m in M.elements()]
    covering = set()
    sizes = range(1, (max_subset or len(nonzero)) + 1)
    for k in sizes:
        dists, labels, mt, coproj = _copower_data(pair, k)
        nd = len(dists)
        homs = _backend.search_homs(n1, nd, F1.bset.labels, labels, f_ops, mt, order="auto")
        deltas = []
        for j in range(k):
            allowed = [list(range(B.size)) for _ in range(nd)]
            for i, u in enumerate(coproj):
                allowed[u] = [B.top if i == j else 0]
            d = _backend.search_homs(nd, B.size, labels, Bbm.bset.labels, mt, b_ops, allowed, limit=2,
                                     order="auto")
            cert.record("delta-unique", len(d) == 1, lambda: (k, j, len(d)))
            cert.record("delta-is-evaluation", d == [tuple(w[j] for w in dists)], lambda: (k, j))
            deltas.append(d[0])
        for P in combinations(nonzero, k):
            ok = any(all(deltas[j][f[x]] == c[x] for j, c in enumerate(P) for x in range(n1)) for f in homs)
            if ok:
                covering.add(frozenset(S.bits(c) for c in P))
    parts = {frozenset(p.parts) for p in all_partitions(S.algebra)}
    if max_subset is not None:
        parts = {p for p in parts if len(p) <= max_subset}
    cert.record("coverage-is-all-partitions", covering == parts,
                lambda: (sorted(map(sorted, covering - parts)), sorted(map(sorted, parts - covering))))
    return cert, covering
