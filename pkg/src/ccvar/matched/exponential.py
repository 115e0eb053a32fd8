"""Exponentials of BM-sets.

``Z^Y`` is the set of BM-homs ``f: M x Y -> Z`` with ``(m*f)(n, y) = f(nm, y)``
and ``f ~_b g`` iff ``f(m, y) ~_(m*b) g(m, y)`` for all ``m, y``.
"""

from dataclasses import dataclass, field

from ..bset import action_from_eqs, eq_family_from_keys, verify_universal_property
from ..certificate import Certificate
from ..errors import AxiomError, InvariantViolation, RepresentationError
from ..mon import MAction, mset_exponential
from .bmset import BMSet, bm_product, bmset_certificate, enumerate_bm_homs, is_bm_hom, m_as_bmset


@dataclass(eq=False)
class BMExponential:
    bmset: BMSet
    homs: list
    Y: BMSet
    Z: BMSet
    index: dict = field(repr=False, default_factory=dict)

    def ev(self, f, y):
        M = self.Y.pair.monoid
        return self.homs[f][M.identity * self.Y.carrier + y]

    def ev_table(self):
        ny = self.Y.carrier
        return tuple(self.ev(f, y) for f in range(len(self.homs)) for y in range(ny))

    def transpose(self, X, f):
        """``x |-> ((m, y) |-> f(m.x, y))`` for a hom ``f: X x Y -> Z``."""
        M = self.Y.pair.monoid
        ny = self.Y.carrier
        out = []
        for x in range(X.carrier):
            row = tuple(f[X.maction.table[m][x] * ny + y] for m in M.elements() for y in range(ny))
            if row not in self.index:
                raise InvariantViolation(f"transpose at {x} is not a hom M x Y -> Z")
            out.append(self.index[row])
        return tuple(out)

    def verify_universal(self, tests):
        return verify_universal_property(self, tests, bm_product, enumerate_bm_homs, is_bm_hom)


def bm_exponential(Y, Z):
    if Y.pair != Z.pair:
        raise RepresentationError("BM-sets over different matched pairs")
    pair = Y.pair
    M, B = pair.monoid, pair.algebra
    ny = Y.carrier
    homs = enumerate_bm_homs(bm_product(m_as_bmset(pair), Y), Z)
    index = {h: i for i, h in enumerate(homs)}
    st, ZL = pair.m_on_b.table, Z.bset.labels
    E = eq_family_from_keys(B, len(homs), lambda b, f: tuple(ZL[st[m][b]][homs[f][m * ny + y]]
                                                          for m in M.elements() for y in range(ny)))
    try:
        X = action_from_eqs(E)
    except AxiomError as e:
        raise InvariantViolation(f"glueing in the exponential failed: {e}") from None
    table = tuple(tuple(index[tuple(h[M.table[n][m] * ny + y] for n in M.elements() for y in range(ny))]
                        for h in homs) for m in M.elements())
    A = MAction(M, len(homs), table)
    cert = bmset_certificate(pair, X, A)
    if not cert.passed:
        raise InvariantViolation(f"exponential is not a BM-set: {[c.tag for c in cert.failures]}")
    return BMExponential(BMSet(pair, len(homs), X, A), homs, Y, Z, index)


def compare_with_mset_exponential(Y, Z):
    """With one atom the B-structure is forced; the exponential must coincide
    with the plain M-set exponential, carrier and action."""
    cert = Certificate("bm-vs-m-exponential")
    if Y.pair.algebra.atoms != 1:
        raise RepresentationError("comparison needs the one-atom algebra")
    E = bm_exponential(Y, Z)
    F = mset_exponential(Y.maction, Z.maction)
    cert.record("same-carrier", list(E.homs) == list(F.homs), (len(E.homs), len(F.homs)))
    cert.record("same-action", E.bmset.maction.table == F.action.table, ())
    for f in range(len(E.homs)):
        for y in range(Y.carrier):
            cert.record("same-ev", E.ev(f, y) == F.ev(f, y), lambda: (f, y))
    return cert
