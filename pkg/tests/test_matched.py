from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ccvar.balg import BooleanAlgebra, all_partitions
from ccvar.bset import bset_failure, eqs_from_action
from ccvar.clone import DualClone, bicross_build, extract_matched_theory
from ccvar.errors import AxiomError, CapacityError, DegenerateError
from ccvar.matched import (b_as_bmset, bm_product, bmset_certificate, enumerate_bm_homs, extract_from_endos,
                           fixed_points, free_bmset, is_bm_hom, m_as_bmset, matched_pair_certificate,
                           terminal_bmset, trivial_pair, validate_bmset, validate_matched_pair)
from ccvar.matched.bmset import (bicross_model_certificate, bmset_from_bicross_model, copower_of_terminal,
                                 interpret_bicross, replay_bset_witness)
from ccvar.matched.enumerate import enumerate_bmsets, enumerate_matched_pairs
from ccvar.matched.exponential import bm_exponential, compare_with_mset_exponential
from ccvar.matched.pair import boolean_pair, pair_hom_certificate, pair_isomorphisms
from ccvar.matched.roundtrip import coverage_certificate, roundtrip_matched_pair
from ccvar.matched.theta import theta_certificate, theta_from_clone, theta_to_clone
from ccvar.mon import cyclic_group, endofunction_monoid
from ccvar.oracle import naive_bm_homs

E2 = extract_from_endos(2)
PAIRS = enumerate_matched_pairs(2, 3)


def standard(P):
    return [terminal_bmset(P), m_as_bmset(P), b_as_bmset(P)]


def pair_table(P):
    return [[list(r) for r in layer] for layer in P.bset_on_m.action], [list(r) for r in P.m_on_b.table]


class TestMatchedPair:
    @pytest.mark.parametrize("M", [None, cyclic_group(2), cyclic_group(3), endofunction_monoid(2)],
                             ids=["trivial", "Z2", "Z3", "endos2"])
    def test_one_atom_forced(self, M):
        P = trivial_pair(M)
        assert P.algebra.atoms == 1
        for m, n in product(P.monoid.elements(), repeat=2):
            assert P.bm(1, m, n) == m and P.bm(0, m, n) == n

    @pytest.mark.parametrize("n", [2, 3])
    def test_endos(self, n):
        P = extract_from_endos(n)
        assert P.monoid.size == n ** n and P.algebra.size == 2 ** n
        for m in P.monoid.elements():
            assert P.star(m, P.algebra.top) == P.algebra.top
            assert P.star(m, 0) == 0
        for b, m in product(P.algebra.elements(), P.monoid.elements()):
            assert P.bm(b, m, m) == m

    def test_endos_bounds(self):
        with pytest.raises(DegenerateError):
            extract_from_endos(1)
        with pytest.raises(CapacityError):
            extract_from_endos(5)

    def test_certificate_passes(self):
        for P in PAIRS + [E2]:
            assert matched_pair_certificate(P.algebra, P.monoid, P.bset_on_m, P.m_on_b).passed

    def test_count(self):
        assert len(PAIRS) == 37
        assert len(set(PAIRS)) == len(PAIRS)

    def test_every_cell_mutation_detected(self):
        act, star = pair_table(E2)
        B, M = E2.algebra, E2.monoid
        for b, m, n in product(B.elements(), M.elements(), M.elements()):
            v = (act[b][m][n] + 1) % M.size
            t = [[list(r) for r in layer] for layer in act]
            t[b][m][n] = v
            with pytest.raises(AxiomError):
                validate_matched_pair(B, M, t, star)

    def test_other_bsets_break_pair_laws(self):
        # a valid B-set on M that is not compatible with the monoid is named by law
        from ccvar.bset import enumerate_bsets
        from ccvar.matched.pair import PAIR_LAWS
        B, M = E2.algebra, E2.monoid
        bad = 0
        for X in enumerate_bsets(B, M.size):
            cert = matched_pair_certificate(B, M, X, E2.m_on_b)
            if not cert.passed:
                bad += 1
                assert all(c.witnesses for c in cert.failures)
                assert {c.tag for c in cert.failures} & set(PAIR_LAWS)
        assert bad > 0

    def test_break_star(self):
        act, star = pair_table(E2)
        star[1][1] = 2 if star[1][1] != 2 else 1
        with pytest.raises(AxiomError):
            validate_matched_pair(E2.algebra, E2.monoid, act, star)

    def test_isomorphisms(self):
        isos = pair_isomorphisms(E2, E2)
        assert len(isos) == 2  # the point swap
        for phi, f in isos:
            assert pair_hom_certificate(E2, E2, phi, f).passed

    def test_boolean_pair(self):
        for k in (1, 2, 3):
            P = boolean_pair(BooleanAlgebra(k))
            assert P.monoid.size == 1


class TestBMSets:
    @pytest.mark.parametrize("P", [trivial_pair(), E2, extract_from_endos(3)], ids=["trivial", "E2", "E3"])
    def test_standard_objects_valid(self, P):
        for X in standard(P):
            assert bmset_certificate(P, X.bset, X.maction).passed

    def test_mutation_detected(self):
        X = b_as_bmset(E2)
        table = [list(r) for r in X.maction.table]
        # change where a non-identity element sends one element
        m = next(m for m in E2.monoid.elements() if m != E2.monoid.identity)
        table[m][1] = (table[m][1] + 1) % 4
        with pytest.raises(AxiomError):
            validate_bmset(E2, X.bset, table)

    def test_hom_from_terminal(self):
        for P in [E2] + PAIRS[:10]:
            T = terminal_bmset(P)
            for Y in standard(P):
                assert sorted(f[0] for f in enumerate_bm_homs(T, Y)) == fixed_points(Y)

    def test_hom_from_m(self):
        for P in [E2] + PAIRS[:10]:
            MM = m_as_bmset(P)
            e = P.monoid.identity
            for Y in standard(P) + [free_bmset(P, 1).bmset]:
                H = enumerate_bm_homs(MM, Y)
                assert sorted(f[e] for f in H) == list(range(Y.carrier))

    def test_identity_hom(self):
        for X in enumerate_bmsets(E2, 4) + standard(E2):
            assert tuple(range(X.carrier)) in enumerate_bm_homs(X, X)

    def test_homs_against_oracle(self):
        objs = standard(E2) + enumerate_bmsets(E2, 4)
        for X, Y in product(objs, repeat=2):
            assert enumerate_bm_homs(X, Y) == naive_bm_homs(X, Y)

    def test_product(self):
        T = terminal_bmset(E2)
        objs = standard(E2)
        for X in objs:
            XT = bm_product(X, T)
            assert XT.key() == X.key()
        for X, Y in product(objs, repeat=2):
            Pr = bm_product(X, Y)
            assert Pr.carrier == X.carrier * Y.carrier
            assert bmset_certificate(E2, Pr.bset, Pr.maction).passed
            E, EX, EY = eqs_from_action(Pr.bset), eqs_from_action(X.bset), eqs_from_action(Y.bset)
            ny = Y.carrier
            for b in E2.algebra.elements():
                for i, j in product(range(Pr.carrier), repeat=2):
                    assert E.eq(b, i, j) == (EX.eq(b, i // ny, j // ny) and EY.eq(b, i % ny, j % ny))
            p1 = tuple(i // ny for i in range(Pr.carrier))
            p2 = tuple(i % ny for i in range(Pr.carrier))
            assert is_bm_hom(Pr, X, p1) and is_bm_hom(Pr, Y, p2)

    def test_enumeration_sizes(self):
        # models of the endomorphism pair have the form Y^2
        assert [len(enumerate_bmsets(E2, n)) for n in (1, 2, 3, 4)] == [1, 0, 0, 12]


class TestFree:
    @pytest.mark.parametrize("P", [trivial_pair(cyclic_group(2)), E2, extract_from_endos(3)],
                             ids=["Z2", "E2", "E3"])
    def test_singleton_is_m(self, P):
        F = free_bmset(P, 1)
        assert F.bmset.carrier == P.monoid.size
        assert F.unit == [P.monoid.identity]
        assert F.bmset.key() == m_as_bmset(P).key()

    def test_size_and_unit(self):
        for P in [E2] + PAIRS[::5]:
            for g in (1, 2, 3):
                F = free_bmset(P, g)
                assert F.bmset.carrier == P.monoid.size * g ** P.algebra.atoms
                for i, u in enumerate(F.unit):
                    assert u == F.point(P.monoid.identity, tuple(P.algebra.top if j == i else 0 for j in range(g)))

    def test_freeness(self):
        for g in (1, 2):
            F = free_bmset(E2, g)
            assert F.verify_free(standard(E2) + enumerate_bmsets(E2, 4)).passed

    def test_copower(self):
        X, dists, pis = copower_of_terminal(E2, 2)
        assert X.carrier == 4 and len(pis) == 2
        assert bmset_certificate(E2, X.bset, X.maction).passed


class TestExponential:
    def test_terminal_target(self):
        T = terminal_bmset(E2)
        for Y in standard(E2):
            assert bm_exponential(Y, T).bmset.carrier == 1

    def test_one_atom_matches_mset(self):
        for P in [trivial_pair(cyclic_group(2)), trivial_pair(endofunction_monoid(2))]:
            objs = standard(P) + enumerate_bmsets(P, 2)
            for Y, Z in product(objs, repeat=2):
                assert compare_with_mset_exponential(Y, Z).passed

    def test_universal_m_m(self):
        MM = m_as_bmset(E2)
        tests = standard(E2) + enumerate_bmsets(E2, 4)
        assert bm_exponential(MM, MM).verify_universal(tests).passed

    def test_ev_is_hom(self):
        for Y, Z in product(standard(E2), repeat=2):
            E = bm_exponential(Y, Z)
            ev = E.ev_table()
            EY = bm_product(E.bmset, Y)
            assert is_bm_hom(EY, Z, ev)


class TestTheta:
    def test_certificate_on_all_pairs(self):
        for P in PAIRS:
            assert theta_certificate(P, 2).passed

    def test_unit_laws(self):
        D = theta_to_clone(E2, 2)
        B, M = E2.algebra, E2.monoid
        for k in (1, 2):
            for i in range(k):
                dirac = D.hproj(k, i)
                for ms in product(M.elements(), repeat=k):
                    assert D.rtri(dirac, ms) == ms[i]
            for w in D.hyper(k):
                assert D.mstar(M.identity, w) == w

    def test_from_dual_clone(self):
        D = extract_matched_theory(DualClone(2, 2), 2)
        P = theta_from_clone(D)
        assert pair_isomorphisms(P, E2)

    def test_trivial_monoid(self):
        P = theta_from_clone(theta_to_clone(boolean_pair(BooleanAlgebra(2)), 2))
        assert P.monoid.size == 1
        assert list(P.m_on_b.table[0]) == list(P.algebra.elements())

    def test_roundtrip_on_pairs(self):
        for P in PAIRS:
            Q = theta_from_clone(theta_to_clone(P, 2))
            assert pair_isomorphisms(P, Q, first_only=True)

    def test_bicross_models(self):
        C, _ = bicross_build(theta_to_clone(E2, 2), 2, certify=False)
        for X in standard(E2):
            assert bicross_model_certificate(X, C, 2).passed
            Y = bmset_from_bicross_model(E2, C, X.carrier, lambda op, xs: interpret_bicross(X, op, xs))
            assert Y.key() == X.key()


class TestRoundTrip:
    @pytest.mark.parametrize("P", [trivial_pair(), E2], ids=["trivial", "E2"])
    def test_isomorphism_found(self, P):
        R = roundtrip_matched_pair(P)
        assert R.passed
        assert R.canonical in R.isos

    def test_coverage_equals_all_partitions(self):
        for k in (1, 2, 3):
            B = BooleanAlgebra(k)
            cert, covering = coverage_certificate(boolean_pair(B))
            assert cert.passed
            assert sorted(tuple(sorted(c)) for c in covering) == sorted(p.parts for p in all_partitions(B))
        cert, _ = coverage_certificate(E2)
        assert cert.passed


class TestWitnessReplay:
    def test_bset_witness_replays(self):
        X = b_as_bmset(E2)
        action = [[list(r) for r in layer] for layer in X.bset.action]
        action[1][0][3] = 1
        axiom, wit = bset_failure(E2.algebra, action)

        class Raw:
            algebra = E2.algebra

        Raw.action = action
        assert not replay_bset_witness(Raw, axiom, tuple(0 if w is None else w for w in wit))


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(range(len(PAIRS))), st.integers(0, 2), st.integers(0, 2))
def test_standard_homs_compose(i, a, b):
    P = PAIRS[i]
    objs = standard(P)
    X, Y, Z = objs[a], objs[b], objs[(a + b) % 3]
    HXZ = set(enumerate_bm_homs(X, Z))
    for f in enumerate_bm_homs(X, Y):
        for g in enumerate_bm_homs(Y, Z):
            assert tuple(g[v] for v in f) in HXZ
