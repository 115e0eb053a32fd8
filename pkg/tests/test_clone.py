from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ccvar.balg import all_partitions
from ccvar.bset import dirac
from ccvar.clone import (BicrossOp, Decomposer, DualClone, DualOp, binary_reduct, bicross_build,
                         boolean_from_clone, canonical_realiser, classify_op, clone_substitute, decompose,
                         dual_clone_of, dual_op_from_map, extract_matched_theory, omega_map, theory_axioms)
from ccvar.errors import CapacityError, DecompositionError, DegenerateError, RepresentationError
from ccvar.matched import extract_from_endos
from ccvar.matched.theta import theta_to_clone

C2 = DualClone(2, 3)
C3 = DualClone(3, 3)


def ops2(k):
    return st.sampled_from(C2.ops(k))


class TestDualClone:
    @pytest.mark.parametrize("n,k", [(1, 1), (1, 3), (2, 1), (2, 2), (2, 3), (3, 1), (3, 2)])
    def test_counts(self, n, k):
        assert len(dual_clone_of(n, 3).ops(k)) == (k * n) ** n

    def test_projections(self):
        for k in (1, 2, 3):
            for i in range(k):
                p = C2.projection(k, i)
                maps = list(product(range(2), repeat=2))
                for fs in product(maps, repeat=k):
                    assert C2.interpret(p, fs) == fs[i]

    @pytest.mark.parametrize("n,ny", [(1, 3), (2, 1), (2, 2), (2, 3), (3, 2)])
    def test_model_laws(self, n, ny):
        assert DualClone(n, 2).check_model(ny, 2 if n < 3 else 1).passed

    def test_theory_axioms(self):
        assert theory_axioms(C2, 2).passed
        assert theory_axioms(DualClone(1, 3), 3).passed

    def test_substitute_examples(self):
        for k, j in [(2, 1), (2, 2), (3, 2)]:
            for t in C2.ops(k)[:8]:
                us = C2.ops(j)[:k]
                for i in range(k):
                    assert clone_substitute(C2, C2.projection(k, i), us) == us[i]
                assert clone_substitute(C2, t, [C2.projection(k, i) for i in range(k)]) == t

    def test_worked_substitution(self):
        # h constantly slot 1, m the swap; u_1 the identity unary
        t = DualOp(2, (1, 1), (1, 0))
        u0, u1 = C2.projection(1, 0), C2.unary((1, 0))
        tu = C2.substitute(t, [u0, u1])
        maps = list(product(range(2), repeat=2))
        for f in maps:
            assert C2.interpret(tu, (f,)) == C2.interpret(t, (C2.interpret(u0, (f,)), C2.interpret(u1, (f,))))
        assert tu == DualOp(1, (0, 0), (0, 1))

    @settings(max_examples=60, deadline=None)
    @given(ops2(2), st.tuples(ops2(2), ops2(2)), st.tuples(ops2(1), ops2(1)))
    def test_associativity(self, t, us, vs):
        a = C2.substitute(C2.substitute(t, list(us)), list(vs))
        b = C2.substitute(t, [C2.substitute(u, list(vs)) for u in us])
        assert a == b

    @settings(max_examples=60, deadline=None)
    @given(ops2(2), st.tuples(ops2(3), ops2(3)))
    def test_substitution_matches_evaluation(self, t, us):
        tu = C2.substitute(t, list(us))
        maps = list(product(range(3), repeat=2))
        for fs in product(maps, repeat=3):
            assert C2.interpret(tu, fs) == C2.interpret(t, [C2.interpret(u, fs) for u in us])

    def test_from_map_validation(self):
        with pytest.raises(RepresentationError):
            dual_op_from_map(2, 2, [[0, 0]])
        with pytest.raises(RepresentationError):
            dual_op_from_map(2, 2, [[2, 0], [0, 0]])
        with pytest.raises(DegenerateError):
            DualClone(0)
        with pytest.raises(CapacityError):
            DualClone(5)


class TestClassification:
    def test_projections_hyperaffine(self):
        for k in (1, 2, 3):
            for i in range(k):
                assert classify_op(C3, C3.projection(k, i)).hyperaffine

    def test_pair_forms(self):
        for k in (1, 2):
            for h in product(range(k), repeat=2):
                for m in product(range(2), repeat=2):
                    c = classify_op(C2, DualOp(k, h, m))
                    if m == C2.ident:
                        assert c.hyperaffine
                    elif len(set(h)) > 1:
                        assert not c.affine

    def test_bicross_classes(self):
        P = extract_from_endos(2)
        C, _ = bicross_build(theta_to_clone(P, 2), 2, certify=False)
        M = P.monoid
        for k in (1, 2):
            for h in C.D.hyper(k):
                assert classify_op(C, BicrossOp(k, h, M.identity)).hyperaffine
        for m in M.elements():
            assert classify_op(C, BicrossOp(1, dirac(P.algebra, 1, 0), m)).unary


class TestReducts:
    def test_extremes(self):
        for k in (1, 2, 3):
            for t in C2.ops(k):
                if classify_op(C2, t).affine:
                    assert binary_reduct(C2, t, set(range(k))) == C2.projection(2, 0)
                    assert binary_reduct(C2, t, set()) == C2.projection(2, 1)

    @pytest.mark.parametrize("C", [C2, C3], ids=["X=2", "X=3"])
    def test_join_of_single_reducts(self, C):
        d = Decomposer(C, 3)
        S = boolean_from_clone(C, d.hyperaffines(2))
        for k in (2, 3):
            for t in d.hyperaffines(k):
                for mask in range(1 << k):
                    U = {i for i in range(k) if mask >> i & 1}
                    join = 0
                    for i in U:
                        join |= S.bits(binary_reduct(C, t, {i}))
                    assert S.bits(binary_reduct(C, t, U)) == join

    def test_range(self):
        with pytest.raises(RepresentationError):
            binary_reduct(C2, C2.projection(2, 0), {5})


class TestDecomposition:
    def test_unary_and_hyperaffine(self):
        d = Decomposer(C3, 2)
        one = C3.projection(1, 0)
        for m in C3.ops(1):
            assert d.decompose(m) == (one, m)
        for h in d.hyperaffines(2):
            assert d.decompose(h) == (h, one)

    def test_unique_at_three(self):
        d = Decomposer(C3, 3)
        for k in (1, 2, 3):
            assert d.certify(k).passed
        for t in C3.ops(2):
            assert d.decompose(t) == C3.pair_split(t)

    def test_hyperaffine_count(self):
        d = Decomposer(C3, 3)
        for k in (1, 2, 3):
            assert len(d.hyperaffines(k)) == k ** 3

    def test_module_function(self):
        t = C2.ops(2)[5]
        assert decompose(C2, t) == C2.pair_split(t)

    def test_failure_raises(self):
        class Fake:
            # two unaries with the same value: every op then has two witnesses
            def __init__(self):
                self.C = C2

            def projection(self, k, i):
                return C2.projection(k, i)

            def substitute(self, t, us):
                return C2.substitute(t, us)

            def ops(self, k):
                return C2.ops(k)

            def unit_ops(self):
                return C2.unit_ops() + C2.unit_ops()[:1]

        d = Decomposer(Fake(), 1)
        with pytest.raises(DecompositionError):
            d.decompose(C2.unit_ops()[0])


class TestBooleanFromClone:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_size(self, n):
        C = DualClone(n, 2)
        S = boolean_from_clone(C, Decomposer(C, 2).hyperaffines(2))
        assert S.algebra.size == 2 ** n

    def test_degenerate(self):
        class Collapsed:
            def projection(self, k, i):
                return DualOp(k, (0,), (0,))

        with pytest.raises(DegenerateError):
            boolean_from_clone(Collapsed(), [])

    def test_bicross_recovers_b(self):
        for P in (extract_from_endos(2),):
            C, _ = bicross_build(theta_to_clone(P, 2), 2, certify=False)
            S = boolean_from_clone(C, [BicrossOp(2, h, P.monoid.identity) for h in C.D.hyper(2)])
            assert S.algebra == P.algebra


class TestOmega:
    def setup_method(self):
        self.d = Decomposer(C2, 3)
        self.S = boolean_from_clone(C2, self.d.hyperaffines(2))

    def test_dirac(self):
        B = self.S.algebra
        for k in (1, 2, 3):
            for i in range(k):
                assert omega_map(C2, self.S, C2.projection(k, i)) == dirac(B, k, i)

    def test_realiser(self):
        B = self.S.algebra
        assert canonical_realiser(C2, self.S, [B.top]) == C2.projection(1, 0)
        for P in all_partitions(B):
            r = canonical_realiser(C2, self.S, P)
            assert omega_map(C2, self.S, r) == P.parts
            assert classify_op(C2, r).hyperaffine
        for b in range(1, B.top):
            # slots follow the sorted parts
            lo, hi = sorted([b, B.top ^ b])
            r = canonical_realiser(C2, self.S, [b, B.top ^ b])
            assert binary_reduct(C2, r, {0}) == self.S.elem(lo)
            assert binary_reduct(C2, r, {1}) == self.S.elem(hi)

    def test_substitution(self):
        from ccvar.bset import dist_substitute, validate_distribution
        B = self.S.algebra
        for k, j in product((1, 2), repeat=2):
            for t in self.d.hyperaffines(k):
                for us in product(self.d.hyperaffines(j), repeat=k):
                    lhs = omega_map(C2, self.S, C2.substitute(t, list(us)))
                    rhs = dist_substitute(validate_distribution(B, omega_map(C2, self.S, t)),
                                          [validate_distribution(B, omega_map(C2, self.S, u)) for u in us])
                    assert lhs == rhs.omega


class TestMatchedTheory:
    def setup_method(self):
        self.D = extract_matched_theory(C2, 2)

    def test_unit_and_projection_laws(self):
        D = self.D
        e = D.monoid.identity
        for k in (1, 2):
            for h in D.hyper(k):
                assert D.mstar(e, h) == h
            for i in range(k):
                for ms in product(D.monoid.elements(), repeat=k):
                    assert D.rtri(D.hproj(k, i), ms) == ms[i]

    def test_mstar_pair_form(self):
        # m*h = h o m in pair form
        D = self.D
        for mi, u in enumerate(D.units):
            for h in D.hyper(2):
                expect = DualOp(2, tuple(h.h[u.m[x]] for x in range(2)), C2.ident)
                assert D.mstar(mi, h) == expect

    def test_const_zero_atom_split(self):
        D = self.D
        const0 = D.units.index(C2.unary((0, 0)))
        split = DualOp(2, (0, 1), C2.ident)
        assert D.mstar(const0, split) == DualOp(2, (0, 0), C2.ident)


class TestBicross:
    def setup_method(self):
        self.P = extract_from_endos(2)
        self.C, self.cert = bicross_build(theta_to_clone(self.P, 2), 2)

    def test_certificate(self):
        assert self.cert.passed

    def test_unit_law(self):
        C = self.C
        for k in (1, 2):
            for t in C.ops(k):
                assert C.substitute(t, [C.projection(k, i) for i in range(k)]) == t

    def test_unaries_compose(self):
        C, M = self.C, self.P.monoid
        one = C.D.hproj(1, 0)
        for m, n in product(M.elements(), repeat=2):
            lhs = C.substitute(BicrossOp(1, one, m), [BicrossOp(1, one, n)])
            assert lhs == BicrossOp(1, one, M.mul(m, n))
