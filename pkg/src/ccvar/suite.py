"""Exhaustive desk-scale suites, one per acceptance criterion.

Each ``criterion_*`` function returns a :class:`Certificate`; the CLI ``suite``
command and the acceptance tests both drive them.
"""

import time
from itertools import product

from .balg import BooleanAlgebra, validate_bool_hom
from .bset import (action_from_eqs, all_distributions, bset_exponential, conditioned_disjunction,
                   dist_substitute, enumerate_bset_homs, enumerate_bsets, eqs_from_action, free_bset,
                   validate_distribution)
from .certificate import Certificate
from .clone import (Decomposer, DualClone, DualOp, boolean_from_clone, commutation, omega_map,
                    substitution_closure)
from .clone.core import binary_reduct
from .errors import AxiomError, CapacityError, InvariantViolation
from .matched import (b_as_bmset, enumerate_bm_homs, extract_from_endos, free_bmset, m_as_bmset,
                      terminal_bmset, trivial_pair)
from .matched.enumerate import enumerate_bmsets, enumerate_matched_pairs
from .matched.exponential import bm_exponential
from .matched.pair import boolean_pair
from .matched.roundtrip import coverage_certificate, roundtrip_matched_pair
from .matched.theta import theta_certificate
from .oracle import NAIVE_LIMIT, naive_bm_homs, naive_bset_homs, naive_bsets


# the quick level bounds the naive oracle space lower to stay inside a minute
QUICK_NAIVE_LIMIT = 10 ** 5


def criterion_bset_duality(max_atoms=3, max_carrier=4):
    cert = Certificate("bset-duality")
    for k in range(1, max_atoms + 1):
        B = BooleanAlgebra(k)
        objs = [X for n in range(1, max_carrier + 1) for X in enumerate_bsets(B, n)]
        for n in range(1, max_carrier + 1):
            if (2 ** k - 2) * n <= 12:
                mine = {X for X in objs if X.carrier == n}
                cert.record("enumeration-complete", mine == set(naive_bsets(B, n)), (k, n))
        for X in objs:
            E = eqs_from_action(X)
            Y = action_from_eqs(E)
            cert.record("action->eqs->action", Y == X, lambda: (k, X.carrier))
            cert.record("eqs->action->eqs", eqs_from_action(Y) == E, lambda: (k, X.carrier))
        for X, Y in product(objs, repeat=2):
            cert.record("homs-by-relations=homs-by-action", enumerate_bset_homs(X, Y) == naive_bset_homs(X, Y),
                        lambda: (k, X.carrier, Y.carrier))
    return cert


def criterion_free_exponential(max_atoms=2, max_carrier=3):
    cert = Certificate("free-exponential")
    for k in range(1, max_atoms + 1):
        B = BooleanAlgebra(k)
        tests = [X for n in range(1, max_carrier + 1) for X in enumerate_bsets(B, n)]
        for g in (1, 2):
            F = free_bset(B, g)
            cert.record("free-carrier-size", F.bset.carrier == g ** k, (k, g))
            cert.merge(F.verify_free(tests), f"free[{k},{g}]:")
        cd = conditioned_disjunction(B)
        for Y, Z in product(tests + [cd], repeat=2):
            E = bset_exponential(Y, Z)
            cert.merge(E.verify_universal(tests), "exp:")
    return cert


def criterion_decomposition(sizes=(2, 3), max_arity=3):
    cert = Certificate("decomposition")
    for n in sizes:
        C = DualClone(n, max_arity)
        d = Decomposer(C, max_arity)
        for k in range(1, max_arity + 1):
            cert.merge(d.certify(k), f"X={n}:")
            for t in C.ops(k):
                w = d.witnesses(t)
                if len(w) == 1:
                    cert.record("agrees-with-pair-split", w[0] == C.pair_split(t), lambda: (n, repr(t)))
        hyper = {k: d.hyperaffines(k) for k in range(1, max_arity + 1)}
        for k in hyper:
            cert.record("hyperaffine-count", len(hyper[k]) == k ** n, (n, k, len(hyper[k])))
        cert.merge(substitution_closure(C, hyper, max_arity), f"X={n}:")
        cert.merge(commutation(C, hyper, 2), f"X={n}:")
    return cert


def criterion_boolean_extraction(sizes=(2, 3), max_arity=2):
    cert = Certificate("boolean-extraction")
    for n in sizes:
        C = DualClone(n, max_arity)
        d = Decomposer(C, max_arity)
        S = boolean_from_clone(C, d.hyperaffines(2))
        B = S.algebra
        cert.record("size-2^n", B.size == 2 ** n, (n, B.size))
        # subset U of X  |->  the op tagging U with slot 0 and the rest with slot 1
        P = BooleanAlgebra(n)
        table = [S.bits(DualOp(2, tuple(0 if u >> x & 1 else 1 for x in range(n)), C.ident))
                 for u in P.elements()]
        try:
            validate_bool_hom(P, B, table)
            iso = len(set(table)) == B.size
        except (AxiomError, InvariantViolation):
            iso = False
        cert.record("isomorphic-to-powerset", iso, (n,))
        for k in range(1, max_arity + 1):
            H = d.hyperaffines(k)
            om = {h: omega_map(C, S, h) for h in H}
            cert.record("omega-bijective", sorted(set(om.values())) == all_distributions(B, k), (n, k))
            for i in range(k):
                cert.record("omega(pi_i)=dirac", om[C.projection(k, i)] == tuple(B.top if j == i else 0
                                                                                  for j in range(k)), (n, k, i))
            for h in H:
                red = binary_reduct(C, h, set(range(k)))
                cert.record("reduct-of-all-slots-is-pi_1", red == C.projection(2, 0), lambda: (n, repr(h)))
            for j in range(1, max_arity + 1):
                Hj = d.hyperaffines(j)
                omj = {u: omega_map(C, S, u) for u in Hj}
                for t in H:
                    for us in product(Hj, repeat=k):
                        lhs = omega_map(C, S, C.substitute(t, list(us)))
                        rhs = dist_substitute(validate_distribution(B, om[t]),
                                              [validate_distribution(B, omj[u]) for u in us]).omega
                        cert.record("omega-preserves-substitution", lhs == rhs, lambda: (n, repr(t)))
    return cert


def criterion_bicross(max_atoms=2, max_monoid=3, max_arity=2):
    cert = Certificate("bicross")
    pairs = enumerate_matched_pairs(max_atoms, max_monoid)
    cert.record("pairs-enumerated", len(pairs) > 0, ())
    for P in pairs:
        cert.merge(theta_certificate(P, max_arity))
    return cert, len(pairs)


def bm_test_objects(pair, max_carrier=4):
    return [X for n in range(1, max_carrier + 1) for X in enumerate_bmsets(pair, n)]


def criterion_bm_exponential(max_carrier=4):
    cert = Certificate("bm-exponential")
    P = extract_from_endos(2)
    tests = bm_test_objects(P, max_carrier)
    objs = [terminal_bmset(P), m_as_bmset(P), b_as_bmset(P)]
    for Y, Z in product(objs, repeat=2):
        cert.merge(bm_exponential(Y, Z).verify_universal(tests))
    return cert, len(tests)


def criterion_roundtrip(include_three=False, budget=900.0):
    cert = Certificate("roundtrip")
    cases = [("trivial", trivial_pair()), ("endos-2", extract_from_endos(2))]
    skipped = []
    if include_three:
        cases.append(("endos-3", extract_from_endos(3)))
    else:
        skipped.append("endos-3")
    t0 = time.perf_counter()
    for name, P in cases:
        R = roundtrip_matched_pair(P)
        cert.merge(R.cert, f"{name}:")
        cert.record(f"{name}:canonical-iso-listed", R.canonical in R.isos, ())
    cert.record("within-budget", time.perf_counter() - t0 <= budget, ())
    return cert, skipped


def criterion_search_oracle(max_atoms=2, max_monoid=3, limit=NAIVE_LIMIT):
    """Kernels against naive table filtering on every corpus instance whose
    naive space is at most ``limit`` tables."""
    cert = Certificate("search-oracle")
    compared = 0
    for k in range(1, max_atoms + 2):
        B = BooleanAlgebra(k)
        objs = [X for n in range(1, 5) for X in enumerate_bsets(B, n)] + [conditioned_disjunction(B)]
        objs += [free_bset(B, 2).bset] if 2 ** k <= 8 else []
        for X, Y in product(objs, repeat=2):
            if Y.carrier ** X.carrier <= limit:
                compared += 1
                cert.record("bset-homs", enumerate_bset_homs(X, Y) == naive_bset_homs(X, Y, limit),
                            lambda: (k, X.carrier, Y.carrier))
    pairs = enumerate_matched_pairs(max_atoms, max_monoid) + [extract_from_endos(2)]
    for P in pairs:
        objs = [terminal_bmset(P), m_as_bmset(P), b_as_bmset(P), free_bmset(P, 2).bmset]
        objs += bm_test_objects(P, 3)
        seen = set()
        objs = [X for X in objs if not (X.key() in seen or seen.add(X.key()))]
        for X, Y in product(objs, repeat=2):
            if Y.carrier ** X.carrier <= limit:
                compared += 1
                cert.record("bm-homs", enumerate_bm_homs(X, Y) == naive_bm_homs(X, Y, limit),
                            lambda: (P.algebra.atoms, P.monoid.size, X.carrier, Y.carrier))
    return cert, compared


def criterion_finite_collapse(max_atoms=3, endo_sizes=(2, 3)):
    cert = Certificate("finite-collapse")
    for k in range(1, max_atoms + 1):
        c, _ = coverage_certificate(boolean_pair(BooleanAlgebra(k)))
        cert.merge(c, f"atoms={k}:")
    for n in endo_sizes:
        c, _ = coverage_certificate(extract_from_endos(n))
        cert.merge(c, f"endos-{n}:")
    return cert


CRITERIA = (
    (1, "B-set duality", lambda level: criterion_bset_duality()),
    (2, "free and exponential B-sets", lambda level: criterion_free_exponential()),
    (3, "decomposition in dual clones", lambda level: criterion_decomposition()),
    (4, "Boolean extraction", lambda level: criterion_boolean_extraction()),
    (5, "matched pairs and bicrossed products", lambda level: criterion_bicross()[0]),
    (6, "BM-set exponentials", lambda level: criterion_bm_exponential()[0]),
    (7, "classification round trip", lambda level: criterion_roundtrip(level == "full")[0]),
    (8, "search against naive filtering",
     lambda level: criterion_search_oracle(limit=NAIVE_LIMIT if level == "full" else QUICK_NAIVE_LIMIT)[0]),
    (9, "finite collapse of the coverage", lambda level: criterion_finite_collapse()),
)


def run_suite(level="quick", timing=False):
    results = []
    for num, name, fn in CRITERIA:
        t0 = time.perf_counter()
        try:
            cert = fn(level)
            entry = {"criterion": num, "name": name, "status": "pass" if cert.passed else "fail",
                     "checks": [c.to_json() for c in cert.checks]}
        except CapacityError as e:
            entry = {"criterion": num, "name": name, "status": "error", "error": str(e), "checks": []}
        if timing:
            entry["seconds"] = round(time.perf_counter() - t0, 3)
        results.append(entry)
    return results
