"""Compiled against pure-Python kernels on representative workloads.

    python benchmarks/bench_kernels.py [--repeat N]

Each workload runs on both backends, checks that the results agree, and
reports the best wall time of ``--repeat`` runs.
"""

import argparse
import time
from itertools import product

from ccvar import _pykernels
from ccvar.balg import BooleanAlgebra
from ccvar.bset import conditioned_disjunction, enumerate_bsets, free_bset
from ccvar.matched import b_as_bmset, extract_from_endos, free_bmset, m_as_bmset
from ccvar.matched.enumerate import enumerate_bmsets

try:
    from ccvar import _kernels
except ImportError:
    _kernels = None


def bset_homs_workload():
    B = BooleanAlgebra(2)
    objs = [X for n in range(1, 5) for X in enumerate_bsets(B, n)] + [free_bset(B, 3).bset]
    calls = [(X.carrier, Y.carrier, X.labels, Y.labels, [], []) for X, Y in product(objs, repeat=2)]
    return "bset homs, 2 atoms", calls


def bm_homs_workload():
    P = extract_from_endos(2)
    M = P.monoid
    objs = [m_as_bmset(P), b_as_bmset(P), free_bmset(P, 2).bmset] + enumerate_bmsets(P, 4)
    calls = [(X.carrier, Y.carrier, X.bset.labels, Y.bset.labels,
              [X.maction.table[m] for m in M.elements()], [Y.maction.table[m] for m in M.elements()])
             for X, Y in product(objs, repeat=2)]
    return "BM homs, endos of 2", calls


def bm_free_three():
    P = extract_from_endos(3)
    M = P.monoid
    F = free_bmset(P, 1).bmset
    X = b_as_bmset(P)
    calls = [(F.carrier, X.carrier, F.bset.labels, X.bset.labels,
              [F.maction.table[m] for m in M.elements()], [X.maction.table[m] for m in M.elements()])]
    return "BM homs M -> B, endos of 3", calls


def axiom_workload():
    tables = [conditioned_disjunction(BooleanAlgebra(k)).action for k in (2, 3, 4)]
    P = extract_from_endos(3)
    tables.append(P.bset_on_m.action)
    return "B-set axiom scan", [(t, len(t) - 1) for t in tables]


def timed(fn, calls, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = [fn(*c) for c in calls]
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled extension not available; only the Python timings are shown")
    rows = []
    for name, calls in (bset_homs_workload(), bm_homs_workload(), bm_free_three()):
        rows.append((name, len(calls), "search_homs", calls))
    name, calls = axiom_workload()
    rows.append((name, len(calls), "bset_axiom_failure", calls))
    print(f"{'workload':32} {'calls':>6} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, n, fname, calls in rows:
        tp, rp = timed(getattr(_pykernels, fname), calls, args.repeat)
        if _kernels is None:
            print(f"{name:32} {n:6d} {tp:10.4f} {'-':>10} {'-':>8}")
            continue
        tc, rc = timed(getattr(_kernels, fname), calls, args.repeat)
        same = [list(a) if a is not None else None for a in rp] == [list(a) if a is not None else None for a in rc]
        if not same:
            raise SystemExit(f"backends disagree on {name}")
        print(f"{name:32} {n:6d} {tp:10.4f} {tc:10.4f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
